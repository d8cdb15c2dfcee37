//! Quadrature on the disc and on the sphere.
//!
//! The normalized surface measure on `S^{2n-1}` factors through the map
//! `xi -> (xi|eta)` into the probability measure
//!
//! ```text
//! dmu_alpha(w) = (alpha + 1)/pi (1 - |w|^2)^alpha dlambda(w),   alpha = n - 2,
//! ```
//!
//! on the closed unit disc, times the normalized measure on `S^{2n-3}`.
//! [`DiscRule`] discretizes `mu_alpha` as a product of a radial Gauss rule in
//! `s = |w|^2` and an equispaced angular rule. [`SphereRule`] applies the same
//! factorization recursively down to the circle.
//!
//! All sums run sequentially over nodes in a fixed order with compensated
//! summation, so results are bit-reproducible.

mod gauss_jacobi;

pub use gauss_jacobi::{gauss_jacobi_radial, RadialNode};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::specfun::CompensatedComplexSum;
use crate::zonal::DiscPolyCache;
use crate::{Error, Result};

/// Product rule for the probability measure `mu_alpha` on the disc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscRule {
    pub alpha: usize,
    pub radial: Vec<RadialNode>,
    pub angular_points: usize,
}

/// Builds a [`DiscRule`]. The rule is exact for `w^a conj(w)^b (1 - |w|^2)^k`
/// whenever `|a - b| < angular_points` and `min(a, b) + k <= 2 * radial_points - 1`.
pub fn build_disc_rule(
    alpha: usize,
    radial_points: usize,
    angular_points: usize,
) -> Result<DiscRule> {
    if angular_points == 0 {
        return Err(Error::InvalidRule(
            "angular point count must be positive".into(),
        ));
    }
    Ok(DiscRule {
        alpha,
        radial: gauss_jacobi_radial(alpha, radial_points)?,
        angular_points,
    })
}

impl DiscRule {
    /// Smallest rule that integrates every polynomial in `w, conj(w)` of
    /// total degree `<= degree` exactly.
    pub fn for_degree(alpha: usize, degree: usize) -> Result<Self> {
        build_disc_rule(alpha, degree / 4 + 1, degree + 1)
    }

    /// Nodes and weights, radial index major. Weights sum to 1.
    pub fn nodes(&self) -> impl Iterator<Item = (Complex64, f64)> + '_ {
        let m = self.angular_points;
        let scale = (self.alpha as f64 + 1.0) / m as f64;
        let phases: Vec<Complex64> = (0..m)
            .map(|j| {
                let (sin, cos) = (std::f64::consts::TAU * j as f64 / m as f64).sin_cos();
                Complex64::new(cos, sin)
            })
            .collect();
        self.radial.iter().flat_map(move |nd| {
            let rad = nd.s.sqrt();
            let weight = scale * nd.u;
            phases.clone().into_iter().map(move |e| (e * rad, weight))
        })
    }

    pub fn len(&self) -> usize {
        self.radial.len() * self.angular_points
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("rule serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let rule: DiscRule = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if rule.radial.is_empty() || rule.angular_points == 0 {
            return Err(Error::InvalidRule("empty rule".into()));
        }
        Ok(rule)
    }
}

/// `int_D phi dmu_alpha` by the rule.
pub fn disc_integrate<F>(phi: F, rule: &DiscRule) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    rule.nodes()
        .map(|(w, u)| phi(w) * u)
        .collect::<CompensatedComplexSum>()
        .value()
}

/// Expansion coefficient of a zonal function through its profile:
///
/// ```text
/// d_{p,q} = int_D phi(w) conj(W^{n-2}_{p,q}(w)) dmu_{n-2}(w).
/// ```
///
/// Here `w` stands for `(xi|eta)`, matching [`crate::expansion`].
pub fn integral_coefficient<F>(
    phi: F,
    p: usize,
    q: usize,
    n: usize,
    rule: &DiscRule,
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if rule.alpha != n - 2 {
        return Err(Error::InvalidRule(format!(
            "rule weight exponent {} does not match n - 2 = {}",
            rule.alpha,
            n - 2
        )));
    }
    let table = DiscPolyCache::global().get(p, q, n - 2);
    Ok(disc_integrate(|w| phi(w) * table.eval(w).conj(), rule))
}

/// Recursive rule for the normalized measure on `S^{2n-1}` in `C^n`.
///
/// Level `k` (dimension `n - k`) uses a disc rule with weight exponent
/// `n - k - 2` in the coordinate `z_{k+1}`; the last coordinate is handled
/// by an equispaced circle rule.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereRule {
    n: usize,
    levels: Vec<DiscRule>,
    circle_points: usize,
}

/// Sphere rule with the same point counts at every level.
pub fn build_sphere_rule(
    n: usize,
    radial_points: usize,
    angular_points: usize,
) -> Result<SphereRule> {
    if n < 1 {
        return Err(Error::DimensionTooSmall(n));
    }
    let levels = (2..=n)
        .rev()
        .map(|d| build_disc_rule(d - 2, radial_points, angular_points))
        .collect::<Result<Vec<_>>>()?;
    Ok(SphereRule {
        n,
        levels,
        circle_points: angular_points,
    })
}

impl SphereRule {
    /// Exact for polynomials in `z, conj(z)` of total degree `<= degree`.
    pub fn for_degree(n: usize, degree: usize) -> Result<Self> {
        build_sphere_rule(n, degree / 4 + 1, degree + 1)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(DiscRule::len).product::<usize>() * self.circle_points
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Calls `visit(point, weight)` for every node; the weights sum to 1.
    pub fn for_each_node<V>(&self, mut visit: V)
    where
        V: FnMut(&[Complex64], f64),
    {
        let mut point = Vec::with_capacity(self.n);
        self.walk(0, &mut point, 1.0, 1.0, &mut visit);
    }

    fn walk<V>(
        &self,
        level: usize,
        point: &mut Vec<Complex64>,
        scale: f64,
        weight: f64,
        visit: &mut V,
    ) where
        V: FnMut(&[Complex64], f64),
    {
        if level == self.levels.len() {
            let m = self.circle_points;
            for j in 0..m {
                let (sin, cos) = (std::f64::consts::TAU * j as f64 / m as f64).sin_cos();
                point.push(Complex64::new(cos, sin) * scale);
                visit(point, weight / m as f64);
                point.pop();
            }
            return;
        }
        for (w, u) in self.levels[level].nodes() {
            let s = w.norm_sqr();
            point.push(w * scale);
            let inner = scale * (1.0 - s).max(0.0).sqrt();
            self.walk(level + 1, point, inner, weight * u, visit);
            point.pop();
        }
    }
}

/// `int_{S^{2n-1}} f dsigma` with `sigma` the normalized surface measure.
pub fn sphere_integrate<F>(f: F, n: usize, rule: &SphereRule) -> Result<Complex64>
where
    F: Fn(&[Complex64]) -> Complex64,
{
    if rule.n != n {
        return Err(Error::DimensionMismatch {
            expected: rule.n,
            found: n,
        });
    }
    let mut acc = CompensatedComplexSum::new();
    rule.for_each_node(|x, u| acc.add(f(x) * u));
    Ok(acc.value())
}
