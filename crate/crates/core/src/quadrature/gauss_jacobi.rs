//! Gauss rule for `int_0^1 g(s) (1 - s)^alpha ds`.
//!
//! Nodes are the zeros of `P_N^{(alpha, 0)}` on `[-1, 1]`, mapped by
//! `s = (1 + x) / 2`. They are bracketed on a fine grid in `theta = acos x`
//! and polished by Newton steps with a bisection safeguard.

use crate::specfun::jacobi_p;
use crate::{Error, Result};

const NEWTON_TOL: f64 = 1e-15;
const NEWTON_CAP: usize = 100;

/// One radial node: position `s` in `[0, 1]` and weight `u`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadialNode {
    pub s: f64,
    pub u: f64,
}

fn value_and_slope(alpha: f64, n: usize, x: f64) -> (f64, f64) {
    let v = jacobi_p(alpha, 0.0, n, x);
    let d = 0.5 * (n as f64 + alpha + 1.0) * jacobi_p(alpha + 1.0, 1.0, n - 1, x);
    (v, d)
}

fn polish(alpha: f64, n: usize, mut lo: f64, mut hi: f64) -> Result<f64> {
    let f_lo = jacobi_p(alpha, 0.0, n, lo);
    let mut x = 0.5 * (lo + hi);
    for _ in 0..NEWTON_CAP {
        let (v, d) = value_and_slope(alpha, n, x);
        if v == 0.0 {
            return Ok(x);
        }
        if (v > 0.0) == (f_lo > 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - v / d;
        if !(next > lo.min(hi) && next < lo.max(hi)) {
            next = 0.5 * (lo + hi);
        }
        let step = (next - x).abs();
        x = next;
        if step <= NEWTON_TOL * x.abs().max(1.0) {
            return Ok(x);
        }
    }
    Err(Error::InvalidRule(format!(
        "Newton iteration for a Jacobi zero did not converge in {NEWTON_CAP} steps"
    )))
}

/// Radial Gauss nodes, ordered by increasing `s`. Exact for polynomials
/// in `s` of degree at most `2 * points - 1`.
pub fn gauss_jacobi_radial(alpha: usize, points: usize) -> Result<Vec<RadialNode>> {
    if points == 0 {
        return Err(Error::InvalidRule(
            "radial point count must be positive".into(),
        ));
    }
    let a = alpha as f64;
    let grid = 50 * points + 50;
    let mut roots = Vec::with_capacity(points);
    let mut prev_x = -1.0f64;
    let mut prev_v = jacobi_p(a, 0.0, points, prev_x);
    // Walk x from -1 to 1 through theta = pi .. 0 so that roots come out sorted.
    for k in (0..grid).rev() {
        let x = (std::f64::consts::PI * k as f64 / grid as f64).cos();
        let v = jacobi_p(a, 0.0, points, x);
        if v == 0.0 {
            roots.push(x);
        } else if prev_v != 0.0 && (v > 0.0) != (prev_v > 0.0) {
            roots.push(polish(a, points, prev_x, x)?);
        }
        prev_x = x;
        prev_v = v;
    }
    if roots.len() != points {
        return Err(Error::InvalidRule(format!(
            "found {} of {points} Jacobi zeros",
            roots.len()
        )));
    }
    Ok(roots
        .into_iter()
        .map(|x| {
            let (_, d) = value_and_slope(a, points, x);
            RadialNode {
                s: 0.5 * (1.0 + x),
                u: 1.0 / ((1.0 - x) * (1.0 + x) * d * d),
            }
        })
        .collect())
}
