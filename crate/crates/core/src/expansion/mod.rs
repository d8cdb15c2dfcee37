//! Expansion of zonal functions in zonal harmonics.
//!
//! A zonal function `f(xi) = phi((xi|eta))` on the sphere in `C^n` expands as
//!
//! ```text
//! phi(w) = sum_{p,q} d_{p,q} dim H^(p,q) W^{n-2}_{p,q}(w)
//! ```
//!
//! and the coefficients follow from the Taylor data of `phi` at the origin:
//!
//! ```text
//! d_{p,q} = (n-1)! sum_k T(p+k, q+k) / (k! (n-1+p+q+k)!)
//! ```
//!
//! with `T(j,k)` the mixed Wirtinger derivative `d^j dbar^k phi(0)`.

mod kernels;
mod profile;

pub use kernels::{
    inverse_power_coefficient, plane_wave_coefficient, poisson_szego_closed_form,
    poisson_szego_coefficient, poisson_szego_reconstruct,
};
pub use profile::{ProfileTaylor, TailBound};

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::polyalg::BiPoly;
use crate::specfun::{factorial, pochhammer, rat, CompensatedComplexSum, Rational};
use crate::zonal::{dim_h_f64, DiscPolyCache};
use crate::{Error, Result};

const STOP_RELATIVE: f64 = 1e-16;
const STOP_RUN: usize = 3;
const MAX_TERMS: usize = 100_000;

/// A coefficient together with a bound on the discarded series tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientEstimate {
    pub value: Complex64,
    pub trunc_err: f64,
}

/// `d_{p,q}` of the profile in dimension `n`.
pub fn expansion_coefficient(
    profile: &ProfileTaylor,
    p: usize,
    q: usize,
    n: usize,
) -> Result<Complex64> {
    expansion_coefficient_with_error(profile, p, q, n).map(|e| e.value)
}

/// `d_{p,q}` and a truncation-error bound.
///
/// Finite polynomial profiles are summed exactly. Otherwise the series stops
/// once the term bound `C rho^(p+q+2k) c_k` (from the tail envelope) stays
/// below `1e-16` of the partial sum for three consecutive `k` and the
/// weights `c_k` have started to decrease; the reported error bounds the
/// rest of the series. A truncated table without an envelope is accepted
/// only if its own terms fall below the threshold before it runs out, in
/// which case the error is an estimate rather than a bound.
pub fn expansion_coefficient_with_error(
    profile: &ProfileTaylor,
    p: usize,
    q: usize,
    n: usize,
) -> Result<CoefficientEstimate> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let nf = n as f64;
    // c_k = (n-1)! (p+k)! (q+k)! / (k! (n-1+p+q+k)!)
    let mut coef = (1..=p).fold(1.0, |acc, i| acc * i as f64 / (n - 1 + i) as f64);
    coef = (1..=q).fold(coef, |acc, i| acc * i as f64 / (n - 1 + p + i) as f64);
    let next_coef = |c: f64, k: usize| {
        let kf = k as f64;
        c * (p as f64 + kf + 1.0) * (q as f64 + kf + 1.0)
            / ((kf + 1.0) * (nf + (p + q) as f64 + kf))
    };
    // c_{k+1} <= c_k exactly when (k+1)(n-1) >= pq.
    let decreasing_from = |k: usize| (k + 1) * (n - 1) >= p * q;

    if profile.is_polynomial() {
        let (mj, mk) = profile.table_extent().unwrap_or((0, 0));
        let mut acc = CompensatedComplexSum::new();
        let mut k = 0;
        while p + k <= mj && q + k <= mk {
            acc.add(profile.normalized(p + k, q + k).unwrap_or_default() * coef);
            coef = next_coef(coef, k);
            k += 1;
        }
        return Ok(CoefficientEstimate {
            value: acc.value(),
            trunc_err: 0.0,
        });
    }

    let tail = profile.tail();
    if let Some(t) = tail {
        if t.c == 0.0 {
            return Ok(CoefficientEstimate {
                value: Complex64::zero(),
                trunc_err: 0.0,
            });
        }
    }
    // Bound on sum_{j >= k} C rho^(p+q+2j) c_j given c_k.
    let tail_from = |mut k: usize, mut c: f64| -> f64 {
        let t = tail.expect("tail present");
        let rho2 = t.rho * t.rho;
        let mut pow = t.rho.powi((p + q) as i32) * rho2.powi(k as i32);
        let mut total = 0.0;
        while !decreasing_from(k) {
            total += t.c * pow * c;
            c = next_coef(c, k);
            pow *= rho2;
            k += 1;
        }
        total + t.c * pow * c / (1.0 - rho2)
    };

    let mut acc = CompensatedComplexSum::new();
    let mut run = 0usize;
    let mut recent = [0.0f64; STOP_RUN];
    let mut first_bound = None;
    for k in 0..MAX_TERMS {
        let Some(a) = profile.normalized(p + k, q + k) else {
            return match tail {
                Some(_) => Ok(CoefficientEstimate {
                    value: acc.value(),
                    trunc_err: tail_from(k, coef),
                }),
                None => Err(Error::Uncertified {
                    p,
                    q,
                    reason: format!("Taylor table exhausted after {k} terms without a tail bound"),
                }),
            };
        };
        let term = a * coef;
        acc.add(term);
        let bound = match tail {
            Some(t) => t.c * t.rho.powi((p + q + 2 * k) as i32) * coef,
            None => term.norm(),
        };
        let first = *first_bound.get_or_insert(bound);
        let sum = acc.value().norm();
        let scale = if sum > 0.0 { sum } else { first };
        recent[k % STOP_RUN] = term.norm();
        if bound < STOP_RELATIVE * scale || bound == 0.0 {
            run += 1;
        } else {
            run = 0;
        }
        let next = next_coef(coef, k);
        if run >= STOP_RUN && decreasing_from(k) {
            let trunc_err = match tail {
                Some(_) => tail_from(k + 1, next),
                None => recent.iter().sum(),
            };
            return Ok(CoefficientEstimate {
                value: acc.value(),
                trunc_err,
            });
        }
        coef = next;
    }
    Err(Error::Uncertified {
        p,
        q,
        reason: format!("no convergence within {MAX_TERMS} terms"),
    })
}

/// One cell of an [`ExpansionTable`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionEntry {
    pub value: Complex64,
    pub trunc_err: f64,
}

/// Coefficients `d_{p,q}` for all `p + q <= max_bidegree` in dimension `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionTable {
    pub n: usize,
    pub max_bidegree: usize,
    pub entries: BTreeMap<(usize, usize), ExpansionEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableJson {
    n: usize,
    entries: Vec<EntryJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryJson {
    p: usize,
    q: usize,
    re: f64,
    im: f64,
    trunc_err: f64,
}

fn cells(max: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=max).flat_map(|l| (0..=l).rev().map(move |q| (l - q, q)))
}

impl ExpansionTable {
    pub fn get(&self, p: usize, q: usize) -> Option<Complex64> {
        self.entries.get(&(p, q)).map(|e| e.value)
    }

    /// Entries in total-degree-major, `p`-minor order.
    pub fn ordered(&self) -> impl Iterator<Item = ((usize, usize), &ExpansionEntry)> {
        let mut keys: Vec<_> = self.entries.keys().copied().collect();
        keys.sort_by_key(|&(p, q)| (p + q, p));
        keys.into_iter().map(move |k| (k, &self.entries[&k]))
    }

    pub fn to_json(&self) -> String {
        let doc = TableJson {
            n: self.n,
            entries: self
                .ordered()
                .map(|((p, q), e)| EntryJson {
                    p,
                    q,
                    re: e.value.re,
                    im: e.value.im,
                    trunc_err: e.trunc_err,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("table serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: TableJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.n < 2 {
            return Err(Error::DimensionTooSmall(doc.n));
        }
        let mut entries = BTreeMap::new();
        for e in &doc.entries {
            let cell = ExpansionEntry {
                value: Complex64::new(e.re, e.im),
                trunc_err: e.trunc_err,
            };
            if entries.insert((e.p, e.q), cell).is_some() {
                return Err(Error::Parse(format!("duplicate entry ({}, {})", e.p, e.q)));
            }
        }
        let max_bidegree = entries.keys().map(|&(p, q)| p + q).max().unwrap_or(0);
        Ok(Self {
            n: doc.n,
            max_bidegree,
            entries,
        })
    }

    /// CSV with columns `p,q,re,im,trunc_err`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,q,re,im,trunc_err\n");
        for ((p, q), e) in self.ordered() {
            out.push_str(&format!(
                "{p},{q},{:?},{:?},{:?}\n",
                e.value.re, e.value.im, e.trunc_err
            ));
        }
        out
    }
}

/// Fills every cell with `p + q <= max_bidegree`, sequentially.
pub fn expand_profile(
    profile: &ProfileTaylor,
    n: usize,
    max_bidegree: usize,
) -> Result<ExpansionTable> {
    expand_profile_with_threads(profile, n, max_bidegree, 0)
}

/// As [`expand_profile`] on a pool of `threads` workers (`0` = sequential).
/// Every cell is computed independently, so the table does not depend on
/// the thread count.
pub fn expand_profile_with_threads(
    profile: &ProfileTaylor,
    n: usize,
    max_bidegree: usize,
    threads: usize,
) -> Result<ExpansionTable> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let keys: Vec<_> = cells(max_bidegree).collect();
    let compute = |&(p, q): &(usize, usize)| {
        expansion_coefficient_with_error(profile, p, q, n).map(|e| {
            (
                (p, q),
                ExpansionEntry {
                    value: e.value,
                    trunc_err: e.trunc_err,
                },
            )
        })
    };
    let results: Vec<_> = if threads == 0 {
        keys.iter().map(compute).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
        pool.install(|| keys.par_iter().map(compute).collect())
    };
    let entries = results.into_iter().collect::<Result<BTreeMap<_, _>>>()?;
    Ok(ExpansionTable {
        n,
        max_bidegree,
        entries,
    })
}

/// `sum d_{p,q} dim H^(p,q) W_{p,q}(w)` over the table, in fixed order.
pub fn evaluate_expansion(table: &ExpansionTable, w: Complex64) -> Complex64 {
    let cache = DiscPolyCache::global();
    let mut acc = CompensatedComplexSum::new();
    for ((p, q), e) in table.ordered() {
        if e.value.is_zero() {
            continue;
        }
        let dim = dim_h_f64(p, q, table.n).expect("table dimension is at least 2");
        acc.add(e.value * dim * cache.get(p, q, table.n - 2).eval(w));
    }
    acc.value()
}

/// Predicted value of `int_S Y(xi) phi((xi|eta)) dsigma(xi)` for a solid
/// harmonic `Y` of bidegree `(p, q)`: `d_{q,p}(phi) Y(eta)`.
///
/// The transposed index appears because `xi -> W_{p,q}((xi|eta))` has
/// bidegree `(p, q)` and pairs with harmonics of bidegree `(q, p)`.
pub fn funk_hecke_pair(
    profile: &ProfileTaylor,
    y: &BiPoly,
    eta: &[Complex64],
    n: usize,
) -> Result<Complex64> {
    if y.dimension() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: y.dimension(),
        });
    }
    if eta.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: eta.len(),
        });
    }
    let norm: f64 = eta.iter().map(|z| z.norm_sqr()).sum();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::OutOfRange(format!(
            "pole has squared norm {norm}, expected 1"
        )));
    }
    if y.is_zero() {
        return Ok(Complex64::zero());
    }
    let (p, q) = y.bidegree().ok_or(Error::NotBihomogeneous)?;
    if !y.laplacian().is_zero() {
        return Err(Error::NotHarmonic);
    }
    Ok(expansion_coefficient(profile, q, p, n)? * y.eval(eta))
}

/// Inner sum from the Pfaff–Saalschütz step of the Poisson–Szegő expansion,
///
/// ```text
/// sum_{j=0}^{min(n,k)} (-1)^j C(n,j) (n-1+p+k-j)! (n-1+q+k-j)! / ((n-1+p+q+k-j)! (k-j)!)
/// ```
///
/// in exact arithmetic.
pub fn poisson_szego_inner_sum(p: usize, q: usize, k: usize, n: usize) -> Rational {
    let f = |m: usize| Rational::from_integer(factorial(m as u64));
    (0..=n.min(k))
        .map(|j| {
            let sign = if j % 2 == 0 { rat(1) } else { rat(-1) };
            let binom = Rational::from_integer(crate::specfun::binomial(n as u64, j as u64));
            sign * binom * f(n - 1 + p + k - j) * f(n - 1 + q + k - j)
                / (f(n - 1 + p + q + k - j) * f(k - j))
        })
        .sum()
}

/// Closed form of [`poisson_szego_inner_sum`] for `p, q >= 1`:
/// `(p+n-1)! (q+n-1)! (p+k-1)! (q+k-1)! / (k! (p-1)! (q-1)! (p+q+n+k-1)!)`.
pub fn poisson_szego_inner_sum_closed(p: usize, q: usize, k: usize, n: usize) -> Result<Rational> {
    if p == 0 || q == 0 {
        return Err(Error::OutOfRange("closed form needs p, q >= 1".into()));
    }
    // Written with Pochhammer symbols: (p)_k (q)_k (p+n-1)! (q+n-1)! / (k! (p+q+n+k-1)!).
    let num = pochhammer(&rat(p as i64), k)
        * pochhammer(&rat(q as i64), k)
        * Rational::from_integer(factorial((p + n - 1) as u64) * factorial((q + n - 1) as u64));
    let den = Rational::from_integer(factorial(k as u64) * factorial((p + q + n + k - 1) as u64));
    Ok(num / den)
}
