//! Integer-order Bessel functions of the first kind by power series.

use super::summation::CompensatedSum;

const MAX_TERMS: usize = 200;
const REL_TOL: f64 = 1e-17;

/// `J_nu(r)` for integer `nu >= 0` and `r >= 0`.
///
/// Sums `(r/2)^nu sum_k (-1)^k (r/2)^(2k) / (k! (k+nu)!)` until a term drops
/// below `1e-17` of the running partial sum, capped at 200 terms.
pub fn bessel_j(nu: u32, r: f64) -> f64 {
    if r == 0.0 {
        return if nu == 0 { 1.0 } else { 0.0 };
    }
    let half = 0.5 * r;
    let x2 = half * half;
    // (r/2)^nu / nu!, built incrementally to stay finite for moderate nu.
    let mut term = (1..=nu).fold(1.0, |acc, k| acc * half / k as f64);
    let mut sum = CompensatedSum::new();
    sum.add(term);
    for k in 1..MAX_TERMS {
        term *= -x2 / (k as f64 * (k as f64 + nu as f64));
        sum.add(term);
        if term.abs() < REL_TOL * sum.value().abs() {
            break;
        }
    }
    sum.value()
}
