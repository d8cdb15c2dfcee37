//! Known-wrong formulas kept only as regression witnesses.
//!
//! Nothing here is a usable API. [`erroneous_unity_sum`] reproduces a
//! published "decomposition of unity" whose coefficients carry an extra
//! factorial; it does not sum to 1.

use num_bigint::BigInt;

use crate::specfun::{factorial, Rational};

/// Summand `k` of the erroneous sum, in the published parameter names:
/// bidegree `(m, n)` and complex dimension `q`,
///
/// ```text
/// m! n! (m-k+q-2)! (n-k+q-2)! (m+n-2k+q-1)! / ((q-2)! k! (m-k)! (n-k)! (m+n-k+q-1)!)
/// ```
///
/// The correct coefficient has the plain factor `(m+n-2k+q-1)` where this
/// one has a factorial.
pub fn erroneous_unity_term(m: usize, q: usize, n: usize, k: usize) -> Rational {
    assert!(q >= 2 && k <= m.min(n));
    let num = factorial(m as u64)
        * factorial(n as u64)
        * factorial((m - k + q - 2) as u64)
        * factorial((n - k + q - 2) as u64)
        * factorial((m + n - 2 * k + q - 1) as u64);
    let den: BigInt = factorial((q - 2) as u64)
        * factorial(k as u64)
        * factorial((m - k) as u64)
        * factorial((n - k) as u64)
        * factorial((m + n - k + q - 1) as u64);
    Rational::new(num, den)
}

/// `sum_{k=0}^{min(m,n)}` of [`erroneous_unity_term`].
pub fn erroneous_unity_sum(m: usize, q: usize, n: usize) -> Rational {
    (0..=m.min(n))
        .map(|k| erroneous_unity_term(m, q, n, k))
        .sum()
}
