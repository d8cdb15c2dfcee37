//! Classical special functions: Pochhammer symbols, terminating
//! hypergeometric sums, Jacobi polynomials and integer-order Bessel functions.
//!
//! Anything combinatorial is exact ([`Rational`]); binary64 only appears when
//! a kernel or series is finally evaluated.

mod bessel;
mod hypergeometric;
mod jacobi;
pub mod rational;
pub mod summation;

pub use bessel::bessel_j;
pub use hypergeometric::{
    hyp2f1_terminating, hyp2f1_terminating_f64, pfaff_saalschutz_check, HypergeometricSpec,
};
pub use jacobi::{jacobi_p, jacobi_p_at_one};
pub use rational::{
    binomial, factorial, format_rational, parse_rational, pochhammer, pochhammer_f64, rat, ratio,
    to_f64, Rational,
};
pub use summation::{CompensatedComplexSum, CompensatedSum};
