//! Spherical-harmonic expansions of zonal functions on the unit sphere
//! `S^{2n-1}` in `C^n`.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: exact rationals, Pochhammer symbols, terminating
//!   hypergeometric sums, Jacobi polynomials, Bessel functions.
//! * [`polyalg`]: polynomials in `z` and `conj(z)`, the complex Laplacian and
//!   the canonical decomposition into harmonic components.
//! * [`zonal`]: disc polynomials, zonal kernels, dimensions and the `gamma`
//!   coefficients of the monomial expansion.
//! * [`expansion`]: expansion coefficients from Taylor data of a profile,
//!   plane-wave and Poisson-Szegő expansions, the Funk-Hecke pairing.
//! * [`quadrature`]: weighted disc and sphere quadrature, used as an
//!   independent oracle for everything above.

pub mod error;
pub mod expansion;
pub mod polyalg;
pub mod quadrature;
pub mod specfun;
pub mod zonal;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/harmonic-decomposition.md")]
    mod harmonic_decomposition {}
    #[doc = include_str!("../../../book/src/disc-polynomials.md")]
    mod disc_polynomials {}
    #[doc = include_str!("../../../book/src/quadrature.md")]
    mod quadrature {}
    #[doc = include_str!("../../../book/src/expansions.md")]
    mod expansions {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
