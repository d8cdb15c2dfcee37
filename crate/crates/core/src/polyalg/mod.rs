//! Exact polynomial algebra in `z` and `conj(z)`: the complex Laplacian and
//! the canonical decomposition of bihomogeneous polynomials into harmonic
//! components.

mod bipoly;
mod decompose;

pub(crate) use bipoly::check_dimension;
pub use bipoly::{complex_laplacian, rsq_multiply, BiPoly, CRational, Monomial, NumericBiPoly};
#[cfg(test)]
pub(crate) use decompose::compositions;
pub use decompose::{
    beta_coefficient, brute_force_decompose, canonical_decompose, harmonic_component,
    HarmonicComponents,
};
