//! Disc polynomials, zonal reproducing kernels and the coefficient tables
//! that connect them: dimensions of `H^(p,q)`, the `gamma` coefficients of
//! the monomial expansion on the disc and the decomposition of unity.
//!
//! Orientation: the kernel with pole `eta` is `Z(xi) = W((eta|xi))` where
//! `(u|v) = sum_j u_j conj(v_j)`. Since `W_{q,p}(w) = conj(W_{p,q}(w))`, the
//! opposite orientation is the transposed bidegree.

mod cache;
mod disc;
pub mod regression;

pub use cache::DiscPolyCache;
pub use disc::{disc_poly, disc_poly_eval, disc_poly_via_jacobi, DiscPolyTable};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyalg::check_dimension;
use crate::specfun::{factorial, to_f64, Rational};

/// `dim H^(p,q) = (n+p+q-1) (n-2+p)! (n-2+q)! / (p! q! (n-1)! (n-2)!)`.
pub fn dim_h(p: usize, q: usize, n: usize) -> Result<BigInt> {
    check_dimension(n)?;
    let num =
        BigInt::from(n + p + q - 1) * factorial((n - 2 + p) as u64) * factorial((n - 2 + q) as u64);
    let den = factorial(p as u64)
        * factorial(q as u64)
        * factorial((n - 1) as u64)
        * factorial((n - 2) as u64);
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// [`dim_h`] as a float, for series evaluation.
pub fn dim_h_f64(p: usize, q: usize, n: usize) -> Result<f64> {
    dim_h(p, q, n).map(|d| to_f64(&Rational::from_integer(d)))
}

/// Coefficient of `W_{p-k,q-k}` in the expansion of `w^p conj(w)^q`:
///
/// ```text
/// gamma_k = p! q! (a+1+p+q-2k) (a+p-k)! (a+q-k)! / (k! a! (a+1+p+q-k)! (p-k)! (q-k)!)
/// ```
///
/// with `a = n - 2`.
pub fn gamma_coefficient(p: usize, q: usize, k: usize, n: usize) -> Result<Rational> {
    check_dimension(n)?;
    if k > p.min(q) {
        return Err(Error::OutOfRange(format!(
            "gamma({p},{q}) needs k <= {}, got {k}",
            p.min(q)
        )));
    }
    let a = n - 2;
    let num = factorial(p as u64)
        * factorial(q as u64)
        * BigInt::from(a + 1 + p + q - 2 * k)
        * factorial((a + p - k) as u64)
        * factorial((a + q - k) as u64);
    let den = factorial(k as u64)
        * factorial(a as u64)
        * factorial((a + 1 + p + q - k) as u64)
        * factorial((p - k) as u64)
        * factorial((q - k) as u64);
    Ok(Rational::new(num, den))
}

/// `w^p conj(w)^q = sum_k gamma_k W_{p-k,q-k}(w)`, as a list of
/// `((p - k, q - k), gamma_k)`.
pub fn monomial_expansion(p: usize, q: usize, n: usize) -> Result<Vec<((usize, usize), Rational)>> {
    (0..=p.min(q))
        .map(|k| Ok(((p - k, q - k), gamma_coefficient(p, q, k, n)?)))
        .collect()
}

/// `sum_{p+q=l} dim H^(p,q) W_{p,q}(w)`, which depends on `Re w` only.
pub fn real_zonal_sum(l: usize, n: usize, w: Complex64) -> Result<f64> {
    check_dimension(n)?;
    let alpha = n - 2;
    let mut acc = crate::specfun::CompensatedComplexSum::new();
    for p in 0..=l {
        let table = disc_poly(p, l - p, alpha);
        acc.add(table.eval(w) * dim_h_f64(p, l - p, n)?);
    }
    Ok(acc.value().re)
}

/// Pole-normalized zonal harmonic of bidegree `(p, q)` on `S^{2n-1}`.
#[derive(Debug, Clone)]
pub struct ZonalKernelSpec {
    p: usize,
    q: usize,
    pole: Vec<Complex64>,
    table: DiscPolyTable,
}

const UNIT_TOL: f64 = 1e-12;

fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

fn check_unit(v: &[Complex64], what: &str) -> Result<()> {
    let norm2: f64 = v.iter().map(|x| x.norm_sqr()).sum();
    if (norm2.sqrt() - 1.0).abs() > UNIT_TOL {
        return Err(Error::Domain(format!(
            "{what} has norm {}, expected 1",
            norm2.sqrt()
        )));
    }
    Ok(())
}

impl ZonalKernelSpec {
    pub fn new(p: usize, q: usize, pole: Vec<Complex64>) -> Result<Self> {
        check_dimension(pole.len())?;
        check_unit(&pole, "pole")?;
        let table = disc_poly(p, q, pole.len() - 2);
        Ok(Self { p, q, pole, table })
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn dimension(&self) -> usize {
        self.pole.len()
    }

    pub fn pole(&self) -> &[Complex64] {
        &self.pole
    }

    /// `W_{p,q}((eta|xi))`.
    pub fn eval(&self, xi: &[Complex64]) -> Result<Complex64> {
        if xi.len() != self.pole.len() {
            return Err(Error::DimensionMismatch {
                expected: self.pole.len(),
                found: xi.len(),
            });
        }
        check_unit(xi, "xi")?;
        Ok(self.table.eval(inner(&self.pole, xi)))
    }
}

/// Evaluates the zonal kernel `spec` at the unit vector `xi`.
pub fn zonal_kernel_eval(spec: &ZonalKernelSpec, xi: &[Complex64]) -> Result<Complex64> {
    spec.eval(xi)
}

/// CSV with columns `p,q,k,gamma_num,gamma_den` for all `p, q <= max`.
pub fn gamma_table_csv(max: usize, n: usize) -> Result<String> {
    let mut out = String::from("p,q,k,gamma_num,gamma_den\n");
    for p in 0..=max {
        for q in 0..=max {
            for k in 0..=p.min(q) {
                let g = gamma_coefficient(p, q, k, n)?;
                out.push_str(&format!("{p},{q},{k},{},{}\n", g.numer(), g.denom()));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{rat, ratio};
    use approx::assert_abs_diff_eq;

    #[test]
    fn dimension_examples() {
        for n in 2..=8 {
            assert_eq!(dim_h(0, 0, n).unwrap(), BigInt::from(1));
            assert_eq!(dim_h(1, 0, n).unwrap(), BigInt::from(n));
            assert_eq!(dim_h(0, 1, n).unwrap(), BigInt::from(n));
        }
        assert_eq!(dim_h(1, 1, 2).unwrap(), BigInt::from(3));
        // n = 2: dim H^(p,q) = p + q + 1
        assert_eq!(dim_h(4, 7, 2).unwrap(), BigInt::from(12));
        assert_eq!(dim_h(1, 1, 1).unwrap_err(), Error::DimensionTooSmall(1));
    }

    #[test]
    fn dimensions_sum_to_real_harmonics() {
        // dim H^l on R^{2n} = C(l+2n-1, 2n-1) - C(l+2n-3, 2n-1)
        for n in 2..=5u64 {
            for l in 0..=10u64 {
                let total: BigInt = (0..=l as usize)
                    .map(|p| dim_h(p, l as usize - p, n as usize).unwrap())
                    .sum();
                let d = 2 * n;
                let want = crate::specfun::binomial(l + d - 1, d - 1)
                    - if l >= 2 {
                        crate::specfun::binomial(l + d - 3, d - 1)
                    } else {
                        BigInt::zero()
                    };
                assert_eq!(total, want, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn gamma_examples() {
        for n in 2..=9 {
            let a = n as i64 - 2;
            assert_eq!(gamma_coefficient(1, 1, 0, n).unwrap(), ratio(a + 1, a + 2));
            assert_eq!(gamma_coefficient(1, 1, 1, n).unwrap(), ratio(1, a + 2));
        }
        assert!(gamma_coefficient(2, 1, 2, 3).is_err());
    }

    #[test]
    fn decomposition_of_unity_small() {
        for n in 2..=6 {
            for p in 0..=8 {
                for q in 0..=8 {
                    let s: Rational = (0..=p.min(q))
                        .map(|k| gamma_coefficient(p, q, k, n).unwrap())
                        .sum();
                    assert_eq!(s, rat(1));
                }
            }
        }
    }

    #[test]
    fn monomial_expansion_examples() {
        assert_eq!(monomial_expansion(5, 0, 4).unwrap(), vec![((5, 0), rat(1))]);
        assert_eq!(
            monomial_expansion(1, 1, 2).unwrap(),
            vec![((1, 1), ratio(1, 2)), ((0, 0), ratio(1, 2))]
        );
        let w = Complex64::new(0.3, 0.4);
        let lhs = w * w * w.conj();
        let rhs: Complex64 = monomial_expansion(2, 1, 3)
            .unwrap()
            .into_iter()
            .map(|((a, b), g)| disc_poly(a, b, 1).eval(w) * to_f64(&g))
            .sum();
        assert_abs_diff_eq!((lhs - rhs).norm(), 0.0, epsilon = 1e-13);
    }

    #[test]
    fn kernel_examples() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let eta = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let k11 = ZonalKernelSpec::new(1, 1, eta.clone()).unwrap();
        assert_abs_diff_eq!((k11.eval(&eta).unwrap() - 1.0).norm(), 0.0, epsilon = 1e-12);
        let xi = vec![Complex64::new(s, 0.0), Complex64::new(0.0, s)];
        assert_abs_diff_eq!(k11.eval(&xi).unwrap().norm(), 0.0, epsilon = 1e-15);

        let k21 = ZonalKernelSpec::new(2, 1, eta.clone()).unwrap();
        let perp = vec![Complex64::new(0.0, 0.0), Complex64::new(0.6, 0.8)];
        assert_abs_diff_eq!(k21.eval(&perp).unwrap().norm(), 0.0, epsilon = 1e-15);

        assert!(matches!(
            k21.eval(&[Complex64::new(1.0, 0.0)]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(ZonalKernelSpec::new(1, 1, vec![Complex64::new(2.0, 0.0); 2]).is_err());
    }

    #[test]
    fn kernel_orientation() {
        // Z(xi) = W((eta|xi)): for (p,q) = (1,0), Z(xi) = (eta|xi) = sum eta_j conj(xi_j).
        let eta = vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)];
        let xi = vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)];
        let z = ZonalKernelSpec::new(1, 0, eta).unwrap().eval(&xi).unwrap();
        assert_abs_diff_eq!((z - Complex64::new(0.0, -0.6)).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn real_zonal_sum_examples() {
        for n in 2..=4 {
            assert_abs_diff_eq!(
                real_zonal_sum(0, n, Complex64::new(0.2, 0.7)).unwrap(),
                1.0,
                epsilon = 1e-15
            );
            for l in 0..=6 {
                let total: f64 = (0..=l).map(|p| dim_h_f64(p, l - p, n).unwrap()).sum();
                assert_abs_diff_eq!(
                    real_zonal_sum(l, n, Complex64::new(1.0, 0.0)).unwrap(),
                    total,
                    epsilon = 1e-10
                );
            }
        }
        let t = 0.45;
        let a = real_zonal_sum(2, 2, Complex64::new(0.0, t)).unwrap();
        let b = real_zonal_sum(2, 2, Complex64::new(0.0, -t)).unwrap();
        assert_abs_diff_eq!(a, b, epsilon = 1e-14);
    }

    #[test]
    fn gamma_csv_layout() {
        let csv = gamma_table_csv(1, 2).unwrap();
        assert_eq!(
            csv,
            "p,q,k,gamma_num,gamma_den\n0,0,0,1,1\n0,1,0,1,1\n1,0,0,1,1\n1,1,0,1,2\n1,1,1,1,2\n"
        );
    }
}
