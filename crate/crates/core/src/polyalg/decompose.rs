//! Canonical harmonic decomposition `P = sum_k |z|^{2k} h_k` of a
//! bihomogeneous polynomial, plus a linear-algebra oracle for it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::bipoly::{check_dimension, BiPoly, CRational, Monomial};
use crate::error::{Error, Result};
use crate::specfun::{factorial, Rational};

/// The harmonic pieces `h_0 .. h_m`, `m = min(p, q)`, of a polynomial of
/// bidegree `(p, q)`. Pieces that vanish are kept as zero polynomials so
/// that `components[k]` always has bidegree `(p - k, q - k)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HarmonicComponents {
    pub p: usize,
    pub q: usize,
    pub components: Vec<BiPoly>,
}

impl HarmonicComponents {
    /// `sum_k |z|^{2k} h_k`.
    pub fn reconstruct(&self) -> BiPoly {
        let n = self.components[0].dimension();
        let mut acc = BiPoly::zero(n).expect("dimension already validated");
        for h in self.components.iter().rev() {
            acc = &acc.rsq_multiply() + h;
        }
        acc
    }

    /// Components after the last non-zero one are dropped.
    pub fn nonzero_len(&self) -> usize {
        self.components
            .iter()
            .rposition(|h| !h.is_zero())
            .map_or(0, |i| i + 1)
    }

    /// Every component harmonic and of the right bidegree.
    pub fn is_harmonic(&self) -> bool {
        self.components
            .iter()
            .enumerate()
            .all(|(k, h)| h.laplacian().is_zero() && h.is_bihomogeneous_of(self.p - k, self.q - k))
    }
}

fn bidegree_of(p: &BiPoly) -> Result<(usize, usize)> {
    check_dimension(p.dimension())?;
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    p.bidegree().ok_or(Error::NotBihomogeneous)
}

/// ```text
/// beta_k(j) = (-1)^j (n-1+p+q-2k) (n-2+p+q-2k-j)! / (4^{k+j} k! j! (n-1+p+q-k)!)
/// ```
pub fn beta_coefficient(p: usize, q: usize, k: usize, j: usize, n: usize) -> Result<Rational> {
    check_dimension(n)?;
    let m = p.min(q);
    if k > m || j > m - k {
        return Err(Error::OutOfRange(format!(
            "beta({p},{q}) needs k <= {m} and j <= m - k, got k = {k}, j = {j}"
        )));
    }
    let num = BigInt::from(n - 1 + p + q - 2 * k) * factorial((n - 2 + p + q - 2 * k - j) as u64);
    let den = (BigInt::one() << (2 * (k + j)))
        * factorial(k as u64)
        * factorial(j as u64)
        * factorial((n - 1 + p + q - k) as u64);
    let r = Rational::new(num, den);
    Ok(if j.is_odd() { -r } else { r })
}

/// Successive Laplacians `Δ^0 P, Δ^1 P, ..., Δ^m P`, computed once.
struct LaplacianTower(Vec<BiPoly>);

impl LaplacianTower {
    fn new(p: &BiPoly, depth: usize) -> Self {
        let mut v = Vec::with_capacity(depth + 1);
        v.push(p.clone());
        for i in 0..depth {
            let next = v[i].laplacian();
            v.push(next);
        }
        Self(v)
    }

    fn component(&self, p: usize, q: usize, k: usize, n: usize) -> Result<BiPoly> {
        let m = p.min(q);
        // Horner in |z|^2: sum_j beta_j r^{2j} Δ^{k+j} P
        let mut acc = BiPoly::zero(n)?;
        for j in (0..=m - k).rev() {
            let beta = beta_coefficient(p, q, k, j, n)?;
            acc = &acc.rsq_multiply() + &self.0[k + j].scale_rational(&beta);
        }
        Ok(acc)
    }
}

/// The harmonic component `h_k(P) = sum_j beta_k(j) |z|^{2j} Δ^{k+j} P`.
pub fn harmonic_component(p: &BiPoly, k: usize) -> Result<BiPoly> {
    let (dp, dq) = bidegree_of(p)?;
    let m = dp.min(dq);
    if k > m {
        return Err(Error::OutOfRange(format!(
            "k = {k} exceeds min(p, q) = {m}"
        )));
    }
    LaplacianTower::new(p, m).component(dp, dq, k, p.dimension())
}

/// All harmonic components of `p` from the closed-form coefficients.
pub fn canonical_decompose(p: &BiPoly) -> Result<HarmonicComponents> {
    let (dp, dq) = bidegree_of(p)?;
    let m = dp.min(dq);
    let tower = LaplacianTower::new(p, m);
    let components = (0..=m)
        .map(|k| tower.component(dp, dq, k, p.dimension()))
        .collect::<Result<Vec<_>>>()?;
    Ok(HarmonicComponents {
        p: dp,
        q: dq,
        components,
    })
}

/// All exponent vectors of length `n` with entries summing to `total`.
pub(crate) fn compositions(n: usize, total: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, total: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 1 {
            prefix.push(total as u32);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first as u32);
            rec(n - 1, total - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, total, &mut Vec::with_capacity(n), &mut out);
    out
}

fn difference(m: &Monomial) -> Vec<i64> {
    m.z.iter()
        .zip(&m.zbar)
        .map(|(&a, &b)| a as i64 - b as i64)
        .collect()
}

/// Monomials of bidegree `(p, q)` whose exponent difference `a - b` is `d`.
fn block_basis(d: &[i64], p: usize, q: usize) -> Vec<Monomial> {
    // a = b + d, so a is fixed by b; b ranges over compositions of q with b >= -d.
    let shift: i64 = d.iter().sum();
    if p as i64 - q as i64 != shift {
        return Vec::new();
    }
    compositions(d.len(), q)
        .into_iter()
        .filter(|b| b.iter().zip(d).all(|(&bj, &dj)| bj as i64 + dj >= 0))
        .map(|b| {
            let a = b
                .iter()
                .zip(d)
                .map(|(&bj, &dj)| (bj as i64 + dj) as u32)
                .collect();
            Monomial::new(a, b)
        })
        .collect()
}

fn multinomial(c: &[u32]) -> BigInt {
    let total: u32 = c.iter().sum();
    c.iter().fold(factorial(total as u64), |acc, &ci| {
        acc / factorial(ci as u64)
    })
}

/// Solves `P = sum_k |z|^{2k} H_k`, `Δ H_k = 0` directly on the monomial
/// basis with exact fraction-free elimination.
///
/// Both `|z|^2` and `Δ` preserve the exponent difference `a - b`, so the
/// system splits into independent blocks, one per difference vector present
/// in `P`.
pub fn brute_force_decompose(p: &BiPoly) -> Result<HarmonicComponents> {
    let (dp, dq) = bidegree_of(p)?;
    let n = p.dimension();
    let m = dp.min(dq);

    let mut blocks: BTreeMap<Vec<i64>, Vec<(&Monomial, &CRational)>> = BTreeMap::new();
    for (mono, c) in p.terms() {
        blocks.entry(difference(mono)).or_default().push((mono, c));
    }

    let mut components: Vec<BiPoly> = (0..=m).map(|_| BiPoly::zero(n)).collect::<Result<_>>()?;
    for (d, terms) in blocks {
        // Unknown layout: for each k, the basis of bidegree (p-k, q-k) in this block.
        let unknown_bases: Vec<Vec<Monomial>> =
            (0..=m).map(|k| block_basis(&d, dp - k, dq - k)).collect();
        let mut offsets = Vec::with_capacity(m + 1);
        let mut total = 0;
        for b in &unknown_bases {
            offsets.push(total);
            total += b.len();
        }
        let index: Vec<BTreeMap<&Monomial, usize>> = unknown_bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, mono)| (mono, i)).collect())
            .collect();

        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let mut rhs: Vec<(Rational, Rational)> = Vec::new();

        // Reconstruction equations: coefficient of each target monomial.
        let target_basis = &unknown_bases[0];
        for target in target_basis {
            let mut row = vec![BigInt::zero(); total];
            for k in 0..=m {
                // target = c-shift of an unknown monomial by |z|^{2k}, with c of weight k.
                for c in compositions(n, k) {
                    let ok = c
                        .iter()
                        .enumerate()
                        .all(|(j, &cj)| target.z[j] >= cj && target.zbar[j] >= cj);
                    if !ok {
                        continue;
                    }
                    let src = Monomial::new(
                        target.z.iter().zip(&c).map(|(a, c)| a - c).collect(),
                        target.zbar.iter().zip(&c).map(|(b, c)| b - c).collect(),
                    );
                    if let Some(&i) = index[k].get(&src) {
                        row[offsets[k] + i] += multinomial(&c);
                    }
                }
            }
            let coeff = terms
                .iter()
                .find(|(mono, _)| *mono == target)
                .map(|(_, c)| (*c).clone())
                .unwrap_or_else(CRational::zero);
            rows.push(row);
            rhs.push((coeff.re, coeff.im));
        }

        // Harmonicity equations: Δ H_k = 0, one row per monomial of bidegree (p-k-1, q-k-1).
        for k in 0..=m {
            if dp - k == 0 || dq - k == 0 {
                continue;
            }
            for target in block_basis(&d, dp - k - 1, dq - k - 1) {
                let mut row = vec![BigInt::zero(); total];
                for j in 0..n {
                    let mut src = target.clone();
                    src.z[j] += 1;
                    src.zbar[j] += 1;
                    if let Some(&i) = index[k].get(&src) {
                        row[offsets[k] + i] +=
                            BigInt::from(4u64 * src.z[j] as u64 * src.zbar[j] as u64);
                    }
                }
                rows.push(row);
                rhs.push((Rational::zero(), Rational::zero()));
            }
        }

        let solution = solve_fraction_free(rows, rhs)?;
        for k in 0..=m {
            for (i, mono) in unknown_bases[k].iter().enumerate() {
                let (re, im) = &solution[offsets[k] + i];
                components[k].add_term(mono.clone(), CRational::new(re.clone(), im.clone()));
            }
        }
    }

    Ok(HarmonicComponents {
        p: dp,
        q: dq,
        components,
    })
}

/// Bareiss elimination on an integer matrix with two rational right-hand
/// sides (real and imaginary parts), followed by exact back substitution.
fn solve_fraction_free(
    rows: Vec<Vec<BigInt>>,
    rhs: Vec<(Rational, Rational)>,
) -> Result<Vec<(Rational, Rational)>> {
    let size = rows.first().map_or(0, Vec::len);
    if rows.len() != size {
        return Err(Error::SingularSystem);
    }
    // Clear denominators of the right-hand side so the augmented matrix is integral.
    let scale = rhs.iter().fold(BigInt::one(), |acc, (re, im)| {
        acc.lcm(re.denom()).lcm(im.denom())
    });
    let mut a: Vec<Vec<BigInt>> = rows
        .into_iter()
        .zip(&rhs)
        .map(|(mut row, (re, im))| {
            row.push(re.numer() * (&scale / re.denom()));
            row.push(im.numer() * (&scale / im.denom()));
            row
        })
        .collect();

    let width = size + 2;
    let mut prev = BigInt::one();
    for k in 0..size {
        let pivot = (k..size)
            .find(|&i| !a[i][k].is_zero())
            .ok_or(Error::SingularSystem)?;
        a.swap(k, pivot);
        for i in k + 1..size {
            for j in k + 1..width {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }

    let mut x_re = vec![Rational::zero(); size];
    let mut x_im = vec![Rational::zero(); size];
    for i in (0..size).rev() {
        let mut re = Rational::from_integer(a[i][size].clone());
        let mut im = Rational::from_integer(a[i][size + 1].clone());
        for j in i + 1..size {
            if a[i][j].is_zero() {
                continue;
            }
            let aij = Rational::from_integer(a[i][j].clone());
            re -= &aij * &x_re[j];
            im -= &aij * &x_im[j];
        }
        let diag = Rational::from_integer(a[i][i].clone());
        x_re[i] = re / &diag;
        x_im[i] = im / &diag;
    }
    let s = Rational::from_integer(scale);
    Ok(x_re
        .into_iter()
        .zip(x_im)
        .map(|(re, im)| (re / &s, im / &s))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{rat, ratio};

    fn real(r: Rational) -> CRational {
        CRational::new(r, Rational::zero())
    }

    fn z1zb1(n: usize) -> BiPoly {
        &BiPoly::z(n, 0).unwrap() * &BiPoly::zbar(n, 0).unwrap()
    }

    #[test]
    fn beta_examples() {
        for n in 2..=7 {
            let nn = n as i64;
            assert_eq!(beta_coefficient(1, 1, 0, 0, n).unwrap(), rat(1));
            assert_eq!(beta_coefficient(1, 1, 0, 1, n).unwrap(), ratio(-1, 4 * nn));
            assert_eq!(beta_coefficient(1, 1, 1, 0, n).unwrap(), ratio(1, 4 * nn));
        }
        assert!(beta_coefficient(1, 1, 2, 0, 3).is_err());
        assert!(beta_coefficient(2, 1, 0, 2, 3).is_err());
        assert_eq!(
            beta_coefficient(1, 1, 0, 0, 1).unwrap_err(),
            Error::DimensionTooSmall(1)
        );
    }

    #[test]
    fn decompose_z1_zbar1() {
        for n in 2..=5 {
            let p = z1zb1(n);
            let h0 = &p
                - &BiPoly::norm_squared(n)
                    .unwrap()
                    .scale_rational(&ratio(1, n as i64));
            let h1 = BiPoly::constant(n, real(ratio(1, n as i64))).unwrap();
            assert_eq!(harmonic_component(&p, 0).unwrap(), h0);
            assert_eq!(harmonic_component(&p, 1).unwrap(), h1);
            let dec = canonical_decompose(&p).unwrap();
            assert_eq!(dec.components, vec![h0, h1]);
            assert_eq!(brute_force_decompose(&p).unwrap(), dec);
        }
    }

    #[test]
    fn harmonic_input_is_its_own_component() {
        let n = 3;
        let z1 = BiPoly::z(n, 0).unwrap();
        let p = &(&z1 * &z1) * &BiPoly::zbar(n, 1).unwrap();
        let dec = canonical_decompose(&p).unwrap();
        assert_eq!(dec.components[0], p);
        assert_eq!(dec.nonzero_len(), 1);
        assert_eq!(brute_force_decompose(&p).unwrap(), dec);

        let q = &BiPoly::z(n, 0).unwrap() * &BiPoly::zbar(n, 1).unwrap();
        assert_eq!(harmonic_component(&q, 0).unwrap(), q);
    }

    #[test]
    fn errors() {
        let n = 2;
        let mixed = &BiPoly::z(n, 0).unwrap() + &BiPoly::zbar(n, 0).unwrap();
        assert_eq!(
            canonical_decompose(&mixed).unwrap_err(),
            Error::NotBihomogeneous
        );
        assert_eq!(
            brute_force_decompose(&mixed).unwrap_err(),
            Error::NotBihomogeneous
        );
        assert_eq!(
            canonical_decompose(&BiPoly::zero(n).unwrap()).unwrap_err(),
            Error::ZeroPolynomial
        );
        assert!(harmonic_component(&z1zb1(n), 2).is_err());
    }

    #[test]
    fn all_small_monomials_agree_with_oracle() {
        for n in 2..=3 {
            for p in 0..=3 {
                for q in 0..=3 {
                    for a in compositions(n, p) {
                        for b in compositions(n, q) {
                            let poly = BiPoly::monomial(&a, &b, real(rat(1))).unwrap();
                            let dec = canonical_decompose(&poly).unwrap();
                            assert!(dec.is_harmonic(), "{poly}");
                            assert_eq!(dec.reconstruct(), poly);
                            assert_eq!(brute_force_decompose(&poly).unwrap(), dec, "{poly}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn projection_is_idempotent() {
        let p = BiPoly::monomial(&[2, 0, 1], &[1, 1, 0], real(rat(1))).unwrap();
        let h0 = harmonic_component(&p, 0).unwrap();
        let again = canonical_decompose(&h0).unwrap();
        assert_eq!(again.components[0], h0);
        assert_eq!(again.nonzero_len(), 1);
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(3, 2).len(), 6);
        assert_eq!(compositions(4, 4).len(), 35);
        assert_eq!(compositions(2, 0), vec![vec![0, 0]]);
    }
}
