//! Sparse polynomials in `z_1..z_n` and their conjugates.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{format_rational, parse_rational, to_f64, Rational};

/// Complex number with exact rational parts.
pub type CRational = Complex<Rational>;

/// Exponent pair `(a, b)` of the monomial `z^a conj(z)^b`.
///
/// Ordered lexicographically on `(a, b)`, which is the canonical term order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub z: Vec<u32>,
    pub zbar: Vec<u32>,
}

impl Monomial {
    pub fn new(z: Vec<u32>, zbar: Vec<u32>) -> Self {
        debug_assert_eq!(z.len(), zbar.len());
        Self { z, zbar }
    }

    pub fn one(n: usize) -> Self {
        Self::new(vec![0; n], vec![0; n])
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (
            self.z.iter().map(|&e| e as usize).sum(),
            self.zbar.iter().map(|&e| e as usize).sum(),
        )
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial {
            z: self.z.iter().zip(&other.z).map(|(a, b)| a + b).collect(),
            zbar: self
                .zbar
                .iter()
                .zip(&other.zbar)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for ((&a, &b), &x) in self.z.iter().zip(&self.zbar).zip(point) {
            if a > 0 {
                acc *= x.powu(a);
            }
            if b > 0 {
                acc *= x.conj().powu(b);
            }
        }
        acc
    }
}

/// A polynomial `P(z, conj z)` on `C^n` with exact complex-rational
/// coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct BiPoly {
    n: usize,
    terms: BTreeMap<Monomial, CRational>,
}

pub(crate) fn check_dimension(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::DimensionTooSmall(n))
    } else {
        Ok(())
    }
}

impl BiPoly {
    /// The zero polynomial on `C^n`.
    pub fn zero(n: usize) -> Result<Self> {
        check_dimension(n)?;
        Ok(Self {
            n,
            terms: BTreeMap::new(),
        })
    }

    pub fn constant(n: usize, c: CRational) -> Result<Self> {
        let mut p = Self::zero(n)?;
        p.add_term(Monomial::one(n), c);
        Ok(p)
    }

    /// `c * z^a conj(z)^b`.
    pub fn monomial(a: &[u32], b: &[u32], c: CRational) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        let mut p = Self::zero(a.len())?;
        p.add_term(Monomial::new(a.to_vec(), b.to_vec()), c);
        Ok(p)
    }

    /// The coordinate `z_j` (zero-based).
    pub fn z(n: usize, j: usize) -> Result<Self> {
        let mut a = vec![0; n];
        a[j] = 1;
        Self::monomial(&a, &vec![0; n], CRational::one())
    }

    /// The conjugate coordinate `conj(z_j)` (zero-based).
    pub fn zbar(n: usize, j: usize) -> Result<Self> {
        let mut b = vec![0; n];
        b[j] = 1;
        Self::monomial(&vec![0; n], &b, CRational::one())
    }

    /// `|z|^2 = sum_j z_j conj(z_j)`.
    pub fn norm_squared(n: usize) -> Result<Self> {
        let mut p = Self::zero(n)?;
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            p.add_term(Monomial::new(e.clone(), e), CRational::one());
        }
        Ok(p)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> CRational {
        self.terms.get(m).cloned().unwrap_or_else(CRational::zero)
    }

    /// Adds `c` to the coefficient of `m`, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: CRational) {
        debug_assert_eq!(m.z.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() = o.get().clone() + c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `(p, q)` if every term has the same bidegree; `None` for the zero
    /// polynomial or mixed bidegrees.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(Monomial::bidegree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_bihomogeneous_of(&self, p: usize, q: usize) -> bool {
        self.terms.keys().all(|m| m.bidegree() == (p, q))
    }

    pub fn scale(&self, c: &CRational) -> Self {
        let mut out = Self {
            n: self.n,
            terms: BTreeMap::new(),
        };
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.scale(&CRational::new(c.clone(), Rational::zero()))
    }

    /// Complex Laplacian `4 sum_j d^2/(dz_j d conj z_j)`.
    pub fn laplacian(&self) -> Self {
        let mut out = Self {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            for j in 0..self.n {
                let (a, b) = (m.z[j], m.zbar[j]);
                if a == 0 || b == 0 {
                    continue;
                }
                let mut d = m.clone();
                d.z[j] -= 1;
                d.zbar[j] -= 1;
                let factor = Rational::from_integer((4 * a as i64 * b as i64).into());
                out.add_term(d, c.clone() * CRational::new(factor, Rational::zero()));
            }
        }
        out
    }

    /// `P * |z|^2`.
    pub fn rsq_multiply(&self) -> Self {
        let mut out = Self {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            for j in 0..self.n {
                let mut d = m.clone();
                d.z[j] += 1;
                d.zbar[j] += 1;
                out.add_term(d, c.clone());
            }
        }
        out
    }

    fn check_same_dimension(&self, other: &Self) {
        assert_eq!(self.n, other.n, "BiPoly dimension mismatch");
    }

    /// Binary64 copy for repeated evaluation.
    pub fn to_numeric(&self) -> NumericBiPoly {
        NumericBiPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), Complex64::new(to_f64(&c.re), to_f64(&c.im))))
                .collect(),
        }
    }

    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        self.to_numeric().eval(point)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&BiPolyJson::from(self)).expect("BiPoly serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: BiPolyJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        raw.try_into()
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(
                f,
                "({} + {}i)",
                format_rational(&c.re),
                format_rational(&c.im)
            )?;
            for (j, (&a, &b)) in m.z.iter().zip(&m.zbar).enumerate() {
                if a > 0 {
                    write!(f, "*z{}^{}", j + 1, a)?;
                }
                if b > 0 {
                    write!(f, "*zb{}^{}", j + 1, b)?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        self.check_same_dimension(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self.check_same_dimension(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&-CRational::one())
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        self.check_same_dimension(rhs);
        let mut out = BiPoly {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.times(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

/// Complex Laplacian of `p`.
pub fn complex_laplacian(p: &BiPoly) -> BiPoly {
    p.laplacian()
}

/// `p * |z|^2`, shifting the bidegree by `(1, 1)`.
pub fn rsq_multiply(p: &BiPoly) -> BiPoly {
    p.rsq_multiply()
}

/// A [`BiPoly`] with binary64 coefficients, for fast pointwise evaluation.
#[derive(Debug, Clone)]
pub struct NumericBiPoly {
    n: usize,
    terms: Vec<(Monomial, Complex64)>,
}

impl NumericBiPoly {
    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.n, "evaluation point has wrong dimension");
        self.terms.iter().map(|(m, c)| c * m.eval(point)).sum()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    a: Vec<u32>,
    b: Vec<u32>,
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BiPolyJson {
    n: usize,
    terms: Vec<TermJson>,
}

impl From<&BiPoly> for BiPolyJson {
    fn from(p: &BiPoly) -> Self {
        BiPolyJson {
            n: p.n,
            terms: p
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    a: m.z.clone(),
                    b: m.zbar.clone(),
                    re: format_rational(&c.re),
                    im: format_rational(&c.im),
                })
                .collect(),
        }
    }
}

impl TryFrom<BiPolyJson> for BiPoly {
    type Error = Error;
    fn try_from(raw: BiPolyJson) -> Result<Self> {
        let mut p = BiPoly::zero(raw.n)?;
        for t in raw.terms {
            for v in [&t.a, &t.b] {
                if v.len() != raw.n {
                    return Err(Error::DimensionMismatch {
                        expected: raw.n,
                        found: v.len(),
                    });
                }
            }
            let c = CRational::new(parse_rational(&t.re)?, parse_rational(&t.im)?);
            p.add_term(Monomial::new(t.a, t.b), c);
        }
        Ok(p)
    }
}

impl Serialize for BiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BiPolyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BiPolyJson::deserialize(d)?;
        raw.try_into().map_err(serde::de::Error::custom)
    }
}
