//! Terminating generalized hypergeometric sums.
//!
//! Every sum here is evaluated by forward recurrence on the term ratio
//!
//! ```text
//! t_{j+1} / t_j = prod(a_i + j) / prod(b_i + j) * x / (j + 1)
//! ```
//!
//! which needs O(degree) multiplications instead of rebuilding each
//! Pochhammer product from scratch.

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{pochhammer, rat, Rational};
use super::summation::CompensatedSum;
use crate::error::{Error, Result};

/// A terminating `pFq(numer; denom; x)`.
///
/// At least one numerator parameter must be a non-positive integer; the
/// smallest such `-N` fixes the degree `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypergeometricSpec {
    pub numer: Vec<Rational>,
    pub denom: Vec<Rational>,
}

impl HypergeometricSpec {
    pub fn new(numer: Vec<Rational>, denom: Vec<Rational>) -> Self {
        Self { numer, denom }
    }

    /// Degree at which the series terminates, or `None` if no numerator
    /// parameter is a non-positive integer.
    pub fn degree(&self) -> Option<usize> {
        self.numer
            .iter()
            .filter(|a| a.is_integer() && !a.is_positive())
            .map(|a| (-a.to_integer()).to_usize().unwrap_or(usize::MAX))
            .min()
    }

    fn check_poles(&self, degree: usize) -> Result<()> {
        for b in &self.denom {
            if b.is_integer() && !b.is_positive() {
                let hit = (-b.to_integer()).to_usize().unwrap_or(usize::MAX);
                // (b)_j with j <= degree contains the factor b + hit = 0 when hit < degree.
                if hit < degree {
                    return Err(Error::DenominatorPole {
                        param: b.to_string(),
                        term: hit + 1,
                    });
                }
            }
        }
        Ok(())
    }

    /// Exact evaluation at a rational argument.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let degree = self
            .degree()
            .ok_or_else(|| Error::Domain("no non-positive integer numerator parameter".into()))?;
        self.check_poles(degree)?;
        let mut term = Rational::one();
        let mut sum = Rational::one();
        for j in 0..degree {
            let jj = rat(j as i64);
            let mut num = x.clone();
            for a in &self.numer {
                num *= a + &jj;
            }
            if num.is_zero() {
                break;
            }
            let mut den = rat(j as i64 + 1);
            for b in &self.denom {
                den *= b + &jj;
            }
            term = term * num / den;
            sum += &term;
        }
        Ok(sum)
    }

    /// Binary64 evaluation; parameters are converted once, the argument is a float.
    pub fn eval_f64(&self, x: f64) -> Result<f64> {
        let degree = self
            .degree()
            .ok_or_else(|| Error::Domain("no non-positive integer numerator parameter".into()))?;
        self.check_poles(degree)?;
        let numer: Vec<f64> = self.numer.iter().map(super::rational::to_f64).collect();
        let denom: Vec<f64> = self.denom.iter().map(super::rational::to_f64).collect();
        let mut term = 1.0;
        let mut sum = CompensatedSum::new();
        sum.add(1.0);
        for j in 0..degree {
            let jf = j as f64;
            let num: f64 = numer.iter().map(|a| a + jf).product::<f64>() * x;
            if num == 0.0 {
                break;
            }
            let den: f64 = denom.iter().map(|b| b + jf).product::<f64>() * (jf + 1.0);
            term *= num / den;
            sum.add(term);
        }
        Ok(sum.value())
    }
}

fn nonpositive_integer(a: i64) -> Result<()> {
    if a > 0 {
        Err(Error::Domain(format!(
            "numerator parameter a = {a} must be <= 0"
        )))
    } else {
        Ok(())
    }
}

/// `2F1(a, b; c; t)` for a non-positive integer `a`, exact in rationals.
pub fn hyp2f1_terminating(a: i64, b: &Rational, c: &Rational, t: &Rational) -> Result<Rational> {
    nonpositive_integer(a)?;
    HypergeometricSpec::new(vec![rat(a), b.clone()], vec![c.clone()]).eval(t)
}

/// `2F1(a, b; c; t)` for a non-positive integer `a`, in binary64.
pub fn hyp2f1_terminating_f64(a: i64, b: &Rational, c: &Rational, t: f64) -> Result<f64> {
    nonpositive_integer(a)?;
    HypergeometricSpec::new(vec![rat(a), b.clone()], vec![c.clone()]).eval_f64(t)
}

/// Checks the balanced `3F2` summation
///
/// ```text
/// 3F2(-n, a, b; c, 1 + a + b - n - c; 1) = (c-a)_n (c-b)_n / ((c)_n (c-a-b)_n)
/// ```
///
/// exactly. Errors if either side has a vanishing denominator.
pub fn pfaff_saalschutz_check(n: usize, a: &Rational, b: &Rational, c: &Rational) -> Result<bool> {
    let nn = rat(n as i64);
    let d = Rational::one() + a + b - &nn - c;
    let lhs = HypergeometricSpec::new(vec![-nn, a.clone(), b.clone()], vec![c.clone(), d])
        .eval(&Rational::one())?;
    let den = pochhammer(c, n) * pochhammer(&(c - a - b), n);
    if den.is_zero() {
        return Err(Error::DenominatorPole {
            param: format!("c = {c}, c - a - b = {}", c - a - b),
            term: n,
        });
    }
    let rhs = pochhammer(&(c - a), n) * pochhammer(&(c - b), n) / den;
    Ok(lhs == rhs)
}
