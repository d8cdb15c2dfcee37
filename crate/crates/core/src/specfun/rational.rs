//! Exact rational scalars and the factorial-type quantities built from them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `num / den` as a reduced rational. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient `C(n, k)`, zero for `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Rising factorial `(r)_j = r (r+1) ... (r+j-1)`, with `(r)_0 = 1`.
pub fn pochhammer(r: &Rational, j: usize) -> Rational {
    let mut acc = Rational::one();
    let mut x = r.clone();
    for _ in 0..j {
        if x.is_zero() {
            return Rational::zero();
        }
        acc *= &x;
        x += Rational::one();
    }
    acc
}

/// Rising factorial in binary64.
pub fn pochhammer_f64(r: f64, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (r + i as f64))
}

/// Lossy conversion of an exact rational to binary64.
///
/// Numerator and denominator are scaled down together so that ratios of huge
/// factorials do not overflow to `inf / inf`.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let num = r.numer();
    let den = r.denom();
    let shift = num.bits().max(den.bits()).saturating_sub(900);
    let n = (num >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (den >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Parses `"num/den"` or an integer string.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Formats as `"num/den"`, or just `"num"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&ratio(7, 3), 0), rat(1));
        assert_eq!(pochhammer(&rat(3), 2), rat(12));
        assert_eq!(pochhammer(&rat(-2), 3), rat(0));
        assert_eq!(pochhammer(&ratio(1, 2), 2), ratio(3, 4));
    }

    #[test]
    fn pochhammer_splits_exactly() {
        let rs = [rat(-5), rat(0), ratio(1, 2), ratio(-7, 3), rat(4)];
        for r in &rs {
            for j in 0..=20 {
                for k in 0..=20 {
                    let lhs = pochhammer(r, j + k);
                    let rhs = pochhammer(r, j) * pochhammer(&(r + rat(j as i64)), k);
                    assert_eq!(lhs, rhs, "r={r} j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn factorial_and_binomial() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(10), BigInt::from(3_628_800));
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }

    #[test]
    fn to_f64_survives_huge_ratios() {
        let big = Rational::new(
            factorial(400) * BigInt::from(3),
            factorial(400) * BigInt::from(4),
        );
        assert_eq!(to_f64(&big), 0.75);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(parse_rational(" -6/4 ").unwrap(), ratio(-3, 2));
    }

    proptest! {
        #[test]
        fn format_parse_roundtrip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let r = ratio(n, d);
            prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }
}
