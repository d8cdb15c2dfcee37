//! Closed-form expansion coefficients of the plane wave and of the
//! Poisson–Szegő kernel.

use num_complex::Complex64;

use crate::specfun::{bessel_j, CompensatedComplexSum, CompensatedSum};
use crate::zonal::{dim_h_f64, DiscPolyCache};
use crate::{Error, Result};

const SERIES_CAP: usize = 2_000_000;

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::DimensionTooSmall(n))
    } else {
        Ok(())
    }
}

/// Coefficient of `exp(i r Re w)`:
/// `(n-1)! i^(p+q) (r/2)^(1-n) J_{p+q+n-1}(r)`, with the limit value at `r = 0`.
pub fn plane_wave_coefficient(r: f64, p: usize, q: usize, n: usize) -> Result<Complex64> {
    check_n(n)?;
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::OutOfRange(format!(
            "plane-wave radius {r} must be finite and >= 0"
        )));
    }
    let l = p + q;
    let phase = match l % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    let half = r / 2.0;
    let scale = half.powi(n as i32 - 1);
    let magnitude = if r == 0.0 {
        if l == 0 {
            1.0
        } else {
            0.0
        }
    } else if scale < 1e-280 {
        // Leading series term; the rest is below rounding at this radius.
        (1..=l).fold(1.0, |acc, i| acc * half / (n - 1 + i) as f64)
    } else {
        let fact: f64 = (1..n).map(|i| i as f64).product();
        fact * bessel_j((l + n - 1) as u32, r) / scale
    };
    Ok(phase * magnitude)
}

fn check_radius(r: f64, allow_one: bool) -> Result<()> {
    let ok = r.is_finite() && r >= 0.0 && (r < 1.0 || (allow_one && r == 1.0));
    if ok {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!(
            "radius {r} must lie in [0, 1{}",
            if allow_one { "]" } else { ")" }
        )))
    }
}

// (n)_p (n)_q / (n)_{p+q}
fn ps_prefactor(p: usize, q: usize, n: usize) -> f64 {
    (0..p).fold(1.0, |acc, j| acc * (n + j) as f64 / (n + q + j) as f64)
}

/// `S_n^{p,q}(r) = r^(p+q) (n)_p (n)_q / (n)_{p+q} 2F1(p, q; n+p+q; r^2)` for
/// `0 <= r <= 1`.
///
/// Away from the boundary the series in `r^2` is summed directly; all its
/// terms are non-negative and it stops once the geometric tail bound drops
/// below `1e-15` of the partial sum. When `(1 - r^2)(p+n)(q+n) <= 1` the
/// connection formula at `z = 1` (the case `c - a - b = n` integer, with a
/// logarithm) converges much faster and is used instead.
pub fn poisson_szego_coefficient(r: f64, p: usize, q: usize, n: usize) -> Result<f64> {
    check_n(n)?;
    check_radius(r, true)?;
    if r == 1.0 {
        // Gauss summation: 2F1(p, q; n+p+q; 1) = (n)_{p+q} / ((n)_p (n)_q).
        return Ok(1.0);
    }
    let e = (1.0 - r) * (1.0 + r);
    let rpow = r.powi((p + q) as i32);
    if p > 0 && q > 0 && e * ((p + n) * (q + n)) as f64 <= 1.0 {
        return Ok(rpow * near_boundary(e, p, q, n));
    }
    Ok(rpow * direct_series(r, p, q, n)?)
}

// C 2F1(p, q; n+p+q; r^2) by its defining series.
fn direct_series(r: f64, p: usize, q: usize, n: usize) -> Result<f64> {
    let r2 = r * r;
    let (pf, qf, nf) = (p as f64, q as f64, n as f64);
    // From k0 on, every term ratio is at most r^2.
    let k0 = (p * q).saturating_sub(n + p + q).div_ceil(n + 1);
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 0..SERIES_CAP {
        let kf = k as f64;
        term *= (pf + kf) * (qf + kf) * r2 / ((nf + pf + qf + kf) * (kf + 1.0));
        sum += term;
        if k + 1 >= k0 && term * r2 / (1.0 - r2) < 1e-15 * sum {
            return Ok(ps_prefactor(p, q, n) * sum);
        }
    }
    Err(Error::Domain(format!(
        "Poisson-Szego series at r = {r} did not converge"
    )))
}

// C 2F1(p, q; n+p+q; 1-e) for p, q >= 1 and small e, from
//
//   F(a, b; a+b+m; z) = G1 sum_{k<m} (a)_k (b)_k / (k! (1-m)_k) (1-z)^k
//       - (z-1)^m G2 sum_k (a+m)_k (b+m)_k / (k! (k+m)!) (1-z)^k
//         * [ln(1-z) - psi(k+1) - psi(k+m+1) + psi(a+k+m) + psi(b+k+m)]
//
// with C G1 = 1 and C G2 = (n+p-1)! (n+q-1)! / ((n-1)! (p-1)! (q-1)!).
// For integer arguments the digamma terms reduce to harmonic numbers.
fn near_boundary(e: f64, p: usize, q: usize, n: usize) -> f64 {
    let (pf, qf, nf) = (p as f64, q as f64, n as f64);
    let mut finite = CompensatedSum::new();
    let mut t = 1.0;
    for k in 0..n {
        finite.add(t);
        if k + 1 < n {
            let kf = k as f64;
            t *= (pf + kf) * (qf + kf) * e / ((kf + 1.0) * (1.0 - nf + kf));
        }
    }
    let ln_pref = ln_factorial(n + p - 1) + ln_factorial(n + q - 1)
        - ln_factorial(n - 1)
        - ln_factorial(p - 1)
        - ln_factorial(q - 1)
        - ln_factorial(n)
        + nf * e.ln();
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let harmonic = |m: usize| (1..=m).map(|i| 1.0 / i as f64).sum::<f64>();
    let (mut hk, mut hkn, mut hp, mut hq) =
        (0.0, harmonic(n), harmonic(p + n - 1), harmonic(q + n - 1));
    let ln_e = e.ln();
    // t_k = (p+n)_k (q+n)_k n! / (k! (k+n)!) e^k, with n! folded into the prefactor.
    let mut t = 1.0;
    let mut series = CompensatedSum::new();
    for k in 0..SERIES_CAP {
        let term = t * (ln_e - hk - hkn + hp + hq);
        series.add(term);
        if k > 2 && term.abs() < 1e-17 * series.value().abs() {
            break;
        }
        let kf = k as f64;
        t *= (pf + nf + kf) * (qf + nf + kf) * e / ((kf + 1.0) * (kf + nf + 1.0));
        hk += 1.0 / (kf + 1.0);
        hkn += 1.0 / (kf + nf + 1.0);
        hp += 1.0 / (pf + kf + nf);
        hq += 1.0 / (qf + kf + nf);
    }
    finite.value() - sign * ln_pref.exp() * series.value()
}

fn ln_factorial(m: usize) -> f64 {
    (2..=m).map(|i| (i as f64).ln()).sum()
}

/// Coefficient of `|1 - r w|^(-2n)` before multiplying by `(1 - r^2)^n`:
///
/// ```text
/// r^(p+q) sum_k (n-1+p+k)! (n-1+q+k)! / ((n-1)! (n-1+p+q+k)! k!) r^(2k)
/// ```
pub fn inverse_power_coefficient(r: f64, p: usize, q: usize, n: usize) -> Result<f64> {
    check_n(n)?;
    check_radius(r, false)?;
    let r2 = r * r;
    let (pf, qf, nf) = (p as f64, q as f64, n as f64);
    let mut term = ps_prefactor(p, q, n);
    let mut sum = term;
    for k in 0..SERIES_CAP {
        let kf = k as f64;
        let ratio = (nf + pf + kf) * (nf + qf + kf) * r2 / ((nf + pf + qf + kf) * (kf + 1.0));
        term *= ratio;
        sum += term;
        // Ratios decrease towards r^2, so the current one bounds all later ones.
        if ratio < 1.0 && term * ratio / (1.0 - ratio) < 1e-15 * sum {
            return Ok(r.powi((p + q) as i32) * sum);
        }
    }
    Err(Error::Domain(format!(
        "series for |1 - r w|^(-2n) at r = {r} did not converge"
    )))
}

/// `(1 - r^2)^n / |1 - r w|^(2n)` for `0 <= r < 1`.
pub fn poisson_szego_closed_form(r: f64, w: Complex64, n: usize) -> Result<f64> {
    check_n(n)?;
    check_radius(r, false)?;
    let d = (Complex64::new(1.0, 0.0) - w * r).norm_sqr();
    Ok(((1.0 - r * r) / d).powi(n as i32))
}

/// Truncated expansion `sum_{p+q <= l_max} dim H^(p,q) S_n^{p,q}(r) W_{p,q}(w)`.
pub fn poisson_szego_reconstruct(r: f64, w: Complex64, n: usize, l_max: usize) -> Result<f64> {
    check_n(n)?;
    check_radius(r, false)?;
    let cache = DiscPolyCache::global();
    let mut acc = CompensatedComplexSum::new();
    for l in 0..=l_max {
        for p in 0..=l {
            let q = l - p;
            let s = poisson_szego_coefficient(r, p, q, n)?;
            acc.add(cache.get(p, q, n - 2).eval(w) * (dim_h_f64(p, q, n)? * s));
        }
    }
    Ok(acc.value().re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn plane_wave_examples() {
        assert_eq!(
            plane_wave_coefficient(0.0, 0, 0, 3).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        assert_eq!(
            plane_wave_coefficient(0.0, 2, 1, 3).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        let v = plane_wave_coefficient(2.0, 0, 0, 2).unwrap();
        assert_abs_diff_eq!(v.re, 0.5767248077568734, epsilon = 1e-15);
        for (p, q) in [(1, 4), (3, 0), (2, 2)] {
            assert_eq!(
                plane_wave_coefficient(1.7, p, q, 3).unwrap(),
                plane_wave_coefficient(1.7, q, p, 3).unwrap()
            );
        }
        // Continuity through the tiny-radius branch.
        let a = plane_wave_coefficient(1e-150, 0, 0, 4).unwrap();
        assert_relative_eq!(a.re, 1.0, epsilon = 1e-15);
        assert!(plane_wave_coefficient(-1.0, 0, 0, 2).is_err());
    }

    #[test]
    fn poisson_szego_examples() {
        for n in 2..=5 {
            for r in [0.0, 0.3, 0.9, 1.0] {
                assert_abs_diff_eq!(
                    poisson_szego_coefficient(r, 0, 0, n).unwrap(),
                    1.0,
                    epsilon = 1e-15
                );
                for q in 0..=6 {
                    let v = poisson_szego_coefficient(r, 0, q, n).unwrap();
                    assert_relative_eq!(v, r.powi(q as i32), epsilon = 1e-15);
                }
            }
        }
        assert!(poisson_szego_coefficient(1.01, 1, 1, 2).is_err());
        assert!(poisson_szego_coefficient(-0.1, 1, 1, 2).is_err());
    }

    #[test]
    fn approaches_one_at_boundary() {
        for (p, q) in [(1, 1), (3, 5), (10, 10)] {
            let mut last = 0.0;
            for r in [0.9, 0.99, 0.999, 0.9999] {
                let v = poisson_szego_coefficient(r, p, q, 3).unwrap();
                assert!(v > last && v <= 1.0 + 1e-12, "({p},{q}) r={r}: {v}");
                last = v;
            }
            assert!(last > 0.98);
        }
    }

    #[test]
    fn boundary_branch_is_continuous() {
        // Both evaluations at the switching radius and somewhat inside it.
        for (p, q, n) in [(1, 1, 2), (3, 5, 3), (10, 10, 2), (7, 2, 5), (20, 30, 3)] {
            for scale in [1.0, 0.5, 0.1] {
                let e = scale / ((p + n) * (q + n)) as f64;
                let r = (1.0 - e).sqrt();
                let a = direct_series(r, p, q, n).unwrap();
                let b = near_boundary(1.0 - r * r, p, q, n);
                assert!((a - b).abs() < 1e-12, "({p},{q},{n}) e={e}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn near_boundary_values() {
        // Reference values from 40-digit evaluation of the defining series.
        assert_relative_eq!(
            poisson_szego_coefficient(0.999999, 10, 10, 2).unwrap(),
            0.9997802120073833,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            poisson_szego_coefficient(0.999999, 20, 30, 3).unwrap(),
            0.9993504207826897,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            poisson_szego_coefficient(1.0 - 1e-12, 3, 5, 3).unwrap(),
            0.9999999999770005,
            max_relative = 1e-15
        );
    }

    #[test]
    fn inverse_power_series_relation() {
        for n in 2..=4 {
            for (p, q) in [(0, 0), (1, 2), (4, 4), (6, 1)] {
                for r in [0.1, 0.5, 0.8] {
                    let s = poisson_szego_coefficient(r, p, q, n).unwrap();
                    let l = inverse_power_coefficient(r, p, q, n).unwrap();
                    assert_relative_eq!((1.0 - r * r).powi(n as i32) * l, s, max_relative = 1e-12);
                }
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_abs_diff_eq!(
            poisson_szego_closed_form(0.5, Complex64::new(1.0, 0.0), 2).unwrap(),
            9.0,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            poisson_szego_closed_form(0.0, Complex64::new(0.3, 0.9), 3).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            poisson_szego_closed_form(0.4, Complex64::new(0.0, 0.0), 3).unwrap(),
            0.84f64.powi(3),
            epsilon = 1e-15
        );
        assert!(poisson_szego_closed_form(1.0, Complex64::new(0.0, 0.0), 2).is_err());
    }

    #[test]
    fn reconstruction_matches_closed_form() {
        let w = Complex64::new(0.3, 0.2);
        assert_abs_diff_eq!(
            poisson_szego_reconstruct(0.0, w, 2, 0).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        let got = poisson_szego_reconstruct(0.5, w, 2, 40).unwrap();
        let want = poisson_szego_closed_form(0.5, w, 2).unwrap();
        assert_abs_diff_eq!(got, want, epsilon = 1e-6);
    }
}
