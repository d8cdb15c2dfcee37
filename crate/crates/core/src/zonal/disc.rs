use num_complex::Complex64;

use crate::specfun::{jacobi_p, jacobi_p_at_one, pochhammer, rat, to_f64, Rational};

/// Coefficient table of the disc polynomial
///
/// ```text
/// W^a_{p,q}(w) = sum_{j=0}^{min(p,q)} c_j w^{p-j} conj(w)^{q-j}
/// ```
///
/// i.e. `w^p conj(w)^q 2F1(-p, -q; -a-p-q; 1/|w|^2)` multiplied out, which
/// removes the apparent singularity at `w = 0`. Normalized so `W(1) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscPolyTable {
    pub p: usize,
    pub q: usize,
    pub alpha: usize,
    coeffs: Vec<Rational>,
    // Each c_j as an unevaluated sum hi + lo of two doubles.
    coeffs_dd: Vec<(f64, f64)>,
}

/// Builds the table for `W^alpha_{p,q}`.
pub fn disc_poly(p: usize, q: usize, alpha: usize) -> DiscPolyTable {
    let m = p.min(q);
    let a1 = rat(alpha as i64 + 1);
    let lead = pochhammer(&a1, p + q) / (pochhammer(&a1, p) * pochhammer(&a1, q));
    let mp = rat(-(p as i64));
    let mq = rat(-(q as i64));
    let c = rat(-((alpha + p + q) as i64));
    let mut coeffs = Vec::with_capacity(m + 1);
    let mut term = lead;
    coeffs.push(term.clone());
    for j in 0..m {
        let jj = rat(j as i64);
        // c + j < 0 for j < m <= p + q, so the ratio is always finite.
        term = term * (&mp + &jj) * (&mq + &jj) / ((&c + &jj) * rat(j as i64 + 1));
        coeffs.push(term.clone());
    }
    let coeffs_dd = coeffs
        .iter()
        .map(|c| {
            let hi = to_f64(c);
            let hi_exact = Rational::from_float(hi).expect("finite coefficient");
            (hi, to_f64(&(c - hi_exact)))
        })
        .collect();
    DiscPolyTable {
        p,
        q,
        alpha,
        coeffs,
        coeffs_dd,
    }
}

impl DiscPolyTable {
    /// `c_j` for `j = 0..=min(p, q)`.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Exact value at `w = 1` (always 1).
    pub fn value_at_one(&self) -> Rational {
        self.coeffs.iter().sum()
    }

    /// Horner evaluation in `|w|^2` after factoring out `w^{p-m} conj(w)^{q-m}`.
    ///
    /// The coefficients alternate in sign and grow like binomials, so the
    /// radial part is evaluated with compensated Horner on double-double
    /// coefficients. The result is accurate to a few ulps of `sup |W| = 1`.
    pub fn eval(&self, w: Complex64) -> Complex64 {
        if cfg!(debug_assertions) && w.norm() > 1.0 + 1e-12 {
            log::debug!("disc polynomial evaluated outside the closed disc at {w}");
        }
        let m = self.p.min(self.q);
        let (s_hi, s_lo) = norm_sqr_dd(w);
        // c_j multiplies s^{m-j}: start Horner from c_0.
        let (mut hi, mut lo) = (0.0f64, 0.0f64);
        for &(c_hi, c_lo) in &self.coeffs_dd {
            let p = hi * s_hi;
            let p_err = hi.mul_add(s_hi, -p) + hi * s_lo + lo * s_hi;
            let (t, t_err) = two_sum(p, c_hi);
            let (h, l) = quick_two_sum(t, t_err + p_err + c_lo);
            hi = h;
            lo = l;
        }
        let acc = hi + lo;
        let mut prefix = Complex64::new(1.0, 0.0);
        if self.p > m {
            prefix *= w.powu((self.p - m) as u32);
        }
        if self.q > m {
            prefix *= w.conj().powu((self.q - m) as u32);
        }
        prefix * acc
    }

    /// CSV with columns `j,c_num,c_den`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("j,c_num,c_den\n");
        for (j, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{j},{},{}\n", c.numer(), c.denom()));
        }
        out
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn norm_sqr_dd(w: Complex64) -> (f64, f64) {
    let x2 = w.re * w.re;
    let y2 = w.im * w.im;
    let (s, e) = two_sum(x2, y2);
    (s, e + w.re.mul_add(w.re, -x2) + w.im.mul_add(w.im, -y2))
}

/// Evaluates a disc-polynomial table at `w`.
pub fn disc_poly_eval(table: &DiscPolyTable, w: Complex64) -> Complex64 {
    table.eval(w)
}

/// `W^alpha_{p,q}(w)` through the Jacobi form
/// `w^{p-m} conj(w)^{q-m} P^{(alpha,|p-q|)}_m(2|w|^2 - 1) / P^{(alpha,|p-q|)}_m(1)`.
pub fn disc_poly_via_jacobi(p: usize, q: usize, alpha: usize, w: Complex64) -> Complex64 {
    let m = p.min(q);
    let nu = p.abs_diff(q) as f64;
    let a = alpha as f64;
    let radial = jacobi_p(a, nu, m, 2.0 * w.norm_sqr() - 1.0) / jacobi_p_at_one(a, m);
    let mut prefix = Complex64::new(1.0, 0.0);
    if p > m {
        prefix *= w.powu((p - m) as u32);
    }
    if q > m {
        prefix *= w.conj().powu((q - m) as u32);
    }
    prefix * radial
}
