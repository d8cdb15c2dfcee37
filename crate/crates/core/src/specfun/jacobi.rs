//! Jacobi polynomials by three-term recurrence.

/// `P_m^{(mu, nu)}(t)`, evaluated by the standard three-term recurrence
/// starting from `P_0 = 1`. Requires `mu, nu > -1`.
pub fn jacobi_p(mu: f64, nu: f64, m: usize, t: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let ab = mu + nu;
    let mut prev = 1.0;
    let mut cur = 0.5 * (mu - nu + (ab + 2.0) * t);
    for k in 2..=m {
        let k = k as f64;
        let c = 2.0 * k + ab;
        let a1 = 2.0 * k * (k + ab) * (c - 2.0);
        let a2 = (c - 1.0) * (mu * mu - nu * nu);
        let a3 = (c - 2.0) * (c - 1.0) * c;
        let a4 = 2.0 * (k + mu - 1.0) * (k + nu - 1.0) * c;
        let next = ((a2 + a3 * t) * cur - a4 * prev) / a1;
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_m^{(mu, nu)}(1) = (mu + 1)_m / m!`.
pub fn jacobi_p_at_one(mu: f64, m: usize) -> f64 {
    (1..=m).fold(1.0, |acc, k| acc * (mu + k as f64) / k as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{factorial, hyp2f1_terminating, pochhammer, rat, ratio, to_f64, Rational};
    use approx::assert_relative_eq;

    #[test]
    fn degree_zero() {
        assert_eq!(jacobi_p(2.5, 1.0, 0, 0.3), 1.0);
    }

    #[test]
    fn legendre_specialisation() {
        assert_relative_eq!(jacobi_p(0.0, 0.0, 2, 0.5), -0.125, epsilon = 1e-15);
        assert_relative_eq!(jacobi_p(0.0, 0.0, 1, 0.3), 0.3, epsilon = 1e-15);
    }

    #[test]
    fn value_at_one() {
        for mu in [0.0, 1.0, 3.0, 6.0, 0.5] {
            for m in 0..=20 {
                assert_relative_eq!(
                    jacobi_p(mu, 2.0, m, 1.0),
                    jacobi_p_at_one(mu, m),
                    max_relative = 1e-13
                );
            }
        }
    }

    // Oracle: P_m(t) = (mu+1)_m / m! * 2F1(-m, m+mu+nu+1; mu+1; (1-t)/2),
    // summed exactly in rationals at rational grid points.
    fn exact_hypergeometric(mu: i64, nu: i64, m: usize, t: &Rational) -> f64 {
        let b = rat(m as i64 + mu + nu + 1);
        let c = rat(mu + 1);
        let x = (rat(1) - t) / rat(2);
        let f = hyp2f1_terminating(-(m as i64), &b, &c, &x).unwrap();
        to_f64(&(pochhammer(&c, m) / Rational::from_integer(factorial(m as u64)) * f))
    }

    #[test]
    fn matches_hypergeometric_form() {
        for mu in [0i64, 1, 3, 6] {
            for nu in [0i64, 2, 5, 10] {
                for m in 0..=30usize {
                    for i in 0..=40i64 {
                        let t = ratio(i - 20, 20);
                        let want = exact_hypergeometric(mu, nu, m, &t);
                        let got = jacobi_p(mu as f64, nu as f64, m, to_f64(&t));
                        // Relative to the sup-norm on [-1, 1], reached at an endpoint.
                        let sup = jacobi_p_at_one(mu as f64, m).max(jacobi_p_at_one(nu as f64, m));
                        assert!(
                            (got - want).abs() <= 1e-12 * sup,
                            "mu={mu} nu={nu} m={m} t={t}: {got} vs {want}"
                        );
                    }
                }
            }
        }
    }
}
