//! The identity suite behind `czonal verify`.

use czonal::expansion::{
    expansion_coefficient, inverse_power_coefficient, plane_wave_coefficient,
    poisson_szego_coefficient, poisson_szego_inner_sum, poisson_szego_inner_sum_closed,
    ProfileTaylor,
};
use czonal::polyalg::{brute_force_decompose, canonical_decompose, BiPoly, CRational};
use czonal::quadrature::{disc_integrate, integral_coefficient, DiscRule};
use czonal::specfun::{hyp2f1_terminating, pochhammer, rat, Rational};
use czonal::zonal::regression::erroneous_unity_sum;
use czonal::zonal::{
    dim_h, dim_h_f64, disc_poly, disc_poly_via_jacobi, gamma_coefficient, real_zonal_sum,
};
use num_complex::Complex64;
use serde::Serialize;

use crate::config::{Format, Job};
use crate::CliError;

const DEFAULT_MAX: usize = 10;
const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Serialize)]
struct Failure {
    invariant: &'static str,
    case: String,
    detail: String,
}

#[derive(Debug, Serialize)]
struct Outcome {
    invariant: &'static str,
    passed: bool,
    cases: usize,
    failed: usize,
}

#[derive(Debug, Serialize)]
pub struct Report {
    n: usize,
    max_bidegree: usize,
    tolerance: f64,
    results: Vec<Outcome>,
    failures: Vec<Failure>,
}

impl Report {
    pub fn failure_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Suite {
    n: usize,
    max: usize,
    tol: f64,
    results: Vec<Outcome>,
    failures: Vec<Failure>,
}

impl Suite {
    /// Runs `check` on every case; a case fails on `Err(detail)`.
    fn check<C, F>(&mut self, invariant: &'static str, cases: C, mut f: F)
    where
        C: IntoIterator,
        C::Item: std::fmt::Debug,
        F: FnMut(&C::Item) -> Result<(), String>,
    {
        let (mut total, mut failed) = (0, 0);
        for case in cases {
            total += 1;
            if let Err(detail) = f(&case) {
                failed += 1;
                self.failures.push(Failure {
                    invariant,
                    case: format!("{case:?}"),
                    detail,
                });
            }
        }
        self.results.push(Outcome {
            invariant,
            passed: failed == 0,
            cases: total,
            failed,
        });
    }
}

fn grid(max: usize) -> Vec<(usize, usize)> {
    (0..=max)
        .flat_map(|p| (0..=max).map(move |q| (p, q)))
        .collect()
}

fn disc_grid() -> Vec<Complex64> {
    // 10 radii x 10 angles, including the boundary circle.
    let mut pts = Vec::with_capacity(100);
    for i in 1..=10 {
        let rad = i as f64 / 10.0;
        for j in 0..10 {
            let t = std::f64::consts::TAU * (j as f64 + 0.25) / 10.0;
            pts.push(Complex64::from_polar(rad, t));
        }
    }
    pts
}

fn compositions(n: usize, total: usize) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![total as u32]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(n - 1, total - first)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first as u32);
                    rest
                })
        })
        .collect()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn build_report(n: usize, max: usize, tol: f64) -> Report {
    let mut s = Suite {
        n,
        max,
        tol,
        results: Vec::new(),
        failures: Vec::new(),
    };
    let cells = grid(max);

    s.check("decomposition_of_unity", cells.clone(), |&(p, q)| {
        let sum: Rational = (0..=p.min(q))
            .map(|k| gamma_coefficient(p, q, k, n))
            .collect::<czonal::Result<Vec<_>>>()
            .map_err(err)?
            .into_iter()
            .sum();
        if sum == rat(1) {
            Ok(())
        } else {
            Err(format!("sum is {sum}"))
        }
    });

    s.check(
        "erroneous_unity_regression",
        [(2usize, 2usize, 3usize)],
        |&(m, q, nn)| {
            let wrong = erroneous_unity_sum(m, q, nn);
            let right: Rational = (0..=2)
                .map(|k| gamma_coefficient(2, 3, k, 2).unwrap())
                .sum();
            if wrong == Rational::new(149.into(), 10.into()) && right == rat(1) {
                Ok(())
            } else {
                Err(format!("erroneous sum {wrong}, corrected sum {right}"))
            }
        },
    );

    let alpha = n - 2;
    s.check("chu_vandermonde", cells.clone(), |&(k, j)| {
        let a1 = rat(alpha as i64 + 1);
        let lhs = hyp2f1_terminating(
            -(k as i64),
            &rat(-(j as i64)),
            &rat(-((alpha + k + j) as i64)),
            &rat(1),
        )
        .map_err(err)?;
        let rhs = pochhammer(&a1, k) * pochhammer(&a1, j) / pochhammer(&a1, k + j);
        if lhs == rhs {
            Ok(())
        } else {
            Err(format!("{lhs} vs {rhs}"))
        }
    });

    s.check("disc_value_at_one", cells.clone(), |&(p, q)| {
        let v = disc_poly(p, q, alpha).value_at_one();
        if v == rat(1) {
            Ok(())
        } else {
            Err(format!("W(1) = {v}"))
        }
    });

    let pts = disc_grid();
    s.check("disc_form_equivalence", cells.clone(), |&(p, q)| {
        let table = disc_poly(p, q, alpha);
        for &w in &pts {
            let d = (table.eval(w) - disc_poly_via_jacobi(p, q, alpha, w)).norm();
            if d > tol {
                return Err(format!("difference {d:e} at w = {w}"));
            }
        }
        Ok(())
    });

    s.check("summation_formula", 0..=max, |&l| {
        let total: f64 = (0..=l).map(|p| dim_h_f64(p, l - p, n).unwrap()).sum();
        let at_one = real_zonal_sum(l, n, Complex64::new(1.0, 0.0)).map_err(err)?;
        s_close(tol, at_one, total, "value at 1")?;
        for &w in pts.iter().take(25) {
            let a = real_zonal_sum(l, n, w).map_err(err)?;
            let b = real_zonal_sum(l, n, w.conj()).map_err(err)?;
            let c = real_zonal_sum(l, n, Complex64::new(w.re, -0.5 * w.im)).map_err(err)?;
            if (a - b).abs() > tol * total || (a - c).abs() > tol * total {
                return Err(format!("values {a}, {b}, {c} at Re w = {}", w.re));
            }
        }
        Ok(())
    });

    let dmax = max.min(if n <= 4 { 2 } else { 1 });
    let monomials: Vec<(Vec<u32>, Vec<u32>)> = grid(dmax)
        .into_iter()
        .flat_map(|(p, q)| {
            let bs = compositions(n, q);
            compositions(n, p)
                .into_iter()
                .flat_map(move |a| bs.clone().into_iter().map(move |b| (a.clone(), b)))
        })
        .collect();
    s.check("canonical_decomposition", monomials, |(a, b)| {
        let one = CRational::new(rat(1), rat(0));
        let poly = BiPoly::monomial(a, b, one).map_err(err)?;
        let canon = canonical_decompose(&poly).map_err(err)?;
        if canon.reconstruct() != poly {
            return Err("reconstruction differs".into());
        }
        if !canon.is_harmonic() {
            return Err("component not harmonic".into());
        }
        if brute_force_decompose(&poly).map_err(err)? != canon {
            return Err("linear-solver oracle disagrees".into());
        }
        Ok(())
    });

    let cmax = max.min(3);
    let rule = DiscRule::for_degree(alpha, 4 * cmax).expect("rule builds");
    let profiles: Vec<(usize, usize, usize, usize)> = grid(cmax)
        .into_iter()
        .flat_map(|(a, b)| grid(cmax).into_iter().map(move |(p, q)| (a, b, p, q)))
        .collect();
    s.check("coefficient_oracle", profiles, |&(a, b, p, q)| {
        let profile = ProfileTaylor::monomial(a, b);
        let d = expansion_coefficient(&profile, p, q, n).map_err(err)?;
        let i = integral_coefficient(|w| profile.eval(w).unwrap(), p, q, n, &rule).map_err(err)?;
        let diff = (d - i).norm();
        if diff <= tol {
            Ok(())
        } else {
            Err(format!("differential {d} vs integral {i}"))
        }
    });

    let rmax = max.min(5);
    let rule = DiscRule::for_degree(alpha, 4 * rmax).expect("rule builds");
    let pairs: Vec<((usize, usize), (usize, usize))> = grid(rmax)
        .into_iter()
        .flat_map(|a| grid(rmax).into_iter().map(move |b| (a, b)))
        .collect();
    s.check("reproducing_identity", pairs, |&((p, q), (p2, q2))| {
        let w1 = disc_poly(p, q, alpha);
        let w2 = disc_poly(p2, q2, alpha);
        let v = disc_integrate(|w| w1.eval(w) * w2.eval(w).conj(), &rule);
        let want = if (p, q) == (p2, q2) {
            1.0 / dim_h_f64(p, q, n).unwrap()
        } else {
            0.0
        };
        let scale = dim_h_f64(p, q, n).unwrap();
        if ((v - want) * scale).norm() <= tol {
            Ok(())
        } else {
            Err(format!("inner product {v}, expected {want}"))
        }
    });

    s.check("poisson_szego_series", cells.clone(), |&(p, q)| {
        let one = poisson_szego_coefficient(1.0, p, q, n).map_err(err)?;
        s_close(tol, one, 1.0, "boundary value")?;
        let r = 0.5;
        let sv = poisson_szego_coefficient(r, p, q, n).map_err(err)?;
        let lv = inverse_power_coefficient(r, p, q, n).map_err(err)?;
        if sv < 0.0 {
            return Err(format!("negative coefficient {sv}"));
        }
        let lhs = (1.0 - r * r).powi(n as i32) * lv;
        if (lhs - sv).abs() <= tol * sv {
            Ok(())
        } else {
            Err(format!("unnormalized series gives {lhs}, coefficient {sv}"))
        }
    });

    let smax = max.clamp(1, 5);
    let inner: Vec<(usize, usize, usize)> = (1..=smax)
        .flat_map(|p| (1..=smax).flat_map(move |q| (0..=6).map(move |k| (p, q, k))))
        .collect();
    s.check("pfaff_saalschutz_inner_sum", inner, |&(p, q, k)| {
        let a = poisson_szego_inner_sum(p, q, k, n);
        let b = poisson_szego_inner_sum_closed(p, q, k, n).map_err(err)?;
        if a == b {
            Ok(())
        } else {
            Err(format!("{a} vs {b}"))
        }
    });

    s.check("plane_wave_symmetry", cells.clone(), |&(p, q)| {
        let a = plane_wave_coefficient(2.0, p, q, n).map_err(err)?;
        let b = plane_wave_coefficient(2.0, q, p, n).map_err(err)?;
        if a == b {
            Ok(())
        } else {
            Err(format!("{a} vs {b}"))
        }
    });

    s.check("dimension_count", 0..=max, |&l| {
        // sum_{p+q=l} dim H^(p,q) is the dimension of real harmonics of degree l on R^{2n}.
        let sum: Rational = (0..=l)
            .map(|p| Rational::from_integer(dim_h(p, l - p, n).unwrap()))
            .sum();
        let d = 2 * n;
        let want = if l < 2 {
            Rational::from_integer(czonal::specfun::binomial((l + d - 1) as u64, l as u64))
        } else {
            Rational::from_integer(
                czonal::specfun::binomial((l + d - 1) as u64, l as u64)
                    - czonal::specfun::binomial((l + d - 3) as u64, (l - 2) as u64),
            )
        };
        if sum == want {
            Ok(())
        } else {
            Err(format!("{sum} vs {want}"))
        }
    });

    Report {
        n: s.n,
        max_bidegree: s.max,
        tolerance: s.tol,
        results: s.results,
        failures: s.failures,
    }
}

fn s_close(tol: f64, got: f64, want: f64, what: &str) -> Result<(), String> {
    if (got - want).abs() <= tol * want.abs().max(1.0) {
        Ok(())
    } else {
        Err(format!("{what}: {got} vs {want}"))
    }
}

/// Runs the suite; a failing invariant turns into [`CliError::Identity`].
pub fn run(job: &Job) -> Result<String, CliError> {
    let n = job.dimension()?;
    let max = job.max_bidegree.unwrap_or(DEFAULT_MAX);
    let tol = job.tolerance.unwrap_or(DEFAULT_TOLERANCE);
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(CliError::Validation(format!(
            "--tolerance must be finite and >= 0, got {tol}"
        )));
    }
    let report = build_report(n, max, tol);
    let text = match job.format {
        Some(Format::Json) => report.failure_json() + "\n",
        _ => {
            let mut out = String::new();
            for r in &report.results {
                if r.passed {
                    out.push_str(&format!(
                        "{}: pass ({} {})\n",
                        r.invariant,
                        r.cases,
                        if r.cases == 1 { "case" } else { "cases" }
                    ));
                } else {
                    out.push_str(&format!(
                        "{}: FAIL ({} of {} cases)\n",
                        r.invariant, r.failed, r.cases
                    ));
                }
            }
            out
        }
    };
    if report.failures.is_empty() {
        Ok(text)
    } else {
        Err(CliError::Identity {
            output: text,
            report: report.failure_json(),
        })
    }
}
