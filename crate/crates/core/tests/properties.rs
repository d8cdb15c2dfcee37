use czonal::expansion::{
    expand_profile, expansion_coefficient, plane_wave_coefficient, ExpansionTable, ProfileTaylor,
};
use czonal::polyalg::{canonical_decompose, complex_laplacian, BiPoly, CRational, Monomial};
use czonal::quadrature::{sphere_integrate, DiscRule, SphereRule};
use czonal::specfun::{hyp2f1_terminating, pochhammer, rat, ratio, Rational};
use czonal::zonal::{
    disc_poly, disc_poly_via_jacobi, gamma_coefficient, real_zonal_sum, ZonalKernelSpec,
};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn disc_point() -> impl Strategy<Value = Complex64> {
    (0.0f64..=1.0, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

fn gaussian_rational() -> impl Strategy<Value = CRational> {
    (small_rational(), small_rational()).prop_map(|(re, im)| CRational::new(re, im))
}

/// Up to six terms of bidegree `(p, q)` in `C^n`; may cancel to zero.
fn bihomogeneous(n: usize, p: u32, q: u32) -> impl Strategy<Value = BiPoly> {
    let exps = move |total: u32| {
        proptest::collection::vec(0..=total, n - 1).prop_map(move |mut cuts| {
            cuts.sort_unstable();
            let mut out = Vec::with_capacity(n);
            let mut prev = 0;
            for c in cuts {
                out.push(c - prev);
                prev = c;
            }
            out.push(total - prev);
            out
        })
    };
    proptest::collection::vec((exps(p), exps(q), gaussian_rational()), 1..=6).prop_map(
        move |terms| {
            let mut poly = BiPoly::zero(n).unwrap();
            for (a, b, c) in terms {
                poly.add_term(Monomial::new(a, b), c);
            }
            poly
        },
    )
}

fn unit_vector(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
        .prop_filter("non-degenerate", |v| {
            v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-2
        })
        .prop_map(|v| {
            let norm = v.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
            v.into_iter()
                .map(|(a, b)| Complex64::new(a / norm, b / norm))
                .collect()
        })
}

/// Product of Givens rotations in every coordinate plane, then diagonal phases.
fn unitary(n: usize) -> impl Strategy<Value = Vec<Vec<Complex64>>> {
    let planes = n * (n - 1) / 2;
    (
        proptest::collection::vec((0.0f64..6.3, 0.0f64..6.3), planes),
        proptest::collection::vec(0.0f64..6.3, n),
    )
        .prop_map(move |(rots, phases)| {
            let mut u: Vec<Vec<Complex64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                Complex64::one()
                            } else {
                                Complex64::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            let mut it = rots.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let (theta, phi) = it.next().unwrap();
                    let (c, s) = (theta.cos(), Complex64::from_polar(theta.sin(), phi));
                    for row in u.iter_mut() {
                        let (a, b) = (row[i], row[j]);
                        row[i] = a * c - b * s.conj();
                        row[j] = a * s + b * c;
                    }
                }
            }
            for row in u.iter_mut() {
                for (x, ph) in row.iter_mut().zip(&phases) {
                    *x *= Complex64::from_polar(1.0, *ph);
                }
            }
            u
        })
}

fn apply(u: &[Vec<Complex64>], v: &[Complex64]) -> Vec<Complex64> {
    u.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_stay_reduced(a in small_rational(), b in small_rational(), c in small_rational()) {
        for r in [&a * &b + &c, &a - &b * &c, (&a + &b) * (&b - &c)] {
            prop_assert!(r.denom().is_positive());
            prop_assert!(r.numer().gcd(r.denom()).is_one());
        }
    }

    #[test]
    fn pochhammer_recursion(r in small_rational(), j in 0usize..15) {
        let next = pochhammer(&r, j) * (&r + rat(j as i64));
        prop_assert_eq!(pochhammer(&r, j + 1), next);
    }

    #[test]
    fn chu_vandermonde(k in 0usize..=12, j in 0usize..=12, alpha in 0usize..=8) {
        let a1 = rat(alpha as i64 + 1);
        let lhs = hyp2f1_terminating(
            -(k as i64),
            &rat(-(j as i64)),
            &rat(-((alpha + k + j) as i64)),
            &Rational::one(),
        ).unwrap();
        prop_assert_eq!(lhs, pochhammer(&a1, k) * pochhammer(&a1, j) / pochhammer(&a1, k + j));
    }

    #[test]
    fn bipoly_never_stores_zeros(p in bihomogeneous(3, 2, 1)) {
        let diff = &p - &p;
        prop_assert!(diff.is_zero());
        for poly in [&p, &(&p + &p), &complex_laplacian(&p)] {
            prop_assert!(poly.terms().all(|(_, c)| !c.is_zero()));
        }
        if !p.is_zero() {
            prop_assert!(p.is_bihomogeneous_of(2, 1));
        }
    }

    #[test]
    fn bipoly_json_roundtrip(p in bihomogeneous(2, 3, 2)) {
        prop_assert_eq!(BiPoly::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn laplacian_is_linear(a in bihomogeneous(2, 2, 2), b in bihomogeneous(2, 2, 2), c in gaussian_rational()) {
        let lhs = complex_laplacian(&(&a.scale(&c) + &b));
        let rhs = &complex_laplacian(&a).scale(&c) + &complex_laplacian(&b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn harmonic_components_invariants(p in bihomogeneous(3, 3, 2)) {
        prop_assume!(!p.is_zero());
        let h = canonical_decompose(&p).unwrap();
        prop_assert_eq!(h.components.len(), 3);
        for (k, comp) in h.components.iter().enumerate() {
            prop_assert!(comp.is_zero() || comp.is_bihomogeneous_of(3 - k, 2 - k));
            prop_assert!(complex_laplacian(comp).is_zero());
        }
        prop_assert_eq!(h.reconstruct(), p);
    }

    #[test]
    fn gamma_sum_is_one(p in 0usize..=25, q in 0usize..=25, n in 2usize..=12) {
        let s: Rational = (0..=p.min(q)).map(|k| gamma_coefficient(p, q, k, n).unwrap()).sum();
        prop_assert!(s.is_one());
    }

    #[test]
    fn disc_polynomial_bounds(p in 0usize..=8, q in 0usize..=8, alpha in 0usize..=6, w in disc_point()) {
        let t = disc_poly(p, q, alpha);
        prop_assert!(t.value_at_one().is_one());
        let v = t.eval(w);
        prop_assert!(v.norm() <= 1.0 + 1e-12, "|W| = {}", v.norm());
        prop_assert!((v - disc_poly_via_jacobi(p, q, alpha, w)).norm() <= 1e-12);
    }

    #[test]
    fn zonal_sum_sees_only_real_part(l in 0usize..=8, n in 2usize..=4, x in -0.99f64..0.99, s in -1.0f64..1.0, t in -1.0f64..1.0) {
        let ymax = (1.0 - x * x).sqrt();
        let a = real_zonal_sum(l, n, Complex64::new(x, s * ymax)).unwrap();
        let b = real_zonal_sum(l, n, Complex64::new(x, t * ymax)).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0));
    }

    #[test]
    fn kernel_is_one_at_pole_and_unitarily_invariant(
        p in 0usize..=5,
        q in 0usize..=5,
        eta in unit_vector(3),
        xi in unit_vector(3),
        u in unitary(3),
    ) {
        let z = ZonalKernelSpec::new(p, q, eta.clone()).unwrap();
        prop_assert!((z.eval(&eta).unwrap() - 1.0).norm() <= 1e-12);
        let moved = ZonalKernelSpec::new(p, q, apply(&u, &eta)).unwrap();
        let a = z.eval(&xi).unwrap();
        let b = moved.eval(&apply(&u, &xi)).unwrap();
        prop_assert!((a - b).norm() <= 1e-12);
    }

    #[test]
    fn sphere_rule_ignores_the_pole(eta in unit_vector(3), u in unitary(3), p in 0usize..=3, q in 0usize..=3) {
        let rule = SphereRule::for_degree(3, 2 * (p + q) + 2).unwrap();
        let one = sphere_integrate(|_| Complex64::one(), 3, &rule).unwrap();
        prop_assert!((one - 1.0).norm() <= 1e-12);
        let f = |pole: Vec<Complex64>| {
            let z = ZonalKernelSpec::new(p, q, pole).unwrap();
            sphere_integrate(|x| { let v = z.eval(x).unwrap(); v * v.conj() }, 3, &rule).unwrap()
        };
        let a = f(eta.clone());
        let b = f(apply(&u, &eta));
        prop_assert!((a - b).norm() <= 1e-12);
    }

    #[test]
    fn real_profiles_have_hermitian_coefficients(
        coeffs in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 9),
        n in 2usize..=4,
    ) {
        // T(k,j) = conj T(j,k) on j + k <= 4 makes the profile real-valued.
        let mut terms = Vec::new();
        let mut it = coeffs.into_iter();
        for j in 0..=2usize {
            for k in j..=4 - j {
                let (re, im) = it.next().unwrap();
                let c = if j == k { Complex64::new(re, 0.0) } else { Complex64::new(re, im) };
                terms.push(((j, k), c));
                if j != k {
                    terms.push(((k, j), c.conj()));
                }
            }
        }
        let profile = ProfileTaylor::polynomial(terms);
        let table = expand_profile(&profile, n, 4).unwrap();
        for ((p, q), entry) in table.ordered() {
            let mirror = table.get(q, p).unwrap();
            prop_assert!((entry.value - mirror.conj()).norm() <= 1e-12);
            prop_assert!(p + q <= 4);
        }
        let back = ExpansionTable::from_json(&table.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), table.to_json());
        prop_assert_eq!(expansion_coefficient(&profile, 0, 0, n).unwrap(), table.get(0, 0).unwrap());
    }

    #[test]
    fn plane_wave_is_symmetric(r in 0.0f64..8.0, p in 0usize..=20, q in 0usize..=20, n in 2usize..=5) {
        let a = plane_wave_coefficient(r, p, q, n).unwrap();
        let b = plane_wave_coefficient(r, q, p, n).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn disc_rule_json_roundtrip(alpha in 0usize..=6, radial in 1usize..=8, angular in 1usize..=12) {
        let rule = czonal::quadrature::build_disc_rule(alpha, radial, angular).unwrap();
        prop_assert_eq!(DiscRule::from_json(&rule.to_json()).unwrap(), rule);
    }
}
