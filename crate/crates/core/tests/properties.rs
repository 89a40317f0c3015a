use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use umbilic_core::constructions::{Polynomial, PolynomialGraph};
use umbilic_core::diagnostics::{
    check_alexandrov, check_quasi_cmc, check_wedge, quasi_cmc_margin, tau_interpolant, wedge_margin, CertConfig,
    WedgeParams,
};
use umbilic_core::elliptic::{beltrami, complex_gradient, ellipticity_bound, j_functional, EllipticCoefficients};
use umbilic_core::index::{winding_number, LoopSampling};
use umbilic_core::surface::{finite_difference_jet, shape_operator, CurvaturePoint, Domain, GraphSurface, Jet2};

/// Curvatures from the two fundamental forms, written out independently.
fn fundamental_forms(j: &Jet2) -> (f64, f64) {
    let (e, f, g) = (1.0 + j.p * j.p, j.p * j.q, 1.0 + j.q * j.q);
    let w = (1.0 + j.p * j.p + j.q * j.q).sqrt();
    let (l, m, n) = (j.r / w, j.s / w, j.t / w);
    let den = e * g - f * f;
    ((e * n - 2.0 * f * m + g * l) / (2.0 * den), (l * n - m * m) / den)
}

fn jet() -> impl Strategy<Value = Jet2> {
    (-5.0..5.0f64, -5.0..5.0f64, -5.0..5.0f64, -5.0..5.0f64, -5.0..5.0f64)
        .prop_map(|(p, q, r, s, t)| Jet2::new(p, q, r, s, t))
}

fn pair() -> impl Strategy<Value = CurvaturePoint> {
    (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(a, b)| CurvaturePoint::from_principal([a, b], a, b))
}

fn cubic() -> impl Strategy<Value = Vec<(f64, u32, u32)>> {
    proptest::collection::vec(-3.0..3.0f64, 10).prop_map(|c| {
        let mut terms = Vec::new();
        let mut k = 0;
        for deg in 0..=3u32 {
            for i in 0..=deg {
                terms.push((c[k], deg - i, i));
                k += 1;
            }
        }
        terms
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn principal_curvatures_are_consistent(j in jet()) {
        let pt = CurvaturePoint::from_jet(0.0, 0.0, &j).unwrap();
        let (h, k) = fundamental_forms(&j);
        let scale = 1.0 + h.abs() + k.abs().sqrt();
        prop_assert!(pt.kappa1 >= pt.kappa2);
        prop_assert!((pt.h - h).abs() <= 1e-12 * scale);
        prop_assert!((pt.k - k).abs() <= 1e-12 * scale * scale);
        prop_assert!((pt.kappa1 + pt.kappa2 - 2.0 * h).abs() <= 1e-8 * scale);
        prop_assert!((pt.kappa1 * pt.kappa2 - k).abs() <= 1e-8 * scale * scale);
        let (e1, e2) = shape_operator(&j, 0.0, 0.0).eigenvalues();
        let (big, small) = if e1 >= e2 { (e1, e2) } else { (e2, e1) };
        prop_assert!((big - pt.kappa1).abs() <= 1e-8 * scale && (small - pt.kappa2).abs() <= 1e-8 * scale);
    }

    #[test]
    fn curvatures_do_not_depend_on_the_chart(j in jet(), angle in 0.0..std::f64::consts::TAU) {
        let a = CurvaturePoint::from_jet(0.0, 0.0, &j).unwrap();
        let b = CurvaturePoint::from_jet(0.0, 0.0, &j.in_rotated_chart(angle)).unwrap();
        let scale = 1.0 + a.kappa1.abs() + a.kappa2.abs();
        prop_assert!((a.kappa1 - b.kappa1).abs() <= 1e-9 * scale);
        prop_assert!((a.kappa2 - b.kappa2).abs() <= 1e-9 * scale);
    }

    #[test]
    fn finite_differences_are_exact_on_cubics(terms in cubic(), x in -0.5..0.5f64, y in -0.5..0.5f64) {
        let g = PolynomialGraph::new(Polynomial::new(terms), Domain::square(1.0));
        let fd = finite_difference_jet(|x, y| g.value(x, y), &g.domain(), x, y, 1e-3).unwrap();
        let exact = g.jet(x, y);
        for (a, b) in [(fd.jet.p, exact.p), (fd.jet.q, exact.q), (fd.jet.r, exact.r), (fd.jet.s, exact.s), (fd.jet.t, exact.t)] {
            prop_assert!((a - b).abs() <= 1e-7, "{fd:?} vs {exact:?}");
        }
    }

    #[test]
    fn rotated_chart_matches_differences_of_the_composite(terms in cubic(), angle in 0.0..std::f64::consts::TAU) {
        let g = PolynomialGraph::new(Polynomial::new(terms), Domain::square(2.0));
        let (sn, cs) = angle.sin_cos();
        let (x0, y0) = (0.3, -0.2);
        // u ∘ R evaluated at R^{-1}(x0, y0).
        let composite = |x: f64, y: f64| g.value(cs * x - sn * y, sn * x + cs * y);
        let (xr, yr) = (cs * x0 + sn * y0, -sn * x0 + cs * y0);
        let fd = finite_difference_jet(composite, &Domain::square(2.0), xr, yr, 1e-3).unwrap().jet;
        let rot = g.jet(x0, y0).in_rotated_chart(angle);
        let a = CurvaturePoint::from_jet(xr, yr, &fd).unwrap();
        let b = CurvaturePoint::from_jet(xr, yr, &rot).unwrap();
        prop_assert!((a.kappa1 - b.kappa1).abs() <= 1e-7 && (a.kappa2 - b.kappa2).abs() <= 1e-7);
        prop_assert!((fd.p - rot.p).abs() <= 1e-7 && (fd.s - rot.s).abs() <= 1e-7);
    }

    #[test]
    fn wedge_constants_round_trip(mu in 0.0..0.999f64, c in -3.0..3.0f64) {
        let a = WedgeParams::from_mu(mu, c).unwrap();
        let b = WedgeParams::from_lambda(a.lambda, c).unwrap();
        prop_assert!((b.mu - mu).abs() <= 1e-14 * (1.0 + a.lambda.abs()));
        prop_assert!((a.m1 * a.m2 - 1.0).abs() <= 1e-14);
        for m in [a.m1, a.m2] {
            let poly = m * m - 2.0 * a.lambda * m + 1.0;
            prop_assert!(poly.abs() <= 1e-10 * (1.0 + m * m), "{poly}");
        }
        prop_assert!(a.m2 <= -1.0 && a.m1 >= -1.0 && a.m1 < 0.0);
    }

    #[test]
    fn wedge_and_quasi_cmc_verdicts_agree(pts in proptest::collection::vec(pair(), 1..40), mu in 0.0..0.99f64, c in -3.0..3.0f64) {
        let params = WedgeParams::from_mu(mu, c).unwrap();
        let cfg = CertConfig::default();
        let w = check_wedge(&pts, &params, &cfg);
        prop_assert!(w.consistent());
        let q = check_quasi_cmc(&pts, c, mu, &cfg).unwrap();
        prop_assert_eq!(w.certificate.holds(), q.holds());
        for p in &pts {
            let ratio = wedge_margin(p.kappa1, p.kappa2, &params) / quasi_cmc_margin(p, c, mu);
            if quasi_cmc_margin(p, c, mu).abs() > 1e-6 {
                prop_assert!((ratio - params.margin_ratio()).abs() <= 1e-6 * params.margin_ratio());
            }
        }
    }

    #[test]
    fn lambda_minus_one_is_the_constant_mean_curvature_wedge(p in pair(), c in -3.0..3.0f64) {
        let params = WedgeParams::from_lambda(-1.0, c).unwrap();
        let s = p.kappa1 + p.kappa2 - 2.0 * c;
        let m = wedge_margin(p.kappa1, p.kappa2, &params);
        prop_assert!((m + s * s).abs() <= 1e-12 * (1.0 + s * s + p.kappa1.powi(2) + p.kappa2.powi(2)));
    }

    #[test]
    fn quasi_cmc_is_monotone_in_mu(pts in proptest::collection::vec(pair(), 1..20), mu in 0.0..0.9f64, step in 0.0..0.09f64) {
        let cfg = CertConfig::default();
        let lo = check_quasi_cmc(&pts, 0.5, mu, &cfg).unwrap();
        let hi = check_quasi_cmc(&pts, 0.5, mu + step, &cfg).unwrap();
        prop_assert!(!lo.holds() || hi.holds());
        prop_assert!(hi.min_margin.unwrap() >= lo.min_margin.unwrap());
    }

    #[test]
    fn tau_lies_in_the_unit_interval(mu in 0.0..0.99f64, a in 1e-6..5.0f64, f in 0.0..1.0f64, c in -2.0..2.0f64) {
        let params = WedgeParams::from_mu(mu, c).unwrap();
        let slope = params.m2 + f * (params.m1 - params.m2);
        let tau = tau_interpolant(c + a, c + slope * a, &params, 1e-12).unwrap();
        prop_assert!((0.0..=1.0).contains(&tau.tau));
        let w1 = slope * a - params.m1 * a;
        let w2 = slope * a - params.m2 * a;
        if !tau.undetermined {
            prop_assert!((tau.tau * w1 + (1.0 - tau.tau) * w2).abs() <= 1e-9 * (1.0 + a));
        }
    }

    #[test]
    fn beltrami_stays_below_the_ellipticity_bound(l1 in 0.1..5.0f64, ratio in 1.0..20.0f64, x in 0.0..1.0f64, y in 0.0..1.0f64, th in 0.0..3.2f64) {
        let l2 = l1 * ratio;
        let (e1, e2) = (l1 + x * (l2 - l1), l1 + y * (l2 - l1));
        let (sn, cs) = th.sin_cos();
        let coeffs = EllipticCoefficients {
            a11: e1 * cs * cs + e2 * sn * sn,
            a12: (e2 - e1) * cs * sn,
            a22: e1 * sn * sn + e2 * cs * cs,
            b1: 0.0,
            b2: 0.0,
        };
        let b = beltrami(&coeffs).unwrap();
        let mu0 = ellipticity_bound(l1, l2).unwrap();
        prop_assert!(b.mu_abs <= mu0 + 1e-12 && b.mu_abs < 1.0);
        prop_assert!(b.identity_defect <= 1e-12);
    }

    #[test]
    fn winding_is_invariant_under_rotating_the_field(a in -2.0..2.0f64, b in -2.0..2.0f64, c in -2.0..2.0f64, d in -2.0..2.0f64, angle in 0.0..std::f64::consts::TAU) {
        let det = a * d - b * c;
        prop_assume!(det.abs() > 0.05);
        let lp = LoopSampling::new([0.0, 0.0], 1.0, 256).unwrap();
        let (sn, cs) = angle.sin_cos();
        let w = winding_number(|x, y| [a * x + b * y, c * x + d * y], &lp).unwrap();
        let wr = winding_number(|x, y| {
            let (u, v) = (a * x + b * y, c * x + d * y);
            [cs * u - sn * v, sn * u + cs * v]
        }, &lp).unwrap();
        prop_assert_eq!(w, det.signum() as i64);
        prop_assert_eq!(w, wr);
    }

    #[test]
    fn failing_certificates_carry_negative_witnesses(pts in proptest::collection::vec(pair(), 1..30), mu in 0.0..0.99f64, c in -3.0..3.0f64) {
        let cfg = CertConfig::default();
        let params = WedgeParams::from_mu(mu, c).unwrap();
        for cert in [
            check_quasi_cmc(&pts, c, mu, &cfg).unwrap(),
            check_wedge(&pts, &params, &cfg).certificate,
            check_alexandrov(&pts, c, &cfg),
        ] {
            if !cert.holds() {
                let w = cert.witness.as_ref().expect("failing certificate has a witness");
                prop_assert!(w.margin < 0.0, "{cert:?}");
            }
        }
    }
}

#[test]
fn j_identity_on_ten_thousand_jets() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let mut v = || rng.random_range(-5.0..5.0);
        let j = Jet2::new(v(), v(), v(), v(), v());
        let f = complex_gradient(&j);
        // |u_zz|² - |u_zz̄|² by hand: u_zz = (r - t - 2is)/4, u_zz̄ = (r + t)/4.
        let by_hand = ((j.r - j.t).powi(2) + 4.0 * j.s * j.s) / 16.0 - (j.r + j.t).powi(2) / 16.0;
        assert!((j_functional(&f) - by_hand).abs() <= 1e-12);
        assert!((j_functional(&f) + 0.25 * j.hessian_det()).abs() <= 1e-12);
    }
}
