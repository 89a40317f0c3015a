use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use umbilic_core::constructions::{quasiminimal_polynomial, Polynomial, PolynomialGraph};
use umbilic_core::diagnostics::{CertConfig, CertificateBuilder, Witness};
use umbilic_core::elliptic::{
    beltrami, complex_gradient, critical_point_scan, ellipticity_bound, j_functional, similarity_inequality_check,
    wirtinger, EllipticCoefficients,
};
use umbilic_core::surface::{Domain, Jet2};

use super::Outcome;
use crate::config::{EllipticScanScenario, ScanFunction};
use crate::error::{invalid, Result};

const IDENTITY_TOL: f64 = 1e-12;

fn graph_of(f: &ScanFunction) -> (String, PolynomialGraph) {
    let domain = Domain::square(1.0);
    match f {
        ScanFunction::Quasiminimal => ("quasiminimal".into(), quasiminimal_polynomial()),
        ScanFunction::Cubic => ("cubic".into(), PolynomialGraph::new(Polynomial::new(vec![(1.0, 3, 0), (-3.0, 1, 2)]), domain)),
        ScanFunction::Saddle => ("saddle".into(), PolynomialGraph::new(Polynomial::new(vec![(1.0, 2, 0), (-1.0, 0, 2)]), domain)),
        ScanFunction::Polynomial { terms } => ("polynomial".into(), PolynomialGraph::new(Polynomial::new(terms.clone()), domain)),
    }
}

pub(super) fn run(s: &EllipticScanScenario, cfg: &CertConfig) -> Result<Outcome> {
    if s.radii.is_empty() || s.radii.iter().any(|r| !(*r > 0.0)) {
        return Err(invalid("scenario.radii", "need at least one positive radius"));
    }
    if s.z_grid < 2 || !(s.z_grid_half_width > 0.0) {
        return Err(invalid("scenario.z_grid", "need at least 2 nodes and a positive half-width"));
    }
    let mu0 = ellipticity_bound(s.lambda1, s.lambda2)?;
    let mut out = Outcome::default();
    out.conventions.push("general statements are checked on closed-form solutions only".into());
    out.artifact("mu0", &mu0);

    let mut reports = Vec::new();
    for f in &s.functions {
        let (name, g) = graph_of(f);
        let report = critical_point_scan(&g, [0.0, 0.0], &s.radii, s.loop_samples, s.det_grid)?;
        out.certificates.extend(report.certificates(&format!("elliptic/{name}")));
        reports.push((name, report));
    }
    out.artifact("critical_points", &reports);

    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut bound = CertificateBuilder::new("elliptic/beltrami-bound", 0.0);
    let mut identity = CertificateBuilder::new("elliptic/beltrami-identity", 0.0);
    let mut max_mu = 0.0f64;
    for _ in 0..s.spd_samples {
        let l1 = rng.random_range(s.lambda1..=s.lambda2);
        let l2 = rng.random_range(s.lambda1..=s.lambda2);
        let (sn, cs) = rng.random_range(0.0..std::f64::consts::PI).sin_cos();
        let coeffs = EllipticCoefficients {
            a11: l1 * cs * cs + l2 * sn * sn,
            a12: (l2 - l1) * cs * sn,
            a22: l1 * sn * sn + l2 * cs * cs,
            b1: rng.random_range(-1.0..1.0),
            b2: rng.random_range(-1.0..1.0),
        };
        let b = beltrami(&coeffs)?;
        max_mu = max_mu.max(b.mu_abs);
        bound.observe(Witness::scalar(mu0 + IDENTITY_TOL - b.mu_abs, format!("eigenvalues ({l1}, {l2})")));
        identity.observe(Witness::scalar(IDENTITY_TOL - b.identity_defect, format!("eigenvalues ({l1}, {l2})")));
    }
    bound.value("mu0", mu0);
    bound.value("max_abs_mu", max_mu);
    out.cert(bound.finish());
    out.cert(identity.finish());

    let mut jid = CertificateBuilder::new("elliptic/j-identity", 0.0);
    for _ in 0..s.jet_samples {
        let mut v = || rng.random_range(-5.0..5.0);
        let j = Jet2::new(v(), v(), v(), v(), v());
        let lhs = j_functional(&complex_gradient(&j));
        let rhs = -0.25 * j.hessian_det();
        jid.observe(Witness::scalar(IDENTITY_TOL - (lhs - rhs).abs(), format!("jet {j:?}")));
    }
    out.cert(jid.finish());

    // f = z|z|², differentiated in x and y.
    let mut samples = Vec::new();
    let mut jz = CertificateBuilder::new("elliptic/j-zz2", 0.0);
    let n = s.z_grid;
    for a in 0..n {
        for b in 0..n {
            let x = -s.z_grid_half_width + 2.0 * s.z_grid_half_width * a as f64 / (n - 1) as f64;
            let y = -s.z_grid_half_width + 2.0 * s.z_grid_half_width * b as f64 / (n - 1) as f64;
            let z = Complex64::new(x, y);
            let m = x * x + y * y;
            let f_x = Complex64::new(m, 0.0) + 2.0 * x * z;
            let f_y = Complex64::new(0.0, m) + 2.0 * y * z;
            let jet = wirtinger(z * m, f_x, f_y);
            let expected = 3.0 * m * m;
            jz.observe(Witness::at([x, y], None, IDENTITY_TOL * (1.0 + expected) - (j_functional(&jet) - expected).abs()));
            samples.push(([x, y], jet));
        }
    }
    out.cert(jz.finish());
    let mut sim = similarity_inequality_check(&samples, 0.5, 0.0, cfg)?;
    sim.claim = "elliptic/similarity-zz2".into();
    out.cert(sim);
    Ok(out)
}
