use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use umbilic_core::constructions::{polynomial_mu_bound, quasiminimal_polynomial};
use umbilic_core::diagnostics::{check_quasi_cmc, CertConfig, Certificate, CertificateBuilder, Witness, WedgeParams};
use umbilic_core::index::{find_umbilics, line_field_index, winding_number, GridSpec, HalfInt, LoopSampling};
use umbilic_core::surface::GraphSurface;

use super::{annulus_points, diagram_table, wedge_equivalence, Outcome};
use crate::config::PolynomialScenario;
use crate::error::{invalid, Result};

#[derive(Serialize)]
struct HhkRow {
    radius: f64,
    max_relative_error: f64,
    tolerance: f64,
}

#[derive(Serialize)]
struct UmbilicRow {
    position: [f64; 2],
    residual: f64,
    index: Option<HalfInt>,
}

pub(super) fn run(s: &PolynomialScenario, cfg: &CertConfig) -> Result<Outcome> {
    validate(s)?;
    let h = quasiminimal_polynomial();
    let mut out = Outcome::default();

    let bound = polynomial_mu_bound(&h, s.mu_samples)?;
    out.artifact("mu_bound", &bound);
    out.cert(
        Certificate::from_check(
            "polynomial/mu-bound",
            bound.mu_star < 1.0 && bound.homogeneity_defect <= 1e-12,
            (1.0 - bound.mu_star).min(1e-12 - bound.homogeneity_defect),
            "mu* below one and independent of the radius",
        )
        .with_value("mu_star", bound.mu_star)
        .with_value("homogeneity_defect", bound.homogeneity_defect),
    );

    // det D²h < 0 on circles; margin relative to |D²h|².
    let mut det = CertificateBuilder::new("polynomial/det-negative", 0.0);
    let mut homogeneity = 0.0f64;
    for &r in &s.det_radii {
        for k in 0..s.mu_samples {
            let th = std::f64::consts::TAU * k as f64 / s.mu_samples as f64;
            let (x, y) = (r * th.cos(), r * th.sin());
            let hess = h.hessian(x, y);
            let d = hess[0] * hess[2] - hess[1] * hess[1];
            let norm = hess[0] * hess[0] + 2.0 * hess[1] * hess[1] + hess[2] * hess[2];
            det.observe_with(Witness::at([x, y], None, -d / norm), d < 0.0);
            let (ratio, _) = umbilic_core::constructions::mu_ratio(hess);
            let (ratio1, _) = umbilic_core::constructions::mu_ratio(h.hessian(th.cos(), th.sin()));
            homogeneity = homogeneity.max((ratio - ratio1).abs());
        }
    }
    det.value("mu_ratio_radius_defect", homogeneity);
    out.cert(det.finish());

    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut hxy = CertificateBuilder::new("polynomial/hxy-positive", 0.0);
    for _ in 0..s.random_points {
        let r = rng.random_range(s.random_r_min..=s.random_r_max);
        let th = rng.random_range(0.0..std::f64::consts::TAU);
        let (x, y) = (r * th.cos(), r * th.sin());
        let v = h.hessian(x, y)[1];
        hxy.observe_with(Witness::at([x, y], None, v / r.powi(4)), v > 0.0);
    }
    out.cert(hxy.finish());

    let mut windings = Vec::new();
    for &radius in &s.loop_radii {
        let lp = LoopSampling::new([0.0, 0.0], radius, s.loop_samples)?;
        let w = winding_number(
            |x, y| {
                let hess = h.hessian(x, y);
                [hess[0], hess[1]]
            },
            &lp,
        )?;
        windings.push((radius, w));
    }
    let nonzero = windings.iter().filter(|(_, w)| *w != 0).count();
    let mut c = Certificate::from_check(
        "polynomial/hessian-winding-zero",
        nonzero == 0,
        -(nonzero as f64),
        "winding of (h_xx, h_xy) around the origin",
    );
    for (r, w) in &windings {
        c = c.with_value(format!("winding_r_{r}"), *w as f64);
    }
    out.cert(c);
    out.artifact("hessian_windings", &windings);

    let mu = 0.5 * (bound.mu_star + 1.0);
    let pts = annulus_points(&h, [0.0, 0.0], s.annulus_inner, s.annulus_outer, s.annulus_grid)?;
    let mut q = check_quasi_cmc(&pts, 0.0, mu, cfg)?;
    q.notes.push(format!("annulus {} <= r <= {}", s.annulus_inner, s.annulus_outer));
    out.renamed("polynomial/quasiminimal", q);
    let params = WedgeParams::from_mu(mu, 0.0)?;
    out.artifact("wedge_params", &params);
    let (eq, _) = wedge_equivalence("polynomial/verdict-equivalence", &pts, &[params], cfg);
    out.cert(eq);

    let mut rows = Vec::new();
    let mut hhk = CertificateBuilder::new("polynomial/hhk-asymptotics", 0.0);
    for (&radius, &tol) in s.hhk_radii.iter().zip(&s.hhk_tolerances) {
        let mut worst = 0.0f64;
        for k in 0..s.mu_samples {
            let th = std::f64::consts::TAU * k as f64 / s.mu_samples as f64;
            let (x, y) = (radius * th.cos(), radius * th.sin());
            let p = umbilic_core::surface::CurvaturePoint::from_jet(x, y, &h.jet(x, y))?;
            let [r, sxy, t] = h.hessian(x, y);
            let model = 0.25 * (r - t) * (r - t) + sxy * sxy;
            let err = (p.discriminant / model - 1.0).abs();
            hhk.observe(Witness::at([x, y], None, tol - err));
            worst = worst.max(err);
        }
        rows.push(HhkRow { radius, max_relative_error: worst, tolerance: tol });
    }
    out.cert(hhk.finish());
    out.artifact("hhk", &rows);

    let grid = GridSpec::square(1.0, s.umbilic_grid);
    let scan = find_umbilics(&h, &grid, s.umbilic_tol);
    let mut umbilics = Vec::new();
    let mut idx = CertificateBuilder::new("polynomial/umbilic-index-nonpositive", 0.0);
    for u in &scan.umbilics {
        let lp = LoopSampling::new(u.position, s.index_loop_radius, s.loop_samples)?;
        let index = line_field_index(&h, &lp, s.umbilic_tol)?;
        idx.observe(Witness::at(u.position, None, -index.value()));
        umbilics.push(UmbilicRow { position: u.position, residual: u.residual, index: Some(index) });
    }
    if scan.umbilics.is_empty() {
        idx.observe_with(Witness::scalar(-1.0, "no umbilic found"), false);
    }
    idx.value("umbilics", scan.umbilics.len() as f64);
    out.cert(idx.finish());
    out.artifact("umbilics", &umbilics);
    out.artifact("umbilic_scan", &serde_json::json!({
        "flagged": scan.flagged,
        "evaluated": scan.evaluated,
        "tolerance": scan.tolerance,
    }));

    out.tables.push(diagram_table(&pts));
    Ok(out)
}

fn validate(s: &PolynomialScenario) -> Result<()> {
    if s.mu_samples < 1024 {
        return Err(invalid("scenario.mu_samples", "at least 1024 samples are required"));
    }
    if s.hhk_radii.len() != s.hhk_tolerances.len() {
        return Err(invalid("scenario.hhk_tolerances", "needs one tolerance per radius in hhk_radii"));
    }
    if !(s.random_r_min > 0.0 && s.random_r_min < s.random_r_max) {
        return Err(invalid("scenario.random_r_min", "need 0 < random_r_min < random_r_max"));
    }
    if !(s.annulus_inner > 0.0 && s.annulus_inner < s.annulus_outer && s.annulus_outer <= 1.0) {
        return Err(invalid("scenario.annulus_inner", "need 0 < annulus_inner < annulus_outer <= 1"));
    }
    if s.det_radii.iter().chain(&s.loop_radii).chain(&s.hhk_radii).any(|r| !(*r > 0.0)) {
        return Err(invalid("scenario", "radii must be positive"));
    }
    if s.umbilic_grid < 3 || !(s.index_loop_radius > 0.0 && s.index_loop_radius < 1.0) {
        return Err(invalid("scenario.umbilic_grid", "need at least 3 nodes and 0 < index_loop_radius < 1"));
    }
    Ok(())
}
