use umbilic_core::constructions::{torus_top_chart, tube_surface, CenterCurve, TubeSpec};
use umbilic_core::diagnostics::{check_quasi_cmc, CertConfig, Certificate, CertificateBuilder, WedgeParams, Witness};
use umbilic_core::index::{find_umbilics, poincare_hopf_check, GridSpec};
use umbilic_core::surface::{CurvaturePoint, GraphSurface};

use super::{diagram_table, wedge_equivalence, Outcome};
use crate::config::TubeScenario;
use crate::error::{invalid, Result};
use crate::output::CsvTable;

/// Radius of a curve given as the plain circle `(R cos t, R sin t, 0)`.
fn circle_radius(curve: &CenterCurve) -> Option<f64> {
    let CenterCurve::Fourier(f) = curve else { return None };
    let [x, y, z] = &f.coeffs;
    let zero = |v: &[(f64, f64)]| v.iter().all(|&(a, b)| a == 0.0 && b == 0.0);
    if x.len() != 2 || y.len() != 2 || !zero(&x[..1]) || !zero(&y[..1]) || !zero(z) {
        return None;
    }
    let (rx, ry) = (x[1], y[1]);
    (rx.1 == 0.0 && ry.0 == 0.0 && rx.0 == ry.1 && rx.0 > 0.0).then_some(rx.0)
}

pub(super) fn run(s: &TubeScenario, cfg: &CertConfig) -> Result<Outcome> {
    if !(s.lambda <= -1.0) {
        return Err(invalid("scenario.lambda", "must be <= -1"));
    }
    let spec = TubeSpec { curve: s.curve.clone(), radius: s.radius, nt: s.nt, nphi: s.nphi };
    let samples = tube_surface(&spec)?;
    let mut out = Outcome::default();
    out.conventions.push("tube samples use the outward normal; positions are (t, phi)".into());

    let points: Vec<CurvaturePoint> = samples.iter().map(|t| t.to_point()).collect();
    let mut table = CsvTable::new("tube.csv", &["t", "phi", "kappa_profile", "kappa_long"]);
    for t in &samples {
        table.push(vec![t.t, t.phi, t.kappa_profile, t.kappa_long]);
    }
    out.tables.push(table);

    let mut free = CertificateBuilder::new("tube/umbilic-free", 0.0);
    let mut min_disc = f64::INFINITY;
    let mut max_long = 0.0f64;
    for (p, t) in points.iter().zip(&samples) {
        free.observe(Witness::at(p.position, Some([p.kappa1, p.kappa2]), p.discriminant / p.scale() - cfg.eps_eq));
        min_disc = min_disc.min(p.discriminant);
        max_long = max_long.max(t.kappa_long.abs());
    }
    free.value("min_discriminant", min_disc);
    free.value("max_abs_kappa_long", max_long);
    let free = free.finish();
    let umbilic_free = free.holds();
    out.cert(free);

    let params = WedgeParams::from_lambda(s.lambda, s.c)?;
    out.artifact("wedge_params", &params);
    let mut q = check_quasi_cmc(&points, s.c, params.mu, cfg)?;
    q.claim = "tube/quasi-cmc".into();
    out.cert(q.with_value("lambda", s.lambda));
    let (eq, _) = wedge_equivalence("tube/verdict-equivalence", &points, &[params], cfg);
    out.cert(eq);

    if matches!(s.curve, CenterCurve::Fourier(_)) {
        let mut ph = poincare_hopf_check(&[], 1);
        ph.claim = "tube/poincare-hopf".into();
        if !umbilic_free {
            ph = Certificate::from_check("tube/poincare-hopf", false, -1.0, "umbilic set is not known to be empty");
        }
        out.cert(ph.with_note("closed tube: genus 1, no umbilics"));
    }

    if let Some(big_r) = circle_radius(&s.curve) {
        let chart = torus_top_chart(big_r, s.radius)?;
        let (x_min, x_max, y_min, y_max) = chart.domain().bounding_box();
        let grid = GridSpec { x_min, x_max, y_min, y_max, nx: s.chart_grid, ny: s.chart_grid };
        let scan = find_umbilics(&chart, &grid, s.umbilic_tol);
        let n = scan.umbilics.len();
        out.cert(
            Certificate::from_check(
                "tube/torus-chart-umbilic-free",
                n == 0 && scan.flagged == 0,
                -(scan.flagged as f64),
                "umbilic scan of the top chart of the torus",
            )
            .with_value("evaluated", scan.evaluated as f64),
        );
        out.artifact("torus_chart", &chart);
    }

    out.tables.push(diagram_table(&points));
    Ok(out)
}
