use serde::Serialize;
use umbilic_core::constructions::{ellipsoid_chart, EllipsoidChart};
use umbilic_core::diagnostics::{
    check_wedge, diagram_wedge_analysis, CertConfig, Certificate, CertificateBuilder, WedgeParams, Witness,
};
use umbilic_core::index::{find_umbilics, line_field_index, poincare_hopf_check, GridSpec, HalfInt, LoopSampling};
use umbilic_core::surface::{CurvaturePoint, GraphSurface};

use super::{annulus_points, diagram_table, grid_points, wedge_equivalence, Outcome};
use crate::config::EllipsoidScenario;
use crate::error::{invalid, Result};

#[derive(Serialize)]
struct Found {
    chart: &'static str,
    position: [f64; 2],
    predicted: [f64; 2],
    distance: f64,
    residual: f64,
    umbilic_value: f64,
    index: HalfInt,
}

fn scan_grid(chart: &EllipsoidChart, spacing: f64) -> GridSpec {
    let (x_min, x_max, y_min, y_max) = chart.domain().bounding_box();
    let n = |lo: f64, hi: f64| ((hi - lo) / spacing).ceil() as usize + 1;
    GridSpec { x_min, x_max, y_min, y_max, nx: n(x_min, x_max), ny: n(y_min, y_max) }
}

pub(super) fn run(s: &EllipsoidScenario, cfg: &CertConfig) -> Result<Outcome> {
    if !(s.spacing > 0.0) || !(s.loop_radius > 0.0) || !(s.wedge_radius > 0.0) {
        return Err(invalid("scenario", "spacing, loop_radius and wedge_radius must be positive"));
    }
    if s.lambdas.is_empty() || s.lambdas.iter().any(|l| !(*l <= -1.0)) {
        return Err(invalid("scenario.lambdas", "need at least one lambda, each <= -1"));
    }
    let charts = ellipsoid_chart(s.axes)?;
    let mut out = Outcome::default();
    out.conventions.push("the lower chart is the graph of the negative root; its curvatures are those of the inward normal".into());
    out.artifact("predicted", &charts.predicted);

    let mut found = Vec::new();
    let mut location = CertificateBuilder::new("ellipsoid/umbilic-locations", 0.0);
    let mut index_cert = CertificateBuilder::new("ellipsoid/index-half", 0.0);
    let mut wedge_fail = CertificateBuilder::new("ellipsoid/wedge-fails-near-umbilics", 0.0);
    let mut wedge_points = Vec::new();
    let mut wedge_params = Vec::new();
    let mut analyses = Vec::new();

    for (name, chart) in [("upper", &charts.upper), ("lower", &charts.lower)] {
        let scan = find_umbilics(chart, &scan_grid(chart, s.spacing), s.umbilic_tol);
        let count_ok = scan.umbilics.len() == 2;
        location.observe_with(
            Witness::scalar(if count_ok { 0.0 } else { -1.0 }, format!("{name} chart: {} umbilics", scan.umbilics.len())),
            count_ok,
        );
        for u in &scan.umbilics {
            let predicted = *charts
                .predicted
                .iter()
                .min_by(|a, b| dist(a, &u.position).total_cmp(&dist(b, &u.position)))
                .expect("two predictions");
            let d = dist(&predicted, &u.position);
            location.observe(Witness::at(u.position, None, s.location_tol - d));

            let lp = LoopSampling::new(u.position, s.loop_radius, s.loop_samples)?;
            let index = line_field_index(chart, &lp, s.umbilic_tol)?;
            let ok = index == HalfInt::from_twice(1);
            index_cert.observe_with(Witness::at(u.position, None, if ok { 0.0 } else { -1.0 }), ok);

            let [x, y] = u.position;
            let c = CurvaturePoint::from_jet(x, y, &chart.jet(x, y))?.h;
            let pts = annulus_points(chart, u.position, 0.1 * s.wedge_radius, s.wedge_radius, [10, 64])?;
            let mut params_here = Vec::new();
            for &lambda in &s.lambdas {
                let params = WedgeParams::from_lambda(lambda, c)?;
                let w = check_wedge(&pts, &params, cfg).certificate;
                let margin = w.min_margin.unwrap_or(f64::NAN);
                let detail = format!("{name} chart, lambda = {lambda}: smallest wedge margin {margin:e}");
                wedge_fail.observe_with(
                    Witness { position: Some(u.position), kappa: None, margin: -margin, detail: Some(detail) },
                    !w.holds(),
                );
                params_here.push(params);
            }
            wedge_params.push(params_here);
            analyses.push(diagram_wedge_analysis(&pts, c, Some(2.0 * s.wedge_radius * (1.0 + c.abs())), cfg)?);
            wedge_points.push(pts);
            found.push(Found {
                chart: name,
                position: u.position,
                predicted,
                distance: d,
                residual: u.residual,
                umbilic_value: c,
                index,
            });
        }
    }
    out.cert(location.finish());
    out.cert(index_cert.finish());
    let indices: Vec<HalfInt> = found.iter().map(|f| f.index).collect();
    let mut ph = poincare_hopf_check(&indices, 0);
    ph.claim = "ellipsoid/poincare-hopf".into();
    out.cert(ph);
    out.cert(wedge_fail.finish());

    // Agreement of the two checks on every neighbourhood and every lambda.
    let mut agree = 0;
    let mut disagree = 0;
    for (pts, params) in wedge_points.iter().zip(&wedge_params) {
        let (c, _) = wedge_equivalence("ellipsoid/verdict-equivalence", pts, params, cfg);
        agree += c.values["agreements"] as usize;
        disagree += c.values["disagreements"] as usize;
    }
    let mut eq = Certificate::from_check(
        "ellipsoid/verdict-equivalence",
        disagree == 0,
        -(disagree as f64),
        "quasi-CMC and wedge verdicts near the umbilics",
    )
    .with_value("agreements", agree as f64)
    .with_value("disagreements", disagree as f64);
    eq.samples = agree + disagree;
    out.cert(eq);

    out.artifact("umbilics", &found);
    out.artifact("diagram_analyses", &analyses);

    let mut pts = Vec::new();
    for chart in [&charts.upper, &charts.lower] {
        let (x_min, x_max, y_min, y_max) = chart.domain().bounding_box();
        let grid = GridSpec { x_min, x_max, y_min, y_max, nx: s.diagram_grid, ny: s.diagram_grid };
        pts.extend(grid_points(chart, &grid)?);
    }
    out.tables.push(diagram_table(&pts));
    Ok(out)
}

fn dist(a: &[f64; 2], b: &[f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}
