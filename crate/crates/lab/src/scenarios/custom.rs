use serde::Serialize;
use umbilic_core::constructions::{Polynomial, PolynomialGraph};
use umbilic_core::diagnostics::{check_quasi_cmc, CertConfig, Certificate, WedgeParams};
use umbilic_core::index::{find_umbilics, line_field_index, GridSpec, HalfInt, LoopSampling};
use umbilic_core::surface::Domain;

use super::{diagram_table, grid_points, wedge_equivalence, Outcome};
use crate::config::CustomGraphScenario;
use crate::error::{invalid, Result};

#[derive(Serialize)]
struct Found {
    position: [f64; 2],
    residual: f64,
    index: Option<HalfInt>,
    index_error: Option<String>,
}

pub(super) fn run(s: &CustomGraphScenario, cfg: &CertConfig) -> Result<Outcome> {
    if s.terms.is_empty() {
        return Err(invalid("scenario.terms", "at least one term is required"));
    }
    if !(s.half_width > 0.0) || s.grid < 3 {
        return Err(invalid("scenario.grid", "need half_width > 0 and at least 3 nodes per side"));
    }
    let graph = PolynomialGraph::new(Polynomial::new(s.terms.clone()), Domain::square(s.half_width));
    let grid = GridSpec::square(s.half_width, s.grid);
    let points = grid_points(&graph, &grid)?;
    let mut out = Outcome::default();

    let mut q = check_quasi_cmc(&points, s.c, s.mu, cfg)?;
    q.claim = "custom-graph/quasi-cmc".into();
    out.cert(q);
    let (eq, _) = wedge_equivalence("custom-graph/verdict-equivalence", &points, &[WedgeParams::from_mu(s.mu, s.c)?], cfg);
    out.cert(eq);

    let scan = find_umbilics(&graph, &grid, s.umbilic_tol);
    let mut found = Vec::new();
    for u in &scan.umbilics {
        let (index, index_error) = match LoopSampling::new(u.position, s.loop_radius, s.loop_samples)
            .and_then(|lp| line_field_index(&graph, &lp, s.umbilic_tol))
        {
            Ok(i) => (Some(i), None),
            Err(e) => (None, Some(e.to_string())),
        };
        found.push(Found { position: u.position, residual: u.residual, index, index_error });
    }
    let indexed = found.iter().filter(|f| f.index.is_some()).count();
    out.cert(
        Certificate::from_check(
            "custom-graph/umbilic-indices",
            indexed == found.len(),
            -((found.len() - indexed) as f64),
            "every umbilic found has a well-defined index on its loop",
        )
        .with_value("umbilics", found.len() as f64),
    );
    out.artifact("umbilics", &found);
    out.artifact("totally_umbilical", &scan.totally_umbilical);

    out.tables.push(diagram_table(&points));
    Ok(out)
}
