use umbilic_core::constructions::comparison_sphere_graph;
use umbilic_core::diagnostics::{
    check_alexandrov, check_quasi_cmc, diagram_wedge_analysis, CertConfig, Certificate, WedgeParams,
};
use umbilic_core::index::{find_umbilics, GridSpec};

use super::{diagram_table, grid_points, wedge_equivalence, Outcome};
use crate::config::ComparisonSphereScenario;
use crate::error::{invalid, Result};

pub(super) fn run(s: &ComparisonSphereScenario, cfg: &CertConfig) -> Result<Outcome> {
    if s.grid < 2 {
        return Err(invalid("scenario.grid", "need at least 2 nodes per side"));
    }
    let sphere = comparison_sphere_graph(s.c, s.radius)?;
    let mut out = Outcome::default();
    let grid = GridSpec::square(s.radius, s.grid);
    let points = grid_points(&sphere, &grid)?;

    let scan = find_umbilics(&sphere, &grid, s.umbilic_tol);
    out.cert(
        Certificate::from_check(
            "comparison-sphere/totally-umbilical",
            scan.totally_umbilical,
            if scan.totally_umbilical { 0.0 } else { -((scan.evaluated - scan.flagged) as f64) },
            "every grid node inside the disk is an umbilic",
        )
        .with_value("evaluated", scan.evaluated as f64)
        .with_value("flagged", scan.flagged as f64),
    );

    let mut alex = check_alexandrov(&points, s.c, cfg);
    alex.claim = "comparison-sphere/alexandrov".into();
    out.cert(alex);
    let mut q = check_quasi_cmc(&points, s.c, s.mu, cfg)?;
    q.claim = "comparison-sphere/quasi-cmc".into();
    out.cert(q);
    let (eq, _) =
        wedge_equivalence("comparison-sphere/verdict-equivalence", &points, &[WedgeParams::from_mu(s.mu, s.c)?], cfg);
    out.cert(eq);

    let analysis = diagram_wedge_analysis(&points, s.c, None, cfg)?;
    out.cert(analysis.to_certificate("comparison-sphere/diagram-wedge"));
    out.artifact("diagram_analysis", &analysis);
    out.artifact("sphere", &sphere);

    out.tables.push(diagram_table(&points));
    Ok(out)
}
