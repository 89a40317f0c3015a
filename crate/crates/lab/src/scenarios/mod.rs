//! One pipeline per scenario kind. Each returns certificates, numeric
//! artifacts and CSV tables; nothing here touches the filesystem.

mod custom;
mod ellipsoid;
mod elliptic;
mod polynomial;
mod sandglass;
mod sphere;
mod tube;

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use umbilic_core::diagnostics::{check_wedge, CertConfig, Certificate, WedgeCheck, WedgeParams};
use umbilic_core::index::GridSpec;
use umbilic_core::surface::{CurvaturePoint, GraphSurface};

use crate::config::{Config, Scenario, Tolerances};
use crate::error::Result;
use crate::output::CsvTable;

/// Everything a scenario produces.
#[derive(Debug, Default)]
pub struct Outcome {
    pub certificates: Vec<Certificate>,
    pub artifacts: BTreeMap<String, Value>,
    pub tables: Vec<CsvTable>,
    pub conventions: Vec<String>,
}

impl Outcome {
    fn artifact<T: Serialize>(&mut self, key: &str, value: &T) {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.artifacts.insert(key.to_string(), v);
    }

    fn cert(&mut self, c: Certificate) {
        self.certificates.push(c);
    }

    fn renamed(&mut self, claim: &str, mut c: Certificate) {
        c.claim = claim.to_string();
        self.certificates.push(c);
    }
}

pub fn cert_config(t: &Tolerances) -> CertConfig {
    CertConfig { eps_cert: t.eps_cert, eps_eq: t.eps_eq }
}

pub fn run_scenario(config: &Config) -> Result<Outcome> {
    let cfg = cert_config(&config.tolerances);
    let mut out = match &config.scenario {
        Scenario::Polynomial(s) => polynomial::run(s, &cfg)?,
        Scenario::Sandglass(s) => sandglass::run(s, &cfg)?,
        Scenario::Tube(s) => tube::run(s, &cfg)?,
        Scenario::Ellipsoid(s) => ellipsoid::run(s, &cfg)?,
        Scenario::ComparisonSphere(s) => sphere::run(s, &cfg)?,
        Scenario::CustomGraph(s) => custom::run(s, &cfg)?,
        Scenario::EllipticScan(s) => elliptic::run(s, &cfg)?,
    };
    out.conventions.insert(0, GRAPH_CONVENTION.to_string());
    Ok(out)
}

const GRAPH_CONVENTION: &str =
    "graphs z = u(x, y) use the upward normal; kappa1 >= kappa2; certificate margins are divided by 1 + H^2 + |K|";

/// Curvature samples at the grid nodes inside the surface domain, row by row.
pub(crate) fn grid_points<G: GraphSurface + ?Sized>(surface: &G, grid: &GridSpec) -> Result<Vec<CurvaturePoint>> {
    let domain = surface.domain();
    let mut pts = Vec::with_capacity(grid.len());
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            let [x, y] = grid.node(i, j);
            if domain.contains(x, y) {
                pts.push(CurvaturePoint::from_jet(x, y, &surface.jet(x, y))?);
            }
        }
    }
    Ok(pts)
}

/// Curvature samples on `nr` circles between `r_in` and `r_out` around
/// `center`, `nth` angles each.
pub(crate) fn annulus_points<G: GraphSurface + ?Sized>(
    surface: &G,
    center: [f64; 2],
    r_in: f64,
    r_out: f64,
    [nr, nth]: [usize; 2],
) -> Result<Vec<CurvaturePoint>> {
    let mut pts = Vec::with_capacity(nr * nth);
    for i in 0..nr {
        let r = if nr > 1 { r_in + (r_out - r_in) * i as f64 / (nr - 1) as f64 } else { r_out };
        for k in 0..nth {
            let th = std::f64::consts::TAU * k as f64 / nth as f64;
            let (x, y) = (center[0] + r * th.cos(), center[1] + r * th.sin());
            pts.push(CurvaturePoint::from_jet(x, y, &surface.jet(x, y))?);
        }
    }
    Ok(pts)
}

pub(crate) fn diagram_table(points: &[CurvaturePoint]) -> CsvTable {
    let mut t = CsvTable::new("diagram.csv", &["kappa1", "kappa2"]);
    for p in points {
        t.push(vec![p.kappa1, p.kappa2]);
    }
    t
}

/// Runs `check_wedge` for every parameter set and certifies that its
/// pointwise verdicts match the quasi-CMC ones.
pub(crate) fn wedge_equivalence(
    claim: &str,
    points: &[CurvaturePoint],
    params: &[WedgeParams],
    cfg: &CertConfig,
) -> (Certificate, Vec<WedgeCheck>) {
    let checks: Vec<WedgeCheck> = params.iter().map(|p| check_wedge(points, p, cfg)).collect();
    let agreements: usize = checks.iter().map(|c| c.agreements).sum();
    let disagreements: usize = checks.iter().map(|c| c.disagreements).sum();
    let first = checks.iter().find_map(|c| c.first_disagreement);
    let mut cert = Certificate::from_check(
        claim,
        disagreements == 0,
        -(disagreements as f64),
        match first {
            Some(p) => format!("first disagreement at ({}, {})", p[0], p[1]),
            None => "quasi-CMC and wedge verdicts agree at every sample".to_string(),
        },
    )
    .with_value("agreements", agreements as f64)
    .with_value("disagreements", disagreements as f64)
    .with_value("parameter_sets", params.len() as f64);
    cert.samples = agreements + disagreements;
    (cert, checks)
}
