use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use umbilic_core::constructions::{CenterCurve, FourierCurve, DEFAULT_A, DEFAULT_B, DEFAULT_STEP};

use crate::error::{LabError, Result};

/// A scenario file: tolerances, output location and one scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    /// Relative to the directory of the config file.
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub tolerances: Tolerances,
    pub scenario: Scenario,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub eps_cert: f64,
    pub eps_eq: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { eps_cert: 1e-12, eps_eq: 1e-8 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Scenario {
    Polynomial(PolynomialScenario),
    Sandglass(SandglassScenario),
    Tube(TubeScenario),
    Ellipsoid(EllipsoidScenario),
    ComparisonSphere(ComparisonSphereScenario),
    CustomGraph(CustomGraphScenario),
    EllipticScan(EllipticScanScenario),
}

pub const SCENARIO_KINDS: [(&str, &str); 7] = [
    ("polynomial", "quasiminimal polynomial graph xy(x^2+y^2)(x^2+16y^2): Hessian signs, mu bound, umbilic of index 0"),
    ("sandglass", "rotational sandglass sphere: bump amplitude, profile integration, neck and Alexandrov certificates"),
    ("tube", "tube around a closed curve: principal curvatures, quasi-CMC check, Poincare-Hopf on the torus"),
    ("ellipsoid", "triaxial ellipsoid charts: four umbilics of index +1/2 and wedge failure near them"),
    ("comparison-sphere", "totally umbilical graph tangent to the plane: umbilicity and Alexandrov equality"),
    ("custom-graph", "user polynomial graph: curvature diagram, quasi-CMC check, umbilics and indices"),
    ("elliptic-scan", "Beltrami bounds, the J identity, z|z|^2 and Hessian/index scans at critical points"),
];

impl Scenario {
    pub fn kind(&self) -> &'static str {
        match self {
            Scenario::Polynomial(_) => "polynomial",
            Scenario::Sandglass(_) => "sandglass",
            Scenario::Tube(_) => "tube",
            Scenario::Ellipsoid(_) => "ellipsoid",
            Scenario::ComparisonSphere(_) => "comparison-sphere",
            Scenario::CustomGraph(_) => "custom-graph",
            Scenario::EllipticScan(_) => "elliptic-scan",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PolynomialScenario {
    pub mu_samples: usize,
    pub det_radii: Vec<f64>,
    pub random_points: usize,
    pub random_r_min: f64,
    pub random_r_max: f64,
    pub seed: u64,
    pub loop_radii: Vec<f64>,
    pub loop_samples: usize,
    pub annulus_inner: f64,
    pub annulus_outer: f64,
    pub annulus_grid: [usize; 2],
    pub hhk_radii: Vec<f64>,
    pub hhk_tolerances: Vec<f64>,
    pub umbilic_grid: usize,
    pub umbilic_tol: f64,
    pub index_loop_radius: f64,
}

impl Default for PolynomialScenario {
    fn default() -> Self {
        Self {
            mu_samples: 4096,
            det_radii: vec![0.5, 1.0, 2.0],
            random_points: 10_000,
            random_r_min: 1e-3,
            random_r_max: 10.0,
            seed: 1,
            loop_radii: vec![0.1, 0.3, 0.5],
            loop_samples: 256,
            annulus_inner: 1e-3,
            annulus_outer: 0.5,
            annulus_grid: [64, 256],
            hhk_radii: vec![1e-2, 1e-3],
            hhk_tolerances: vec![1e-2, 1e-4],
            umbilic_grid: 201,
            umbilic_tol: 1e-8,
            index_loop_radius: 0.3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SandglassScenario {
    pub a: f64,
    pub b: f64,
    pub step: f64,
    /// Replaces the solved bump amplitude.
    pub amplitude: Option<f64>,
    pub mus: Vec<f64>,
    /// Normal displacement of the neck; omitted means none.
    pub perturbation: Option<f64>,
    /// Also integrate at half the step and record the closure ratio.
    pub convergence: bool,
}

impl Default for SandglassScenario {
    fn default() -> Self {
        Self {
            a: DEFAULT_A,
            b: DEFAULT_B,
            step: DEFAULT_STEP,
            amplitude: None,
            mus: vec![0.0, 0.5, 0.9, 0.99],
            perturbation: None,
            convergence: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TubeScenario {
    pub curve: CenterCurve,
    pub radius: f64,
    pub nt: usize,
    pub nphi: usize,
    pub c: f64,
    pub lambda: f64,
    /// Grid size of the top chart scanned for umbilics (circle curves only).
    pub chart_grid: usize,
    pub umbilic_tol: f64,
}

impl Default for TubeScenario {
    fn default() -> Self {
        Self {
            curve: CenterCurve::Fourier(FourierCurve::circle(1.0)),
            radius: 0.05,
            nt: 256,
            nphi: 64,
            c: 10.0,
            lambda: -(0.9 + 1.0 / 0.9) / 2.0,
            chart_grid: 81,
            umbilic_tol: 1e-4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EllipsoidScenario {
    pub axes: [f64; 3],
    pub spacing: f64,
    pub umbilic_tol: f64,
    pub location_tol: f64,
    pub loop_radius: f64,
    pub loop_samples: usize,
    pub lambdas: Vec<f64>,
    /// Radius of the punctured disk around each umbilic used by the wedge check.
    pub wedge_radius: f64,
    pub diagram_grid: usize,
}

impl Default for EllipsoidScenario {
    fn default() -> Self {
        Self {
            axes: [1.0, 1.2, 1.5],
            spacing: 0.01,
            umbilic_tol: 1e-4,
            location_tol: 1e-4,
            loop_radius: 0.05,
            loop_samples: 128,
            lambdas: vec![-1.0, -2.0, -10.0],
            wedge_radius: 0.05,
            diagram_grid: 61,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ComparisonSphereScenario {
    pub c: f64,
    pub radius: f64,
    pub grid: usize,
    pub umbilic_tol: f64,
    pub mu: f64,
}

impl Default for ComparisonSphereScenario {
    fn default() -> Self {
        Self { c: 1.0, radius: 0.9, grid: 41, umbilic_tol: 1e-8, mu: 0.5 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CustomGraphScenario {
    /// Terms `[coefficient, power of x, power of y]`.
    pub terms: Vec<(f64, u32, u32)>,
    pub half_width: f64,
    pub grid: usize,
    pub c: f64,
    pub mu: f64,
    pub umbilic_tol: f64,
    pub loop_radius: f64,
    pub loop_samples: usize,
}

impl Default for CustomGraphScenario {
    fn default() -> Self {
        Self {
            terms: vec![(1.0, 3, 0), (-3.0, 1, 2)],
            half_width: 0.5,
            grid: 101,
            c: 0.0,
            mu: 0.5,
            umbilic_tol: 1e-6,
            loop_radius: 0.2,
            loop_samples: 128,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "name")]
pub enum ScanFunction {
    /// `xy(x² + y²)(x² + 16y²)`.
    Quasiminimal,
    /// `Re z³ = x³ - 3xy²`.
    Cubic,
    /// `x² - y²`.
    Saddle,
    Polynomial { terms: Vec<(f64, u32, u32)> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EllipticScanScenario {
    pub functions: Vec<ScanFunction>,
    pub radii: Vec<f64>,
    pub loop_samples: usize,
    pub det_grid: [usize; 2],
    pub spd_samples: usize,
    pub lambda1: f64,
    pub lambda2: f64,
    pub jet_samples: usize,
    pub seed: u64,
    /// Half-width of the grid used for the z|z|^2 checks.
    pub z_grid_half_width: f64,
    pub z_grid: usize,
}

impl Default for EllipticScanScenario {
    fn default() -> Self {
        Self {
            functions: vec![ScanFunction::Quasiminimal, ScanFunction::Cubic],
            radii: vec![0.1, 0.3, 0.5],
            loop_samples: 256,
            det_grid: [32, 256],
            spd_samples: 10_000,
            lambda1: 1.0,
            lambda2: 3.0,
            jet_samples: 10_000,
            seed: 7,
            z_grid_half_width: 1.0,
            z_grid: 41,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default = "default_output_dir")]
    output_dir: PathBuf,
    #[serde(default)]
    tolerances: Tolerances,
    scenario: toml::Table,
}

/// Parses a config, reporting the field path of the first error.
///
/// The scenario table is decoded in a second pass by kind, since a tagged
/// enum would hide the path of the offending field.
pub fn parse_config(text: &str, origin: &Path) -> Result<Config> {
    let err = |field: String, message: String| LabError::Config { path: origin.to_path_buf(), field, message };
    let raw: RawConfig = serde_path_to_error::deserialize(toml::Deserializer::new(text))
        .map_err(|e| err(e.path().to_string(), e.inner().message().to_string()))?;
    let mut table = raw.scenario;
    let kind = match table.remove("kind") {
        Some(toml::Value::String(k)) => k,
        Some(_) => return Err(err("scenario.kind".into(), "expected a string".into())),
        None => return Err(err("scenario.kind".into(), "missing scenario kind".into())),
    };
    fn body<T: serde::de::DeserializeOwned>(t: toml::Table) -> std::result::Result<T, (String, String)> {
        serde_path_to_error::deserialize(toml::Value::Table(t)).map_err(|e| {
            let path = e.path().to_string();
            let field = if path == "." { "scenario".to_string() } else { format!("scenario.{path}") };
            (field, e.inner().to_string().lines().next().unwrap_or_default().to_string())
        })
    }
    let scenario = match kind.as_str() {
        "polynomial" => body(table).map(Scenario::Polynomial),
        "sandglass" => body(table).map(Scenario::Sandglass),
        "tube" => body(table).map(Scenario::Tube),
        "ellipsoid" => body(table).map(Scenario::Ellipsoid),
        "comparison-sphere" => body(table).map(Scenario::ComparisonSphere),
        "custom-graph" => body(table).map(Scenario::CustomGraph),
        "elliptic-scan" => body(table).map(Scenario::EllipticScan),
        other => {
            let known: Vec<&str> = SCENARIO_KINDS.iter().map(|(k, _)| *k).collect();
            return Err(err("scenario.kind".into(), format!("unknown kind `{other}`, expected one of {}", known.join(", "))));
        }
    }
    .map_err(|(field, message)| err(field, message))?;
    Ok(Config { output_dir: raw.output_dir, tolerances: raw.tolerances, scenario })
}

pub fn load_config(path: &Path) -> Result<Config> {
    let text = std::fs::read_to_string(path).map_err(|source| LabError::Io { path: path.to_path_buf(), source })?;
    parse_config(&text, path)
}
