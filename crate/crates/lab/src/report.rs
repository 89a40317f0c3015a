use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use umbilic_core::diagnostics::Certificate;

use crate::config::Config;
use crate::error::{LabError, Result};
use crate::output::{to_stable_json, write_atomic};
use crate::scenarios::run_scenario;

pub const TIMING_FIELD: &str = "wall_clock_seconds";

#[derive(Debug, Clone, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

pub const TOOL: ToolInfo = ToolInfo { name: env!("CARGO_PKG_NAME"), version: env!("CARGO_PKG_VERSION") };

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: ToolInfo,
    /// The config with every default filled in.
    pub config: Config,
    pub conventions: Vec<String>,
    pub certificates: Vec<Certificate>,
    pub failing: Vec<String>,
    pub all_hold: bool,
    pub artifacts: BTreeMap<String, Value>,
    pub files: Vec<String>,
    pub wall_clock_seconds: f64,
}

impl Report {
    pub fn exit_code(&self) -> u8 {
        if self.all_hold {
            0
        } else {
            2
        }
    }
}

/// Result of one run: the report and the files written.
#[derive(Debug)]
pub struct RunOutput {
    pub report: Report,
    pub output_dir: PathBuf,
}

/// Runs a scenario and builds its report without writing anything. The CSV
/// tables come back alongside.
pub fn build_report(config: &Config) -> Result<(Report, Vec<crate::output::CsvTable>)> {
    let start = Instant::now();
    let outcome = run_scenario(config)?;
    let failing: Vec<String> = outcome.certificates.iter().filter(|c| !c.holds()).map(|c| c.claim.clone()).collect();
    let mut files = vec!["report.json".to_string()];
    files.extend(outcome.tables.iter().map(|t| t.file_name.clone()));
    let report = Report {
        tool: TOOL,
        config: config.clone(),
        conventions: outcome.conventions,
        all_hold: failing.is_empty(),
        failing,
        certificates: outcome.certificates,
        artifacts: outcome.artifacts,
        files,
        wall_clock_seconds: start.elapsed().as_secs_f64(),
    };
    Ok((report, outcome.tables))
}

/// Runs `config` and writes `report.json` plus the CSV tables to `output_dir`.
pub fn run_to_dir(config: &Config, output_dir: &Path) -> Result<RunOutput> {
    let (report, tables) = build_report(config)?;
    for t in &tables {
        write_atomic(&output_dir.join(&t.file_name), &t.to_bytes()?)?;
    }
    let path = output_dir.join("report.json");
    let bytes = to_stable_json(&report).map_err(|source| LabError::Json { path: path.clone(), source })?;
    write_atomic(&path, &bytes)?;
    Ok(RunOutput { report, output_dir: output_dir.to_path_buf() })
}

/// Loads a config file and runs it. The output directory is `override_dir`
/// if given, else the config's `output_dir` resolved against the directory
/// holding the config file.
pub fn run_file(path: &Path, override_dir: Option<&Path>) -> Result<RunOutput> {
    let config = crate::config::load_config(path)?;
    let dir = match override_dir {
        Some(d) => d.to_path_buf(),
        None => path.parent().unwrap_or(Path::new(".")).join(&config.output_dir),
    };
    run_to_dir(&config, &dir)
}
