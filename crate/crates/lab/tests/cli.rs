use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn lab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_umbilic-lab"))
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(config: &Path, out: &Path) -> Output {
    lab().arg("run").arg(config).arg("--output-dir").arg(out).output().unwrap()
}

fn report(out: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap()
}

fn csv_rows(path: &Path) -> Vec<Vec<f64>> {
    let text = std::fs::read_to_string(path).unwrap();
    assert!(!text.contains('\r'));
    text.lines().skip(1).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect()
}

fn without_timing(path: &Path) -> String {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.trim_start().starts_with("\"wall_clock_seconds\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn list_scenarios_names_every_kind() {
    let out = lab().arg("list-scenarios").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for kind in ["polynomial", "sandglass", "tube", "ellipsoid", "comparison-sphere", "custom-graph", "elliptic-scan"] {
        assert!(text.lines().any(|l| l.starts_with(kind)), "{kind} missing from\n{text}");
    }
}

#[test]
fn polynomial_default_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "p.toml", "[scenario]\nkind = \"polynomial\"\n");
    let out = run(&cfg, &dir.path().join("out"));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&dir.path().join("out"));
    assert!(r["artifacts"]["mu_bound"]["mu_star"].as_f64().unwrap() < 1.0);
    assert_eq!(r["artifacts"]["umbilics"][0]["index"].as_f64(), Some(0.0));
    assert_eq!(r["all_hold"], Value::Bool(true));
    // Defaults are echoed.
    assert_eq!(r["config"]["scenario"]["mu_samples"].as_u64(), Some(4096));
    assert_eq!(r["tool"]["name"], "umbilic-lab");
    let diagram = std::fs::read_to_string(dir.path().join("out/diagram.csv")).unwrap();
    assert!(diagram.starts_with("kappa1,kappa2\n"));
}

#[test]
fn output_dir_is_relative_to_the_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "s.toml", "output_dir = \"here\"\n[scenario]\nkind = \"comparison-sphere\"\n");
    let out = lab().arg("run").arg(&cfg).current_dir("/").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("here/report.json").exists());
}

#[test]
fn wrong_amplitude_exits_two_with_closure_failure() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "s.toml", "[scenario]\nkind = \"sandglass\"\namplitude = 11600.0\nconvergence = false\n");
    let out = run(&cfg, &dir.path().join("out"));
    assert_eq!(out.status.code(), Some(2));
    let r = report(&dir.path().join("out"));
    let failing: Vec<&str> = r["failing"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert!(failing.contains(&"sandglass/closure"), "{failing:?}");
    let closure = r["certificates"].as_array().unwrap().iter().find(|c| c["claim"] == "sandglass/closure").unwrap();
    assert!(closure["witness"]["margin"].as_f64().unwrap() < 0.0);
}

#[test]
fn config_errors_exit_one_with_field_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "bad.toml", "[scenario]\nkind = \"sandglass\"\nstep = \"small\"\n");
    let out = run(&cfg, &dir.path().join("out"));
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("scenario.step"), "{err}");
    assert!(!dir.path().join("out/report.json").exists());

    let cfg = write_config(dir.path(), "neck.toml", "[scenario]\nkind = \"sandglass\"\na = 2.4\nb = 1.8\n");
    assert_eq!(run(&cfg, &dir.path().join("out")).status.code(), Some(1));
    let missing = lab().arg("run").arg(dir.path().join("absent.toml")).output().unwrap();
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn thick_tube_is_an_embeddedness_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "t.toml", "[scenario]\nkind = \"tube\"\nradius = 1.5\n");
    let out = run(&cfg, &dir.path().join("out"));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not embedded"));

    let cfg = write_config(dir.path(), "t2.toml", "[scenario]\nkind = \"tube\"\nradius = 0.5\n");
    assert_eq!(run(&cfg, &dir.path().join("out2")).status.code(), Some(2));
}

#[test]
fn thin_torus_exits_zero_with_constant_profile_curvature() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "t.toml", "[scenario]\nkind = \"tube\"\n");
    let out = run(&cfg, &dir.path().join("out"));
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&dir.path().join("out/diagram.csv"));
    assert_eq!(rows.len(), 256 * 64);
    assert!(rows.iter().all(|r| (r[0] - 20.0).abs() < 1e-12 && r[1].abs() <= 1.06));
    let tube = csv_rows(&dir.path().join("out/tube.csv"));
    assert_eq!(tube.len(), rows.len());
    assert!(tube.iter().all(|r| r.len() == 4));
}

#[test]
fn sandglass_diagram_has_caps_and_neck() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "s.toml", "[scenario]\nkind = \"sandglass\"\nconvergence = false\n");
    let out = run(&cfg, &dir.path().join("out"));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let diagram = csv_rows(&dir.path().join("out/diagram.csv"));
    let profile = csv_rows(&dir.path().join("out/profile.csv"));
    assert_eq!(diagram.len(), profile.len());
    let (a, b) = (1.8, 2.4);
    let mut neck = 0;
    for (d, p) in diagram.iter().zip(&profile) {
        let s = p[0].min(2.0 * b - p[0]);
        if s > 0.1 && s < a - 1e-9 {
            assert!((d[0] - 1.0).abs() < 1e-12 && (d[1] - 1.0).abs() < 1e-12, "cap row {d:?} at s = {s}");
        } else if s > a + 0.1 && s < b {
            assert!(d[0] > 1.0 && d[1] < 1.0, "neck row {d:?} at s = {s}");
            neck += 1;
        }
    }
    assert!(neck > 1000);
}

#[test]
fn comparison_sphere_rows_sit_on_the_diagonal() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "s.toml", "[scenario]\nkind = \"comparison-sphere\"\nc = 2.0\nradius = 0.4\n");
    assert_eq!(run(&cfg, &dir.path().join("out")).status.code(), Some(0));
    for r in csv_rows(&dir.path().join("out/diagram.csv")) {
        assert!((r[0] - 2.0).abs() < 1e-12 && (r[1] - 2.0).abs() < 1e-12, "{r:?}");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["ellipsoid", "polynomial", "sandglass"] {
        let cfg = write_config(dir.path(), "c.toml", &format!("[scenario]\nkind = \"{kind}\"\n"));
        let (a, b) = (dir.path().join(format!("{kind}-a")), dir.path().join(format!("{kind}-b")));
        assert!(run(&cfg, &a).status.success());
        let out = lab().arg("run").arg(&cfg).arg("--output-dir").arg(&b).env("UMBILIC_LAB_THREADS", "1").output().unwrap();
        assert!(out.status.success());
        assert_eq!(without_timing(&a.join("report.json")), without_timing(&b.join("report.json")), "{kind}");
        assert_eq!(std::fs::read(a.join("diagram.csv")).unwrap(), std::fs::read(b.join("diagram.csv")).unwrap());

        let diff = lab().arg("diff").arg(a.join("report.json")).arg(b.join("report.json")).output().unwrap();
        assert_eq!(diff.status.code(), Some(0), "{}", String::from_utf8_lossy(&diff.stdout));
    }
}

#[test]
fn bad_thread_count_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.toml", "[scenario]\nkind = \"comparison-sphere\"\n");
    let out = lab().arg("run").arg(&cfg).arg("--output-dir").arg(dir.path()).env("UMBILIC_LAB_THREADS", "many").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn diff_reports_drift_and_kind_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let fine = write_config(dir.path(), "fine.toml", "[scenario]\nkind = \"sandglass\"\nconvergence = false\n");
    let half = write_config(dir.path(), "half.toml", "[scenario]\nkind = \"sandglass\"\nstep = 5e-5\nconvergence = false\n");
    let sphere = write_config(dir.path(), "sphere.toml", "[scenario]\nkind = \"comparison-sphere\"\n");
    for (cfg, name) in [(&fine, "fine"), (&half, "half"), (&sphere, "sphere")] {
        assert!(run(cfg, &dir.path().join(name)).status.success());
    }
    let diff = lab()
        .arg("diff")
        .arg(dir.path().join("fine/report.json"))
        .arg(dir.path().join("half/report.json"))
        .output()
        .unwrap();
    assert_eq!(diff.status.code(), Some(2));
    let d: Value = serde_json::from_slice(&diff.stdout).unwrap();
    assert!(d["closure_residual_ratio"].as_f64().unwrap().is_finite());
    assert!(d["drift"].as_array().unwrap().iter().any(|e| e["path"] == "/config/scenario/step"));

    let mismatch = lab()
        .arg("diff")
        .arg(dir.path().join("fine/report.json"))
        .arg(dir.path().join("sphere/report.json"))
        .output()
        .unwrap();
    assert_eq!(mismatch.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&mismatch.stderr).contains("different scenarios"));
}
