use std::path::{Path, PathBuf};
use std::process::Command;

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn run(args: &[&str], cfg: &Path, out: &Path) -> i32 {
    let status = Command::new(env!("CARGO_BIN_EXE_msm-lab"))
        .args(args)
        .arg("--config")
        .arg(cfg)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
        .status;
    status.code().expect("exit code")
}

fn json(path: PathBuf) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn simulate_writes_trajectory_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let code = run(&["simulate", "--n", "16", "--dt", "1e-2"], &config("simulate.cfg"), dir.path());
    assert_eq!(code, 0);
    let csv = std::fs::read_to_string(dir.path().join("trajectory.csv")).unwrap();
    assert!(csv.lines().count() > 2);
    assert!(dir.path().join("summary.json").exists());
    assert!(std::fs::read_dir(dir.path().join("snapshots")).unwrap().count() > 0);
}

#[test]
fn seed_override_changes_the_run() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let cfg = config("simulate.cfg");
    assert_eq!(run(&["simulate", "--n", "16", "--dt", "1e-2"], &cfg, a.path()), 0);
    assert_eq!(run(&["simulate", "--n", "16", "--dt", "1e-2", "--seed", "8"], &cfg, b.path()), 0);
    let read = |d: &Path| std::fs::read_to_string(d.join("trajectory.csv")).unwrap();
    assert_ne!(read(a.path()), read(b.path()));
}

#[test]
fn coarse_step_fails_mass_assertion() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["simulate", "--n", "16", "--dt", "0.5"], &config("simulate.cfg"), dir.path()), 2);
}

#[test]
fn large_data_blows_up() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("big.cfg");
    std::fs::write(&cfg, "[grid]\nn = 16\n[ensemble]\namplitude = 5\nmax_mode = 4\n").unwrap();
    assert_eq!(run(&["simulate"], &cfg, &dir.path().join("out")), 3);
}

#[test]
fn bad_config_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "[grid]\nbogus = 1\n").unwrap();
    assert_eq!(run(&["simulate"], &cfg, dir.path()), 1);
    assert_eq!(run(&["simulate", "--n", "48"], &config("simulate.cfg"), dir.path()), 1);
    assert_eq!(run(&["simulate"], &dir.path().join("missing.cfg"), dir.path()), 1);
}

#[test]
fn survey_roundtrip_and_embedding_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path();
    assert_eq!(run(&["verify-inequalities", "--n", "16"], &config("inequalities.cfg"), &out.join("v")), 0);
    let reports = json(out.join("v/reports.json"));
    assert_eq!(reports.as_array().unwrap().len(), 8);
    assert!(out.join("v/norms.csv").exists());

    assert_eq!(run(&["gauge-roundtrip", "--n", "32"], &config("roundtrip.cfg"), &out.join("r")), 0);
    let roundtrip = json(out.join("r/roundtrip.json"));
    assert_eq!(roundtrip["n"], 32);
    assert_eq!(roundtrip["refinement"].as_array().unwrap().len(), 2);
    // n = 16 is too coarse for the geometric tolerances.
    assert_eq!(run(&["gauge-roundtrip", "--n", "16"], &config("roundtrip.cfg"), &out.join("r16")), 2);

    assert_eq!(run(&["embedding", "--n", "16"], &config("embedding.cfg"), &out.join("e")), 0);
    assert!(json(out.join("e/embedding.json"))["max_ratio"].as_f64().unwrap() <= 1.0);
}

#[test]
fn stability_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let code = run(&["stability", "--n", "16", "--dt", "1e-2"], &config("stability.cfg"), dir.path());
    assert!(code == 0 || code == 2);
    let report = json(dir.path().join("stability.json"));
    assert_eq!(report["runs"].as_array().unwrap().len(), 3 + 4);
}
