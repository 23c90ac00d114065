use std::path::Path;
use std::process::{Command, Output};

use minannuli::families::figure_eight;
use minannuli::{WeierstrassData, C64};
use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minannuli"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn status(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn gen_figure_eight(dir: &Path) {
    let o = run(
        dir,
        &[
            "gen",
            "--family",
            "figure_eight",
            "--a-m1",
            "1,0",
            "--a-1",
            "1,0",
            "--symmetric",
            "--out",
            "fe.json",
        ],
    );
    assert_eq!(status(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn gen_round_trip_is_coefficient_exact() {
    let dir = tempfile::tempdir().unwrap();
    gen_figure_eight(dir.path());
    let text = std::fs::read_to_string(dir.path().join("fe.json")).unwrap();
    let loaded: WeierstrassData = serde_json::from_str(&text).unwrap();
    let direct = figure_eight(C64::new(1.0, 0.0), C64::new(1.0, 0.0), true).unwrap();
    assert_eq!(loaded.g_minus(), direct.g_minus());
    assert_eq!(loaded.g_plus(), direct.g_plus());
    assert_eq!(loaded.window(), direct.window());
    assert_eq!(serde_json::to_string_pretty(&loaded).unwrap().trim(), text.trim());
}

#[test]
fn figure_eight_report_passes_against_the_waist() {
    let dir = tempfile::tempdir().unwrap();
    gen_figure_eight(dir.path());
    let o = run(
        dir.path(),
        &[
            "report",
            "--scenario",
            "theorem_4_3",
            "--data",
            "fe.json",
            "--out",
            "rep.json",
        ],
    );
    assert_eq!(status(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rep = read_json(&dir.path().join("rep.json"));
    let verdicts = rep["verdicts"].as_object().unwrap();
    assert!(!verdicts.is_empty());
    assert!(verdicts.values().all(|v| v["pass"] == Value::Bool(true)));
}

#[test]
fn figure_eight_level_crosses_once() {
    let dir = tempfile::tempdir().unwrap();
    gen_figure_eight(dir.path());
    let o = run(
        dir.path(),
        &[
            "trace", "--data", "fe.json", "--height", "0.02", "--csv", "lvl.csv", "--svg", "lvl.svg", "--out",
            "sum.json",
        ],
    );
    assert_eq!(status(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(read_json(&dir.path().join("sum.json"))["self_intersections"], 1);
    let csv = std::fs::read_to_string(dir.path().join("lvl.csv")).unwrap();
    assert!(csv.starts_with("theta,r,x1,x2,x3\n"));
    assert_eq!(csv.lines().count(), 4097);
    let svg = std::fs::read_to_string(dir.path().join("lvl.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("<circle"));
}

#[test]
fn violated_flux_constraint_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    // a₀² + 2a₋₁a₁ = 0.1
    let a0 = 0.1f64.sqrt();
    let doc = format!(
        r#"{{"parity":"even","g_minus":[[-1,1,0],[0,{a0},0],[1,0,0]],"g_plus":[[-1,0,0],[0,{a0},0],[1,1,0]],"window":{{"r_inner":0.5,"r_outer":2}}}}"#
    );
    std::fs::write(dir.path().join("bad.json"), doc).unwrap();
    let o = run(dir.path(), &["check", "--data", "bad.json", "--out", "c.json"]);
    assert_eq!(status(&o), 1);
    let rep = read_json(&dir.path().join("c.json"));
    assert_eq!(rep["verdicts"]["vertical_flux"]["pass"], false);
}

#[test]
fn usage_and_validation_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(status(&run(dir.path(), &["gen", "--family", "octopus"])), 2);
    assert_eq!(status(&run(dir.path(), &["check", "--data", "missing.json"])), 2);
    std::fs::write(
        dir.path().join("extra.json"),
        r#"{"parity":"even","g_minus":[[0,1,0]],"g_plus":[[0,1,0]],"window":{"r_inner":0.5,"r_outer":2},"colour":1}"#,
    )
    .unwrap();
    assert_eq!(status(&run(dir.path(), &["check", "--data", "extra.json"])), 2);
    std::fs::write(dir.path().join("cfg.json"), r#"{"theta_nodez": 64}"#).unwrap();
    assert_eq!(
        status(&run(
            dir.path(),
            &["--config", "cfg.json", "report", "--scenario", "parseval"]
        )),
        2
    );
    assert_eq!(status(&run(dir.path(), &["--help"])), 0);
}

#[test]
fn unreachable_height_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    gen_figure_eight(dir.path());
    let o = run(dir.path(), &["trace", "--data", "fe.json", "--height", "50"]);
    assert_eq!(status(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn global_flags_reach_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &[
            "report",
            "--scenario",
            "parseval",
            "--theta-nodes",
            "1024",
            "--seed",
            "7",
            "--tol",
            "1e-11",
            "--out",
            "p.json",
        ],
    );
    assert_eq!(status(&o), 0);
    let cfg = &read_json(&dir.path().join("p.json"))["provenance"]["config"];
    assert_eq!(cfg["n_theta"], 1024);
    assert_eq!(cfg["seed"], 7);
    assert_eq!(cfg["tol"], 1e-11);
}

#[test]
fn measure_and_compare_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    gen_figure_eight(dir.path());
    let o = run(
        dir.path(),
        &["measure", "length", "--data", "fe.json", "--r", "1", "--out", "m.json"],
    );
    assert_eq!(status(&o), 0);
    let l = read_json(&dir.path().join("m.json"))["quantities"]["l"]
        .as_f64()
        .unwrap();
    assert!((l - 8.0 * std::f64::consts::PI).abs() < 1e-12);
    let o = run(
        dir.path(),
        &["compare", "--data", "fe.json", "--against", "c2", "--out", "c.json"],
    );
    assert_eq!(status(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(
        dir.path(),
        &[
            "sweep",
            "--scenario",
            "parseval",
            "--param",
            "theta_nodes",
            "--values",
            "512,1024",
            "--out",
            "s.json",
        ],
    );
    assert_eq!(status(&o), 0);
    assert_eq!(read_json(&dir.path().join("s.json")).as_array().unwrap().len(), 2);
}
