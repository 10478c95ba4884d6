use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pillowcase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pillowcase")).args(args).env_remove("PILLOW_THREADS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn glue_fiber_swap_is_z37() {
    let o = pillowcase(&["homology", "glue", "trefoil", "trefoil-neg", "--gluing", "fiber-swap"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Z/37"));
    let o = pillowcase(&["homology", "glue", "trefoil", "trefoil-neg", "--gluing", "fiber-swap", "--json"]);
    let v = json(&o);
    assert_eq!(v["invariant_factors"], serde_json::json!([37]));
    assert_eq!(v["gluing"], serde_json::json!({"a": -6, "b": 1, "p": 37, "c": -6}));
}

#[test]
fn glue_with_explicit_matrix() {
    let o = pillowcase(&["homology", "glue", "trefoil", "trefoil", "--gluing", "-1,0,3,1", "--json"]);
    assert_eq!(json(&o)["invariant_factors"], serde_json::json!([3]));
    let o = pillowcase(&["homology", "glue", "trefoil", "trefoil", "--gluing", "1,1,1,1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn standard_form_log() {
    let o = pillowcase(&["homology", "standard-form", "7", "24", "17", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("(2, 1, 2)"));
    assert!(text.contains("side 2 twist 3, side 1 twist 1"));
    let v = json(&pillowcase(&["homology", "standard-form", "7", "24", "17", "5", "--json"]));
    assert_eq!((v["a"].as_i64(), v["b"].as_i64(), v["c"].as_i64()), (Some(2), Some(1), Some(2)));
    assert_eq!(v["twist_moves"].as_array().unwrap().len(), 2);
}

#[test]
fn standard_form_contract_violations() {
    assert_eq!(pillowcase(&["homology", "standard-form", "1", "1", "1", "5"]).status.code(), Some(3));
    assert_eq!(pillowcase(&["homology", "standard-form", "1", "0", "1", "4"]).status.code(), Some(3));
    assert_eq!(pillowcase(&["homology", "standard-form", "1", "x", "1", "5"]).status.code(), Some(2));
}

#[test]
fn tuples_for_seven() {
    let o = pillowcase(&["homology", "tuples", "7", "--json"]);
    assert_eq!(json(&o), serde_json::json!([[-1, 0, 1], [3, 1, 2], [2, 1, 3]]));
    assert_eq!(pillowcase(&["homology", "tuples", "9"]).status.code(), Some(3));
}

#[test]
fn fill_and_seifert() {
    let v = json(&pillowcase(&["homology", "fill", "klein", "1", "1", "--json"]));
    assert_eq!(v["invariant_factors"], serde_json::json!([4]));
    assert_eq!(pillowcase(&["homology", "fill", "trefoil", "2", "4"]).status.code(), Some(3));
    let v = json(&pillowcase(&["homology", "seifert", "2", "1", "3", "1", "5", "-4", "--json"]));
    assert_eq!(v["invariant_factors"], serde_json::json!([]));
    assert_eq!(v["order_formula"], 1);
    assert_eq!(pillowcase(&["homology", "seifert", "2", "1", "3"]).status.code(), Some(2));
}

#[test]
fn image_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("t.svg");
    let csv = dir.path().join("t.csv");
    let o = pillowcase(&[
        "image",
        "trefoil",
        "--resolution",
        "60",
        "--svg",
        svg.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["resolution"], 60);
    assert_eq!(v["essential_curve"]["class"].as_i64().map(i64::abs), Some(1));
    assert_eq!(v["irreducible_components"], 1);
    assert_eq!(v["lift_violations"], 0);
    let drawing = std::fs::read_to_string(&svg).unwrap();
    assert!(drawing.starts_with("<svg") && drawing.contains("<path"));
    let table = std::fs::read_to_string(&csv).unwrap();
    assert!(table.starts_with("curve,index,alpha,beta\n"));
    assert!(table.lines().count() > 100);
}

#[test]
fn unknot_and_klein_images() {
    let v = json(&pillowcase(&["image", "unknot", "--resolution", "30", "--json"]));
    assert_eq!(v["irreducible_points"], 0);
    assert_eq!(v["reducible_components"], 1);
    assert!(v["essential_curve"].is_null());
    let v = json(&pillowcase(&["image", "klein", "--resolution", "30", "--json"]));
    assert_eq!(v["irreducible_components"], 1);
    assert!(v["lift_violations"].as_u64().unwrap() > 0);
    assert!(!v["corner_witnesses"].as_array().unwrap().is_empty());
    let text = stdout(&pillowcase(&["image", "klein", "--resolution", "30"]));
    assert!(text.contains("corner witnesses:"));
}

#[test]
fn model_files() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"name": "x""#);
    assert_eq!(pillowcase(&["image", bad.as_str()]).status.code(), Some(2));
    let model = families::torus_knot_model(2, 3).unwrap().to_json();
    let good = write(dir.path(), "tref.json", &model);
    let v = json(&pillowcase(&["homology", "fill", good.as_str(), "1", "0", "--json"]));
    assert_eq!(v["invariant_factors"], serde_json::json!([]));
    assert_eq!(pillowcase(&["image", "no-such-model"]).status.code(), Some(2));
}

#[test]
fn splice_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let job = write(dir.path(), "swap.json", r#"{"model1": "trefoil", "model2": "trefoil", "gluing": "swap", "resolution": 60}"#);
    let svg = dir.path().join("s.svg");
    let o = pillowcase(&["splice", job.as_str(), "--svg", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["found"], true);
    assert!(v["gap1"].as_f64().unwrap() > 0.1 && v["gap2"].as_f64().unwrap() > 0.1);
    assert!(v["residual"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["representation"].as_array().unwrap().len(), 4);
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<circle"));

    let fiber_swap = write(
        dir.path(),
        "fiber_swap.json",
        r#"{"model1": "trefoil", "model2": "trefoil-neg", "gluing": "fiber-swap", "resolution": 60}"#,
    );
    let o = pillowcase(&["splice", fiber_swap.as_str()]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["found"], false);
    assert_eq!(v["homology"], serde_json::json!([37]));
    assert_eq!(v["diagnostics"]["resolution"], 60);
}

#[test]
fn malformed_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let det = write(dir.path(), "det.json", r#"{"model1": "trefoil", "model2": "trefoil", "gluing": {"a": 1, "b": 1, "p": 1, "c": 1}}"#);
    assert_eq!(pillowcase(&["splice", det.as_str()]).status.code(), Some(2));
    let junk = write(dir.path(), "junk.json", "[1, 2");
    assert_eq!(pillowcase(&["splice", junk.as_str()]).status.code(), Some(2));
    let extra = write(dir.path(), "extra.json", r#"{"model1": "trefoil", "model2": "trefoil", "gluing": "swap", "colour": 1}"#);
    assert_eq!(pillowcase(&["splice", extra.as_str()]).status.code(), Some(2));
    assert_eq!(pillowcase(&["splice", "/no/such/job.json"]).status.code(), Some(2));
}

#[test]
fn json_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let job = write(dir.path(), "job.json", r#"{"model1": "trefoil", "model2": "trefoil", "gluing": "sigma:3", "resolution": 40, "seed": 7}"#);
    let a = pillowcase(&["splice", job.as_str(), "--deterministic"]);
    let b = pillowcase(&["splice", job.as_str(), "--threads", "1"]);
    let c = Command::new(env!("CARGO_BIN_EXE_pillowcase"))
        .args(["splice", job.as_str()])
        .env("PILLOW_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let i1 = pillowcase(&["image", "trefoil", "--resolution", "40", "--json", "--seed", "3"]);
    let i2 = pillowcase(&["image", "trefoil", "--resolution", "40", "--json", "--seed", "3", "--threads", "1"]);
    assert_eq!(i1.stdout, i2.stdout);
}

#[test]
fn config_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "solver.toml", "restarts = 4\nresolution = 30\n");
    let v = json(&pillowcase(&["--config", cfg.as_str(), "image", "trefoil", "--json"]));
    assert_eq!(v["resolution"], 30);
    let bad = write(dir.path(), "bad.toml", "tol = 2.0\n");
    assert_eq!(pillowcase(&["--config", bad.as_str(), "image", "unknot"]).status.code(), Some(2));
    let unknown = write(dir.path(), "unknown.toml", "speed = 1\n");
    assert_eq!(pillowcase(&["--config", unknown.as_str(), "image", "unknot"]).status.code(), Some(2));
    assert_eq!(pillowcase(&["image", "unknot", "--threads", "0"]).status.code(), Some(2));
}
