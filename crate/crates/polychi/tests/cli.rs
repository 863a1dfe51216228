use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        fs::write(&path, contents).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_polychi"))
            .current_dir(self.dir.path())
            .args(args)
            .output()
            .unwrap()
    }

    fn json(&self, args: &[&str]) -> Value {
        let out = self.run(args);
        assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
        serde_json::from_slice(&out.stdout).unwrap()
    }
}

fn error_of(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    v["error"].clone()
}

const TRIANGLE: &str = r#"{"n": 2, "terms": [{"weight": "1", "body":
    {"n": 2, "cone_generators": [[1,0,0],[1,1,0],[1,0,1]], "witness": [1,0,0]}}]}"#;

const MIXED: &str = r#"{"n": 2, "constant": "1/2", "terms": [
    {"weight": "3", "body": {"n": 2, "cone_generators": [[1,0,0],[1,1,0],[1,0,1]]}},
    {"weight": "-2/3", "body": {"n": 2, "cone_generators": [[2,1,1],[1,-1,0],[1,0,-1],[3,1,-1]]}}]}"#;

// vertex, edge, interior and exterior points, and one on an edge of the second body
const POINTS: &str = r#"[[1,0,0],[2,1,0],["1/2","1/4","1/4"],[4,1,1],[1,3,3],[1,-5,2],[2,-1,0]]"#;

const SQUARE: &str = r#"{"ambient_dim": 2, "vertices": [[0,0],[1,0],[1,1],[0,1]]}"#;

const CUBE: &str = r#"{"ambient_dim": 3, "halfspaces": [
    {"normal": [1,0,0], "offset": 1}, {"normal": [-1,0,0], "offset": 0},
    {"normal": [0,1,0], "offset": 1}, {"normal": [0,-1,0], "offset": 0},
    {"normal": [0,0,1], "offset": 1}, {"normal": [0,0,-1], "offset": 0}]}"#;

fn all_residuals_zero(report: &Value) -> bool {
    report["entries"].as_array().unwrap().iter().all(|e| e["residual"] == "0")
}

#[test]
fn invert_check_triangle() {
    let ws = Workspace::new();
    ws.file("triangle.json", TRIANGLE);
    ws.file("pts.json", POINTS);
    let report = ws.json(&["invert-check", "--n", "2", "--fn", "triangle.json", "--points", "pts.json"]);
    assert_eq!(report["passed"], true);
    assert_eq!(report["entries"].as_array().unwrap().len(), 7);
    assert!(all_residuals_zero(&report));
    assert_eq!(report["euler_integral"], "1");
}

#[test]
fn invert_check_mixed_and_in_space() {
    let ws = Workspace::new();
    ws.file("mixed.json", MIXED);
    ws.file("pts.json", POINTS);
    let report = ws.json(&["invert-check", "--n", "2", "--fn", "mixed.json", "--points", "pts.json"]);
    assert!(all_residuals_zero(&report));

    ws.file(
        "tet.json",
        r#"{"n": 3, "cone_generators": [[1,0,0,0],[1,1,0,0],[1,0,1,0],[1,0,0,1]]}"#,
    );
    ws.file("pts3.json", r#"[[5,1,1,1],[1,3,3,3],[1,0,0,0],[2,1,1,0],[0,1,0,0]]"#);
    let report = ws.json(&["invert-check", "--n", "3", "--fn", "tet.json", "--points", "pts3.json"]);
    assert_eq!(report["passed"], true);
    assert!(all_residuals_zero(&report));
}

#[test]
fn invert_check_rejects_wrong_dimension() {
    let ws = Workspace::new();
    ws.file("triangle.json", TRIANGLE);
    ws.file("pts.json", POINTS);
    let out = ws.run(&["invert-check", "--n", "3", "--fn", "triangle.json", "--points", "pts.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_of(&out)["path"], "--n");
    ws.file("short.json", "[[1,0]]");
    let out = ws.run(&["invert-check", "--n", "2", "--fn", "triangle.json", "--points", "short.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_of(&out)["kind"], "ValidationError");
    assert_eq!(error_of(&out)["path"], "[0]");
}

#[test]
fn sinogram_grid_shape() {
    let ws = Workspace::new();
    ws.file("square.json", SQUARE);
    let out = ws.run(&["sinogram", "--fn", "square.json", "--angles", "180", "--offsets", "256", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 181);
    assert!(rows.iter().all(|r| r.len() == 256));
    let reach = 2f64.sqrt();
    assert_eq!(rows[0][0], -reach);
    assert_eq!(rows[0][255], reach);
    // at θ = 0 the chord through the unit square has length 1 for 0 < p < 1
    for (p, v) in rows[0].iter().zip(&rows[1]) {
        let expected = if *p > 0.0 && *p < 1.0 { 1.0 } else { 0.0 };
        if p.abs() > 1e-9 && (p - 1.0).abs() > 1e-9 {
            assert_eq!(*v, expected, "offset {p}");
        }
    }
    // total mass along every direction is the area, up to the grid spacing
    let step = rows[0][1] - rows[0][0];
    for row in &rows[1..] {
        let mass: f64 = row.iter().sum::<f64>() * step;
        assert!((mass - 1.0).abs() < 0.03, "{mass}");
    }
}

#[test]
fn sinogram_json_and_out_file() {
    let ws = Workspace::new();
    ws.file("square.json", SQUARE);
    let out = ws.run(&[
        "sinogram", "--fn", "square.json", "--angles", "4", "--offsets", "3", "--max-offset", "1/2", "--out", "s.json",
    ]);
    assert_eq!(out.status.code(), Some(2), "--max-offset takes a float");
    let out = ws.run(&[
        "sinogram", "--fn", "square.json", "--angles", "4", "--offsets", "3", "--max-offset", "0.5", "--out", "s.json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(ws.path("s.json")).unwrap()).unwrap();
    assert_eq!(v["offsets"], serde_json::json!([-0.5, 0.0, 0.5]));
    assert_eq!(v["values"].as_array().unwrap().len(), 4);
    // the vertical line x = 0 runs along an edge
    assert_eq!(v["values"][0], serde_json::json!([0.0, 1.0, 1.0]));
}

#[test]
fn zero_denominator_is_located() {
    let ws = Workspace::new();
    ws.file("bad.json", r#"{"ambient_dim": 2, "vertices": [[0,0],[1,0],["1/0",1]]}"#);
    let out = ws.run(&["euler-integral", "--fn", "bad.json"]);
    assert_eq!(out.status.code(), Some(2));
    let e = error_of(&out);
    assert_eq!(e["kind"], "ParseError");
    assert_eq!(e["path"], "vertices[2][0]");
    assert_eq!(e["file"], "bad.json");
    assert!(e["message"].as_str().unwrap().contains("1/0"));

    ws.file("bad_weight.json", &TRIANGLE.replace(r#""weight": "1""#, r#""weight": "2/0""#));
    ws.file("pts.json", POINTS);
    let out = ws.run(&["invert-check", "--n", "2", "--fn", "bad_weight.json", "--points", "pts.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_of(&out)["path"], "terms[0].weight");
}

#[test]
fn malformed_inputs_exit_2() {
    let ws = Workspace::new();
    ws.file("extra.json", r#"{"ambient_dim": 2, "vertices": [[0,0]], "colour": "red"}"#);
    let out = ws.run(&["euler-integral", "--fn", "extra.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(error_of(&out)["message"].as_str().unwrap().contains("colour"));

    ws.file("float.json", r#"{"ambient_dim": 1, "vertices": [[0.5]]}"#);
    let out = ws.run(&["euler-integral", "--fn", "float.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_of(&out)["path"], "vertices[0][0]");

    ws.file("ragged.json", r#"{"ambient_dim": 2, "vertices": [[0,0],[1]]}"#);
    let out = ws.run(&["euler-integral", "--fn", "ragged.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_of(&out)["kind"], "ValidationError");
    assert_eq!(error_of(&out)["path"], "vertices[1]");

    ws.file(
        "disagree.json",
        r#"{"ambient_dim": 1, "vertices": [[0],[1]], "halfspaces": [{"normal": [1], "offset": 2}, {"normal": [-1], "offset": 0}]}"#,
    );
    let out = ws.run(&["euler-integral", "--fn", "disagree.json"]);
    assert_eq!(out.status.code(), Some(2));

    ws.file("lower.json", r#"{"n": 2, "cone_generators": [[1,0,0],[1,1,0]]}"#);
    let out = ws.run(&["radon", "--fn", "lower.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_of(&out)["kind"], "ValidationError");

    let out = ws.run(&["euler-integral", "--fn", "missing.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ws.run(&["euler-integral", "--fn", "extra.json", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_of(&out)["path"], "argv");
    let out = ws.run(&["multiply", "--fn", "extra.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unsupported_csv_is_rejected() {
    let ws = Workspace::new();
    ws.file("square.json", SQUARE);
    let out = ws.run(&["normalize", "--fn", "square.json", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_of(&out)["path"], "--format");
}

#[test]
fn kernel_probe_values() {
    let ws = Workspace::new();
    let even = ws.json(&["kernel-probe", "--n", "2", "--samples", "25", "--seed", "4"]);
    assert_eq!(even["expected"], "0");
    assert_eq!(even["constant_in_kernel"], true);
    assert!(even["values"].as_array().unwrap().iter().all(|v| v["value"] == "0"));
    assert_eq!(even["values"].as_array().unwrap().len(), 25);
    let odd = ws.json(&["kernel-probe", "--n", "3", "--samples", "25"]);
    assert_eq!(odd["expected"], "1");
    assert_eq!(odd["passed"], true);
    assert_eq!(odd["constant_in_kernel"], false);
    let out = ws.run(&["kernel-probe", "--n", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn radon_then_dual_with_oracle() {
    let ws = Workspace::new();
    ws.file("mixed.json", MIXED);
    ws.file("pts.json", POINTS);
    let out = ws.run(&["radon", "--fn", "mixed.json", "--out", "image.json"]);
    assert_eq!(out.status.code(), Some(0));
    let dual = ws.json(&["dual-radon", "--fn", "image.json", "--points", "pts.json", "--oracle"]);
    assert_eq!(dual["oracle_agrees"], true);
    for v in dual["values"].as_array().unwrap() {
        assert_eq!(v["value"], v["oracle"]);
    }

    ws.file("triangle.json", TRIANGLE);
    ws.file("lines.json", r#"[[1,0,0],[0,1,0],[1,-1,0],[-1,1,1]]"#);
    let at = ws.json(&["radon", "--fn", "triangle.json", "--hyperplanes", "lines.json"]);
    let values: Vec<&str> = at["values"].as_array().unwrap().iter().map(|v| v["value"].as_str().unwrap()).collect();
    // misses, tangent along an edge, tangent at a vertex, crosses
    assert_eq!(values, ["0", "1", "1", "1"]);
}

#[test]
fn affine_operations() {
    let ws = Workspace::new();
    ws.file("square.json", SQUARE);
    ws.file(
        "frame.json",
        r#"{"ambient_dim": 2, "terms": [
            {"weight": 1, "support": {"ambient_dim": 2, "vertices": [[0,0],[3,0],[3,3],[0,3]]}},
            {"weight": -1, "support": {"ambient_dim": 2, "halfspaces": [
                {"normal": [1,0], "offset": 2}, {"normal": [-1,0], "offset": -1},
                {"normal": [0,1], "offset": 2}, {"normal": [0,-1], "offset": -1}]}}]}"#,
    );
    assert_eq!(ws.json(&["euler-integral", "--fn", "frame.json"])["euler_integral"], "0");
    assert_eq!(ws.json(&["euler-integral", "--fn", "square.json"])["euler_integral"], "1");

    ws.file("proj.json", r#"{"matrix": [[1, 0]], "translation": [0]}"#);
    let out = ws.run(&["pushforward", "--fn", "frame.json", "--map", "proj.json", "--out", "pushed.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let pushed: Value = serde_json::from_str(&fs::read_to_string(ws.path("pushed.json")).unwrap()).unwrap();
    assert_eq!(pushed["ambient_dim"], 1);
    assert_eq!(ws.json(&["euler-integral", "--fn", "pushed.json"])["euler_integral"], "0");

    ws.file("diag.json", r#"{"matrix": [[1], [1]], "translation": [0, 0]}"#);
    let pulled = ws.json(&["pullback", "--fn", "frame.json", "--map", "diag.json"]);
    ws.file("pulled.json", &pulled.to_string());
    // the diagonal meets the frame in [0, 1) and (2, 3]
    assert_eq!(pulled["ambient_dim"], 1);
    assert_eq!(ws.json(&["euler-integral", "--fn", "pulled.json"])["euler_integral"], "0");

    let product = ws.json(&["multiply", "--fn", "frame.json", "--fn", "square.json"]);
    ws.file("product.json", &product.to_string());
    // the unit square minus the hole's corner (1, 1)
    assert_eq!(ws.json(&["euler-integral", "--fn", "product.json"])["euler_integral"], "0");

    let cells = ws.json(&["normalize", "--fn", "frame.json"]);
    let total: i64 = cells["cells"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            let value: i64 = c["value"].as_str().unwrap().parse().unwrap();
            let sign = if c["dim"].as_u64().unwrap() % 2 == 0 { 1 } else { -1 };
            sign * value
        })
        .sum();
    assert_eq!(total, 0);
    let out = ws.run(&["normalize", "--fn", "frame.json", "--max-hyperplanes", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

fn close(v: &Value, expected: &[f64]) -> bool {
    let xs = v.as_array().unwrap();
    xs.len() == expected.len() && xs.iter().zip(expected).all(|(x, e)| (x.as_f64().unwrap() - e).abs() < 1e-12)
}

#[test]
fn intrinsic_volumes_of_cube_and_square() {
    let ws = Workspace::new();
    ws.file("cube.json", CUBE);
    ws.file("square.json", SQUARE);
    assert!(close(&ws.json(&["intrinsic-volumes", "--fn", "cube.json"])["values"], &[1.0, 3.0, 3.0, 1.0]));
    assert!(close(&ws.json(&["intrinsic-volumes", "--fn", "square.json"])["values"], &[1.0, 2.0, 1.0]));
    let csv = ws.run(&["intrinsic-volumes", "--fn", "square.json", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap(), "0,1\n1,2\n2,1\n");
}

#[test]
fn monte_carlo_checks_pass() {
    let ws = Workspace::new();
    ws.file("cube.json", CUBE);
    ws.file("square.json", SQUARE);
    let s = ws.json(&["steiner-check", "--fn", "cube.json", "--samples", "100000", "--seed", "1"]);
    assert_eq!(s["passed"], true);
    assert_eq!(s["entries"].as_array().unwrap().len(), 3);
    assert_eq!(s["seed"], 1);
    let c = ws.json(&["crofton-check", "--fn", "square.json", "--samples", "200000", "--seed", "2"]);
    assert_eq!(c["reference"], 4.0);
    assert_eq!(c["pass"], true);
    let k = ws.json(&["kinematic-check", "--fn", "square.json", "--fn", "square.json", "--samples", "200000"]);
    let expected = 4.0 * std::f64::consts::PI + 16.0;
    assert!((k["reference"].as_f64().unwrap() - expected).abs() < 1e-12);
    assert_eq!(k["disk_oracle"]["agrees"], true);
    assert_eq!(k["pass"], true);
}

#[test]
fn failed_verification_exits_3() {
    let ws = Workspace::new();
    ws.file("cube.json", CUBE);
    // one sample cannot resolve a tube volume
    let out = ws.run(&["steiner-check", "--fn", "cube.json", "--samples", "1", "--epsilons", "0.1"]);
    assert_eq!(out.status.code(), Some(3));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], false);
    assert_eq!(error_of(&out)["kind"], "VerificationFailed");
}

fn stdout_of(ws: &Workspace, args: &[&str]) -> Vec<u8> {
    let out = ws.run(args);
    assert_eq!(out.status.code(), Some(0));
    out.stdout
}

#[test]
fn identical_jobs_give_identical_bytes() {
    let ws = Workspace::new();
    ws.file("cube.json", CUBE);
    ws.file("square.json", SQUARE);
    let steiner = ["steiner-check", "--fn", "cube.json", "--samples", "50000", "--seed", "9"];
    assert_eq!(stdout_of(&ws, &steiner), stdout_of(&ws, &steiner));
    let other = ["steiner-check", "--fn", "cube.json", "--samples", "50000", "--seed", "10"];
    assert_ne!(stdout_of(&ws, &steiner), stdout_of(&ws, &other));
    let probe = ["kernel-probe", "--n", "3", "--samples", "10", "--seed", "5", "--format", "csv"];
    assert_eq!(stdout_of(&ws, &probe), stdout_of(&ws, &probe));
    let sino = ["sinogram", "--fn", "square.json", "--angles", "30", "--offsets", "40", "--format", "csv"];
    assert_eq!(stdout_of(&ws, &sino), stdout_of(&ws, &sino));
}
