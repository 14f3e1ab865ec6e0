//! End-to-end runs of the `turning` command line. JSON outputs are compared
//! against files in `tests/golden/`; set `UPDATE_GOLDEN=1` to rewrite them.

use serde_json::Value;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use turning_disorder::cli;
use turning_disorder::plot::Table;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn turning(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("turning").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn ok(args: &[&str]) -> String {
    let r = turning(args);
    assert_eq!(r.code, 0, "turning {args:?} failed: {}", r.err);
    r.out
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Structural equality with a relative tolerance on numbers.
fn same(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1.0)
        }
        (Value::Array(x), Value::Array(y)) => x.len() == y.len() && x.iter().zip(y).all(|(p, q)| same(p, q)),
        (Value::Object(x), Value::Object(y)) => {
            x.len() == y.len() && x.iter().all(|(k, v)| y.get(k).is_some_and(|w| same(v, w)))
        }
        _ => a == b,
    }
}

fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    let actual: Value = serde_json::from_str(actual).unwrap();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, serde_json::to_string_pretty(&actual).unwrap() + "\n").unwrap();
        return;
    }
    let expected: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert!(same(&expected, &actual), "{name} differs:\n{actual:#}");
}

fn write_polygon(dir: &Path, name: &str, vertices: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, format!(r#"{{"vertices": {vertices}}}"#)).unwrap();
    p
}

#[test]
fn distance_outputs() {
    golden("regular_4_6.json", &ok(&["distance", "--regular", "4", "--regular", "6", "--json"]));
    golden("circle_regular_12.json", &ok(&["distance", "--circle", "--regular", "12", "--json"]));
    golden("segment_circle.json", &ok(&["distance", "--segment", "--circle", "--json"]));

    let dir = tempfile::tempdir().unwrap();
    let square = write_polygon(dir.path(), "sq.json", "[[0,0],[1,0],[1,1],[0,1]]");
    // clockwise input is reversed on load
    let rect = write_polygon(dir.path(), "rect.json", "[[0,0],[0,1],[2,1],[2,0]]");
    golden(
        "square_rectangle.json",
        &ok(&["distance", "--poly-a", path_str(&square), "--poly-b", path_str(&rect), "--json"]),
    );
    let text = ok(&["distance", "--regular", "4", "--regular", "6"]);
    assert!(text.contains("0.50130766134583"), "{text}");
}

#[test]
fn lattice_and_disorder() {
    golden("exact_4_6_12.json", &ok(&["lattice", "exact", "--name", "4.6.12", "--json"]));
    let text = ok(&["lattice", "exact", "--name", "4.8.8"]);
    for v in ["0.4319", "0.3863", "0.3401", "0.2656"] {
        assert!(text.contains(v), "{v} missing from\n{text}");
    }

    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("hex.json");
    let per_face = dir.path().join("faces.csv");
    ok(&["lattice", "generate", "--name", "hex", "--size", "3", "--out", path_str(&net)]);
    golden(
        "disorder_hex3.json",
        &ok(&["disorder", "--network", path_str(&net), "--per-face", path_str(&per_face), "--json"]),
    );
    let csv = fs::read_to_string(&per_face).unwrap();
    assert!(csv.starts_with("face,sides,area,regular,hexagon,circle\n"));
    assert_eq!(csv.lines().count(), 1 + 7);
}

#[test]
fn rect_sweep_csv() {
    let out = ok(&["distance", "--rect-sweep", "1:2:0.25"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "aspect,d_square,d_hexagon,d_circle,ordering");
    assert_eq!(lines.len(), 6);
    assert!(lines[1].starts_with("1,0,") && lines[1].ends_with(",SCH"), "{}", lines[1]);
}

#[test]
fn bad_input_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.json");
    let r = turning(&["distance", "--poly-a", path_str(&missing), "--poly-b", path_str(&missing)]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("nope.json"));

    let junk = dir.path().join("junk.json");
    fs::write(&junk, "{ not json").unwrap();
    assert_eq!(turning(&["disorder", "--network", path_str(&junk)]).code, 2);

    let bowtie = write_polygon(dir.path(), "bow.json", "[[0,0],[1,1],[1,0],[0,1]]");
    assert_eq!(turning(&["distance", "--poly-a", path_str(&bowtie), "--circle", "--poly", path_str(&bowtie)]).code, 2);
    assert_eq!(turning(&["distance", "--regular", "1", "--regular", "6"]).code, 2);
    assert_eq!(turning(&["distance", "--regular", "4", "--regular", "6", "--p", "0.5"]).code, 2);
    assert_eq!(turning(&["lattice", "exact", "--name", "kagome"]).code, 2);
    assert_eq!(turning(&["no-such-command"]).code, 2);
}

#[test]
fn binary_reports_exit_status() {
    let status = Command::new(env!("CARGO_BIN_EXE_turning")).args(["lattice", "exact", "--name", "x"]).output().unwrap();
    assert_eq!(status.status.code(), Some(2));
    let good = Command::new(env!("CARGO_BIN_EXE_turning")).args(["distance", "--circle", "--regular", "6"]).output().unwrap();
    assert!(good.status.success());
    assert!(String::from_utf8_lossy(&good.stdout).contains("0.302299894039"));
}

#[test]
fn t1_trace_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, seed: &str| {
        let trace = dir.path().join(name);
        ok(&["simulate", "t1", "--cells", "60", "--moves", "40", "--seed", seed, "--trace", path_str(&trace), "--quiet"]);
        fs::read_to_string(trace).unwrap()
    };
    let (a, b, c) = (run("a.csv", "3"), run("b.csv", "3"), run("c.csv", "4"));
    assert_eq!(a, b);
    assert_ne!(a, c);
    let table = Table::parse(&a).unwrap();
    assert_eq!(table.column("step").unwrap(), (0..=4).map(|i| 10.0 * i as f64).collect::<Vec<_>>());
    let meta: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("a.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["process"], "t1");
    assert_eq!(meta["accepted"], 40);
}

#[test]
fn t1_without_moves_has_one_row() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("zero.csv");
    ok(&["simulate", "t1", "--cells", "30", "--moves", "0", "--seed", "1", "--trace", path_str(&trace), "--quiet"]);
    assert_eq!(fs::read_to_string(trace).unwrap().lines().count(), 2);
}

#[test]
fn rupture_snapshots_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("r.csv");
    let snaps = dir.path().join("snaps");
    let r = turning(&[
        "simulate", "rupture", "--rows", "6", "--cols", "6", "--ruptures", "12", "--stride", "4", "--seed", "2",
        "--trace", path_str(&trace), "--snapshots", path_str(&snaps),
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    let table = Table::parse(&fs::read_to_string(&trace).unwrap()).unwrap();
    let faces = table.column("faces").unwrap();
    let steps = table.column("step").unwrap();
    for (s, f) in steps.iter().zip(&faces) {
        assert_eq!(*f, faces[0] - s);
    }
    assert_eq!(fs::read_dir(&snaps).unwrap().count(), steps.len());
    assert!(snaps.join("step_000012.json").exists());

    let svg = dir.path().join("r.svg");
    ok(&["plot", "--trace", path_str(&trace), "--out", path_str(&svg), "--columns", "D,Dc_w"]);
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<polyline").count(), 2);
    let bad = turning(&["plot", "--trace", path_str(&trace), "--out", path_str(&svg), "--columns", "Q"]);
    assert_eq!(bad.code, 2);
    assert!(bad.err.contains("available"));
}

#[test]
fn manifest_rerun() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.csv");
    ok(&["simulate", "t1", "--cells", "40", "--moves", "20", "--seed", "9", "--trace", path_str(&trace), "--quiet"]);
    let manifest = dir.path().join("t.csv.manifest.json");
    let recorded: Value = serde_json::from_str(&fs::read_to_string(&manifest).unwrap()).unwrap();
    assert_eq!(recorded["seed"], 9);
    assert_eq!(recorded["subcommand"], "simulate t1");

    let r = turning(&["rerun", "--from", path_str(&manifest)]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.err.contains("reproduced"));

    // a tampered output digest must be caught
    let mut broken = recorded.clone();
    broken["outputs"][0]["sha256"] = Value::from("0".repeat(64));
    fs::write(&manifest, serde_json::to_string(&broken).unwrap()).unwrap();
    assert_eq!(turning(&["rerun", "--from", path_str(&manifest)]).code, 1);
}
