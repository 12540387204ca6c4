use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_collinear4p3v"))
}

fn run(args: &[&str]) -> Output {
    bin().env("COLLINEAR4P3V_THREADS", "1").args(args).output().expect("binary runs")
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

fn synth_fixture(dir: &TempDir, name: &str, extra: &[&str]) -> String {
    let p = path(dir, name);
    let mut args = vec!["synth", "--seed", "5", "--out", &p];
    args.extend_from_slice(extra);
    let out = run(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    p
}

#[test]
fn solve_noiseless_fixture() {
    let dir = TempDir::new().unwrap();
    let truth = path(&dir, "truth.json");
    let fixture = synth_fixture(&dir, "scene.json", &["--truth", &truth]);
    let out = run(&["solve", &fixture]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["R2", "R3", "t", "sigma", "O2", "O3", "points", "reproj_error", "n_real_roots"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(v["reproj_error"].as_f64().unwrap() <= 1e-12);
    assert_eq!(v["R2"].as_array().unwrap().len(), 3);
    assert_eq!(v["points"].as_array().unwrap().len(), 4);
    assert!(v["sigma"].as_i64().unwrap().abs() == 1);
    let gt: Value = serde_json::from_str(&std::fs::read_to_string(&truth).unwrap()).unwrap();
    for r in 0..3 {
        for c in 0..3 {
            let (a, b) = (v["R2"][r][c].as_f64().unwrap(), gt["R2"][r][c].as_f64().unwrap());
            assert!((a - b).abs() < 1e-8, "R2[{r}][{c}]");
        }
    }
}

#[test]
fn solve_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let fixture = synth_fixture(&dir, "noisy.json", &["--sigma", "0.5"]);
    let a = run(&["solve", &fixture]);
    let b = run(&["solve", &fixture]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn three_points_are_rejected() {
    let dir = TempDir::new().unwrap();
    let p = path(&dir, "short.json");
    let view3 = "[[0.1,0.2],[0.0,0.1],[-0.2,0.05]]";
    let view4 = "[[0.1,0.2],[0.0,0.1],[-0.2,0.05],[0.3,-0.1]]";
    std::fs::write(&p, format!(r#"{{"baseline": 0.3, "views": [{view3}, {view4}, {view4}]}}"#)).unwrap();
    let out = run(&["solve", &p]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("has 3"));
}

#[test]
fn malformed_json_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let p = path(&dir, "bad.json");
    std::fs::write(&p, "{ not json").unwrap();
    assert_eq!(run(&["solve", &p]).status.code(), Some(1));
}

#[test]
fn non_collinear_fixture_is_flagged() {
    let dir = TempDir::new().unwrap();
    let fixture = synth_fixture(&dir, "scene.json", &[]);
    // Shift view 3 by amounts far beyond any pixel noise, so no collinear
    // configuration explains it.
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&fixture).unwrap()).unwrap();
    for (i, p) in v["views"][2].as_array_mut().unwrap().iter_mut().enumerate() {
        let x = p[0].as_f64().unwrap();
        p[0] = Value::from(x + 0.05 * (i as f64 + 1.0));
    }
    let bad = path(&dir, "off_line.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let out = run(&["solve", &bad]);
    match out.status.code() {
        Some(2) => {}
        Some(0) => {
            let r: Value = serde_json::from_slice(&out.stdout).unwrap();
            assert!(r["reproj_error"].as_f64().unwrap() > 1e-3);
        }
        c => panic!("unexpected exit {c:?}"),
    }
}

#[test]
fn bench_writes_reproducible_csv() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (path(&dir, "a.csv"), path(&dir, "b.csv"));
    let args = |o: &str| {
        vec!["bench", "--config", "planar", "--trials", "2", "--sigma-max", "0.2", "--seed", "7", "--out"]
            .into_iter()
            .map(String::from)
            .chain([o.to_string()])
            .collect::<Vec<_>>()
    };
    for o in [&a, &b] {
        let out = bin().args(args(o)).output().unwrap();
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).contains("planar"));
    }
    let (ca, cb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ca, cb);
    // header + 3 levels x 2 trials
    assert_eq!(String::from_utf8(ca).unwrap().lines().count(), 7);
}

#[test]
fn bench_default_grid_has_eleven_levels() {
    let out = run(&["bench", "--trials", "1", "--seed", "3"]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 1 + 11);
}

#[test]
fn bench_rejects_bad_flags() {
    assert_eq!(run(&["bench", "--trials", "0"]).status.code(), Some(1));
    assert_eq!(run(&["bench", "--config", "diagonal"]).status.code(), Some(1));
    assert_eq!(run(&["bench", "--sigma-max", "-1"]).status.code(), Some(1));
}

fn dump(fixture: &str, stage: &str) -> Output {
    run(&["dump", fixture, "--stage", stage])
}

fn integer_strings(out: &Output) -> Vec<String> {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Vec<String> = serde_json::from_slice(&out.stdout).unwrap();
    for c in &v {
        assert!(c.parse::<num_bigint::BigInt>().is_ok(), "{c}");
    }
    v
}

#[test]
fn dump_stages() {
    let dir = TempDir::new().unwrap();
    let fixture = synth_fixture(&dir, "scene.json", &[]);
    assert_eq!(integer_strings(&dump(&fixture, "s")).len(), 37);
    assert_eq!(integer_strings(&dump(&fixture, "s2")).len(), 5);
    assert_eq!(integer_strings(&dump(&fixture, "s3")).len(), 5);
    let sys = dump(&fixture, "system");
    assert!(sys.status.success());
    let v: Value = serde_json::from_slice(&sys.stdout).unwrap();
    for k in ["h2", "h3", "hmix"] {
        assert!(!v[k]["terms"].as_array().unwrap().is_empty());
    }
    assert_eq!(dump(&fixture, "s4").status.code(), Some(1));
}

#[test]
fn synth_is_deterministic_and_noise_changes_it() {
    let dir = TempDir::new().unwrap();
    let a = synth_fixture(&dir, "a.json", &[]);
    let b = synth_fixture(&dir, "b.json", &[]);
    let c = synth_fixture(&dir, "c.json", &["--sigma", "1"]);
    let read = |p: &str| std::fs::read(Path::new(p)).unwrap();
    assert_eq!(read(&a), read(&b));
    assert_ne!(read(&a), read(&c));
    let to_stdout = run(&["synth", "--seed", "5"]);
    assert_eq!(to_stdout.stdout, read(&a));
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["solve", "--help"]).status.code(), Some(0));
}
