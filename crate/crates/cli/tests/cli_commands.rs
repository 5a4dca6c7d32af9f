use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pinched_sphere::geometry::principal_curvatures;
use pinched_sphere::Jet;
use pinched_sphere_cli::format::{parse_profile, profile_to_json};
use pinched_sphere_cli::verify::{run_suite, Depth};
use serde_json::Value;
use tempfile::TempDir;

fn pinched(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pinched"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn build(dir: &Path, name: &str, extra: &[&str]) -> PathBuf {
    let out = dir.join(name);
    let mut args = vec!["profile", "build", "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = pinched(&args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    out
}

#[test]
fn profile_build_writes_a_valid_file() {
    let dir = TempDir::new().unwrap();
    let path = build(
        dir.path(),
        "p.json",
        &["--n", "2", "--eta", "0.1", "--S", "4", "--grid", "512"],
    );
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["n"], 2);
    assert_eq!(v["blend_id"], "smoothstep-window-v1");
    let t = v["t"].as_array().unwrap();
    assert_eq!(t.len(), v["r"].as_array().unwrap().len());
}

#[test]
fn builds_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let args = ["--n", "3", "--eta", "0.05", "--S", "4", "--grid", "256"];
    let a = fs::read(build(dir.path(), "a.json", &args)).unwrap();
    let b = fs::read(build(dir.path(), "b.json", &args)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn round_trip_is_bit_identical() {
    let p = pinched_sphere::build_profile(2, 0.1, 4.0, 256).unwrap();
    let text = profile_to_json(&p);
    let back = parse_profile(&text).unwrap();
    assert_eq!(profile_to_json(&back), text);
    for (a, b) in p.samples().iter().zip(back.samples()) {
        assert_eq!(a.r.to_bits(), b.r.to_bits());
        assert_eq!(a.rddot.to_bits(), b.rddot.to_bits());
    }
}

#[test]
fn infeasible_parameters_exit_two() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.json");
    let o = pinched(&[
        "profile",
        "build",
        "--n",
        "2",
        "--eta",
        "0.5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
    let o = pinched(&[
        "profile",
        "build",
        "--n",
        "2",
        "--eta",
        "0.1",
        "--S",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("(b)"), "{}", stderr(&o));
    let o = pinched(&[
        "profile",
        "build",
        "--n",
        "3",
        "--eta",
        "0.05",
        "--S",
        "12",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("(c)"));
    assert!(!out.exists());
}

#[test]
fn tampered_profile_exits_four_and_names_conditions() {
    let dir = TempDir::new().unwrap();
    let path = build(
        dir.path(),
        "p.json",
        &["--n", "2", "--eta", "0.1", "--S", "4", "--grid", "256"],
    );
    let mut v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let t: Vec<f64> = v["t"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    let i = t.iter().position(|&x| x >= 0.05).unwrap();
    v["rddot"][i] = Value::from(1.0);
    fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let csv = dir.path().join("c.csv");
    let o = pinched(&[
        "report",
        "--profile",
        path.to_str().unwrap(),
        "--kind",
        "curvature",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 4);
    assert!(stderr(&o).contains("(6)"), "{}", stderr(&o));
}

#[test]
fn unknown_fields_and_garbage_exit_four() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\"n\": 2}").unwrap();
    let out = dir.path().join("o.json");
    let o = pinched(&[
        "spectrum",
        "--profile",
        path.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 4);
    let missing = dir.path().join("missing.json");
    let o = pinched(&["spectrum", "--profile", missing.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
}

#[test]
fn reports_are_csv() {
    let dir = TempDir::new().unwrap();
    let path = build(
        dir.path(),
        "r.json",
        &["--n", "2", "--round", "--grid", "256"],
    );
    let csv = dir.path().join("b.csv");
    let o = pinched(&[
        "report",
        "--profile",
        path.to_str().unwrap(),
        "--kind",
        "bounds",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("quantity,value"));
    let fr: f64 = text
        .lines()
        .find(|l| l.starts_with("friedrich,"))
        .and_then(|l| l.split(',').nth(1))
        .unwrap()
        .parse()
        .unwrap();
    assert!((fr - 1.0).abs() < 1e-9);

    let csv = dir.path().join("c.csv");
    let o = pinched(&[
        "report",
        "--profile",
        path.to_str().unwrap(),
        "--kind",
        "curvature",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.lines().count() > 256);
}

#[test]
fn spectrum_json_on_round_sphere() {
    let dir = TempDir::new().unwrap();
    let path = build(
        dir.path(),
        "r.json",
        &["--n", "2", "--round", "--grid", "256"],
    );
    let o = pinched(&[
        "spectrum",
        "--profile",
        path.to_str().unwrap(),
        "--grid",
        "1024",
        "--modes",
        "4",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let l = v["result"]["lambda1_sq"].as_f64().unwrap();
    assert!((l - 1.0).abs() < 1e-4, "{l}");
    let again = pinched(&[
        "spectrum",
        "--profile",
        path.to_str().unwrap(),
        "--grid",
        "1024",
        "--modes",
        "4",
    ]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn sweep_writes_rows_and_summary() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("s.csv");
    let o = pinched(&[
        "sweep",
        "--n",
        "2",
        "--S",
        "4",
        "--etas",
        "0.05,0.1",
        "--grid",
        "512",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert!(rows[0].starts_with("eta,"));
    assert_eq!(rows.len(), 3);
    // rows are ordered by decreasing eta
    assert!(rows[1].starts_with("1.0"));
    assert!(text.contains("all_bracket_ok=true"));
    assert!(text.contains("excess_non_increasing=true"));
}

#[test]
fn sweep_with_infeasible_eta_exits_two() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("s.csv");
    let o = pinched(&[
        "sweep",
        "--n",
        "2",
        "--S",
        "4",
        "--etas",
        "0.2,0.1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("(c)"));
    assert!(!out.exists());
}

#[test]
fn verify_quick_passes() {
    let o = pinched(&["verify", "--quick"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let text = String::from_utf8_lossy(&o.stdout);
    assert_eq!(text.lines().filter(|l| l.starts_with("ok")).count(), 10);
}

fn flipped(j: &Jet) -> (f64, f64) {
    let (kt, kth) = principal_curvatures(j);
    (-kt, kth)
}

#[test]
fn sign_flipped_curvature_fails_the_suite() {
    let out = run_suite(Depth::Quick, flipped);
    let cap = out
        .iter()
        .find(|o| o.id == "geometry.cap_curvature")
        .unwrap();
    assert!(!cap.pass);
    assert!(out.iter().filter(|o| !o.pass).count() >= 1);
    let good = run_suite(Depth::Quick, principal_curvatures);
    assert!(good.iter().all(|o| o.pass));
}
