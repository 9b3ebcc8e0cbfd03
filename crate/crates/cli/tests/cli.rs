use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::TempDir;

fn kronrad() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_kronrad"));
    cmd.env_remove("KRONRAD_BUDGET");
    cmd
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// The JSON line with the given `report` tag.
fn json_report(o: &Output, tag: &str) -> Value {
    stdout(o)
        .lines()
        .filter(|l| l.starts_with('{'))
        .map(|l| serde_json::from_str::<Value>(l).unwrap())
        .find(|v| v["report"] == tag)
        .unwrap_or_else(|| panic!("no {tag} report in\n{}", stdout(o)))
}

fn entry(report: &Value, name: &str) -> f64 {
    report["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["name"] == name)
        .unwrap_or_else(|| panic!("no entry {name}"))["value"]
        .as_f64()
        .unwrap()
}

#[test]
fn radius_of_nilpotent_is_half() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"rows":2,"cols":2,"data":[[[0,0],[1,0]],[[0,0],[0,0]]]}"#);
    let o = kronrad().arg("radius").arg(&a).output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!((entry(&json_report(&o, "radius"), "w") - 0.5).abs() < 1e-12);
    assert!(stdout(&o).starts_with("# radius | anchors: "));
}

#[test]
fn stdin_and_shorthand() {
    let mut child = kronrad()
        .args(["--json", "radius", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"0 3i / 0 0").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| serde_json::from_str::<Value>(l).is_ok()));
    assert!((entry(&json_report(&o, "radius"), "w") - 1.5).abs() < 1e-12);
}

#[test]
fn poly_bounds_on_z2_minus_2() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.txt", "1 0 -2\n");
    let o = kronrad().args(["poly-bounds", "--coeffs"]).arg(&p).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let r = json_report(&o, "polynomial root bounds");
    assert!((entry(&r, "fujii_kubo") - 1.5).abs() < 1e-12);
    assert!((entry(&r, "est_poly") - 1.5).abs() < 1e-12);
    assert!((entry(&r, "max_root_modulus") - 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn report_commands_succeed() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", "1 0.5 / 0.25 2");
    let b = write(&dir, "b.txt", "0 1+i / -1 0.5i");
    let p = write(&dir, "p.txt", "1 0 / 0 0");
    let lower = write(&dir, "lower.txt", "1 0 / 0.25 2");
    let runs: Vec<Vec<&std::ffi::OsStr>> = vec![
        vec!["kron-bounds".as_ref(), a.as_os_str(), b.as_os_str()],
        vec!["pnorm".as_ref(), "--p".as_ref(), "inf".as_ref(), a.as_os_str(), b.as_os_str()],
        vec!["pnorm".as_ref(), "--p".as_ref(), "1.5".as_ref(), a.as_os_str(), b.as_os_str()],
        vec!["schur-chain".as_ref(), "--m".as_ref(), "3".as_ref(), a.as_os_str(), b.as_os_str()],
        vec!["tref".as_ref(), "--m".as_ref(), "2".as_ref(), b.as_os_str()],
        vec!["semihilbert".as_ref(), "--P".as_ref(), p.as_os_str(), a.as_os_str(), lower.as_os_str()],
    ];
    for args in runs {
        let o = kronrad().args(&args).output().unwrap();
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}{}", stdout(&o), stderr(&o));
        for line in stdout(&o).lines().filter(|l| l.starts_with('#')) {
            assert!(line.contains("| anchors: ") && !line.ends_with("anchors: "), "{line}");
        }
    }
}

#[test]
fn semihilbert_rejects_non_adjointable() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.txt", "1 0 / 0 0");
    let b = write(&dir, "b.txt", "0 1 / 0 0");
    let o = kronrad().args(["semihilbert", "--P"]).arg(&p).arg(&b).arg(&b).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not adjointable"), "{}", stderr(&o));
}

#[test]
fn verify_small_suite_passes() {
    let o = kronrad()
        .args(["verify", "--seed", "42", "--trials", "200", "--suites", "p3,th4"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("# summary p3: 200/200 passed"));
    assert!(text.contains("# summary th4: 200/200 passed"));
    let records = text.lines().filter(|l| l.starts_with('{')).count();
    assert_eq!(records, 400);
}

#[test]
fn usage_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "1 2 / 3 zz");
    let cases: Vec<(Vec<&std::ffi::OsStr>, &str)> = vec![
        (vec!["radius".as_ref(), "--frobnicate".as_ref()], "--frobnicate"),
        (vec!["radius".as_ref(), "/nonexistent/m.json".as_ref()], "/nonexistent/m.json"),
        (vec!["radius".as_ref(), bad.as_os_str()], "row 1, column 1"),
        (vec!["verify".as_ref(), "--suites".as_ref(), "p3,nope".as_ref()], "unknown suite"),
        (vec!["pnorm".as_ref(), "--p".as_ref(), "0.5".as_ref(), bad.as_os_str(), bad.as_os_str()], "0.5"),
        (vec!["schur-chain".as_ref(), "--m".as_ref(), "0".as_ref(), bad.as_os_str()], "--m"),
    ];
    for (args, needle) in cases {
        let o = kronrad().args(&args).output().unwrap();
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains(needle), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn budget_is_honoured() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", "1 2 3 / 4 5 6 / 7 8 9");
    let o = kronrad().env("KRONRAD_BUDGET", "10").arg("kron-bounds").arg(&a).arg(&a).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("KRONRAD_BUDGET"), "{}", stderr(&o));
    let o = kronrad().env("KRONRAD_BUDGET", "lots").arg("radius").arg(&a).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("positive integer"));
    let o = kronrad().env("KRONRAD_BUDGET", "100").arg("kron-bounds").arg(&a).arg(&a).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn matrix_round_trip_through_files() {
    let mut rng = kronrad::generators::stream_rng(5, 1);
    let m: kronrad::CMatrix = kronrad::generators::random_complex(&mut rng, 3, 3);
    let text = kronrad_cli::emit_matrix(&m);
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "m.json", &text);
    let back = kronrad_cli::load_matrix(&path).unwrap();
    assert_eq!(back, m);
    assert_eq!(kronrad_cli::emit_matrix(&back).as_bytes(), text.as_bytes());
}
