use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohom31")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cohom31-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

#[test]
fn verify_single_entry_passes() {
    let o = run(&["verify", "--entry", "T3:SO3xRe4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("T3:SO3xRe4"));
}

#[test]
fn verify_unknown_entry_is_usage_error() {
    assert_eq!(run(&["verify", "--entry", "NoSuchId"]).status.code(), Some(2));
}

#[test]
fn verify_json_is_deterministic() {
    let args = ["verify", "--entry", "T2:SO2xR11", "--json", "--no-timings"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
}

#[test]
fn classify_conjugated_rotation_group() {
    let f = scratch("so3.txt", "Yk1 + 2*e1 - e2\nYk2 + 3*e1 - e3\nYk3 + 3*e2 - 2*e3\ne4\n");
    let o = run(&["classify", f.to_str().unwrap()]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("T3:SO3xRe4"), "{out}");
    assert!(out.contains("ProperCertified"), "{out}");
}

#[test]
fn classify_rejects_non_closed_span() {
    let f = scratch("open.txt", "Yk1\nYn1\n");
    let o = run(&["classify", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("closure: FAILED"));
}

#[test]
fn classify_reports_excluded_algebra() {
    let f = scratch("k1n.txt", "Yk1\nYn1\nYn2\n");
    let out = stdout(&run(&["classify", f.to_str().unwrap()]));
    assert!(out.contains("Excluded:K1N"), "{out}");
    assert!(out.contains("not cohomogeneity one"), "{out}");
}

#[test]
fn orbit_at_a_point() {
    let o = run(&["orbit", "--entry", "T2:SO2xR11", "--point", "1,0,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim 3"));
    assert_eq!(run(&["orbit", "--entry", "T2:SO2xR11", "--point", "1,0,0"]).status.code(), Some(2));
}

#[test]
fn witness_for_non_proper_entry() {
    let o = run(&["witness", "--entry", "T3:nilpotent-pair", "--lambda", "1", "--mu", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("NonProperCertified"));
    assert_eq!(run(&["witness", "--entry", "T1:R3"]).status.code(), Some(1));
}

#[test]
fn export_writes_csv() {
    let out = std::env::temp_dir().join(format!("cohom31-cloud-{}.csv", std::process::id()));
    let o = run(&["export", "--entry", "T3:SO3xRe4", "--point", "1,0,0,0", "--grid", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t1,t2,t3,x,y,z,w"));
    assert_eq!(lines.count(), 64);
}
