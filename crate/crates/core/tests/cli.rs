use std::process::{Command, Output};

fn heronion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heronion")).args(args).output().expect("run heronion")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn triangle_areas() {
    let o = heronion(&["areas", "--sides", "3,4,5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("1 solutions"), "{out}");
    let row = out.lines().nth(2).unwrap();
    let cols: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(cols[1], "3.60000000e1");
    assert_eq!(cols[2], "6.00000000e0");
    assert_eq!(cols[3], "2.50000000e0");
}

#[test]
fn thales_triangle() {
    let o = heronion(&["areas", "--sides", "3,4", "--family", "semicyclic"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().nth(2).unwrap().contains("6.00000000e0"), "{out}");
}

#[test]
fn near_equal_pentagon_has_seven_rows() {
    let o = heronion(&["areas", "--sides", "1,1.01,0.99,1.02,0.98", "--family", "cyclic"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 2 + 7);
}

#[test]
fn areas_table_is_reproducible() {
    let a = heronion(&["areas", "--sides", "2,3,4,5,6"]);
    let b = heronion(&["areas", "--sides", "2,3,4,5,6"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors() {
    assert_eq!(heronion(&["expand", "--family", "alpha", "--n", "9"]).status.code(), Some(2));
    assert_eq!(heronion(&["areas", "--sides", "1,0,1"]).status.code(), Some(2));
    assert_eq!(heronion(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(heronion(&["frobnicate"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_heronion"))
        .args(["verify", "--suite", "identity"])
        .env("HERONION_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn resource_limit_exit_code() {
    let o = heronion(&["mobius", "--n", "7", "--family", "cyclic"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn expand_writes_files() {
    let dir = std::env::temp_dir().join(format!("heronion-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("alpha5.json");
    let o = heronion(&["expand", "--family", "alpha", "--n", "5", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("terms 153, weighted degree 14, degree 7 in k16"));
    let p = heronion::MultiPoly::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(p.degree_in_name("k16").unwrap(), Some(7));
    let o = heronion(&["expand", "--family", "alpha_semi", "--n", "3"]);
    assert!(stdout(&o).starts_with("vars: k16:2 s1:1 s2:2 s3:3\n1 k16^3\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn mobius_text() {
    let o = heronion(&["mobius", "--n", "3", "--family", "cyclic"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("vars: r2:1 Y1:1 Y2:1 Y3:1\n"));
    let o = heronion(&["mobius", "--sides", "3,4,5"]);
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn verify_report_is_deterministic() {
    let args = ["verify", "--suite", "identity", "--trials", "5", "--seed", "7"];
    let a = heronion(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_heronion")).args(args).env("HERONION_THREADS", "1").output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["pass"], true);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn specializations_suite_passes() {
    let o = heronion(&["verify", "--suite", "specializations", "--trials", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("PASS  const5") && err.contains("PASS  degen5"));
}
