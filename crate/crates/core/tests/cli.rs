use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn thetalab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thetalab"))
        .args(args)
        .output()
        .expect("run thetalab")
}

fn fixture(name: &str, body: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn invariants_of_p_times_one_plus_t() {
    let f = fixture(
        "p_one_plus_t.json",
        r#"{"p": 5, "N": 20, "level": 1, "coeffs": ["5", "5", "0", "0", "0"]}"#,
    );
    let out = thetalab(&["invariants", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "mu=1 lambda=0");
}

#[test]
fn invariants_of_phi_2() {
    let f = fixture(
        "phi2.json",
        r#"{"p": 3, "N": 20, "level": 2, "coeffs": ["3", "9", "18", "21", "15", "6", "1", "0", "0"]}"#,
    );
    let out = thetalab(&["invariants", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "mu=0 lambda=6");
}

#[test]
fn invariants_error_codes() {
    let empty = fixture(
        "empty.json",
        r#"{"p": 5, "N": 20, "level": 1, "coeffs": []}"#,
    );
    assert_eq!(
        thetalab(&["invariants", empty.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );

    let zero = fixture(
        "zero.json",
        r#"{"p": 5, "N": 3, "level": 1, "coeffs": ["125", "0"]}"#,
    );
    let out = thetalab(&["invariants", zero.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stdout(&out).trim(), "zero-at-precision");

    let long = fixture(
        "long.json",
        r#"{"p": 5, "N": 20, "deg": 3, "coeffs": ["5", "5", "5", "1"]}"#,
    );
    assert_eq!(
        thetalab(&["invariants", long.to_str().unwrap()])
            .status
            .code(),
        Some(5)
    );

    assert_eq!(
        thetalab(&["invariants", "/nonexistent/file.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(thetalab(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn verify_lemmas_passes_and_validates_config() {
    let out = thetalab(&["verify-lemmas", "--trials", "20", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["all_passed"], true);

    assert_eq!(
        thetalab(&["verify-lemmas", "--trials", "0"]).status.code(),
        Some(4)
    );
    assert_eq!(
        thetalab(&["verify-lemmas", "--p", "4"]).status.code(),
        Some(4)
    );
}

#[test]
fn nonordinary_staircase_csv() {
    let out = thetalab(&[
        "nonordinary",
        "--n-max",
        "3",
        "--trials",
        "1",
        "--a-p",
        "0",
        "--mu",
        "0",
        "--lambda",
        "1",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(
        rows[0],
        "trial,n,parity,mu_theta,lambda_theta,q_n,expected_lambda,verdict"
    );
    assert_eq!(rows[2], "0,2,even,0,5,4,5,pass");
    assert_eq!(rows[3], "0,3,odd,0,21,20,21,pass");
}

#[test]
fn ordinary_has_no_failures() {
    let out = thetalab(&[
        "ordinary", "--a-p", "1", "--trials", "50", "--seed", "7", "--n-max", "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["counts"]["fail"], 0);
}

#[test]
fn regime_mismatch_is_a_config_error() {
    assert_eq!(
        thetalab(&["nonordinary", "--a-p", "1"]).status.code(),
        Some(4)
    );
    assert_eq!(thetalab(&["ordinary", "--a-p", "5"]).status.code(), Some(4));
    assert_eq!(
        thetalab(&["nonordinary", "--trunc", "10"]).status.code(),
        Some(4)
    );
}

#[test]
fn reports_are_byte_identical_and_keys_sorted() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let (a, b) = (dir.join("run_a.json"), dir.join("run_b.json"));
    for path in [&a, &b] {
        let out = thetalab(&[
            "nonordinary",
            "--trials",
            "4",
            "--n-max",
            "3",
            "--seed",
            "9",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (ra, rb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ra, rb);
    let text = String::from_utf8(ra).unwrap();
    let top: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = top.clone();
    sorted.sort();
    assert_eq!(top, sorted);
}

#[test]
fn perturbed_negative_control_exits_nonzero() {
    for cmd in ["nonordinary", "ordinary"] {
        let out = thetalab(&[cmd, "--trials", "2", "--n-max", "3", "--perturb", "2:3"]);
        assert_eq!(out.status.code(), Some(1), "{cmd}");
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report["counts"]["fail"], 2);
        assert_eq!(report["trials"][0]["three_term"]["result"], "fail");
    }
    assert_eq!(
        thetalab(&["nonordinary", "--perturb", "oops"])
            .status
            .code(),
        Some(2)
    );
}
