use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn spec_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../specs")
        .join(name)
}

fn ccode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccode"))
        .args(args)
        .output()
        .expect("run ccode")
}

fn with_spec(cmd: &str, name: &str, extra: &[&str]) -> Output {
    let path = spec_path(name);
    let mut args = vec![cmd, "--spec", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    ccode(&args)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn idempotents_command() {
    let out = ccode(&["idempotents", "--q", "5", "--k", "2", "--gamma", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("zeta_0(z) = -2-z = 3+4z"), "{text}");
    assert!(text.contains("zeta_1(z) = -2+z = 3+z"), "{text}");

    let text = stdout(&ccode(&[
        "idempotents",
        "--q",
        "7",
        "--k",
        "3",
        "--gamma",
        "-1",
    ]));
    assert!(text.contains("-2-3z-z^2 = 5+4z+6z^2"));
    assert!(text.contains("-2+2z-2z^2 = 5+2z+5z^2"));
    assert!(text.contains("-2+z+3z^2 = 5+z+3z^2"));

    let out = ccode(&["idempotents", "--q", "5", "--k", "3", "--gamma", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("root of unity"));
}

#[test]
fn factor_command() {
    let out = ccode(&["factor", "--q", "7", "--s", "3", "--alpha", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("8 monic divisors"));
}

#[test]
fn selfdual_verdicts_are_exit_codes() {
    let out = with_spec("selfdual", "example1.json", &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdicts"]["self_dual"], Value::Bool(true));

    let out = with_spec("selfdual", "example2.json", &[]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let cert = &v["verdicts"]["self_dual_certificate"];
    let first = cert["first_failure"].as_u64().unwrap() as usize;
    let cell = &cert["cells"][first];
    assert_eq!((cell["t"].as_u64(), cell["j"].as_u64()), (Some(0), Some(0)));
    assert_eq!(cell["p"], "-1+x");
    assert_eq!(cell["q_partner_star"], "1+x");

    // constants outside {1, -1}
    assert_eq!(
        with_spec("selfdual", "example3.json", &[]).status.code(),
        Some(2)
    );
}

#[test]
fn mindist_example3() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("r.json");
    let out = with_spec(
        "mindist",
        "example3.json",
        &["--out", out_path.to_str().unwrap(), "--jobs", "2"],
    );
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["distance"]["d"], 4);
    assert_eq!(v["distance"]["weight_checked"], 3);
    assert_eq!(v["dimension"], 12);
    assert_eq!(v["n"], 18);

    let out = with_spec("mindist", "example3.json", &["--max-weight", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["distance"]["exact"], Value::Bool(false));
    let out = with_spec("mindist", "example3.json", &["--budget", "1000"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verbose_does_not_change_json() {
    for cmd in ["build", "dual", "selfdual", "mindist"] {
        let quiet = with_spec(cmd, "example1.json", &[]);
        let loud = with_spec(cmd, "example1.json", &["--verbose"]);
        assert_eq!(quiet.stdout, loud.stdout, "{cmd}");
        assert!(!loud.stderr.is_empty());
    }
}

#[test]
fn spec_echo_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["example1.json", "example2.json", "example3.json"] {
        let first = json(&with_spec("build", name, &[]));
        let echo = serde_json::to_string_pretty(&first["spec"]).unwrap();
        let path = dir.path().join(name);
        std::fs::write(&path, &echo).unwrap();
        let second = json(&ccode(&["build", "--spec", path.to_str().unwrap()]));
        assert_eq!(serde_json::to_string_pretty(&second["spec"]).unwrap(), echo);
        assert_eq!(first, second);
    }
}

#[test]
fn dual_rows() {
    let v = json(&with_spec("dual", "example2.json", &[]));
    assert_eq!(v["H"].as_array().unwrap().len(), 6);
    // no sign constants: falls back to the null space of G
    let out = with_spec("dual", "example3.json", &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["H"].as_array().unwrap().len(), 6);
}

#[test]
fn exports() {
    let out = with_spec("export", "example3.json", &["--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 12);
    assert!(lines.iter().all(|l| l.split(',').count() == 18));

    let text = stdout(&with_spec("export", "example1.json", &["--format", "csv"]));
    let blocks: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(blocks.len(), 2, "G then H");

    let script = stdout(&with_spec("export", "example1.json", &[]));
    assert!(script.contains("F := GF(5);"));
    assert!(script.contains("IsSelfDual(C)"));
}

#[test]
fn invalid_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let zero = dir.path().join("zero.json");
    std::fs::write(
        &zero,
        r#"{"q":5,"s":2,"l":2,"k":2,"alpha":1,"beta":4,"gamma":4,"p":[[[4,0,1],[4,0,1]],[[4,0,1],[4,0,1]]]}"#,
    )
    .unwrap();
    let out = ccode(&["export", "--spec", zero.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dimension 0"));

    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"q":5,"s":2,"l":2,"k":2,"alpha":1,"beta":4,"gamma":4,"p":[[[3,1],[1,1]],[[4,1],[1,1]]]}"#,
    )
    .unwrap();
    let out = ccode(&["build", "--spec", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not divide"));

    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(
        ccode(&["build", "--spec", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ccode(&["build", "--spec", "/nonexistent/spec.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_honours_seed() {
    let path = spec_path("example1.json");
    let out = Command::new(env!("CARGO_BIN_EXE_ccode"))
        .args(["verify", "--spec", path.to_str().unwrap()])
        .env("CCODE_SEED", "12345")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["passed"] == Value::Bool(true)));
    assert!(checks
        .iter()
        .any(|c| c["detail"].as_str().unwrap().contains("seed 12345")));
}

#[test]
fn sweep_command() {
    let out = ccode(&[
        "sweep", "--q", "5", "--s", "2", "--l", "2", "--k", "2", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 8);
    let out = ccode(&["sweep", "--q", "5", "--exclusion", "--max-len", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().all(|l| l.contains(" 0 self-dual")));
}
