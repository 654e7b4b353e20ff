use std::process::Command;

use serde_json::Value;

use ellfourier_core::Cyclotomic;

fn ellfourier(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ellfourier"))
        .args(args)
        .output()
        .expect("spawn ellfourier");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

const JSON_RUNS: [&[&str]; 16] = [
    &["chartab", "wg2"],
    &["chartab", "s3"],
    &["chartab", "z2"],
    &["chartab", "z3"],
    &["chartab", "a1xa1"],
    &["fourier", "trivial"],
    &["fourier", "z2"],
    &["fourier", "z3"],
    &["fourier", "s3"],
    &["elliptic-basis", "g2q"],
    &["elliptic-basis", "a1a1q"],
    &["ft-el", "a2q"],
    &["res-matrix"],
    &["dual-ft"],
    &["verify"],
    &["partitions-c", "8"],
];

fn json_args(args: &[&str]) -> Vec<String> {
    ["--format", "json"].iter().chain(args).map(|s| s.to_string()).collect()
}

/// Every `{"conductor", "terms"}` object, at any depth.
fn cyclotomics<'a>(v: &'a Value, out: &mut Vec<&'a Value>) {
    match v {
        Value::Object(m) if m.contains_key("conductor") && m.contains_key("terms") => out.push(v),
        Value::Object(m) => m.values().for_each(|x| cyclotomics(x, out)),
        Value::Array(a) => a.iter().for_each(|x| cyclotomics(x, out)),
        _ => {}
    }
}

#[test]
fn json_output_is_byte_stable() {
    for args in JSON_RUNS {
        let a = json_args(args);
        let a: Vec<&str> = a.iter().map(String::as_str).collect();
        let (c1, first, _) = ellfourier(&a);
        let (c2, second, _) = ellfourier(&a);
        assert_eq!((c1, c2), (0, 0), "{args:?}");
        assert_eq!(first, second, "{args:?}");
    }
}

#[test]
fn json_cyclotomics_round_trip() {
    for args in JSON_RUNS {
        let a = json_args(args);
        let a: Vec<&str> = a.iter().map(String::as_str).collect();
        let (_, text, _) = ellfourier(&a);
        let v: Value = serde_json::from_str(&text).unwrap();
        let mut found = Vec::new();
        cyclotomics(&v, &mut found);
        for c in found {
            let text = c.to_string();
            let parsed = Cyclotomic::parse_json(&text).unwrap_or_else(|e| panic!("{args:?}: {text}: {e}"));
            assert_eq!(parsed.to_json(), text, "{args:?}");
        }
    }
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bogus"][..],
        &[],
        &["chartab"],
        &["chartab", "s5"],
        &["partitions-c", "7"],
        &["partitions-c", "x"],
        &["--format", "xml", "verify"],
    ] {
        let (code, stdout, stderr) = ellfourier(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(stdout.is_empty(), "{args:?}");
        assert!(stderr.contains("Usage") || stderr.contains("error"), "{args:?}: {stderr}");
    }
}

#[test]
fn verify_exits_0_with_commuting_report() {
    let (code, text, _) = ellfourier(&["verify", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["commutes"], true);
}

#[test]
fn pretty_output() {
    let (code, text, _) = ellfourier(&["partitions-c", "4"]);
    assert_eq!(code, 0);
    assert_eq!(text, "[4]: (T,T,T,T)\n[2,2]: (T,F,T,T)\n[2,1,1]: (T,F,F,F)\n[1,1,1,1]: (T,F,F,F)\n");
    let (_, text, _) = ellfourier(&["ft-el", "g2q"]);
    assert!(text.contains("sqrt(2)/3") && text.contains("1/sqrt(6)") && text.contains("-1/sqrt(3)"));
    let (_, text, _) = ellfourier(&["chartab", "z3"]);
    assert!(text.contains("z3"), "{text}");
}

#[test]
fn out_writes_the_json_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, stdout, _) = ellfourier(&["verify", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("commutes: true"));
    let written = std::fs::read_to_string(&path).unwrap();
    let (_, json, _) = ellfourier(&["--format", "json", "verify"]);
    assert_eq!(written, json);
}

#[test]
fn run_reports_through_the_given_streams() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = ellfourier_cli::run(["ellfourier", "fourier", "z2"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert!(err.is_empty());
    assert_eq!(String::from_utf8(out).unwrap().lines().count(), 5);
    let mut out = Vec::new();
    let code = ellfourier_cli::run(["ellfourier", "--help"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert!(String::from_utf8(out).unwrap().contains("partitions-c"));
}
