use std::fs;
use std::path::Path;

use serde_json::Value;

use hallrad_cli::{run_with, EXIT_INPUT, EXIT_PASS};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["hallrad".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

const ALT5: &str = "# Alt(5)\ndegree: 5\ngen: (0 1 2 3 4)\ngen: (0 1 2)\n";
const ALT4: &str = "degree: 5\ngen: (0 1 2)\ngen: (0 1)(2 3)\n";

#[test]
fn numtheory_commands() {
    let (code, out, _) = run(&["numtheory", "classify", "8"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(json(&out)["results"][0]["outcome"], "EightNine");
    assert!(out.ends_with("}\n"));
    let (code, out, _) = run(&["numtheory", "pi0", "13", "11"]);
    assert_eq!(code, EXIT_PASS);
    let v = json(&out);
    assert_eq!(v["results"][0]["in_pi0"], true);
    assert_eq!(v["results"][1]["in_pi0"], false);
    assert_eq!(run(&["numtheory", "pi0", "9"]).0, EXIT_INPUT);
    assert_eq!(run(&["numtheory", "classify", "1"]).0, EXIT_INPUT);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).0, EXIT_INPUT);
    assert_eq!(run(&["analyze", "--group", "missing.grp"]).0, EXIT_INPUT);
    assert_eq!(run(&["analyze", "--group", "missing.grp", "--subgroup", "missing.grp"]).0, EXIT_INPUT);
    assert_eq!(run(&["verify", "--suite", "corpus"]).0, EXIT_INPUT);
    assert_eq!(run(&["--help"]).0, EXIT_PASS);
}

#[test]
fn catalog_commands() {
    let (code, out, _) = run(&["catalog", "verify", "--p", "5"]);
    assert_eq!(code, EXIT_PASS);
    let v = json(&out);
    assert_eq!(v["results"].as_array().unwrap().len(), 1);
    assert_eq!(v["results"][0]["t_name"], "Alt(5)");
    let (code, out, _) = run(&["catalog", "list", "--p", "2", "--qcap", "31"]);
    assert_eq!(code, EXIT_PASS);
    let qs: Vec<u64> = json(&out)["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["q"].as_u64().unwrap())
        .collect();
    assert_eq!(qs, vec![7, 31]);
    let (_, out, _) = run(&["catalog", "verify", "--case", "6"]);
    assert_eq!(json(&out)["results"][0]["class_count"], 2);
}

#[test]
fn analyze_reports_and_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "a5.grp", ALT5);
    let h = write(dir.path(), "a4.grp", ALT4);
    let report = dir.path().join("out.json");
    let (code, out, _) = run(&["analyze", "--group", &g, "--subgroup", &h, "--json", report.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(fs::read_to_string(&report).unwrap(), out);
    let v = json(&out);
    assert_eq!(v["results"]["p"], 5);
    assert_eq!(v["results"]["rad_quotient"], 60);
    assert_eq!(v["inputs"].as_object().unwrap().len(), 2);
    // Alt(4) is not a subgroup when written on other points
    let bad = write(dir.path(), "bad.grp", "degree: 5\ngen: (0 1 2)(3 4)\n");
    assert_eq!(run(&["analyze", "--group", &g, "--subgroup", &bad]).0, EXIT_INPUT);
}

#[test]
fn group_file_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.grp", "degree: 5\n\ngen: (0 5)\n");
    let (code, _, err) = run(&["analyze", "--group", &g, "--subgroup", &g]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("line 3") && err.contains("point out of range"), "{err}");
}

#[test]
fn construct_writes_group_files() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "a5.grp", ALT5);
    let h = write(dir.path(), "a4.grp", ALT4);
    let k = write(dir.path(), "c2.grp", "degree: 2\ngen: (0 1)\n");
    let w = dir.path().join("w.g.grp");
    let s = dir.path().join("w.h.grp");
    let (code, out, _) = run(&[
        "construct", "wreath-top", "--group", &g, "--subgroup", &h, "--top", &k,
        "--out-group", w.to_str().unwrap(), "--out-subgroup", s.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_PASS);
    let v = json(&out);
    assert_eq!((v["results"]["w_order"].as_u64(), v["results"]["index"].as_u64()), (Some(7200), Some(25)));

    let c5 = write(dir.path(), "c5.grp", "degree: 5\ngen: (0 1 2 3 4)\n");
    let one = write(dir.path(), "one.grp", "degree: 5\n");
    let (code, out, _) = run(&["construct", "wreath-base", "--base", &c5, "--base-subgroup", &one, "--group", &g, "--subgroup", &h]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(json(&out)["results"]["w_order"].as_u64(), Some(187_500));

    let pair = format!("{g}:{h}");
    let (code, out, _) = run(&["construct", "product", "--pair", &pair, "--pair", &pair]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(json(&out)["results"]["index"].as_u64(), Some(25));
    assert_eq!(run(&["construct", "product", "--pair", &g]).0, EXIT_INPUT);

    // the written pair feeds the corpus suite
    let (code, out, _) = run(&["verify", "--suite", "corpus", dir.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    let v = json(&out);
    assert_eq!(v["results"][0]["name"], "w");
    assert_eq!(v["results"][0]["analysis"]["m"], 25);
}

#[test]
fn cap_override_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "a5.grp", ALT5);
    let h = write(dir.path(), "a4.grp", ALT4);
    let run_bin = |cap: Option<&str>| {
        let mut cmd = std::process::Command::new(env!("CARGO_BIN_EXE_hallrad"));
        cmd.args(["analyze", "--group", &g, "--subgroup", &h]);
        cmd.env_remove(hallrad::limits::CAP_ENV);
        if let Some(cap) = cap {
            cmd.env(hallrad::limits::CAP_ENV, cap);
        }
        let out = cmd.output().unwrap();
        assert!(out.status.success());
        json(&String::from_utf8(out.stdout).unwrap())
    };
    assert_eq!(run_bin(None)["results"]["probabilistic"], false);
    assert_eq!(run_bin(Some("10"))["results"]["probabilistic"], true);
}
