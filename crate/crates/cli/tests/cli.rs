use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fqrace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fqrace")).args(args).output().expect("spawn fqrace")
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    let _ = std::fs::remove_file(&path);
    path
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn analyze_f23() {
    let out = fqrace(&["analyze", "--p", "23", "--f", "5,0,0,2,0,0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let strs = |key: &str| -> Vec<String> {
        v[key].as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
    };
    assert_eq!(strs("zeta_numerator"), ["1", "0", "-29", "0", "529"]);
    assert_eq!(strs("L"), ["1", "-1", "-29", "29", "529", "-529"]);
    assert_eq!(v["genus"], 2);
    assert_eq!(v["lower_order"]["status"], "Yes");
    assert_eq!(v["complete"]["status"], "No");
    assert_eq!(v["zero_set"]["density"], "1/2");
}

#[test]
fn analyze_extension_field_coordinates() {
    let out = fqrace(&["analyze", "--p", "3", "--e", "2", "--f", "[1,1],1,0,1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["field"]["q"], 9);
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        &["analyze", "--p", "2", "--f", "1,1,0,1"][..],
        &["analyze", "--p", "9", "--f", "1,0,1"],
        &["analyze", "--p", "3", "--f", "1,x,1"],
        &["analyze", "--p", "3", "--f", "0,0,0"],
        &["census", "--p", "3", "--n", "3", "--sample", "5", "--out", "unused.csv"],
        &["sympcount", "--l", "9", "--g", "1", "--qbar", "1", "--out", "unused.csv"],
        &["race", "--p", "3", "--f", "1,0,1", "--n", "0"],
        &["no-such-command"],
    ] {
        let out = fqrace(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty(), "{args:?} printed no diagnostic");
    }
}

#[test]
fn bad_family_creates_no_file() {
    let path = tmp("bad_family.csv");
    let out = fqrace(&["census", "--p", "5", "--family", "1,0,0,1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!path.exists());
}

#[test]
fn census_output_is_reproducible() {
    for format in ["csv", "json"] {
        let a = tmp(&format!("a.{format}"));
        let b = tmp(&format!("b.{format}"));
        for (path, jobs) in [(&a, "1"), (&b, "2")] {
            let out = fqrace(&[
                "census", "--jobs", jobs, "--p", "3", "--n", "4", "--format", format, "--out", path.to_str().unwrap(),
            ]);
            assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
            assert_eq!(stdout_json(&out)["summary"]["total"], 54);
        }
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap(), "{format}");
    }
}

#[test]
fn sampled_census_depends_only_on_seed() {
    let run = |name: &str, seed: &str| {
        let path = tmp(name);
        let out = fqrace(&[
            "census", "--p", "5", "--n", "4", "--sample", "20", "--seed", seed, "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        std::fs::read_to_string(path).unwrap()
    };
    let first = run("s1.csv", "7");
    assert_eq!(first, run("s2.csv", "7"));
    assert_ne!(first, run("s3.csv", "8"));
    assert_eq!(first.lines().count(), 22);
}

#[test]
fn family_census() {
    let path = tmp("family.csv");
    let out = fqrace(&["census", "--p", "5", "--family", "1,0,1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["summary"]["total"], 3);
}

#[test]
fn race_table_matches_decomposition() {
    let out = fqrace(&["race", "--p", "3", "--f", "1,2,0,1", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), 5);
    for r in rows {
        assert_eq!(r[3], r[4]);
    }
}

#[test]
fn delta_table() {
    let out = fqrace(&["delta", "--p", "3", "--f", "1,0,1", "--n-max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let exact: Vec<&str> = text.lines().skip(1).map(|l| l.split('\t').nth(1).unwrap()).collect();
    assert_eq!(exact, ["0", "1", "0", "1"]);
}

#[test]
fn sympcount_writes_table() {
    let path = tmp("symp.csv");
    let out = fqrace(&["sympcount", "--l", "7", "--g", "2", "--qbar", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("# "));
    assert!(text.lines().nth(1).unwrap().starts_with("l,g,qbar,kind,key,count"));
}

#[test]
fn verify_passes() {
    let out = fqrace(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("ok")).count(), 7);
}
