use std::path::Path;
use std::process::{Command, Output};

fn brecip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brecip"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn classify_cyclotomic_is_g2() {
    let out = brecip(&["classify", "--n", "2", "--b", "1", "--g", "-1,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["verdict"], "G2");
}

#[test]
fn classify_linear_g0() {
    let out = brecip(&["classify", "--n", "1", "--b", "1", "--g", "3,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["verdict"], "G0");
}

#[test]
fn classify_from_f_matches_g() {
    // x^4 + x^3 + x^2 + x + 1
    let out = brecip(&["classify", "--n", "2", "--b", "1", "--f", "1,1,1,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["verdict"], "G2");
}

#[test]
fn non_reciprocal_f_is_an_error() {
    let out = brecip(&["classify", "--n", "1", "--b", "2", "--f", "-2,0,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not b-reciprocal"));
}

#[test]
fn usage_error_exits_1() {
    assert_eq!(brecip(&["classify", "--n", "2"]).status.code(), Some(1));
    assert_eq!(brecip(&["--help"]).status.code(), Some(0));
}

#[test]
fn degree_mismatch_is_an_error() {
    let out = brecip(&["classify", "--n", "3", "--b", "1", "--g", "1,1,1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn uncertified_base_group_exits_2() {
    // x^4 - 2 has dihedral group, which no prime can prove.
    let out = brecip(&["classify", "--n", "4", "--b", "1", "--g", "-2,0,0,0,1", "--sn-budget", "30"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["verdict"], "Undetermined");
    let out = brecip(&["classify", "--n", "4", "--b", "1", "--g", "-2,0,0,0,1", "--sn-budget", "30", "--lenient"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["verdict"], "SmallBaseGroup");
}

#[test]
fn conic_brute_check() {
    let out = brecip(&["conic", "--b", "2", "--height", "100", "--brute-check", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("agree"));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("b,X,Y,Z,s,t"));
    for line in lines {
        let v: Vec<i64> = line.split(',').map(|t| t.parse().unwrap()).collect();
        assert_eq!(v[1] * v[1] - 4 * v[0] * v[2] * v[2], v[3] * v[3], "{line}");
    }
}

#[test]
fn tables_n2() {
    let out = brecip(&["tables", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let groups: Vec<&str> = v.as_array().unwrap().iter().map(|t| t["group"].as_str().unwrap()).collect();
    assert_eq!(groups, ["G0", "G1", "G2"]);
    let g2: Vec<&str> = v[2]["types"].as_array().unwrap().iter().map(|t| t.as_str().unwrap()).collect();
    assert!(g2.contains(&"{(2,-)}"));
    assert!(!g2.contains(&"{(2,+)}"));
}

#[test]
fn audit_passes_and_mislabel_fails() {
    let out = brecip(&["audit", "--n", "2", "--b", "1", "--g", "-1,1,1", "--primes", "50"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["outcome"]["result"], "Pass");
    let out = brecip(&["audit", "--n", "2", "--b", "1", "--g", "-1,1,1", "--verdict", "G1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["outcome"]["result"], "Fail");
}

fn census(dir: &Path, name: &str, extra: &[&str]) -> (Output, String) {
    let path = dir.join(name);
    let mut args = vec![
        "census", "--kind", "monic", "--n", "2", "--b", "1", "--heights", "10,20,40", "--out",
    ];
    let p = path.to_str().unwrap().to_string();
    args.push(&p);
    args.extend_from_slice(extra);
    let out = brecip(&args);
    let body = std::fs::read_to_string(&path).unwrap_or_default();
    (out, body)
}

#[test]
fn census_report_is_deterministic_across_shards_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let (out, a) = census(dir.path(), "a.json", &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("in_G1"));
    let (_, b) = census(dir.path(), "b.json", &["--shards", "4", "--threads", "3"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["per_height"].as_array().unwrap().len(), 3);
}

#[test]
fn census_resumes_from_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck");
    let ck = ck.to_str().unwrap();
    let args = ["--kind", "breciprocal", "--n", "1", "--b", "-1", "--heights", "200,400,800"];
    let run = |extra: &[&str]| {
        let mut a = vec!["census"];
        a.extend_from_slice(&args);
        a.extend_from_slice(extra);
        brecip(&a)
    };
    let plain = run(&[]);
    assert_eq!(plain.status.code(), Some(0));
    let killed = run(&["--checkpoint-dir", ck, "--stop-after-chunks", "2"]);
    assert_eq!(killed.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&killed.stderr).contains("interrupted"));
    let resumed = run(&["--checkpoint-dir", ck]);
    assert_eq!(resumed.status.code(), Some(0));
    assert_eq!(plain.stdout, resumed.stdout);
}

#[test]
fn census_fixed_constant_reports_r() {
    let out = brecip(&["census", "--kind", "fixedconst", "--n", "3", "--b", "2", "--heights", "30,60,120", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0][4], "R");
    assert_eq!(rows[3][0], "120");
    assert!(rows[3][4].parse::<u64>().unwrap() > 0);
}
