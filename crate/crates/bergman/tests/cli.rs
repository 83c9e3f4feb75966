use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bergman(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bergman")).args(args).output().expect("run bergman")
}

fn temp(name: &str, text: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("bergman-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn norm_of_constant_and_both_methods() {
    let f = temp("const.json", r#"{"n": 1, "degree": 2, "terms": [{"m": [0], "re": 3.0, "im": -4.0}]}"#);
    let j = json(&bergman(&["norm", "--input", f.to_str().unwrap(), "--method", "both"]));
    let rows = j["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["method"], "exact");
    assert_eq!(rows[0]["value"], 5.0);
    assert_eq!(rows[1]["method"], "quad");
    assert_eq!(j["seed"], 0xB16B_00B5u64);
}

#[test]
fn norm_mc_agrees_with_exact() {
    let f = temp(
        "poly.json",
        r#"{"n": 2, "degree": 3, "terms": [{"m": [1, 0], "re": 1.0}, {"m": [1, 2], "re": 0.5, "im": 1.0}]}"#,
    );
    let j = json(&bergman(&["norm", "--input", f.to_str().unwrap(), "--method", "both"]));
    let rows = j["rows"].as_array().unwrap();
    assert_eq!(rows[1]["method"], "mc");
    let (e, m) = (rows[0]["value"].as_f64().unwrap(), rows[1]["value"].as_f64().unwrap());
    assert!((m / e - 1.0).abs() < 5e-3, "{e} {m}");
    assert!(rows[1]["stderr"].as_f64().unwrap() > 0.0);
}

#[test]
fn exit_codes() {
    let bad = temp("bad.json", r#"{"n": 1, "degree": 2, "terms": [{"m": [1], "re": 1.0}, {"m": [1, 1], "re": 1.0}]}"#);
    let o = bergman(&["norm", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("term 1"));
    assert!(o.stdout.is_empty());

    let ok = temp("ok.json", r#"{"n": 1, "degree": 2, "terms": [{"m": [1], "re": 1.0}]}"#);
    assert_eq!(bergman(&["norm", "--input", ok.to_str().unwrap(), "--p", "-1"]).status.code(), Some(3));
    assert_eq!(
        bergman(&["norm", "--input", ok.to_str().unwrap(), "--p", "1", "--method", "exact"]).status.code(),
        Some(3)
    );
    assert_eq!(bergman(&["kernel", "--n", "1", "--z", "1.5", "--w", "0"]).status.code(), Some(3));
    assert_eq!(bergman(&["verify", "--suite", "no-such-suite"]).status.code(), Some(4));
    assert_eq!(bergman(&["norm", "--nope"]).status.code(), Some(2));
    assert_eq!(bergman(&["norm", "--input", "/nonexistent/file.json"]).status.code(), Some(1));
}

#[test]
fn classify_tables() {
    let one = json(&bergman(&["classify", "--a", "2,0", "--b", "2,0"]));
    assert_eq!(one["rows"].as_array().unwrap().len(), 1);
    assert_eq!(one["rows"][0]["relation"], "equal");

    let grid = "0.5,-1;1,0;2,1;3,-0.5;4,2";
    let j = json(&bergman(&["classify", "--n", "2", "--a", grid]));
    let rows = j["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 25);
    let rel = |i: usize, k: usize| rows[5 * i + k]["relation"].as_str().unwrap().to_string();
    let flip = |r: &str| match r {
        "strict-subset" => "strict-superset".to_string(),
        "strict-superset" => "strict-subset".to_string(),
        x => x.to_string(),
    };
    for i in 0..5 {
        assert_eq!(rel(i, i), "equal");
        for k in 0..5 {
            assert_eq!(rel(i, k), flip(&rel(k, i)));
        }
    }
}

#[test]
fn verify_rows_and_csv() {
    let o = bergman(&["verify", "--suite", "kernel-reproduce", "--format", "csv"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("suite,check,expected,observed,tolerance,pass,seed"));
    assert_eq!(lines.count(), 20);
    let j = json(&bergman(&["verify", "--suite", "forelli-rudin-asymptotics"]));
    assert!(j["rows"].as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn out_file_matches_stdout() {
    let out = std::env::temp_dir().join(format!("bergman-cli-{}-fr.csv", std::process::id()));
    let args = ["forelli-rudin", "--t", "1", "--s", "-0.5", "--format", "csv"];
    let direct = bergman(&args);
    let mut with_out: Vec<&str> = args.to_vec();
    with_out.extend(["--out", out.to_str().unwrap()]);
    let o = bergman(&with_out);
    assert!(o.status.success() && o.stdout.is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), direct.stdout);
}

#[test]
fn other_commands() {
    let k = json(&bergman(&["kernel", "--n", "2", "--alpha", "-3", "--z", "0.3,0.1;0.2", "--w", "0.1;0.4,-0.2"]));
    assert_eq!(k["params"]["regime"], "log");
    let (a, b) = (&k["rows"][0], &k["rows"][1]);
    assert!((a["re"].as_f64().unwrap() - b["re"].as_f64().unwrap()).abs() < 1e-12);

    let nk = json(&bergman(&["natural-kernel", "--n", "1", "--k", "1", "--z", "0.3", "--w", "0.2"]));
    assert!(nk["rows"][0]["tail_bound"].as_f64().unwrap() <= 1e-10);

    let mu =
        temp("mu.json", r#"{"n": 1, "atoms": [{"z": [[0.9, 0.0]], "mass": 0.01}, {"z": [[0.0, -0.5]], "mass": 0.2}]}"#);
    let c = json(&bergman(&["carleson", "--input", mu.to_str().unwrap()]));
    let b = json(&bergman(&["berezin", "--input", mu.to_str().unwrap()]));
    let (cv, bv) = (c["rows"][0]["constant"].as_f64().unwrap(), b["rows"][0]["value"].as_f64().unwrap());
    assert!(cv > 0.0 && cv < 8.0 * bv);
    let at = json(&bergman(&["berezin", "--input", mu.to_str().unwrap(), "--z", "0"]));
    // B(mu)(0) = sum of masses at s = 1, gamma = 0
    assert!((at["rows"][0]["value"].as_f64().unwrap() - 0.21).abs() < 1e-15);

    let m = json(&bergman(&["member", "--family", "ft", "--t", "0.9", "--p", "2", "--alpha", "0", "--gamma", "1"]));
    assert_eq!(m["rows"][0]["decision"], "member");
    let m = json(&bergman(&["member", "--family", "lacunary", "--sigma", "0.5", "--p", "2", "--alpha", "0"]));
    assert_eq!(m["rows"][0]["decision"], "non-member");
}
