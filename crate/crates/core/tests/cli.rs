use std::process::Command;

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_imex-relax")).args(args).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr);
    (out.status.code().unwrap(), text)
}

#[test]
fn tableau_check_exit_codes() {
    assert_eq!(cli(&["tableau", "check", "BPR442", "--additional"]).0, 0);
    let (code, text) = cli(&["tableau", "check", "CK222", "--additional"]);
    assert_eq!(code, 1);
    assert!(text.contains("FAIL"));
    assert_eq!(cli(&["tableau", "check", "ARS111", "--order", "2"]).0, 1);
    assert_eq!(cli(&["tableau", "check", "no-such-pair"]).0, 2);
    assert_eq!(cli(&["frobnicate"]).0, 2);
}

#[test]
fn run_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let (code, json) = cli(&["preset", "1b"]);
    assert_eq!(code, 0);
    let mut v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let csv = dir.path().join("out.csv");
    let svg = dir.path().join("out.svg");
    v["outputs"]["csv"] = csv.to_str().unwrap().into();
    v["outputs"]["svg"] = svg.to_str().unwrap().into();
    v["outputs"]["snapshot_times"] = serde_json::json!([1.0]);
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, v.to_string()).unwrap();
    let (code, text) = cli(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("L1 error"));
    let body = std::fs::read_to_string(&csv).unwrap();
    let header = body.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "x,u_t1,v_t1,u,v,u_exact");
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn run_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    let (_, json) = cli(&["preset", "test1"]);
    std::fs::write(&cfg, json.replacen("{", "{\"colour\": 1,", 1)).unwrap();
    assert_eq!(cli(&["run", "--config", cfg.to_str().unwrap()]).0, 2);
    assert_eq!(cli(&["run", "--config", "/nonexistent/cfg.json"]).0, 1);
    let mut v: serde_json::Value = serde_json::from_str(&json).unwrap();
    v["scheme"] = "unified".into();
    v["grid"]["n"] = 320.into();
    v["t_final"] = 1.0.into();
    std::fs::write(&cfg, v.to_string()).unwrap();
    let (code, text) = cli(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 3, "{text}");
}

#[test]
fn converge_and_paper_test() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, text) = cli(&["converge", "--preset", "test1", "--tableaus", "ARS111,CK222", "--cells", "40,80", "--out", d]);
    assert_eq!(code, 0, "{text}");
    let csv = std::fs::read_to_string(dir.path().join("test1_convergence.csv")).unwrap();
    assert_eq!(csv.lines().filter(|l| l.starts_with("ARS111,") || l.starts_with("CK222,")).count(), 4);
    let (code, text) = cli(&["paper-test", "3b", "--no-reference", "--out", d]);
    assert_eq!(code, 0, "{text}");
    assert!(dir.path().join("3b.csv").exists() && dir.path().join("3b_u.svg").exists());
    assert_eq!(cli(&["paper-test", "9", "--out", d]).0, 2);
}
