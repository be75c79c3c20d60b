use std::process::{Command, Output};

fn hbac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hbac")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn run_prints_csv_with_header() {
    let o = hbac(&["run", "4pac", "-n", "5"]);
    assert!(o.status.success());
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        ["algorithm", "scope", "regime", "eps0", "n", "spin", "resets", "bias"]
    );
    let row = rdr.records().next().unwrap().unwrap();
    assert_eq!(&row[6], "101");
    assert_eq!(&row[7], "3.75390625");
}

#[test]
fn table_json_has_published_columns() {
    let o = hbac(&["table", "T3_9SPIN", "--format", "json"]);
    assert!(o.status.success());
    let rows: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows.len(), 10);
    for key in ["algorithm", "n", "resets", "bias", "paper_value", "rel_dev"] {
        assert!(rows[0].get(key).is_some(), "missing {key}");
    }
    let fib = rows.iter().find(|r| r["algorithm"] == "3Fib").unwrap();
    assert_eq!(fib["resets"], 32768);
    assert_eq!(fib["paper_value"], 16.9);
}

#[test]
fn check_exit_codes() {
    assert_eq!(hbac(&["table", "t1", "--check"]).status.code(), Some(0));
    // one published 3Fib row disagrees with its own run-time formula
    let o = hbac(&["table", "t5", "--check"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("3Fib"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(hbac(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(hbac(&["run", "4pac", "-n", "4"]).status.code(), Some(1));
    assert_eq!(hbac(&["search", "2pac", "--eps0", "0.1", "--target", "0.05"]).status.code(), Some(1));
    assert_eq!(hbac(&["--help"]).status.code(), Some(0));
}

#[test]
fn search_examples() {
    let o = hbac(&["search", "2pac", "--eps0", "0.1", "--target", "0.6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v[0]["n"].as_u64(), v[0]["resets"].as_u64()), (Some(9), Some(937)));
    let o = hbac(&["search", "ppa", "--factor", "7", "--tolerance", "0.05", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v[0]["n"].as_u64(), v[0]["resets"].as_u64()), (Some(5), Some(97)));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("hbac.toml");
    let out = dir.path().join("curve.json");
    std::fs::write(&cfg, format!("eps0 = 0.1\nregime = \"exact\"\nformat = \"json\"\nout = {:?}\n", out)).unwrap();

    let o = hbac(&["curve", "--m", "6", "--j-max", "3", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Vec<serde_json::Value> = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v.len(), 4);
    assert!(v[3]["bias"].as_f64().unwrap() > 0.5);

    let o = hbac(&[
        "curve",
        "--m",
        "2",
        "--j-max",
        "1",
        "--config",
        cfg.to_str().unwrap(),
        "--regime",
        "linear",
        "--out",
        dir.path().join("lin.json").to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let v: Vec<serde_json::Value> =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("lin.json")).unwrap()).unwrap();
    assert_eq!(v[1]["bias"], 1.75);
}

#[test]
fn ppa_trace_is_sampled() {
    let o = hbac(&["ppa", "-n", "5", "--steps", "99", "--every", "33"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[3].starts_with("5,0.00001,99,6.99"));
}

#[test]
fn relaxed_sweep_keeps_request_order() {
    let o = hbac(&["relaxed", "2pac", "-n", "7", "--scope", "msb", "--ratio", "100", "--tau", "5,1.8"]);
    let text = stdout(&o);
    let taus: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(4).unwrap()).collect();
    assert_eq!(taus, ["5.0", "1.8"]);
}
