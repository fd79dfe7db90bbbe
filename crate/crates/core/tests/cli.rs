use std::path::PathBuf;
use std::process::{Command, Output};

use hdpc_lp::cli::EXAMPLE_RECEIVED;
use hdpc_lp::sim::{read_csv, SimConfig};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdpc-lp")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn inspect_reports_fs_count() {
    let o = bin(&["inspect", "--code", "hamming_8_4_paper"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("n: 8\nk: 4\nm: 4\n"), "{out}");
    assert!(out.contains("fs_constraints: 152"));
    let file = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/hamming_8_4_paper.alist");
    let o = bin(&["inspect", "--code", file.to_str().unwrap()]);
    assert!(stdout(&o).contains("fs_constraints: 152"));
}

#[test]
fn worked_example_exits_zero() {
    let o = bin(&["paper-example"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("matches ML"));
}

#[test]
fn decode_exit_codes() {
    let r: Vec<String> = EXAMPLE_RECEIVED.iter().map(|v| v.to_string()).collect();
    let r = r.join(",");
    let o = bin(&["decode", "--code", "hamming_8_4_paper", "--r", &r, "--decoder", "bb", "--depth", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("word: 1 1 0 0 0 0 1 1"), "{}", stdout(&o));
    let o = bin(&["decode", "--code", "hamming_8_4_paper", "--r", &r, "--decoder", "nsa"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    let o = bin(&["decode", "--code", "hamming_8_4_paper", "--r", "0.1,abc", "--decoder", "nsa"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    let o = bin(&["decode", "--code", "nope", "--r", "0.1", "--decoder", "nsa"]);
    assert_eq!(o.status.code(), Some(1));
    let o = bin(&["decode", "--code", "hamming_7_4", "--r", "1,1,1,1,1,1,1", "--decoder", "nsa", "--depth", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn simulate_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = SimConfig {
        code: "hamming_7_4".into(),
        decoders: vec!["nsa".into(), "C".into()],
        ebn0_list: vec![4.0, 2.0],
        frames: 300,
        seed: 5,
        max_frame_errors: Some(20),
        transmit_mode: Default::default(),
        workers: 2,
    };
    let cfg_path = dir.path().join("cfg.json");
    std::fs::write(&cfg_path, serde_json::to_string(&cfg).unwrap()).unwrap();
    let csv_path = dir.path().join("out.csv");
    let o = bin(&["simulate", "--config", cfg_path.to_str().unwrap(), "--out", csv_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let stats = read_csv(&csv_path).unwrap();
    let keys: Vec<(String, f64)> = stats.points.iter().map(|p| (p.decoder.clone(), p.ebn0_db)).collect();
    assert_eq!(keys, vec![("nsa".into(), 2.0), ("nsa".into(), 4.0), ("C".into(), 2.0), ("C".into(), 4.0)]);
    let json_path = dir.path().join("out.json");
    let o = bin(&[
        "simulate",
        "--config",
        cfg_path.to_str().unwrap(),
        "--out",
        json_path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json_path).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"code":"hamming_7_4","decoders":["zzz"],"ebn0_list":[1],"frames":1,"seed":1}"#).unwrap();
    let o = bin(&["simulate", "--config", bad.to_str().unwrap(), "--out", csv_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn shipped_configs_parse() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let cfg = SimConfig::load(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        hdpc_lp::sim::build_decoders(&cfg.decoders, &hdpc_lp::gf2::io::load_code(&cfg.code).unwrap()).unwrap();
        n += 1;
    }
    assert!(n >= 3);
}
