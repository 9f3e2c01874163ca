use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cvinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvinv"))
        .args(args)
        .env("RUST_LOG", "off")
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = cvinv(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn vacuum_report_matches_golden() {
    let out = cvinv(&["run", "--generator", "vacuum", "--scheme", "scheme1"]);
    assert_eq!(code(&out), 0);
    let golden = include_str!("golden/vacuum_scheme1.json");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
}

#[test]
fn tmsv_scheme2_eof_matches_oracle() {
    let rep = ok_json(&[
        "run",
        "--generator",
        "tmsv",
        "--r",
        "0.5",
        "--scheme",
        "both",
        "--detector",
        "ideal",
    ]);
    let oracle = rep["oracle"]["entanglement"]["eof"].as_f64().unwrap();
    let s2 = rep["schemes"][1]["result"]["entanglement"]["eof"]
        .as_f64()
        .unwrap();
    assert_eq!(rep["schemes"][1]["result"]["scheme"], "scheme2");
    assert!((s2 - oracle).abs() < 1e-9);
    assert_eq!(rep["consistency"]["consistent"], true);
}

#[test]
fn vacuum_scheme1_is_separable() {
    let rep = ok_json(&["scheme1", "--generator", "vacuum"]);
    let r = &rep["schemes"][0]["result"];
    assert_eq!(r["invariants"]["j1"], 0.25);
    assert_eq!(r["invariants"]["j3"], 0.0);
    assert_eq!(r["entanglement"]["separable"], true);
}

#[test]
fn identical_seeds_give_identical_bytes() {
    let args = [
        "run",
        "--generator",
        "random",
        "--seed",
        "17",
        "--detector",
        "lossy-homodyne",
        "--eta",
        "0.8",
        "--shots",
        "20000",
    ];
    let a = cvinv(&args);
    let b = cvinv(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let mut other = args;
    other[4] = "18";
    assert_ne!(cvinv(&other).stdout, a.stdout);
}

#[test]
fn replay_of_saved_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let p = path.to_str().unwrap();
    let out = cvinv(&[
        "run",
        "--generator",
        "special",
        "--seed",
        "5",
        "--detector",
        "lossy-photocount",
        "--eta",
        "0.9",
        "--shots",
        "100000",
        "--out",
        p,
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let checks = ok_json(&["replay", p]);
    assert_eq!(checks.as_array().unwrap().len(), 2);
    assert!(checks
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["identical"] == true));

    // Edit a reported invariant: the replay must notice.
    let mut rep: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let j3 = rep["schemes"][0]["result"]["invariants"]["j3"]
        .as_f64()
        .unwrap();
    rep["schemes"][0]["result"]["invariants"]["j3"] = Value::from(j3 + 1e-12);
    std::fs::write(&path, serde_json::to_string(&rep).unwrap()).unwrap();
    assert_eq!(code(&cvinv(&["replay", p])), 2);
}

#[test]
fn exit_codes() {
    // Unphysical input.
    assert_eq!(
        code(&cvinv(&["run", "--generator", "thermal", "--nu1", "0.5"])),
        1
    );
    assert_eq!(
        code(&cvinv(&[
            "validate",
            "--generator",
            "thermal",
            "--nu1",
            "0.9"
        ])),
        1
    );
    assert_eq!(
        code(&cvinv(&["validate", "--generator", "tmsv", "--r", "1"])),
        0
    );
    // Configuration errors.
    assert_eq!(code(&cvinv(&["run", "--nonsense"])), 1);
    assert_eq!(code(&cvinv(&["run"])), 1);
    assert_eq!(code(&cvinv(&["run", "--generator", "tmsv"])), 1);
    assert_eq!(
        code(&cvinv(&[
            "run",
            "--generator",
            "vacuum",
            "--detector",
            "ideal",
            "--eta",
            "0.5"
        ])),
        1
    );
    assert_eq!(
        code(&cvinv(&[
            "run",
            "--generator",
            "vacuum",
            "--detector",
            "nope"
        ])),
        1
    );
    assert_eq!(
        code(&cvinv(&["run", "--state", "/nonexistent/state.json"])),
        1
    );
    // One photocount per setting at eta = 0.5 cannot support a reconstruction.
    let starved = cvinv(&[
        "run",
        "--generator",
        "tmsv",
        "--r",
        "1",
        "--detector",
        "lossy-photocount",
        "--eta",
        "0.5",
        "--shots",
        "1",
    ]);
    assert_eq!(code(&starved), 2);
}

#[test]
fn state_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("state.json");
    std::fs::write(
        &path,
        r#"{"format": "quad", "entries": [[2,0,0,0],[0,2,0,0],[0,0,1,0],[0,0,0,1]]}"#,
    )
    .unwrap();
    let rep = ok_json(&["oracle", "--state", path.to_str().unwrap()]);
    assert_eq!(rep["oracle"]["invariants"]["i1"], 4.0);
    assert_eq!(rep["schemes"].as_array().unwrap().len(), 0);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        "seed = 3\nscheme = \"scheme2\"\n[state]\ngenerator = \"tmsv\"\nr = 0.5\n[detector]\nkind = \"ideal\"\n",
    )
    .unwrap();
    let c = cfg.to_str().unwrap();
    let from_file = ok_json(&["run", "--config", c]);
    assert_eq!(from_file["source"]["r"], 0.5);
    assert_eq!(from_file["seed"], 3);
    assert_eq!(from_file["schemes"][0]["result"]["scheme"], "scheme2");
    let overridden = ok_json(&["run", "--config", c, "--r", "0.3", "--scheme", "scheme1"]);
    assert_eq!(overridden["source"]["r"], 0.3);
    assert_eq!(overridden["schemes"][0]["result"]["scheme"], "scheme1");

    std::fs::write(&cfg, "[state]\ncolour = \"blue\"\n").unwrap();
    assert_eq!(code(&cvinv(&["run", "--config", c])), 1);
}

#[test]
fn sweep_csv_has_fixed_columns() {
    let out = cvinv(&[
        "sweep", "--param", "r", "--from", "0.1", "--to", "1.0", "--steps", "4", "--format", "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "param,J1_oracle,J2_oracle,J3_oracle,J4_oracle,J1_scheme,J2_scheme,J3_scheme,J4_scheme,E_f,E_f_bound,E_N,simon_margin,nu_minus"
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 4);
    for row in &rows {
        let r = row[0];
        assert!((row[11] - 2.0 * r * std::f64::consts::LOG2_E).abs() < 1e-9);
    }
}

#[test]
fn eta_sweep_requires_lossy_detector() {
    assert_eq!(
        code(&cvinv(&[
            "sweep",
            "--generator",
            "vacuum",
            "--param",
            "eta",
            "--values",
            "0.5,0.9"
        ])),
        1
    );
    let rows = ok_json(&[
        "sweep",
        "--generator",
        "tmsv",
        "--r",
        "0.4",
        "--param",
        "eta",
        "--values",
        "0.5,0.9",
        "--detector",
        "lossy-homodyne",
    ]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for row in rows {
        let rel =
            (row["J3_scheme"].as_f64().unwrap() / row["J3_oracle"].as_f64().unwrap() - 1.0).abs();
        assert!(rel < 1e-9);
    }
}

#[test]
fn csv_run_report() {
    let out = cvinv(&[
        "run",
        "--generator",
        "tmsv",
        "--r",
        "0.2",
        "--scheme",
        "scheme2",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("scheme,invariant,oracle,value,abs,rel\n"));
    assert_eq!(text.lines().count(), 5);
    assert!(Path::new(env!("CARGO_BIN_EXE_cvinv")).exists());
}
