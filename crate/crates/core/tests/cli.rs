//! End-to-end tests of the `apcw` binary: exit codes, stderr error JSON,
//! --print-config, and the APCW_OUT override.

use std::path::Path;
use std::process::Command;

fn apcw() -> Command {
    Command::new(env!("CARGO_BIN_EXE_apcw"))
}

fn write_reference_config(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("scenario.json");
    std::fs::write(&path, apcw::config::reference_config_json()).unwrap();
    path
}

#[test]
fn report_succeeds_with_reference_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_reference_config(dir.path());
    let out = apcw()
        .args(["report", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("sqrt(S_FF)"));
    assert!(dir.path().join("out/report.json").exists());
    assert!(dir.path().join("out/report.txt").exists());
}

#[test]
fn missing_and_empty_configs_exit_2_with_error_json() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "").unwrap();

    for cfg in [dir.path().join("nope.json"), empty] {
        let out = apcw()
            .args(["modes", "--config"])
            .arg(&cfg)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(2), "config: {}", cfg.display());
        let stderr = String::from_utf8_lossy(&out.stderr);
        let parsed: serde_json::Value =
            serde_json::from_str(stderr.trim()).expect("stderr must be machine-parseable JSON");
        assert!(parsed["error"]["kind"].is_string());
        assert!(parsed["error"]["message"].is_string());
    }
}

#[test]
fn unknown_key_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("typo.json");
    let mut doc: serde_json::Value =
        serde_json::from_str(apcw::config::reference_config_json()).unwrap();
    doc["beem"] = serde_json::json!({});
    std::fs::write(&cfg, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = apcw().args(["report", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("validation"), "stderr: {stderr}");
}

#[test]
fn print_config_echoes_resolved_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_reference_config(dir.path());
    let out = apcw()
        .args(["modes", "--print-config", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // Defaults are filled in and SI-resolved.
    assert_eq!(parsed["beam"]["boundary"], "hinged-hinged");
    assert!(parsed["spectrum"]["sample_rate"].as_f64().unwrap() > 1e8);
    assert!((parsed["beam"]["length"].as_f64().unwrap() - 107e-6).abs() < 1e-12);
}

#[test]
fn apcw_out_env_sets_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_reference_config(dir.path());
    let envdir = dir.path().join("from-env");
    let out = apcw()
        .args(["report", "--config"])
        .arg(&config)
        .env("APCW_OUT", &envdir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(envdir.join("report.json").exists());
}

#[test]
fn modes_flags_drive_the_fem_comparison() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_reference_config(dir.path());
    let out = apcw()
        .args(["modes", "--boundary", "hinged", "--elements", "200", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(dir.path().join("m"))
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let table = std::fs::read_to_string(dir.path().join("m/comparison.csv")).unwrap();
    for line in table.lines().skip(1) {
        let rel: f64 = line.split(',').nth(3).unwrap().parse().unwrap();
        assert!(rel < 1e-3, "FEM-vs-analytic column {rel} exceeds 0.1%");
    }
}

#[test]
fn coupling_command_writes_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_reference_config(dir.path());
    let out = apcw()
        .args(["coupling", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(dir.path().join("cpl"))
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let sweep = std::fs::read_to_string(dir.path().join("cpl/coupling_sweep.csv")).unwrap();
    assert!(sweep.starts_with("nu_Hz,"));
    assert!(dir.path().join("cpl/ladder.csv").exists());
}

#[test]
fn spectrum_binary_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    // Short-duration variant keeps the test quick.
    let mut doc: serde_json::Value =
        serde_json::from_str(apcw::config::reference_config_json()).unwrap();
    doc["spectrum"]["duration"] = serde_json::json!("1 ms");
    let config = dir.path().join("short.json");
    std::fs::write(&config, serde_json::to_string(&doc).unwrap()).unwrap();

    let run = |out: &Path| {
        let r = apcw()
            .args(["spectrum", "--seed", "9", "--config"])
            .arg(&config)
            .arg("--out")
            .arg(out)
            .output()
            .unwrap();
        assert!(r.status.success(), "stderr: {}", String::from_utf8_lossy(&r.stderr));
    };
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    run(&a);
    run(&b);
    for file in ["spectrum.csv", "trace.csv", "peaks.json"] {
        assert_eq!(
            std::fs::read(a.join(file)).unwrap(),
            std::fs::read(b.join(file)).unwrap(),
            "{file} differs"
        );
    }

    // A different seed must change the trace.
    let c = dir.path().join("c");
    let r = apcw()
        .args(["spectrum", "--seed", "10", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&c)
        .output()
        .unwrap();
    assert!(r.status.success());
    assert_ne!(
        std::fs::read(a.join("trace.csv")).unwrap(),
        std::fs::read(c.join("trace.csv")).unwrap()
    );
}
