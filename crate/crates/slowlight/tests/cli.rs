//! End-to-end checks of the command-line interface through the built binary.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_slowlight")
}

fn run(args: &[&str], envs: &[(&str, &Path)]) -> Output {
    let mut cmd = Command::new(bin());
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

#[test]
fn params_runs_with_defaults_and_prints_regime() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("params.dat");
    let o = run(&["params", "--out", out.to_str().unwrap()], &[]);
    assert!(
        o.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("saturation"));
    assert!(stdout.contains("wrote "));
    assert!(out.exists());
}

#[test]
fn unknown_config_key_fails_and_names_it() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.toml");
    std::fs::write(&config, "[medium]\ngama_ab = 1.0\n").unwrap();
    let o = run(&["params", "--config", config.to_str().unwrap()], &[]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("gama_ab"));
}

#[test]
fn regime_violation_fails_without_force() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("wide.toml");
    std::fs::write(&config, "[run]\nbandwidth = 10.0\n").unwrap();
    let out = dir.path().join("params.dat");
    let o = run(
        &[
            "params",
            "--config",
            config.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ],
        &[],
    );
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("--force"));

    let o = run(
        &[
            "params",
            "--config",
            config.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--force",
        ],
        &[],
    );
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("# forced = true"));
}

#[test]
fn conflicting_subcommand_and_config_experiment_fail() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("rev.toml");
    std::fs::write(
        &config,
        "[run]\nexperiment = \"revival\"\n[revival]\nn_bar = 1.0\n",
    )
    .unwrap();
    let o = run(&["cat", "--config", config.to_str().unwrap()], &[]);
    assert!(!o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(
        err.contains("revival") && err.contains("cat"),
        "stderr: {err}"
    );
}

#[test]
fn revival_without_section_is_rejected() {
    let o = run(&["revival"], &[]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("n_bar"));
}

#[test]
fn out_dir_env_sets_default_location() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["params"], &[("SLOWLIGHT_OUT_DIR", dir.path())]);
    assert!(
        o.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(dir.path().join("params.dat").exists());
}

#[test]
fn oracle_flag_emits_comparison_table() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("rev.toml");
    std::fs::write(
        &config,
        "[run]\nexperiment = \"revival\"\n[revival]\nn_bar = 2.25\npoints = 21\n",
    )
    .unwrap();
    let out = dir.path().join("revival.dat");
    let o = run(
        &[
            "revival",
            "--config",
            config.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--oracle",
        ],
        &[],
    );
    assert!(
        o.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    let oracle_path = out.with_extension("oracle.dat");
    assert!(oracle_path.exists());

    // closed form and Fock oracle agree pointwise
    let main = slowlight::Table::read_from_path(&out).unwrap();
    let oracle = slowlight::Table::read_from_path(&oracle_path).unwrap();
    for (a, b) in main.rows.iter().zip(&oracle.rows) {
        assert!((a[1] - b[1]).abs() < 1e-8, "modulus {} vs {}", a[1], b[1]);
    }
}

#[test]
fn points_and_label_flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("rev.toml");
    std::fs::write(
        &config,
        "[run]\nexperiment = \"revival\"\n[revival]\nn_bar = 1.0\npoints = 100\n",
    )
    .unwrap();
    let out = dir.path().join("revival.dat");
    let o = run(
        &[
            "revival",
            "--config",
            config.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--points",
            "11",
            "--label",
            "case-7",
        ],
        &[],
    );
    assert!(o.status.success());
    let table = slowlight::Table::read_from_path(&out).unwrap();
    assert_eq!(table.rows.len(), 11);
    assert_eq!(table.meta.get("label").map(String::as_str), Some("case-7"));
}

#[test]
fn propagate_emits_envelope_table() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("prop.toml");
    std::fs::write(
        &config,
        "[run]\nexperiment = \"propagate\"\n[grid]\nn_points = 256\n[propagate]\nsteps = 16\n",
    )
    .unwrap();
    let out = dir.path().join("prop.dat");
    let o = run(
        &[
            "propagate",
            "--config",
            config.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--steps",
            "8",
        ],
        &[],
    );
    assert!(
        o.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    let table = slowlight::Table::read_from_path(&out).unwrap();
    assert_eq!(table.rows.len(), 256);
    assert_eq!(table.columns, vec!["t", "e1_re", "e1_im", "e2_re", "e2_im"]);
    assert_eq!(
        table.meta.get("propagate.steps").map(String::as_str),
        Some("8")
    );
}
