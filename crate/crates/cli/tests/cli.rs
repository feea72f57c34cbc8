use std::path::Path;
use std::process::Command;

fn cqec() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cqec"));
    c.env_remove("CQEC_WORKERS");
    c
}

fn configs() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

#[test]
fn shipped_configs_parse_and_validate() {
    for entry in std::fs::read_dir(configs()).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let cfg = cqec_core_config(&text);
        assert!(cfg.is_ok(), "{}: {:?}", path.display(), cfg.err());
    }
}

fn cqec_core_config(text: &str) -> Result<(), String> {
    // parse via the binary's library so the test sees exactly what the CLI sees
    let cfg = cqec_core::harness::ExperimentConfig::from_toml(text).map_err(|e| e.to_string())?;
    cfg.resolve().map(|_| ()).map_err(|e| e.to_string())
}

#[test]
fn analytic_run_writes_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("a");
    let st = cqec()
        .args(["analytic", "--config"])
        .arg(configs().join("analytic_tc_sweep.toml"))
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(st.success());
    let csv = std::fs::read_to_string(out.join("results.csv")).unwrap();
    assert_eq!(csv.lines().count(), 18);
    assert!(csv.starts_with("sweep_parameter,sweep_value,eta,"));
    assert!(out.join("meta.json").exists());
}

#[test]
fn seed_and_workers_flags() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("sim.toml");
    std::fs::write(
        &cfg,
        "mode = \"simulate\"\n[physics]\ngamma_d_per_tcoll = 0.03\nt_op_tcoll = 6.0\n[protocol]\nt_c_tcoll = 2.0\n[run]\nn_trajectories = 80\n",
    )
    .unwrap();
    let run = |seed: &str, workers: Option<&str>, env: Option<&str>, dir: &str| {
        let mut c = cqec();
        c.args(["simulate", "--seed", seed, "--config"]).arg(&cfg).arg("--out").arg(tmp.path().join(dir));
        if let Some(w) = workers {
            c.args(["--workers", w]);
        }
        if let Some(e) = env {
            c.env("CQEC_WORKERS", e);
        }
        assert!(c.status().unwrap().success());
        std::fs::read(tmp.path().join(dir).join("results.csv")).unwrap()
    };
    let a = run("3", Some("1"), None, "a");
    let b = run("3", None, Some("3"), "b");
    let c = run("4", Some("2"), None, "c");
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn bad_config_exits_with_usage_code_and_lists_problems() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("bad.toml");
    std::fs::write(&cfg, "mode = \"simulate\"\n[physics]\neta = 2.0\n[protocol]\ntheta2 = 0.5\n").unwrap();
    let out = cqec().args(["simulate", "--config"]).arg(&cfg).arg("--out").arg(tmp.path().join("o")).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("eta") && err.contains("theta2") && err.contains("t_op"), "{err}");
}

#[test]
fn tables_without_config() {
    let tmp = tempfile::tempdir().unwrap();
    let st = cqec().args(["tables", "--out"]).arg(tmp.path()).status().unwrap();
    assert!(st.success());
    assert!(tmp.path().join("harmful_pairs.csv").exists());
}
