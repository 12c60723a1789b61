//! Black-box tests of the `trajopt` binary: exit codes, file outputs and
//! reproducibility.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use trajopt::harness::{Method, RunConfig, RunReport};
use trajopt::models::ProblemId;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_trajopt"))
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("trajopt_cli_{tag}_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_config(dir: &Path, name: &str, config: &RunConfig) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(config).unwrap()).unwrap();
    path
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process exited normally")
}

#[test]
fn help_exits_zero() {
    let out = bin().arg("--help").output().unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn init_emits_a_parseable_config() {
    let out = bin().args(["init", "--problem", "cartpole"]).output().unwrap();
    assert_eq!(code(&out), 0);
    let config: RunConfig = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(config.problem, ProblemId::Cartpole);
    assert_eq!(config.method, Method::Ddp);
}

#[test]
fn usage_errors_exit_one() {
    // Unknown problem name.
    let out = bin().args(["init", "--problem", "pendulum"]).output().unwrap();
    assert_eq!(code(&out), 1);

    // Unknown subcommand.
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(code(&out), 1);

    // Missing config file.
    let out = bin()
        .args(["solve", "--config", "/nonexistent/config.json"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
}

#[test]
fn unknown_config_keys_exit_one() {
    let dir = temp_dir("unknown_key");
    let mut value =
        serde_json::to_value(RunConfig::defaults(ProblemId::Cartpole, Method::Ddp)).unwrap();
    value["surprise"] = serde_json::json!(1);
    let path = dir.join("config.json");
    std::fs::write(&path, serde_json::to_string(&value).unwrap()).unwrap();

    let out = bin().args(["solve", "--config"]).arg(&path).output().unwrap();
    assert_eq!(code(&out), 1);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn solve_writes_outputs_and_reruns_byte_identically() {
    let dir = temp_dir("solve");
    let config = RunConfig::defaults(ProblemId::Cartpole, Method::Ddp);
    let config_path = write_config(&dir, "config.json", &config);

    let run_a = dir.join("run_a");
    let out = bin()
        .args(["solve", "--config"])
        .arg(&config_path)
        .arg("--out")
        .arg(&run_a)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));

    // Exported files exist; the trajectory header matches the contract.
    let traj = std::fs::read_to_string(run_a.join("trajectory.csv")).unwrap();
    assert!(traj.starts_with("t,x_0,x_1,x_2,x_3,u_0\n"), "header: {}", &traj[..40]);
    assert!(run_a.join("cost_history.csv").exists());
    let report: RunReport =
        serde_json::from_str(&std::fs::read_to_string(run_a.join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report.schema_version, 1);
    assert!(report.converged);
    assert_eq!(report.config.problem, ProblemId::Cartpole);

    // plotdata explodes the run into per-channel series files.
    let out = bin().arg("plotdata").arg(&run_a).output().unwrap();
    assert_eq!(code(&out), 0);
    for name in ["x_0", "x_1", "x_2", "x_3", "u_0", "cost"] {
        assert!(
            run_a.join(format!("series_{name}.csv")).exists(),
            "missing series_{name}.csv"
        );
    }

    // Same config, second run: CSV outputs are byte-identical.
    let run_b = dir.join("run_b");
    let out = bin()
        .args(["solve", "--config"])
        .arg(&config_path)
        .arg("--out")
        .arg(&run_b)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    for name in ["trajectory.csv", "cost_history.csv"] {
        let a = std::fs::read(run_a.join(name)).unwrap();
        let b = std::fs::read(run_b.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
    }

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn unconverged_solve_exits_two() {
    let dir = temp_dir("unconverged");
    let mut config = RunConfig::defaults(ProblemId::Cartpole, Method::Ddp);
    config.ddp.max_iters = 3;
    config.ddp.tol = 1e-16;
    let config_path = write_config(&dir, "config.json", &config);

    let out = bin()
        .args(["solve", "--config"])
        .arg(&config_path)
        .arg("--out")
        .arg(dir.join("run"))
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn compare_runs_both_configs() {
    let dir = temp_dir("compare");
    let mut config_a = RunConfig::defaults(ProblemId::Cartpole, Method::Ddp);
    config_a.out_dir = Some(dir.join("a").display().to_string());
    let mut config_b = config_a.clone();
    config_b.dt = 0.02;
    config_b.out_dir = Some(dir.join("b").display().to_string());
    let path_a = write_config(&dir, "a.json", &config_a);
    let path_b = write_config(&dir, "b.json", &config_b);

    let out = bin()
        .args(["compare", "--a"])
        .arg(&path_a)
        .arg("--b")
        .arg(&path_b)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let table = String::from_utf8_lossy(&out.stdout);
    assert!(table.contains("final cost"), "table: {table}");
    assert!(dir.join("a").join("compare.json").exists());

    // Mismatched problems are a usage error.
    let mut config_c = RunConfig::defaults(ProblemId::Quadrotor, Method::Ddp);
    config_c.out_dir = Some(dir.join("c").display().to_string());
    let path_c = write_config(&dir, "c.json", &config_c);
    let out = bin()
        .args(["compare", "--a"])
        .arg(&path_a)
        .arg("--b")
        .arg(&path_c)
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn problem_flag_overrides_the_config() {
    let dir = temp_dir("override");
    let config = RunConfig::defaults(ProblemId::Quadrotor, Method::Ddp);
    let config_path = write_config(&dir, "config.json", &config);

    let run = dir.join("run");
    let out = bin()
        .args(["solve", "--config"])
        .arg(&config_path)
        .args(["--problem", "cartpole", "--out"])
        .arg(&run)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: RunReport =
        serde_json::from_str(&std::fs::read_to_string(run.join("report.json")).unwrap()).unwrap();
    assert_eq!(report.config.problem, ProblemId::Cartpole);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn log_env_var_controls_stderr() {
    let dir = temp_dir("log");
    let config = RunConfig::defaults(ProblemId::Cartpole, Method::Ddp);
    let config_path = write_config(&dir, "config.json", &config);

    // Default (quiet): no per-iteration output.
    let out = bin()
        .args(["solve", "--config"])
        .arg(&config_path)
        .arg("--out")
        .arg(dir.join("quiet"))
        .output()
        .unwrap();
    assert!(!String::from_utf8_lossy(&out.stderr).contains("iter"));

    // info: one line per accepted iteration.
    let out = bin()
        .args(["solve", "--config"])
        .arg(&config_path)
        .arg("--out")
        .arg(dir.join("info"))
        .env("TRAJOPT_LOG", "info")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&out.stderr).contains("iter"));

    // debug: every line-search trial, including rejected ones.
    let out = bin()
        .args(["solve", "--config"])
        .arg(&config_path)
        .arg("--out")
        .arg(dir.join("debug"))
        .env("TRAJOPT_LOG", "debug")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&out.stderr).contains("trial"));

    std::fs::remove_dir_all(&dir).ok();
}
