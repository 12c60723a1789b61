use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use super::config::RunConfig;
use super::io::{cost_history_csv, read_csv, trajectory_csv};
use super::run::{run_benchmark, HarnessError, LogLevel, RunReport, REPORT_SCHEMA_VERSION};

/// Run one solve and write trajectory.csv, cost_history.csv and
/// report.json into the output directory (default
/// `runs/<problem>_<method>`).
pub fn cmd_solve(config: &RunConfig, log: LogLevel) -> Result<RunReport, HarnessError> {
    let out_dir = config
        .out_dir
        .clone()
        .unwrap_or_else(|| format!("runs/{}_{}", config.problem, config.method));
    let out = Path::new(&out_dir);
    std::fs::create_dir_all(out)?;

    let outcome = run_benchmark(config, log)?;
    let mut report = outcome.report;

    let traj_path = out.join("trajectory.csv");
    let cost_path = out.join("cost_history.csv");
    std::fs::write(&traj_path, trajectory_csv(&outcome.trajectory))?;
    std::fs::write(&cost_path, cost_history_csv(&outcome.cost_history))?;
    report.trajectory_csv = Some(traj_path.display().to_string());
    report.cost_history_csv = Some(cost_path.display().to_string());

    let report_json = serde_json::to_string_pretty(&report).expect("report serializes");
    std::fs::write(out.join("report.json"), report_json + "\n")?;
    Ok(report)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CompareReport {
    pub schema_version: u32,
    pub problem: String,
    pub a: RunReport,
    pub b: RunReport,
    /// Discrete (DDP) and quadrature (GPM) costs are only comparable for
    /// small discretization steps; recorded verbatim, not ranked.
    pub cost_comparability_note: String,
}

/// Run both configs on the same problem and produce a side-by-side
/// report plus a human-readable table.
pub fn cmd_compare(
    config_a: &RunConfig,
    config_b: &RunConfig,
    log: LogLevel,
) -> Result<(CompareReport, String), HarnessError> {
    if config_a.problem != config_b.problem {
        return Err(HarnessError::Config(format!(
            "compare needs matching problems, got {} and {}",
            config_a.problem, config_b.problem
        )));
    }
    let a = cmd_solve(config_a, log)?;
    let b = cmd_solve(config_b, log)?;

    let table = comparison_table(&a, &b);
    let report = CompareReport {
        schema_version: REPORT_SCHEMA_VERSION,
        problem: config_a.problem.to_string(),
        a,
        b,
        cost_comparability_note:
            "discrete and quadrature cost integrals are comparable only for small steps".into(),
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    let out_dir = config_a
        .out_dir
        .clone()
        .unwrap_or_else(|| format!("runs/{}_{}", config_a.problem, config_a.method));
    std::fs::write(Path::new(&out_dir).join("compare.json"), json + "\n")?;
    Ok((report, table))
}

fn comparison_table(a: &RunReport, b: &RunReport) -> String {
    let label_a = format!("{}", a.config.method);
    let label_b = format!("{}", b.config.method);
    let err_norm = |r: &RunReport| {
        r.final_state_error
            .iter()
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt()
    };
    let mut rows = vec![
        ("final cost", format!("{:.6}", a.final_cost), format!("{:.6}", b.final_cost)),
        (
            "runtime [s]",
            format!("{:.3}", a.runtime_seconds),
            format!("{:.3}", b.runtime_seconds),
        ),
        ("iterations", a.iterations.to_string(), b.iterations.to_string()),
        ("status", a.status.clone(), b.status.clone()),
        (
            "max |u|",
            format!("{:.4}", a.max_abs_control),
            format!("{:.4}", b.max_abs_control),
        ),
        (
            "|final state error|",
            format!("{:.3e}", err_norm(a)),
            format!("{:.3e}", err_norm(b)),
        ),
    ];
    if let (Some(va), Some(vb)) = (a.max_violation, b.max_violation) {
        rows.push(("max violation", format!("{va:.3e}"), format!("{vb:.3e}")));
    }
    let mut out = format!("{:<22} {:>16} {:>16}\n", "metric", label_a, label_b);
    for (name, va, vb) in rows {
        out.push_str(&format!("{name:<22} {va:>16} {vb:>16}\n"));
    }
    out.push_str("note: discrete vs. quadrature costs are comparable only for small steps\n");
    out
}

/// Split a run directory's trajectory/cost CSVs into one series file per
/// state channel, per control channel, and the cost history.
pub fn cmd_plotdata(dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    let traj_path = dir.join("trajectory.csv");
    if !traj_path.exists() {
        return Err(HarnessError::Data(format!(
            "{}: no trajectory.csv found",
            dir.display()
        )));
    }
    let table = read_csv(&traj_path)?;
    let mut written = Vec::new();
    for (col, name) in table.columns.iter().enumerate().skip(1) {
        let mut out = String::from("t,value\n");
        for row in &table.rows {
            if row[col].is_nan() {
                continue; // terminal row has no control sample
            }
            out.push_str(&format!("{},{}\n", row[0], row[col]));
        }
        let path = dir.join(format!("series_{name}.csv"));
        std::fs::write(&path, out)?;
        written.push(path);
    }
    let cost_path = dir.join("cost_history.csv");
    if cost_path.exists() {
        let table = read_csv(&cost_path)?;
        let mut out = String::from("iteration,cost\n");
        for row in &table.rows {
            out.push_str(&format!("{},{}\n", row[0], row[1]));
        }
        let path = dir.join("series_cost.csv");
        std::fs::write(&path, out)?;
        written.push(path);
    }
    Ok(written)
}
