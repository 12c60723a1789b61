use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use trajopt::harness::{
    cmd_compare, cmd_plotdata, cmd_solve, LogLevel, Method, RunConfig,
};
use trajopt::models::ProblemId;

/// Trajectory-optimization benchmark harness: shooting (ddp) and
/// pseudospectral collocation (gpm) solvers on cart pole, double cart
/// pole and quadrotor problems.
#[derive(Parser)]
#[command(name = "trajopt", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one solver and export trajectory, cost history and report.
    Solve {
        /// Config file (JSON); see `trajopt init`.
        #[arg(long)]
        config: PathBuf,
        /// Override the config's method.
        #[arg(long)]
        method: Option<Method>,
        /// Override the config's problem.
        #[arg(long)]
        problem: Option<ProblemId>,
        /// Override the output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run two configs on the same problem and compare side by side.
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Explode a run directory into per-channel plot series files.
    Plotdata {
        /// Directory containing trajectory.csv (and cost_history.csv).
        dir: PathBuf,
    },
    /// Print a default config for a problem.
    Init {
        #[arg(long)]
        problem: ProblemId,
        /// Method the defaults are tuned for.
        #[arg(long, default_value = "ddp")]
        method: Method,
    },
}

fn load_config(path: &PathBuf) -> Result<RunConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))
}

fn main() -> ExitCode {
    // clap's default error exit code is 2, which is reserved here for
    // "ran but did not converge"; usage errors must exit with 1.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let log = LogLevel::from_env();
    match run(cli, log) {
        Ok(converged) => {
            if converged {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli, log: LogLevel) -> Result<bool, String> {
    match cli.command {
        Command::Solve { config, method, problem, out } => {
            let mut config = load_config(&config)?;
            if let Some(method) = method {
                config.method = method;
            }
            if let Some(problem) = problem {
                if problem != config.problem {
                    // Weight dimensions are problem-specific; switching
                    // problems means switching to that problem's defaults.
                    let out_dir = config.out_dir.clone();
                    config = RunConfig::defaults(problem, config.method);
                    config.out_dir = out_dir;
                }
            }
            if let Some(out) = out {
                config.out_dir = Some(out.display().to_string());
            }
            let report = cmd_solve(&config, log).map_err(|e| e.to_string())?;
            println!(
                "{} {} cost {:.6} in {} iterations ({:.3} s): {}",
                report.config.problem,
                report.config.method,
                report.final_cost,
                report.iterations,
                report.runtime_seconds,
                report.status
            );
            Ok(report.converged)
        }
        Command::Compare { a, b } => {
            let config_a = load_config(&a)?;
            let config_b = load_config(&b)?;
            let (report, table) =
                cmd_compare(&config_a, &config_b, log).map_err(|e| e.to_string())?;
            print!("{table}");
            Ok(report.a.converged && report.b.converged)
        }
        Command::Plotdata { dir } => {
            let files = cmd_plotdata(&dir).map_err(|e| e.to_string())?;
            for f in files {
                println!("{}", f.display());
            }
            Ok(true)
        }
        Command::Init { problem, method } => {
            let config = RunConfig::defaults(problem, method);
            let text = serde_json::to_string_pretty(&config).expect("config serializes");
            println!("{text}");
            Ok(true)
        }
    }
}
