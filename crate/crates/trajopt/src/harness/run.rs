use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use std::time::Instant;
use thiserror::Error;

use super::config::{Method, RunConfig};
use crate::collocation::{CollocationGrid, GridError};
use crate::core::Trajectory;
use crate::ddp::{ddp_solve, DdpError};
use crate::gpm::{
    extract_trajectory, initial_guess, transcribe, GuessStrategy, TranscribeError,
};
use crate::models::{make_benchmark, BenchmarkProblem};
use crate::nlp::{solve as nlp_solve, EvalError, NlpStatus};

/// Number of uniform samples the pseudospectral solution is exported at.
pub const GPM_EXPORT_SAMPLES: usize = 200;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LogLevel {
    Quiet,
    Info,
    Debug,
}

impl LogLevel {
    /// Read TRAJOPT_LOG ∈ {quiet, info, debug}; anything else (or unset)
    /// means quiet.
    pub fn from_env() -> Self {
        match std::env::var("TRAJOPT_LOG").as_deref() {
            Ok("info") => Self::Info,
            Ok("debug") => Self::Debug,
            _ => Self::Quiet,
        }
    }
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("shooting solver failed: {0}")]
    Ddp(#[from] DdpError),
    #[error("collocation grid construction failed: {0}")]
    Grid(#[from] GridError),
    #[error("transcription failed: {0}")]
    Transcribe(#[from] TranscribeError),
    #[error("evaluation failed during the NLP solve: {0}")]
    Nlp(#[from] EvalError),
    #[error("{0}")]
    Data(String),
}

/// Summary of one solver run; everything here is also present in the
/// exported files.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub config: RunConfig,
    pub converged: bool,
    /// Solver-specific status: DDP "converged"/"max_iterations";
    /// GPM "optimal"/"max_iterations"/"stalled".
    pub status: String,
    pub final_cost: f64,
    /// Wall clock around the solve call only, excluding I/O.
    pub runtime_seconds: f64,
    /// DDP sweeps or NLP outer iterations.
    pub iterations: usize,
    /// Max equality-constraint violation (GPM only).
    pub max_violation: Option<f64>,
    /// Predicted cost change of the last backward pass (DDP only).
    pub delta_v: Option<f64>,
    pub final_state_error: Vec<f64>,
    pub max_abs_control: f64,
    pub trajectory_csv: Option<String>,
    pub cost_history_csv: Option<String>,
}

/// A completed run: the report plus the artifacts it summarizes.
pub struct RunOutcome {
    pub report: RunReport,
    pub trajectory: Trajectory,
    pub cost_history: Vec<f64>,
}

fn apply_weights(bench: &mut BenchmarkProblem, config: &RunConfig) -> Result<(), HarnessError> {
    let n = bench.plant.state_dim();
    let m = bench.plant.control_dim();
    let w = &config.weights;
    if w.q.len() != n || w.wf.len() != n || w.r.len() != m {
        return Err(HarnessError::Config(format!(
            "weight diagonals (q: {}, r: {}, wf: {}) do not match problem dims (n={n}, m={m})",
            w.q.len(),
            w.r.len(),
            w.wf.len()
        )));
    }
    bench.cost.state_weight = DMatrix::from_diagonal(&DVector::from_row_slice(&w.q));
    bench.cost.control_weight = DMatrix::from_diagonal(&DVector::from_row_slice(&w.r));
    bench.cost.terminal_weight = DMatrix::from_diagonal(&DVector::from_row_slice(&w.wf));
    Ok(())
}

/// Run the configured solver on the configured benchmark.
pub fn run_benchmark(config: &RunConfig, log: LogLevel) -> Result<RunOutcome, HarnessError> {
    let mut bench = make_benchmark(config.problem);
    apply_weights(&mut bench, config)?;
    if config.dt <= 0.0 {
        return Err(HarnessError::Config(format!("dt must be positive, got {}", config.dt)));
    }
    if config.collocation_points == 0 {
        return Err(HarnessError::Config("collocation_points must be at least 1".into()));
    }
    match config.method {
        Method::Ddp => run_ddp(&bench, config, log),
        Method::Gpm => run_gpm(&bench, config, log),
    }
}

fn run_ddp(
    bench: &BenchmarkProblem,
    config: &RunConfig,
    log: LogLevel,
) -> Result<RunOutcome, HarnessError> {
    let num_steps = (bench.boundary.horizon() / config.dt).round() as usize;
    if num_steps == 0 {
        return Err(HarnessError::Config(format!(
            "dt = {} leaves no steps over the {}-second horizon",
            config.dt,
            bench.boundary.horizon()
        )));
    }
    let mut opts = config.ddp_options(num_steps);
    opts.warm_start = Some(vec![bench.trim_control.clone(); num_steps]);

    let start = Instant::now();
    let report = ddp_solve(bench.plant.as_ref(), &bench.cost, &bench.boundary, &opts)?;
    let runtime_seconds = start.elapsed().as_secs_f64();

    if log >= LogLevel::Info {
        for (iter, cost) in report.cost_history.iter().enumerate() {
            eprintln!("iter {iter:4}  cost {cost:+.6e}");
        }
    }
    if log >= LogLevel::Debug {
        // Every line-search trial, including rejected cost spikes.
        for t in &report.trials {
            eprintln!(
                "trial iter {:4}  alpha {:8.5}  cost {:+.6e}  {}",
                t.iteration,
                t.alpha,
                t.cost,
                if t.accepted { "accepted" } else { "rejected" }
            );
        }
    }

    let max_abs_control = max_abs_control(&report.trajectory);
    Ok(RunOutcome {
        report: RunReport {
            schema_version: REPORT_SCHEMA_VERSION,
            config: config.clone(),
            converged: report.converged,
            status: if report.converged {
                "converged".into()
            } else {
                "max_iterations".into()
            },
            final_cost: *report.cost_history.last().expect("history is never empty"),
            runtime_seconds,
            iterations: report.iterations,
            max_violation: None,
            delta_v: Some(report.delta_v),
            final_state_error: report.final_state_error.iter().copied().collect(),
            max_abs_control,
            trajectory_csv: None,
            cost_history_csv: None,
        },
        trajectory: report.trajectory,
        cost_history: report.cost_history,
    })
}

fn run_gpm(
    bench: &BenchmarkProblem,
    config: &RunConfig,
    log: LogLevel,
) -> Result<RunOutcome, HarnessError> {
    let grid = CollocationGrid::new(config.collocation_points)?;
    let nlp = transcribe(bench.plant.as_ref(), &bench.cost, &bench.boundary, &grid)?;
    let layout = nlp.layout();

    let mut z0 = initial_guess(
        bench.plant.as_ref(),
        &bench.boundary,
        &grid,
        GuessStrategy::Linear,
    );
    for j in 0..layout.k {
        z0.rows_mut(layout.control_offset(j), layout.m)
            .copy_from(&bench.trim_control);
    }

    let opts = config.nlp_options(log >= LogLevel::Info);
    let start = Instant::now();
    let sol = nlp_solve(&nlp, &z0, &opts)?;
    let runtime_seconds = start.elapsed().as_secs_f64();

    let trajectory =
        extract_trajectory(&sol.x, &grid, &bench.boundary, &layout, GPM_EXPORT_SAMPLES);
    let final_state_error: Vec<f64> = (trajectory.final_state() - &bench.boundary.x_target)
        .iter()
        .copied()
        .collect();
    // A feasible solution that ran out of refinement budget still counts
    // as a usable result; optimality is reported separately via status.
    let converged = sol.status == NlpStatus::Optimal || sol.max_violation < opts.constraint_tol;
    let status = match sol.status {
        NlpStatus::Optimal => "optimal",
        NlpStatus::MaxIter => "max_iterations",
        NlpStatus::Stalled => "stalled",
    };

    let max_abs_control = max_abs_control(&trajectory);
    Ok(RunOutcome {
        report: RunReport {
            schema_version: REPORT_SCHEMA_VERSION,
            config: config.clone(),
            converged,
            status: status.into(),
            final_cost: sol.objective,
            runtime_seconds,
            iterations: sol.outer_iterations,
            max_violation: Some(sol.max_violation),
            delta_v: None,
            final_state_error,
            max_abs_control,
            trajectory_csv: None,
            cost_history_csv: None,
        },
        trajectory,
        cost_history: sol.objective_history,
    })
}

fn max_abs_control(traj: &Trajectory) -> f64 {
    traj.controls()
        .iter()
        .map(|u| u.amax())
        .fold(0.0, f64::max)
}
