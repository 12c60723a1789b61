use nalgebra::DVector;
use std::time::Instant;
use thiserror::Error;

use super::backward::{backward_pass, BackwardError, BackwardPass};
use super::forward::{forward_pass, trajectory_cost, ForwardError};
use crate::core::{rollout, BoundarySpec, Cost, Integrator, Plant, RolloutError, Trajectory};

#[derive(Debug, Clone)]
pub struct DdpOptions {
    /// Number of discrete steps N over the horizon.
    pub num_steps: usize,
    pub max_iters: usize,
    /// Relative cost-decrease tolerance.
    pub tol: f64,
    pub mu_init: f64,
    pub mu_max: f64,
    /// Line-search scales 2⁰, 2⁻¹, …, 2^−alpha_halvings.
    pub alpha_halvings: u32,
    /// Optional warm-start control sequence; zero controls otherwise.
    pub warm_start: Option<Vec<DVector<f64>>>,
}

impl Default for DdpOptions {
    fn default() -> Self {
        Self {
            num_steps: 200,
            max_iters: 500,
            tol: 1e-8,
            mu_init: 1e-6,
            mu_max: 1e6,
            alpha_halvings: 10,
            warm_start: None,
        }
    }
}

/// One line-search trial; rejected trials record cost spikes the
/// accepted sequence filters out.
#[derive(Debug, Clone)]
pub struct TrialRecord {
    pub iteration: usize,
    pub alpha: f64,
    pub cost: f64,
    pub accepted: bool,
}

#[derive(Debug)]
pub struct DdpReport {
    /// Accepted cost per iteration, starting with the initial rollout.
    pub cost_history: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub runtime_seconds: f64,
    pub trajectory: Trajectory,
    pub gains: BackwardPass,
    pub regularization_events: usize,
    /// Predicted cost change of the last backward pass.
    pub delta_v: f64,
    pub trials: Vec<TrialRecord>,
    pub final_state_error: DVector<f64>,
}

#[derive(Debug, Error)]
pub enum DdpError {
    #[error("initial rollout failed: {0}")]
    InitialRollout(#[from] RolloutError),
    #[error("H remained indefinite at mu_max = {mu_max} (step {step})")]
    PersistentIndefiniteness { mu_max: f64, step: usize },
    #[error("backward pass failed: {0}")]
    Backward(BackwardError),
    #[error("warm start has {got} controls, expected {expected}")]
    WarmStartLength { got: usize, expected: usize },
}

/// Iterate backward pass and line-searched forward pass until the
/// predicted improvement or the realized relative decrease drops below
/// tolerance. The accepted cost sequence never increases.
pub fn ddp_solve(
    plant: &dyn Plant,
    cost: &dyn Cost,
    boundary: &BoundarySpec,
    opts: &DdpOptions,
) -> Result<DdpReport, DdpError> {
    let start = Instant::now();
    let dt = boundary.horizon() / opts.num_steps as f64;
    let m = plant.control_dim();

    let controls = match &opts.warm_start {
        Some(ws) => {
            if ws.len() != opts.num_steps {
                return Err(DdpError::WarmStartLength {
                    got: ws.len(),
                    expected: opts.num_steps,
                });
            }
            ws.clone()
        }
        None => vec![DVector::zeros(m); opts.num_steps],
    };
    let mut nominal = rollout(
        plant,
        &boundary.x0,
        &controls,
        boundary.t0,
        dt,
        Integrator::Euler,
    )?;
    let mut current_cost = trajectory_cost(cost, &nominal);

    let mut cost_history = vec![current_cost];
    let mut trials = Vec::new();
    let mut mu = 0.0f64;
    let mut regularization_events = 0;
    let mut converged = false;
    let mut delta_v = f64::INFINITY;
    let mut small_decrease_streak = 0usize;
    let mut iterations = 0;
    let mut last_pass: Option<BackwardPass> = None;

    'outer: for iter in 0..opts.max_iters {
        iterations = iter + 1;

        // Backward pass, raising mu until H is positive definite.
        let pass = loop {
            match backward_pass(plant, cost, &nominal, mu) {
                Ok(pass) => break pass,
                Err(BackwardError::RegularizationNeeded { step }) => {
                    regularization_events += 1;
                    mu = if mu == 0.0 { opts.mu_init } else { mu * 2.0 };
                    if mu > opts.mu_max {
                        return Err(DdpError::PersistentIndefiniteness {
                            mu_max: opts.mu_max,
                            step,
                        });
                    }
                }
                Err(err) => return Err(DdpError::Backward(err)),
            }
        };
        delta_v = pass.dv1 + pass.dv2;
        last_pass = Some(pass);
        let pass = last_pass.as_ref().expect("just stored");

        if delta_v.abs() < opts.tol * current_cost.abs().max(1.0) {
            converged = true;
            break;
        }

        // Line search: accept the first cost-decreasing alpha.
        let mut accepted = false;
        for halving in 0..=opts.alpha_halvings {
            let alpha = 0.5f64.powi(halving as i32);
            let bounds = boundary.control_bounds.as_deref();
            match forward_pass(plant, cost, &nominal, &pass.gains, alpha, bounds) {
                Ok((traj, trial_cost)) => {
                    let accept = trial_cost < current_cost;
                    trials.push(TrialRecord {
                        iteration: iter,
                        alpha,
                        cost: trial_cost,
                        accepted: accept,
                    });
                    if accept {
                        let decrease = (current_cost - trial_cost) / current_cost.abs().max(1.0);
                        nominal = traj;
                        current_cost = trial_cost;
                        cost_history.push(current_cost);
                        mu = (mu * 0.5).max(0.0);
                        if mu < 1e-12 {
                            mu = 0.0;
                        }
                        accepted = true;
                        if decrease < opts.tol {
                            small_decrease_streak += 1;
                            if small_decrease_streak >= 3 {
                                converged = true;
                                break 'outer;
                            }
                        } else {
                            small_decrease_streak = 0;
                        }
                        break;
                    }
                }
                Err(ForwardError::Diverged { .. }) | Err(ForwardError::Plant { .. }) => {
                    trials.push(TrialRecord {
                        iteration: iter,
                        alpha,
                        cost: f64::INFINITY,
                        accepted: false,
                    });
                }
                Err(ForwardError::Trajectory(_)) => unreachable!("nominal grid is reused"),
            }
        }

        if !accepted {
            // No descent at any alpha: raise mu and retry, give up at mu_max.
            mu = if mu == 0.0 { opts.mu_init } else { mu * 2.0 };
            regularization_events += 1;
            if mu > opts.mu_max {
                break;
            }
        }
    }

    let gains = match last_pass {
        Some(pass) => pass,
        // max_iters == 0: still provide gains for the initial nominal.
        None => backward_pass(plant, cost, &nominal, mu.max(opts.mu_init))
            .map_err(DdpError::Backward)?,
    };

    let final_state_error = nominal.final_state() - &boundary.x_target;
    Ok(DdpReport {
        cost_history,
        iterations,
        converged,
        runtime_seconds: start.elapsed().as_secs_f64(),
        trajectory: nominal,
        gains,
        regularization_events,
        delta_v,
        trials,
        final_state_error,
    })
}
