use nalgebra::DVector;
use thiserror::Error;

use super::plant::{Plant, PlantError};
use super::trajectory::{Trajectory, TrajectoryError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrator {
    Euler,
    Rk4,
}

#[derive(Debug, Error)]
pub enum RolloutError {
    #[error("state diverged at step {step}")]
    Diverged { step: usize },
    #[error("plant evaluation failed at step {step}: {source}")]
    Plant {
        step: usize,
        #[source]
        source: PlantError,
    },
    #[error(transparent)]
    Trajectory(#[from] TrajectoryError),
    #[error("step size must be positive, got {0}")]
    NonPositiveStep(f64),
}

/// Integrate the plant forward from `x0` under the given control sequence.
/// Controls are held constant over each step (zero-order hold).
pub fn rollout(
    plant: &dyn Plant,
    x0: &DVector<f64>,
    controls: &[DVector<f64>],
    t0: f64,
    dt: f64,
    integrator: Integrator,
) -> Result<Trajectory, RolloutError> {
    if dt <= 0.0 || !dt.is_finite() {
        return Err(RolloutError::NonPositiveStep(dt));
    }
    let mut states = Vec::with_capacity(controls.len() + 1);
    let mut times = Vec::with_capacity(controls.len() + 1);
    states.push(x0.clone());
    times.push(t0);
    for (k, u) in controls.iter().enumerate() {
        let t = t0 + k as f64 * dt;
        let x = states.last().expect("states is never empty");
        let next = step(plant, x, u, t, dt, integrator)
            .map_err(|source| RolloutError::Plant { step: k, source })?;
        if !next.iter().all(|v| v.is_finite()) {
            return Err(RolloutError::Diverged { step: k });
        }
        states.push(next);
        times.push(t0 + (k + 1) as f64 * dt);
    }
    Ok(Trajectory::new(times, states, controls.to_vec(), dt)?)
}

/// Single integration step.
pub fn step(
    plant: &dyn Plant,
    x: &DVector<f64>,
    u: &DVector<f64>,
    t: f64,
    dt: f64,
    integrator: Integrator,
) -> Result<DVector<f64>, PlantError> {
    match integrator {
        Integrator::Euler => {
            let f = plant.dynamics(x, u, t)?;
            Ok(x + f * dt)
        }
        Integrator::Rk4 => {
            let k1 = plant.dynamics(x, u, t)?;
            let k2 = plant.dynamics(&(x + &k1 * (dt / 2.0)), u, t + dt / 2.0)?;
            let k3 = plant.dynamics(&(x + &k2 * (dt / 2.0)), u, t + dt / 2.0)?;
            let k4 = plant.dynamics(&(x + &k3 * dt), u, t + dt)?;
            Ok(x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0))
        }
    }
}
