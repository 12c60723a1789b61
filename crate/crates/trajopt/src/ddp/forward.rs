use nalgebra::DVector;
use thiserror::Error;

use super::backward::GainStep;
use crate::core::{Cost, Integrator, Plant, PlantError, Trajectory, TrajectoryError};

#[derive(Debug, Error)]
pub enum ForwardError {
    #[error("rollout diverged at step {step}; shrink the line-search step")]
    Diverged { step: usize },
    #[error("plant evaluation failed at step {step}: {source}")]
    Plant {
        step: usize,
        #[source]
        source: PlantError,
    },
    #[error(transparent)]
    Trajectory(#[from] TrajectoryError),
}

/// Total discrete cost of a trajectory: Σ L(x_k, u_k, t_k)·dt + φ(x_N).
pub fn trajectory_cost(cost: &dyn Cost, traj: &Trajectory) -> f64 {
    let dt = traj.dt();
    let mut total = 0.0;
    for k in 0..traj.num_steps() {
        total += cost.running(&traj.states()[k], &traj.controls()[k], traj.times()[k]) * dt;
    }
    total + cost.terminal(traj.final_state(), traj.final_time())
}

/// Roll the plant forward applying u = ū + α·l + L·(x − x̄), clamped to
/// control bounds when configured, with the same Euler scheme the
/// backward pass linearized against.
pub fn forward_pass(
    plant: &dyn Plant,
    cost: &dyn Cost,
    nominal: &Trajectory,
    gains: &[GainStep],
    alpha: f64,
    control_bounds: Option<&[[f64; 2]]>,
) -> Result<(Trajectory, f64), ForwardError> {
    assert_eq!(gains.len(), nominal.num_steps(), "gain/trajectory length mismatch");
    let dt = nominal.dt();
    let n_steps = nominal.num_steps();

    let mut states = Vec::with_capacity(n_steps + 1);
    let mut controls = Vec::with_capacity(n_steps);
    states.push(nominal.initial_state().clone());

    for k in 0..n_steps {
        let x = states.last().expect("states is never empty").clone();
        let dx = &x - &nominal.states()[k];
        let mut u: DVector<f64> =
            &nominal.controls()[k] + &gains[k].l * alpha + &gains[k].l_mat * &dx;
        if let Some(bounds) = control_bounds {
            for (i, b) in bounds.iter().enumerate() {
                u[i] = u[i].clamp(b[0], b[1]);
            }
        }
        let t = nominal.times()[k];
        let next = crate::core::step(plant, &x, &u, t, dt, Integrator::Euler)
            .map_err(|source| ForwardError::Plant { step: k, source })?;
        if !next.iter().all(|v| v.is_finite()) {
            return Err(ForwardError::Diverged { step: k });
        }
        controls.push(u);
        states.push(next);
    }

    let traj = Trajectory::new(nominal.times().to_vec(), states, controls, dt)?;
    let total = trajectory_cost(cost, &traj);
    if !total.is_finite() {
        return Err(ForwardError::Diverged { step: n_steps });
    }
    Ok((traj, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::{rollout, LinearPlant, QuadraticCost};
    use nalgebra::DMatrix;

    fn scalar_setup() -> (LinearPlant, QuadraticCost, Trajectory) {
        let plant = LinearPlant {
            a: DMatrix::from_row_slice(1, 1, &[-0.5]),
            b: DMatrix::identity(1, 1),
        };
        let cost = QuadraticCost::control_effort(
            1,
            DMatrix::from_row_slice(1, 1, &[1.0]),
            DMatrix::from_row_slice(1, 1, &[10.0]),
            DVector::from_vec(vec![1.0]),
        );
        let controls = vec![DVector::from_vec(vec![0.3]); 10];
        let traj = rollout(
            &plant,
            &DVector::zeros(1),
            &controls,
            0.0,
            0.1,
            Integrator::Euler,
        )
        .unwrap();
        (plant, cost, traj)
    }

    fn zero_gains(n: usize, m: usize, steps: usize) -> Vec<GainStep> {
        (0..steps)
            .map(|_| GainStep {
                l: DVector::zeros(m),
                l_mat: DMatrix::zeros(m, n),
                g: DVector::zeros(m),
                g_mat: DMatrix::zeros(m, n),
                h: DMatrix::identity(m, m),
            })
            .collect()
    }

    #[test]
    fn zero_gains_reproduce_nominal() {
        let (plant, cost, traj) = scalar_setup();
        let gains = zero_gains(1, 1, traj.num_steps());
        let (new_traj, new_cost) = forward_pass(&plant, &cost, &traj, &gains, 1.0, None).unwrap();
        assert_eq!(new_traj, traj);
        assert!((new_cost - trajectory_cost(&cost, &traj)).abs() < 1e-14);
    }

    #[test]
    fn alpha_zero_reproduces_nominal() {
        let (plant, cost, traj) = scalar_setup();
        let mut gains = zero_gains(1, 1, traj.num_steps());
        for g in &mut gains {
            g.l[0] = 5.0; // feedforward is scaled away by alpha = 0
        }
        let (new_traj, _) = forward_pass(&plant, &cost, &traj, &gains, 0.0, None).unwrap();
        assert_eq!(new_traj, traj);
    }

    #[test]
    fn control_bounds_clamp() {
        let (plant, cost, traj) = scalar_setup();
        let mut gains = zero_gains(1, 1, traj.num_steps());
        for g in &mut gains {
            g.l[0] = 100.0;
        }
        let bounds = [[-1.0, 1.0]];
        let (new_traj, _) =
            forward_pass(&plant, &cost, &traj, &gains, 1.0, Some(&bounds)).unwrap();
        for u in new_traj.controls() {
            assert!(u[0] <= 1.0 && u[0] >= -1.0);
        }
    }
}
