use nalgebra::DVector;

use super::layout::DecisionLayout;
use super::transcribe::inverse_time_transform;
use crate::collocation::{CollocationGrid, LagrangeBasis};
use crate::core::{BoundarySpec, Trajectory};

/// Map a solved decision vector back to a uniformly sampled trajectory:
/// states are interpolated on the {−1} ∪ nodes support, controls on the
/// K nodes (degree K−1), with `samples` state points spanning [t0, tf]
/// and one fewer control point.
pub fn extract_trajectory(
    solution: &DVector<f64>,
    grid: &CollocationGrid,
    boundary: &BoundarySpec,
    layout: &DecisionLayout,
    samples: usize,
) -> Trajectory {
    assert!(samples >= 2, "need at least two samples");
    assert_eq!(solution.len(), layout.dim(), "solution does not match layout");
    let (states, controls) = layout.unpack(solution);

    // Support values exclude X_f; the quadrature constraint ties it to
    // the interpolant at τ = +1.
    let state_values: Vec<DVector<f64>> = states[..=layout.k].to_vec();
    let control_basis = LagrangeBasis::new(grid.nodes().to_vec());

    let dt = boundary.horizon() / (samples - 1) as f64;
    let mut times = Vec::with_capacity(samples);
    let mut out_states = Vec::with_capacity(samples);
    let mut out_controls = Vec::with_capacity(samples - 1);
    for i in 0..samples {
        let tau = -1.0 + 2.0 * i as f64 / (samples - 1) as f64;
        times.push(inverse_time_transform(tau, boundary.t0, boundary.tf));
        out_states.push(grid.basis().eval_vector(&state_values, tau));
        if i + 1 < samples {
            out_controls.push(control_basis.eval_vector(&controls, tau));
        }
    }
    Trajectory::new(times, out_states, out_controls, dt)
        .expect("uniform sampling always yields a valid trajectory")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gpm::{initial_guess, GuessStrategy};
    use crate::core::LinearPlant;
    use nalgebra::DMatrix;

    #[test]
    fn sampling_at_a_node_returns_the_nodal_value() {
        let grid = CollocationGrid::new(3).unwrap();
        let layout = DecisionLayout::new(3, 1, 1);
        let boundary = BoundarySpec::new(
            DVector::from_vec(vec![-1.0]),
            DVector::from_vec(vec![1.0]),
            0.0,
            2.0,
        )
        .unwrap();
        // Quadratic-in-τ state is represented exactly by the support.
        let mut taus: Vec<f64> = grid.support().to_vec();
        taus.push(1.0);
        let states: Vec<_> = taus
            .iter()
            .map(|&tau| DVector::from_vec(vec![tau * tau - 0.5]))
            .collect();
        let controls = vec![DVector::from_vec(vec![0.3]); 3];
        let z = layout.pack(&states, &controls);

        let traj = extract_trajectory(&z, &grid, &boundary, &layout, 201);
        // With 201 uniform samples over [0, 2], t = 1 (τ = 0) is on the grid.
        let idx = 100;
        assert!((traj.times()[idx] - 1.0).abs() < 1e-12);
        assert!((traj.states()[idx][0] - (-0.5)).abs() < 1e-12);
    }

    #[test]
    fn zero_dynamics_solution_extracts_constant() {
        let plant = LinearPlant {
            a: DMatrix::zeros(2, 2),
            b: DMatrix::zeros(2, 1),
        };
        let x0 = DVector::from_vec(vec![0.7, -0.2]);
        let boundary = BoundarySpec::new(x0.clone(), x0.clone(), 0.0, 1.0).unwrap();
        let grid = CollocationGrid::new(4).unwrap();
        let z = initial_guess(&plant, &boundary, &grid, GuessStrategy::Rollout);
        let traj = extract_trajectory(&z, &grid, &boundary, &DecisionLayout::new(4, 2, 1), 50);
        for s in traj.states() {
            assert!((s - &x0).amax() < 1e-12);
        }
    }

    #[test]
    fn single_integrator_solution_matches_analytic_ramp() {
        // x*(t) = t on [0, 1]: pack the exact nodal values and sample.
        let grid = CollocationGrid::new(5).unwrap();
        let layout = DecisionLayout::new(5, 1, 1);
        let boundary = BoundarySpec::new(
            DVector::zeros(1),
            DVector::from_vec(vec![1.0]),
            0.0,
            1.0,
        )
        .unwrap();
        let mut taus: Vec<f64> = grid.support().to_vec();
        taus.push(1.0);
        let states: Vec<_> = taus
            .iter()
            .map(|&tau| DVector::from_vec(vec![0.5 * (tau + 1.0)]))
            .collect();
        let controls = vec![DVector::from_vec(vec![1.0]); 5];
        let z = layout.pack(&states, &controls);

        let traj = extract_trajectory(&z, &grid, &boundary, &layout, 50);
        for (t, s) in traj.times().iter().zip(traj.states()) {
            assert!((s[0] - t).abs() < 1e-6, "t = {t}: {}", s[0]);
        }
        for u in traj.controls() {
            assert!((u[0] - 1.0).abs() < 1e-6);
        }
    }
}
