use nalgebra::DVector;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TrajectoryError {
    #[error("expected {expected} states for {controls} controls, got {actual}")]
    LengthMismatch {
        expected: usize,
        controls: usize,
        actual: usize,
    },
    #[error("time grid is not uniformly spaced at index {index}")]
    NonUniformTimes { index: usize },
    #[error("non-finite entry in {what} at step {index}")]
    NonFinite { what: &'static str, index: usize },
    #[error("step size must be positive, got {0}")]
    NonPositiveStep(f64),
}

/// Time-indexed state and control sequences with a uniform step.
/// `states` has one more entry than `controls`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<DVector<f64>>,
    controls: Vec<DVector<f64>>,
    dt: f64,
}

impl Trajectory {
    pub fn new(
        times: Vec<f64>,
        states: Vec<DVector<f64>>,
        controls: Vec<DVector<f64>>,
        dt: f64,
    ) -> Result<Self, TrajectoryError> {
        if dt <= 0.0 || !dt.is_finite() {
            return Err(TrajectoryError::NonPositiveStep(dt));
        }
        if states.len() != controls.len() + 1 || times.len() != states.len() {
            return Err(TrajectoryError::LengthMismatch {
                expected: controls.len() + 1,
                controls: controls.len(),
                actual: states.len().min(times.len()),
            });
        }
        for (i, pair) in times.windows(2).enumerate() {
            let step = pair[1] - pair[0];
            // The difference of two rounded time stamps carries roundoff
            // proportional to their magnitude, not to dt, so the
            // uniformity tolerance must scale with |t|.
            let scale = dt.max(pair[1].abs());
            if step <= 0.0 || (step - dt).abs() >= 1e-12 * scale {
                return Err(TrajectoryError::NonUniformTimes { index: i });
            }
        }
        for (i, x) in states.iter().enumerate() {
            if !x.iter().all(|v| v.is_finite()) {
                return Err(TrajectoryError::NonFinite { what: "state", index: i });
            }
        }
        for (i, u) in controls.iter().enumerate() {
            if !u.iter().all(|v| v.is_finite()) {
                return Err(TrajectoryError::NonFinite { what: "control", index: i });
            }
        }
        Ok(Self { times, states, controls, dt })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Number of control intervals.
    pub fn num_steps(&self) -> usize {
        self.controls.len()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[DVector<f64>] {
        &self.states
    }

    pub fn controls(&self) -> &[DVector<f64>] {
        &self.controls
    }

    pub fn initial_state(&self) -> &DVector<f64> {
        &self.states[0]
    }

    pub fn final_state(&self) -> &DVector<f64> {
        self.states.last().expect("states is never empty")
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("times is never empty")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec1(v: f64) -> DVector<f64> {
        DVector::from_vec(vec![v])
    }

    #[test]
    fn accepts_uniform_grid() {
        let traj = Trajectory::new(
            vec![0.0, 0.1, 0.2],
            vec![vec1(0.0), vec1(1.0), vec1(2.0)],
            vec![vec1(1.0), vec1(1.0)],
            0.1,
        )
        .unwrap();
        assert_eq!(traj.num_steps(), 2);
        assert_eq!(traj.final_state()[0], 2.0);
    }

    #[test]
    fn rejects_length_mismatch() {
        let err = Trajectory::new(
            vec![0.0, 0.1],
            vec![vec1(0.0), vec1(1.0)],
            vec![vec1(1.0), vec1(1.0)],
            0.1,
        );
        assert!(matches!(err, Err(TrajectoryError::LengthMismatch { .. })));
    }

    #[test]
    fn rejects_nonuniform_times() {
        let err = Trajectory::new(
            vec![0.0, 0.1, 0.25],
            vec![vec1(0.0), vec1(1.0), vec1(2.0)],
            vec![vec1(1.0), vec1(1.0)],
            0.1,
        );
        assert!(matches!(err, Err(TrajectoryError::NonUniformTimes { index: 1 })));
    }

    #[test]
    fn rejects_non_finite_state() {
        let err = Trajectory::new(
            vec![0.0, 0.1],
            vec![vec1(0.0), vec1(f64::NAN)],
            vec![vec1(1.0)],
            0.1,
        );
        assert!(matches!(err, Err(TrajectoryError::NonFinite { index: 1, .. })));
    }
}
