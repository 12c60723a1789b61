use nalgebra::DVector;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BoundaryError {
    #[error("final time {tf} must exceed initial time {t0}")]
    EmptyHorizon { t0: f64, tf: f64 },
    #[error("bound channel {index} has lo {lo} > hi {hi}")]
    InvertedBound { index: usize, lo: f64, hi: f64 },
}

/// Initial state, target state, time horizon and optional box bounds.
#[derive(Debug, Clone)]
pub struct BoundarySpec {
    pub x0: DVector<f64>,
    pub x_target: DVector<f64>,
    pub t0: f64,
    pub tf: f64,
    pub control_bounds: Option<Vec<[f64; 2]>>,
    pub state_bounds: Option<Vec<[f64; 2]>>,
}

impl BoundarySpec {
    pub fn new(
        x0: DVector<f64>,
        x_target: DVector<f64>,
        t0: f64,
        tf: f64,
    ) -> Result<Self, BoundaryError> {
        if tf <= t0 {
            return Err(BoundaryError::EmptyHorizon { t0, tf });
        }
        Ok(Self {
            x0,
            x_target,
            t0,
            tf,
            control_bounds: None,
            state_bounds: None,
        })
    }

    pub fn with_control_bounds(mut self, bounds: Vec<[f64; 2]>) -> Result<Self, BoundaryError> {
        validate_bounds(&bounds)?;
        self.control_bounds = Some(bounds);
        Ok(self)
    }

    pub fn with_state_bounds(mut self, bounds: Vec<[f64; 2]>) -> Result<Self, BoundaryError> {
        validate_bounds(&bounds)?;
        self.state_bounds = Some(bounds);
        Ok(self)
    }

    pub fn horizon(&self) -> f64 {
        self.tf - self.t0
    }
}

fn validate_bounds(bounds: &[[f64; 2]]) -> Result<(), BoundaryError> {
    for (index, b) in bounds.iter().enumerate() {
        if b[0] > b[1] {
            return Err(BoundaryError::InvertedBound { index, lo: b[0], hi: b[1] });
        }
    }
    Ok(())
}
