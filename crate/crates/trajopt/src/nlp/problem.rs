use nalgebra::{DMatrix, DVector};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("non-finite value in {what} at component {index}")]
    NonFinite { what: &'static str, index: usize },
    #[error("plant evaluation failed: {0}")]
    Plant(#[from] crate::core::PlantError),
}

/// Nonlinear program
///   minimize f(x)  subject to  c(x) = 0,  lo ≤ x ≤ hi,
/// with derivative defaults by forward finite differences; implementors
/// with analytic derivatives override `gradient` and
/// `equality_jacobian`.
pub trait NlpProblem {
    fn dim(&self) -> usize;
    fn num_equalities(&self) -> usize;
    fn objective(&self, x: &DVector<f64>) -> Result<f64, EvalError>;
    fn equalities(&self, x: &DVector<f64>) -> Result<DVector<f64>, EvalError>;

    /// Per-coordinate box bounds, when present.
    fn bounds(&self) -> Option<&[[f64; 2]]> {
        None
    }

    fn gradient(&self, x: &DVector<f64>) -> Result<DVector<f64>, EvalError> {
        let f0 = self.objective(x)?;
        let mut grad = DVector::zeros(self.dim());
        let mut xp = x.clone();
        for i in 0..self.dim() {
            let h = fd_step(x[i]);
            xp[i] = x[i] + h;
            let fi = self.objective(&xp)?;
            xp[i] = x[i];
            grad[i] = (fi - f0) / h;
            if !grad[i].is_finite() {
                return Err(EvalError::NonFinite { what: "gradient", index: i });
            }
        }
        Ok(grad)
    }

    fn equality_jacobian(&self, x: &DVector<f64>) -> Result<DMatrix<f64>, EvalError> {
        let c0 = self.equalities(x)?;
        let mut jac = DMatrix::zeros(self.num_equalities(), self.dim());
        let mut xp = x.clone();
        for col in 0..self.dim() {
            let h = fd_step(x[col]);
            xp[col] = x[col] + h;
            let ci = self.equalities(&xp)?;
            xp[col] = x[col];
            for row in 0..self.num_equalities() {
                let v = (ci[row] - c0[row]) / h;
                if !v.is_finite() {
                    return Err(EvalError::NonFinite { what: "jacobian", index: row });
                }
                jac[(row, col)] = v;
            }
        }
        Ok(jac)
    }
}

fn fd_step(xi: f64) -> f64 {
    1e-7 * xi.abs().max(1.0)
}
