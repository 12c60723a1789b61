use nalgebra::{DMatrix, DVector};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumDiffError {
    #[error("function returned a non-finite value in component {index}")]
    NonFinite { index: usize },
    #[error("step size must be positive, got {0}")]
    NonPositiveStep(f64),
}

/// Central-difference Jacobian: column i is (f(x + h·eᵢ) − f(x − h·eᵢ)) / 2h.
pub fn finite_diff_jacobian<F>(
    f: &F,
    x: &DVector<f64>,
    h: f64,
) -> Result<DMatrix<f64>, NumDiffError>
where
    F: Fn(&DVector<f64>) -> DVector<f64>,
{
    if h <= 0.0 || !h.is_finite() {
        return Err(NumDiffError::NonPositiveStep(h));
    }
    let n = x.len();
    let probe = f(x);
    let p = probe.len();
    let mut jac = DMatrix::zeros(p, n);
    for col in 0..n {
        let mut xp = x.clone();
        let mut xm = x.clone();
        xp[col] += h;
        xm[col] -= h;
        let fp = f(&xp);
        let fm = f(&xm);
        for row in 0..p {
            let v = (fp[row] - fm[row]) / (2.0 * h);
            if !v.is_finite() {
                return Err(NumDiffError::NonFinite { index: row });
            }
            jac[(row, col)] = v;
        }
    }
    Ok(jac)
}

/// Per-coordinate step used when validating analytic derivatives.
pub fn default_step(xi: f64) -> f64 {
    1e-6 * xi.abs().max(1.0)
}
