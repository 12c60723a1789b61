use nalgebra::DVector;

use super::problem::{EvalError, NlpProblem};
use super::solve::projected_norm;

/// First-order optimality summary at a candidate point.
#[derive(Debug, Clone)]
pub struct KktReport {
    /// ‖∇f + Jᵀλ‖∞ projected onto the inactive-bound subspace.
    pub stationarity_norm: f64,
    /// ‖c(x)‖∞.
    pub max_violation: f64,
    /// Largest product of a bound-gradient magnitude and the distance
    /// to its bound; zero when every active gradient sits on its bound.
    pub complementarity_max: f64,
}

pub fn kkt_check(
    problem: &dyn NlpProblem,
    x: &DVector<f64>,
    multipliers: &DVector<f64>,
) -> Result<KktReport, EvalError> {
    let c = problem.equalities(x)?;
    let grad = problem.gradient(x)?;
    let lagrangian_grad = if problem.num_equalities() > 0 {
        let jac = problem.equality_jacobian(x)?;
        grad + jac.transpose() * multipliers
    } else {
        grad
    };

    let stationarity_norm = projected_norm(problem, x, &lagrangian_grad);
    let max_violation = if c.is_empty() { 0.0 } else { c.amax() };

    // The bound multiplier equals the Lagrangian-gradient component, so
    // complementarity is |g_i| times the distance to the nearer bound.
    let mut complementarity_max = 0.0f64;
    if let Some(bounds) = problem.bounds() {
        for (i, b) in bounds.iter().enumerate() {
            let g = lagrangian_grad[i].abs();
            if g == 0.0 {
                continue;
            }
            let dist = (x[i] - b[0]).abs().min((b[1] - x[i]).abs());
            if dist.is_finite() {
                complementarity_max = complementarity_max.max(g * dist);
            }
        }
    }

    Ok(KktReport {
        stationarity_norm,
        max_violation,
        complementarity_max,
    })
}
