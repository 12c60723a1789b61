use nalgebra::DVector;
use std::collections::VecDeque;
use std::time::Instant;

use super::problem::{EvalError, NlpProblem};

#[derive(Debug, Clone)]
pub struct NlpOptions {
    pub max_outer: usize,
    pub max_inner: usize,
    pub constraint_tol: f64,
    pub stationarity_tol: f64,
    pub penalty_init: f64,
    pub penalty_growth: f64,
    pub penalty_max: f64,
    /// Write one line per outer iteration to stderr.
    pub log: bool,
}

impl Default for NlpOptions {
    fn default() -> Self {
        Self {
            max_outer: 50,
            max_inner: 200,
            constraint_tol: 1e-6,
            stationarity_tol: 1e-6,
            penalty_init: 10.0,
            penalty_growth: 10.0,
            penalty_max: 1e8,
            log: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NlpStatus {
    Optimal,
    MaxIter,
    Stalled,
}

#[derive(Debug, Clone)]
pub struct NlpSolution {
    pub x: DVector<f64>,
    pub multipliers: DVector<f64>,
    pub objective: f64,
    pub max_violation: f64,
    pub stationarity_norm: f64,
    pub outer_iterations: usize,
    pub inner_iterations_total: usize,
    pub runtime_seconds: f64,
    pub status: NlpStatus,
    /// Objective value at the end of each outer iteration.
    pub objective_history: Vec<f64>,
}

/// Augmented-Lagrangian solve: minimize f + λᵀc + (ρ/2)‖c‖² over
/// box-projected quasi-Newton inner iterations, then update λ ← λ + ρ·c
/// and grow ρ whenever the violation fails to shrink by 4×.
pub fn solve(
    problem: &dyn NlpProblem,
    x0: &DVector<f64>,
    opts: &NlpOptions,
) -> Result<NlpSolution, EvalError> {
    let start = Instant::now();
    let me = problem.num_equalities();

    let mut x = project(problem, x0.clone());
    let mut lambda = DVector::zeros(me);
    let mut rho = opts.penalty_init;
    let mut prev_violation = f64::INFINITY;
    let mut prev_stationarity = f64::INFINITY;
    let mut inner_total = 0usize;
    let mut status = NlpStatus::MaxIter;
    let mut outer_done = 0usize;
    let mut objective_history = Vec::new();

    for outer in 0..opts.max_outer {
        outer_done = outer + 1;
        // Loose inner solves early, tightening toward the stationarity
        // target as the multipliers settle.
        let inner_tol = opts
            .stationarity_tol
            .max(1e-2 * 0.1f64.powi(outer as i32));
        let inner = minimize_augmented(problem, &mut x, &lambda, rho, inner_tol, opts)?;
        inner_total += inner.iterations;

        let c = problem.equalities(&x)?;
        let violation = c.amax_or_zero();
        lambda += &c * rho;

        let grad = problem.gradient(&x)?;
        let stat = if me > 0 {
            let jac = problem.equality_jacobian(&x)?;
            projected_norm(problem, &x, &(grad + jac.transpose() * &lambda))
        } else {
            projected_norm(problem, &x, &grad)
        };

        let objective = problem.objective(&x)?;
        objective_history.push(objective);
        if opts.log {
            eprintln!(
                "outer {outer:3}  obj {objective:+.6e}  viol {violation:.3e}  rho {rho:.1e}  inner {}",
                inner.iterations
            );
            // Feasibility is expected to be non-increasing once the
            // multiplier updates kick in; flag regressions, don't fail.
            if outer > 0 && violation > prev_violation {
                eprintln!(
                    "warning: violation rose from {prev_violation:.3e} to {violation:.3e} at outer {outer}"
                );
            }
        }

        if violation < opts.constraint_tol && stat < opts.stationarity_tol {
            status = NlpStatus::Optimal;
            break;
        }
        if inner.stalled && violation >= prev_violation && stat >= prev_stationarity {
            status = NlpStatus::Stalled;
            break;
        }
        // Grow the penalty only while feasibility is both unmet and not
        // improving fast enough; past the tolerance, higher ρ just
        // degrades inner conditioning.
        if violation > opts.constraint_tol && violation > prev_violation / 4.0 {
            rho = (rho * opts.penalty_growth).min(opts.penalty_max);
        }
        prev_violation = violation;
        prev_stationarity = stat;
    }

    let c = problem.equalities(&x)?;
    let grad = problem.gradient(&x)?;
    let stationarity_norm = if me > 0 {
        let jac = problem.equality_jacobian(&x)?;
        projected_norm(problem, &x, &(grad + jac.transpose() * &lambda))
    } else {
        projected_norm(problem, &x, &grad)
    };

    Ok(NlpSolution {
        objective: problem.objective(&x)?,
        max_violation: c.amax_or_zero(),
        stationarity_norm,
        x,
        multipliers: lambda,
        outer_iterations: outer_done,
        inner_iterations_total: inner_total,
        runtime_seconds: start.elapsed().as_secs_f64(),
        status,
        objective_history,
    })
}

trait AmaxOrZero {
    fn amax_or_zero(&self) -> f64;
}

impl AmaxOrZero for DVector<f64> {
    fn amax_or_zero(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            self.amax()
        }
    }
}

struct InnerResult {
    iterations: usize,
    stalled: bool,
}

/// Inner minimization of the augmented Lagrangian by limited-memory
/// quasi-Newton (memory 10) with gradient projection onto the box and a
/// backtracking Armijo line search.
fn minimize_augmented(
    problem: &dyn NlpProblem,
    x: &mut DVector<f64>,
    lambda: &DVector<f64>,
    rho: f64,
    inner_tol: f64,
    opts: &NlpOptions,
) -> Result<InnerResult, EvalError> {
    const MEMORY: usize = 10;
    const ARMIJO_C1: f64 = 1e-4;
    const MAX_BACKTRACKS: usize = 40;

    let eval = |x: &DVector<f64>| -> Result<f64, EvalError> {
        let f = problem.objective(x)?;
        let c = problem.equalities(x)?;
        Ok(f + lambda.dot(&c) + 0.5 * rho * c.norm_squared())
    };
    let eval_grad = |x: &DVector<f64>| -> Result<DVector<f64>, EvalError> {
        let grad = problem.gradient(x)?;
        if problem.num_equalities() == 0 {
            return Ok(grad);
        }
        let c = problem.equalities(x)?;
        let jac = problem.equality_jacobian(x)?;
        Ok(grad + jac.transpose() * (lambda + &c * rho))
    };

    let mut value = eval(x)?;
    let mut grad = eval_grad(x)?;
    let precond = gauss_newton_precond(problem, x, rho)?;
    let mut pairs: VecDeque<(DVector<f64>, DVector<f64>, f64)> = VecDeque::new();
    for iter in 0..opts.max_inner {
        if projected_norm(problem, x, &grad) < inner_tol {
            return Ok(InnerResult { iterations: iter, stalled: false });
        }

        let mut dir = two_loop(&pairs, &grad, &precond);
        dir = -dir;
        if dir.dot(&grad) > -1e-12 * dir.norm() * grad.norm() {
            // Curvature breakdown: restart from steepest descent.
            pairs.clear();
            dir = -grad.clone();
        }

        let mut accepted = false;
        // On line-search failure, fall back to steepest descent once
        // before giving up: the quasi-Newton model may simply be stale.
        'attempts: for attempt in 0..2 {
            let mut alpha = 1.0;
            for _ in 0..MAX_BACKTRACKS {
                let candidate = project(problem, &*x + &dir * alpha);
                let step = &candidate - &*x;
                let predicted = grad.dot(&step);
                if predicted >= 0.0 {
                    // Projection removed all descent along this direction.
                    break;
                }
                // The relative-epsilon slack keeps the search alive when
                // the decrease falls below floating-point resolution of
                // the merit value.
                let slack = 1e-15 * value.abs();
                match eval(&candidate) {
                    Ok(trial) if trial.is_finite() && trial <= value + ARMIJO_C1 * predicted + slack => {
                        let new_grad = eval_grad(&candidate)?;
                        let s = step;
                        let y = &new_grad - &grad;
                        let sy = s.dot(&y);
                        if sy > 1e-10 * s.norm() * y.norm() {
                            if pairs.len() == MEMORY {
                                pairs.pop_front();
                            }
                            pairs.push_back((s, y, sy));
                        }
                        *x = candidate;
                        value = trial;
                        grad = new_grad;
                        accepted = true;
                        break 'attempts;
                    }
                    _ => alpha *= 0.5,
                }
            }
            if attempt == 0 && !pairs.is_empty() {
                pairs.clear();
                dir = -grad.clone();
            } else {
                break;
            }
        }
        if !accepted {
            return Ok(InnerResult { iterations: iter + 1, stalled: true });
        }
    }
    Ok(InnerResult { iterations: opts.max_inner, stalled: false })
}

/// Inverse diagonal of the Gauss-Newton curvature estimate
/// ρ·diag(JᵀJ), floored so columns untouched by the constraints still
/// take sensible steps. Used as the L-BFGS initial matrix: collocation
/// columns carry differentiation-matrix entries that grow like K², and
/// without this scaling the inner iteration crawls.
fn gauss_newton_precond(
    problem: &dyn NlpProblem,
    x: &DVector<f64>,
    rho: f64,
) -> Result<DVector<f64>, EvalError> {
    let dim = x.len();
    if problem.num_equalities() == 0 {
        return Ok(DVector::from_element(dim, 1.0));
    }
    let jac = problem.equality_jacobian(x)?;
    let mut h = DVector::zeros(dim);
    for col in 0..dim {
        h[col] = rho * jac.column(col).norm_squared();
    }
    let floor = 1e-6 * h.max().max(1e-12) + 1.0;
    Ok(h.map(|v| 1.0 / (v + floor)))
}

/// Two-loop recursion for the L-BFGS direction H·g with a diagonal
/// initial matrix.
fn two_loop(
    pairs: &VecDeque<(DVector<f64>, DVector<f64>, f64)>,
    grad: &DVector<f64>,
    precond: &DVector<f64>,
) -> DVector<f64> {
    let mut q = grad.clone();
    let mut alphas = Vec::with_capacity(pairs.len());
    for (s, y, sy) in pairs.iter().rev() {
        let a = s.dot(&q) / sy;
        q -= y * a;
        alphas.push(a);
    }
    // Scale the preconditioner to match the most recent curvature pair.
    let gamma = match pairs.back() {
        Some((_, y, sy)) => {
            let ydy: f64 = y.iter().zip(precond.iter()).map(|(yi, p)| yi * yi * p).sum();
            if ydy > 0.0 {
                sy / ydy
            } else {
                1.0
            }
        }
        None => 1.0,
    };
    q.component_mul_assign(precond);
    q *= gamma;
    for ((s, y, sy), a) in pairs.iter().zip(alphas.into_iter().rev()) {
        let b = y.dot(&q) / sy;
        q += s * (a - b);
    }
    q
}

fn project(problem: &dyn NlpProblem, mut x: DVector<f64>) -> DVector<f64> {
    if let Some(bounds) = problem.bounds() {
        for (i, b) in bounds.iter().enumerate() {
            x[i] = x[i].clamp(b[0], b[1]);
        }
    }
    x
}

/// Infinity norm of the gradient projected onto the inactive-bound
/// subspace: at an active bound only the infeasible-pointing component
/// counts.
pub(crate) fn projected_norm(
    problem: &dyn NlpProblem,
    x: &DVector<f64>,
    grad: &DVector<f64>,
) -> f64 {
    let mut norm = 0.0f64;
    let bounds = problem.bounds();
    for i in 0..x.len() {
        let g = grad[i];
        let effective = match bounds {
            Some(b) => {
                let at_lo = x[i] <= b[i][0];
                let at_hi = x[i] >= b[i][1];
                if (at_lo && g > 0.0) || (at_hi && g < 0.0) {
                    0.0
                } else {
                    g
                }
            }
            None => g,
        };
        norm = norm.max(effective.abs());
    }
    norm
}
