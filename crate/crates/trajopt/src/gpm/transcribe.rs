use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use super::layout::DecisionLayout;
use crate::collocation::CollocationGrid;
use crate::core::{BoundarySpec, Cost, Integrator, Plant};
use crate::nlp::{EvalError, NlpProblem};

/// Map physical time onto the canonical interval [−1, 1].
pub fn time_transform(t: f64, t0: f64, tf: f64) -> f64 {
    assert!(tf > t0, "degenerate horizon");
    2.0 * t / (tf - t0) - (tf + t0) / (tf - t0)
}

/// Map canonical τ ∈ [−1, 1] back to physical time.
pub fn inverse_time_transform(tau: f64, t0: f64, tf: f64) -> f64 {
    assert!(tf > t0, "degenerate horizon");
    (tf - t0) / 2.0 * tau + (tf + t0) / 2.0
}

#[derive(Debug, Error)]
pub enum TranscribeError {
    #[error("boundary states have dims {x0} and {xt}, plant expects {n}")]
    StateDimMismatch { x0: usize, xt: usize, n: usize },
    #[error("{what} bounds cover {got} channels, expected {expected}")]
    BoundsDimMismatch {
        what: &'static str,
        got: usize,
        expected: usize,
    },
}

/// The collocation transcription of a fixed-horizon Bolza problem:
/// a finite-dimensional program over [X₀, X₁..X_K, X_f, U₁..U_K] whose
/// equality rows are, in order, the n·K collocation residuals, the n
/// quadrature residuals and the 2n boundary pins X₀ = x0, X_f = x_target.
/// Dynamics rows are pre-scaled by 2/(tf−t0) so conditioning does not
/// depend on the horizon.
pub struct TranscribedNlp<'a> {
    plant: &'a dyn Plant,
    cost: &'a dyn Cost,
    boundary: &'a BoundarySpec,
    grid: &'a CollocationGrid,
    layout: DecisionLayout,
    bounds: Option<Vec<[f64; 2]>>,
    node_times: Vec<f64>,
}

pub fn transcribe<'a>(
    plant: &'a dyn Plant,
    cost: &'a dyn Cost,
    boundary: &'a BoundarySpec,
    grid: &'a CollocationGrid,
) -> Result<TranscribedNlp<'a>, TranscribeError> {
    let n = plant.state_dim();
    let m = plant.control_dim();
    if boundary.x0.len() != n || boundary.x_target.len() != n {
        return Err(TranscribeError::StateDimMismatch {
            x0: boundary.x0.len(),
            xt: boundary.x_target.len(),
            n,
        });
    }
    let layout = DecisionLayout::new(grid.num_nodes(), n, m);

    let bounds = build_bounds(boundary, &layout)?;
    let node_times = grid
        .nodes()
        .iter()
        .map(|&tau| inverse_time_transform(tau, boundary.t0, boundary.tf))
        .collect();

    Ok(TranscribedNlp {
        plant,
        cost,
        boundary,
        grid,
        layout,
        bounds,
        node_times,
    })
}

/// Expand per-channel state/control boxes into decision-vector bounds;
/// path bounds apply at the interior collocation nodes and controls, not
/// at the equality-pinned endpoints.
fn build_bounds(
    boundary: &BoundarySpec,
    layout: &DecisionLayout,
) -> Result<Option<Vec<[f64; 2]>>, TranscribeError> {
    if boundary.state_bounds.is_none() && boundary.control_bounds.is_none() {
        return Ok(None);
    }
    let mut bounds = vec![[f64::NEG_INFINITY, f64::INFINITY]; layout.dim()];
    if let Some(sb) = &boundary.state_bounds {
        if sb.len() != layout.n {
            return Err(TranscribeError::BoundsDimMismatch {
                what: "state",
                got: sb.len(),
                expected: layout.n,
            });
        }
        for i in 1..=layout.k {
            let off = layout.state_offset(i);
            for (ch, b) in sb.iter().enumerate() {
                bounds[off + ch] = *b;
            }
        }
    }
    if let Some(cb) = &boundary.control_bounds {
        if cb.len() != layout.m {
            return Err(TranscribeError::BoundsDimMismatch {
                what: "control",
                got: cb.len(),
                expected: layout.m,
            });
        }
        for j in 0..layout.k {
            let off = layout.control_offset(j);
            for (ch, b) in cb.iter().enumerate() {
                bounds[off + ch] = *b;
            }
        }
    }
    Ok(Some(bounds))
}

impl TranscribedNlp<'_> {
    pub fn layout(&self) -> DecisionLayout {
        self.layout
    }

    pub fn grid(&self) -> &CollocationGrid {
        self.grid
    }

    pub fn boundary(&self) -> &BoundarySpec {
        self.boundary
    }

    fn half_horizon(&self) -> f64 {
        0.5 * self.boundary.horizon()
    }

    /// 2/(tf − t0), the dynamics-row scaling.
    fn row_scale(&self) -> f64 {
        1.0 / self.half_horizon()
    }

    fn state_block<'z>(&self, z: &'z DVector<f64>, i: usize) -> DVector<f64> {
        z.rows(self.layout.state_offset(i), self.layout.n).into_owned()
    }

    fn control_block<'z>(&self, z: &'z DVector<f64>, j: usize) -> DVector<f64> {
        z.rows(self.layout.control_offset(j), self.layout.m).into_owned()
    }
}

impl NlpProblem for TranscribedNlp<'_> {
    fn dim(&self) -> usize {
        self.layout.dim()
    }

    fn num_equalities(&self) -> usize {
        self.layout.n * (self.layout.k + 3)
    }

    fn objective(&self, z: &DVector<f64>) -> Result<f64, EvalError> {
        let xf = self.state_block(z, self.layout.k + 1);
        let mut total = self.cost.terminal(&xf, self.boundary.tf);
        for (k, (&w, &t)) in self.grid.weights().iter().zip(&self.node_times).enumerate() {
            let x = self.state_block(z, k + 1);
            let u = self.control_block(z, k);
            total += self.half_horizon() * w * self.cost.running(&x, &u, t);
        }
        if !total.is_finite() {
            return Err(EvalError::NonFinite { what: "objective", index: 0 });
        }
        Ok(total)
    }

    fn equalities(&self, z: &DVector<f64>) -> Result<DVector<f64>, EvalError> {
        let (n, k) = (self.layout.n, self.layout.k);
        let scale = self.row_scale();
        let d = self.grid.diff_matrix();
        let mut c = DVector::zeros(self.num_equalities());

        // Dynamics at each node, shared between collocation and
        // quadrature rows.
        let mut f_nodes = Vec::with_capacity(k);
        for (j, &t) in self.node_times.iter().enumerate() {
            let x = self.state_block(z, j + 1);
            let u = self.control_block(z, j);
            f_nodes.push(self.plant.dynamics(&x, &u, t)?);
        }

        for row in 0..k {
            let mut res = DVector::zeros(n);
            for col in 0..=k {
                res += self.state_block(z, col) * d[(row, col)];
            }
            res -= &f_nodes[row] * self.half_horizon();
            c.rows_mut(row * n, n).copy_from(&(res * scale));
        }

        let x0 = self.state_block(z, 0);
        let xf = self.state_block(z, k + 1);
        let mut quad = &xf - &x0;
        for (j, &w) in self.grid.weights().iter().enumerate() {
            quad -= &f_nodes[j] * (self.half_horizon() * w);
        }
        c.rows_mut(k * n, n).copy_from(&(quad * scale));

        c.rows_mut((k + 1) * n, n).copy_from(&(&x0 - &self.boundary.x0));
        c.rows_mut((k + 2) * n, n).copy_from(&(&xf - &self.boundary.x_target));

        for (index, v) in c.iter().enumerate() {
            if !v.is_finite() {
                return Err(EvalError::NonFinite { what: "residual", index });
            }
        }
        Ok(c)
    }

    fn bounds(&self) -> Option<&[[f64; 2]]> {
        self.bounds.as_deref()
    }

    fn gradient(&self, z: &DVector<f64>) -> Result<DVector<f64>, EvalError> {
        let (n, m, k) = (self.layout.n, self.layout.m, self.layout.k);
        let mut grad = DVector::zeros(self.dim());

        let xf = self.state_block(z, k + 1);
        let terminal = self.cost.terminal_derivs(&xf, self.boundary.tf);
        grad.rows_mut(self.layout.state_offset(k + 1), n).copy_from(&terminal.dx);

        for (j, (&w, &t)) in self.grid.weights().iter().zip(&self.node_times).enumerate() {
            let x = self.state_block(z, j + 1);
            let u = self.control_block(z, j);
            let derivs = self.cost.running_derivs(&x, &u, t);
            let factor = self.half_horizon() * w;
            grad.rows_mut(self.layout.state_offset(j + 1), n)
                .copy_from(&(&derivs.dx * factor));
            grad.rows_mut(self.layout.control_offset(j), m)
                .copy_from(&(&derivs.du * factor));
        }
        for (index, v) in grad.iter().enumerate() {
            if !v.is_finite() {
                return Err(EvalError::NonFinite { what: "gradient", index });
            }
        }
        Ok(grad)
    }

    fn equality_jacobian(&self, z: &DVector<f64>) -> Result<DMatrix<f64>, EvalError> {
        let (n, m, k) = (self.layout.n, self.layout.m, self.layout.k);
        let scale = self.row_scale();
        let d = self.grid.diff_matrix();
        let mut jac = DMatrix::zeros(self.num_equalities(), self.dim());

        // Plant Jacobians at the nodes, shared between row groups.
        let mut a_nodes = Vec::with_capacity(k);
        let mut b_nodes = Vec::with_capacity(k);
        for (j, &t) in self.node_times.iter().enumerate() {
            let x = self.state_block(z, j + 1);
            let u = self.control_block(z, j);
            a_nodes.push(self.plant.jacobian_x(&x, &u, t)?);
            b_nodes.push(self.plant.jacobian_u(&x, &u, t)?);
        }

        for row in 0..k {
            let row_off = row * n;
            // Scaled rows: (2/T)·Σ D[row][i]·X_i − f(X_row, U_row).
            for col in 0..=k {
                let coeff = scale * d[(row, col)];
                let off = self.layout.state_offset(col);
                for ch in 0..n {
                    jac[(row_off + ch, off + ch)] += coeff;
                }
            }
            let x_off = self.layout.state_offset(row + 1);
            let u_off = self.layout.control_offset(row);
            for r in 0..n {
                for cc in 0..n {
                    jac[(row_off + r, x_off + cc)] -= a_nodes[row][(r, cc)];
                }
                for cc in 0..m {
                    jac[(row_off + r, u_off + cc)] -= b_nodes[row][(r, cc)];
                }
            }
        }

        // Quadrature rows: (2/T)·(X_f − X₀) − Σ w_j·f(X_j, U_j).
        let quad_off = k * n;
        let x0_off = self.layout.state_offset(0);
        let xf_off = self.layout.state_offset(k + 1);
        for ch in 0..n {
            jac[(quad_off + ch, xf_off + ch)] += scale;
            jac[(quad_off + ch, x0_off + ch)] -= scale;
        }
        for (j, &w) in self.grid.weights().iter().enumerate() {
            let x_off = self.layout.state_offset(j + 1);
            let u_off = self.layout.control_offset(j);
            for r in 0..n {
                for cc in 0..n {
                    jac[(quad_off + r, x_off + cc)] -= w * a_nodes[j][(r, cc)];
                }
                for cc in 0..m {
                    jac[(quad_off + r, u_off + cc)] -= w * b_nodes[j][(r, cc)];
                }
            }
        }

        // Boundary pins.
        for ch in 0..n {
            jac[((k + 1) * n + ch, x0_off + ch)] = 1.0;
            jac[((k + 2) * n + ch, xf_off + ch)] = 1.0;
        }
        Ok(jac)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GuessStrategy {
    /// States linear in τ from x0 to x_target, controls zero.
    Linear,
    /// Euler rollout under zero control, sampled at the node times.
    Rollout,
}

pub fn initial_guess(
    plant: &dyn Plant,
    boundary: &BoundarySpec,
    grid: &CollocationGrid,
    strategy: GuessStrategy,
) -> DVector<f64> {
    let layout = DecisionLayout::new(grid.num_nodes(), plant.state_dim(), plant.control_dim());
    let controls = vec![DVector::zeros(layout.m); layout.k];
    // State sample points in τ: support {−1} ∪ nodes, then +1 for X_f.
    let mut taus: Vec<f64> = grid.support().to_vec();
    taus.push(1.0);

    let states = match strategy {
        GuessStrategy::Linear => taus
            .iter()
            .map(|&tau| {
                let s = 0.5 * (tau + 1.0);
                &boundary.x0 * (1.0 - s) + &boundary.x_target * s
            })
            .collect::<Vec<_>>(),
        GuessStrategy::Rollout => {
            const SUBSTEPS: usize = 50;
            let u = DVector::zeros(layout.m);
            let mut x = boundary.x0.clone();
            let mut t = boundary.t0;
            let mut states = vec![x.clone()];
            for &tau in &taus[1..] {
                let t_next = inverse_time_transform(tau, boundary.t0, boundary.tf);
                let dt = (t_next - t) / SUBSTEPS as f64;
                for _ in 0..SUBSTEPS {
                    match crate::core::step(plant, &x, &u, t, dt, Integrator::Euler) {
                        Ok(next) if next.iter().all(|v| v.is_finite()) => x = next,
                        // Dynamics failed along the free rollout: freeze
                        // the state and keep a usable guess.
                        _ => {}
                    }
                    t += dt;
                }
                t = t_next;
                states.push(x.clone());
            }
            states
        }
    };
    layout.pack(&states, &controls)
}
