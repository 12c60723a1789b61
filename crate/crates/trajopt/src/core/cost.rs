use nalgebra::{DMatrix, DVector};

/// First and second derivatives of the running cost at a point.
/// `cross_ux` is ∇ᵤₓL (m×n); the symmetric partner ∇ₓᵤL is its transpose.
#[derive(Debug, Clone)]
pub struct RunningDerivs {
    pub value: f64,
    pub dx: DVector<f64>,
    pub du: DVector<f64>,
    pub dxx: DMatrix<f64>,
    pub duu: DMatrix<f64>,
    pub cross_ux: DMatrix<f64>,
}

#[derive(Debug, Clone)]
pub struct TerminalDerivs {
    pub value: f64,
    pub dx: DVector<f64>,
    pub dxx: DMatrix<f64>,
}

/// Running cost rate `L(x, u, t)` and terminal cost `φ(x, t_f)` with
/// analytic derivatives.
pub trait Cost {
    fn running(&self, x: &DVector<f64>, u: &DVector<f64>, t: f64) -> f64;
    fn terminal(&self, x: &DVector<f64>, tf: f64) -> f64;
    fn running_derivs(&self, x: &DVector<f64>, u: &DVector<f64>, t: f64) -> RunningDerivs;
    fn terminal_derivs(&self, x: &DVector<f64>, tf: f64) -> TerminalDerivs;
}

/// Quadratic cost
///   L(x, u) = (x − x_ref)ᵀ Q (x − x_ref) + uᵀ R u,
///   φ(x)    = (x − x_target)ᵀ W_f (x − x_target),
/// matching the benchmark cost forms (no ½ factor).
#[derive(Debug, Clone)]
pub struct QuadraticCost {
    pub state_weight: DMatrix<f64>,
    pub control_weight: DMatrix<f64>,
    pub terminal_weight: DMatrix<f64>,
    pub state_ref: DVector<f64>,
    pub target: DVector<f64>,
}

impl QuadraticCost {
    pub fn new(
        state_weight: DMatrix<f64>,
        control_weight: DMatrix<f64>,
        terminal_weight: DMatrix<f64>,
        target: DVector<f64>,
    ) -> Self {
        let n = state_weight.nrows();
        assert_eq!(state_weight.ncols(), n);
        assert_eq!(terminal_weight.nrows(), n);
        assert_eq!(target.len(), n);
        Self {
            state_ref: DVector::zeros(n),
            state_weight,
            control_weight,
            terminal_weight,
            target,
        }
    }

    /// Control-effort-only cost: Q = 0.
    pub fn control_effort(
        n: usize,
        control_weight: DMatrix<f64>,
        terminal_weight: DMatrix<f64>,
        target: DVector<f64>,
    ) -> Self {
        Self::new(DMatrix::zeros(n, n), control_weight, terminal_weight, target)
    }
}

impl Cost for QuadraticCost {
    fn running(&self, x: &DVector<f64>, u: &DVector<f64>, _t: f64) -> f64 {
        let dx = x - &self.state_ref;
        (dx.transpose() * &self.state_weight * &dx)[(0, 0)]
            + (u.transpose() * &self.control_weight * u)[(0, 0)]
    }

    fn terminal(&self, x: &DVector<f64>, _tf: f64) -> f64 {
        let e = x - &self.target;
        (e.transpose() * &self.terminal_weight * &e)[(0, 0)]
    }

    fn running_derivs(&self, x: &DVector<f64>, u: &DVector<f64>, t: f64) -> RunningDerivs {
        let dx = x - &self.state_ref;
        RunningDerivs {
            value: self.running(x, u, t),
            dx: 2.0 * &self.state_weight * dx,
            du: 2.0 * &self.control_weight * u,
            dxx: 2.0 * self.state_weight.clone(),
            duu: 2.0 * self.control_weight.clone(),
            cross_ux: DMatrix::zeros(u.len(), x.len()),
        }
    }

    fn terminal_derivs(&self, x: &DVector<f64>, tf: f64) -> TerminalDerivs {
        let e = x - &self.target;
        TerminalDerivs {
            value: self.terminal(x, tf),
            dx: 2.0 * &self.terminal_weight * e,
            dxx: 2.0 * self.terminal_weight.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::finite_diff_jacobian;

    #[test]
    fn quadratic_derivs_match_finite_differences() {
        let q = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 2.0]));
        let r = DMatrix::from_diagonal(&DVector::from_vec(vec![0.5]));
        let wf = DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, 4.0]));
        let cost = QuadraticCost::new(q, r, wf, DVector::from_vec(vec![1.0, -1.0]));
        let x = DVector::from_vec(vec![0.3, -0.8]);
        let u = DVector::from_vec(vec![0.7]);

        let d = cost.running_derivs(&x, &u, 0.0);
        let fd_dx = finite_diff_jacobian(
            &|z: &DVector<f64>| DVector::from_vec(vec![cost.running(z, &u, 0.0)]),
            &x,
            1e-6,
        )
        .unwrap();
        let fd_du = finite_diff_jacobian(
            &|z: &DVector<f64>| DVector::from_vec(vec![cost.running(&x, z, 0.0)]),
            &u,
            1e-6,
        )
        .unwrap();
        for i in 0..2 {
            assert!((d.dx[i] - fd_dx[(0, i)]).abs() < 1e-5);
        }
        assert!((d.du[0] - fd_du[(0, 0)]).abs() < 1e-5);

        // Symmetry invariants.
        assert!((d.dxx.clone() - d.dxx.transpose()).abs().max() < 1e-12);
        assert!((d.duu.clone() - d.duu.transpose()).abs().max() < 1e-12);

        let t = cost.terminal_derivs(&x, 1.0);
        let fd_tx = finite_diff_jacobian(
            &|z: &DVector<f64>| DVector::from_vec(vec![cost.terminal(z, 1.0)]),
            &x,
            1e-6,
        )
        .unwrap();
        for i in 0..2 {
            assert!((t.dx[i] - fd_tx[(0, i)]).abs() < 1e-5);
        }
        assert!((t.dxx.clone() - t.dxx.transpose()).abs().max() < 1e-12);
    }
}
