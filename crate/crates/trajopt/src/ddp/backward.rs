use nalgebra::{Cholesky, DMatrix, DVector};
use thiserror::Error;

use crate::core::{Cost, Plant, PlantError, Trajectory};

/// Discrete transition of the linearized dynamics over one step:
/// Φ = I + ∇ₓF·dt, B = ∇ᵤF·dt.
#[derive(Debug, Clone)]
pub struct LinearizedStep {
    pub phi: DMatrix<f64>,
    pub b: DMatrix<f64>,
}

/// Quadratic expansion of the running cost over one step, scaled by dt.
/// The x-u cross block ∇ₓᵤL is the transpose of `n_ux` and is not stored.
#[derive(Debug, Clone)]
pub struct CostExpansion {
    pub q0: f64,
    pub qvec: DVector<f64>,
    pub rvec: DVector<f64>,
    pub q: DMatrix<f64>,
    pub r: DMatrix<f64>,
    pub n_ux: DMatrix<f64>,
}

/// Local quadratic model of the cost-to-go.
#[derive(Debug, Clone)]
pub struct ValueExpansion {
    pub v: f64,
    pub vx: DVector<f64>,
    pub vxx: DMatrix<f64>,
}

/// Per-step backward-pass products: feedforward/feedback gains and the
/// g, G, H diagnostics.
#[derive(Debug, Clone)]
pub struct GainStep {
    pub l: DVector<f64>,
    pub l_mat: DMatrix<f64>,
    pub g: DVector<f64>,
    pub g_mat: DMatrix<f64>,
    pub h: DMatrix<f64>,
}

#[derive(Debug, Clone)]
pub struct BackwardPass {
    pub gains: Vec<GainStep>,
    pub values: Vec<ValueExpansion>,
    /// Predicted cost change for a unit step: Σ gᵀl (linear part).
    pub dv1: f64,
    /// Predicted cost change, quadratic part: Σ ½ lᵀHl.
    pub dv2: f64,
}

#[derive(Debug, Error)]
pub enum BackwardError {
    #[error("H is not positive definite at step {step}; raise regularization")]
    RegularizationNeeded { step: usize },
    #[error("plant evaluation failed at step {step}: {source}")]
    Plant {
        step: usize,
        #[source]
        source: PlantError,
    },
}

/// Linearize the plant over one step of length `dt`.
pub fn linearize_step(
    plant: &dyn Plant,
    x: &DVector<f64>,
    u: &DVector<f64>,
    t: f64,
    dt: f64,
) -> Result<LinearizedStep, PlantError> {
    let n = plant.state_dim();
    let phi = DMatrix::identity(n, n) + plant.jacobian_x(x, u, t)? * dt;
    let b = plant.jacobian_u(x, u, t)? * dt;
    Ok(LinearizedStep { phi, b })
}

/// Expand the running cost over one step, scaled by dt.
pub fn expand_cost(
    cost: &dyn Cost,
    x: &DVector<f64>,
    u: &DVector<f64>,
    t: f64,
    dt: f64,
) -> CostExpansion {
    let d = cost.running_derivs(x, u, t);
    CostExpansion {
        q0: d.value * dt,
        qvec: d.dx * dt,
        rvec: d.du * dt,
        q: d.dxx * dt,
        r: d.duu * dt,
        n_ux: d.cross_ux * dt,
    }
}

/// Backward Riccati recursion along the nominal trajectory.
///
/// With primed quantities at step k+1:
///   g = r + Bᵀ·Vx′, G = N + Bᵀ·Vxx′·Φ, H = R + Bᵀ·Vxx′·B + μ·I,
///   l = −H⁻¹·g, L = −H⁻¹·G,
/// and the value recursions for V, Vx, Vxx. H must pass a Cholesky
/// factorization at every step (strengthened Legendre-Clebsch); failure
/// signals the caller to raise μ and retry.
pub fn backward_pass(
    plant: &dyn Plant,
    cost: &dyn Cost,
    traj: &Trajectory,
    mu: f64,
) -> Result<BackwardPass, BackwardError> {
    let n_steps = traj.num_steps();
    let m = plant.control_dim();
    let dt = traj.dt();

    let term = cost.terminal_derivs(traj.final_state(), traj.final_time());
    let mut value = ValueExpansion {
        v: term.value,
        vx: term.dx,
        vxx: symmetrize(term.dxx),
    };

    let mut gains: Vec<GainStep> = Vec::with_capacity(n_steps);
    let mut values: Vec<ValueExpansion> = Vec::with_capacity(n_steps + 1);
    values.push(value.clone());
    let mut dv1 = 0.0;
    let mut dv2 = 0.0;

    for step in (0..n_steps).rev() {
        let x = &traj.states()[step];
        let u = &traj.controls()[step];
        let t = traj.times()[step];
        let lin = linearize_step(plant, x, u, t, dt)
            .map_err(|source| BackwardError::Plant { step, source })?;
        let exp = expand_cost(cost, x, u, t, dt);

        let bt = lin.b.transpose();
        let bt_vxx = &bt * &value.vxx;
        let g = &exp.rvec + &bt * &value.vx;
        let g_mat = &exp.n_ux + &bt_vxx * &lin.phi;
        let h = symmetrize(&exp.r + &bt_vxx * &lin.b + DMatrix::identity(m, m) * mu);

        let chol = Cholesky::new(h.clone())
            .ok_or(BackwardError::RegularizationNeeded { step })?;
        let l = -chol.solve(&g);
        let l_mat = -chol.solve(&g_mat);

        let h_l = &h * &l;
        let v = exp.q0 + value.v + g.dot(&l) + 0.5 * l.dot(&h_l);
        let vx = &exp.qvec
            + lin.phi.transpose() * &value.vx
            + l_mat.transpose() * (&g + &h_l)
            + g_mat.transpose() * &l;
        let vxx = symmetrize(
            &exp.q
                + lin.phi.transpose() * &value.vxx * &lin.phi
                + l_mat.transpose() * &h * &l_mat
                + l_mat.transpose() * &g_mat
                + g_mat.transpose() * &l_mat,
        );

        dv1 += g.dot(&l);
        dv2 += 0.5 * l.dot(&h_l);
        gains.push(GainStep { l, l_mat, g, g_mat, h });
        value = ValueExpansion { v, vx, vxx };
        values.push(value.clone());
    }

    gains.reverse();
    values.reverse();
    Ok(BackwardPass { gains, values, dv1, dv2 })
}

fn symmetrize(m: DMatrix<f64>) -> DMatrix<f64> {
    let mt = m.transpose();
    (m + mt) * 0.5
}
