use nalgebra::DMatrix;
use thiserror::Error;

use super::interp::LagrangeBasis;
use super::legendre::{legendre_eval, lg_nodes, lg_weights, LegendreError};

#[derive(Debug, Error)]
pub enum GridError {
    #[error(transparent)]
    Legendre(#[from] LegendreError),
    #[error("non-finite integrand value at node {0}")]
    NonFiniteIntegrand(f64),
}

/// Legendre-Gauss collocation grid: K interior nodes, quadrature
/// weights, the K+1 interpolation support {−1} ∪ nodes and the K×(K+1)
/// differentiation matrix mapping support values to derivative values at
/// the nodes.
#[derive(Debug, Clone)]
pub struct CollocationGrid {
    k: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    support: Vec<f64>,
    d: DMatrix<f64>,
    basis: LagrangeBasis,
}

impl CollocationGrid {
    pub fn new(k: usize) -> Result<Self, GridError> {
        let nodes = lg_nodes(k)?;
        let weights = lg_weights(&nodes)?;
        let mut support = Vec::with_capacity(k + 1);
        support.push(-1.0);
        support.extend_from_slice(&nodes);
        let d = diff_matrix(k, &nodes, &support);
        let basis = LagrangeBasis::new(support.clone());
        Ok(Self { k, nodes, weights, support, d, basis })
    }

    pub fn num_nodes(&self) -> usize {
        self.k
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Interpolation support {−1} ∪ nodes.
    pub fn support(&self) -> &[f64] {
        &self.support
    }

    /// Differentiation matrix, rows indexed by collocation node, columns
    /// by support point.
    pub fn diff_matrix(&self) -> &DMatrix<f64> {
        &self.d
    }

    /// Barycentric basis on the support points.
    pub fn basis(&self) -> &LagrangeBasis {
        &self.basis
    }
}

/// Gauss quadrature of `f` over [−1, 1] on the grid nodes.
pub fn gauss_quadrature<F>(f: F, grid: &CollocationGrid) -> Result<f64, GridError>
where
    F: Fn(f64) -> f64,
{
    let mut acc = 0.0;
    for (&tau, &w) in grid.nodes().iter().zip(grid.weights()) {
        let v = f(tau);
        if !v.is_finite() {
            return Err(GridError::NonFiniteIntegrand(tau));
        }
        acc += w * v;
    }
    Ok(acc)
}

/// Pseudospectral differentiation matrix on the support {−1} ∪ nodes,
/// built from g(τ) = (1+τ)·P_K(τ): off-diagonal entries are
/// g′(τ_k) / ((τ_k − τ_i)·g′(τ_i)), diagonal entries g″(τ_k)/(2·g′(τ_k)).
fn diff_matrix(k: usize, nodes: &[f64], support: &[f64]) -> DMatrix<f64> {
    let g1 = |tau: f64| {
        let (p, dp, _) = legendre_eval(k, tau);
        (1.0 + tau) * dp + p
    };
    let g2 = |tau: f64| {
        let (_, dp, ddp) = legendre_eval(k, tau);
        (1.0 + tau) * ddp + 2.0 * dp
    };
    let mut d = DMatrix::zeros(k, k + 1);
    for row in 0..k {
        let tau_k = nodes[row];
        for col in 0..=k {
            let tau_i = support[col];
            d[(row, col)] = if tau_k == tau_i {
                g2(tau_k) / (2.0 * g1(tau_k))
            } else {
                g1(tau_k) / ((tau_k - tau_i) * g1(tau_i))
            };
        }
    }
    d
}
