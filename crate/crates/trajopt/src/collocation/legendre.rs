use thiserror::Error;

#[derive(Debug, Error)]
pub enum LegendreError {
    #[error("Newton iteration for root {index} of P_{degree} did not converge")]
    RootNonConvergence { degree: usize, index: usize },
    #[error("quadrature weight undefined at node {0} on the boundary")]
    BoundaryNode(f64),
}

/// Degree-K Legendre polynomial with its first two derivatives, by the
/// three-term recurrence differentiated twice.
pub fn legendre_eval(degree: usize, tau: f64) -> (f64, f64, f64) {
    if degree == 0 {
        return (1.0, 0.0, 0.0);
    }
    // (p, dp, ddp) for degrees k-1 and k.
    let mut prev = (1.0, 0.0, 0.0);
    let mut curr = (tau, 1.0, 0.0);
    for k in 1..degree {
        let a = (2 * k + 1) as f64;
        let b = k as f64;
        let c = (k + 1) as f64;
        let p = (a * tau * curr.0 - b * prev.0) / c;
        let dp = (a * (curr.0 + tau * curr.1) - b * prev.1) / c;
        let ddp = (a * (2.0 * curr.1 + tau * curr.2) - b * prev.2) / c;
        prev = curr;
        curr = (p, dp, ddp);
    }
    curr
}

/// All K roots of P_K, Newton-refined from Chebyshev-based initial
/// guesses, sorted ascending and symmetrized about zero.
pub fn lg_nodes(degree: usize) -> Result<Vec<f64>, LegendreError> {
    assert!(degree >= 1, "need at least one collocation point");
    let mut nodes = vec![0.0; degree];
    for i in 0..degree {
        let mut tau =
            -(std::f64::consts::PI * (i as f64 + 0.75) / (degree as f64 + 0.5)).cos();
        let mut converged = false;
        for _ in 0..100 {
            let (p, dp, _) = legendre_eval(degree, tau);
            if p.abs() < 1e-14 {
                converged = true;
                break;
            }
            let step = p / dp;
            tau -= step;
            // At high degree the slope near boundary roots amplifies the
            // floor on |P_K|; a vanishing Newton step is also converged.
            if step.abs() < 1e-15 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(LegendreError::RootNonConvergence { degree, index: i });
        }
        nodes[i] = tau;
    }
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // Exact symmetry about zero.
    for i in 0..degree / 2 {
        let mag = 0.5 * (nodes[degree - 1 - i] - nodes[i]);
        nodes[i] = -mag;
        nodes[degree - 1 - i] = mag;
    }
    if degree % 2 == 1 {
        nodes[degree / 2] = 0.0;
    }
    Ok(nodes)
}

/// Gauss-Legendre quadrature weights wᵢ = 2 / ((1 − τᵢ²)·P′_K(τᵢ)²).
pub fn lg_weights(nodes: &[f64]) -> Result<Vec<f64>, LegendreError> {
    let degree = nodes.len();
    nodes
        .iter()
        .map(|&tau| {
            let denom = 1.0 - tau * tau;
            if denom <= 0.0 {
                return Err(LegendreError::BoundaryNode(tau));
            }
            let (_, dp, _) = legendre_eval(degree, tau);
            Ok(2.0 / (denom * dp * dp))
        })
        .collect()
}
