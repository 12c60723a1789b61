use nalgebra::DVector;

/// Barycentric Lagrange interpolation on a fixed set of distinct support
/// points.
#[derive(Debug, Clone)]
pub struct LagrangeBasis {
    support: Vec<f64>,
    bary_weights: Vec<f64>,
}

impl LagrangeBasis {
    pub fn new(support: Vec<f64>) -> Self {
        let n = support.len();
        assert!(n >= 1, "need at least one support point");
        let mut bary_weights = vec![1.0; n];
        for j in 0..n {
            for i in 0..n {
                if i != j {
                    bary_weights[j] /= support[j] - support[i];
                }
            }
        }
        Self { support, bary_weights }
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    /// Evaluate the interpolant of scalar nodal values at `tau`.
    /// A query coincident with a support point returns the stored value.
    pub fn eval(&self, values: &[f64], tau: f64) -> f64 {
        debug_assert_eq!(values.len(), self.support.len());
        let mut num = 0.0;
        let mut den = 0.0;
        for j in 0..self.support.len() {
            let diff = tau - self.support[j];
            if diff == 0.0 {
                return values[j];
            }
            let w = self.bary_weights[j] / diff;
            num += w * values[j];
            den += w;
        }
        num / den
    }

    /// Evaluate the interpolant of vector nodal values at `tau`.
    pub fn eval_vector(&self, values: &[DVector<f64>], tau: f64) -> DVector<f64> {
        debug_assert_eq!(values.len(), self.support.len());
        let dim = values[0].len();
        let mut num = DVector::zeros(dim);
        let mut den = 0.0;
        for j in 0..self.support.len() {
            let diff = tau - self.support[j];
            if diff == 0.0 {
                return values[j].clone();
            }
            let w = self.bary_weights[j] / diff;
            num += &values[j] * w;
            den += w;
        }
        num / den
    }

    /// Derivative values of the cardinal basis polynomials at `tau`,
    /// i.e. row [𝓛̇₀(tau) … 𝓛̇ₙ(tau)], via differentiation of the
    /// first barycentric form.
    pub fn derivative_row(&self, tau: f64) -> Vec<f64> {
        let n = self.support.len();
        // At a support point use the standard differentiation-matrix row.
        if let Some(k) = self.support.iter().position(|&s| s == tau) {
            let mut row = vec![0.0; n];
            let mut diag = 0.0;
            for i in 0..n {
                if i != k {
                    let v = (self.bary_weights[i] / self.bary_weights[k])
                        / (self.support[k] - self.support[i]);
                    row[i] = v;
                    diag -= v;
                }
            }
            row[k] = diag;
            return row;
        }
        // Off-support: differentiate l(tau) * w_j / (tau - x_j) directly.
        let node_products: Vec<f64> = (0..n)
            .map(|j| self.bary_weights[j] / (tau - self.support[j]))
            .collect();
        let s: f64 = node_products.iter().sum();
        let sp: f64 = (0..n)
            .map(|j| -self.bary_weights[j] / (tau - self.support[j]).powi(2))
            .sum();
        (0..n)
            .map(|j| {
                let pj = node_products[j];
                let dpj = -self.bary_weights[j] / (tau - self.support[j]).powi(2);
                (dpj * s - pj * sp) / (s * s)
            })
            .collect()
    }
}
