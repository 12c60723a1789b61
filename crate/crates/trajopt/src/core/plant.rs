use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::numeric::{Dual, Scalar};

#[derive(Debug, Error)]
pub enum PlantError {
    #[error("dynamics produced a non-finite value in component {index}")]
    NonFinite { index: usize },
    #[error("pitch angle {pitch} is within {tol} of the Euler-angle singularity")]
    KinematicSingularity { pitch: f64, tol: f64 },
    #[error("mass matrix is singular at the evaluated configuration")]
    SingularMassMatrix,
    #[error("expected state dim {expected_n} and control dim {expected_m}, got {n} and {m}")]
    DimensionMismatch {
        expected_n: usize,
        expected_m: usize,
        n: usize,
        m: usize,
    },
}

/// Continuous dynamics `f(x, u, t)` with Jacobians.
pub trait Plant {
    fn state_dim(&self) -> usize;
    fn control_dim(&self) -> usize;
    fn dynamics(&self, x: &DVector<f64>, u: &DVector<f64>, t: f64)
        -> Result<DVector<f64>, PlantError>;
    fn jacobian_x(&self, x: &DVector<f64>, u: &DVector<f64>, t: f64)
        -> Result<DMatrix<f64>, PlantError>;
    fn jacobian_u(&self, x: &DVector<f64>, u: &DVector<f64>, t: f64)
        -> Result<DMatrix<f64>, PlantError>;
}

/// Dynamics written once over a generic scalar; the blanket [`Plant`]
/// impl derives exact Jacobians by forward-mode differentiation.
pub trait SmoothDynamics {
    fn state_dim(&self) -> usize;
    fn control_dim(&self) -> usize;
    fn eval<T: Scalar>(&self, x: &[T], u: &[T], t: f64) -> Result<Vec<T>, PlantError>;
}

impl<P: SmoothDynamics> Plant for P {
    fn state_dim(&self) -> usize {
        SmoothDynamics::state_dim(self)
    }

    fn control_dim(&self) -> usize {
        SmoothDynamics::control_dim(self)
    }

    fn dynamics(
        &self,
        x: &DVector<f64>,
        u: &DVector<f64>,
        t: f64,
    ) -> Result<DVector<f64>, PlantError> {
        check_dims(self, x, u)?;
        let out = self.eval(x.as_slice(), u.as_slice(), t)?;
        for (index, v) in out.iter().enumerate() {
            if !v.is_finite() {
                return Err(PlantError::NonFinite { index });
            }
        }
        Ok(DVector::from_vec(out))
    }

    fn jacobian_x(
        &self,
        x: &DVector<f64>,
        u: &DVector<f64>,
        t: f64,
    ) -> Result<DMatrix<f64>, PlantError> {
        check_dims(self, x, u)?;
        let n = x.len();
        let u_dual: Vec<Dual> = u.iter().map(|&v| Dual::constant(v)).collect();
        let mut jac = DMatrix::zeros(n, n);
        for col in 0..n {
            let x_dual: Vec<Dual> = x
                .iter()
                .enumerate()
                .map(|(i, &v)| if i == col { Dual::seed(v) } else { Dual::constant(v) })
                .collect();
            let out = self.eval(&x_dual, &u_dual, t)?;
            for (row, d) in out.iter().enumerate() {
                if !d.d.is_finite() {
                    return Err(PlantError::NonFinite { index: row });
                }
                jac[(row, col)] = d.d;
            }
        }
        Ok(jac)
    }

    fn jacobian_u(
        &self,
        x: &DVector<f64>,
        u: &DVector<f64>,
        t: f64,
    ) -> Result<DMatrix<f64>, PlantError> {
        check_dims(self, x, u)?;
        let n = x.len();
        let m = u.len();
        let x_dual: Vec<Dual> = x.iter().map(|&v| Dual::constant(v)).collect();
        let mut jac = DMatrix::zeros(n, m);
        for col in 0..m {
            let u_dual: Vec<Dual> = u
                .iter()
                .enumerate()
                .map(|(i, &v)| if i == col { Dual::seed(v) } else { Dual::constant(v) })
                .collect();
            let out = self.eval(&x_dual, &u_dual, t)?;
            for (row, d) in out.iter().enumerate() {
                if !d.d.is_finite() {
                    return Err(PlantError::NonFinite { index: row });
                }
                jac[(row, col)] = d.d;
            }
        }
        Ok(jac)
    }
}

fn check_dims<P: SmoothDynamics>(
    plant: &P,
    x: &DVector<f64>,
    u: &DVector<f64>,
) -> Result<(), PlantError> {
    let (n, m) = (SmoothDynamics::state_dim(plant), SmoothDynamics::control_dim(plant));
    if x.len() != n || u.len() != m {
        return Err(PlantError::DimensionMismatch {
            expected_n: n,
            expected_m: m,
            n: x.len(),
            m: u.len(),
        });
    }
    Ok(())
}

/// Linear time-invariant test plant `ẋ = A x + B u`.
#[derive(Debug, Clone)]
pub struct LinearPlant {
    pub a: DMatrix<f64>,
    pub b: DMatrix<f64>,
}

impl SmoothDynamics for LinearPlant {
    fn state_dim(&self) -> usize {
        self.a.nrows()
    }

    fn control_dim(&self) -> usize {
        self.b.ncols()
    }

    fn eval<T: Scalar>(&self, x: &[T], u: &[T], _t: f64) -> Result<Vec<T>, PlantError> {
        let n = self.a.nrows();
        let mut out = vec![T::constant(0.0); n];
        for i in 0..n {
            let mut acc = T::constant(0.0);
            for (j, &xj) in x.iter().enumerate() {
                acc = acc + T::constant(self.a[(i, j)]) * xj;
            }
            for (j, &uj) in u.iter().enumerate() {
                acc = acc + T::constant(self.b[(i, j)]) * uj;
            }
            out[i] = acc;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_plant_jacobians_are_exact() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -2.0, -0.5]);
        let b = DMatrix::from_row_slice(2, 1, &[0.0, 1.0]);
        let plant = LinearPlant { a: a.clone(), b: b.clone() };
        let x = DVector::from_vec(vec![0.3, -0.7]);
        let u = DVector::from_vec(vec![0.2]);
        let jx = plant.jacobian_x(&x, &u, 0.0).unwrap();
        let ju = plant.jacobian_u(&x, &u, 0.0).unwrap();
        assert!((jx - a).abs().max() < 1e-15);
        assert!((ju - b).abs().max() < 1e-15);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let plant = LinearPlant {
            a: DMatrix::identity(2, 2),
            b: DMatrix::zeros(2, 1),
        };
        let x = DVector::from_vec(vec![1.0]);
        let u = DVector::from_vec(vec![0.0]);
        assert!(matches!(
            plant.dynamics(&x, &u, 0.0),
            Err(PlantError::DimensionMismatch { .. })
        ));
    }
}
