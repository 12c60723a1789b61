use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::str::FromStr;
use thiserror::Error;

use super::{CartPolePlant, DoubleCartPolePlant, QuadrotorPlant};
use crate::core::{BoundarySpec, Plant, QuadraticCost};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemId {
    Cartpole,
    DoubleCartpole,
    Quadrotor,
}

#[derive(Debug, Error)]
#[error("unknown problem id {0:?}; expected cartpole, double_cartpole or quadrotor")]
pub struct UnknownProblem(pub String);

impl FromStr for ProblemId {
    type Err = UnknownProblem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cartpole" => Ok(Self::Cartpole),
            "double_cartpole" => Ok(Self::DoubleCartpole),
            "quadrotor" => Ok(Self::Quadrotor),
            other => Err(UnknownProblem(other.to_string())),
        }
    }
}

impl std::fmt::Display for ProblemId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Self::Cartpole => "cartpole",
            Self::DoubleCartpole => "double_cartpole",
            Self::Quadrotor => "quadrotor",
        };
        f.write_str(s)
    }
}

/// A fully assembled benchmark: plant, cost, boundary conditions and the
/// per-problem solver defaults.
pub struct BenchmarkProblem {
    pub id: ProblemId,
    pub plant: Box<dyn Plant + Send + Sync>,
    pub cost: QuadraticCost,
    pub boundary: BoundarySpec,
    /// Default collocation point count for the pseudospectral solver.
    pub default_collocation: usize,
    /// Default discrete step for the shooting solver.
    pub default_dt: f64,
    /// Steady-state control used to seed both solvers: zero for the cart
    /// systems, hover thrust for the quadrotor.
    pub trim_control: DVector<f64>,
}

fn diag(entries: &[f64]) -> DMatrix<f64> {
    DMatrix::from_diagonal(&DVector::from_row_slice(entries))
}

/// Build one of the three benchmark problems with its default weights.
/// Swing-up tasks go from the downward equilibrium to upright at the
/// origin; the quadrotor flies between two hover points.
pub fn make_benchmark(id: ProblemId) -> BenchmarkProblem {
    match id {
        ProblemId::Cartpole => {
            let target = DVector::from_vec(vec![0.0, PI, 0.0, 0.0]);
            let cost = QuadraticCost::control_effort(
                4,
                diag(&[1e-2]),
                diag(&[60.0, 300.0, 20.0, 20.0]),
                target.clone(),
            );
            let boundary = BoundarySpec::new(DVector::zeros(4), target, 0.0, 2.0)
                .expect("fixed horizon is valid");
            BenchmarkProblem {
                id,
                plant: Box::new(CartPolePlant::default()),
                cost,
                boundary,
                default_collocation: 25,
                default_dt: 0.01,
                trim_control: DVector::zeros(1),
            }
        }
        ProblemId::DoubleCartpole => {
            let target = DVector::from_vec(vec![0.0, PI, PI, 0.0, 0.0, 0.0]);
            // A light running weight on the link angles keeps the swing
            // from stalling in the flat region near the top.
            let cost = QuadraticCost::new(
                diag(&[0.1, 1.0, 1.0, 0.1, 0.1, 0.1]),
                diag(&[1e-2]),
                diag(&[60.0, 500.0, 500.0, 30.0, 30.0, 30.0]),
                target.clone(),
            );
            let boundary = BoundarySpec::new(DVector::zeros(6), target, 0.0, 4.0)
                .expect("fixed horizon is valid");
            BenchmarkProblem {
                id,
                plant: Box::new(DoubleCartPolePlant::default()),
                cost,
                boundary,
                default_collocation: 40,
                default_dt: 0.01,
                trim_control: DVector::zeros(1),
            }
        }
        ProblemId::Quadrotor => {
            let mut x0 = DVector::zeros(12);
            x0[0] = -1.0;
            x0[1] = 1.0;
            x0[2] = 0.5;
            let mut target = DVector::zeros(12);
            target[0] = 0.5;
            target[1] = -1.0;
            target[2] = 1.5;
            // Running state weight penalizes excessive roll/pitch only.
            let mut q = DMatrix::zeros(12, 12);
            q[(6, 6)] = 1.0;
            q[(7, 7)] = 1.0;
            let mut wf = DMatrix::zeros(12, 12);
            for i in 0..3 {
                wf[(i, i)] = 200.0; // position
                wf[(3 + i, 3 + i)] = 20.0; // velocity
                wf[(6 + i, 6 + i)] = 20.0; // attitude
                wf[(9 + i, 9 + i)] = 2.0; // body rates
            }
            let cost = QuadraticCost::new(q, diag(&[1e-2, 1e-2, 1e-2, 1e-2]), wf, target.clone());
            let boundary =
                BoundarySpec::new(x0, target, 0.0, 3.0).expect("fixed horizon is valid");
            let plant = QuadrotorPlant::default();
            let trim_control = DVector::from_element(4, plant.hover_thrust());
            BenchmarkProblem {
                id,
                plant: Box::new(plant),
                cost,
                boundary,
                default_collocation: 30,
                default_dt: 0.01,
                trim_control,
            }
        }
    }
}
