//! Shared abstractions for plants, costs, trajectories and numerical
//! differentiation used by both solvers.

mod boundary;
mod cost;
mod numdiff;
mod plant;
mod rollout;
mod trajectory;

pub use boundary::BoundarySpec;
pub use cost::{Cost, QuadraticCost, RunningDerivs, TerminalDerivs};
pub use numdiff::{default_step, finite_diff_jacobian, NumDiffError};
pub use plant::{LinearPlant, Plant, PlantError, SmoothDynamics};
pub use rollout::{rollout, step, Integrator, RolloutError};
pub use trajectory::{Trajectory, TrajectoryError};
