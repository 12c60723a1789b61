//! Benchmark plants with analytic Jacobians and their cost functions.

mod benchmark;
mod cartpole;
mod double_cartpole;
mod quadrotor;

pub use benchmark::{make_benchmark, BenchmarkProblem, ProblemId, UnknownProblem};
pub use cartpole::CartPolePlant;
pub use double_cartpole::DoubleCartPolePlant;
pub use quadrotor::QuadrotorPlant;
