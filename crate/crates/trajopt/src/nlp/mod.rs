//! In-house solver for equality-constrained programs with box bounds:
//! augmented-Lagrangian outer loop around a projected quasi-Newton
//! inner minimization.

mod kkt;
mod problem;
mod solve;

pub use kkt::{kkt_check, KktReport};
pub use problem::{EvalError, NlpProblem};
pub use solve::{solve, NlpOptions, NlpSolution, NlpStatus};
