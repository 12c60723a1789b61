//! Discrete-time differential dynamic programming: linearize along a
//! nominal trajectory, run the backward Riccati pass for gains, roll
//! forward with a line search, iterate to convergence.

mod backward;
mod forward;
mod solve;

pub use backward::{
    backward_pass, expand_cost, linearize_step, BackwardError, BackwardPass, CostExpansion,
    GainStep, LinearizedStep, ValueExpansion,
};
pub use forward::{forward_pass, trajectory_cost, ForwardError};
pub use solve::{ddp_solve, DdpError, DdpOptions, DdpReport, TrialRecord};
