//! Trajectory optimization benchmark library.
//!
//! Two solvers over a shared plant/cost abstraction:
//! - [`ddp`]: discrete-time differential dynamic programming with a
//!   Riccati backward pass and line-searched forward rollouts.
//! - [`gpm`]: Gauss pseudospectral transcription to a nonlinear program,
//!   solved by the in-house augmented-Lagrangian solver in [`nlp`].
//!
//! The [`models`] module ships the cart pole, double cart pole and
//! quadrotor benchmarks; [`harness`] drives everything from the CLI.

pub mod collocation;
pub mod core;
pub mod ddp;
pub mod gpm;
pub mod harness;
pub mod models;
pub mod nlp;
pub mod numeric;
