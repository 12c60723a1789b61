//! Gauss pseudospectral transcription: states and controls are
//! represented by Lagrange interpolants on Legendre-Gauss nodes, the
//! dynamics become algebraic residuals at those nodes, and the result is
//! a finite-dimensional program for the [`crate::nlp`] solver.

mod extract;
mod layout;
mod transcribe;

pub use extract::extract_trajectory;
pub use layout::DecisionLayout;
pub use transcribe::{
    initial_guess, inverse_time_transform, time_transform, transcribe, GuessStrategy,
    TranscribeError, TranscribedNlp,
};
