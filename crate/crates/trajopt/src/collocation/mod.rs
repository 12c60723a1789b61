//! Legendre-Gauss machinery: polynomials, nodes, quadrature weights,
//! Lagrange interpolation and the pseudospectral differentiation matrix.

mod grid;
mod interp;
mod legendre;

pub use grid::{gauss_quadrature, CollocationGrid, GridError};
pub use interp::LagrangeBasis;
pub use legendre::{legendre_eval, lg_nodes, lg_weights, LegendreError};
