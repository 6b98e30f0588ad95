//! Finite-difference benchmarks.
mod american;
mod boundary;
mod european;
mod grid;
mod jump;
mod tridiag;

pub use american::{psor_price_american_put, PsorSettings};
pub use boundary::{boundary_value, BoundaryVariant};
pub use european::{cn_price_european, cn_solve_european, CnSolution};
pub use grid::GridSpec;
pub use jump::apply_dividend_jump;
pub use tridiag::solve_tridiagonal;
