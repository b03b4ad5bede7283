//! Integrability layer for indefinite affine hyperspheres with pointwise
//! S₃-symmetry.
//!
//! Along the distinguished direction `T` the frame coefficients `a22`, `a23` and
//! `a6` are explicit in `t` up to two functions `h, k` of the transversal
//! coordinates `(v, w)` ([`frame_coefficients`]); those functions must satisfy one
//! of six elliptic systems ([`pde_rhs`]). This crate evaluates the coefficient
//! families, checks their defining ODEs, and solves the elliptic systems on a
//! uniform grid with Dirichlet data ([`solve`]).

pub mod case;
pub mod coefficients;
pub mod grid;
pub mod io;
pub mod solver;

pub use case::*;
pub use coefficients::*;
pub use grid::*;
pub use io::*;
pub use solver::*;

/// Errors of the S₃ layer.
#[derive(Debug, thiserror::Error)]
pub enum S3Error {
    #[error("singular point: {0}")]
    SingularPoint(String),
    #[error("solver did not converge after {iterations} sweeps (last residual {residual:.3e}): {reason}")]
    DidNotConverge { iterations: usize, residual: f64, reason: String },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid case name {0:?}; expected h-1|h+1|h0 followed by -gen|-ex")]
    InvalidCase(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
