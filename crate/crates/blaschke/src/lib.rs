//! Numerical equiaffine invariants of hypersurface immersions `R³ ⊃ U → R⁴`.
//!
//! The pipeline takes a fourth-order finite-difference jet of the immersion
//! (evaluated in double-double precision, see [`dd`]) and computes, by
//! truncated Taylor arithmetic, the affine metric `h`, the Blaschke normal `ξ`,
//! the shape operator `S`, the difference tensor `K`, the Pick invariant `J`
//! and the scalar curvature `κ̂`. On top of that sit checks of the hypersphere
//! condition, the Gauss equation (theorema egregium), the Codazzi equation,
//! and per-point stabilizer scans.

pub mod curvature;
pub mod data;
pub mod dd;
pub mod jet;
pub mod sampler;
pub mod scan;
pub mod taylor;

pub use curvature::*;
pub use data::*;
pub use jet::{numeric_jet, numeric_partials, Jet};
pub use sampler::*;
pub use scan::*;

/// Errors of the Blaschke pipeline.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BlaschkeError {
    #[error("point {point:?} is too close to the domain boundary (or the sampler is not finite there)")]
    OutOfDomain { point: [f64; 3] },
    #[error("degenerate hypersurface: |det G| = {det:.3e}")]
    DegenerateHypersurface { det: f64 },
    #[error("not an affine hypersphere at this point: ‖S − H·Id‖ = {residual:.3e}")]
    NotAHypersphere { residual: f64 },
    #[error("the affine metric is definite; a Lorentzian metric is required")]
    DefiniteMetric,
    #[error("illegal parameter: {0}")]
    IllegalParameter(String),
    #[error(transparent)]
    Cubic(#[from] cubic_form::CubicError),
}
