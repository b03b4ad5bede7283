//! Explicit affine hypersphere families in R⁴ with pointwise symmetry.
//!
//! Generators return [`blaschke::ImmersionSampler`]s together with the symmetry
//! class and the constant `H` they are expected to exhibit:
//!
//! - the quadrics `(x₁²+x₂²)(x₃²±x₄²) = 1` (Z₂×Z₂ and Z₂ symmetry);
//! - warped products `(γ₁, γ₂ψ)` over proper affine spheres `ψ` (SO(2), Z₃, SO(1,1));
//! - warped graphs `(γ₁v, γ₁w, γ₁f + γ₂, γ₁)` over improper affine spheres;
//! - the closed-form improper families `(tv, tw, tf − ct⁴, t)` and
//!   `(v, w, f + ct³, t⁴)`.
//!
//! The plane curves of the warped families must satisfy a curve identity;
//! [`curve_condition_residual`] measures it and [`default_curve`] integrates it.

pub mod base;
pub mod cases;
pub mod curve;
pub mod families;
pub mod spec;

pub use base::*;
pub use cases::*;
pub use curve::*;
pub use families::*;
pub use spec::*;

/// Errors of the generators.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConstructionError {
    #[error("illegal curve: {0}")]
    IllegalCurve(String),
    #[error("illegal parameter: {0}")]
    IllegalParameter(String),
}
