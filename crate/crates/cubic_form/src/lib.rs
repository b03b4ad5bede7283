//! Traceless symmetric cubic forms on R³₁.
//!
//! A cubic form is the lowered difference tensor `h(K(·,·),·)` of an affine
//! hypersphere at a point. This crate provides the coefficient tables relative to
//! orthonormal and light-vector bases, the right action of SO(1,2), the apolarity
//! check, the Pick invariant, and the classifier of the stabilizer subgroup
//! ([`stabilizer_classify`]) into the ten possible classes with canonical
//! parameters.

pub mod fixtures;
mod form;
pub mod stabilizer;
pub mod tensor;

pub use form::*;
pub use stabilizer::*;

use lorentz_core::{FrameKind, Mat3};

/// Errors raised by this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CubicError {
    #[error("wrong frame kind: expected {expected}, found {found}")]
    WrongFrameKind { expected: FrameKind, found: FrameKind },
    #[error("form is not apolar: residual {residual:.3e}")]
    NotAdmissible { residual: f64 },
    #[error("numerically ambiguous classification: {0}")]
    NumericallyAmbiguous(String),
}

/// Basis of the apolar forms (lowered components in the reference ONB) invariant
/// under every map in `maps` (reference coordinates).
///
/// Computed as the null space of the stacked linear conditions
/// `k ∘ L − k = 0` and `trace_h K_X = 0`.
pub fn invariant_subspace(maps: &[Mat3]) -> Vec<tensor::Sym3> {
    let rows = 10 * maps.len() + 3;
    let mut m = nalgebra::DMatrix::<f64>::zeros(rows.max(10), 10);
    for j in 0..10 {
        let mut e = [0.0; 10];
        e[j] = 1.0;
        for (n, l) in maps.iter().enumerate() {
            let d = tensor::sub(&tensor::pullback(&e, l), &e);
            for i in 0..10 {
                m[(10 * n + i, j)] = d[i];
            }
        }
        let t = tensor::traces(&e, &lorentz_core::gram(FrameKind::Onb));
        for i in 0..3 {
            m[(10 * maps.len() + i, j)] = t[i];
        }
    }
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("V requested");
    let mut out = Vec::new();
    for (i, s) in svd.singular_values.iter().enumerate() {
        if *s < 1e-10 {
            let row = v_t.row(i);
            out.push(std::array::from_fn(|j| row[j]));
        }
    }
    // Rows beyond the number of singular values are also null directions.
    for i in svd.singular_values.len()..10 {
        let row = v_t.row(i);
        out.push(std::array::from_fn(|j| row[j]));
    }
    out
}
