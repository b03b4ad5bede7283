//! The [`CubicForm`] type, coefficient tables, the SO(1,2) action and invariants.

use crate::tensor::{self, Sym3};
use crate::CubicError;
use lorentz_core::{gram, Frame, FrameKind, Isometry, Mat3};
use serde::{Deserialize, Serialize};

/// Default apolarity tolerance.
pub const TAU_APOL: f64 = 1e-6;

/// Coefficients `a1..a7` relative to an ONB `{t, v, w}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OnbCoeffs(pub [f64; 7]);

/// Coefficients `b1..b7` relative to an LVB `{e, v, f}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LvbCoeffs(pub [f64; 7]);

impl OnbCoeffs {
    /// `a_i` with the 1-based index used by the coefficient tables.
    pub fn a(&self, i: usize) -> f64 {
        self.0[i - 1]
    }
}

impl LvbCoeffs {
    /// `b_i` with the 1-based index used by the coefficient tables.
    pub fn b(&self, i: usize) -> f64 {
        self.0[i - 1]
    }
}

/// A traceless symmetric cubic form on R³₁ relative to a frame.
///
/// Stored as the lowered difference tensor `k_{ijk} = h(K(X_i, X_j), X_k)`;
/// the cubic form of the structure equations is `C = −2k` ([`CubicForm::c`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicForm {
    frame: Frame,
    k: Sym3,
}

impl CubicForm {
    /// From lowered components `k_{ijk}` relative to `frame`.
    pub fn from_lowered(frame: Frame, k: Sym3) -> Self {
        CubicForm { frame, k }
    }

    /// From cubic-form components `C_{ijk} = −2 h(K(X_i,X_j),X_k)`.
    pub fn from_c(frame: Frame, c: Sym3) -> Self {
        CubicForm { frame, k: tensor::scale(&c, -0.5) }
    }

    /// The zero form.
    pub fn zero(frame: Frame) -> Self {
        CubicForm { frame, k: [0.0; 10] }
    }

    /// Builds the form whose `K_t, K_v, K_w` are the ONB coefficient matrices.
    pub fn from_onb_coeffs(a: &OnbCoeffs, frame: Frame) -> Result<Self, CubicError> {
        if frame.kind() != FrameKind::Onb {
            return Err(CubicError::WrongFrameKind { expected: FrameKind::Onb, found: frame.kind() });
        }
        let [a1, a2, a3, a4, a5, a6, a7] = a.0;
        let k = [a1, a2, a3, a4, a5, a1 - a4, a6, a7, a2 - a6, a3 - a7];
        Ok(CubicForm { frame, k })
    }

    /// Builds the form whose `K_e, K_v, K_f` are the LVB coefficient matrices.
    pub fn from_lvb_coeffs(b: &LvbCoeffs, frame: Frame) -> Result<Self, CubicError> {
        if frame.kind() != FrameKind::Lvb {
            return Err(CubicError::WrongFrameKind { expected: FrameKind::Lvb, found: frame.kind() });
        }
        let [b1, b2, b3, b4, b5, b6, b7] = b.0;
        let k = [b3, b2, b1, -2.0 * b1, b4, b5, -2.0 * b4, -2.0 * b5, b6, b7];
        Ok(CubicForm { frame, k })
    }

    /// Reads `a1..a7` (requires an ONB frame). Exact inverse of [`Self::from_onb_coeffs`]
    /// on admissible forms.
    pub fn to_onb_coeffs(&self) -> Result<OnbCoeffs, CubicError> {
        if self.frame.kind() != FrameKind::Onb {
            return Err(CubicError::WrongFrameKind {
                expected: FrameKind::Onb,
                found: self.frame.kind(),
            });
        }
        let k = &self.k;
        Ok(OnbCoeffs([k[0], k[1], k[2], k[3], k[4], k[6], k[7]]))
    }

    /// Reads `b1..b7` (requires an LVB frame).
    pub fn to_lvb_coeffs(&self) -> Result<LvbCoeffs, CubicError> {
        if self.frame.kind() != FrameKind::Lvb {
            return Err(CubicError::WrongFrameKind {
                expected: FrameKind::Lvb,
                found: self.frame.kind(),
            });
        }
        let k = &self.k;
        Ok(LvbCoeffs([k[2], k[1], k[0], k[4], k[5], k[8], k[9]]))
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Lowered components `h(K(X_i, X_j), X_k)`.
    pub fn lowered(&self) -> &Sym3 {
        &self.k
    }

    /// Cubic-form components `C = −2k`.
    pub fn c(&self) -> Sym3 {
        tensor::scale(&self.k, -2.0)
    }

    /// The same form expressed relative to another frame.
    pub fn in_frame(&self, target: &Frame) -> CubicForm {
        let p = self.frame.inverse_basis() * target.basis();
        CubicForm { frame: *target, k: tensor::pullback(&self.k, &p) }
    }

    /// The same form relative to the reference ONB.
    pub fn in_reference(&self) -> CubicForm {
        self.in_frame(&Frame::reference())
    }

    /// Matrix of `K_X` in this frame for frame coordinates `x`.
    pub fn k_matrix(&self, x: &nalgebra::Vector3<f64>) -> Mat3 {
        tensor::k_matrix(&self.k, x, &gram(self.frame.kind()))
    }

    /// `K(X_i, X_j)` as frame coordinates.
    pub fn k_of(&self, i: usize, j: usize) -> nalgebra::Vector3<f64> {
        let mut x = nalgebra::Vector3::zeros();
        x[i] = 1.0;
        self.k_matrix(&x).column(j).into_owned()
    }

    /// Max-norm of the components.
    pub fn amax(&self) -> f64 {
        tensor::amax(&self.k)
    }
}

/// Right action `ρ(L)K = K ∘ L`: `(ρ(L)K)(X,Y,Z) = k(LX, LY, LZ)`. The matrix of `L`
/// is read relative to the form's frame, whose kind must match `L`'s.
pub fn act(l: &Isometry, k: &CubicForm) -> Result<CubicForm, CubicError> {
    if l.kind() != k.frame.kind() {
        return Err(CubicError::WrongFrameKind { expected: k.frame.kind(), found: l.kind() });
    }
    Ok(CubicForm { frame: k.frame, k: tensor::pullback(&k.k, l.matrix()) })
}

/// Action by a linear map given in reference ONB coordinates.
pub fn act_reference(l_ref: &Mat3, k: &CubicForm) -> CubicForm {
    let m = k.frame.matrix_in_frame(l_ref);
    CubicForm { frame: k.frame, k: tensor::pullback(&k.k, &m) }
}

/// `max_X |trace_h K_X|` over the frame basis.
pub fn apolarity_residual(k: &CubicForm) -> f64 {
    tensor::traces(&k.k, &gram(k.frame.kind()))
        .iter()
        .fold(0.0_f64, |m, x| m.max(x.abs()))
}

fn check_admissible(k: &CubicForm, tol: f64) -> Result<(), CubicError> {
    let r = apolarity_residual(k);
    if !(r <= tol * k.amax().max(1.0)) {
        return Err(CubicError::NotAdmissible { residual: r });
    }
    Ok(())
}

/// Pick invariant `J = h(K, K) / 6` (n = 3).
pub fn pick_invariant(k: &CubicForm) -> Result<f64, CubicError> {
    check_admissible(k, TAU_APOL)?;
    Ok(tensor::norm_sq_metric(&k.k, &gram(k.frame.kind())) / 6.0)
}

/// Max-norm of `act(L, K) − K`.
pub fn invariance_residual(l: &Isometry, k: &CubicForm) -> Result<f64, CubicError> {
    let m = act(l, k)?;
    Ok(tensor::amax(&tensor::sub(&m.k, &k.k)))
}

/// [`invariance_residual`] for a map given in reference ONB coordinates.
pub fn invariance_residual_reference(l_ref: &Mat3, k: &CubicForm) -> f64 {
    let m = act_reference(l_ref, k);
    tensor::amax(&tensor::sub(&m.k, &k.k))
}

/// Admissibility check exposed for callers.
pub fn ensure_admissible(k: &CubicForm, tol: f64) -> Result<(), CubicError> {
    check_admissible(k, tol)
}

/// JSON representation of the coefficients of a form.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CoeffsJson {
    Onb { a: [f64; 7] },
    Lvb { b: [f64; 7] },
    Dense { c: [f64; 10] },
}

/// JSON document `{"frame": …, "coeffs": {...}}`; the frame defaults to the
/// reference ONB (standard LVB for `lvb` coefficients).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CubicFormJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame: Option<Frame>,
    pub coeffs: CoeffsJson,
}

impl CubicFormJson {
    pub fn to_form(&self) -> Result<CubicForm, CubicError> {
        match &self.coeffs {
            CoeffsJson::Onb { a } => {
                CubicForm::from_onb_coeffs(&OnbCoeffs(*a), self.frame.unwrap_or_else(Frame::reference))
            }
            CoeffsJson::Lvb { b } => CubicForm::from_lvb_coeffs(
                &LvbCoeffs(*b),
                self.frame.unwrap_or_else(Frame::standard_lvb),
            ),
            CoeffsJson::Dense { c } => {
                Ok(CubicForm::from_c(self.frame.unwrap_or_else(Frame::reference), *c))
            }
        }
    }

    /// Dense representation of a form.
    pub fn dense(k: &CubicForm) -> Self {
        CubicFormJson { frame: Some(*k.frame()), coeffs: CoeffsJson::Dense { c: k.c() } }
    }
}
