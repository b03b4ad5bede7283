//! Linear algebra of the Lorentz–Minkowski space R³₁.
//!
//! Everything is expressed relative to one fixed *reference* orthonormal basis
//! `{t, v, w}` with Gram matrix `diag(−1, 1, 1)`. A [`Frame`] stores its basis
//! vectors as columns in reference coordinates, so orthonormal bases (ONB) and
//! light-vector bases (LVB, Gram `[[0,0,1],[0,1,0],[1,0,0]]`) live side by side.
//!
//! The module provides
//!
//! - inner products for both frame kinds ([`inner`]),
//! - membership tests for SO(1,2) ([`is_special_isometry`]),
//! - the six normal forms `A_t`, `A_π`, `Id`, `B`, `C_l`, `C_1`
//!   ([`make_normal_form`]),
//! - classification of an arbitrary element of SO(1,2) into exactly one of
//!   those types together with an adapted, positively oriented frame
//!   ([`classify_isometry`]).
//!
//! All values are immutable and every function is pure.

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use std::fmt;

/// A vector of R³₁; the interpretation of the components depends on the frame.
pub type MinkowskiVector = Vector3<f64>;
/// 3×3 real matrix.
pub type Mat3 = Matrix3<f64>;

/// Default tolerance for frame Gram checks.
pub const TAU_FRAME: f64 = 1e-9;
/// Default tolerance for isometry checks and classification.
pub const TAU_ISO: f64 = 1e-9;
/// Multiplier defining the ambiguity band `[tol, AMBIGUITY_FACTOR·tol)` around
/// degenerate parameter values.
pub const AMBIGUITY_FACTOR: f64 = 100.0;

/// Errors raised by this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LorentzError {
    #[error("matrix is not in SO(1,2): residual {residual:.3e}")]
    NotAnIsometry { residual: f64 },
    #[error("numerically ambiguous classification: {0}")]
    NumericallyAmbiguous(String),
    #[error("illegal parameter: {0}")]
    IllegalParameter(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
}

/// Kind of a frame: orthonormal or light-vector basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FrameKind {
    #[serde(rename = "ONB")]
    Onb,
    #[serde(rename = "LVB")]
    Lvb,
}

impl fmt::Display for FrameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FrameKind::Onb => "ONB",
            FrameKind::Lvb => "LVB",
        })
    }
}

/// Gram matrix of the given frame kind.
pub fn gram(kind: FrameKind) -> Mat3 {
    match kind {
        FrameKind::Onb => Mat3::from_diagonal(&Vector3::new(-1.0, 1.0, 1.0)),
        FrameKind::Lvb => Mat3::new(0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0),
    }
}

/// Minkowski inner product of two coordinate vectors relative to a frame kind.
///
/// ONB: `−x_t y_t + x_v y_v + x_w y_w`; LVB: `x_e y_f + x_f y_e + x_v y_v`.
pub fn inner(x: &MinkowskiVector, y: &MinkowskiVector, kind: FrameKind) -> f64 {
    match kind {
        FrameKind::Onb => -x[0] * y[0] + x[1] * y[1] + x[2] * y[2],
        FrameKind::Lvb => x[0] * y[2] + x[2] * y[0] + x[1] * y[1],
    }
}

/// Inner product in reference ONB coordinates.
pub fn minner(x: &MinkowskiVector, y: &MinkowskiVector) -> f64 {
    inner(x, y, FrameKind::Onb)
}

/// Causal character of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Causal {
    Timelike,
    Spacelike,
    Null,
}

/// Causal type of `x` (reference coordinates); `tol` bounds `|⟨x,x⟩|/|x|²` for null.
pub fn causal_type(x: &MinkowskiVector, tol: f64) -> Causal {
    let q = minner(x, x) / x.norm_squared();
    if q.abs() <= tol {
        Causal::Null
    } else if q < 0.0 {
        Causal::Timelike
    } else {
        Causal::Spacelike
    }
}

/// A vector Minkowski-orthogonal to both `x` and `y` (reference coordinates).
pub fn lorentz_cross(x: &MinkowskiVector, y: &MinkowskiVector) -> MinkowskiVector {
    let c = x.cross(y);
    Vector3::new(-c[0], c[1], c[2])
}

/// An ordered basis of R³₁ tagged ONB or LVB. Columns of `basis` are the basis
/// vectors in reference ONB coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "FrameRepr", try_from = "FrameRepr")]
pub struct Frame {
    kind: FrameKind,
    basis: Mat3,
}

#[derive(Serialize, Deserialize)]
struct FrameRepr {
    kind: FrameKind,
    /// `basis[i]` is the i-th basis vector in reference coordinates.
    basis: [[f64; 3]; 3],
}

impl From<Frame> for FrameRepr {
    fn from(f: Frame) -> Self {
        let mut basis = [[0.0; 3]; 3];
        for (i, row) in basis.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = f.basis[(j, i)];
            }
        }
        FrameRepr { kind: f.kind, basis }
    }
}

impl TryFrom<FrameRepr> for Frame {
    type Error = LorentzError;
    fn try_from(r: FrameRepr) -> Result<Self, Self::Error> {
        let m = Mat3::from_fn(|i, j| r.basis[j][i]);
        Frame::new(r.kind, m, TAU_FRAME)
    }
}

impl Frame {
    /// Validates the Gram matrix of `basis` (columns, reference coordinates).
    pub fn new(kind: FrameKind, basis: Mat3, tol: f64) -> Result<Self, LorentzError> {
        if basis.iter().any(|x| !x.is_finite()) {
            return Err(LorentzError::DegenerateInput("non-finite frame entry".into()));
        }
        let f = Frame { kind, basis };
        let r = f.gram_residual();
        if r > tol {
            return Err(LorentzError::DegenerateInput(format!(
                "{kind} Gram residual {r:.3e} exceeds {tol:.1e}"
            )));
        }
        Ok(f)
    }

    /// Builds a frame without validation (caller guarantees the Gram matrix).
    pub fn new_unchecked(kind: FrameKind, basis: Mat3) -> Self {
        Frame { kind, basis }
    }

    /// The reference ONB `{t, v, w}`.
    pub fn reference() -> Self {
        Frame { kind: FrameKind::Onb, basis: Mat3::identity() }
    }

    /// The standard LVB `e = (t+w)/√2, v, f = (−t+w)/√2` of the reference ONB.
    pub fn standard_lvb() -> Self {
        Frame { kind: FrameKind::Lvb, basis: lvb_matrix() }
    }

    /// Frame from three basis vectors.
    pub fn from_vectors(
        kind: FrameKind,
        b0: MinkowskiVector,
        b1: MinkowskiVector,
        b2: MinkowskiVector,
        tol: f64,
    ) -> Result<Self, LorentzError> {
        Frame::new(kind, Mat3::from_columns(&[b0, b1, b2]), tol)
    }

    pub fn kind(&self) -> FrameKind {
        self.kind
    }

    /// Basis matrix (columns are basis vectors in reference coordinates).
    pub fn basis(&self) -> &Mat3 {
        &self.basis
    }

    /// i-th basis vector.
    pub fn vector(&self, i: usize) -> MinkowskiVector {
        self.basis.column(i).into_owned()
    }

    /// Orientation sign (`+1` if the basis matrix has positive determinant).
    pub fn orientation(&self) -> i8 {
        if self.basis.determinant() > 0.0 {
            1
        } else {
            -1
        }
    }

    /// Max-norm deviation of the Gram matrix from the one of `kind`.
    pub fn gram_residual(&self) -> f64 {
        let g = self.basis.transpose() * gram(FrameKind::Onb) * self.basis;
        (g - gram(self.kind)).amax()
    }

    /// Coordinates of a reference vector relative to this frame.
    pub fn coords_of(&self, x: &MinkowskiVector) -> MinkowskiVector {
        // B⁻¹ = G_kind⁻¹ Bᵀ G_ref, exact for valid frames and cheap.
        gram(self.kind) * self.basis.transpose() * gram(FrameKind::Onb) * x
    }

    /// Reference vector from frame coordinates.
    pub fn vector_from_coords(&self, c: &MinkowskiVector) -> MinkowskiVector {
        self.basis * c
    }

    /// Matrix of a reference-frame linear map relative to this frame.
    pub fn matrix_in_frame(&self, m_ref: &Mat3) -> Mat3 {
        self.inverse_basis() * m_ref * self.basis
    }

    /// Reference-frame matrix of a map given relative to this frame.
    pub fn matrix_to_reference(&self, m: &Mat3) -> Mat3 {
        self.basis * m * self.inverse_basis()
    }

    /// Inverse of the basis matrix via the Gram relation.
    pub fn inverse_basis(&self) -> Mat3 {
        gram(self.kind) * self.basis.transpose() * gram(FrameKind::Onb)
    }

    /// Converts an ONB `{t,v,w}` to the LVB `{(t+w)/√2, v, (−t+w)/√2}` and an LVB
    /// `{e,v,f}` back to `{(e−f)/√2, v, (e+f)/√2}`. Both maps keep orientation.
    pub fn converted(&self) -> Frame {
        match self.kind {
            FrameKind::Onb => Frame { kind: FrameKind::Lvb, basis: self.basis * lvb_matrix() },
            FrameKind::Lvb => Frame {
                kind: FrameKind::Onb,
                basis: self.basis * lvb_matrix().transpose(),
            },
        }
    }
}

/// Columns `e, v, f` of the standard LVB in reference coordinates.
fn lvb_matrix() -> Mat3 {
    let s = FRAC_1_SQRT_2;
    Mat3::new(s, 0.0, -s, 0.0, 1.0, 0.0, s, 0.0, s)
}

/// Deviation of `M` from SO(1,2) for the given frame kind: max of
/// `‖MᵀGM − G‖_max` and `|det M − 1|`.
pub fn isometry_residual(m: &Mat3, kind: FrameKind) -> f64 {
    let g = gram(kind);
    let r = (m.transpose() * g * m - g).amax();
    r.max((m.determinant() - 1.0).abs())
}

/// True iff `MᵀGM = G` within `tol` and `|det M − 1| ≤ tol`.
pub fn is_special_isometry(m: &Mat3, kind: FrameKind, tol: f64) -> bool {
    m.iter().all(|x| x.is_finite()) && isometry_residual(m, kind) <= tol
}

/// An element of SO(1,2) represented in the reference ONB or standard LVB.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "IsometryRepr", try_from = "IsometryRepr")]
pub struct Isometry {
    matrix: Mat3,
    kind: FrameKind,
}

/// JSON shape `{"kind":"ONB"|"LVB","matrix":[[..],[..],[..]]}` (row-major).
#[derive(Serialize, Deserialize)]
pub struct IsometryRepr {
    pub kind: FrameKind,
    pub matrix: [[f64; 3]; 3],
}

impl From<Isometry> for IsometryRepr {
    fn from(l: Isometry) -> Self {
        IsometryRepr { kind: l.kind, matrix: mat_to_rows(&l.matrix) }
    }
}

impl TryFrom<IsometryRepr> for Isometry {
    type Error = LorentzError;
    fn try_from(r: IsometryRepr) -> Result<Self, Self::Error> {
        Isometry::new(rows_to_mat(&r.matrix), r.kind, TAU_ISO)
    }
}

/// Row-major array from a matrix.
pub fn mat_to_rows(m: &Mat3) -> [[f64; 3]; 3] {
    let mut a = [[0.0; 3]; 3];
    for (i, row) in a.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = m[(i, j)];
        }
    }
    a
}

/// Matrix from a row-major array.
pub fn rows_to_mat(a: &[[f64; 3]; 3]) -> Mat3 {
    Mat3::from_fn(|i, j| a[i][j])
}

impl Isometry {
    /// Validated constructor.
    pub fn new(matrix: Mat3, kind: FrameKind, tol: f64) -> Result<Self, LorentzError> {
        if !is_special_isometry(&matrix, kind, tol) {
            let residual = if matrix.iter().all(|x| x.is_finite()) {
                isometry_residual(&matrix, kind)
            } else {
                f64::INFINITY
            };
            return Err(LorentzError::NotAnIsometry { residual });
        }
        Ok(Isometry { matrix, kind })
    }

    /// Unvalidated constructor (useful for deliberately invalid test inputs).
    pub fn new_unchecked(matrix: Mat3, kind: FrameKind) -> Self {
        Isometry { matrix, kind }
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    pub fn kind(&self) -> FrameKind {
        self.kind
    }

    /// The same map as a matrix in the reference ONB.
    pub fn reference_matrix(&self) -> Mat3 {
        match self.kind {
            FrameKind::Onb => self.matrix,
            FrameKind::Lvb => Frame::standard_lvb().matrix_to_reference(&self.matrix),
        }
    }

    /// The same map represented in the other frame kind.
    pub fn to_kind(&self, kind: FrameKind) -> Isometry {
        let m = self.reference_matrix();
        let matrix = match kind {
            FrameKind::Onb => m,
            FrameKind::Lvb => Frame::standard_lvb().matrix_in_frame(&m),
        };
        Isometry { matrix, kind }
    }

    /// Composition `self ∘ other` (both converted to `self.kind`).
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let o = other.to_kind(self.kind);
        Isometry { matrix: self.matrix * o.matrix, kind: self.kind }
    }

    /// Inverse element `G⁻¹MᵀG`.
    pub fn inverse(&self) -> Isometry {
        let g = gram(self.kind);
        Isometry { matrix: g * self.matrix.transpose() * g, kind: self.kind }
    }

    /// Conjugate `g M g⁻¹` with `g` in reference coordinates.
    pub fn conjugated_by(&self, g: &Isometry) -> Isometry {
        let g = g.to_kind(self.kind);
        g.compose(self).compose(&g.inverse())
    }
}

/// The six normal-form families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NormalFormTag {
    Rotation,
    HalfTurn,
    Identity,
    SpacelikeReflection,
    Boost,
    Parabolic,
}

impl NormalFormTag {
    pub const ALL: [NormalFormTag; 6] = [
        NormalFormTag::Rotation,
        NormalFormTag::HalfTurn,
        NormalFormTag::Identity,
        NormalFormTag::SpacelikeReflection,
        NormalFormTag::Boost,
        NormalFormTag::Parabolic,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            NormalFormTag::Rotation => "Rotation",
            NormalFormTag::HalfTurn => "HalfTurn",
            NormalFormTag::Identity => "Identity",
            NormalFormTag::SpacelikeReflection => "SpacelikeReflection",
            NormalFormTag::Boost => "Boost",
            NormalFormTag::Parabolic => "Parabolic",
        }
    }
}

/// Normal-form type with its parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum IsometryType {
    /// `A_t`, `t ∈ (0, 2π) \ {π}`.
    Rotation { t: f64 },
    /// `A_π`.
    HalfTurn,
    /// `Id`.
    Identity,
    /// `B = diag(−1, 1, −1)`.
    SpacelikeReflection,
    /// `C_l = diag(l, 1, 1/l)` in an LVB, canonical `|l| > 1`.
    Boost { l: f64 },
    /// `C_1 = C_{1,1}` in an LVB.
    Parabolic,
}

impl IsometryType {
    pub fn tag(&self) -> NormalFormTag {
        match self {
            IsometryType::Rotation { .. } => NormalFormTag::Rotation,
            IsometryType::HalfTurn => NormalFormTag::HalfTurn,
            IsometryType::Identity => NormalFormTag::Identity,
            IsometryType::SpacelikeReflection => NormalFormTag::SpacelikeReflection,
            IsometryType::Boost { .. } => NormalFormTag::Boost,
            IsometryType::Parabolic => NormalFormTag::Parabolic,
        }
    }

    /// The rotation angle or boost parameter, if any.
    pub fn param(&self) -> Option<f64> {
        match self {
            IsometryType::Rotation { t } => Some(*t),
            IsometryType::Boost { l } => Some(*l),
            _ => None,
        }
    }
}

/// Result of [`classify_isometry`]: the type and an adapted, positively oriented
/// frame in which the map has its normal-form matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsometryClass {
    #[serde(flatten)]
    pub kind: IsometryType,
    pub adapted_frame: Frame,
    /// Real eigenvalues found from the characteristic polynomial.
    pub eigenvalues: Vec3Serde,
}

/// Plain array wrapper so eigenvalues serialize as a JSON list.
pub type Vec3Serde = [f64; 3];

impl IsometryClass {
    /// The normal-form matrix of this class (in the adapted frame's kind).
    pub fn normal_form(&self) -> Mat3 {
        normal_form_matrix(&self.kind)
    }
}

/// `A_t` in an ONB.
pub fn rotation_matrix(t: f64) -> Mat3 {
    let (s, c) = t.sin_cos();
    Mat3::new(1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c)
}

/// `C_{l,m}` in an LVB.
pub fn c_lm(l: f64, m: f64) -> Mat3 {
    Mat3::new(l, -l * m, -l * m * m / 2.0, 0.0, 1.0, m, 0.0, 0.0, 1.0 / l)
}

/// Boost in the reference `t–w` plane by rapidity `eta` (ONB).
pub fn boost_tw(eta: f64) -> Mat3 {
    let (c, s) = (eta.cosh(), eta.sinh());
    Mat3::new(c, 0.0, s, 0.0, 1.0, 0.0, s, 0.0, c)
}

/// Boost in the reference `t–v` plane by rapidity `eta` (ONB).
pub fn boost_tv(eta: f64) -> Mat3 {
    let (c, s) = (eta.cosh(), eta.sinh());
    Mat3::new(c, s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
}

fn normal_form_matrix(t: &IsometryType) -> Mat3 {
    match *t {
        IsometryType::Rotation { t } => rotation_matrix(t),
        IsometryType::HalfTurn => Mat3::from_diagonal(&Vector3::new(1.0, -1.0, -1.0)),
        IsometryType::Identity => Mat3::identity(),
        IsometryType::SpacelikeReflection => Mat3::from_diagonal(&Vector3::new(-1.0, 1.0, -1.0)),
        IsometryType::Boost { l } => Mat3::from_diagonal(&Vector3::new(l, 1.0, 1.0 / l)),
        IsometryType::Parabolic => c_lm(1.0, 1.0),
    }
}

/// Frame kind in which the normal form of `tag` is stated.
pub fn normal_form_kind(tag: NormalFormTag) -> FrameKind {
    match tag {
        NormalFormTag::Boost | NormalFormTag::Parabolic => FrameKind::Lvb,
        _ => FrameKind::Onb,
    }
}

/// Exact normal-form matrix of a family. `param` is `t` for rotations and `l`
/// for boosts and is ignored otherwise.
pub fn make_normal_form(tag: NormalFormTag, param: f64) -> Result<Isometry, LorentzError> {
    let ty = match tag {
        NormalFormTag::Rotation => {
            if !(param > 0.0 && param < TAU) || param == PI {
                return Err(LorentzError::IllegalParameter(format!(
                    "rotation angle {param} not in (0, 2π) \\ {{π}}"
                )));
            }
            IsometryType::Rotation { t: param }
        }
        NormalFormTag::Boost => {
            if !param.is_finite() || param == 0.0 || param.abs() == 1.0 {
                return Err(LorentzError::IllegalParameter(format!(
                    "boost parameter {param} must avoid 0 and ±1"
                )));
            }
            IsometryType::Boost { l: param }
        }
        NormalFormTag::HalfTurn => IsometryType::HalfTurn,
        NormalFormTag::Identity => IsometryType::Identity,
        NormalFormTag::SpacelikeReflection => IsometryType::SpacelikeReflection,
        NormalFormTag::Parabolic => IsometryType::Parabolic,
    };
    Ok(Isometry { matrix: normal_form_matrix(&ty), kind: normal_form_kind(tag) })
}

/// The spacelike reflection as `C_{−1} = diag(−1, 1, −1)` in an LVB.
pub fn spacelike_reflection_lvb() -> Isometry {
    Isometry {
        matrix: Mat3::from_diagonal(&Vector3::new(-1.0, 1.0, -1.0)),
        kind: FrameKind::Lvb,
    }
}

/// Real eigenvalues of a 3×3 matrix from its characteristic polynomial
/// `λ³ − c₂λ² + c₁λ − c₀`: one real root by the closed form, Newton-polished,
/// then the deflated quadratic. Complex pairs are reported as `NaN`.
pub fn char_poly_real_eigenvalues(m: &Mat3) -> [f64; 3] {
    let c2 = m.trace();
    let c1 = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)] + m[(0, 0)] * m[(2, 2)]
        - m[(0, 2)] * m[(2, 0)]
        + m[(1, 1)] * m[(2, 2)]
        - m[(1, 2)] * m[(2, 1)];
    let c0 = m.determinant();
    let p = |x: f64| ((x - c2) * x + c1) * x - c0;
    let dp = |x: f64| (3.0 * x - 2.0 * c2) * x + c1;
    // Depressed cubic y³ + py + q with x = y + c2/3.
    let a = -c2;
    let (b, c) = (c1, -c0);
    let pp = b - a * a / 3.0;
    let qq = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let disc = qq * qq / 4.0 + pp * pp * pp / 27.0;
    let mut x = if disc >= 0.0 {
        let s = disc.sqrt();
        (-qq / 2.0 + s).cbrt() + (-qq / 2.0 - s).cbrt() - a / 3.0
    } else {
        let r = (-pp / 3.0).sqrt();
        let phi = (-qq / (2.0 * r * r * r)).clamp(-1.0, 1.0).acos();
        2.0 * r * (phi / 3.0).cos() - a / 3.0
    };
    for _ in 0..8 {
        let d = dp(x);
        if d == 0.0 {
            break;
        }
        let nx = x - p(x) / d;
        if (nx - x).abs() <= 1e-16 * x.abs().max(1.0) {
            x = nx;
            break;
        }
        x = nx;
    }
    // Deflate: λ² + (x − c2)λ + (c1 + x(x − c2)).
    let bq = x - c2;
    let cq = c1 + x * bq;
    let dq = bq * bq - 4.0 * cq;
    if dq < 0.0 {
        [x, f64::NAN, f64::NAN]
    } else {
        let s = dq.sqrt();
        let r1 = if bq >= 0.0 { (-bq - s) / 2.0 } else { (-bq + s) / 2.0 };
        let r2 = if r1 != 0.0 { cq / r1 } else { 0.0 };
        let mut e = [x, r1, r2];
        e.sort_by(|a, b| b.partial_cmp(a).unwrap());
        e
    }
}

/// Unit future-pointing timelike vector in the direction of `x`.
pub fn future_unit_timelike(x: &MinkowskiVector) -> MinkowskiVector {
    let n = (-minner(x, x)).sqrt();
    let t = x / n;
    if t[0] < 0.0 {
        -t
    } else {
        t
    }
}

/// Completes a unit vector `a` (timelike or spacelike) with an orthonormal pair.
/// Returns `(b, c)` orthonormal, orthogonal to `a`, with `det[a, b, c] > 0`.
pub fn complete_orthonormal(a: &MinkowskiVector) -> (MinkowskiVector, MinkowskiVector) {
    // Seed with the reference axis least aligned with a (Minkowski-wise).
    let cands = [Vector3::x(), Vector3::y(), Vector3::z()];
    let mut best = cands[0];
    let mut best_score = f64::INFINITY;
    for c in cands {
        let s = minner(a, &c).abs();
        if s < best_score {
            best_score = s;
            best = c;
        }
    }
    let aa = minner(a, a);
    let b0 = best - a * (minner(a, &best) / aa);
    let b = b0 / minner(&b0, &b0).abs().sqrt();
    let c0 = lorentz_cross(a, &b);
    let c = c0 / minner(&c0, &c0).abs().sqrt();
    if Mat3::from_columns(&[*a, b, c]).determinant() > 0.0 {
        (b, c)
    } else {
        (b, -c)
    }
}

/// LVB `{e, v, f}` with `v` the given unit spacelike vector, positively oriented.
pub fn lvb_around_spacelike(v: &MinkowskiVector) -> Frame {
    let (t0, w0) = complete_orthonormal(v);
    // (t0, w0) span v^⊥ and one is timelike; order them as (timelike, spacelike).
    let (t, w) = if minner(&t0, &t0) < 0.0 { (t0, w0) } else { (w0, t0) };
    let t = if t[0] < 0.0 { -t } else { t };
    let w = if Mat3::from_columns(&[t, *v, w]).determinant() > 0.0 { w } else { -w };
    let e = (t + w) * FRAC_1_SQRT_2;
    let f = (-t + w) * FRAC_1_SQRT_2;
    Frame::new_unchecked(FrameKind::Lvb, Mat3::from_columns(&[e, *v, f]))
}

/// LVB `{e, v, f}` with `e` proportional to the null vector `n`, positively oriented.
pub fn lvb_from_null(n: &MinkowskiVector) -> Frame {
    let e = *n;
    let u = Vector3::x();
    let eu = minner(&e, &u);
    let f = (u - e * (minner(&u, &u) / (2.0 * eu))) / eu;
    let v0 = lorentz_cross(&e, &f);
    let v = v0 / minner(&v0, &v0).sqrt();
    let v = if Mat3::from_columns(&[e, v, f]).determinant() > 0.0 { v } else { -v };
    Frame::new_unchecked(FrameKind::Lvb, Mat3::from_columns(&[e, v, f]))
}

/// Builds the LVB `{(t+w)/√2, v, (−t+w)/√2}` from an orthonormal timelike/spacelike
/// pair, with `v` the unit completion making the frame positively oriented.
pub fn lvb_of_timelike_plane(
    t: &MinkowskiVector,
    w: &MinkowskiVector,
) -> Result<Frame, LorentzError> {
    let tol = TAU_FRAME;
    if (minner(t, t) + 1.0).abs() > tol
        || (minner(w, w) - 1.0).abs() > tol
        || minner(t, w).abs() > tol
    {
        return Err(LorentzError::DegenerateInput(
            "need a unit timelike t and unit spacelike w with ⟨t,w⟩ = 0".into(),
        ));
    }
    let e = (t + w) * FRAC_1_SQRT_2;
    let f = (-t + w) * FRAC_1_SQRT_2;
    let v0 = lorentz_cross(t, w);
    let v = v0 / minner(&v0, &v0).sqrt();
    let v = if Mat3::from_columns(&[e, v, f]).determinant() > 0.0 { v } else { -v };
    Frame::new(FrameKind::Lvb, Mat3::from_columns(&[e, v, f]), tol)
}

/// Kernel direction of a rank-≤2 3×3 matrix: the largest cross product of rows.
pub fn kernel_direction(n: &Mat3) -> MinkowskiVector {
    let r = [n.row(0).transpose(), n.row(1).transpose(), n.row(2).transpose()];
    let c = [r[0].cross(&r[1]), r[0].cross(&r[2]), r[1].cross(&r[2])];
    let mut best = c[0];
    for x in &c[1..] {
        if x.norm() > best.norm() {
            best = *x;
        }
    }
    best / best.norm()
}

fn ambiguous(what: impl Into<String>) -> LorentzError {
    LorentzError::NumericallyAmbiguous(what.into())
}

/// Classifies an element of SO(1,2) into exactly one normal-form type.
///
/// The family is decided by `τ = tr L − 1` (`2cos t` for rotations, `l + 1/l` for
/// boosts, `2` for parabolic/identity, `−2` for half-turn/reflection) and the causal
/// type of the eigenvalue-1 axis; the adapted frame is built around that axis.
/// Values within `tol` of a degenerate boundary snap to it, values within the
/// band `[tol, 100·tol)` raise [`LorentzError::NumericallyAmbiguous`].
pub fn classify_isometry(l: &Isometry, tol: f64) -> Result<IsometryClass, LorentzError> {
    let residual = isometry_residual(&l.matrix, l.kind);
    if !residual.is_finite() || residual > tol.max(TAU_ISO) {
        return Err(LorentzError::NotAnIsometry { residual });
    }
    let m = l.reference_matrix();
    let eigenvalues = char_poly_real_eigenvalues(&m);
    let n = m - Mat3::identity();
    let band = AMBIGUITY_FACTOR * tol;
    let scale = m.amax().max(1.0);
    let nn = n.amax();
    if nn < tol * scale {
        return Ok(IsometryClass {
            kind: IsometryType::Identity,
            adapted_frame: Frame::reference(),
            eigenvalues,
        });
    }
    if nn < band * scale {
        return Err(ambiguous(format!("‖L − Id‖ = {nn:.3e} close to identity")));
    }
    let tau = m.trace() - 1.0;
    let axis = kernel_direction(&n);
    let delta = tau - 2.0;
    let tscale = scale * scale;

    if delta.abs() <= tol * tscale {
        // Parabolic: null axis.
        if minner(&axis, &axis).abs() > 1e-6 {
            return Err(ambiguous("trace is parabolic but the fixed axis is not null"));
        }
        let frame = lvb_from_null(&axis);
        let mm = frame.matrix_in_frame(&m);
        let mpar = mm[(1, 2)];
        if mpar.abs() < band || !((mm - c_lm(1.0, mpar)).amax() <= band * scale) {
            return Err(ambiguous("trace is parabolic but the axis is not an isolated null line"));
        }
        let basis = Mat3::from_columns(&[
            frame.vector(0) * mpar,
            frame.vector(1),
            frame.vector(2) / mpar,
        ]);
        return Ok(IsometryClass {
            kind: IsometryType::Parabolic,
            adapted_frame: Frame::new_unchecked(FrameKind::Lvb, basis),
            eigenvalues,
        });
    }
    if delta.abs() < band * tscale {
        return Err(ambiguous(format!("trace gap {delta:.3e} near the parabolic locus")));
    }
    let axis_causal = minner(&axis, &axis);
    if axis_causal < 0.0 && delta < 0.0 {
        // Elliptic: rotation about a timelike axis.
        let t = future_unit_timelike(&axis);
        let (v, w) = complete_orthonormal(&t);
        let frame = Frame::new_unchecked(FrameKind::Onb, Mat3::from_columns(&[t, v, w]));
        let mm = frame.matrix_in_frame(&m);
        let mut theta = mm[(2, 1)].atan2(mm[(1, 1)]);
        if theta < 0.0 {
            theta += TAU;
        }
        let gap = (theta - PI).abs();
        if gap < tol {
            return Ok(IsometryClass {
                kind: IsometryType::HalfTurn,
                adapted_frame: frame,
                eigenvalues,
            });
        }
        if gap < band {
            return Err(ambiguous(format!("rotation angle within {gap:.3e} of π")));
        }
        if theta < band || TAU - theta < band {
            return Err(ambiguous("rotation angle close to 0"));
        }
        return Ok(IsometryClass {
            kind: IsometryType::Rotation { t: theta },
            adapted_frame: frame,
            eigenvalues,
        });
    }
    if axis_causal > 0.0 {
        // Hyperbolic: spacelike axis, null eigenlines in its orthogonal plane.
        let v = axis / axis_causal.sqrt();
        let frame = lvb_around_spacelike(&v);
        let mm = frame.matrix_in_frame(&m);
        let lpar = mm[(0, 0)];
        if (lpar + 1.0).abs() < tol * scale {
            let onb = frame.converted();
            return Ok(IsometryClass {
                kind: IsometryType::SpacelikeReflection,
                adapted_frame: onb,
                eigenvalues,
            });
        }
        if (lpar + 1.0).abs() < band * scale || (lpar - 1.0).abs() < band * scale {
            return Err(ambiguous(format!("boost parameter {lpar} close to ±1")));
        }
        if lpar.abs() < 1.0 {
            let swapped = Mat3::from_columns(&[frame.vector(2), -frame.vector(1), frame.vector(0)]);
            return Ok(IsometryClass {
                kind: IsometryType::Boost { l: 1.0 / lpar },
                adapted_frame: Frame::new_unchecked(FrameKind::Lvb, swapped),
                eigenvalues,
            });
        }
        return Ok(IsometryClass { kind: IsometryType::Boost { l: lpar }, adapted_frame: frame, eigenvalues });
    }
    Err(ambiguous(format!(
        "inconsistent trace {tau:.6} and axis type ⟨a,a⟩ = {axis_causal:.3e}"
    )))
}

/// Max-norm difference between the matrix of `L` in the adapted frame of `class`
/// and the class's normal form.
pub fn normal_form_residual(l: &Isometry, class: &IsometryClass) -> f64 {
    let mm = class.adapted_frame.matrix_in_frame(&l.reference_matrix());
    (mm - class.normal_form()).amax()
}

/// Deterministic pseudo-random element of SO(1,2) from three angles/rapidities.
///
/// `rot1 · boost_tw(eta) · rot2`, optionally composed with the time-reversing
/// element `diag(−1, −1, 1)`. The second component reverses the time orientation,
/// which conjugates `A_t` into `A_{2π−t}`.
pub fn group_element(theta1: f64, eta: f64, theta2: f64, time_reversing: bool) -> Isometry {
    let mut m = rotation_matrix(theta1) * boost_tw(eta) * rotation_matrix(theta2);
    if time_reversing {
        m *= Mat3::from_diagonal(&Vector3::new(-1.0, -1.0, 1.0));
    }
    Isometry { matrix: m, kind: FrameKind::Onb }
}

/// True iff the reference-ONB matrix maps the future cone to itself.
pub fn preserves_time_orientation(m_ref: &Mat3) -> bool {
    m_ref[(0, 0)] > 0.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_examples() {
        let t = Vector3::new(1.0, 0.0, 0.0);
        assert_eq!(inner(&t, &t, FrameKind::Onb), -1.0);
        let x = Vector3::new(1.0, 1.0, 0.0);
        assert_eq!(inner(&x, &x, FrameKind::Lvb), 1.0);
        assert_eq!(inner(&Vector3::zeros(), &x, FrameKind::Lvb), 0.0);
    }

    #[test]
    fn standard_lvb_gram_and_orientation() {
        let f = Frame::standard_lvb();
        assert!(f.gram_residual() < 1e-15);
        assert_eq!(f.orientation(), 1);
        assert!((f.converted().basis() - Mat3::identity()).amax() < 1e-15);
    }

    #[test]
    fn char_poly_of_boost() {
        let e = char_poly_real_eigenvalues(&Mat3::from_diagonal(&Vector3::new(2.0, 1.0, 0.5)));
        assert!((e[0] - 2.0).abs() < 1e-14 && (e[1] - 1.0).abs() < 1e-14 && (e[2] - 0.5).abs() < 1e-14);
        let r = char_poly_real_eigenvalues(&rotation_matrix(0.7));
        assert!((r[0] - 1.0).abs() < 1e-14 && r[1].is_nan());
    }

    #[test]
    fn kernel_of_parabolic() {
        let m = Frame::standard_lvb().matrix_to_reference(&c_lm(1.0, 1.0));
        let a = kernel_direction(&(m - Mat3::identity()));
        assert!(minner(&a, &a).abs() < 1e-14);
    }
}
