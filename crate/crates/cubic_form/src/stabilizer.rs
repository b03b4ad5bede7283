//! Stabilizer classification of traceless cubic forms under SO(1,2).
//!
//! Two stages:
//!
//! 1. *Lie-algebra probe.* The infinitesimal action of `so(1,2)` on the form is a
//!    10×3 linear map; its kernel (singular values below `tol·σ_max`) is the Lie
//!    algebra of the stabilizer. Dimension 3 means `K = 0`; dimension 1 gives a
//!    one-parameter group whose generator is elliptic (SO(2)), hyperbolic
//!    (SO(1,1)) or nilpotent (R).
//! 2. *Discrete stage.* Every axis of a discrete symmetry (`A_π`, `A_{2π/3}`,
//!    `B`) satisfies `K(X, X) ∥ X`. Candidate axes are found by Gauss–Newton from
//!    a 642-point icosahedral direction grid; each candidate is tested against
//!    the generators it could carry, and the resulting set determines the group.
//!
//! In every case the form is then moved to the canonical frame of its class and
//! the parameters are read off there.

use crate::form::{ensure_admissible, CubicForm, TAU_APOL};
use crate::tensor::{self, Sym3};
use crate::CubicError;
use lorentz_core::{
    complete_orthonormal, future_unit_timelike, gram, kernel_direction, lvb_around_spacelike,
    lvb_from_null, minner, rotation_matrix, Frame, FrameKind, Mat3, MinkowskiVector,
};
use nalgebra::{DMatrix, SMatrix, Vector3};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

/// Default classification tolerance (relative to the normalized form).
pub const DEFAULT_TOL: f64 = 1e-8;
/// Factor defining the ambiguity band `[tol, BAND·tol)`.
pub const BAND: f64 = 10.0;
/// Forms with max-norm below this are the zero form.
pub const ZERO_FORM: f64 = 1e-14;
const NEWTON_TOL: f64 = 1e-12;
const NEWTON_MAX_ITER: usize = 50;

/// Stabilizer classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymmetryTag {
    FullSO12,
    SO2,
    S3,
    Z3,
    Z2B,
    Z2xZ2,
    Z2Api,
    SO11,
    RLine,
    Trivial,
}

impl SymmetryTag {
    pub const ALL: [SymmetryTag; 10] = [
        SymmetryTag::FullSO12,
        SymmetryTag::SO2,
        SymmetryTag::S3,
        SymmetryTag::Z3,
        SymmetryTag::Z2B,
        SymmetryTag::Z2xZ2,
        SymmetryTag::Z2Api,
        SymmetryTag::SO11,
        SymmetryTag::RLine,
        SymmetryTag::Trivial,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SymmetryTag::FullSO12 => "FullSO12",
            SymmetryTag::SO2 => "SO2",
            SymmetryTag::S3 => "S3",
            SymmetryTag::Z3 => "Z3",
            SymmetryTag::Z2B => "Z2B",
            SymmetryTag::Z2xZ2 => "Z2xZ2",
            SymmetryTag::Z2Api => "Z2Api",
            SymmetryTag::SO11 => "SO11",
            SymmetryTag::RLine => "RLine",
            SymmetryTag::Trivial => "Trivial",
        }
    }

    /// Canonical frame kind of the class.
    pub fn frame_kind(&self) -> FrameKind {
        match self {
            SymmetryTag::SO11 | SymmetryTag::RLine => FrameKind::Lvb,
            _ => FrameKind::Onb,
        }
    }
}

/// Result of [`stabilizer_classify`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryClass {
    pub tag: SymmetryTag,
    /// Canonical parameters (`a_i` for ONB classes, `b_i` for LVB classes).
    pub params: BTreeMap<String, f64>,
    pub canonical_frame: Frame,
    /// Largest coefficient of the canonical frame expansion that the class
    /// requires to vanish, relative to the form's max-norm.
    pub pattern_residual: f64,
    /// Largest invariance residual of the class generators (normalized form).
    pub generator_residual: f64,
}

impl SymmetryClass {
    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.get(name).copied()
    }
}

fn ambiguous(msg: impl Into<String>) -> CubicError {
    CubicError::NumericallyAmbiguous(msg.into())
}

/// The three one-parameter generators (rotation, `t–w` boost, parabolic) in the
/// reference ONB.
pub fn so12_basis() -> [Mat3; 3] {
    let e1 = Mat3::new(0.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 1.0, 0.0);
    let e2 = Mat3::new(0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0);
    let n = Mat3::new(0.0, -1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0);
    let e3 = Frame::standard_lvb().matrix_to_reference(&n);
    [e1, e2, e3]
}

/// Half-turn about a unit timelike axis `t` (reference coordinates).
pub fn half_turn_about(t: &MinkowskiVector) -> Mat3 {
    rotation_about(t, PI)
}

/// Rotation by `angle` about a unit timelike axis `t`.
pub fn rotation_about(t: &MinkowskiVector, angle: f64) -> Mat3 {
    let t = future_unit_timelike(t);
    let (v, w) = complete_orthonormal(&t);
    let f = Frame::new_unchecked(FrameKind::Onb, Mat3::from_columns(&[t, v, w]));
    f.matrix_to_reference(&rotation_matrix(angle))
}

/// Spacelike reflection `B` fixing the unit spacelike vector `v`:
/// `Y ↦ −Y + 2⟨v,Y⟩v`.
pub fn reflection_about(v: &MinkowskiVector) -> Mat3 {
    let g = gram(FrameKind::Onb);
    -Mat3::identity() + 2.0 * v * (g * v).transpose()
}

fn normalized_reference(k: &CubicForm) -> (Sym3, f64) {
    let r = k.in_reference();
    let n = tensor::dense_norm(r.lowered());
    (tensor::scale(r.lowered(), 1.0 / n), n)
}

fn invariance(l: &Mat3, k: &Sym3) -> f64 {
    tensor::amax(&tensor::sub(&tensor::pullback(k, l), k))
}

/// Relative invariance residual of `g` (given in the adapted basis `f`) measured
/// on the form expressed in that basis. Conditioning of `f` does not enter the
/// generator, so boosted forms are judged as reliably as canonical ones.
fn adapted_invariance(g: &Mat3, f: &Mat3, k: &Sym3) -> f64 {
    let kf = tensor::pullback(k, f);
    invariance(g, &kf) / tensor::amax(&kf)
}

/// Directions of a 3-times subdivided icosahedron (642 unit vectors).
pub fn icosahedral_grid() -> &'static [Vector3<f64>] {
    static GRID: OnceLock<Vec<Vector3<f64>>> = OnceLock::new();
    GRID.get_or_init(|| {
        let p = (1.0 + 5f64.sqrt()) / 2.0;
        let mut verts: Vec<Vector3<f64>> = [
            (-1.0, p, 0.0),
            (1.0, p, 0.0),
            (-1.0, -p, 0.0),
            (1.0, -p, 0.0),
            (0.0, -1.0, p),
            (0.0, 1.0, p),
            (0.0, -1.0, -p),
            (0.0, 1.0, -p),
            (p, 0.0, -1.0),
            (p, 0.0, 1.0),
            (-p, 0.0, -1.0),
            (-p, 0.0, 1.0),
        ]
        .iter()
        .map(|&(x, y, z)| Vector3::new(x, y, z).normalize())
        .collect();
        let mut faces: Vec<[usize; 3]> = vec![
            [0, 11, 5],
            [0, 5, 1],
            [0, 1, 7],
            [0, 7, 10],
            [0, 10, 11],
            [1, 5, 9],
            [5, 11, 4],
            [11, 10, 2],
            [10, 7, 6],
            [7, 1, 8],
            [3, 9, 4],
            [3, 4, 2],
            [3, 2, 6],
            [3, 6, 8],
            [3, 8, 9],
            [4, 9, 5],
            [2, 4, 11],
            [6, 2, 10],
            [8, 6, 7],
            [9, 8, 1],
        ];
        for _ in 0..3 {
            let mut cache = std::collections::HashMap::new();
            let mut mid = |a: usize, b: usize, verts: &mut Vec<Vector3<f64>>| -> usize {
                let key = (a.min(b), a.max(b));
                *cache.entry(key).or_insert_with(|| {
                    verts.push(((verts[a] + verts[b]) / 2.0).normalize());
                    verts.len() - 1
                })
            };
            let mut next = Vec::with_capacity(faces.len() * 4);
            for f in &faces {
                let ab = mid(f[0], f[1], &mut verts);
                let bc = mid(f[1], f[2], &mut verts);
                let ca = mid(f[2], f[0], &mut verts);
                next.push([f[0], ab, ca]);
                next.push([f[1], bc, ab]);
                next.push([f[2], ca, bc]);
                next.push([ab, bc, ca]);
            }
            faces = next;
        }
        verts
    })
}

/// Solutions of `K(X,X) ∥ X` on the Euclidean unit sphere, deduplicated up to sign.
pub fn eigen_directions(k: &Sym3) -> Vec<Vector3<f64>> {
    let ginv = gram(FrameKind::Onb);
    let mut found: Vec<Vector3<f64>> = Vec::new();
    for x0 in icosahedral_grid() {
        let mut x = *x0;
        let mut ok = false;
        let mut polish = 2;
        for _ in 0..NEWTON_MAX_ITER + 2 {
            let kx = tensor::k_matrix(k, &x, &ginv);
            let q = kx * x;
            let r1 = x.cross(&q);
            let r2 = x.norm_squared() - 1.0;
            if r1.norm() < NEWTON_TOL && r2.abs() < NEWTON_TOL {
                if polish == 0 {
                    ok = true;
                    break;
                }
                // A few extra quadratic steps push the axis to full precision,
                // which matters once the form is strongly boosted.
                polish -= 1;
            }
            // d(X × Q) = (−[Q]× + [X]× · 2K_X) dX, d(|X|² − 1) = 2Xᵀ dX.
            let j1 = -q.cross_matrix() + x.cross_matrix() * (2.0 * kx);
            let mut j = SMatrix::<f64, 4, 3>::zeros();
            j.fixed_view_mut::<3, 3>(0, 0).copy_from(&j1);
            j.fixed_view_mut::<1, 3>(3, 0).copy_from(&(2.0 * x.transpose()));
            let r = nalgebra::Vector4::new(r1[0], r1[1], r1[2], r2);
            let jtj = j.transpose() * j;
            let rhs = -(j.transpose() * r);
            // Tiny Levenberg damping keeps degenerate roots reachable.
            let jtj = jtj + Mat3::identity() * (1e-14 * jtj.trace());
            let dx = match jtj.try_inverse() {
                Some(inv) => inv * rhs,
                None => break,
            };
            x += dx;
            if !x.iter().all(|c| c.is_finite()) {
                break;
            }
        }
        if !ok {
            // Degenerate roots converge only linearly; accept approximate ones and
            // let the axis refinement finish them.
            let q = tensor::k_matrix(k, &x, &ginv) * x;
            if !(x.cross(&q).norm() < 1e-7 && (x.norm() - 1.0).abs() < 1e-3) {
                continue;
            }
        }
        let x = x.normalize();
        let x = canonical_sign(&x);
        if !found.iter().any(|y| (y - x).norm() < 1e-5) {
            found.push(x);
        }
    }
    found
}

fn canonical_sign(x: &Vector3<f64>) -> Vector3<f64> {
    let i = x.iamax();
    if x[i] < 0.0 {
        -x
    } else {
        *x
    }
}

/// Stage (i): null space of the infinitesimal action.
struct Probe {
    kernel_dim: usize,
    generator: Mat3,
}

fn lie_probe(k: &Sym3, tol: f64) -> Result<Probe, CubicError> {
    let basis = so12_basis();
    let mut m = DMatrix::<f64>::zeros(10, 3);
    for (j, a) in basis.iter().enumerate() {
        let d = tensor::derivation(k, a);
        // Weight off-diagonal slots by their multiplicity so the norm matches the
        // dense tensor norm.
        for (i, &(p, q, r)) in tensor::TRIPLES.iter().enumerate() {
            let mult = match (p == q, q == r) {
                (true, true) => 1.0,
                (false, false) => 6.0,
                _ => 3.0,
            };
            m[(i, j)] = d[i] * f64::sqrt(mult);
        }
    }
    let svd = m.svd(false, true);
    let s = &svd.singular_values;
    let v_t = svd.v_t.as_ref().expect("requested V");
    let smax = s.max();
    let mut order: Vec<usize> = (0..3).collect();
    order.sort_by(|&a, &b| s[a].partial_cmp(&s[b]).unwrap());
    let mut dim = 0;
    for &i in &order {
        let rel = s[i] / smax;
        if rel < tol {
            dim += 1;
        } else if rel < BAND * tol {
            return Err(ambiguous(format!(
                "stabilizer Lie algebra: singular value ratio {rel:.3e} in the ambiguity band"
            )));
        }
    }
    let row = v_t.row(order[0]);
    let generator = basis[0] * row[0] + basis[1] * row[1] + basis[2] * row[2];
    Ok(Probe { kernel_dim: dim, generator })
}

/// Classifies the stabilizer of `k` in SO(1,2) and returns its canonical form.
pub fn stabilizer_classify(k: &CubicForm, tol: f64) -> Result<SymmetryClass, CubicError> {
    ensure_admissible(k, TAU_APOL.max(tol))?;
    let reference = k.in_reference();
    if reference.amax() < ZERO_FORM {
        return Ok(SymmetryClass {
            tag: SymmetryTag::FullSO12,
            params: BTreeMap::new(),
            canonical_frame: Frame::reference(),
            pattern_residual: 0.0,
            generator_residual: 0.0,
        });
    }
    let (kn, _) = normalized_reference(k);
    let probe = lie_probe(&kn, tol)?;
    match probe.kernel_dim {
        3 => Ok(SymmetryClass {
            tag: SymmetryTag::FullSO12,
            params: BTreeMap::new(),
            canonical_frame: Frame::reference(),
            pattern_residual: 0.0,
            generator_residual: 0.0,
        }),
        2 => Err(ambiguous("two-dimensional stabilizer algebra is not a stabilizer of a cubic form")),
        1 => continuous_class(&reference, &probe.generator, tol),
        _ => discrete_class(&reference, &kn, tol),
    }
}

fn continuous_class(
    reference: &CubicForm,
    a: &Mat3,
    tol: f64,
) -> Result<SymmetryClass, CubicError> {
    let an = a / a.norm();
    let cube = (an * an * an).norm();
    let axis = kernel_direction(&an);
    if cube < 1e-6 {
        // Nilpotent generator: null axis, parabolic subgroup.
        let frame = lvb_from_null(&axis);
        let b = reference.in_frame(&frame).to_lvb_coeffs()?;
        let b7 = b.b(7);
        if b7.abs() < BAND * tol * reference.amax() {
            return Err(ambiguous("parabolic stabilizer with vanishing b7"));
        }
        // e ↦ a·e, f ↦ f/a sends b7 ↦ b7/a³; normalize to b7 = 1.
        let s = b7.cbrt();
        let basis = Mat3::from_columns(&[frame.vector(0) * s, frame.vector(1), frame.vector(2) / s]);
        let canon = Frame::new_unchecked(FrameKind::Lvb, basis);
        return finish(SymmetryTag::RLine, reference, canon, &[]);
    }
    let trace_sq = (an * an).trace();
    if trace_sq < 0.0 {
        // Elliptic: rotations about a timelike axis.
        let t = future_unit_timelike(&axis);
        let (v, w) = complete_orthonormal(&t);
        let mut frame = Frame::new_unchecked(FrameKind::Onb, Mat3::from_columns(&[t, v, w]));
        let a4 = reference.in_frame(&frame).to_onb_coeffs()?.a(4);
        if a4 < 0.0 {
            frame = Frame::new_unchecked(FrameKind::Onb, Mat3::from_columns(&[-t, w, v]));
        }
        let gens: Vec<Mat3> = [0.7, 2.0].iter().map(|&s| rotation_about(&t, s)).collect();
        finish(SymmetryTag::SO2, reference, frame, &gens)
    } else {
        // Hyperbolic: boosts fixing a spacelike axis.
        let v = axis / minner(&axis, &axis).sqrt();
        let mut frame = lvb_around_spacelike(&v);
        let b4 = reference.in_frame(&frame).to_lvb_coeffs()?.b(4);
        if b4 < 0.0 {
            frame = Frame::new_unchecked(
                FrameKind::Lvb,
                Mat3::from_columns(&[frame.vector(2), -frame.vector(1), frame.vector(0)]),
            );
        }
        let gens: Vec<Mat3> =
            [2.0, -0.5].iter().map(|&l| frame.matrix_to_reference(&lorentz_core::c_lm(l, 0.0))).collect();
        finish(SymmetryTag::SO11, reference, frame, &gens)
    }
}

/// Polishes a candidate axis `x` of the symmetry `gen(x)` by Gauss–Newton on the
/// invariance defect `k ∘ gen(x) − k`, moving `x` within its Minkowski-orthogonal
/// complement. Eigen-directions can be degenerate roots of `X × K(X,X)` (for
/// example when `K_X = 0`), where Newton only converges linearly; the
/// invariance defect has a regular zero at a true axis. Returns `x` unchanged
/// when it is far from being an axis.
fn refine_axis(kn: &Sym3, x: &Vector3<f64>, gen: &dyn Fn(&Vector3<f64>) -> Mat3) -> Vector3<f64> {
    let defect = |y: &Vector3<f64>| tensor::sub(&tensor::pullback(kn, &gen(y)), kn);
    let norm = |d: &Sym3| d.iter().map(|c| c * c).sum::<f64>().sqrt();
    let mut x = x / minner(x, x).abs().sqrt();
    let mut r = defect(&x);
    if norm(&r) > 1e-2 {
        return x;
    }
    for _ in 0..30 {
        let (d0, d1) = complete_orthonormal(&x);
        let h = 1e-7;
        let mut j = SMatrix::<f64, 10, 2>::zeros();
        for (c, d) in [d0, d1].iter().enumerate() {
            let rp = defect(&(x + d * h));
            let rm = defect(&(x - d * h));
            for i in 0..10 {
                j[(i, c)] = (rp[i] - rm[i]) / (2.0 * h);
            }
        }
        let rv = SMatrix::<f64, 10, 1>::from_column_slice(&r);
        let Some(inv) = (j.transpose() * j).try_inverse() else { break };
        let step = inv * (j.transpose() * rv);
        let y = x - d0 * step[0] - d1 * step[1];
        let y = y / minner(&y, &y).abs().sqrt();
        let ry = defect(&y);
        if !(norm(&ry) < norm(&r)) {
            break;
        }
        x = y;
        r = ry;
        if norm(&r) < 1e-15 {
            break;
        }
    }
    x
}

/// Axis data of the discrete stage.
struct Axes {
    half_turn: Vec<Vector3<f64>>,
    third_turn: Vec<Vector3<f64>>,
    reflection: Vec<Vector3<f64>>,
}

fn find_axes(kn: &Sym3, tol: f64) -> Result<Axes, CubicError> {
    let mut axes = Axes { half_turn: vec![], third_turn: vec![], reflection: vec![] };
    let test = |r: f64, what: &str| -> Result<bool, CubicError> {
        if r < tol {
            Ok(true)
        } else if r < BAND * tol {
            Err(ambiguous(format!("{what} invariance residual {r:.3e} in the ambiguity band")))
        } else {
            Ok(false)
        }
    };
    for x in eigen_directions(kn) {
        let q = minner(&x, &x);
        if q.abs() < 1e-6 {
            continue;
        }
        if q < 0.0 {
            for (angle, what) in [(PI, "half-turn"), (TAU / 3.0, "third-turn")] {
                let gen = |x: &Vector3<f64>| rotation_about(x, angle);
                let t = future_unit_timelike(&refine_axis(kn, &x, &gen));
                let (v, w) = complete_orthonormal(&t);
                let adapted = Mat3::from_columns(&[t, v, w]);
                if test(adapted_invariance(&rotation_matrix(angle), &adapted, kn), what)? {
                    if angle == PI {
                        axes.half_turn.push(t);
                    } else {
                        axes.third_turn.push(t);
                    }
                }
            }
        } else {
            let gen = |x: &Vector3<f64>| reflection_about(&(x / minner(x, x).sqrt()));
            let v = refine_axis(kn, &x, &gen);
            let v = v / minner(&v, &v).sqrt();
            let (x0, x1) = complete_orthonormal(&v);
            let (t, w) = if minner(&x0, &x0) < 0.0 { (x0, x1) } else { (x1, x0) };
            let adapted = Mat3::from_columns(&[t, v, w]);
            let b = Mat3::from_diagonal(&Vector3::new(-1.0, 1.0, -1.0));
            if test(adapted_invariance(&b, &adapted, kn), "reflection")? {
                axes.reflection.push(v);
            }
        }
    }
    Ok(axes)
}

fn discrete_class(reference: &CubicForm, kn: &Sym3, tol: f64) -> Result<SymmetryClass, CubicError> {
    let axes = find_axes(kn, tol)?;
    let (nt2, nt3, ns) = (axes.half_turn.len(), axes.third_turn.len(), axes.reflection.len());
    let onb = |a: Vector3<f64>, b: Vector3<f64>, c: Vector3<f64>| {
        Frame::new_unchecked(FrameKind::Onb, Mat3::from_columns(&[a, b, c]))
    };
    let coeffs = |f: &Frame| reference.in_frame(f).to_onb_coeffs();
    if nt3 > 0 && ns > 0 {
        // S3: t the 3-fold axis, v a reflection axis with k_vvv > 0.
        let t = axes.third_turn[0];
        let mut v = axes.reflection[0];
        let mut w = minkowski_complete(&t, &v);
        if coeffs(&onb(t, v, w))?.a(6) < 0.0 {
            v = -v;
            w = -w;
        }
        let gens = vec![rotation_about(&t, TAU / 3.0), reflection_about(&v)];
        return finish(SymmetryTag::S3, reference, onb(t, v, w), &gens);
    }
    if nt3 > 0 {
        // Z3: a4 > 0 by the choice of t, then rotate (v,w) so a7 = 0, a6 > 0.
        let mut t = axes.third_turn[0];
        let (v0, w0) = complete_orthonormal(&t);
        let (mut v, mut w) = (v0, w0);
        if coeffs(&onb(t, v, w))?.a(4) < 0.0 {
            t = -t;
            std::mem::swap(&mut v, &mut w);
        }
        let a = coeffs(&onb(t, v, w))?;
        let s = a.a(7).atan2(a.a(6)) / 3.0;
        let (vs, ws) = (v * s.cos() + w * s.sin(), -v * s.sin() + w * s.cos());
        let gens = vec![rotation_about(&t, TAU / 3.0)];
        return finish(SymmetryTag::Z3, reference, onb(t, vs, ws), &gens);
    }
    if nt2 > 0 && ns > 0 {
        // Z2×Z2: t the half-turn axis, v and w reflection axes; a5 > 0.
        let t = axes.half_turn[0];
        let v = *axes
            .reflection
            .iter()
            .find(|v| minner(v, &t).abs() < 1e-6)
            .ok_or_else(|| ambiguous("reflection axes not orthogonal to the half-turn axis"))?;
        let w = minkowski_complete(&t, &v);
        let mut frame = onb(t, v, w);
        if coeffs(&frame)?.a(5) < 0.0 {
            frame = onb(-t, w, v);
        }
        let gens = vec![half_turn_about(&t), reflection_about(&v)];
        return finish(SymmetryTag::Z2xZ2, reference, frame, &gens);
    }
    if nt2 > 0 {
        // Z2 generated by A_π: diagonalize the (v,w) block, a1 ≥ 0, a4 the larger
        // diagonal entry.
        let mut t = axes.half_turn[0];
        let (mut v, mut w) = complete_orthonormal(&t);
        let a = coeffs(&onb(t, v, w))?;
        if a.a(1) < 0.0 {
            t = -t;
            std::mem::swap(&mut v, &mut w);
        }
        let a = coeffs(&onb(t, v, w))?;
        let (p, q, r) = (a.a(4), a.a(5), a.a(1) - a.a(4));
        let s = 0.5 * (2.0 * q).atan2(p - r);
        let (vs, ws) = (v * s.cos() + w * s.sin(), -v * s.sin() + w * s.cos());
        let gens = vec![half_turn_about(&t)];
        return finish(SymmetryTag::Z2Api, reference, onb(t, vs, ws), &gens);
    }
    if ns > 0 {
        return z2b_class(reference, axes.reflection[0], tol);
    }
    let a = coeffs(&Frame::reference())?;
    let mut params = BTreeMap::new();
    for i in 1..=7 {
        params.insert(format!("a{i}"), a.a(i));
    }
    Ok(SymmetryClass {
        tag: SymmetryTag::Trivial,
        params,
        canonical_frame: Frame::reference(),
        pattern_residual: 0.0,
        generator_residual: 0.0,
    })
}

/// Unit `w` completing the orthonormal pair `(t, v)` to a positive ONB.
fn minkowski_complete(t: &Vector3<f64>, v: &Vector3<f64>) -> Vector3<f64> {
    let c = lorentz_core::lorentz_cross(t, v);
    let w = c / minner(&c, &c).sqrt();
    if Mat3::from_columns(&[*t, *v, w]).determinant() > 0.0 {
        w
    } else {
        -w
    }
}

/// Z2 generated by `B`: `v` is the reflection axis; the boost freedom in `v^⊥` is
/// used to set `a5 = 0` (when `p² > a5²`, `p = a2 − a6/2`) or `p = 0` (when
/// `p² < a5²`); then `a6 ≥ 0` (ties broken by `p ≥ 0`).
fn z2b_class(
    reference: &CubicForm,
    v: Vector3<f64>,
    tol: f64,
) -> Result<SymmetryClass, CubicError> {
    let (x0, x1) = complete_orthonormal(&v);
    let (t, w0) = if minner(&x0, &x0) < 0.0 { (x0, x1) } else { (x1, x0) };
    let w = if Mat3::from_columns(&[t, v, w0]).determinant() > 0.0 { w0 } else { -w0 };
    let frame0 = Frame::new_unchecked(FrameKind::Onb, Mat3::from_columns(&[t, v, w]));
    let a = reference.in_frame(&frame0).to_onb_coeffs()?;
    let p = a.a(2) - a.a(6) / 2.0;
    let (e, f) = (p + a.a(5), p - a.a(5));
    let scale = reference.amax();
    // Boost by η: e ↦ e^{2η} e, f ↦ e^{−2η} f.
    let eta = if (e * f).abs() <= tol * scale * scale || e == 0.0 || f == 0.0 {
        0.0
    } else if e * f > 0.0 {
        0.25 * (f / e).ln()
    } else {
        0.25 * (-f / e).ln()
    };
    let boost = lorentz_core::boost_tw(eta);
    let mut frame = Frame::new_unchecked(FrameKind::Onb, frame0.basis() * boost);
    let a = reference.in_frame(&frame).to_onb_coeffs()?;
    let pn = a.a(2) - a.a(6) / 2.0;
    let flip = a.a(6) < -tol * scale || (a.a(6).abs() <= tol * scale && pn < 0.0);
    if flip {
        let b = frame.basis();
        frame = Frame::new_unchecked(
            FrameKind::Onb,
            Mat3::from_columns(&[-b.column(0).into_owned(), -b.column(1).into_owned(), b.column(2).into_owned()]),
        );
    }
    let gens = vec![reflection_about(&v)];
    finish(SymmetryTag::Z2B, reference, frame, &gens)
}

/// Names of the free parameters of each class.
pub fn class_params(tag: SymmetryTag) -> &'static [&'static str] {
    match tag {
        SymmetryTag::FullSO12 | SymmetryTag::Trivial => &[],
        SymmetryTag::SO2 => &["a4"],
        SymmetryTag::S3 => &["a6"],
        SymmetryTag::Z3 => &["a4", "a6"],
        SymmetryTag::Z2B => &["a2", "a5", "a6"],
        SymmetryTag::Z2xZ2 => &["a5"],
        SymmetryTag::Z2Api => &["a1", "a4"],
        SymmetryTag::SO11 => &["b4"],
        SymmetryTag::RLine => &["b7"],
    }
}

/// The canonical form of a class with the given parameters (unlisted ones zero).
pub fn canonical_form(tag: SymmetryTag, params: &BTreeMap<String, f64>) -> CubicForm {
    let get = |n: &str| params.get(n).copied().unwrap_or(0.0);
    match tag.frame_kind() {
        FrameKind::Onb => {
            let mut a = [0.0; 7];
            for i in 1..=7 {
                a[i - 1] = get(&format!("a{i}"));
            }
            if matches!(tag, SymmetryTag::SO2 | SymmetryTag::Z3) {
                a[0] = 2.0 * a[3];
            }
            CubicForm::from_onb_coeffs(&crate::OnbCoeffs(a), Frame::reference()).expect("ONB")
        }
        FrameKind::Lvb => {
            let mut b = [0.0; 7];
            for i in 1..=7 {
                b[i - 1] = get(&format!("b{i}"));
            }
            CubicForm::from_lvb_coeffs(&crate::LvbCoeffs(b), Frame::standard_lvb()).expect("LVB")
        }
    }
}

fn finish(
    tag: SymmetryTag,
    reference: &CubicForm,
    frame: Frame,
    gens: &[Mat3],
) -> Result<SymmetryClass, CubicError> {
    let in_frame = reference.in_frame(&frame);
    let mut params = BTreeMap::new();
    let all: Vec<f64> = match tag.frame_kind() {
        FrameKind::Onb => in_frame.to_onb_coeffs()?.0.to_vec(),
        FrameKind::Lvb => in_frame.to_lvb_coeffs()?.0.to_vec(),
    };
    for name in class_params(tag) {
        let i: usize = name[1..].parse().expect("index");
        params.insert(name.to_string(), all[i - 1]);
    }
    // Pattern residual: distance to the exact canonical form of these parameters.
    let canon = canonical_form(tag, &params);
    let diff = tensor::sub(in_frame.lowered(), canon.lowered());
    let pattern_residual = tensor::amax(&diff) / reference.amax();
    let generator_residual = gens
        .iter()
        .map(|g| invariance(&frame.matrix_in_frame(g), in_frame.lowered()) / in_frame.amax())
        .fold(0.0, f64::max);
    Ok(SymmetryClass { tag, params, canonical_frame: frame, pattern_residual, generator_residual })
}
