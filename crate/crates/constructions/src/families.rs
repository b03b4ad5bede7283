//! Hypersphere generators.

use crate::base::BaseSurface;
use crate::cases::{curve_condition_residual, interior_samples, CaseKind, CaseTag, CurveResidual, Flavor};
use crate::curve::PlaneCurve;
use crate::ConstructionError;
use blaschke::dd::DD;
use blaschke::{Domain, FnSampler, ImmersionSampler};
use cubic_form::SymmetryTag;
use std::sync::Arc;

/// Relative size of the improper-identity residual below which a warped curve is
/// treated as improper.
const IMPROPER_DETECT: f64 = 1e-8;

/// A generated sampler with its advertised metadata.
#[derive(Clone)]
pub struct Generated {
    pub sampler: Arc<dyn ImmersionSampler>,
    /// Class the pointwise scan is expected to report.
    pub expected_class: SymmetryTag,
    /// Expected constant `H` (`0` for improper hyperspheres).
    pub expected_h: Option<f64>,
    pub case: Option<CaseTag>,
    /// Curve identity check on 64 interior samples, for curve-based families.
    pub curve_check: Option<CurveResidual>,
}

impl std::fmt::Debug for Generated {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Generated")
            .field("sampler", &self.sampler.name())
            .field("expected_class", &self.expected_class)
            .field("expected_h", &self.expected_h)
            .field("case", &self.case)
            .field("curve_check", &self.curve_check)
            .finish()
    }
}

impl Generated {
    /// Whether ξ is expected to be constant.
    pub fn is_improper(&self) -> bool {
        self.expected_h == Some(0.0)
    }
}

/// `(e^u cos s, e^u sin s, e^{−u} cos τ, e^{−u} sin τ)` on the quadric
/// `(x₁² + x₂²)(x₃² + x₄²) = 1`.
pub fn quadric_z2z2() -> Generated {
    let s = FnSampler::new("quadric-z2z2", Domain::new([-0.5, 0.0, 0.0], [0.5, 1.5, 1.5]), None, |p: [DD; 3]| {
        let (e, ei) = (p[0].exp(), (-p[0]).exp());
        let (s1, c1) = p[1].sin_cos();
        let (s2, c2) = p[2].sin_cos();
        [e * c1, e * s1, ei * c2, ei * s2]
    });
    Generated {
        sampler: Arc::new(s),
        expected_class: SymmetryTag::Z2xZ2,
        expected_h: None,
        case: None,
        curve_check: None,
    }
}

/// `(e^u cos s, e^u sin s, e^{−u} cosh τ, e^{−u} sinh τ)` on the quadric
/// `(x₁² + x₂²)(x₃² − x₄²) = 1`.
pub fn quadric_z2() -> Generated {
    let s = FnSampler::new("quadric-z2", Domain::new([-0.5, 0.0, -0.75], [0.5, 1.5, 0.75]), None, |p: [DD; 3]| {
        let (e, ei) = (p[0].exp(), (-p[0]).exp());
        let (s1, c1) = p[1].sin_cos();
        [e * c1, e * s1, ei * p[2].cosh(), ei * p[2].sinh()]
    });
    Generated {
        sampler: Arc::new(s),
        expected_class: SymmetryTag::Z2B,
        expected_h: None,
        case: None,
        curve_check: None,
    }
}

fn flavor_of(base: &BaseSurface) -> Flavor {
    if !base.is_definite() {
        Flavor::SO11
    } else if base.is_quadric() {
        Flavor::SO2
    } else {
        Flavor::Z3
    }
}

/// `γ₂` (warped) or `γ₁` and `γ₁γ₂′ − γ₁′γ₂` (graph, proper warped) must keep a
/// strict sign over the samples.
fn check_transversal(curve: &PlaneCurve, ts: &[f64], graph: bool) -> Result<(), ConstructionError> {
    let quantities = |t: f64| {
        let [a, b] = curve.derivatives(t);
        let wr = a[0] * b[1] - a[1] * b[0];
        if graph {
            [a[0], wr]
        } else {
            [b[0], 1.0]
        }
    };
    let first = quantities(ts[0]);
    for &t in ts {
        let q = quantities(t);
        for i in 0..2 {
            if !(q[i] * first[i].signum() > 0.0) || !q[i].is_finite() {
                return Err(ConstructionError::IllegalCurve(format!("transversality fails near t = {t}")));
            }
        }
    }
    Ok(())
}

/// Sign of the value at the middle of the interval.
fn mid_sign(curve: &PlaneCurve, f: impl Fn([[f64; 3]; 2]) -> f64) -> f64 {
    let [a, b] = curve.interval();
    f(curve.derivatives(0.5 * (a + b))).signum()
}

fn box_domain(t: [f64; 2], base: &BaseSurface) -> Domain {
    let (lo, hi) = base.default_box();
    Domain::new([t[0], lo, lo], [t[1], hi, hi])
}

/// `φ(t, v, w) = (γ₁(t), γ₂(t)·ψ(v, w))` for a proper positive definite base
/// (ellipsoid, two-sheeted hyperboloid, Tzitzeica sheet) or the one-sheeted
/// hyperboloid (SO(1,1) flavor).
///
/// The curve may satisfy either the proper or the improper identity; the improper
/// one is detected from its residual and the metadata set accordingly. The
/// advertised class is the generic one: special curves can make the image a
/// quadric (for example [`crate::improper_fixture_curve`] over the two-sheeted
/// hyperboloid gives a paraboloid, with `K ≡ 0`).
pub fn warped_proper(curve: &PlaneCurve, base: BaseSurface) -> Result<Generated, ConstructionError> {
    if base.is_graph() {
        return Err(ConstructionError::IllegalParameter(format!(
            "warped products need a proper base, got {}",
            base.tag.name()
        )));
    }
    let ts = interior_samples(curve.interval(), 64);
    check_transversal(curve, &ts, false)?;
    let flavor = flavor_of(&base);
    let eps1 = base.eps1();
    let improper_case = CaseTag { kind: CaseKind::ImproperWarped, flavor };
    let improper = curve_condition_residual(curve, improper_case, eps1, &ts)?;
    let is_improper = improper.min_lhs > 0.0 && improper.max_residual <= IMPROPER_DETECT * improper.min_lhs.max(1.0);
    let (case, check, expected_h) = if is_improper {
        (improper_case, improper, 0.0)
    } else {
        check_transversal(curve, &ts, true)?;
        let case = CaseTag { kind: CaseKind::ProperWarped, flavor };
        let check = curve_condition_residual(curve, case, eps1, &ts)?;
        let h = if flavor == Flavor::SO11 {
            mid_sign(curve, |[a, b]| (a[0] * b[1] - a[1] * b[0]) * (a[1] * b[2] - a[2] * b[1]))
        } else {
            -mid_sign(curve, |[a, b]| a[1] * b[0] * eps1 * (a[0] * b[1] - a[1] * b[0]))
        };
        (case, check, h)
    };
    let c = curve.clone();
    let name = format!("warped-proper({})", base.tag.name());
    let s = FnSampler::new(name, box_domain(curve.interval(), &base), Some(expected_h), move |p: [DD; 3]| {
        let [g1, g2] = c.eval_dd(p[0]);
        let x = base.eval_dd(p[1], p[2]);
        [g1, g2 * x[0], g2 * x[1], g2 * x[2]]
    });
    Ok(Generated {
        sampler: Arc::new(s),
        expected_class: flavor.tag(),
        expected_h: Some(expected_h),
        case: Some(case),
        curve_check: Some(check),
    })
}

/// `φ(t, v, w) = (γ₁v, γ₁w, γ₁f(v, w) + γ₂, γ₁)` over a graph base.
pub fn warped_graph_proper(curve: &PlaneCurve, base: BaseSurface) -> Result<Generated, ConstructionError> {
    if !base.is_graph() {
        return Err(ConstructionError::IllegalParameter(format!(
            "warped graphs need a graph base, got {}",
            base.tag.name()
        )));
    }
    let ts = interior_samples(curve.interval(), 64);
    check_transversal(curve, &ts, true)?;
    let flavor = flavor_of(&base);
    let case = CaseTag { kind: CaseKind::ProperGraph, flavor };
    let check = curve_condition_residual(curve, case, 0.0, &ts)?;
    let h = if flavor == Flavor::SO11 {
        mid_sign(curve, |[a, b]| (a[0] * b[1] - a[1] * b[0]) * (a[1] * b[2] - a[2] * b[1]))
    } else {
        mid_sign(curve, |[a, b]| (a[0] * b[1] - a[1] * b[0]) * a[0] * a[1])
    };
    let c = curve.clone();
    let name = format!("warped-graph({})", base.tag.name());
    let s = FnSampler::new(name, box_domain(curve.interval(), &base), Some(h), move |p: [DD; 3]| {
        let [g1, g2] = c.eval_dd(p[0]);
        let f = base.graph_dd(p[1], p[2]).expect("graph base");
        [g1 * p[1], g1 * p[2], g1 * f + g2, g1]
    });
    Ok(Generated {
        sampler: Arc::new(s),
        expected_class: flavor.tag(),
        expected_h: Some(h),
        case: Some(case),
        curve_check: Some(check),
    })
}

/// Which closed-form improper family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum ImproperKind {
    /// `(tv, tw, tf − ct⁴, t)`.
    A,
    /// `(v, w, f + ct³, t⁴)`.
    B,
}

/// The improper families over a graph base, on `t ∈ [0.5, 1.5]`.
pub fn improper_family(kind: ImproperKind, c: f64, base: BaseSurface) -> Result<Generated, ConstructionError> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(ConstructionError::IllegalParameter(format!("c must be positive, got {c}")));
    }
    if !base.is_graph() {
        return Err(ConstructionError::IllegalParameter(format!(
            "improper families need a graph base, got {}",
            base.tag.name()
        )));
    }
    let flavor = flavor_of(&base);
    let domain = box_domain([0.5, 1.5], &base);
    let (name, case_kind) = match kind {
        ImproperKind::A => (format!("improper-a({})", base.tag.name()), CaseKind::ImproperA),
        ImproperKind::B => (format!("improper-b({})", base.tag.name()), CaseKind::ImproperB),
    };
    let s: Arc<dyn ImmersionSampler> = match kind {
        ImproperKind::A => Arc::new(FnSampler::new(name, domain, Some(0.0), move |p: [DD; 3]| {
            let t = p[0];
            let f = base.graph_dd(p[1], p[2]).expect("graph base");
            [t * p[1], t * p[2], t * f - t.powi(4) * c, t]
        })),
        ImproperKind::B => Arc::new(FnSampler::new(name, domain, Some(0.0), move |p: [DD; 3]| {
            let t = p[0];
            let f = base.graph_dd(p[1], p[2]).expect("graph base");
            [p[1], p[2], f + t.powi(3) * c, t.powi(4)]
        })),
    };
    Ok(Generated {
        sampler: s,
        expected_class: flavor.tag(),
        expected_h: Some(0.0),
        case: Some(CaseTag { kind: case_kind, flavor }),
        curve_check: None,
    })
}
