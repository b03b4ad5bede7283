//! Case tags and the curve identities of the converse theorems.

use crate::curve::{CurveLaw, CurveOde, PlaneCurve};
use crate::ConstructionError;
use cubic_form::SymmetryTag;
use serde::{Deserialize, Serialize};

/// Construction family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseKind {
    /// `(γ₁, γ₂ψ)`, proper: `γ₂²|γ₁γ₂′ − γ₁′γ₂|⁵ = ±(γ₁′γ₂″ − γ₁″γ₂′)(γ₁′)²`.
    ProperWarped,
    /// `(γ₁, γ₂ψ)`, improper: `γ₂²|γ₂′|⁵ = ±(γ₁′γ₂″ − γ₁″γ₂′)(γ₁′)²`.
    ImproperWarped,
    /// `(γ₁v, γ₁w, γ₁f + γ₂, γ₁)`: `γ₁²|γ₁γ₂′ − γ₁′γ₂|⁵ = ±(γ₁′γ₂″ − γ₁″γ₂′)(γ₁′)²`.
    ProperGraph,
    /// `(tv, tw, tf − ct⁴, t)`.
    ImproperA,
    /// `(v, w, f + ct³, t⁴)`.
    ImproperB,
}

/// Symmetry flavor of a construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    SO2,
    Z3,
    SO11,
}

impl Flavor {
    pub fn tag(&self) -> SymmetryTag {
        match self {
            Flavor::SO2 => SymmetryTag::SO2,
            Flavor::Z3 => SymmetryTag::Z3,
            Flavor::SO11 => SymmetryTag::SO11,
        }
    }
}

/// Family × flavor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CaseTag {
    pub kind: CaseKind,
    pub flavor: Flavor,
}

/// Outcome of [`curve_condition_residual`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveResidual {
    /// `max |LHS − RHS|` over the samples.
    pub max_residual: f64,
    /// `min |LHS|` over the samples (certifies the "≠ 0" clause when positive).
    pub min_lhs: f64,
    /// Whether the indefiniteness sign clause holds at every sample.
    pub sign_clause: bool,
}

/// `(LHS, RHS, sign clause)` of the case's identity at `t`.
fn identity_at(curve: &PlaneCurve, case: CaseTag, eps1: f64, t: f64) -> Result<(f64, f64, bool), ConstructionError> {
    let [a, b] = curve.derivatives(t);
    let wr = a[0] * b[1] - a[1] * b[0];
    let num = a[1] * b[2] - a[2] * b[1];
    let so11 = case.flavor == Flavor::SO11;
    let rhs_sign = |s: f64| if so11 { num.abs() } else { s * num };
    Ok(match case.kind {
        CaseKind::ProperWarped => {
            let lhs = b[0] * b[0] * wr.abs().powi(5);
            let s = (a[1] * b[0] * eps1).signum();
            let clause = so11 || num.signum() == s;
            (lhs, rhs_sign(s) * a[1] * a[1], clause && wr != 0.0 && b[0] != 0.0)
        }
        CaseKind::ImproperWarped => {
            let lhs = b[0] * b[0] * b[1].abs().powi(5);
            let s = (a[1] * b[0] * eps1).signum();
            let clause = so11 || num.signum() == s;
            (lhs, rhs_sign(s) * a[1] * a[1], clause && b[1] != 0.0)
        }
        CaseKind::ProperGraph => {
            let lhs = a[0] * a[0] * wr.abs().powi(5);
            let s = -(a[0] * a[1]).signum();
            let clause = so11 || num.signum() == s;
            (lhs, rhs_sign(s) * a[1] * a[1], clause && wr != 0.0 && a[0] != 0.0)
        }
        CaseKind::ImproperA | CaseKind::ImproperB => {
            return Err(ConstructionError::IllegalParameter(
                "the improper A/B families are given in closed form and carry no curve identity".into(),
            ))
        }
    })
}

/// Residual of the case's curve identity over the samples `ts`. The SO(1,1)
/// flavor uses the variant with `|γ₁′γ₂″ − γ₁″γ₂′|` in place of the signed factor.
pub fn curve_condition_residual(
    curve: &PlaneCurve,
    case: CaseTag,
    eps1: f64,
    ts: &[f64],
) -> Result<CurveResidual, ConstructionError> {
    let mut out = CurveResidual { max_residual: 0.0, min_lhs: f64::INFINITY, sign_clause: true };
    for &t in ts {
        let (lhs, rhs, clause) = identity_at(curve, case, eps1, t)?;
        out.max_residual = out.max_residual.max((lhs - rhs).abs());
        out.min_lhs = out.min_lhs.min(lhs.abs());
        out.sign_clause &= clause;
    }
    Ok(out)
}

/// `n` equally spaced samples strictly inside `[a, b]`.
pub fn interior_samples(interval: [f64; 2], n: usize) -> Vec<f64> {
    let [a, b] = interval;
    (0..n).map(|k| a + (b - a) * (k as f64 + 0.5) / n as f64).collect()
}

/// The default curve for a case, obtained by integrating its identity with
/// `γ₁ = t`, `γ₂(1) = 1` on `[1, 2]`. The initial slope `γ₂′(1) = 1 ± 0.5` (proper
/// cases) or `±0.5` (improper warped case) is chosen so that the driver
/// `|tγ₂′ − γ₂|` (resp. `|γ₂′|`) decays along the interval, so the solution exists
/// on all of it. The slope `1` would make `tγ₂′ − γ₂` vanish identically.
pub fn default_curve(case: CaseTag, eps1: f64) -> Result<PlaneCurve, ConstructionError> {
    let ode = |law, sigma: f64, dy0: f64| CurveOde { law, sigma, t0: 1.0, t1: 2.0, y0: 1.0, dy0 };
    let so11 = case.flavor == Flavor::SO11;
    // Warped cases: γ₂″ = sign(γ₂ε₁)γ₂²|D|⁵ with γ₂ > 0; SO(1,1) has a free sign.
    let warped_sigma = || {
        let sigma = if so11 { 1.0 } else { eps1.signum() };
        if sigma == 0.0 {
            Err(ConstructionError::IllegalParameter("ε₁ must be ±1 for warped cases".into()))
        } else {
            Ok(sigma)
        }
    };
    match case.kind {
        // D′ = tγ₂″: start with D(1) of sign opposite to γ₂″.
        CaseKind::ProperWarped => {
            let sigma = warped_sigma()?;
            PlaneCurve::from_ode(ode(CurveLaw::Warped, sigma, 1.0 - 0.5 * sigma))
        }
        CaseKind::ImproperWarped => {
            let sigma = warped_sigma()?;
            PlaneCurve::from_ode(ode(CurveLaw::WarpedImproper, sigma, -0.5 * sigma))
        }
        // γ₂″ = −sign(γ₁γ₁′)t²|D|⁵ = −t²|D|⁵ for t > 0.
        CaseKind::ProperGraph => PlaneCurve::from_ode(ode(CurveLaw::Graph, -1.0, 1.5)),
        CaseKind::ImproperA | CaseKind::ImproperB => Err(ConstructionError::IllegalParameter(
            "the improper A/B families need no curve".into(),
        )),
    }
}

/// `(t², √2·t)` on `[0.5, 1.5]`: a closed-form solution of the improper warped
/// identity for `ε₁ = −1` (and of its SO(1,1) variant). Over a hyperboloid it
/// yields a paraboloid, so the resulting hypersphere has `K ≡ 0`.
pub fn improper_fixture_curve() -> PlaneCurve {
    PlaneCurve::polynomial(&[0.0, 0.0, 1.0], &[0.0, std::f64::consts::SQRT_2], [0.5, 1.5]).expect("valid polynomial")
}
