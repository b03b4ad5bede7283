//! Plane curves `γ = (γ₁, γ₂)` and the curve identities of the warped families.
//!
//! `γ₁` is always a polynomial. `γ₂` is either a polynomial or the solution of a
//! curve identity read as a second-order ODE with `γ₁(t) = t`. ODE solutions are
//! stored as a chain of Taylor expansions (in double-double precision) generated by
//! recursive power-series arithmetic, so the curve is analytic, cheap to evaluate
//! and accurate far below the finite-difference floor of the Blaschke pipeline.

use crate::ConstructionError;
use blaschke::dd::DD;
use serde::{Deserialize, Serialize};

/// Taylor order of each ODE piece.
const SERIES_ORDER: usize = 32;
/// Spacing of the ODE expansion points.
const NODE_SPACING: f64 = 1.0 / 64.0;

/// Right-hand side family of `γ₂″ = σ · P · |D|⁵` with `γ₁ = t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveLaw {
    /// `P = γ₂²`, `D = γ₁γ₂′ − γ₁′γ₂` (proper warped products).
    Warped,
    /// `P = γ₂²`, `D = γ₂′` (improper warped products).
    WarpedImproper,
    /// `P = γ₁² = t²`, `D = γ₁γ₂′ − γ₁′γ₂` (graph families).
    Graph,
}

impl CurveLaw {
    /// The driver `D` at `t` from `(γ₂, γ₂′)`.
    fn driver(&self, t: DD, y: DD, dy: DD) -> DD {
        match self {
            CurveLaw::WarpedImproper => dy,
            _ => t * dy - y,
        }
    }
}

/// Initial-value problem for `γ₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveOde {
    pub law: CurveLaw,
    /// Sign `σ ∈ {−1, +1}` of `γ₂″`.
    pub sigma: f64,
    pub t0: f64,
    pub t1: f64,
    pub y0: f64,
    pub dy0: f64,
}

#[derive(Debug, Clone, PartialEq)]
struct Piece {
    t: f64,
    c: Vec<DD>,
}

#[derive(Debug, Clone, PartialEq)]
enum Second {
    Poly(Vec<DD>),
    Series(Vec<Piece>),
}

/// A plane curve on an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneCurve {
    g1: Vec<DD>,
    g2: Second,
    interval: [f64; 2],
    ode: Option<CurveOde>,
}

fn horner(c: &[DD], x: DD) -> DD {
    c.iter().rev().fold(DD::ZERO, |s, &a| s * x + a)
}

/// Value and first two derivatives of a power series at `x`.
fn horner2(c: &[DD], x: DD) -> [DD; 3] {
    let (mut p, mut d, mut dd) = (DD::ZERO, DD::ZERO, DD::ZERO);
    for &a in c.iter().rev() {
        dd = dd * x + d * 2.0;
        d = d * x + p;
        p = p * x + a;
    }
    [p, d, dd]
}

fn cauchy(a: &[DD], b: &[DD], k: usize) -> DD {
    (0..=k).map(|i| a[i] * b[k - i]).sum()
}

impl PlaneCurve {
    /// Polynomial curve with coefficients in increasing degree.
    pub fn polynomial(g1: &[f64], g2: &[f64], interval: [f64; 2]) -> Result<Self, ConstructionError> {
        if g1.is_empty() || g2.is_empty() || !(interval[0] < interval[1]) {
            return Err(ConstructionError::IllegalCurve("empty coefficients or interval".into()));
        }
        if g1.iter().chain(g2).any(|x| !x.is_finite()) {
            return Err(ConstructionError::IllegalCurve("non-finite coefficient".into()));
        }
        Ok(PlaneCurve {
            g1: g1.iter().map(|&x| DD::new(x)).collect(),
            g2: Second::Poly(g2.iter().map(|&x| DD::new(x)).collect()),
            interval,
            ode: None,
        })
    }

    /// Integrates `γ₂″ = σ P |D|⁵`, `γ₁ = t`, from `t0` to `t1`.
    ///
    /// Fails with `IllegalCurve` if the driver `D` vanishes or changes sign, or if
    /// the solution stops being finite on the interval.
    pub fn from_ode(ode: CurveOde) -> Result<Self, ConstructionError> {
        if !(ode.t0 < ode.t1) || !(ode.sigma == 1.0 || ode.sigma == -1.0) {
            return Err(ConstructionError::IllegalCurve("need t0 < t1 and σ = ±1".into()));
        }
        let w0 = ode.law.driver(DD::new(ode.t0), DD::new(ode.y0), DD::new(ode.dy0)).to_f64();
        if w0 == 0.0 || !w0.is_finite() {
            return Err(ConstructionError::IllegalCurve("initial data make the driver vanish".into()));
        }
        let s = w0.signum();
        let n = ((ode.t1 - ode.t0) / NODE_SPACING).ceil() as usize;
        let mut pieces = Vec::with_capacity(n + 1);
        let (mut y, mut dy) = (DD::new(ode.y0), DD::new(ode.dy0));
        for i in 0..=n {
            let t = ode.t0 + i as f64 * NODE_SPACING;
            let c = taylor_piece(ode.law, ode.sigma, s, t, y, dy);
            let w = ode.law.driver(DD::new(t), y, dy);
            if !(w.to_f64() * s > 0.0) || !w.is_finite() {
                return Err(ConstructionError::IllegalCurve(format!(
                    "the driver leaves its sign class near t = {t}"
                )));
            }
            let [y1, d1, _] = horner2(&c, DD::new(NODE_SPACING));
            pieces.push(Piece { t, c });
            y = y1;
            dy = d1;
        }
        Ok(PlaneCurve {
            g1: vec![DD::ZERO, DD::ONE],
            g2: Second::Series(pieces),
            interval: [ode.t0, ode.t1],
            ode: Some(ode),
        })
    }

    pub fn interval(&self) -> [f64; 2] {
        self.interval
    }

    /// The initial-value problem, for ODE curves.
    pub fn ode(&self) -> Option<&CurveOde> {
        self.ode.as_ref()
    }

    /// `(γ₁(t), γ₂(t))` in double-double precision.
    pub fn eval_dd(&self, t: DD) -> [DD; 2] {
        let g2 = match &self.g2 {
            Second::Poly(c) => horner(c, t),
            Second::Series(p) => {
                let piece = self.piece(p, t.to_f64());
                horner(&piece.c, t - piece.t)
            }
        };
        [horner(&self.g1, t), g2]
    }

    /// `[[γ₁, γ₁′, γ₁″], [γ₂, γ₂′, γ₂″]]` at `t`.
    pub fn derivatives(&self, t: f64) -> [[f64; 3]; 2] {
        let g1 = horner2(&self.g1, DD::new(t));
        let g2 = match &self.g2 {
            Second::Poly(c) => horner2(c, DD::new(t)),
            Second::Series(p) => {
                let piece = self.piece(p, t);
                horner2(&piece.c, DD::new(t) - piece.t)
            }
        };
        [g1.map(DD::to_f64), g2.map(DD::to_f64)]
    }

    fn piece<'a>(&self, p: &'a [Piece], t: f64) -> &'a Piece {
        let i = ((t - p[0].t) / NODE_SPACING).floor().max(0.0) as usize;
        &p[i.min(p.len() - 1)]
    }

    /// `γ₁γ₂′ − γ₁′γ₂` at `t`.
    pub fn wronskian(&self, t: f64) -> f64 {
        let [a, b] = self.derivatives(t);
        a[0] * b[1] - a[1] * b[0]
    }

    /// `γ₁′γ₂″ − γ₁″γ₂′` at `t`.
    pub fn curvature_numerator(&self, t: f64) -> f64 {
        let [a, b] = self.derivatives(t);
        a[1] * b[2] - a[2] * b[1]
    }
}

/// Taylor coefficients of `γ₂` about `t` for the given initial data.
fn taylor_piece(law: CurveLaw, sigma: f64, s: f64, t: f64, y0: DD, y1: DD) -> Vec<DD> {
    let n = SERIES_ORDER;
    let mut y = vec![DD::ZERO; n + 1];
    y[0] = y0;
    y[1] = y1;
    let (mut w, mut w2, mut w4, mut w5, mut p) =
        (vec![DD::ZERO; n], vec![DD::ZERO; n], vec![DD::ZERO; n], vec![DD::ZERO; n], vec![DD::ZERO; n]);
    let tt = DD::new(t);
    for k in 0..n - 1 {
        // D = (t + τ) y′ − y, or D = y′.
        w[k] = match law {
            CurveLaw::WarpedImproper => y[k + 1] * (k + 1) as f64,
            _ => tt * y[k + 1] * (k + 1) as f64 + y[k] * (k as f64 - 1.0),
        };
        w2[k] = cauchy(&w, &w, k);
        w4[k] = cauchy(&w2, &w2, k);
        w5[k] = cauchy(&w4, &w, k);
        p[k] = match law {
            CurveLaw::Warped | CurveLaw::WarpedImproper => cauchy(&y, &y, k),
            CurveLaw::Graph => match k {
                0 => tt * tt,
                1 => tt * 2.0,
                2 => DD::ONE,
                _ => DD::ZERO,
            },
        };
        let r = cauchy(&p, &w5, k) * (sigma * s);
        y[k + 2] = r / ((k + 1) * (k + 2)) as f64;
    }
    y
}
