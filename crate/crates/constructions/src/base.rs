//! Catalog of two-dimensional base surfaces in R³.
//!
//! Proper bases are centro-affine spheres with affine normal `−ε₁·ψ`; graph bases
//! `(v, w, f(v, w))` are improper affine spheres with affine normal `(0, 0, 1)`
//! and satisfy `f_vv f_ww − f_vw² = ±1`.

use blaschke::dd::DD;
use serde::{Deserialize, Serialize};

/// `1/√3`: scales the sheet `xyz = 1` so that its affine normal is exactly `+ψ`.
pub const TZITZEICA_SCALE: f64 = 0.5773502691896257;

/// Catalog entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseTag {
    Ellipsoid,
    TwoSheetHyperboloid,
    OneSheetHyperboloid,
    EllipticParaboloidGraph,
    HyperbolicParaboloidGraph,
    Tzitzeica,
}

impl BaseTag {
    pub const ALL: [BaseTag; 6] = [
        BaseTag::Ellipsoid,
        BaseTag::TwoSheetHyperboloid,
        BaseTag::OneSheetHyperboloid,
        BaseTag::EllipticParaboloidGraph,
        BaseTag::HyperbolicParaboloidGraph,
        BaseTag::Tzitzeica,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BaseTag::Ellipsoid => "ellipsoid",
            BaseTag::TwoSheetHyperboloid => "two-sheet-hyperboloid",
            BaseTag::OneSheetHyperboloid => "one-sheet-hyperboloid",
            BaseTag::EllipticParaboloidGraph => "elliptic-paraboloid-graph",
            BaseTag::HyperbolicParaboloidGraph => "hyperbolic-paraboloid-graph",
            BaseTag::Tzitzeica => "tzitzeica",
        }
    }

    pub fn from_name(s: &str) -> Option<BaseTag> {
        BaseTag::ALL.into_iter().find(|b| b.name() == s)
    }
}

/// A base surface `ψ(v, w)` together with its affine mean-curvature sign `ε₁`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaseSurface {
    pub tag: BaseTag,
    /// `+1` (normal `−ψ`), `−1` (normal `+ψ`) or `0` (graph, normal `(0,0,1)`).
    pub mean_curvature_sign: i8,
}

/// Catalog lookup.
pub fn base_catalog(tag: BaseTag) -> BaseSurface {
    let eps = match tag {
        BaseTag::Ellipsoid | BaseTag::OneSheetHyperboloid => 1,
        BaseTag::TwoSheetHyperboloid | BaseTag::Tzitzeica => -1,
        BaseTag::EllipticParaboloidGraph | BaseTag::HyperbolicParaboloidGraph => 0,
    };
    BaseSurface { tag, mean_curvature_sign: eps }
}

impl BaseSurface {
    pub fn eps1(&self) -> f64 {
        self.mean_curvature_sign as f64
    }

    pub fn is_graph(&self) -> bool {
        self.mean_curvature_sign == 0
    }

    /// Positive definite affine metric (as opposed to Lorentzian).
    pub fn is_definite(&self) -> bool {
        !matches!(self.tag, BaseTag::OneSheetHyperboloid | BaseTag::HyperbolicParaboloidGraph)
    }

    /// Whether the base is a quadric (its own cubic form vanishes).
    pub fn is_quadric(&self) -> bool {
        self.tag != BaseTag::Tzitzeica
    }

    /// Default `(v, w)` parameter box: `[lo, hi]²`.
    pub fn default_box(&self) -> (f64, f64) {
        match self.tag {
            BaseTag::Ellipsoid => (-0.4, 0.4),
            _ => (-0.5, 0.5),
        }
    }

    /// Graph function `f(v, w)` for graph bases.
    pub fn graph_dd(&self, v: DD, w: DD) -> Option<DD> {
        match self.tag {
            BaseTag::EllipticParaboloidGraph => Some((v * v + w * w) * 0.5),
            BaseTag::HyperbolicParaboloidGraph => Some((v * v - w * w) * 0.5),
            _ => None,
        }
    }

    /// `ψ(v, w) ∈ R³`.
    pub fn eval_dd(&self, v: DD, w: DD) -> [DD; 3] {
        match self.tag {
            BaseTag::Ellipsoid => [(DD::ONE - v * v - w * w).sqrt(), v, w],
            BaseTag::TwoSheetHyperboloid => [(DD::ONE + v * v + w * w).sqrt(), v, w],
            BaseTag::OneSheetHyperboloid => [v, w, (DD::ONE + v * v - w * w).sqrt()],
            BaseTag::Tzitzeica => {
                let s = DD::ONE / DD::new(3.0).sqrt();
                [v.exp() * s, w.exp() * s, (-(v + w)).exp() * s]
            }
            BaseTag::EllipticParaboloidGraph | BaseTag::HyperbolicParaboloidGraph => {
                [v, w, self.graph_dd(v, w).expect("graph base")]
            }
        }
    }

    pub fn eval(&self, v: f64, w: f64) -> [f64; 3] {
        self.eval_dd(DD::new(v), DD::new(w)).map(DD::to_f64)
    }

    /// Defining equation evaluated at `ψ(v, w)` (zero on the surface):
    /// `x²+y²+z²−1`, `−x²+y²+z²+1`, `−x²+y²+z²−1`, `xyz − 3^{−3/2}`, or `z − f`.
    pub fn constraint_residual(&self, v: f64, w: f64) -> f64 {
        let p = self.eval_dd(DD::new(v), DD::new(w));
        let q = |a: f64, b: f64, c: f64| p[0] * p[0] * a + p[1] * p[1] * b + p[2] * p[2] * c;
        let r = match self.tag {
            BaseTag::Ellipsoid => q(1.0, 1.0, 1.0) - 1.0,
            BaseTag::TwoSheetHyperboloid => q(-1.0, 1.0, 1.0) + 1.0,
            BaseTag::OneSheetHyperboloid => q(-1.0, 1.0, 1.0) - 1.0,
            BaseTag::Tzitzeica => p[0] * p[1] * p[2] * DD::new(27.0).sqrt() - 1.0,
            _ => p[2] - self.graph_dd(DD::new(v), DD::new(w)).expect("graph base"),
        };
        r.to_f64()
    }

    /// Hessian determinant `f_vv f_ww − f_vw²` of a graph base at `(v, w)`, by central
    /// differences (exact on the quadratic catalog entries).
    pub fn monge_ampere(&self, v: f64, w: f64) -> Option<f64> {
        let h = 0.125;
        let f = |a: f64, b: f64| self.graph_dd(DD::new(v + a), DD::new(w + b));
        let f0 = f(0.0, 0.0)?;
        let fvv = (f(h, 0.0)? - f0 * 2.0 + f(-h, 0.0)?) / (h * h);
        let fww = (f(0.0, h)? - f0 * 2.0 + f(0.0, -h)?) / (h * h);
        let fvw = (f(h, h)? - f(h, -h)? - f(-h, h)? + f(-h, -h)?) / (4.0 * h * h);
        Some((fvv * fww - fvw * fvw).to_f64())
    }
}
