//! Serializable generator descriptions (name + parameters, no closures).

use crate::base::{base_catalog, BaseTag};
use crate::cases::{default_curve, CaseKind, CaseTag, Flavor};
use crate::curve::PlaneCurve;
use crate::families::{
    improper_family, quadric_z2, quadric_z2z2, warped_graph_proper, warped_proper, Generated, ImproperKind,
};
use crate::ConstructionError;
use serde::{Deserialize, Serialize};

/// How the curve of a warped family is obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CurveSpec {
    /// The case's default curve (see [`default_curve`]).
    Ode,
    /// The improper-case default curve (see [`default_curve`]).
    OdeImproper,
    /// Polynomial `γ₁`, `γ₂` (coefficients in increasing degree) on `interval`.
    Poly { g1: Vec<f64>, g2: Vec<f64>, interval: [f64; 2] },
}

/// A generator by family name and parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    Z2z2,
    Z2,
    WarpedProper { base: BaseTag, curve: CurveSpec },
    WarpedGraph { base: BaseTag, curve: CurveSpec },
    ImproperA { base: BaseTag, c: f64 },
    ImproperB { base: BaseTag, c: f64 },
}

impl GeneratorSpec {
    /// Instantiates the sampler.
    pub fn build(&self) -> Result<Generated, ConstructionError> {
        let curve = |curve: &CurveSpec, kind: CaseKind, base: BaseTag| -> Result<PlaneCurve, ConstructionError> {
            match curve {
                CurveSpec::Poly { g1, g2, interval } => PlaneCurve::polynomial(g1, g2, *interval),
                CurveSpec::Ode | CurveSpec::OdeImproper => {
                    let kind = if *curve == CurveSpec::OdeImproper { CaseKind::ImproperWarped } else { kind };
                    let b = base_catalog(base);
                    let flavor = if b.is_definite() { Flavor::SO2 } else { Flavor::SO11 };
                    default_curve(CaseTag { kind, flavor }, b.eps1())
                }
            }
        };
        match self {
            GeneratorSpec::Z2z2 => Ok(quadric_z2z2()),
            GeneratorSpec::Z2 => Ok(quadric_z2()),
            GeneratorSpec::WarpedProper { base, curve: c } => {
                warped_proper(&curve(c, CaseKind::ProperWarped, *base)?, base_catalog(*base))
            }
            GeneratorSpec::WarpedGraph { base, curve: c } => {
                warped_graph_proper(&curve(c, CaseKind::ProperGraph, *base)?, base_catalog(*base))
            }
            GeneratorSpec::ImproperA { base, c } => improper_family(ImproperKind::A, *c, base_catalog(*base)),
            GeneratorSpec::ImproperB { base, c } => improper_family(ImproperKind::B, *c, base_catalog(*base)),
        }
    }
}
