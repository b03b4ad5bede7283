//! Selecting a generator on the command line: by family flags or from a file
//! written by `generate`.

use anyhow::{anyhow, bail, Context};
use clap::Args;
use constructions::{BaseTag, CurveSpec, GeneratorSpec};
use std::path::PathBuf;

pub const FAMILIES: [&str; 6] = ["z2z2", "z2", "warped-proper", "warped-graph", "improper-a", "improper-b"];

#[derive(Debug, Clone, Args)]
pub struct SamplerArgs {
    /// Generator family.
    #[arg(long, value_parser = FAMILIES, required_unless_present = "sampler")]
    pub family: Option<String>,
    /// Base surface (ellipsoid, two-sheet-hyperboloid, one-sheet-hyperboloid,
    /// tzitzeica, elliptic-paraboloid-graph, hyperbolic-paraboloid-graph).
    /// Defaults: ellipsoid for warped-proper, elliptic-paraboloid-graph otherwise.
    #[arg(long)]
    pub base: Option<String>,
    /// Curve of the warped families: `ode`, `ode-improper` or `poly:G1;G2` with
    /// comma-separated coefficients in increasing degree.
    #[arg(long, default_value = "ode")]
    pub curve: String,
    /// Parameter interval `a:b` of polynomial curves.
    #[arg(long, default_value = "0.5:1.5", allow_hyphen_values = true)]
    pub interval: String,
    /// Constant `c > 0` of the improper families.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub c: f64,
    /// Generator file written by `generate` (instead of the family flags).
    #[arg(long, conflicts_with = "family")]
    pub sampler: Option<PathBuf>,
}

fn parse_list(s: &str) -> anyhow::Result<Vec<f64>> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().with_context(|| format!("bad coefficient {x:?}")))
        .collect()
}

/// Parses `a:b`.
pub fn parse_interval(s: &str) -> anyhow::Result<[f64; 2]> {
    let (a, b) = s.split_once(':').ok_or_else(|| anyhow!("interval must look like a:b, got {s:?}"))?;
    Ok([a.trim().parse()?, b.trim().parse()?])
}

impl SamplerArgs {
    pub fn spec(&self) -> anyhow::Result<GeneratorSpec> {
        if let Some(path) = &self.sampler {
            let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            let v: serde_json::Value =
                serde_json::from_str(&text).with_context(|| format!("{} is not JSON", path.display()))?;
            let v = v.get("sampler").cloned().unwrap_or(v);
            return serde_json::from_value(v).with_context(|| format!("{} is not a generator", path.display()));
        }
        let family = self.family.as_deref().ok_or_else(|| anyhow!("either --family or --sampler is required"))?;
        let base = |default: BaseTag| -> anyhow::Result<BaseTag> {
            match &self.base {
                None => Ok(default),
                Some(name) => BaseTag::from_name(name).ok_or_else(|| anyhow!("unknown base {name:?}")),
            }
        };
        let curve = || -> anyhow::Result<CurveSpec> {
            Ok(match self.curve.as_str() {
                "ode" => CurveSpec::Ode,
                "ode-improper" => CurveSpec::OdeImproper,
                other => {
                    let body = other
                        .strip_prefix("poly:")
                        .ok_or_else(|| anyhow!("--curve must be ode, ode-improper or poly:G1;G2"))?;
                    let (g1, g2) = body.split_once(';').ok_or_else(|| anyhow!("poly curves need G1;G2"))?;
                    CurveSpec::Poly { g1: parse_list(g1)?, g2: parse_list(g2)?, interval: parse_interval(&self.interval)? }
                }
            })
        };
        Ok(match family {
            "z2z2" => GeneratorSpec::Z2z2,
            "z2" => GeneratorSpec::Z2,
            "warped-proper" => GeneratorSpec::WarpedProper { base: base(BaseTag::Ellipsoid)?, curve: curve()? },
            "warped-graph" => {
                GeneratorSpec::WarpedGraph { base: base(BaseTag::EllipticParaboloidGraph)?, curve: curve()? }
            }
            "improper-a" => GeneratorSpec::ImproperA { base: base(BaseTag::EllipticParaboloidGraph)?, c: self.c },
            "improper-b" => GeneratorSpec::ImproperB { base: base(BaseTag::EllipticParaboloidGraph)?, c: self.c },
            other => bail!("unknown family {other:?}"),
        })
    }
}

/// Parses `t0:t1:nt,v0:v1:nv,w0:w1:nw` into grid points (endpoints included;
/// a single node sits at the midpoint).
pub fn parse_grid(s: &str) -> anyhow::Result<Vec<[f64; 3]>> {
    let axes: Vec<Vec<f64>> = s
        .split(',')
        .map(|axis| {
            let parts: Vec<&str> = axis.split(':').collect();
            if parts.len() != 3 {
                bail!("grid axis must look like lo:hi:n, got {axis:?}");
            }
            let (lo, hi): (f64, f64) = (parts[0].trim().parse()?, parts[1].trim().parse()?);
            let n: usize = parts[2].trim().parse()?;
            if n == 0 {
                bail!("grid axis {axis:?} has no nodes");
            }
            Ok(if n == 1 {
                vec![0.5 * (lo + hi)]
            } else {
                (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
            })
        })
        .collect::<anyhow::Result<_>>()?;
    if axes.len() != 3 {
        bail!("grid needs three axes, got {}", axes.len());
    }
    let mut pts = Vec::new();
    for &a in &axes[0] {
        for &b in &axes[1] {
            for &c in &axes[2] {
                pts.push([a, b, c]);
            }
        }
    }
    Ok(pts)
}
