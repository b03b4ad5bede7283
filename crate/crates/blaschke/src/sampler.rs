//! Immersion samplers: smooth maps from a box in R³ to R⁴.

use crate::dd::DD;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Axis-aligned parameter box `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub lo: [f64; 3],
    pub hi: [f64; 3],
}

impl Domain {
    pub fn new(lo: [f64; 3], hi: [f64; 3]) -> Domain {
        Domain { lo, hi }
    }

    /// Whether `p` lies in the box with at least `margin` to every face.
    pub fn contains_with_margin(&self, p: &[f64; 3], margin: f64) -> bool {
        (0..3).all(|i| p[i] - margin >= self.lo[i] && p[i] + margin <= self.hi[i])
    }

    /// `n×n×n` grid of interior points (cell centres of a uniform subdivision).
    pub fn interior_grid(&self, n: usize) -> Vec<[f64; 3]> {
        let axis = |i: usize| -> Vec<f64> {
            (0..n).map(|k| self.lo[i] + (self.hi[i] - self.lo[i]) * (k as f64 + 0.5) / n as f64).collect()
        };
        let (a, b, c) = (axis(0), axis(1), axis(2));
        let mut out = Vec::with_capacity(n * n * n);
        for &x in &a {
            for &y in &b {
                for &z in &c {
                    out.push([x, y, z]);
                }
            }
        }
        out
    }
}

/// A smooth hypersurface immersion `φ: U ⊂ R³ → R⁴`.
///
/// Implementations evaluate in double-double precision; finite differencing of
/// order up to four relies on it.
pub trait ImmersionSampler: Send + Sync {
    fn eval_dd(&self, p: [DD; 3]) -> [DD; 4];

    fn eval(&self, p: [f64; 3]) -> [f64; 4] {
        self.eval_dd(p.map(DD::new)).map(DD::to_f64)
    }

    fn domain(&self) -> Domain;

    fn name(&self) -> &str;

    /// Expected constant `H` of the shape operator, when known in closed form.
    fn expected_h(&self) -> Option<f64> {
        None
    }
}

/// A sampler defined by a closure.
pub struct FnSampler<F> {
    name: String,
    domain: Domain,
    expected_h: Option<f64>,
    f: F,
}

impl<F> FnSampler<F>
where
    F: Fn([DD; 3]) -> [DD; 4] + Send + Sync,
{
    pub fn new(name: impl Into<String>, domain: Domain, expected_h: Option<f64>, f: F) -> Self {
        FnSampler { name: name.into(), domain, expected_h, f }
    }
}

impl<F> ImmersionSampler for FnSampler<F>
where
    F: Fn([DD; 3]) -> [DD; 4] + Send + Sync,
{
    fn eval_dd(&self, p: [DD; 3]) -> [DD; 4] {
        (self.f)(p)
    }
    fn domain(&self) -> Domain {
        self.domain
    }
    fn name(&self) -> &str {
        &self.name
    }
    fn expected_h(&self) -> Option<f64> {
        self.expected_h
    }
}

/// `A∘φ + b` for an affine map of R⁴.
pub struct AffineImage {
    pub inner: Arc<dyn ImmersionSampler>,
    pub a: [[f64; 4]; 4],
    pub b: [f64; 4],
    name: String,
}

impl AffineImage {
    pub fn new(inner: Arc<dyn ImmersionSampler>, a: [[f64; 4]; 4], b: [f64; 4]) -> Self {
        let name = format!("affine({})", inner.name());
        AffineImage { inner, a, b, name }
    }
}

impl ImmersionSampler for AffineImage {
    fn eval_dd(&self, p: [DD; 3]) -> [DD; 4] {
        let x = self.inner.eval_dd(p);
        std::array::from_fn(|i| (0..4).fold(DD::new(self.b[i]), |s, j| s + x[j] * self.a[i][j]))
    }
    fn domain(&self) -> Domain {
        self.inner.domain()
    }
    fn name(&self) -> &str {
        &self.name
    }
}
