//! Uniform grid fields and the discrete residual of the elliptic systems.

use crate::{pde_rhs, S3Case, S3Error};
use serde::{Deserialize, Serialize};

/// Values of `h` (generic branches only) and `k` on the nodes
/// `(i·spacing, j·spacing)`, `0 ≤ i < nx`, `0 ≤ j < ny`, stored row-major with
/// index `i + nx·j`. Boundary nodes carry the Dirichlet data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridField {
    pub nx: usize,
    pub ny: usize,
    pub spacing: f64,
    pub h: Option<Vec<f64>>,
    pub k: Vec<f64>,
}

impl GridField {
    /// Field with all values set from `f(x, y) -> (h, k)`; `h` is kept only when
    /// `with_h` is set.
    pub fn from_fn(
        nx: usize,
        ny: usize,
        spacing: f64,
        with_h: bool,
        f: impl Fn(f64, f64) -> (f64, f64),
    ) -> Result<Self, S3Error> {
        if nx < 3 || ny < 3 {
            return Err(S3Error::InvalidGrid(format!("need at least 3×3 nodes, got {nx}×{ny}")));
        }
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(S3Error::InvalidGrid(format!("spacing must be positive, got {spacing}")));
        }
        let mut h = vec![0.0; nx * ny];
        let mut k = vec![0.0; nx * ny];
        for j in 0..ny {
            for i in 0..nx {
                let (a, b) = f(i as f64 * spacing, j as f64 * spacing);
                h[i + nx * j] = a;
                k[i + nx * j] = b;
            }
        }
        Ok(GridField { nx, ny, spacing, h: with_h.then_some(h), k })
    }

    /// Square grid of `n × n` nodes on the unit square.
    pub fn unit_square(n: usize, with_h: bool, f: impl Fn(f64, f64) -> (f64, f64)) -> Result<Self, S3Error> {
        if n < 3 {
            return Err(S3Error::InvalidGrid(format!("need at least 3×3 nodes, got {n}×{n}")));
        }
        Self::from_fn(n, n, 1.0 / (n - 1) as f64, with_h, f)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i + self.nx * j
    }

    pub fn coords(&self, idx: usize) -> (f64, f64) {
        ((idx % self.nx) as f64 * self.spacing, (idx / self.nx) as f64 * self.spacing)
    }

    pub fn is_boundary(&self, i: usize, j: usize) -> bool {
        i == 0 || j == 0 || i + 1 == self.nx || j + 1 == self.ny
    }

    /// `h` at a node (`0` when absent).
    pub fn h_at(&self, idx: usize) -> f64 {
        self.h.as_ref().map_or(0.0, |h| h[idx])
    }

    /// Checks that the field fits the case (h present iff generic) and is consistent.
    pub fn validate(&self, case: S3Case) -> Result<(), S3Error> {
        if self.nx < 3 || self.ny < 3 {
            return Err(S3Error::InvalidGrid(format!("need at least 3×3 nodes, got {}×{}", self.nx, self.ny)));
        }
        if !(self.spacing > 0.0 && self.spacing.is_finite()) {
            return Err(S3Error::InvalidGrid(format!("spacing must be positive, got {}", self.spacing)));
        }
        if self.k.len() != self.len() || self.h.as_ref().is_some_and(|h| h.len() != self.len()) {
            return Err(S3Error::InvalidGrid("value arrays do not match the grid size".into()));
        }
        if self.h.is_some() != case.has_h() {
            return Err(S3Error::InvalidGrid(format!(
                "case {case} {} the field h",
                if case.has_h() { "needs" } else { "has no" }
            )));
        }
        if self.k.iter().chain(self.h.iter().flatten()).any(|x| !x.is_finite()) {
            return Err(S3Error::InvalidGrid("non-finite value".into()));
        }
        Ok(())
    }

    /// `(min, max)` of `k` (or of `h` when `of_h`) over interior nodes.
    pub fn interior_range(&self, of_h: bool) -> (f64, f64) {
        let mut r = (f64::INFINITY, f64::NEG_INFINITY);
        for j in 1..self.ny - 1 {
            for i in 1..self.nx - 1 {
                let idx = self.index(i, j);
                let x = if of_h { self.h_at(idx) } else { self.k[idx] };
                r = (r.0.min(x), r.1.max(x));
            }
        }
        r
    }
}

/// Five-point Laplacian of `u` at the interior node `idx`.
fn laplacian(u: &[f64], nx: usize, idx: usize, inv_h2: f64) -> f64 {
    (u[idx - 1] + u[idx + 1] + u[idx - nx] + u[idx + nx] - 4.0 * u[idx]) * inv_h2
}

/// Residual `(Δ₅h − F_h, Δ₅k − F_k)` at an interior node.
pub(crate) fn node_residual(case: S3Case, f: &GridField, idx: usize, inv_h2: f64) -> (f64, f64) {
    let (fh, fk) = pde_rhs(case, f.h_at(idx), f.k[idx]);
    let rk = laplacian(&f.k, f.nx, idx, inv_h2) - fk;
    let rh = f.h.as_ref().map_or(0.0, |h| laplacian(h, f.nx, idx, inv_h2) - fh);
    (rh, rk)
}

/// Maximum over interior nodes of `|Δ₅u − F(u)|`, taken over both equations.
pub fn pde_residual(case: S3Case, field: &GridField) -> Result<f64, S3Error> {
    field.validate(case)?;
    let inv_h2 = 1.0 / (field.spacing * field.spacing);
    let mut worst = 0.0f64;
    for j in 1..field.ny - 1 {
        for i in 1..field.nx - 1 {
            let (rh, rk) = node_residual(case, field, field.index(i, j), inv_h2);
            worst = worst.max(rh.abs()).max(rk.abs());
        }
    }
    Ok(worst)
}
