//! The six S₃ cases and the right-hand sides of their elliptic systems.

use crate::S3Error;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Generic or exceptional solution branch of `T(a22 + i a23) = −(a22 + i a23)² + H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Generic,
    Exceptional,
}

/// Constant `H ∈ {−1, 0, 1}` of the shape operator together with the branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct S3Case {
    pub h: i8,
    pub branch: Branch,
}

impl S3Case {
    pub const ALL: [S3Case; 6] = [
        S3Case { h: -1, branch: Branch::Generic },
        S3Case { h: 1, branch: Branch::Generic },
        S3Case { h: 0, branch: Branch::Generic },
        S3Case { h: -1, branch: Branch::Exceptional },
        S3Case { h: 1, branch: Branch::Exceptional },
        S3Case { h: 0, branch: Branch::Exceptional },
    ];

    pub fn new(h: i8, branch: Branch) -> Result<Self, S3Error> {
        if !(-1..=1).contains(&h) {
            return Err(S3Error::InvalidCase(format!("H = {h}")));
        }
        Ok(S3Case { h, branch })
    }

    /// Whether the system has the unknown `h` (generic branches) besides `k`.
    pub fn has_h(&self) -> bool {
        self.branch == Branch::Generic
    }

    /// The constant solution `(h, k)`, where one exists.
    pub fn constant_solution(&self) -> Option<(f64, f64)> {
        let half_ln2 = 0.5 * std::f64::consts::LN_2;
        match (self.h, self.branch) {
            (-1, Branch::Generic) | (0, Branch::Generic) => Some((0.0, -half_ln2)),
            (1, Branch::Generic) => Some((std::f64::consts::FRAC_PI_2, -half_ln2)),
            (-1, Branch::Exceptional) => Some((0.0, 0.5 * (4.0f64 / 3.0).ln())),
            _ => None,
        }
    }
}

impl fmt::Display for S3Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = match self.h {
            -1 => "h-1",
            1 => "h+1",
            _ => "h0",
        };
        let b = match self.branch {
            Branch::Generic => "gen",
            Branch::Exceptional => "ex",
        };
        write!(f, "{h}-{b}")
    }
}

impl FromStr for S3Case {
    type Err = S3Error;

    /// Parses `h-1-gen`, `h+1-ex`, `h0-gen`, … (also `h1` for `h+1`).
    fn from_str(s: &str) -> Result<Self, S3Error> {
        let bad = || S3Error::InvalidCase(s.to_string());
        let (hpart, bpart) = s.rsplit_once('-').ok_or_else(bad)?;
        let h = match hpart {
            "h-1" => -1,
            "h+1" | "h1" => 1,
            "h0" => 0,
            _ => return Err(bad()),
        };
        let branch = match bpart {
            "gen" => Branch::Generic,
            "ex" => Branch::Exceptional,
            _ => return Err(bad()),
        };
        Ok(S3Case { h, branch })
    }
}

/// Right-hand sides `(F_h, F_k)` of `Δh = F_h`, `Δk = F_k` (`F_h = 0` on
/// exceptional branches, where `h` is absent).
pub fn pde_rhs(case: S3Case, h: f64, k: f64) -> (f64, f64) {
    let e = (-2.0 * k / 3.0).exp();
    match (case.h, case.branch) {
        (-1, Branch::Generic) => (e * (2.0 * h).sinh(), 3.0 * e * (2.0 * (2.0 * k).exp() - (2.0 * h).cosh())),
        (1, Branch::Generic) => (-e * (2.0 * h).sin(), 3.0 * e * (2.0 * (2.0 * k).exp() + (2.0 * h).cos())),
        (0, Branch::Generic) => (2.0 * e * h, 3.0 * e * (2.0 * (2.0 * k).exp() - 1.0)),
        (-1, Branch::Exceptional) => (0.0, 2.0 * e * (3.0 * (2.0 * k).exp() - 4.0)),
        _ => (0.0, 6.0 * (4.0 * k / 3.0).exp()),
    }
}

/// Jacobian `[[∂F_h/∂h, ∂F_h/∂k], [∂F_k/∂h, ∂F_k/∂k]]` of [`pde_rhs`].
pub fn pde_rhs_jacobian(case: S3Case, h: f64, k: f64) -> [[f64; 2]; 2] {
    let e = (-2.0 * k / 3.0).exp();
    let e43 = (4.0 * k / 3.0).exp();
    match (case.h, case.branch) {
        (-1, Branch::Generic) => {
            let (s, c) = ((2.0 * h).sinh(), (2.0 * h).cosh());
            [[2.0 * e * c, -2.0 / 3.0 * e * s], [-6.0 * e * s, 8.0 * e43 + 2.0 * e * c]]
        }
        (1, Branch::Generic) => {
            let (s, c) = ((2.0 * h).sin(), (2.0 * h).cos());
            [[-2.0 * e * c, 2.0 / 3.0 * e * s], [-6.0 * e * s, 8.0 * e43 - 2.0 * e * c]]
        }
        (0, Branch::Generic) => [[2.0 * e, -4.0 / 3.0 * e * h], [0.0, 8.0 * e43 + 2.0 * e]],
        (-1, Branch::Exceptional) => [[0.0, 0.0], [0.0, 8.0 * e43 + 16.0 / 3.0 * e]],
        _ => [[0.0, 0.0], [0.0, 8.0 * e43]],
    }
}
