//! Red-black nonlinear Gauss–Seidel (pointwise Newton) solver with Dirichlet data.
//!
//! Each sweep visits the red and then the black interior nodes and applies one
//! Newton step to the local 2×2 (or scalar) system, scaled by a relaxation factor
//! `ω`. After every sweep the discrete residual is recomputed; once the warm-up is
//! over, a sweep that increases the residual (or makes it non-finite) is rolled back and `ω` is damped: its excess
//! over 1 is halved, and below `ω ≈ 1` `ω` itself is halved. The accepted residual
//! history is therefore non-increasing after the warm-up.

use crate::grid::node_residual;
use crate::{pde_rhs_jacobian, GridField, S3Case, S3Error};

/// Sweeps during which every sweep is accepted.
pub const WARMUP_SWEEPS: usize = 10;
/// Damping factor applied on rejection.
pub const DAMPING: f64 = 0.5;
/// Below this relaxation factor the iteration is declared stalled.
const MIN_OMEGA: f64 = 1e-6;

/// Solver controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Maximum number of sweeps (rejected sweeps count).
    pub max_sweeps: usize,
    /// Target for [`crate::pde_residual`].
    pub tol: f64,
    /// Initial relaxation factor; `None` selects `2/(1 + sin(π/(n−1)))` for the
    /// larger grid side `n`.
    pub omega: Option<f64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { max_sweeps: 10_000, tol: 1e-6, omega: None }
    }
}

/// Converged field with diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub field: GridField,
    /// Sweeps performed, including rejected ones.
    pub sweeps: usize,
    /// Final residual.
    pub residual: f64,
    /// Residual of the initial guess followed by the residual after each accepted sweep.
    pub history: Vec<f64>,
}

fn optimal_omega(f: &GridField) -> f64 {
    let n = f.nx.max(f.ny) as f64;
    2.0 / (1.0 + (std::f64::consts::PI / (n - 1.0)).sin())
}

fn max_residual(case: S3Case, f: &GridField, inv_h2: f64) -> f64 {
    let mut worst = 0.0f64;
    for j in 1..f.ny - 1 {
        for i in 1..f.nx - 1 {
            let (rh, rk) = node_residual(case, f, f.index(i, j), inv_h2);
            worst = worst.max(rh.abs()).max(rk.abs());
        }
    }
    worst
}

/// Replaces the interior of `u` by the discrete harmonic extension of its boundary
/// values (SOR to a 1e−14 relative update).
fn harmonic_extension(u: &mut [f64], nx: usize, ny: usize, omega: f64) {
    let scale = u.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let mut mean = 0.0;
    let mut count = 0.0;
    for j in 0..ny {
        for i in 0..nx {
            if i == 0 || j == 0 || i + 1 == nx || j + 1 == ny {
                mean += u[i + nx * j];
                count += 1.0;
            }
        }
    }
    mean /= count;
    for j in 1..ny - 1 {
        for i in 1..nx - 1 {
            u[i + nx * j] = mean;
        }
    }
    for _ in 0..20 * (nx + ny) {
        let mut change = 0.0f64;
        for color in 0..2 {
            for j in 1..ny - 1 {
                for i in 1..nx - 1 {
                    if (i + j) % 2 != color {
                        continue;
                    }
                    let idx = i + nx * j;
                    let target = 0.25 * (u[idx - 1] + u[idx + 1] + u[idx - nx] + u[idx + nx]);
                    let d = omega * (target - u[idx]);
                    u[idx] += d;
                    change = change.max(d.abs());
                }
            }
        }
        if change <= 1e-14 * scale {
            break;
        }
    }
}

/// One red-black sweep of pointwise Newton steps with relaxation `omega`.
fn sweep(case: S3Case, f: &mut GridField, inv_h2: f64, omega: f64) {
    let nx = f.nx;
    for color in 0..2 {
        for j in 1..f.ny - 1 {
            for i in 1..nx - 1 {
                if (i + j) % 2 != color {
                    continue;
                }
                let idx = i + nx * j;
                let (rh, rk) = node_residual(case, f, idx, inv_h2);
                let jac = pde_rhs_jacobian(case, f.h_at(idx), f.k[idx]);
                // Local Jacobian of the residual: −4/Δ² · I − DF.
                let d = -4.0 * inv_h2;
                match f.h.as_mut() {
                    Some(h) => {
                        let (a, b, c, e) = (d - jac[0][0], -jac[0][1], -jac[1][0], d - jac[1][1]);
                        let det = a * e - b * c;
                        let dh = -(e * rh - b * rk) / det;
                        let dk = -(a * rk - c * rh) / det;
                        h[idx] += omega * dh;
                        f.k[idx] += omega * dk;
                    }
                    None => {
                        f.k[idx] -= omega * rk / (d - jac[1][1]);
                    }
                }
            }
        }
    }
}

/// Initial guess: the boundary of `boundary` with the harmonic extension inside.
pub fn initial_guess(case: S3Case, boundary: &GridField) -> Result<GridField, S3Error> {
    boundary.validate(case)?;
    let mut f = boundary.clone();
    let omega = optimal_omega(&f);
    harmonic_extension(&mut f.k, f.nx, f.ny, omega);
    if let Some(h) = f.h.as_mut() {
        harmonic_extension(h, f.nx, f.ny, omega);
    }
    Ok(f)
}

/// Solves the case's elliptic system with the boundary values of `boundary` as
/// Dirichlet data (its interior values are ignored).
///
/// Fails with [`S3Error::DidNotConverge`] if the residual does not reach
/// `opts.tol` within `opts.max_sweeps` sweeps or the iteration stalls.
pub fn solve(case: S3Case, boundary: &GridField, opts: &SolveOptions) -> Result<Solution, S3Error> {
    let mut f = initial_guess(case, boundary)?;
    let inv_h2 = 1.0 / (f.spacing * f.spacing);
    let mut omega = opts.omega.unwrap_or_else(|| optimal_omega(&f));
    let mut residual = max_residual(case, &f, inv_h2);
    let mut history = vec![residual];
    let mut sweeps = 0;
    let mut accepted = 0;
    let mut saved = f.clone();
    while residual > opts.tol {
        if sweeps >= opts.max_sweeps {
            return Err(S3Error::DidNotConverge {
                iterations: sweeps,
                residual,
                reason: "sweep limit reached".into(),
            });
        }
        if omega < MIN_OMEGA {
            return Err(S3Error::DidNotConverge {
                iterations: sweeps,
                residual,
                reason: "no sweep reduces the residual any further".into(),
            });
        }
        saved.clone_from(&f);
        sweep(case, &mut f, inv_h2, omega);
        sweeps += 1;
        let r = max_residual(case, &f, inv_h2);
        if r.is_finite() && (accepted < WARMUP_SWEEPS || r <= residual) {
            residual = r;
            history.push(r);
            accepted += 1;
        } else {
            f.clone_from(&saved);
            omega = if omega > 1.0 + 1e-3 { 1.0 + DAMPING * (omega - 1.0) } else { DAMPING * omega };
        }
    }
    Ok(Solution { field: f, sweeps, residual, history })
}

