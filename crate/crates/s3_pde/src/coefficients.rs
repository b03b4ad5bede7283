//! Frame coefficients `a22`, `a23`, `a6` along `T` and their defining ODEs
//!
//! `T(a22) = −a22² + a23² + H`, `T(a23) = −2 a22 a23`, `T(ln a6) = −a22`.

use crate::{Branch, S3Case, S3Error};

/// Denominators below this are treated as singular.
const SINGULAR_TOL: f64 = 1e-14;
/// Central-difference step of [`ode_consistency_residual`].
pub const ODE_FD_STEP: f64 = 1e-5;

/// `(a22, a23, a6)` at `(t, h, k)` with shift `l`, using the `+` sign on
/// exceptional branches.
pub fn frame_coefficients(case: S3Case, t: f64, h: f64, k: f64, l: f64) -> Result<(f64, f64, f64), S3Error> {
    frame_coefficients_signed(case, 1, t, h, k, l)
}

/// As [`frame_coefficients`], with the sign `±` of the exceptional solutions
/// (`a23 = ±1` for `H = −1`; `a22 = ±1`, `a6 = e^{k∓t}` for `H = 1`). The sign is
/// ignored on generic branches and for `H = 0`.
pub fn frame_coefficients_signed(
    case: S3Case,
    sign: i8,
    t: f64,
    h: f64,
    k: f64,
    l: f64,
) -> Result<(f64, f64, f64), S3Error> {
    let s = if sign < 0 { -1.0 } else { 1.0 };
    let tl = t + l;
    let generic = |num22: f64, num23: f64, den: f64| {
        if !(den > SINGULAR_TOL) {
            return Err(S3Error::SingularPoint(format!("vanishing denominator at t = {t}, h = {h} ({case})")));
        }
        Ok((num22 / den, num23 / den, k.exp() / den.sqrt()))
    };
    match (case.h, case.branch) {
        (-1, Branch::Generic) => {
            let den = tl.cos().powi(2) + h.sinh().powi(2);
            generic(-tl.sin() * tl.cos(), -h.sinh() * h.cosh(), den)
        }
        (1, Branch::Generic) => {
            let den = h.cos().powi(2) + tl.sinh().powi(2);
            generic(tl.sinh() * tl.cosh(), -h.sin() * h.cos(), den)
        }
        (0, Branch::Generic) => generic(tl, -h, tl * tl + h * h),
        (-1, Branch::Exceptional) => Ok((0.0, s, k.exp())),
        (1, Branch::Exceptional) => Ok((s, 0.0, (k - s * t).exp())),
        _ => Ok((0.0, 0.0, k.exp())),
    }
}

/// Maximum defect of the three defining ODEs over the samples `ts`, with
/// `T`-derivatives taken by central differences of step [`ODE_FD_STEP`].
pub fn ode_consistency_residual(case: S3Case, ts: &[f64], h: f64, k: f64) -> Result<f64, S3Error> {
    ode_consistency_residual_signed(case, 1, ts, h, k, 0.0)
}

/// As [`ode_consistency_residual`], for a given exceptional sign and shift `l`.
pub fn ode_consistency_residual_signed(
    case: S3Case,
    sign: i8,
    ts: &[f64],
    h: f64,
    k: f64,
    l: f64,
) -> Result<f64, S3Error> {
    let hh = case.h as f64;
    let mut worst = 0.0f64;
    for &t in ts {
        let (a22, a23, _) = frame_coefficients_signed(case, sign, t, h, k, l)?;
        let (p22, p23, p6) = frame_coefficients_signed(case, sign, t + ODE_FD_STEP, h, k, l)?;
        let (m22, m23, m6) = frame_coefficients_signed(case, sign, t - ODE_FD_STEP, h, k, l)?;
        let d = |p: f64, m: f64| (p - m) / (2.0 * ODE_FD_STEP);
        let r1 = d(p22, m22) - (-a22 * a22 + a23 * a23 + hh);
        let r2 = d(p23, m23) + 2.0 * a22 * a23;
        let r3 = d(p6.ln(), m6.ln()) + a22;
        worst = worst.max(r1.abs()).max(r2.abs()).max(r3.abs());
    }
    Ok(worst)
}
