//! Per-point symmetry scans: orthonormalize the affine metric, express the
//! difference tensor as a cubic form and classify its stabilizer.

use crate::data::{blaschke_data, BlaschkeData, Signature};
use crate::sampler::ImmersionSampler;
use crate::BlaschkeError;
use cubic_form::{stabilizer_classify, tensor, CubicError, CubicForm, SymmetryClass};
use lorentz_core::{Frame, Mat3};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Default classification tolerance for numerically differentiated forms.
pub const SCAN_TOL: f64 = 1e-6;

/// Forms whose max-norm is below this are treated as the zero form: it sits well
/// above the finite-difference noise of `K` (≈ 1e−12 at the default step).
pub const SCAN_ZERO_TOL: f64 = 1e-8;

/// Scan options.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    pub step: f64,
    pub tol: f64,
    pub zero_tol: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { step: crate::data::DEFAULT_STEP, tol: SCAN_TOL, zero_tol: SCAN_ZERO_TOL }
    }
}

/// Residuals reported per scan point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointResiduals {
    pub theta: f64,
    pub apolarity: f64,
    pub egregium: f64,
    pub umbilic: f64,
    pub c_crosscheck: f64,
    pub pattern: Option<f64>,
}

/// Result of one scan point. `class` is the stabilizer tag, or
/// `"NumericallyAmbiguous"` when the form sits within tolerance of a class
/// boundary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub point: [f64; 3],
    pub class: String,
    pub params: BTreeMap<String, f64>,
    #[serde(rename = "J")]
    pub j: f64,
    pub kappa_hat: f64,
    #[serde(rename = "H")]
    pub h: f64,
    pub residuals: PointResiduals,
    /// `K` as a cubic form in the h-orthonormal frame (lowered components).
    #[serde(skip)]
    pub form: Option<CubicForm>,
}

/// h-orthonormal frame `(t, v, w)` with `h(t,t) = −1` by pivoted Gram–Schmidt.
///
/// `t` starts from the coordinate direction of most negative `h`-norm; when
/// every diagonal entry is non-negative the eigenvector of the negative
/// eigenvalue is used. The remaining directions are taken in order of largest
/// `h`-norm after projection. The frame is positively oriented.
pub fn lorentz_frame(h: &Mat3) -> Result<Mat3, BlaschkeError> {
    let ip = |a: &lorentz_core::MinkowskiVector, b: &lorentz_core::MinkowskiVector| (a.transpose() * h * b)[0];
    let e = |i: usize| {
        let mut v = lorentz_core::MinkowskiVector::zeros();
        v[i] = 1.0;
        v
    };
    let scale = h.amax();
    let (imin, dmin) = (0..3).map(|i| (i, h[(i, i)])).fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
    let mut t = if dmin < -1e-8 * scale {
        e(imin)
    } else {
        let eig = h.symmetric_eigen();
        let (k, _) = eig.eigenvalues.iter().enumerate().fold((0, f64::INFINITY), |a, (i, &v)| if v < a.1 { (i, v) } else { a });
        eig.eigenvectors.column(k).into_owned()
    };
    let q = ip(&t, &t);
    if !(q < 0.0) {
        return Err(BlaschkeError::DefiniteMetric);
    }
    t /= (-q).sqrt();
    let mut rest: Vec<_> = (0..3).map(|i| e(i) + t * ip(&e(i), &t)).collect();
    rest.sort_by(|a, b| ip(b, b).partial_cmp(&ip(a, a)).unwrap_or(std::cmp::Ordering::Equal));
    let v = rest[0] / ip(&rest[0], &rest[0]).sqrt();
    let mut w = rest[1] - v * ip(&rest[1], &v);
    if ip(&w, &w) < 1e-6 * ip(&rest[1], &rest[1]).max(1e-300) {
        w = rest[2] - v * ip(&rest[2], &v);
    }
    let mut w = w / ip(&w, &w).sqrt();
    let mut f = Mat3::from_columns(&[t, v, w]);
    if f.determinant() < 0.0 {
        w = -w;
        f = Mat3::from_columns(&[t, v, w]);
    }
    Ok(f)
}

/// The difference tensor at a point as a cubic form in an h-orthonormal frame.
pub fn cubic_form_at(d: &BlaschkeData) -> Result<CubicForm, BlaschkeError> {
    if d.signature != Signature::Lorentzian {
        return Err(BlaschkeError::DefiniteMetric);
    }
    let f = lorentz_frame(&d.h_matrix())?;
    let kl = d.k_lowered();
    let mut sym = [0.0; 10];
    for (n, &(i, j, l)) in tensor::TRIPLES.iter().enumerate() {
        sym[n] = (kl[i][j][l] + kl[j][l][i] + kl[l][i][j] + kl[j][i][l] + kl[i][l][j] + kl[l][j][i]) / 6.0;
    }
    Ok(CubicForm::from_lowered(Frame::reference(), tensor::pullback(&sym, &f)))
}

fn scan_point(phi: &dyn ImmersionSampler, p: [f64; 3], opts: &ScanOptions) -> Result<ScanPoint, BlaschkeError> {
    let d = blaschke_data(phi, p, opts.step)?;
    let mut form = cubic_form_at(&d)?;
    if form.amax() < opts.zero_tol {
        form = CubicForm::zero(*form.frame());
    }
    let (class, params, pattern) = match stabilizer_classify(&form, opts.tol) {
        Ok(SymmetryClass { tag, params, pattern_residual, .. }) => {
            (tag.name().to_string(), params, Some(pattern_residual))
        }
        Err(CubicError::NumericallyAmbiguous(_)) => ("NumericallyAmbiguous".to_string(), BTreeMap::new(), None),
        Err(e) => return Err(e.into()),
    };
    Ok(ScanPoint {
        point: p,
        class,
        params,
        j: d.j,
        kappa_hat: d.kappa_hat,
        h: d.h_est,
        residuals: PointResiduals {
            theta: d.theta_residual,
            apolarity: d.apolarity_residual,
            egregium: (d.kappa_hat - d.h_est - d.j).abs(),
            umbilic: d.umbilic_residual(),
            c_crosscheck: d.c_crosscheck_residual,
            pattern,
        },
        form: Some(form),
    })
}

/// Classifies the pointwise symmetry at each point (in parallel; results are in
/// input order).
pub fn symmetry_scan(
    phi: &dyn ImmersionSampler,
    points: &[[f64; 3]],
    opts: &ScanOptions,
) -> Result<Vec<ScanPoint>, BlaschkeError> {
    points.par_iter().map(|&p| scan_point(phi, p, opts)).collect()
}

/// Fraction of scan points carrying `class`.
pub fn class_fraction(report: &[ScanPoint], class: &str) -> f64 {
    if report.is_empty() {
        return 0.0;
    }
    report.iter().filter(|p| p.class == class).count() as f64 / report.len() as f64
}
