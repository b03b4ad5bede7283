//! Curvature identities of affine hyperspheres: Gauss, theorema egregium and
//! Codazzi.

use crate::data::{blaschke_data, structure, DiffTensor, TAU_HYPERSPHERE};
use crate::sampler::ImmersionSampler;
use crate::taylor::{Tay, TayMat3};
use crate::BlaschkeError;
use lorentz_core::Mat3;

/// Ricci tensor of the Levi-Civita connection from the Gauss equation of a
/// hypersphere, `R̂(X,Y)Z = H(h(Y,Z)X − h(X,Z)Y) − [K_X, K_Y]Z`, with
/// `Ric(Y,Z) = trace{X ↦ R̂(X,Y)Z}`. `k[i][j][l] = K^l_ij`.
pub fn gauss_ricci(h: &Mat3, h_const: f64, k: &DiffTensor) -> Mat3 {
    // [K_X, K_Y]Z with X = ∂_i, Y = ∂_j, Z = ∂_m, component l.
    let kk = |a: usize, b: usize, l: usize| k[a][b][l];
    let mut ric = Mat3::zeros();
    for j in 0..3 {
        for m in 0..3 {
            let mut s = 0.0;
            for i in 0..3 {
                // H(h(∂_j, ∂_m)∂_i − h(∂_i, ∂_m)∂_j), component i.
                s += h_const * (h[(j, m)] - if i == j { h[(i, m)] } else { 0.0 });
                // K_X K_Y Z − K_Y K_X Z, component i.
                for q in 0..3 {
                    s -= kk(i, q, i) * kk(j, m, q) - kk(j, q, i) * kk(i, m, q);
                }
            }
            ric[(j, m)] = s;
        }
    }
    ric
}

/// Scalar curvature `κ̂ = h^{ij} Ric_ij / 6`.
pub fn scalar_from_ricci(h: &Mat3, ric: &Mat3) -> f64 {
    let hinv = h.try_inverse().unwrap_or_else(Mat3::zeros);
    (hinv.transpose().component_mul(ric)).sum() / 6.0
}

/// Ricci tensor and `κ̂` from the Gauss equation at `p`; requires `S = H·Id`
/// there to [`TAU_HYPERSPHERE`].
pub fn ricci_and_scalar(phi: &dyn ImmersionSampler, p: [f64; 3], step: f64) -> Result<(Mat3, f64), BlaschkeError> {
    let d = blaschke_data(phi, p, step)?;
    let r = d.umbilic_residual();
    if !(r <= TAU_HYPERSPHERE) {
        return Err(BlaschkeError::NotAHypersphere { residual: r });
    }
    let h = d.h_matrix();
    let ric = gauss_ricci(&h, d.h_est, &d.k);
    Ok((ric, scalar_from_ricci(&h, &ric)))
}

/// `H_est` = mean of `trace S / 3` over `points`, and the largest of
/// `‖S − H_est·Id‖_max` and `|trace S / 3 − H_est|` over the points.
pub fn hypersphere_residual(
    phi: &dyn ImmersionSampler,
    points: &[[f64; 3]],
    step: f64,
) -> Result<(f64, f64), BlaschkeError> {
    if points.is_empty() {
        return Err(BlaschkeError::IllegalParameter("no sample points".into()));
    }
    let data = points.iter().map(|&p| blaschke_data(phi, p, step)).collect::<Result<Vec<_>, _>>()?;
    let h_est = data.iter().map(|d| d.h_est).sum::<f64>() / data.len() as f64;
    let mut r: f64 = 0.0;
    for d in &data {
        r = r.max((d.h_est - h_est).abs());
        for i in 0..3 {
            for j in 0..3 {
                let id = if i == j { h_est } else { 0.0 };
                r = r.max((d.s[i][j] - id).abs());
            }
        }
    }
    Ok((h_est, r))
}

/// `|κ̂ − H_est − J|` at `p`, with the intrinsic `κ̂`.
pub fn egregium_residual(phi: &dyn ImmersionSampler, p: [f64; 3], step: f64) -> Result<f64, BlaschkeError> {
    let d = blaschke_data(phi, p, step)?;
    Ok((d.kappa_hat - d.h_est - d.j).abs())
}

/// Largest antisymmetry defect `|(∇̂_i K)(∂_j, ∂_m) − (∇̂_j K)(∂_i, ∂_m)|`.
pub fn codazzi_residual(phi: &dyn ImmersionSampler, p: [f64; 3], step: f64) -> Result<f64, BlaschkeError> {
    codazzi_residual_perturbed(phi, p, step, &[[[0.0; 3]; 3]; 3])
}

/// [`codazzi_residual`] after replacing the difference-tensor field `K` by
/// `K + x₀·δ` (`x₀` the first coordinate offset from `p`); a detector check.
pub fn codazzi_residual_perturbed(
    phi: &dyn ImmersionSampler,
    p: [f64; 3],
    step: f64,
    delta: &DiffTensor,
) -> Result<f64, BlaschkeError> {
    let st = structure(phi, p, step)?;
    let x0 = Tay::var(0);
    let k: [TayMat3; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| std::array::from_fn(|l| st.k[i][j][l] + x0 * delta[i][j][l]))
    });
    let g = |i: usize, j: usize, l: usize| st.gamma_hat[i][j][l].value();
    // (∇̂_a K)^l_ij = ∂_a K^l_ij + Γ̂^l_am K^m_ij − Γ̂^m_ai K^l_mj − Γ̂^m_aj K^l_im
    let nabla = |a: usize, i: usize, j: usize, l: usize| -> f64 {
        let mut v = k[i][j][l].d(a);
        for m in 0..3 {
            v += g(a, m, l) * k[i][j][m].value()
                - g(a, i, m) * k[m][j][l].value()
                - g(a, j, m) * k[i][m][l].value();
        }
        v
    };
    let mut r: f64 = 0.0;
    for a in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                for l in 0..3 {
                    r = r.max((nabla(a, i, j, l) - nabla(i, a, j, l)).abs());
                }
            }
        }
    }
    Ok(r)
}
