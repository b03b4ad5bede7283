//! Blaschke structure at a point: affine metric, affine normal, shape operator,
//! difference tensor and the derived scalars.

use crate::jet::numeric_jet;
use crate::sampler::ImmersionSampler;
use crate::taylor::{cofactor_normal, det3, det4_cols, inv3, inv4_cols, Tay, TayMat3};
use crate::BlaschkeError;
use lorentz_core::Mat3;
use serde::{Deserialize, Serialize};

/// Default finite-difference step.
pub const DEFAULT_STEP: f64 = 1e-3;
/// Tolerance of the volume condition `θ = ω_h`.
pub const TAU_BLASCHKE: f64 = 1e-5;
/// Apolarity tolerance.
pub const TAU_APOL: f64 = 1e-6;
/// `|det G|` below this is a degenerate hypersurface.
pub const TAU_DEGEN: f64 = 1e-12;
/// `‖S − H·Id‖` bound for treating a point as lying on a hypersphere.
pub const TAU_HYPERSPHERE: f64 = 1e-4;

/// Coordinate components `K^l_{ij}` stored as `k[i][j][l]`.
pub type DiffTensor = [[[f64; 3]; 3]; 3];

/// Signature of the affine metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Signature {
    /// `(−,+,+)`.
    Lorentzian,
    /// `(+,+,+)`.
    Riemannian,
}

/// Equiaffine invariants of an immersion at one point (coordinate components).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeData {
    pub point: [f64; 3],
    pub position: [f64; 4],
    pub tangents: [[f64; 4]; 3],
    pub h: [[f64; 3]; 3],
    pub signature: Signature,
    pub xi: [f64; 4],
    /// Shape operator `S^k_l` as `s[k][l]` (`D_{∂_l} ξ = −S^k_l ∂_k`).
    pub s: [[f64; 3]; 3],
    pub k: DiffTensor,
    #[serde(rename = "J")]
    pub j: f64,
    /// Scalar curvature of `h`, computed from the metric alone.
    pub kappa_hat: f64,
    #[serde(rename = "H_est")]
    pub h_est: f64,
    /// `| |θ| − ω_h |` at the point (θ carries the coordinate orientation).
    pub theta_residual: f64,
    /// Largest `|trace K_{∂_i}|`.
    pub apolarity_residual: f64,
    /// Disagreement between `C = ∇h` and `−2 h(K(·,·),·)`.
    pub c_crosscheck_residual: f64,
    /// Transversal part of `D ξ` (zero for the affine normal).
    pub normal_residual: f64,
    /// Difference between the metric from the decomposition along ξ and `h`.
    pub metric_residual: f64,
}

impl BlaschkeData {
    pub fn h_matrix(&self) -> Mat3 {
        Mat3::from_fn(|i, j| self.h[i][j])
    }

    pub fn s_matrix(&self) -> Mat3 {
        Mat3::from_fn(|i, j| self.s[i][j])
    }

    /// Lowered components `k_{ijl} = h(K(∂_i, ∂_j), ∂_l)`.
    pub fn k_lowered(&self) -> [[[f64; 3]; 3]; 3] {
        let mut out = [[[0.0; 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for l in 0..3 {
                    out[i][j][l] = (0..3).map(|m| self.h[l][m] * self.k[i][j][m]).sum();
                }
            }
        }
        out
    }

    /// Largest entry of `S − H_est·Id`.
    pub fn umbilic_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let id = if i == j { self.h_est } else { 0.0 };
                r = r.max((self.s[i][j] - id).abs());
            }
        }
        r
    }
}

/// Taylor-level structure used by the curvature checks.
pub(crate) struct Structure {
    pub data: BlaschkeData,
    /// `Γ̂^k_{ij}` as `gamma_hat[i][j][k]`, accurate to degree 1.
    pub gamma_hat: [[[Tay; 3]; 3]; 3],
    /// `K^l_{ij}` as `k[i][j][l]`, accurate to degree 1.
    pub k: [[[Tay; 3]; 3]; 3],
}

fn dot4(a: &[Tay; 4], b: &[Tay; 4]) -> Tay {
    (0..4).fold(Tay::zero(), |s, i| s + a[i] * b[i])
}

pub(crate) fn structure(phi: &dyn ImmersionSampler, p: [f64; 3], step: f64) -> Result<Structure, BlaschkeError> {
    let jet = numeric_jet(phi, p, step, 4)?;
    let x = jet.taylor();
    let t: [[Tay; 4]; 3] = std::array::from_fn(|k| x.map(|c| c.deriv(k)));
    let pij: [[[Tay; 4]; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| t[i].map(|c| c.deriv(j))));

    // Provisional transversal: det(t0, t1, t2, n) = |n|², so only n matters here.
    let n = cofactor_normal(&t);
    // Coefficient along ζ = n/|n|²: G_ij = det(t, φ_ij) since det(t, ζ) = 1.
    let g: TayMat3 = std::array::from_fn(|i| std::array::from_fn(|j| dot4(&n, &pij[i][j])));
    let det_g0 = det3(&g).value();
    if !(det_g0.abs() >= TAU_DEGEN) {
        return Err(BlaschkeError::DegenerateHypersurface { det: det_g0 });
    }
    let det_g = det3(&g);
    let sgn = det_g0.signum();
    let factor = det_g.scale(sgn).powf(-0.2);
    let mut h: TayMat3 = std::array::from_fn(|i| std::array::from_fn(|j| g[i][j] * factor));

    // Signature convention: (−,+,+) when indefinite, positive definite otherwise.
    let h0 = Mat3::from_fn(|i, j| h[i][j].value());
    let negatives = h0.symmetric_eigen().eigenvalues.iter().filter(|&&e| e < 0.0).count();
    if negatives >= 2 {
        h = h.map(|r| r.map(|c| -c));
    }
    let signature = if negatives == 0 || negatives == 3 { Signature::Riemannian } else { Signature::Lorentzian };

    let hinv = inv3(&h);
    let dh: [TayMat3; 3] = std::array::from_fn(|k| h.map(|r| r.map(|c| c.deriv(k))));
    // Γ̂^k_ij = ½ h^{kl}(∂_i h_jl + ∂_j h_il − ∂_l h_ij)
    let gamma_hat: [[[Tay; 3]; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            std::array::from_fn(|k| {
                (0..3).fold(Tay::zero(), |s, l| s + hinv[k][l] * (dh[i][j][l] + dh[j][i][l] - dh[l][i][j]))
                    .scale(0.5)
            })
        })
    });
    // ξ = (1/3) Δ_h φ
    let mut xi = [Tay::zero(); 4];
    for i in 0..3 {
        for j in 0..3 {
            for a in 0..4 {
                let mut hess = pij[i][j][a];
                for k in 0..3 {
                    hess = hess - gamma_hat[i][j][k] * t[k][a];
                }
                xi[a] = xi[a] + hinv[i][j] * hess;
            }
        }
    }
    let xi = xi.map(|c| c.scale(1.0 / 3.0));

    // Decomposition in the basis (t0, t1, t2, ξ).
    let basis = [t[0], t[1], t[2], xi];
    let minv = inv4_cols(&basis);
    let coords = |v: &[Tay; 4]| -> [Tay; 4] { std::array::from_fn(|k| dot4(&minv[k], v)) };
    let mut s = [[0.0; 3]; 3];
    let mut normal_residual: f64 = 0.0;
    for l in 0..3 {
        let dxi = xi.map(|c| c.deriv(l));
        let c = coords(&dxi);
        for k in 0..3 {
            s[k][l] = -c[k].value();
        }
        normal_residual = normal_residual.max(c[3].value().abs());
    }
    let mut gamma = [[[Tay::zero(); 3]; 3]; 3];
    let mut metric_residual: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let c = coords(&pij[i][j]);
            for k in 0..3 {
                gamma[i][j][k] = c[k];
            }
            metric_residual = metric_residual.max((c[3].value() - h[i][j].value()).abs());
        }
    }
    let k: [[[Tay; 3]; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| std::array::from_fn(|l| gamma[i][j][l] - gamma_hat[i][j][l])));

    let hv = h.map(|r| r.map(|c| c.value()));
    let hinv_v = hinv.map(|r| r.map(|c| c.value()));
    let kv = k.map(|a| a.map(|b| b.map(|c| c.value())));
    let gv = gamma.map(|a| a.map(|b| b.map(|c| c.value())));

    // Cross-check C_ijk = (∇_i h)(j,k) against −2 h(K(∂_i,∂_j),∂_k).
    let mut c_res: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for l in 0..3 {
                let mut c = dh[i][j][l].value();
                for m in 0..3 {
                    c -= gv[i][j][m] * hv[m][l] + gv[i][l][m] * hv[j][m];
                }
                let kl: f64 = (0..3).map(|m| hv[l][m] * kv[i][j][m]).sum();
                c_res = c_res.max((c + 2.0 * kl).abs());
            }
        }
    }
    let apolarity_residual =
        (0..3).map(|i| (0..3).map(|l| kv[i][l][l]).sum::<f64>().abs()).fold(0.0, f64::max);

    // J = (1/6) k_ijl k^{ijl} = (1/6) K^l_ij K^m_ab h_lm h^ia h^jb
    let mut j_pick = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for a in 0..3 {
                for b in 0..3 {
                    let hh = hinv_v[i][a] * hinv_v[j][b];
                    if hh == 0.0 {
                        continue;
                    }
                    for l in 0..3 {
                        for m in 0..3 {
                            j_pick += kv[i][j][l] * kv[a][b][m] * hv[l][m] * hh;
                        }
                    }
                }
            }
        }
    }
    j_pick /= 6.0;

    let kappa_hat = intrinsic_kappa(&gamma_hat, &hinv_v);
    let theta = det4_cols(&basis).value();
    let omega = Mat3::from_fn(|i, j| hv[i][j]).determinant().abs().sqrt();
    let h_est = (s[0][0] + s[1][1] + s[2][2]) / 3.0;

    let data = BlaschkeData {
        point: p,
        position: jet.value,
        tangents: jet.first,
        h: hv,
        signature,
        xi: xi.map(|c| c.value()),
        s,
        k: kv,
        j: j_pick,
        kappa_hat,
        h_est,
        theta_residual: (theta.abs() - omega).abs(),
        apolarity_residual,
        c_crosscheck_residual: c_res,
        normal_residual,
        metric_residual,
    };
    Ok(Structure { data, gamma_hat, k })
}

/// Scalar curvature `κ̂ = h^{jk} Ric_jk / 6` of the Levi-Civita connection, with
/// `Ric(Y, Z) = trace{X ↦ R̂(X, Y)Z}`.
fn intrinsic_kappa(gamma_hat: &[[[Tay; 3]; 3]; 3], hinv: &[[f64; 3]; 3]) -> f64 {
    let g = |i: usize, j: usize, k: usize| gamma_hat[i][j][k].value();
    let dg = |a: usize, i: usize, j: usize, k: usize| gamma_hat[i][j][k].d(a);
    // R(∂_i, ∂_j)∂_k = R^l_{kij} ∂_l
    let r = |l: usize, k: usize, i: usize, j: usize| -> f64 {
        let mut v = dg(i, j, k, l) - dg(j, i, k, l);
        for m in 0..3 {
            v += g(i, m, l) * g(j, k, m) - g(j, m, l) * g(i, k, m);
        }
        v
    };
    let mut scalar = 0.0;
    for j in 0..3 {
        for k in 0..3 {
            let ric: f64 = (0..3).map(|i| r(i, k, i, j)).sum();
            scalar += hinv[j][k] * ric;
        }
    }
    scalar / 6.0
}

/// Equiaffine invariants of `φ` at `p` (see [`BlaschkeData`]).
pub fn blaschke_data(phi: &dyn ImmersionSampler, p: [f64; 3], step: f64) -> Result<BlaschkeData, BlaschkeError> {
    structure(phi, p, step).map(|s| s.data)
}
