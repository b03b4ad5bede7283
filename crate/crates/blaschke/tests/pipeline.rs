//! Oracle tests of the jet and Blaschke pipeline.

use blaschke::dd::DD;
use blaschke::*;
use cubic_form::{canonical_form, CubicForm, SymmetryTag};
use lorentz_core::{Frame, Mat3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Unit sphere S³ as the graph `(x, y, z, √(1 − x² − y² − z²))`.
fn sphere() -> Arc<dyn ImmersionSampler> {
    Arc::new(FnSampler::new("sphere", Domain::new([-0.5; 3], [0.5; 3]), Some(1.0), |p: [DD; 3]| {
        let r = DD::ONE - p[0] * p[0] - p[1] * p[1] - p[2] * p[2];
        [p[0], p[1], p[2], r.sqrt()]
    }))
}

/// `(e^u cos s, e^u sin s, e^{−u} cos τ, e^{−u} sin τ)`.
fn quadric_z2z2() -> Arc<dyn ImmersionSampler> {
    Arc::new(FnSampler::new("z2z2", Domain::new([-0.5, 0.0, 0.0], [0.5, 1.5, 1.5]), None, |p: [DD; 3]| {
        let (e, ei) = (p[0].exp(), (-p[0]).exp());
        let (s1, c1) = p[1].sin_cos();
        let (s2, c2) = p[2].sin_cos();
        [e * c1, e * s1, ei * c2, ei * s2]
    }))
}

fn generic_graph() -> Arc<dyn ImmersionSampler> {
    Arc::new(FnSampler::new("graph", Domain::new([-1.0; 3], [1.0; 3]), None, |p: [DD; 3]| {
        [p[1], p[2], p[0], p[0] * p[0] + p[1] * p[1] - p[2] * p[2] * p[2] + p[2] * 3.0]
    }))
}

fn sphere_error(step: f64) -> f64 {
    let phi = sphere();
    let mut err: f64 = 0.0;
    for p in [[0.1, -0.2, 0.15], [0.0, 0.0, 0.0], [-0.2, 0.1, 0.3]] {
        let d = blaschke_data(phi.as_ref(), p, step).unwrap();
        let x = phi.eval(p);
        for a in 0..4 {
            err = err.max((d.xi[a] + x[a]).abs());
        }
        for i in 0..3 {
            for j in 0..3 {
                err = err.max((d.s[i][j] - if i == j { 1.0 } else { 0.0 }).abs());
                for l in 0..3 {
                    err = err.max(d.k[i][j][l].abs());
                }
            }
        }
    }
    err
}

#[test]
fn jet_of_affine_and_quadratic_maps() {
    let affine = FnSampler::new("affine", Domain::new([-1.0; 3], [1.0; 3]), None, |p: [DD; 3]| {
        [p[0] * 2.0 + 1.0, p[1] - p[2], p[0] + p[1] * 3.0, DD::new(4.0)]
    });
    let j = numeric_jet(&affine, [0.1, 0.2, -0.3], 1e-2, 3).unwrap();
    assert!(j.second.iter().flatten().all(|x| *x == 0.0));
    let quad = FnSampler::new("quad", Domain::new([-1.0; 3], [1.0; 3]), None, |p: [DD; 3]| {
        [p[0] * p[0], p[0] * p[1], p[2] * p[2] * 3.0, p[1] * p[2]]
    });
    let j = numeric_jet(&quad, [0.3, -0.2, 0.1], 1e-2, 2).unwrap();
    assert!((j.second_partial(0, 0)[0] - 2.0).abs() < 1e-14);
    assert!((j.second_partial(0, 1)[1] - 1.0).abs() < 1e-14);
    assert!((j.second_partial(2, 2)[2] - 6.0).abs() < 1e-14);
    assert!((j.second_partial(1, 2)[3] - 1.0).abs() < 1e-14);
}

#[test]
fn jet_of_sine() {
    let f = FnSampler::new("sin", Domain::new([-1.0; 3], [1.0; 3]), None, |p: [DD; 3]| {
        let s = (p[0] + p[1] * 2.0).sin();
        [s, DD::ZERO, DD::ZERO, DD::ZERO]
    });
    let p = [0.3, -0.1, 0.2];
    let j = numeric_jet(&f, p, 1e-2, 4).unwrap();
    let x = p[0] + 2.0 * p[1];
    assert!((j.first[0][0] - x.cos()).abs() < 1e-8);
    assert!((j.first[1][0] - 2.0 * x.cos()).abs() < 1e-8);
    assert!((j.second_partial(0, 1)[0] + 2.0 * x.sin()).abs() < 1e-8);
    // ∂_t ∂_v² = −4 cos
    assert!((j.partial([1, 2, 0]).unwrap()[0] + 4.0 * x.cos()).abs() < 1e-8);
    assert!((j.partial([2, 2, 0]).unwrap()[0] - 4.0 * x.sin()).abs() < 1e-6);
}

#[test]
fn jet_out_of_domain() {
    let r = numeric_jet(sphere().as_ref(), [0.4995, 0.0, 0.0], 1e-3, 2);
    assert!(matches!(r, Err(BlaschkeError::OutOfDomain { .. })));
}

#[test]
fn sphere_oracle() {
    assert!(sphere_error(1e-3) < 1e-6, "{}", sphere_error(1e-3));
    let d = blaschke_data(sphere().as_ref(), [0.1, 0.2, -0.1], 1e-3).unwrap();
    assert_eq!(d.signature, Signature::Riemannian);
    assert!(d.theta_residual < TAU_BLASCHKE);
    assert!((d.kappa_hat - 1.0).abs() < 1e-6);
    assert!(d.j.abs() < 1e-10);
    assert!(d.c_crosscheck_residual < 1e-6 && d.normal_residual < 1e-6 && d.metric_residual < 1e-6);
    let (h, r) = hypersphere_residual(sphere().as_ref(), &[[0.1, 0.2, -0.1], [0.0, -0.3, 0.2]], 1e-3).unwrap();
    assert!((h - 1.0).abs() < 1e-6 && r < 1e-6);
    assert!(egregium_residual(sphere().as_ref(), [0.1, 0.0, 0.0], 1e-3).unwrap() < 1e-6);
    assert!(codazzi_residual(sphere().as_ref(), [0.1, 0.0, 0.0], 1e-3).unwrap() < 1e-5);
    let (_, kappa) = ricci_and_scalar(sphere().as_ref(), [0.1, 0.0, 0.0], 1e-3).unwrap();
    assert!((kappa - 1.0).abs() < 1e-6);
}

#[test]
fn sphere_convergence_is_fourth_order() {
    let (e1, e2) = (sphere_error(0.04), sphere_error(0.02));
    assert!(e1 / e2 >= 8.0, "{e1} {e2}");
}

#[test]
fn z2z2_quadric_identities() {
    let phi = quadric_z2z2();
    for p in [[0.1, 0.5, 0.7], [-0.2, 0.9, 0.3], [0.3, 0.2, 1.1]] {
        let d = blaschke_data(phi.as_ref(), p, 1e-3).unwrap();
        assert_eq!(d.signature, Signature::Lorentzian);
        assert!(d.kappa_hat.abs() < 1e-5, "{}", d.kappa_hat);
        assert!(d.j < 0.0);
        assert!((d.h_est + d.j).abs() < 1e-5);
        assert!(d.theta_residual < TAU_BLASCHKE && d.apolarity_residual < TAU_APOL);
        assert!(d.c_crosscheck_residual < 1e-6);
        assert!(codazzi_residual(phi.as_ref(), p, 1e-3).unwrap() < 1e-4);
        assert!(egregium_residual(phi.as_ref(), p, 1e-3).unwrap() < 1e-5);
    }
    let pts = Domain::new([-0.4, 0.1, 0.1], [0.4, 1.4, 1.4]).interior_grid(3);
    let (_, r) = hypersphere_residual(phi.as_ref(), &pts, 1e-3).unwrap();
    assert!(r < 1e-5);
    let delta: [[[f64; 3]; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| std::array::from_fn(|l| {
        if (i, j, l) == (1, 1, 2) { 0.5 } else { 0.0 }
    })));
    assert!(codazzi_residual_perturbed(phi.as_ref(), [0.1, 0.5, 0.7], 1e-3, &delta).unwrap() > 1e-2);
}

#[test]
fn z2z2_quadric_scan() {
    let phi = quadric_z2z2();
    let pts = Domain::new([-0.4, 0.1, 0.1], [0.4, 1.4, 1.4]).interior_grid(3);
    let report = symmetry_scan(phi.as_ref(), &pts, &ScanOptions::default()).unwrap();
    assert_eq!(class_fraction(&report, "Z2xZ2"), 1.0, "{report:?}");
    for p in &report {
        let a5 = p.params["a5"];
        assert!((p.j + a5 * a5).abs() < 1e-5);
    }
}

#[test]
fn non_hypersphere_is_detected() {
    let phi = generic_graph();
    let pts = [[0.1, 0.2, 0.3], [0.4, -0.3, 0.5]];
    let (_, r) = hypersphere_residual(phi.as_ref(), &pts, 1e-3).unwrap();
    assert!(r > 1e-2);
    let r = ricci_and_scalar(phi.as_ref(), [0.1, 0.2, 0.3], 1e-3);
    assert!(matches!(r, Err(BlaschkeError::NotAHypersphere { .. })));
}

#[test]
fn definite_metric_aborts_scan() {
    let r = symmetry_scan(sphere().as_ref(), &[[0.0; 3]], &ScanOptions::default());
    assert!(matches!(r, Err(BlaschkeError::DefiniteMetric)));
}

#[test]
fn degenerate_hypersurface() {
    let flat = FnSampler::new("cyl", Domain::new([-1.0; 3], [1.0; 3]), None, |p: [DD; 3]| {
        [p[0], p[1], p[2], p[0] * p[0]]
    });
    let r = blaschke_data(&flat, [0.0; 3], 1e-3);
    assert!(matches!(r, Err(BlaschkeError::DegenerateHypersurface { .. })));
}

#[test]
fn unimodular_equivariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let phi = quadric_z2z2();
    let p = [0.1, 0.5, 0.7];
    let d0 = blaschke_data(phi.as_ref(), p, 1e-3).unwrap();
    for _ in 0..3 {
        let mut a = nalgebra::Matrix4::<f64>::from_fn(|_, _| rng.gen_range(-1.0..1.0)) + nalgebra::Matrix4::identity() * 2.0;
        let det = a.determinant();
        if det < 0.0 {
            a.set_column(0, &(-a.column(0)));
        }
        a /= a.determinant().abs().powf(0.25);
        let rows: [[f64; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| a[(i, j)]));
        let b = [rng.gen_range(-2.0..2.0), 0.5, -1.0, 3.0];
        let img = AffineImage::new(phi.clone(), rows, b);
        let d1 = blaschke_data(&img, p, 1e-3).unwrap();
        let axi = a * nalgebra::Vector4::from(d0.xi);
        for k in 0..4 {
            assert!((d1.xi[k] - axi[k]).abs() < 1e-6);
        }
        for i in 0..3 {
            for j in 0..3 {
                assert!((d1.h[i][j] - d0.h[i][j]).abs() < 1e-6);
            }
        }
        assert!((d1.j - d0.j).abs() < 1e-6 && (d1.kappa_hat - d0.kappa_hat).abs() < 1e-6);
        let s0 = symmetry_scan(phi.as_ref(), &[p], &ScanOptions::default()).unwrap();
        let s1 = symmetry_scan(&img, &[p], &ScanOptions::default()).unwrap();
        assert_eq!(s0[0].class, s1[0].class);
    }
}

fn onb_k_up(form: &CubicForm) -> [[[f64; 3]; 3]; 3] {
    // K^l_ij = g^{lm} k_ijm with g = diag(−1, 1, 1).
    let f = cubic_form::tensor::full(form.in_frame(&Frame::reference()).lowered());
    std::array::from_fn(|i| std::array::from_fn(|j| std::array::from_fn(|l| if l == 0 { -f[i][j][l] } else { f[i][j][l] })))
}

#[test]
fn gauss_ricci_examples() {
    let g = Mat3::from_diagonal(&nalgebra::Vector3::new(-1.0, 1.0, 1.0));
    let hc = 0.7;
    let mut p = BTreeMap::new();
    p.insert("b4".to_string(), 1.3);
    let k = onb_k_up(&canonical_form(SymmetryTag::SO11, &p));
    let ric = gauss_ricci(&g, hc, &k);
    assert!((ric[(1, 1)] - 2.0 * (hc + 3.0 * 1.3 * 1.3)).abs() < 1e-12);
    let mut p = BTreeMap::new();
    p.insert("a4".to_string(), 0.6);
    p.insert("a6".to_string(), 1.1);
    let k = onb_k_up(&canonical_form(SymmetryTag::Z3, &p));
    let ric = gauss_ricci(&g, hc, &k);
    assert!((ric[(0, 0)] + 2.0 * (hc - 3.0 * 0.36)).abs() < 1e-12);
    // κ̂ = H + J with J = (−5a4² + 2a6²)/3.
    let j = (-5.0 * 0.36 + 2.0 * 1.21) / 3.0;
    assert!((scalar_from_ricci(&g, &ric) - hc - j).abs() < 1e-12);
    // K = 0 on the sphere: κ̂ = H = 1.
    let ric = gauss_ricci(&Mat3::identity(), 1.0, &[[[0.0; 3]; 3]; 3]);
    assert!((scalar_from_ricci(&Mat3::identity(), &ric) - 1.0).abs() < 1e-15);
}
