//! Stabilizer classification: examples, conjugation invariance, separation and
//! lemma replays.

use cubic_form::stabilizer::*;
use cubic_form::*;
use lorentz_core::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

fn onb(a: [f64; 7]) -> CubicForm {
    CubicForm::from_onb_coeffs(&OnbCoeffs(a), Frame::reference()).unwrap()
}

fn random_g(rng: &mut ChaCha8Rng) -> Isometry {
    group_element(
        rng.gen_range(0.0..TAU),
        rng.gen_range(-1.5..1.5),
        rng.gen_range(0.0..TAU),
        rng.gen_bool(0.5),
    )
}

fn uniform4(rng: &mut ChaCha8Rng) -> [f64; 4] {
    std::array::from_fn(|_| rng.gen())
}

fn assert_params(got: &SymmetryClass, want: &BTreeMap<String, f64>, tol: f64) {
    for (k, v) in want {
        let g = got.param(k).unwrap_or_else(|| panic!("missing {k} in {got:?}"));
        assert!((g - v).abs() < tol, "{k}: got {g}, want {v} ({:?})", got.tag);
    }
}

#[test]
fn zero_form_is_full() {
    let c = stabilizer_classify(&onb([0.0; 7]), DEFAULT_TOL).unwrap();
    assert_eq!(c.tag, SymmetryTag::FullSO12);
    let tiny = onb([1e-15, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    assert_eq!(stabilizer_classify(&tiny, DEFAULT_TOL).unwrap().tag, SymmetryTag::FullSO12);
}

#[test]
fn so2_example() {
    let c = stabilizer_classify(&onb([2.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]), DEFAULT_TOL).unwrap();
    assert_eq!(c.tag, SymmetryTag::SO2);
    assert!((c.param("a4").unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn z3_two_hundred_conjugates() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut p = BTreeMap::new();
    p.insert("a4".to_string(), 1.0);
    p.insert("a6".to_string(), 2.0);
    let k = canonical_form(SymmetryTag::Z3, &p);
    for _ in 0..200 {
        let g = random_g(&mut rng);
        let c = stabilizer_classify(&act(&g, &k).unwrap(), DEFAULT_TOL).unwrap();
        assert_eq!(c.tag, SymmetryTag::Z3);
        assert_params(&c, &p, 1e-7);
    }
}

#[test]
fn all_classes_recover_under_conjugation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for tag in SymmetryTag::ALL {
        if tag == SymmetryTag::Trivial {
            continue;
        }
        for _ in 0..40 {
            let (p, k) = fixtures::canonical_sample(tag, uniform4(&mut rng));
            let want = fixtures::expected_params(tag, &p);
            let g = random_g(&mut rng);
            let moved = act(&g, &k.in_frame(&Frame::reference())).unwrap();
            let c = stabilizer_classify(&moved, DEFAULT_TOL)
                .unwrap_or_else(|e| panic!("{tag:?} {p:?}: {e}"));
            assert_eq!(c.tag, tag, "{p:?}");
            if tag != SymmetryTag::Z2B {
                assert_params(&c, &want, 1e-7);
            } else {
                // Canonical Z2B shape: one of a5, a2 − a6/2 vanishes; J is preserved.
                let back = canonical_form(tag, &c.params);
                let dj = pick_invariant(&back).unwrap() - pick_invariant(&k).unwrap();
                assert!(dj.abs() < 1e-7);
                let pp = c.param("a2").unwrap() - c.param("a6").unwrap() / 2.0;
                assert!(c.param("a5").unwrap().abs() < 1e-9 || pp.abs() < 1e-9);
                assert!(c.param("a6").unwrap() >= -1e-12);
            }
            assert!(c.pattern_residual < 1e-7 && c.generator_residual < 1e-7, "{c:?}");
            // The reported frame really carries the canonical coefficients.
            let there = moved.in_frame(&c.canonical_frame);
            let diff = tensor::sub(there.lowered(), canonical_form(tag, &c.params).lowered());
            assert!(tensor::amax(&diff) < 1e-7, "{tag:?}");
        }
    }
}

#[test]
fn generic_form_is_trivial() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let a: [f64; 7] = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
        let k = onb(a);
        let c = stabilizer_classify(&k, DEFAULT_TOL).unwrap();
        assert_eq!(c.tag, SymmetryTag::Trivial);
        for i in 1..=7 {
            assert!((c.param(&format!("a{i}")).unwrap() - a[i - 1]).abs() < 1e-14);
        }
    }
}

#[test]
fn boundary_is_ambiguous_or_snapped() {
    // Sweep a1 = 2a4 + δ across the SO(2) / Z2Api boundary: results go
    // SO2 → NumericallyAmbiguous → Z2Api, and the band is hit.
    let mut stage = 0;
    let mut saw_ambiguous = false;
    for n in 0..60 {
        let d = 10f64.powf(-12.0 + n as f64 * 0.15);
        let k = onb([2.0 + d, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        let s = match stabilizer_classify(&k, DEFAULT_TOL) {
            Ok(c) if c.tag == SymmetryTag::SO2 => 0,
            Err(CubicError::NumericallyAmbiguous(_)) => 1,
            Ok(c) if c.tag == SymmetryTag::Z2Api => 2,
            other => panic!("δ = {d}: {other:?}"),
        };
        assert!(s >= stage, "non-monotone at δ = {d}");
        saw_ambiguous |= s == 1;
        stage = s;
    }
    assert!(saw_ambiguous && stage == 2);
}

#[test]
fn not_admissible_is_rejected() {
    let mut c = onb([0.3, -1.0, 0.2, 0.7, 1.1, -0.4, 0.9]).c();
    c[0] += 0.1;
    let k = CubicForm::from_c(Frame::reference(), c);
    assert!(matches!(stabilizer_classify(&k, DEFAULT_TOL), Err(CubicError::NotAdmissible { .. })));
}

#[test]
fn invariance_residual_examples() {
    let b = Isometry::new(Mat3::from_diagonal(&MinkowskiVector::new(-1.0, 1.0, -1.0)), FrameKind::Onb, 1e-12)
        .unwrap();
    let z2b = onb([0.0, 0.7, 0.0, 0.0, 0.4, 1.3, 0.0]);
    assert!(invariance_residual(&b, &z2b).unwrap() < 1e-15);
    let api = Isometry::new(rotation_matrix(PI), FrameKind::Onb, 1e-12).unwrap();
    let s3 = onb([0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
    assert!(invariance_residual(&api, &s3).unwrap() > 0.5);
}

/// Representative generators of each connected family, in reference coordinates.
fn probes() -> Vec<(&'static str, Mat3)> {
    let lvb = Frame::standard_lvb();
    let c2 = lvb.matrix_to_reference(&c_lm(2.0, 0.0));
    let c11 = lvb.matrix_to_reference(&c_lm(1.0, 1.0));
    vec![
        ("rot", rotation_matrix(0.7)),
        ("halfturn", rotation_matrix(PI)),
        ("third", rotation_matrix(TAU / 3.0)),
        ("B", Mat3::from_diagonal(&MinkowskiVector::new(-1.0, 1.0, -1.0))),
        ("boost", c2),
        ("parabolic", c11),
    ]
}

fn listed(tag: SymmetryTag) -> &'static [&'static str] {
    match tag {
        SymmetryTag::FullSO12 => &["rot", "halfturn", "third", "B", "boost", "parabolic"],
        SymmetryTag::SO2 => &["rot", "halfturn", "third"],
        SymmetryTag::S3 => &["third", "B"],
        SymmetryTag::Z3 => &["third"],
        SymmetryTag::Z2B => &["B"],
        SymmetryTag::Z2xZ2 => &["halfturn", "B"],
        SymmetryTag::Z2Api => &["halfturn"],
        // C_{−1} = B belongs to the two-component group SO(1,1).
        SymmetryTag::SO11 => &["boost", "B"],
        SymmetryTag::RLine => &["parabolic"],
        SymmetryTag::Trivial => &[],
    }
}

#[test]
fn generators_and_separation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for tag in SymmetryTag::ALL {
        for _ in 0..20 {
            let k = if tag == SymmetryTag::Trivial {
                onb(std::array::from_fn(|_| rng.gen_range(0.5..2.0)))
            } else {
                fixtures::canonical_sample(tag, uniform4(&mut rng)).1
            };
            for (name, m) in probes() {
                let r = invariance_residual_reference(&m, &k);
                if listed(tag).contains(&name) {
                    assert!(r <= 1e-12, "{tag:?} {name} {r}");
                } else {
                    assert!(r > 1e-3, "{tag:?} {name} {r}");
                }
            }
        }
    }
}

fn random_combo(basis: &[tensor::Sym3], rng: &mut ChaCha8Rng) -> CubicForm {
    let mut k = [0.0; 10];
    for b in basis {
        let c: f64 = rng.gen_range(-2.0..2.0);
        for i in 0..10 {
            k[i] += c * b[i];
        }
    }
    CubicForm::from_lowered(Frame::reference(), k)
}

fn assert_only(a: &[f64; 7], free: &[usize], tau: f64) {
    for i in 1..=7 {
        if !free.contains(&i) {
            assert!(a[i - 1].abs() < tau, "coefficient {i} = {}", a[i - 1]);
        }
    }
}

#[test]
fn replay_rotation_lemma() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for t in [0.3, 1.0, 1.9, 2.5, 3.5, 5.0] {
        let basis = invariant_subspace(&[rotation_matrix(t)]);
        assert_eq!(basis.len(), 1);
        for _ in 0..20 {
            let a = random_combo(&basis, &mut rng).to_onb_coeffs().unwrap().0;
            assert!((a[0] - 2.0 * a[3]).abs() < 1e-9);
            assert_only(&a, &[1, 4], 1e-9);
        }
    }
    // Third turn: a1 = 2a4 with a4, a6, a7 free.
    let basis = invariant_subspace(&[rotation_matrix(TAU / 3.0)]);
    assert_eq!(basis.len(), 3);
    for _ in 0..20 {
        let a = random_combo(&basis, &mut rng).to_onb_coeffs().unwrap().0;
        assert!((a[0] - 2.0 * a[3]).abs() < 1e-9);
        assert_only(&a, &[1, 4, 6, 7], 1e-9);
    }
    // Half turn: a1, a4, a5 free.
    let basis = invariant_subspace(&[rotation_matrix(PI)]);
    assert_eq!(basis.len(), 3);
    for _ in 0..20 {
        assert_only(&random_combo(&basis, &mut rng).to_onb_coeffs().unwrap().0, &[1, 4, 5], 1e-9);
    }
}

#[test]
fn replay_reflection_lemma() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let basis = invariant_subspace(&[Mat3::from_diagonal(&MinkowskiVector::new(-1.0, 1.0, -1.0))]);
    assert_eq!(basis.len(), 3);
    for _ in 0..20 {
        assert_only(&random_combo(&basis, &mut rng).to_onb_coeffs().unwrap().0, &[2, 5, 6], 1e-9);
    }
}

fn lvb_coeffs_of(basis: &[tensor::Sym3], rng: &mut ChaCha8Rng) -> [f64; 7] {
    random_combo(basis, rng).in_frame(&Frame::standard_lvb()).to_lvb_coeffs().unwrap().0
}

#[test]
fn replay_boost_and_parabolic_lemmas() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let lvb = Frame::standard_lvb();
    for l in [0.3, 2.0, 5.0, -0.5, -3.0] {
        let basis = invariant_subspace(&[lvb.matrix_to_reference(&c_lm(l, 0.0))]);
        assert_eq!(basis.len(), 1, "l = {l}");
        for _ in 0..20 {
            assert_only(&lvb_coeffs_of(&basis, &mut rng), &[4], 1e-9);
        }
    }
    let basis = invariant_subspace(&[lvb.matrix_to_reference(&c_lm(-1.0, 0.0))]);
    assert_eq!(basis.len(), 3);
    for _ in 0..20 {
        assert_only(&lvb_coeffs_of(&basis, &mut rng), &[2, 4, 6], 1e-9);
    }
    for m in [0.5, 1.0, -2.0] {
        let basis = invariant_subspace(&[lvb.matrix_to_reference(&c_lm(1.0, m))]);
        assert_eq!(basis.len(), 1);
        for _ in 0..20 {
            assert_only(&lvb_coeffs_of(&basis, &mut rng), &[7], 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_invariance_random_class(idx in 1usize..9, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tag = SymmetryTag::ALL[idx];
        let (_, k) = fixtures::canonical_sample(tag, uniform4(&mut rng));
        let c0 = stabilizer_classify(&k, DEFAULT_TOL).unwrap();
        let g = random_g(&mut rng);
        let c1 = stabilizer_classify(&act(&g, &k.in_frame(&Frame::reference())).unwrap(), DEFAULT_TOL).unwrap();
        prop_assert_eq!(c0.tag, c1.tag);
        for (name, v) in &c0.params {
            prop_assert!((c1.params[name] - v).abs() < 1e-7, "{} {} {}", name, v, c1.params[name]);
        }
    }
}
