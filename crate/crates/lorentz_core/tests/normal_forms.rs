//! Oracle tests for frames, SO(1,2) membership and normal-form classification.
//!
//! Oracles are forward constructions: a known normal form conjugated by a known
//! group element must classify back to the same family and parameter.

use lorentz_core::*;
use nalgebra::{Matrix3, Vector3};
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

fn diag(a: f64, b: f64, c: f64) -> Mat3 {
    Matrix3::from_diagonal(&Vector3::new(a, b, c))
}

#[test]
fn special_isometry_examples() {
    assert!(is_special_isometry(&rotation_matrix(0.7), FrameKind::Onb, 1e-12));
    assert!(is_special_isometry(&diag(2.0, 1.0, 0.5), FrameKind::Lvb, 1e-12));
    assert!(!is_special_isometry(&diag(2.0, 1.0, 1.0), FrameKind::Lvb, 1e-9));
    // A boost in ONB is not an isometry of the LVB Gram matrix.
    assert!(!is_special_isometry(&boost_tw(0.3), FrameKind::Lvb, 1e-9));
}

#[test]
fn make_normal_form_examples() {
    let h = make_normal_form(NormalFormTag::HalfTurn, 0.0).unwrap();
    assert_eq!(*h.matrix(), diag(1.0, -1.0, -1.0));
    assert_eq!(h.kind(), FrameKind::Onb);
    let p = make_normal_form(NormalFormTag::Parabolic, 0.0).unwrap();
    assert_eq!(*p.matrix(), Matrix3::new(1.0, -1.0, -0.5, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0));
    assert_eq!(p.kind(), FrameKind::Lvb);
    let b = make_normal_form(NormalFormTag::Boost, 2.0).unwrap();
    assert_eq!(*b.matrix(), diag(2.0, 1.0, 0.5));
    assert!(matches!(
        make_normal_form(NormalFormTag::Boost, 1.0),
        Err(LorentzError::IllegalParameter(_))
    ));
    assert!(matches!(
        make_normal_form(NormalFormTag::Rotation, PI),
        Err(LorentzError::IllegalParameter(_))
    ));
    assert!(make_normal_form(NormalFormTag::Rotation, 7.0).is_err());
    for tag in NormalFormTag::ALL {
        let p = match tag {
            NormalFormTag::Rotation => 1.1,
            NormalFormTag::Boost => -3.0,
            _ => 0.0,
        };
        let l = make_normal_form(tag, p).unwrap();
        assert!(is_special_isometry(l.matrix(), l.kind(), 1e-12), "{tag:?}");
    }
    let c = spacelike_reflection_lvb();
    assert!((c.reference_matrix() - diag(-1.0, 1.0, -1.0)).amax() < 1e-15);
}

#[test]
fn classify_identity_and_boost() {
    let id = Isometry::new(Mat3::identity(), FrameKind::Onb, 1e-12).unwrap();
    let c = classify_isometry(&id, TAU_ISO).unwrap();
    assert_eq!(c.kind, IsometryType::Identity);
    assert_eq!(c.adapted_frame, Frame::reference());

    let b = make_normal_form(NormalFormTag::Boost, 2.0).unwrap();
    let c = classify_isometry(&b, TAU_ISO).unwrap();
    match c.kind {
        IsometryType::Boost { l } => assert!((l - 2.0).abs() < 1e-12),
        k => panic!("expected boost, got {k:?}"),
    }
    let f = c.adapted_frame;
    assert_eq!(f.kind(), FrameKind::Lvb);
    assert!(f.gram_residual() < 1e-12);
    assert_eq!(causal_type(&f.vector(0), 1e-9), Causal::Null);
    assert_eq!(causal_type(&f.vector(1), 1e-9), Causal::Spacelike);
    assert_eq!(causal_type(&f.vector(2), 1e-9), Causal::Null);
    // The inverse parameter canonicalizes to |l| > 1.
    let b = make_normal_form(NormalFormTag::Boost, 0.25).unwrap();
    let c = classify_isometry(&b, TAU_ISO).unwrap();
    assert!(matches!(c.kind, IsometryType::Boost { l } if (l - 4.0).abs() < 1e-12));
    assert!(normal_form_residual(&b, &c) < 1e-12);
}

#[test]
fn not_an_isometry_is_rejected() {
    let bad = Isometry::new_unchecked(diag(2.0, 1.0, 1.0), FrameKind::Lvb);
    assert!(matches!(classify_isometry(&bad, TAU_ISO), Err(LorentzError::NotAnIsometry { .. })));
    assert!(Isometry::new(diag(2.0, 1.0, 1.0), FrameKind::Lvb, 1e-9).is_err());
}

#[test]
fn conjugated_reflections_stay_reflections() {
    let b = make_normal_form(NormalFormTag::SpacelikeReflection, 0.0).unwrap();
    for k in 0..50 {
        let x = k as f64;
        let g = group_element(0.37 * x, ((x * 0.61).sin()) * 1.8, 1.3 * x + 0.2, k % 3 == 0);
        let l = b.conjugated_by(&g);
        let c = classify_isometry(&l, TAU_ISO).unwrap();
        assert_eq!(c.kind, IsometryType::SpacelikeReflection);
        assert!(normal_form_residual(&l, &c) < 10.0 * TAU_ISO);
    }
}

#[test]
fn near_degenerate_rotation_is_ambiguous() {
    let l = Isometry::new(rotation_matrix(PI + 3e-9), FrameKind::Onb, 1e-12).unwrap();
    assert!(matches!(classify_isometry(&l, 1e-9), Err(LorentzError::NumericallyAmbiguous(_))));
    let l = Isometry::new(rotation_matrix(2e-9), FrameKind::Onb, 1e-12).unwrap();
    assert!(matches!(classify_isometry(&l, 1e-9), Err(LorentzError::NumericallyAmbiguous(_))));
    let l = Isometry::new(rotation_matrix(1e-5), FrameKind::Onb, 1e-12).unwrap();
    assert!(classify_isometry(&l, 1e-9).is_err());
}

#[test]
fn lvb_of_timelike_plane_examples() {
    let t = Vector3::new(1.0, 0.0, 0.0);
    let w = Vector3::new(0.0, 0.0, 1.0);
    let f = lvb_of_timelike_plane(&t, &w).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    assert!((f.vector(0) - Vector3::new(s, 0.0, s)).amax() < 1e-15);
    assert!((f.vector(2) - Vector3::new(-s, 0.0, s)).amax() < 1e-15);
    assert!((minner(&f.vector(0), &f.vector(2)) - 1.0).abs() < 1e-15);
    assert_eq!(f.orientation(), 1);
    // Round trip LVB → ONB → LVB reproduces e and f.
    let back = f.converted();
    let again = lvb_of_timelike_plane(&back.vector(0), &back.vector(2)).unwrap();
    assert!((again.basis() - f.basis()).amax() < 1e-14);
    assert!(lvb_of_timelike_plane(&w, &t).is_err());
}

#[test]
fn json_round_trip() {
    let l = make_normal_form(NormalFormTag::Parabolic, 0.0).unwrap();
    let s = serde_json::to_string(&l).unwrap();
    assert!(s.contains("\"kind\":\"LVB\""));
    let back: Isometry = serde_json::from_str(&s).unwrap();
    assert_eq!(back, l);
    assert!(serde_json::from_str::<Isometry>(r#"{"kind":"LVB","matrix":[[2,0,0],[0,1,0],[0,0,1]]}"#).is_err());
}

/// Expected normal-form parameter after conjugation by `g`.
fn expected_param(tag: NormalFormTag, p: f64, g: &Isometry) -> Option<f64> {
    match tag {
        NormalFormTag::Rotation => Some(if preserves_time_orientation(g.matrix()) { p } else { TAU - p }),
        NormalFormTag::Boost => Some(if p.abs() > 1.0 { p } else { 1.0 / p }),
        _ => None,
    }
}

fn tag_strategy() -> impl Strategy<Value = (NormalFormTag, f64)> {
    prop_oneof![
        (0.05f64..PI - 0.05).prop_map(|t| (NormalFormTag::Rotation, t)),
        (PI + 0.05..TAU - 0.05).prop_map(|t| (NormalFormTag::Rotation, t)),
        Just((NormalFormTag::HalfTurn, 0.0)),
        Just((NormalFormTag::Identity, 0.0)),
        Just((NormalFormTag::SpacelikeReflection, 0.0)),
        (0.1f64..2.0).prop_map(|s| (NormalFormTag::Boost, s.exp())),
        (0.1f64..2.0).prop_map(|s| (NormalFormTag::Boost, -(-s).exp())),
        Just((NormalFormTag::Parabolic, 0.0)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn conjugation_invariance(
        (tag, p) in tag_strategy(),
        th1 in 0.0f64..TAU, eta in -2.0f64..2.0, th2 in 0.0f64..TAU, rev in any::<bool>()
    ) {
        let n = make_normal_form(tag, p).unwrap();
        let g = group_element(th1, eta, th2, rev);
        let l = n.conjugated_by(&g);
        let c = classify_isometry(&l, TAU_ISO).unwrap();
        prop_assert_eq!(c.kind.tag(), tag);
        if let Some(e) = expected_param(tag, p, &g) {
            prop_assert!((c.kind.param().unwrap() - e).abs() < 1e-7, "{:?} vs {}", c.kind, e);
        }
        prop_assert!(normal_form_residual(&l, &c) <= 10.0 * TAU_ISO);
        prop_assert_eq!(c.adapted_frame.orientation(), 1);
        prop_assert!(c.adapted_frame.gram_residual() < 1e-9);
    }

    #[test]
    fn inner_agrees_across_frames(x in prop::array::uniform3(-3.0f64..3.0), y in prop::array::uniform3(-3.0f64..3.0)) {
        let x = Vector3::from(x);
        let y = Vector3::from(y);
        let f = Frame::standard_lvb();
        let a = minner(&x, &y);
        let b = inner(&f.coords_of(&x), &f.coords_of(&y), FrameKind::Lvb);
        prop_assert!((a - b).abs() < 1e-9);
        prop_assert!((minner(&x, &y) - minner(&y, &x)).abs() < 1e-15);
    }
}
