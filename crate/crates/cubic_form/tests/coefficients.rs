//! Coefficient tables, action, apolarity and Pick invariant.

use cubic_form::*;
use lorentz_core::*;
use nalgebra::Vector3;
use proptest::prelude::*;
use std::f64::consts::TAU;

fn onb(a: [f64; 7]) -> CubicForm {
    CubicForm::from_onb_coeffs(&OnbCoeffs(a), Frame::reference()).unwrap()
}

fn lvb(b: [f64; 7]) -> CubicForm {
    CubicForm::from_lvb_coeffs(&LvbCoeffs(b), Frame::standard_lvb()).unwrap()
}

fn close(a: Vector3<f64>, b: [f64; 3]) -> bool {
    (a - Vector3::from(b)).amax() < 1e-15
}

#[test]
fn onb_table_a5() {
    let k = onb([0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
    // Indices: 0 = t, 1 = v, 2 = w.
    assert!(close(k.k_of(0, 1), [0.0, 0.0, 1.0]));
    assert!(close(k.k_of(1, 2), [-1.0, 0.0, 0.0]));
    assert!(close(k.k_of(0, 2), [0.0, 1.0, 0.0]));
    for i in 0..3 {
        assert!(close(k.k_of(i, i), [0.0; 3]));
    }
    assert_eq!(onb([0.0; 7]).amax(), 0.0);
}

#[test]
fn onb_table_matches_displayed_matrices() {
    let a = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0];
    let k = onb(a);
    let [a1, a2, a3, a4, a5, a6, a7] = a;
    let kt = k.k_matrix(&Vector3::x());
    let kv = k.k_matrix(&Vector3::y());
    let kw = k.k_matrix(&Vector3::z());
    let et = Mat3::new(-a1, -a2, -a3, a2, a4, a5, a3, a5, a1 - a4);
    let ev = Mat3::new(-a2, -a4, -a5, a4, a6, a7, a5, a7, a2 - a6);
    let ew = Mat3::new(-a3, -a5, -(a1 - a4), a5, a7, a2 - a6, a1 - a4, a2 - a6, a3 - a7);
    assert!((kt - et).amax() < 1e-15 && (kv - ev).amax() < 1e-15 && (kw - ew).amax() < 1e-15);
}

#[test]
fn lvb_table_matches_displayed_matrices() {
    let b = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0];
    let k = lvb(b);
    let [b1, b2, b3, b4, b5, b6, b7] = b;
    let ke = k.k_matrix(&Vector3::x());
    let kv = k.k_matrix(&Vector3::y());
    let kf = k.k_matrix(&Vector3::z());
    let ee = Mat3::new(b1, b4, b5, b2, -2.0 * b1, b4, b3, b2, b1);
    let ev = Mat3::new(b4, -2.0 * b5, b6, -2.0 * b1, -2.0 * b4, -2.0 * b5, b2, -2.0 * b1, b4);
    let ef = Mat3::new(b5, b6, b7, b4, -2.0 * b5, b6, b1, b4, b5);
    assert!((ke - ee).amax() < 1e-15 && (kv - ev).amax() < 1e-15 && (kf - ef).amax() < 1e-15);
}

#[test]
fn lvb_table_b7() {
    let k = lvb([0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
    assert!(close(k.k_of(2, 2), [1.0, 0.0, 0.0]));
    for (i, j) in [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2)] {
        assert!(close(k.k_of(i, j), [0.0; 3]));
    }
}

#[test]
fn wrong_frame_kind() {
    let e = CubicForm::from_onb_coeffs(&OnbCoeffs([0.0; 7]), Frame::standard_lvb());
    assert!(matches!(e, Err(CubicError::WrongFrameKind { .. })));
    assert!(onb([1.0; 7]).to_lvb_coeffs().is_err());
    let l = make_normal_form(NormalFormTag::Boost, 2.0).unwrap();
    assert!(act(&l, &onb([1.0; 7])).is_err());
}

#[test]
fn act_examples() {
    let k = onb([0.3, -1.0, 0.2, 0.7, 1.1, -0.4, 0.9]);
    let id = Isometry::new(Mat3::identity(), FrameKind::Onb, 1e-12).unwrap();
    assert_eq!(act(&id, &k).unwrap(), k);
    let s3 = onb([0.0, 0.0, 0.0, 0.0, 0.0, 1.7, 0.0]);
    let r = Isometry::new(rotation_matrix(TAU / 3.0), FrameKind::Onb, 1e-12).unwrap();
    assert!(invariance_residual(&r, &s3).unwrap() < 1e-14);
}

#[test]
fn rotation_mixes_a6_a7_with_triple_angle() {
    let (a6, a7) = (0.8, -1.3);
    let k = onb([0.0, 0.0, 0.0, 0.0, 0.0, a6, a7]);
    for s in [0.1, 0.9, 2.3] {
        let (sn, cs) = f64::sin_cos(s);
        let f = Frame::new(
            FrameKind::Onb,
            Mat3::from_columns(&[Vector3::x(), Vector3::new(0.0, cs, sn), Vector3::new(0.0, -sn, cs)]),
            1e-12,
        )
        .unwrap();
        let a = k.in_frame(&f).to_onb_coeffs().unwrap();
        assert!((a.a(6) - (a6 * (3.0 * s).cos() + a7 * (3.0 * s).sin())).abs() < 1e-14);
    }
}

#[test]
fn apolarity_examples() {
    assert_eq!(apolarity_residual(&onb([0.0; 7])), 0.0);
    for tag in SymmetryTag::ALL {
        let (_, f) = fixtures::canonical_sample(tag, [0.3, 0.6, 0.2, 0.7]);
        assert!(apolarity_residual(&f) < 1e-15, "{tag:?}");
    }
    let eps = 1e-3;
    let mut c = onb([0.3, -1.0, 0.2, 0.7, 1.1, -0.4, 0.9]).c();
    c[0] += eps;
    let p = CubicForm::from_c(Frame::reference(), c);
    assert!(apolarity_residual(&p) >= eps / 2.0 - 1e-15);
    assert!(matches!(pick_invariant(&p), Err(CubicError::NotAdmissible { .. })));
}

#[test]
fn pick_examples() {
    let z2z2 = onb([0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
    assert!((pick_invariant(&z2z2).unwrap() + 1.0).abs() < 1e-14);
    let (a4, a6) = (0.7, 1.9);
    let z3 = onb([2.0 * a4, 0.0, 0.0, a4, 0.0, a6, 0.0]);
    let expect = (-5.0 * a4 * a4 + 2.0 * a6 * a6) / 3.0;
    assert!((pick_invariant(&z3).unwrap() - expect).abs() < 1e-14);
    let so11 = lvb([0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
    assert!((pick_invariant(&so11).unwrap() - 5.0 / 3.0).abs() < 1e-14);
}

#[test]
fn json_forms() {
    let j: CubicFormJson = serde_json::from_str(r#"{"coeffs":{"kind":"onb","a":[0,0,0,0,1,0,0]}}"#).unwrap();
    let k = j.to_form().unwrap();
    assert_eq!(k.to_onb_coeffs().unwrap().a(5), 1.0);
    let d = CubicFormJson::dense(&k);
    let s = serde_json::to_string(&d).unwrap();
    let back: CubicFormJson = serde_json::from_str(&s).unwrap();
    assert_eq!(back.to_form().unwrap(), k);
    let j: CubicFormJson = serde_json::from_str(r#"{"coeffs":{"kind":"lvb","b":[0,0,0,0,0,0,1]}}"#).unwrap();
    assert_eq!(j.to_form().unwrap().frame().kind(), FrameKind::Lvb);
}

fn coeff7() -> impl Strategy<Value = [f64; 7]> {
    prop::array::uniform7(-3.0f64..3.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn onb_round_trip(a in coeff7()) {
        prop_assert_eq!(onb(a).to_onb_coeffs().unwrap().0, a);
    }

    #[test]
    fn lvb_round_trip(b in coeff7()) {
        prop_assert_eq!(lvb(b).to_lvb_coeffs().unwrap().0, b);
    }

    #[test]
    fn right_action(a in coeff7(), x in prop::array::uniform3(0.0f64..6.0), y in prop::array::uniform3(0.0f64..6.0)) {
        let k = onb(a);
        let l1 = group_element(x[0], x[1] / 4.0 - 0.75, x[2], false);
        let l2 = group_element(y[0], y[1] / 4.0 - 0.75, y[2], true);
        let lhs = act(&l2, &act(&l1, &k).unwrap()).unwrap();
        let rhs = act(&l1.compose(&l2), &k).unwrap();
        prop_assert!(tensor::amax(&tensor::sub(lhs.lowered(), rhs.lowered())) < 1e-11);
    }

    #[test]
    fn equivariance_and_pick_invariance(a in coeff7(), x in prop::array::uniform3(0.0f64..6.0)) {
        let k = onb(a);
        let l = group_element(x[0], x[1] / 4.0 - 0.75, x[2], x[2] > 3.0);
        let moved = act(&l, &k).unwrap().to_onb_coeffs().unwrap();
        let f = Frame::new(FrameKind::Onb, *l.matrix(), 1e-9).unwrap();
        let direct = k.in_frame(&f).to_onb_coeffs().unwrap();
        for i in 0..7 {
            prop_assert!((moved.0[i] - direct.0[i]).abs() < 1e-11);
        }
        let j0 = pick_invariant(&k).unwrap();
        let j1 = pick_invariant(&act(&l, &k).unwrap()).unwrap();
        prop_assert!((j0 - j1).abs() < 1e-10 * j0.abs().max(1.0));
        // Also invariant under passing to an LVB description.
        let jl = pick_invariant(&k.in_frame(&Frame::standard_lvb())).unwrap();
        prop_assert!((j0 - jl).abs() < 1e-10 * j0.abs().max(1.0));
    }
}
