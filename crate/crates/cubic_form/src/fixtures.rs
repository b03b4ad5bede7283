//! Deterministic generators of canonical forms, used by tests and the CLI.
//!
//! Parameters are produced from caller-supplied uniform samples in `[0, 1)` so
//! that this crate needs no random-number dependency. Every generated parameter
//! lies in `[0.2, 3]` in absolute value and at least `0.1` away from the class
//! boundaries of the stabilizer theorem.

use crate::stabilizer::{canonical_form, SymmetryTag};
use crate::CubicForm;
use std::collections::BTreeMap;

fn lerp(u: f64, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * u.clamp(0.0, 1.0)
}

/// Canonical parameters of class `tag` from four uniform samples.
///
/// For `RLine` the returned `b7` is the raw draw; its canonical value is 1.
/// For `Z2B` two canonical shapes are produced: `a5 = 0` with `|a2 − a6/2| ≥ 0.1`,
/// or `a2 = a6/2` with `|a5| ≥ 0.2`.
pub fn canonical_params(tag: SymmetryTag, u: [f64; 4]) -> BTreeMap<String, f64> {
    let mut p = BTreeMap::new();
    let mut put = |k: &str, v: f64| {
        p.insert(k.to_string(), v);
    };
    match tag {
        SymmetryTag::FullSO12 | SymmetryTag::Trivial => {}
        SymmetryTag::SO2 => put("a4", lerp(u[0], 0.2, 3.0)),
        SymmetryTag::S3 => put("a6", lerp(u[0], 0.2, 3.0)),
        SymmetryTag::Z3 => {
            put("a4", lerp(u[0], 0.2, 3.0));
            put("a6", lerp(u[1], 0.2, 3.0));
        }
        SymmetryTag::Z2B => {
            let a6 = lerp(u[1], 0.2, 3.0);
            if u[3] < 0.5 {
                // a5 = 0, p = a2 − a6/2 with 0.1 ≤ |p|, |a2| ≤ 3.
                let mut a2 = lerp(u[0], -3.0, 3.0);
                if (a2 - a6 / 2.0).abs() < 0.1 {
                    a2 = a6 / 2.0 + 0.1f64.copysign(a2 - a6 / 2.0 + 1e-300);
                }
                put("a2", a2);
                put("a5", 0.0);
            } else {
                let a5 = lerp(u[0], 0.2, 3.0) * if u[2] < 0.5 { -1.0 } else { 1.0 };
                put("a2", a6 / 2.0);
                put("a5", a5);
            }
            put("a6", a6);
        }
        SymmetryTag::Z2xZ2 => put("a5", lerp(u[0], 0.2, 3.0)),
        SymmetryTag::Z2Api => {
            let a1 = lerp(u[0], 0.2, 3.0);
            // a4 > a1/2 and |a1 − 2a4| ≥ 0.1 (SO(2) boundary).
            let a4 = lerp(u[1], a1 / 2.0 + 0.1, a1 / 2.0 + 3.0);
            put("a1", a1);
            put("a4", a4);
        }
        SymmetryTag::SO11 => put("b4", lerp(u[0], 0.2, 3.0)),
        SymmetryTag::RLine => put("b7", lerp(u[0], 0.2, 3.0)),
    }
    p
}

/// Canonical parameters as the classifier reports them (`RLine` → `b7 = 1`).
pub fn expected_params(tag: SymmetryTag, p: &BTreeMap<String, f64>) -> BTreeMap<String, f64> {
    let mut e = p.clone();
    if tag == SymmetryTag::RLine {
        e.insert("b7".into(), 1.0);
    }
    e
}

/// Canonical form of class `tag` from uniform samples.
pub fn canonical_sample(tag: SymmetryTag, u: [f64; 4]) -> (BTreeMap<String, f64>, CubicForm) {
    let p = canonical_params(tag, u);
    let f = canonical_form(tag, &p);
    (p, f)
}
