//! Finite-difference jets of immersions.
//!
//! Partials of multi-order `(a, b, c)` are tensor products of the second-order
//! central stencils for `d^a/dx^a` etc. Their error expansions are even in the
//! step, so one Richardson level with steps `(s, s/2)` gives `O(s⁴)`.

use crate::dd::DD;
use crate::sampler::ImmersionSampler;
use crate::taylor::{exponents, monomial_index, Tay};
use crate::BlaschkeError;
use serde::{Deserialize, Serialize};

/// Jet of an immersion at a point.
///
/// Partials are listed by multi-index in the order of [`crate::taylor::exponents`]
/// restricted to one degree: `second` = `tt, tv, tw, vv, vw, ww`; `third` and
/// `fourth` likewise (10 and 15 entries).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Jet {
    pub point: [f64; 3],
    pub value: [f64; 4],
    pub first: [[f64; 4]; 3],
    pub second: [[f64; 4]; 6],
    pub third: Option<Vec<[f64; 4]>>,
    pub fourth: Option<Vec<[f64; 4]>>,
}

/// 1D central-difference weights (offset, weight) for derivative order 0–4,
/// second order accurate, unit step.
fn stencil(order: usize) -> &'static [(i32, f64)] {
    match order {
        0 => &[(0, 1.0)],
        1 => &[(-1, -0.5), (1, 0.5)],
        2 => &[(-1, 1.0), (0, -2.0), (1, 1.0)],
        3 => &[(-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)],
        _ => &[(-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)],
    }
}

/// All partials `∂^e φ(p)` with `|e| ≤ order` at a single step, in double-double.
fn raw_partials(phi: &dyn ImmersionSampler, p: [f64; 3], s: f64, order: usize) -> Vec<[DD; 4]> {
    let r: i32 = if order <= 2 { 1 } else { 2 };
    let w = (2 * r + 1) as usize;
    let pd = p.map(DD::new);
    let mut vals = vec![[DD::ZERO; 4]; w * w * w];
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                let q = [pd[0] + DD::new(s) * a as f64, pd[1] + DD::new(s) * b as f64, pd[2] + DD::new(s) * c as f64];
                let idx = ((a + r) as usize * w + (b + r) as usize) * w + (c + r) as usize;
                vals[idx] = phi.eval_dd(q);
            }
        }
    }
    let at = |a: i32, b: i32, c: i32| &vals[((a + r) as usize * w + (b + r) as usize) * w + (c + r) as usize];
    exponents()
        .iter()
        .filter(|e| e.iter().sum::<usize>() <= order)
        .map(|e| {
            let mut acc = [DD::ZERO; 4];
            for &(a, wa) in stencil(e[0]) {
                for &(b, wb) in stencil(e[1]) {
                    for &(c, wc) in stencil(e[2]) {
                        let wt = wa * wb * wc;
                        let v = at(a, b, c);
                        for k in 0..4 {
                            acc[k] += v[k] * wt;
                        }
                    }
                }
            }
            let scale = DD::new(s).powi(e.iter().sum::<usize>() as i32).recip();
            acc.map(|x| x * scale)
        })
        .collect()
}

/// Partials up to `order` (≤ 4) with one Richardson level; indexed like
/// [`exponents`] truncated to degree `order`.
pub fn numeric_partials(
    phi: &dyn ImmersionSampler,
    p: [f64; 3],
    step: f64,
    order: usize,
) -> Result<Vec<[f64; 4]>, BlaschkeError> {
    if !(1..=4).contains(&order) {
        return Err(BlaschkeError::IllegalParameter(format!("jet order {order} not in 1..=4")));
    }
    if !(step > 0.0) || !phi.domain().contains_with_margin(&p, 2.0 * step) {
        return Err(BlaschkeError::OutOfDomain { point: p });
    }
    let coarse = raw_partials(phi, p, step, order);
    let fine = raw_partials(phi, p, step / 2.0, order);
    let out: Vec<[f64; 4]> = coarse
        .iter()
        .zip(fine.iter())
        .map(|(c, f)| std::array::from_fn(|k| ((f[k] * 4.0 - c[k]) / 3.0).to_f64()))
        .collect();
    if out.iter().flatten().any(|x| !x.is_finite()) {
        return Err(BlaschkeError::OutOfDomain { point: p });
    }
    Ok(out)
}

/// Jet of order 2, 3 or 4 (the fourth-order part is an extension used by the
/// Blaschke pipeline).
pub fn numeric_jet(
    phi: &dyn ImmersionSampler,
    p: [f64; 3],
    step: f64,
    order: usize,
) -> Result<Jet, BlaschkeError> {
    if !(2..=4).contains(&order) {
        return Err(BlaschkeError::IllegalParameter(format!("jet order {order} not in 2..=4")));
    }
    let d = numeric_partials(phi, p, step, order)?;
    let slice = |lo: usize, hi: usize| d[lo..hi].to_vec();
    Ok(Jet {
        point: p,
        value: d[0],
        first: [d[1], d[2], d[3]],
        second: [d[4], d[5], d[6], d[7], d[8], d[9]],
        third: (order >= 3).then(|| slice(10, 20)),
        fourth: (order >= 4).then(|| slice(20, 35)),
    })
}

impl Jet {
    /// All partials in [`exponents`] order (missing orders omitted).
    fn partials(&self) -> Vec<[f64; 4]> {
        let mut v = vec![self.value];
        v.extend_from_slice(&self.first);
        v.extend_from_slice(&self.second);
        if let Some(t) = &self.third {
            v.extend_from_slice(t);
            if let Some(f) = &self.fourth {
                v.extend_from_slice(f);
            }
        }
        v
    }

    /// Partial `∂^e φ` for a multi-index `e`, if the jet has that order.
    pub fn partial(&self, e: [usize; 3]) -> Option<[f64; 4]> {
        let i = monomial_index(e)?;
        self.partials().get(i).copied()
    }

    /// Second partial `∂_i ∂_j φ`.
    pub fn second_partial(&self, i: usize, j: usize) -> [f64; 4] {
        let mut e = [0; 3];
        e[i] += 1;
        e[j] += 1;
        self.second[monomial_index(e).expect("degree 2") - 4]
    }

    /// Taylor polynomial of each component, `Σ ∂^e φ / e! · x^e`.
    pub fn taylor(&self) -> [Tay; 4] {
        let mut out = [Tay::zero(); 4];
        let fact = |n: usize| (1..=n).product::<usize>() as f64;
        for (n, (e, d)) in exponents().iter().zip(self.partials()).enumerate() {
            let f = fact(e[0]) * fact(e[1]) * fact(e[2]);
            for k in 0..4 {
                out[k].c[n] = d[k] / f;
            }
        }
        out
    }
}
