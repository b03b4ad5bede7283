//! Truncated Taylor polynomials in three variables up to total degree 4.
//!
//! All local invariants are computed by arithmetic on these polynomials,
//! starting from the fourth-order jet of the immersion. Each differentiation
//! lowers the trustworthy degree by one: the jet is exact to degree 4, the
//! metric to degree 2, the Blaschke normal and difference tensor to degree 1,
//! and the shape operator is read at the base point.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

/// Number of monomials of total degree ≤ 4 in three variables.
pub const NMON: usize = 35;
/// Maximal total degree.
pub const MAX_DEG: usize = 4;

struct Tables {
    exps: Vec<[usize; 3]>,
    index: [[[usize; 5]; 5]; 5],
    products: Vec<(usize, usize, usize)>,
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let mut exps = Vec::with_capacity(NMON);
        for d in 0..=MAX_DEG {
            for a in (0..=d).rev() {
                for b in (0..=d - a).rev() {
                    exps.push([a, b, d - a - b]);
                }
            }
        }
        let mut index = [[[usize::MAX; 5]; 5]; 5];
        for (n, e) in exps.iter().enumerate() {
            index[e[0]][e[1]][e[2]] = n;
        }
        let mut products = Vec::new();
        for (i, a) in exps.iter().enumerate() {
            for (j, b) in exps.iter().enumerate() {
                let e = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
                if e.iter().sum::<usize>() <= MAX_DEG {
                    products.push((i, j, index[e[0]][e[1]][e[2]]));
                }
            }
        }
        Tables { exps, index, products }
    })
}

/// Exponent triples in storage order (by degree, then lexicographically descending).
pub fn exponents() -> &'static [[usize; 3]] {
    &tables().exps
}

/// Storage index of the monomial `t^a v^b w^c`, if its degree is ≤ 4.
pub fn monomial_index(e: [usize; 3]) -> Option<usize> {
    if e.iter().sum::<usize>() > MAX_DEG {
        return None;
    }
    Some(tables().index[e[0]][e[1]][e[2]])
}

/// A truncated Taylor polynomial `Σ c_e x^e`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tay {
    pub c: [f64; NMON],
}

impl Default for Tay {
    fn default() -> Self {
        Tay::zero()
    }
}

impl Tay {
    pub fn zero() -> Tay {
        Tay { c: [0.0; NMON] }
    }

    pub fn constant(v: f64) -> Tay {
        let mut t = Tay::zero();
        t.c[0] = v;
        t
    }

    /// The coordinate function `x_i` (offset from the base point).
    pub fn var(i: usize) -> Tay {
        let mut e = [0; 3];
        e[i] = 1;
        let mut t = Tay::zero();
        t.c[monomial_index(e).expect("degree 1")] = 1.0;
        t
    }

    /// Value at the base point.
    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// Coefficient of `x^e`.
    pub fn coeff(&self, e: [usize; 3]) -> f64 {
        monomial_index(e).map_or(0.0, |i| self.c[i])
    }

    /// Partial derivative `∂/∂x_i` at the base point.
    pub fn d(&self, i: usize) -> f64 {
        let mut e = [0; 3];
        e[i] = 1;
        self.coeff(e)
    }

    /// Partial derivative as a polynomial (one degree less accurate).
    pub fn deriv(&self, i: usize) -> Tay {
        let t = tables();
        let mut out = Tay::zero();
        for (n, e) in t.exps.iter().enumerate() {
            if e[i] == 0 {
                continue;
            }
            let mut f = *e;
            f[i] -= 1;
            out.c[t.index[f[0]][f[1]][f[2]]] += e[i] as f64 * self.c[n];
        }
        out
    }

    pub fn scale(&self, s: f64) -> Tay {
        Tay { c: self.c.map(|x| x * s) }
    }

    /// `Σ_k a_k u^k` for the nilpotent part `u` of `self`.
    fn compose_series(&self, a: [f64; MAX_DEG + 1]) -> Tay {
        let mut u = *self;
        u.c[0] = 0.0;
        let mut out = Tay::constant(a[0]);
        let mut pow = Tay::constant(1.0);
        for ak in a.iter().skip(1) {
            pow = pow * u;
            out = out + pow.scale(*ak);
        }
        out
    }

    /// `self^α` for a positive base value.
    pub fn powf(&self, alpha: f64) -> Tay {
        let a0 = self.c[0];
        let u = self.scale(1.0 / a0);
        // (1 + u)^α = Σ binom(α, k) u^k.
        let mut coef = [0.0; MAX_DEG + 1];
        let mut b = 1.0;
        for (k, ck) in coef.iter_mut().enumerate() {
            *ck = b;
            b *= (alpha - k as f64) / (k as f64 + 1.0);
        }
        let mut s = u.compose_series(coef);
        s.c[0] = 1.0;
        s.scale(a0.powf(alpha))
    }

    pub fn recip(&self) -> Tay {
        let a0 = self.c[0];
        let u = self.scale(1.0 / a0);
        let mut s = u.compose_series([1.0, -1.0, 1.0, -1.0, 1.0]);
        s.c[0] = 1.0;
        s.scale(1.0 / a0)
    }

    pub fn sqrt(&self) -> Tay {
        self.powf(0.5)
    }
}

impl Add for Tay {
    type Output = Tay;
    fn add(self, b: Tay) -> Tay {
        let mut c = self.c;
        for (x, y) in c.iter_mut().zip(b.c.iter()) {
            *x += y;
        }
        Tay { c }
    }
}

impl Sub for Tay {
    type Output = Tay;
    fn sub(self, b: Tay) -> Tay {
        let mut c = self.c;
        for (x, y) in c.iter_mut().zip(b.c.iter()) {
            *x -= y;
        }
        Tay { c }
    }
}

impl Neg for Tay {
    type Output = Tay;
    fn neg(self) -> Tay {
        self.scale(-1.0)
    }
}

impl Mul for Tay {
    type Output = Tay;
    fn mul(self, b: Tay) -> Tay {
        let mut c = [0.0; NMON];
        for &(i, j, k) in &tables().products {
            c[k] += self.c[i] * b.c[j];
        }
        Tay { c }
    }
}

impl Mul<f64> for Tay {
    type Output = Tay;
    fn mul(self, s: f64) -> Tay {
        self.scale(s)
    }
}

impl Add<f64> for Tay {
    type Output = Tay;
    fn add(self, s: f64) -> Tay {
        let mut t = self;
        t.c[0] += s;
        t
    }
}

/// A 3×3 matrix of Taylor polynomials.
pub type TayMat3 = [[Tay; 3]; 3];

pub fn det3(m: &TayMat3) -> Tay {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Inverse by the adjugate.
pub fn inv3(m: &TayMat3) -> TayMat3 {
    let r = det3(m).recip();
    let mut out = [[Tay::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (i1, i2) = ((j + 1) % 3, (j + 2) % 3);
            let (j1, j2) = ((i + 1) % 3, (i + 2) % 3);
            out[i][j] = (m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]) * r;
        }
    }
    out
}

/// Determinant of the 4×4 matrix with the given columns.
pub fn det4_cols(cols: &[[Tay; 4]; 4]) -> Tay {
    let n = cofactor_normal(&[cols[0], cols[1], cols[2]]);
    (0..4).fold(Tay::zero(), |acc, a| acc + n[a] * cols[3][a])
}

/// Generalized cross product `N` of three 4-vectors: `det(c0, c1, c2, Y) = N·Y`.
pub fn cofactor_normal(c: &[[Tay; 4]; 3]) -> [Tay; 4] {
    let mut n = [Tay::zero(); 4];
    for (a, na) in n.iter_mut().enumerate() {
        let rows: Vec<usize> = (0..4).filter(|&r| r != a).collect();
        let mut m = [[Tay::zero(); 3]; 3];
        for (i, &r) in rows.iter().enumerate() {
            for (j, col) in c.iter().enumerate() {
                m[i][j] = col[r];
            }
        }
        // Cofactor of entry (a, 3) of the 4×4 matrix [c0 c1 c2 Y].
        let sign = if (a + 3) % 2 == 0 { 1.0 } else { -1.0 };
        *na = det3(&m).scale(sign);
    }
    n
}

/// Inverse of a 4×4 matrix (columns given) by cofactors; returns rows of the inverse.
pub fn inv4_cols(cols: &[[Tay; 4]; 4]) -> [[Tay; 4]; 4] {
    let det_r = det4_cols(cols).recip();
    let mut inv = [[Tay::zero(); 4]; 4];
    // Row k of the inverse is the generalized cross product of the other three
    // columns (with the sign making inv·M = I).
    for k in 0..4 {
        let others: Vec<usize> = (0..4).filter(|&j| j != k).collect();
        let n = cofactor_normal(&[cols[others[0]], cols[others[1]], cols[others[2]]]);
        // det(.., col_k in slot 3 ..) moved back to slot k: sign (−1)^{3−k}.
        let sign = if (3 - k) % 2 == 0 { 1.0 } else { -1.0 };
        for a in 0..4 {
            inv[k][a] = n[a] * det_r.scale(sign);
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(t: &Tay, x: [f64; 3]) -> f64 {
        exponents()
            .iter()
            .zip(t.c.iter())
            .map(|(e, c)| c * x[0].powi(e[0] as i32) * x[1].powi(e[1] as i32) * x[2].powi(e[2] as i32))
            .sum()
    }

    #[test]
    fn layout() {
        assert_eq!(exponents().len(), NMON);
        assert_eq!(monomial_index([0, 0, 0]), Some(0));
        assert_eq!(monomial_index([1, 0, 0]), Some(1));
        assert_eq!(monomial_index([2, 2, 1]), None);
    }

    #[test]
    fn series_functions() {
        let x = Tay::constant(2.0) + Tay::var(0) * 0.3 - Tay::var(2) * 0.1 + Tay::var(1) * Tay::var(0);
        let p = [1e-2, -2e-2, 1.5e-2];
        let xv = eval(&x, p);
        assert!((eval(&x.recip(), p) - 1.0 / xv).abs() < 1e-9);
        assert!((eval(&x.powf(-0.2), p) - xv.powf(-0.2)).abs() < 1e-9);
        assert!((eval(&(x.sqrt() * x.sqrt()), p) - xv).abs() < 1e-9);
        let d = (x * x).deriv(0);
        assert!((d.value() - 2.0 * 2.0 * 0.3).abs() < 1e-15);
    }

    #[test]
    fn matrix_inverses() {
        let mut cols = [[Tay::zero(); 4]; 4];
        let base = [[2.0, 0.1, 0.0, 0.3], [0.0, 1.0, 0.5, 0.0], [0.2, 0.0, 1.5, 0.1], [0.0, 0.4, 0.0, 1.0]];
        for j in 0..4 {
            for a in 0..4 {
                cols[j][a] = Tay::constant(base[j][a]) + Tay::var(a % 3) * (0.1 * (j + 1) as f64);
            }
        }
        let inv = inv4_cols(&cols);
        for k in 0..4 {
            for j in 0..4 {
                let s = (0..4).fold(Tay::zero(), |acc, a| acc + inv[k][a] * cols[j][a]);
                let want = if k == j { 1.0 } else { 0.0 };
                assert!((s.value() - want).abs() < 1e-13);
                for c in &s.c[1..] {
                    assert!(c.abs() < 1e-12);
                }
            }
        }
    }
}
