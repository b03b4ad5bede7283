//! Double-double arithmetic (≈ 32 significant digits).
//!
//! A value is the unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`. Samplers are
//! evaluated in this type so that high-order finite differences stay far above
//! the rounding floor: a fourth difference at step `1e−3` divides by `1e−12`,
//! which would leave only ~4 correct digits in plain `f64`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// A double-double number.
#[derive(Clone, Copy, Default, PartialEq, PartialOrd)]
pub struct DD {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DD {
    pub const ZERO: DD = DD { hi: 0.0, lo: 0.0 };
    pub const ONE: DD = DD { hi: 1.0, lo: 0.0 };
    pub const PI: DD = DD { hi: 3.141592653589793, lo: 1.2246467991473532e-16 };
    pub const FRAC_PI_2: DD = DD { hi: 1.5707963267948966, lo: 6.123233995736766e-17 };
    pub const LN_2: DD = DD { hi: 0.6931471805599453, lo: 2.3190468138462996e-17 };
    pub const E: DD = DD { hi: 2.718281828459045, lo: 1.4456468917292502e-16 };

    pub const fn new(x: f64) -> DD {
        DD { hi: x, lo: 0.0 }
    }

    /// Normalizes an arbitrary pair.
    pub fn from_parts(hi: f64, lo: f64) -> DD {
        let (h, l) = two_sum(hi, lo);
        DD { hi: h, lo: l }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> DD {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    /// Multiplication by an exact power of two.
    pub fn ldexp(self, k: i32) -> DD {
        let s = 2f64.powi(k);
        DD { hi: self.hi * s, lo: self.lo * s }
    }

    pub fn recip(self) -> DD {
        DD::ONE / self
    }

    pub fn sqr(self) -> DD {
        self * self
    }

    pub fn powi(self, n: i32) -> DD {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let (mut base, mut e, mut acc) = (self, n as u32, DD::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn sqrt(self) -> DD {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { DD::ZERO } else { DD::new(f64::NAN) };
        }
        // One Newton step on the f64 root doubles the precision.
        let x = self.hi.sqrt();
        let (p, e) = two_prod(x, x);
        let r = ((self.hi - p) - e + self.lo) / (2.0 * x);
        DD::from_parts(x, r)
    }

    pub fn exp(self) -> DD {
        if self.hi > 709.0 {
            return DD::new(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return DD::ZERO;
        }
        let k = (self.hi / DD::LN_2.hi).round();
        let r = (self - DD::LN_2 * k).ldexp(-10);
        // expm1(r) by Taylor series, then (1 + p)^(2^10) via p ↦ 2p + p².
        let mut term = r;
        let mut p = r;
        for n in 2..=14 {
            term = term * r / n as f64;
            p += term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..10 {
            p = p.ldexp(1) + p * p;
        }
        (p + 1.0).ldexp(k as i32)
    }

    pub fn ln(self) -> DD {
        if self.hi <= 0.0 {
            return DD::new(f64::NAN);
        }
        let mut y = DD::new(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - 1.0;
        }
        y
    }

    /// Sine and cosine by reduction modulo π/2 and Taylor series.
    pub fn sin_cos(self) -> (DD, DD) {
        let k = (self.hi / DD::FRAC_PI_2.hi).round();
        let r = self - DD::FRAC_PI_2 * k;
        let r2 = r * r;
        let (mut s, mut c) = (r, DD::ONE);
        let (mut ts, mut tc) = (r, DD::ONE);
        for n in 1..=20 {
            let m = 2 * n;
            tc = -tc * r2 / ((m * (m - 1)) as f64);
            ts = -ts * r2 / ((m * (m + 1)) as f64);
            c += tc;
            s += ts;
            if tc.hi.abs() < 1e-36 && ts.hi.abs() < 1e-36 {
                break;
            }
        }
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    pub fn sin(self) -> DD {
        self.sin_cos().0
    }

    pub fn cos(self) -> DD {
        self.sin_cos().1
    }

    pub fn cosh(self) -> DD {
        let e = self.exp();
        (e + e.recip()).ldexp(-1)
    }

    pub fn sinh(self) -> DD {
        if self.hi.abs() < 0.1 {
            // Avoid cancellation: odd Taylor series.
            let x2 = self * self;
            let (mut t, mut s) = (self, self);
            for n in 1..=15 {
                t = t * x2 / ((2 * n * (2 * n + 1)) as f64);
                s += t;
            }
            return s;
        }
        let e = self.exp();
        (e - e.recip()).ldexp(-1)
    }
}

impl From<f64> for DD {
    fn from(x: f64) -> DD {
        DD::new(x)
    }
}

impl fmt::Debug for DD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DD({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for DD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

impl Neg for DD {
    type Output = DD;
    fn neg(self) -> DD {
        DD { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for DD {
    type Output = DD;
    fn add(self, b: DD) -> DD {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        DD { hi, lo }
    }
}

impl Sub for DD {
    type Output = DD;
    fn sub(self, b: DD) -> DD {
        self + (-b)
    }
}

impl Mul for DD {
    type Output = DD;
    fn mul(self, b: DD) -> DD {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DD { hi, lo }
    }
}

impl Div for DD {
    type Output = DD;
    fn div(self, b: DD) -> DD {
        let q1 = self.hi / b.hi;
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r = r - b * q2;
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DD { hi, lo } + q3
    }
}

macro_rules! scalar_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<f64> for DD {
            type Output = DD;
            fn $f(self, b: f64) -> DD {
                $tr::$f(self, DD::new(b))
            }
        }
        impl $tr<DD> for f64 {
            type Output = DD;
            fn $f(self, b: DD) -> DD {
                $tr::$f(DD::new(self), b)
            }
        }
    )*};
}
scalar_ops!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign for DD {
    fn add_assign(&mut self, b: DD) {
        *self = *self + b;
    }
}

impl SubAssign for DD {
    fn sub_assign(&mut self, b: DD) {
        *self = *self - b;
    }
}

impl MulAssign for DD {
    fn mul_assign(&mut self, b: DD) {
        *self = *self * b;
    }
}

impl std::iter::Sum for DD {
    fn sum<I: Iterator<Item = DD>>(iter: I) -> DD {
        iter.fold(DD::ZERO, |a, b| a + b)
    }
}
