//! Double-double forward recurrence for `|x| > 1`, where the wanted solution
//! can be the subdominant one and plain `f64` loses it quickly.

use core::ops::{Add, Div, Mul, Neg, Sub};

use alloc::vec::Vec;

use super::{Normalization, PollaczekParams, PolynomialSequence};

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

impl DoubleDouble {
    pub const fn from_f64(v: f64) -> Self {
        Self { hi: v, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn mul_f64(self, b: f64) -> Self {
        let p = self.hi * b;
        let e = libm::fma(self.hi, b, -p);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Self { hi, lo }
    }
}

impl From<f64> for DoubleDouble {
    fn from(v: f64) -> Self {
        Self::from_f64(v)
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let e = libm::fma(self.hi, o.hi, -p);
        let (hi, lo) = quick_two_sum(p, e + (self.hi * o.lo + self.lo * o.hi));
        Self { hi, lo }
    }
}

impl Mul<f64> for DoubleDouble {
    type Output = Self;
    fn mul(self, b: f64) -> Self {
        self.mul_f64(b)
    }
}

impl Div<f64> for DoubleDouble {
    type Output = Self;
    fn div(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let r = self - DoubleDouble::from(q1).mul_f64(b);
        let q2 = r.hi / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo }
    }
}

/// `P_0(x), ..., P_N(x)` with the recurrence carried in double-double
/// arithmetic. The inputs `λ, a, b, x` are taken as exact.
pub fn eval_p_extended(params: &PollaczekParams, x: f64, n: usize) -> PolynomialSequence {
    let PollaczekParams { lam, a, b } = *params;
    let dd = DoubleDouble::from;
    let lam_a = dd(lam) + dd(a);
    let x_dd = dd(x);
    let b_dd = dd(b);
    let mut vals: Vec<DoubleDouble> = Vec::with_capacity(n + 1);
    vals.push(dd(1.0));
    if n >= 1 {
        vals.push((lam_a * x_dd + b_dd) * 2.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let bracket = (dd(kf) + lam_a) * x_dd + b_dd;
        let back = dd(kf - 1.0) + dd(lam) * 2.0;
        let next = ((bracket * vals[k]) * 2.0 - back * vals[k - 1]) / (kf + 1.0);
        vals.push(next);
    }
    PolynomialSequence {
        values: vals.into_iter().map(DoubleDouble::to_f64).collect(),
        argument: x,
        normalization: Normalization::P,
        params: *params,
    }
}
