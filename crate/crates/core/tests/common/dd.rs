//! Double-double (about 32 significant digits) arithmetic, just enough to
//! evaluate inverse-then-forward hyperbolic compositions as a reference.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

const LN2: Dd = Dd {
    hi: std::f64::consts::LN_2,
    lo: 2.3190468138462996e-17,
};

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let v = s - a;
    Dd {
        hi: s,
        lo: (a - (s - v)) + (b - v),
    }
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd {
        hi: s,
        lo: b - (s - a),
    }
}

impl Dd {
    pub fn new(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn scale(self, p: f64) -> Self {
        Self {
            hi: self.hi * p,
            lo: self.lo * p,
        }
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn recip(self) -> Self {
        Dd::new(1.0) / self
    }

    pub fn sqrt(self) -> Self {
        if self.hi == 0.0 {
            return self;
        }
        let s = Dd::new(self.hi.sqrt());
        s + (self - s * s) / s.scale(2.0)
    }

    pub fn exp(self) -> Self {
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2 * Dd::new(k)).scale(1.0 / 1024.0);
        // e^r - 1 by Taylor series, then (1 + s)^2 - 1 = 2s + s^2 ten times
        let mut term = r;
        let mut s = r;
        for n in 2..=20 {
            term = term * r / Dd::new(n as f64);
            s = s + term;
        }
        for _ in 0..10 {
            s = s.scale(2.0) + s * s;
        }
        (s + Dd::new(1.0)).scale(2f64.powi(k as i32))
    }

    pub fn ln(self) -> Self {
        let mut y = Dd::new(self.hi.ln());
        for _ in 0..3 {
            y = y + self * (-y).exp() - Dd::new(1.0);
        }
        y
    }

    pub fn sinh(self) -> Self {
        let e = self.exp();
        (e - e.recip()).scale(0.5)
    }

    pub fn cosh(self) -> Self {
        let e = self.exp();
        (e + e.recip()).scale(0.5)
    }

    pub fn tanh(self) -> Self {
        let e = self.scale(2.0).exp();
        let one = Dd::new(1.0);
        (e - one) / (e + one)
    }

    pub fn asinh(self) -> Self {
        let a = self.abs();
        let r = (a + (a * a + Dd::new(1.0)).sqrt()).ln();
        if self.hi < 0.0 {
            -r
        } else {
            r
        }
    }

    pub fn acosh(self) -> Self {
        (self + (self * self - Dd::new(1.0)).sqrt()).ln()
    }

    pub fn atanh(self) -> Self {
        let one = Dd::new(1.0);
        ((one + self) / (one - self)).ln().scale(0.5)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        let t = two_sum(self.lo, o.lo);
        let u = quick_two_sum(s.hi, s.lo + t.hi);
        quick_two_sum(u.hi, u.lo + t.lo)
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        quick_two_sum(p, e + (self.hi * o.lo + self.lo * o.hi))
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::new(q2);
        let q3 = r.hi / o.hi;
        quick_two_sum(q1, q2) + Dd::new(q3)
    }
}
