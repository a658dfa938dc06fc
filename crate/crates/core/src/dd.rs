//! Double-double ("twice f64") arithmetic for the few series sums that
//! cancel too strongly for plain doubles. Relative precision is about 1e-32.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
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

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub fn new(v: f64) -> Self {
        Dd { hi: v, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn from_pair((hi, lo): (f64, f64)) -> Self {
        Dd { hi, lo }
    }

    fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        Dd::from_pair(quick_two_sum(p, e + self.lo * b))
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, y: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, y.hi);
        let (t, f) = two_sum(self.lo, y.lo);
        let (s, e) = quick_two_sum(s, e + t);
        Dd::from_pair(quick_two_sum(s, e + f))
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

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, y: Dd) -> Dd {
        self + (-y)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, y: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, y.hi);
        let e = e + (self.hi * y.lo + self.lo * y.hi);
        Dd::from_pair(quick_two_sum(p, e))
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, y: Dd) -> Dd {
        // long division with three f64 quotient digits
        let q1 = self.hi / y.hi;
        let r = self - y.mul_f64(q1);
        let q2 = r.hi / y.hi;
        let r = r - y.mul_f64(q2);
        let q3 = r.hi / y.hi;
        Dd::from_pair(quick_two_sum(q1, q2)) + Dd::new(q3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct ComplexDd {
    re: Dd,
    im: Dd,
}

impl ComplexDd {
    /// Rounded back to double precision.
    pub fn approx(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl From<Complex64> for ComplexDd {
    fn from(z: Complex64) -> Self {
        ComplexDd {
            re: Dd::new(z.re),
            im: Dd::new(z.im),
        }
    }
}

impl Add for ComplexDd {
    type Output = ComplexDd;
    fn add(self, w: ComplexDd) -> ComplexDd {
        ComplexDd {
            re: self.re + w.re,
            im: self.im + w.im,
        }
    }
}

impl Add<f64> for ComplexDd {
    type Output = ComplexDd;
    fn add(self, w: f64) -> ComplexDd {
        ComplexDd {
            re: self.re + Dd::new(w),
            im: self.im,
        }
    }
}

impl Mul for ComplexDd {
    type Output = ComplexDd;
    fn mul(self, w: ComplexDd) -> ComplexDd {
        ComplexDd {
            re: self.re * w.re - self.im * w.im,
            im: self.re * w.im + self.im * w.re,
        }
    }
}

impl Mul<f64> for ComplexDd {
    type Output = ComplexDd;
    fn mul(self, w: f64) -> ComplexDd {
        ComplexDd {
            re: self.re.mul_f64(w),
            im: self.im.mul_f64(w),
        }
    }
}

impl Div for ComplexDd {
    type Output = ComplexDd;
    fn div(self, w: ComplexDd) -> ComplexDd {
        let norm = w.re * w.re + w.im * w.im;
        ComplexDd {
            re: (self.re * w.re + self.im * w.im) / norm,
            im: (self.im * w.re - self.re * w.im) / norm,
        }
    }
}
