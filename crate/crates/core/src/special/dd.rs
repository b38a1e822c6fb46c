//! Double-double arithmetic for series summation.
//!
//! The power series behind the Bessel-type kernels cancel heavily for real
//! and near-real arguments: partial sums grow like `e^|x|` while the result
//! stays `O(1)`. Summing in double-double keeps about 32 significant digits,
//! which covers the cancellation up to the asymptotic switch.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
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

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.hi.abs()
    }

    pub fn recip(self) -> Self {
        Dd::ONE / self
    }

    /// Product with a plain double.
    #[inline]
    pub fn scale(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::new(x)
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.scale(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.scale(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

/// Complex number with double-double parts.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DdComplex {
    pub re: Dd,
    pub im: Dd,
}

impl DdComplex {
    pub const ZERO: DdComplex = DdComplex { re: Dd::ZERO, im: Dd::ZERO };

    #[inline]
    pub fn from_c64(z: Complex64) -> Self {
        DdComplex { re: Dd::new(z.re), im: Dd::new(z.im) }
    }

    #[inline]
    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Cheap magnitude estimate (max-norm of the leading parts).
    #[inline]
    pub fn mag(self) -> f64 {
        self.re.hi.abs().max(self.im.hi.abs())
    }

    #[inline]
    pub fn scale(self, b: Dd) -> Self {
        DdComplex { re: self.re * b, im: self.im * b }
    }

    #[inline]
    pub fn scale_f64(self, b: f64) -> Self {
        DdComplex { re: self.re.scale(b), im: self.im.scale(b) }
    }

    #[inline]
    pub fn div_real(self, b: Dd) -> Self {
        DdComplex { re: self.re / b, im: self.im / b }
    }
}

impl Add for DdComplex {
    type Output = DdComplex;
    #[inline]
    fn add(self, b: DdComplex) -> DdComplex {
        DdComplex { re: self.re + b.re, im: self.im + b.im }
    }
}

impl Sub for DdComplex {
    type Output = DdComplex;
    #[inline]
    fn sub(self, b: DdComplex) -> DdComplex {
        DdComplex { re: self.re - b.re, im: self.im - b.im }
    }
}

impl Mul for DdComplex {
    type Output = DdComplex;
    #[inline]
    fn mul(self, b: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}
