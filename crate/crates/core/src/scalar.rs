//! Arithmetic shared by the real and complex evaluation paths.

use num_complex::Complex64;
use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

pub const LN2_HI: f64 = 6.931_471_803_691_238e-1;
pub const LN2_LO: f64 = 1.908_214_929_270_587_7e-10;

/// Exact power of two, saturating to 0 / inf outside the f64 range.
pub fn pow2(k: i32) -> f64 {
    if (-1022..=1023).contains(&k) {
        f64::from_bits(((k + 1023) as u64) << 52)
    } else if k > 1023 {
        f64::INFINITY
    } else if k >= -1074 {
        f64::from_bits(1u64 << (k + 1074))
    } else {
        0.0
    }
}

pub fn ldexp(x: f64, k: i32) -> f64 {
    if (-1022..=1023).contains(&k) {
        x * pow2(k)
    } else {
        let h = k / 2;
        x * pow2(h) * pow2(k - h)
    }
}

/// Binary exponent `e` with `2^e <= |x| < 2^(e+1)`; `None` for zero or non-finite input.
pub fn ilogb(x: f64) -> Option<i32> {
    if x == 0.0 || !x.is_finite() {
        return None;
    }
    let bits = x.abs().to_bits();
    let e = ((bits >> 52) & 0x7ff) as i32;
    if e == 0 {
        ilogb(x * pow2(64)).map(|k| k - 64)
    } else {
        Some(e - 1023)
    }
}

pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    /// Largest component modulus; cheap stand-in for |z| in scaling decisions.
    fn magnitude(self) -> f64;
    fn modulus(self) -> f64;
    fn scale2(self, k: i32) -> Self;
    fn re(self) -> f64;
    fn im(self) -> f64;
    fn conj(self) -> Self;
    fn is_finite(self) -> bool;
    /// exp(self − k·ln2), with the shift applied in split precision.
    fn exp_shifted(self, k: i32) -> Self;
    fn sqrt(self) -> Self;
    fn cos(self) -> Self;
    fn sin(self) -> Self;
    fn into_complex(self) -> Complex64;
    /// Build from components; the imaginary part is dropped for real scalars.
    fn from_parts(re: f64, im: f64) -> Self;
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
    fn scale2(self, k: i32) -> Self {
        ldexp(self, k)
    }
    fn re(self) -> f64 {
        self
    }
    fn im(self) -> f64 {
        0.0
    }
    fn conj(self) -> Self {
        self
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    fn exp_shifted(self, k: i32) -> Self {
        let kf = k as f64;
        ((self - kf * LN2_HI) - kf * LN2_LO).exp()
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn into_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
    fn from_parts(re: f64, _im: f64) -> Self {
        re
    }
}

impl Scalar for Complex64 {
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.re.abs().max(self.im.abs())
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
    fn scale2(self, k: i32) -> Self {
        Complex64::new(ldexp(self.re, k), ldexp(self.im, k))
    }
    fn re(self) -> f64 {
        self.re
    }
    fn im(self) -> f64 {
        self.im
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn exp_shifted(self, k: i32) -> Self {
        // Same real path as f64 so that real-axis values agree bit for bit.
        let m = self.re.exp_shifted(k);
        if self.im == 0.0 {
            Complex64::new(m, 0.0)
        } else {
            Complex64::new(m * self.im.cos(), m * self.im.sin())
        }
    }
    fn sqrt(self) -> Self {
        Complex64::sqrt(self)
    }
    fn cos(self) -> Self {
        Complex64::cos(self)
    }
    fn sin(self) -> Self {
        Complex64::sin(self)
    }
    fn into_complex(self) -> Complex64 {
        self
    }
    fn from_parts(re: f64, im: f64) -> Self {
        Complex64::new(re, im)
    }
}
