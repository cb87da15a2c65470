//! Values carried as mantissa × 2^exponent.

use crate::scalar::{ilogb, Scalar, LN2_HI, LN2_LO};
use num_complex::Complex64;

/// A number `mantissa · 2^exponent` with `magnitude(mantissa)` in [1, 2), or zero.
///
/// For complex values the larger of |re|, |im| is normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledValue<T = f64> {
    mantissa: T,
    exponent: i32,
}

impl<T: Scalar> ScaledValue<T> {
    pub fn zero() -> Self {
        Self {
            mantissa: T::zero(),
            exponent: 0,
        }
    }

    /// Normalizing constructor.
    pub fn new(mantissa: T, exponent: i32) -> Self {
        match ilogb(mantissa.magnitude()) {
            None => Self::zero(),
            Some(e) => Self {
                mantissa: mantissa.scale2(-e),
                exponent: exponent.saturating_add(e),
            },
        }
    }

    pub fn from_value(v: T) -> Self {
        Self::new(v, 0)
    }

    /// `exp(log)` without forming the possibly unrepresentable exponential.
    pub fn exp(log: T) -> Self {
        let a = log.re();
        if a == f64::NEG_INFINITY {
            return Self::zero();
        }
        let k = (a / std::f64::consts::LN_2).round();
        let k = k.clamp(i32::MIN as f64 / 2.0, i32::MAX as f64 / 2.0) as i32;
        Self::new(log.exp_shifted(k), k)
    }

    pub fn mantissa(&self) -> T {
        self.mantissa
    }

    pub fn exponent(&self) -> i32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == T::zero()
    }

    /// Plain value; underflows to zero or overflows to infinity when out of range.
    pub fn value(&self) -> T {
        self.mantissa.scale2(self.exponent)
    }

    /// Natural log of the modulus.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.mantissa.modulus().ln() + self.exponent as f64 * (LN2_HI + LN2_LO)
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> Self {
        Self::new(
            self.mantissa * other.mantissa,
            self.exponent + other.exponent,
        )
    }

    pub fn mul_scalar(self, f: T) -> Self {
        Self::new(self.mantissa * f, self.exponent)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Self) -> Self {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (big, small) = if self.exponent >= other.exponent {
            (self, other)
        } else {
            (other, self)
        };
        let shift = small.exponent - big.exponent;
        if shift < -1100 {
            return big;
        }
        Self::new(big.mantissa + small.mantissa.scale2(shift), big.exponent)
    }
}

impl ScaledValue<f64> {
    pub fn signum(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.mantissa.signum()
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    /// Ordering of magnitudes without leaving scaled form.
    pub fn abs_lt(&self, other: &Self) -> bool {
        match (self.is_zero(), other.is_zero()) {
            (true, b) => !b,
            (false, true) => false,
            _ => (self.exponent, self.mantissa.abs()) < (other.exponent, other.mantissa.abs()),
        }
    }

    pub fn to_complex(&self) -> ScaledValue<Complex64> {
        ScaledValue {
            mantissa: Complex64::new(self.mantissa, 0.0),
            exponent: self.exponent,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_mantissa() {
        let v = ScaledValue::from_value(-12.0);
        assert_eq!(v.mantissa(), -1.5);
        assert_eq!(v.exponent(), 3);
        assert_eq!(v.value(), -12.0);
        let z = ScaledValue::<f64>::from_value(0.0);
        assert!(z.is_zero());
    }

    #[test]
    fn exp_beyond_double_range() {
        let v = ScaledValue::exp(-2000.0f64);
        assert!((v.ln_abs() + 2000.0).abs() < 1e-12);
        assert_eq!(v.value(), 0.0);
        let m = v.mantissa();
        assert!((1.0..2.0).contains(&m));
    }

    #[test]
    fn add_aligns_exponents() {
        let a = ScaledValue::from_value(3.0f64);
        let b = ScaledValue::from_value(0.25f64);
        assert_eq!(a.add(b).value(), 3.25);
        assert_eq!(a.mul(b).value(), 0.75);
    }

    #[test]
    fn complex_normalization_uses_largest_component() {
        let v = ScaledValue::from_value(Complex64::new(0.5, -6.0));
        assert_eq!(v.exponent(), 2);
        assert_eq!(v.mantissa(), Complex64::new(0.125, -1.5));
    }
}
