//! Hermite functions ψ_k^ħ by the normalized three-term recurrence.

use super::scaled::ScaledValue;
use crate::error::{Result, ZenoError};
use crate::scalar::{ilogb, Scalar};
use std::f64::consts::PI;
use std::sync::OnceLock;

const TABLE_LEN: usize = 1 << 16;
const RESCALE_HI: f64 = 1.0e90;
const RESCALE_LO: f64 = 1.0e-90;

fn table() -> &'static [(f64, f64)] {
    static T: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    T.get_or_init(|| {
        (0..TABLE_LEN)
            .map(|k| {
                let kf = k as f64;
                (1.0 / (kf + 1.0).sqrt(), (kf / (kf + 1.0)).sqrt())
            })
            .collect()
    })
}

/// (1/√(k+1), √(k/(k+1))).
#[inline]
fn step_coefficients(k: usize) -> (f64, f64) {
    if k < TABLE_LEN {
        table()[k]
    } else {
        let kf = k as f64;
        (1.0 / (kf + 1.0).sqrt(), (kf / (kf + 1.0)).sqrt())
    }
}

/// √k, tabulated for small k.
#[inline]
pub(crate) fn sqrt_int(k: usize) -> f64 {
    static T: OnceLock<Vec<f64>> = OnceLock::new();
    if k < TABLE_LEN {
        T.get_or_init(|| (0..TABLE_LEN).map(|k| (k as f64).sqrt()).collect())[k]
    } else {
        (k as f64).sqrt()
    }
}

pub(crate) fn check_hbar(hbar: f64) -> Result<()> {
    if hbar.is_finite() && hbar > 0.0 {
        Ok(())
    } else {
        Err(ZenoError::InvalidParameter {
            name: "hbar",
            value: hbar,
            reason: "must be positive and finite",
        })
    }
}

fn check_argument<T: Scalar>(z: T) -> Result<()> {
    if z.is_finite() {
        Ok(())
    } else {
        Err(ZenoError::InvalidParameter {
            name: "z",
            value: z.re(),
            reason: "argument must be finite",
        })
    }
}

/// Upward recurrence state (ψ_{k−1}, ψ_k) sharing one binary exponent.
#[derive(Debug, Clone, Copy)]
pub struct HermiteRecurrence<T> {
    k: usize,
    prev: T,
    cur: T,
    exponent: i32,
    zc: T,
    z: T,
    hbar: f64,
}

impl<T: Scalar> HermiteRecurrence<T> {
    pub fn new(hbar: f64, z: T) -> Result<Self> {
        check_hbar(hbar)?;
        check_argument(z)?;
        let log = -(z * z) * (0.5 / hbar);
        let seed = ScaledValue::exp(log).mul_scalar(T::from_f64((PI * hbar).powf(-0.25)));
        Ok(Self {
            k: 0,
            prev: T::zero(),
            cur: seed.mantissa(),
            exponent: seed.exponent(),
            zc: z * (2.0 / hbar).sqrt(),
            z,
            hbar,
        })
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn advance(&mut self) {
        let (a, b) = step_coefficients(self.k);
        let next = self.zc * self.cur * a - self.prev * b;
        self.prev = self.cur;
        self.cur = next;
        self.k += 1;
        let m = next.magnitude();
        if !(RESCALE_LO..=RESCALE_HI).contains(&m) {
            self.rescale();
        }
    }

    #[cold]
    fn rescale(&mut self) {
        let m = self.cur.magnitude().max(self.prev.magnitude());
        if let Some(e) = ilogb(m) {
            if !(RESCALE_LO..=RESCALE_HI).contains(&m) {
                self.cur = self.cur.scale2(-e);
                self.prev = self.prev.scale2(-e);
                self.exponent += e;
            }
        }
    }

    pub fn advance_to(&mut self, k: usize) {
        while self.k < k {
            self.advance();
        }
    }

    /// ψ_k as a plain number (may underflow to zero).
    #[inline]
    pub fn current_value(&self) -> T {
        self.cur.scale2(self.exponent)
    }

    pub fn pair(&self) -> HermitePair<T> {
        HermitePair {
            k: self.k,
            prev: self.prev,
            cur: self.cur,
            exponent: self.exponent,
            z: self.z,
            hbar: self.hbar,
        }
    }

    /// (ψ_{k−1}, ψ_k) mantissas and their shared exponent.
    #[inline]
    pub fn raw(&self) -> (T, T, i32) {
        (self.prev, self.cur, self.exponent)
    }
}

/// ψ_{k−1}(z) and ψ_k(z) with a common exponent.
#[derive(Debug, Clone, Copy)]
pub struct HermitePair<T> {
    pub k: usize,
    pub prev: T,
    pub cur: T,
    pub exponent: i32,
    pub z: T,
    pub hbar: f64,
}

impl<T: Scalar> HermitePair<T> {
    pub fn value(&self) -> ScaledValue<T> {
        ScaledValue::new(self.cur, self.exponent)
    }

    pub fn prev_value(&self) -> ScaledValue<T> {
        ScaledValue::new(self.prev, self.exponent)
    }

    /// Mantissa of ψ_k′ in the pair's exponent frame.
    pub fn derivative_mantissa(&self) -> T {
        let c = (2.0 * self.k as f64 / self.hbar).sqrt();
        self.prev * c - self.z * self.cur / self.hbar
    }

    /// Mantissa of ψ_{k−1}′, from the lowering form of the derivative relation.
    pub fn prev_derivative_mantissa(&self) -> T {
        let c = (2.0 * self.k as f64 / self.hbar).sqrt();
        self.z * self.prev / self.hbar - self.cur * c
    }

    pub fn derivative(&self) -> ScaledValue<T> {
        ScaledValue::new(self.derivative_mantissa(), self.exponent)
    }
}

/// Values and derivative of ψ_k^ħ at one point.
#[derive(Debug, Clone, Copy)]
pub struct HermiteEval<T = f64> {
    pub k: usize,
    pub hbar: f64,
    pub value: ScaledValue<T>,
    pub derivative: ScaledValue<T>,
}

pub fn hermite_pair<T: Scalar>(k: usize, hbar: f64, z: T) -> Result<HermitePair<T>> {
    let mut r = HermiteRecurrence::new(hbar, z)?;
    r.advance_to(k);
    Ok(r.pair())
}

pub fn hermite_psi<T: Scalar>(k: usize, hbar: f64, z: T) -> Result<ScaledValue<T>> {
    Ok(hermite_pair(k, hbar, z)?.value())
}

pub fn hermite_psi_derivative<T: Scalar>(k: usize, hbar: f64, z: T) -> Result<ScaledValue<T>> {
    Ok(hermite_pair(k, hbar, z)?.derivative())
}

pub fn hermite_eval<T: Scalar>(k: usize, hbar: f64, z: T) -> Result<HermiteEval<T>> {
    let pair = hermite_pair(k, hbar, z)?;
    Ok(HermiteEval {
        k,
        hbar,
        value: pair.value(),
        derivative: pair.derivative(),
    })
}

/// ψ_0(z), …, ψ_{n−1}(z) as plain values.
pub fn hermite_sweep<T: Scalar>(n: usize, hbar: f64, z: T) -> Result<Vec<T>> {
    let mut r = HermiteRecurrence::new(hbar, z)?;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if k > 0 {
            r.advance();
        }
        out.push(r.current_value());
    }
    Ok(out)
}

/// Radius beyond which ψ_0..ψ_n are below ~1e-17 of their peak.
///
/// Turning point of ψ_n plus fourteen Airy layer widths.
pub fn decay_radius(n: usize, hbar: f64) -> f64 {
    let x = (hbar * (2.0 * n as f64 + 1.0)).sqrt();
    let layer = (hbar * hbar / (2.0 * x)).cbrt();
    x + 14.0 * layer
}
