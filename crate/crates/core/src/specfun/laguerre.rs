//! Associated Laguerre polynomials and alternating sums of Laguerre functions.

use super::scaled::ScaledValue;
use crate::dd::CompensatedSum;
use crate::scalar::{ilogb, Scalar};

/// L_k^{(j)}(y) by the three-term recurrence in k.
pub fn laguerre_assoc(k: usize, j: usize, y: f64) -> f64 {
    let a = j as f64;
    let mut prev = 0.0;
    let mut cur = 1.0;
    for m in 0..k {
        let mf = m as f64;
        let next = ((2.0 * mf + 1.0 + a - y) * cur - (mf + a) * prev) / (mf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Complex-argument variant of [`laguerre_assoc`].
pub fn laguerre_assoc_generic<T: Scalar>(k: usize, j: usize, y: T) -> T {
    let a = j as f64;
    let mut prev = T::zero();
    let mut cur = T::from_f64(1.0);
    for m in 0..k {
        let mf = m as f64;
        let next = (cur * (2.0 * mf + 1.0 + a) - y * cur - prev * (mf + a)) / (mf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Alternating sum Σ_{j<n} (−1)^j e^{−y/2} L_j^{(α)}(y) together with Σ_{j<n} |e^{−y/2} L_j^{(α)}(y)|.
#[derive(Debug, Clone, Copy)]
pub struct AlternatingSum<T> {
    pub sum: ScaledValue<T>,
    pub abs_sum: ScaledValue<f64>,
}

impl<T: Scalar> AlternatingSum<T> {
    /// Cancellation factor measured against unit scale: Σ|terms| / max(|Σ|, 1).
    pub fn condition(&self, prefactor_ln: f64) -> f64 {
        let abs_ln = self.abs_sum.ln_abs() + prefactor_ln;
        let sum_ln = (self.sum.ln_abs() + prefactor_ln).max(0.0);
        (abs_ln - sum_ln).exp()
    }
}

struct Accumulator {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl Accumulator {
    fn new() -> Self {
        Self {
            re: CompensatedSum::new(),
            im: CompensatedSum::new(),
        }
    }

    fn add<T: Scalar>(&mut self, t: T) {
        self.re.add(t.re());
        self.im.add(t.im());
    }

    fn scale2(&mut self, k: i32) {
        self.re.scale2(k);
        self.im.scale2(k);
    }

    fn value<T: Scalar>(&self) -> T {
        T::from_parts(self.re.value(), self.im.value())
    }
}

pub fn alternating_laguerre_sum<T: Scalar>(n: usize, alpha: usize, y: T) -> AlternatingSum<T> {
    let seed = ScaledValue::exp(-y * 0.5);
    let a = alpha as f64;
    let mut exponent = seed.exponent();
    let mut prev = T::zero();
    let mut cur = seed.mantissa();
    let mut acc = Accumulator::new();
    let mut abs_acc = CompensatedSum::new();
    for j in 0..n {
        if j % 2 == 0 {
            acc.add(cur);
        } else {
            acc.add(-cur);
        }
        abs_acc.add(cur.modulus());
        if j + 1 == n {
            break;
        }
        let jf = j as f64;
        let next = (cur * (2.0 * jf + 1.0 + a) - y * cur - prev * (jf + a)) / (jf + 1.0);
        prev = cur;
        cur = next;
        let m = cur.magnitude().max(prev.magnitude());
        if !(1e-150..=1e150).contains(&m) {
            if let Some(e) = ilogb(m) {
                cur = cur.scale2(-e);
                prev = prev.scale2(-e);
                acc.scale2(-e);
                abs_acc.scale2(-e);
                exponent += e;
            }
        }
    }
    AlternatingSum {
        sum: ScaledValue::new(acc.value(), exponent),
        abs_sum: ScaledValue::new(abs_acc.value(), exponent),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degree_closed_forms() {
        assert_eq!(laguerre_assoc(0, 0, 5.0), 1.0);
        assert_eq!(laguerre_assoc(1, 0, 2.0), -1.0);
        assert_eq!(laguerre_assoc(1, 1, 3.0), -1.0);
        // L_2(y) = 1 − 2y + y²/2
        let y = 0.7;
        assert!((laguerre_assoc(2, 0, y) - (1.0 - 2.0 * y + y * y / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn explicit_sum_matches_recurrence() {
        fn explicit(k: usize, j: usize, y: f64) -> f64 {
            let mut s = 0.0;
            for m in 0..=k {
                let mut c = 1.0;
                // (k+j)! / ((k−m)! (j+m)! m!)
                for t in 1..=(k + j) {
                    c *= t as f64;
                }
                for t in 1..=(k - m) {
                    c /= t as f64;
                }
                for t in 1..=(j + m) {
                    c /= t as f64;
                }
                for t in 1..=m {
                    c /= t as f64;
                }
                s += c * (-y).powi(m as i32);
            }
            s
        }
        for k in 0..12 {
            for j in 0..4 {
                let y = 1.3;
                let a = laguerre_assoc(k, j, y);
                let b = explicit(k, j, y);
                assert!((a - b).abs() < 1e-11 * (1.0 + b.abs()), "k={k} j={j}");
            }
        }
    }

    #[test]
    fn alternating_sum_at_origin() {
        let s = alternating_laguerre_sum(7, 0, 0.0);
        assert_eq!(s.sum.value(), 1.0);
        let s = alternating_laguerre_sum(8, 0, 0.0);
        assert_eq!(s.sum.value(), 0.0);
    }
}
