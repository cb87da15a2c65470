//! H_N as a real Jacobi matrix: eigenvalues, characteristic polynomial, semicircle comparison.

use crate::classical::{semicircle_cdf, SemiclassicalScale};
use crate::error::{Result, ZenoError};
use crate::specfun::hermite::hermite_psi;
use serde::Serialize;

/// QL is used up to this dimension, Sturm bisection above.
pub const QL_MAX_DIMENSION: usize = 1024;
pub const CHARPOLY_MAX_DIMENSION: usize = 30;

/// Real symmetric tridiagonal matrix with zero diagonal.
///
/// In the eigenbasis H_N has entries ⟨ψ_j, p̂ ψ_k⟩ = i√(ħ/2)(√k δ_{j+1,k} − √j δ_{j,k+1}).
/// Conjugating by U = diag(i^k) turns them into +√(ħ(k+1)/2) on both off-diagonals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JacobiMatrix {
    pub dimension: usize,
    pub off_diagonal: Vec<f64>,
    pub gauge: &'static str,
}

impl JacobiMatrix {
    /// Gershgorin bound on the spectral radius.
    pub fn norm_bound(&self) -> f64 {
        let b = &self.off_diagonal;
        (0..self.dimension)
            .map(|i| {
                let l = if i > 0 { b[i - 1].abs() } else { 0.0 };
                let r = if i < b.len() { b[i].abs() } else { 0.0 };
                l + r
            })
            .fold(0.0, f64::max)
    }

    /// Number of eigenvalues strictly below x (Sturm sequence).
    pub fn count_below(&self, x: f64) -> usize {
        let b2: Vec<f64> = self.off_diagonal.iter().map(|b| b * b).collect();
        sturm_count(&b2, x)
    }
}

pub fn build_jacobi(scale: &SemiclassicalScale) -> JacobiMatrix {
    let h = scale.hbar();
    JacobiMatrix {
        dimension: scale.n(),
        off_diagonal: (1..scale.n())
            .map(|k| (h * k as f64 / 2.0).sqrt())
            .collect(),
        gauge: "U = diag(i^k), k = 0..N-1; H_real = U H U^dagger",
    }
}

/// Implicit-shift QL (eigenvalues only).
fn ql_eigenvalues(m: &JacobiMatrix) -> Vec<f64> {
    let n = m.dimension;
    let mut d = vec![0.0f64; n];
    let mut e = m.off_diagonal.clone();
    e.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut mm = l;
            while mm + 1 < n {
                let dd = d[mm].abs() + d[mm + 1].abs();
                if e[mm].abs() <= f64::EPSILON * dd {
                    break;
                }
                mm += 1;
            }
            if mm == l {
                break;
            }
            iter += 1;
            assert!(iter < 60 * n.max(1), "QL failed to converge");
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[mm] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = mm;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[mm] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                let r2 = (d[i] - g) * s + 2.0 * c * b;
                p = s * r2;
                d[i + 1] = g + p;
                g = c * r2 - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[mm] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    d
}

fn sturm_count(b2: &[f64], x: f64) -> usize {
    let mut count = usize::from(x > 0.0);
    let mut q = -x;
    for &bb in b2 {
        let qq = if q == 0.0 {
            f64::EPSILON * (bb.sqrt() + 1.0)
        } else {
            q
        };
        q = -x - bb / qq;
        count += usize::from(q < 0.0);
    }
    count
}

fn bisect_range(b2: &[f64], bound: f64, ks: std::ops::Range<usize>) -> Vec<f64> {
    // absolute resolution eps*||H||; finer bisection near 0 buys nothing
    let width = 2.0 * f64::EPSILON * bound;
    ks.map(|k| {
        // k-th eigenvalue: smallest x with count_below(x) > k
        let (mut lo, mut hi) = (-bound, bound);
        while hi - lo > width {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if sturm_count(b2, mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    })
    .collect()
}

/// Sturm-sequence bisection, ascending. Index blocks run on separate threads; each eigenvalue is
/// bisected independently, so the result does not depend on the thread count.
pub fn eigenvalues_bisection(m: &JacobiMatrix) -> Vec<f64> {
    let bound = m.norm_bound() * (1.0 + 1e-12) + f64::MIN_POSITIVE;
    let b2: Vec<f64> = m.off_diagonal.iter().map(|b| b * b).collect();
    let n = m.dimension;
    let threads = std::thread::available_parallelism()
        .map_or(1, |t| t.get())
        .min(n.div_ceil(64))
        .max(1);
    let chunk = n.div_ceil(threads);
    std::thread::scope(|sc| {
        let handles: Vec<_> = (0..n)
            .step_by(chunk)
            .map(|k0| {
                let b2 = &b2;
                sc.spawn(move || bisect_range(b2, bound, k0..(k0 + chunk).min(n)))
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("bisection worker"))
            .collect()
    })
}

/// All eigenvalues, ascending.
pub fn eigenvalues(m: &JacobiMatrix) -> Vec<f64> {
    if m.dimension == 0 {
        return Vec::new();
    }
    if m.dimension <= QL_MAX_DIMENSION {
        ql_eigenvalues(m)
    } else {
        eigenvalues_bisection(m)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub mu: f64,
    pub eigenvalues: Vec<f64>,
    pub ks_distance: f64,
}

impl SpectrumReport {
    pub fn new(scale: &SemiclassicalScale) -> Self {
        let eigenvalues = eigenvalues(&build_jacobi(scale));
        let mut r = Self {
            n: scale.n(),
            mu: scale.mu(),
            eigenvalues,
            ks_distance: 0.0,
        };
        r.ks_distance = semicircle_comparison(&r, scale.mu());
        r
    }

    /// Empirical CDF of the normalized counting measure, right-continuous.
    pub fn counting_cdf(&self, y: f64) -> f64 {
        let below = self.eigenvalues.partition_point(|&l| l <= y);
        below as f64 / self.eigenvalues.len() as f64
    }
}

/// Kolmogorov–Smirnov distance between the counting measure and the semicircle law.
pub fn semicircle_comparison(report: &SpectrumReport, mu: f64) -> f64 {
    let n = report.eigenvalues.len() as f64;
    report
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let f = semicircle_cdf(l, mu);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

fn hermite_phys(n: usize, t: f64) -> f64 {
    let (mut a, mut b) = (0.0, 1.0);
    for k in 0..n {
        let c = 2.0 * t * b - 2.0 * k as f64 * a;
        a = b;
        b = c;
    }
    b
}

/// (det(yI − H_N) by the three-term recurrence, (√ħ/2)^N h_N(y/√ħ)).
pub fn charpoly_check(scale: &SemiclassicalScale, y: f64) -> Result<(f64, f64)> {
    let n = scale.n();
    if n > CHARPOLY_MAX_DIMENSION {
        return Err(ZenoError::InvalidParameter {
            name: "N",
            value: n as f64,
            reason: "characteristic polynomial check is limited to N <= 30",
        });
    }
    let h = scale.hbar();
    let (mut prev, mut cur) = (1.0, y);
    for k in 1..n {
        let next = y * cur - (h * k as f64 / 2.0) * prev;
        prev = cur;
        cur = next;
    }
    let hermite = (h.sqrt() / 2.0).powi(n as i32) * hermite_phys(n, y / h.sqrt());
    Ok((cur, hermite))
}

/// Zeros of ψ_N, by a sign-change scan finer than the smallest zero spacing and bisection.
pub fn hermite_zeros(scale: &SemiclassicalScale) -> Result<Vec<f64>> {
    let n = scale.n();
    let h = scale.hbar();
    let sign = |x: f64| -> Result<f64> { Ok(hermite_psi(n, h, x)?.signum()) };
    let edge = (h * (2 * n + 1) as f64).sqrt();
    // zeros lie inside the turning points; the bulk spacing ≈ π√ħ/√(2N+1) is the smallest, scan at 1/16 of it
    let step = std::f64::consts::PI * h.sqrt() / ((2 * n + 1) as f64).sqrt() / 16.0;
    let count = (2.0 * edge / step).ceil() as usize;
    let lo = -edge - 0.371 * step;
    let mut zeros = Vec::with_capacity(n);
    let mut xa = lo;
    let mut sa = sign(xa)?;
    for j in 1..=count + 1 {
        let xb = lo + step * j as f64;
        let sb = sign(xb)?;
        if sb == 0.0 {
            zeros.push(xb);
        } else if sa != 0.0 && sa != sb {
            let (mut a, mut b) = (xa, xb);
            for _ in 0..80 {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if sign(mid)? == sa {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            zeros.push(0.5 * (a + b));
        }
        xa = xb;
        sa = sb;
    }
    if zeros.len() != n {
        return Err(ZenoError::OutOfDomain {
            what: "Hermite zero scan",
            detail: format!("found {} sign changes for N = {}", zeros.len(), n),
        });
    }
    Ok(zeros)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    /// count / (N · width)
    pub density: f64,
}

pub fn histogram(values: &[f64], lo: f64, hi: f64, bins: usize) -> Vec<HistogramBin> {
    let w = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for &v in values {
        if v >= lo && v <= hi {
            let k = (((v - lo) / w) as usize).min(bins - 1);
            counts[k] += 1;
        }
    }
    let total = values.len().max(1) as f64;
    counts
        .iter()
        .enumerate()
        .map(|(k, &c)| HistogramBin {
            lo: lo + w * k as f64,
            hi: lo + w * (k + 1) as f64,
            count: c,
            density: c as f64 / (total * w),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let s = SemiclassicalScale::new(1, 1.0).unwrap();
        assert_eq!(eigenvalues(&build_jacobi(&s)), vec![0.0]);
        let s = SemiclassicalScale::new(2, 2.0).unwrap();
        let e = eigenvalues(&build_jacobi(&s));
        assert!((e[1] - 0.5f64.sqrt()).abs() < 1e-15 && (e[0] + e[1]).abs() < 1e-15);
        let (d, hm) = charpoly_check(&s, 0.3).unwrap();
        assert!((d - (0.09 - 0.5)).abs() < 1e-15 && (d - hm).abs() < 1e-15);
    }

    #[test]
    fn ql_and_bisection_agree() {
        let s = SemiclassicalScale::new(300, 2.0).unwrap();
        let m = build_jacobi(&s);
        let a = ql_eigenvalues(&m);
        let b = eigenvalues_bisection(&m);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-13, "{x} {y}");
        }
    }

    #[test]
    fn eigenvalues_are_hermite_zeros() {
        let s = SemiclassicalScale::new(5, 2.0).unwrap();
        for l in eigenvalues(&build_jacobi(&s)) {
            assert!(hermite_psi(5, s.hbar(), l).unwrap().value().abs() < 1e-10);
        }
    }
}
