//! Closed-form symbols through alternating Laguerre sums, and the smoothed disk profiles.

use crate::classical::{ComplexPhasePoint, PhasePoint, SemiclassicalScale};
use crate::error::{Result, ZenoError};
use crate::scalar::Scalar;
use crate::specfun::airy::{airy_integrated, airy_with_integral};
use crate::specfun::laguerre::{alternating_laguerre_sum, laguerre_assoc};
use num_complex::Complex64;

/// Largest tolerated cancellation in an alternating sum.
pub const MAX_CONDITION: f64 = 1e12;

fn checked<T: Scalar>(n: usize, alpha: usize, y: T, prefactor: f64) -> Result<T> {
    let s = alternating_laguerre_sum(n, alpha, y);
    let cond = s.condition(prefactor.abs().ln());
    if cond > MAX_CONDITION || !cond.is_finite() {
        return Err(ZenoError::PrecisionLoss { condition: cond });
    }
    Ok(s.sum.value())
}

fn sigma_p_generic<T: Scalar>(scale: &SemiclassicalScale, x: T, p: T) -> Result<T> {
    let y = (x * x + p * p) * (2.0 / scale.hbar());
    Ok(checked(scale.n(), 0, y, 2.0)? * 2.0)
}

fn sigma_h_generic<T: Scalar>(scale: &SemiclassicalScale, x: T, p: T) -> Result<T> {
    if scale.n() < 2 {
        return Ok(T::zero());
    }
    let y = (x * x + p * p) * (2.0 / scale.hbar());
    // condition is judged on the sum; the factor 4p only rescales it
    Ok(checked(scale.n() - 1, 1, y, 4.0)? * p * 4.0)
}

/// σ of P_{<N}: 2 Σ_{j<N} (−1)^j e^{−y/2} L_j(y), y = 2(x²+p²)/ħ.
pub fn symbol_p_laguerre(scale: &SemiclassicalScale, q: &PhasePoint) -> Result<f64> {
    sigma_p_generic(scale, q.x, q.p)
}

pub fn symbol_p_laguerre_complex(
    scale: &SemiclassicalScale,
    q: &ComplexPhasePoint,
) -> Result<Complex64> {
    sigma_p_generic(scale, q.x, q.p)
}

/// σ of H_N: 4p Σ_{j≤N−2} (−1)^j e^{−y/2} L_j^{(1)}(y).
pub fn symbol_h_laguerre(scale: &SemiclassicalScale, q: &PhasePoint) -> Result<f64> {
    sigma_h_generic(scale, q.x, q.p)
}

pub fn symbol_h_laguerre_complex(
    scale: &SemiclassicalScale,
    q: &ComplexPhasePoint,
) -> Result<Complex64> {
    sigma_h_generic(scale, q.x, q.p)
}

/// σ_H together with its gradient (∂_x σ_H, ∂_p σ_H).
///
/// With F(y) = Σ_{j≤N−2} (−1)^j e^{−y/2} L_j^{(1)}(y) one has F′ = −F/2 + Σ_{i≤N−3} (−1)^i e^{−y/2} L_i^{(2)}(y).
pub fn symbol_h_gradient(scale: &SemiclassicalScale, q: &PhasePoint) -> Result<(f64, [f64; 2])> {
    let n = scale.n();
    if n < 2 {
        return Ok((0.0, [0.0, 0.0]));
    }
    let h = scale.hbar();
    let y = 2.0 * q.r2() / h;
    let f = checked(n - 1, 1, y, 4.0)?;
    let g = if n >= 3 {
        checked(n - 2, 2, y, 4.0)?
    } else {
        0.0
    };
    let fp = g - 0.5 * f;
    let sigma = 4.0 * q.p * f;
    let dx = 4.0 * q.p * fp * (4.0 * q.x / h);
    let dp = 4.0 * f + 4.0 * q.p * fp * (4.0 * q.p / h);
    Ok((sigma, [dx, dp]))
}

/// Weyl symbol of |ψ_j⟩⟨ψ_k| for j ≤ k.
pub fn groenewold_cross_symbol(
    scale: &SemiclassicalScale,
    j: usize,
    k: usize,
    q: &PhasePoint,
) -> Result<Complex64> {
    if j > k {
        return Err(ZenoError::InvalidParameter {
            name: "j",
            value: j as f64,
            reason: "must not exceed k",
        });
    }
    let h = scale.hbar();
    let r2 = q.r2();
    let m = k - j;
    let lag = laguerre_assoc(j, m, 2.0 * r2 / h);
    let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
    let ln_fact_ratio: f64 = (j + 1..=k).map(|i| (i as f64).ln()).sum();
    let z = Complex64::new(q.x, q.p);
    if m > 0 && z.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let ln_z = if m > 0 { m as f64 * z.norm().ln() } else { 0.0 };
    let ln_mag = 0.5 * (m as f64 * (2.0 / h).ln() - ln_fact_ratio) + ln_z - r2 / h;
    let phase = m as f64 * z.arg();
    Ok(Complex64::from_polar(2.0 * ln_mag.exp(), phase) * (sign * lag))
}

fn airy_argument(scale: &SemiclassicalScale, q: &PhasePoint) -> f64 {
    scale.airy_layer_coefficient() * (q.r2() - 2.0 * scale.mu())
}

/// χ_D^{(N)} = Ai₁((2N)^{2/3}(x²+p²−2μ)/(2μ)).
pub fn chi_d_smooth(scale: &SemiclassicalScale, q: &PhasePoint) -> f64 {
    airy_integrated(airy_argument(scale, q))
}

pub fn p_chi_d_smooth(scale: &SemiclassicalScale, q: &PhasePoint) -> f64 {
    q.p * chi_d_smooth(scale, q)
}

/// χ_D^{(N)} and its gradient; Ai₁′ = −Ai.
pub(crate) fn chi_d_smooth_gradient(scale: &SemiclassicalScale, q: &PhasePoint) -> (f64, [f64; 2]) {
    let k = scale.airy_layer_coefficient();
    let (ai, _, ai1) = airy_with_integral(airy_argument(scale, q));
    (ai1, [-ai * 2.0 * k * q.x, -ai * 2.0 * k * q.p])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn center_value_alternates() {
        for n in 1..40 {
            let s = SemiclassicalScale::new(n, 2.0).unwrap();
            let v = symbol_p_laguerre(&s, &PhasePoint::new(0.0, 0.0)).unwrap();
            let want = if n % 2 == 1 { 2.0 } else { 0.0 };
            assert!((v - want).abs() < 1e-12, "N={n}: {v}");
        }
    }

    #[test]
    fn single_term_values() {
        let s = SemiclassicalScale::new(1, 1.0).unwrap();
        let v = symbol_p_laguerre(&s, &PhasePoint::new(1.0, 0.0)).unwrap();
        assert!((v - 2.0 / std::f64::consts::E).abs() < 1e-15);
        assert_eq!(
            symbol_h_laguerre(&s, &PhasePoint::new(0.3, 0.7)).unwrap(),
            0.0
        );
        let g = groenewold_cross_symbol(&s, 0, 1, &PhasePoint::new(1.0, 0.0)).unwrap();
        assert!((g.re - 2.0 * 2f64.sqrt() / std::f64::consts::E).abs() < 1e-14);
        assert!(g.im.abs() < 1e-15);
    }

    #[test]
    fn diagonal_groenewold_terms_assemble_sigma_p() {
        let s = SemiclassicalScale::new(9, 2.0).unwrap();
        let q = PhasePoint::new(0.4, -0.9);
        let total: f64 = (0..9)
            .map(|j| groenewold_cross_symbol(&s, j, j, &q).unwrap().re)
            .sum();
        assert!((total - symbol_p_laguerre(&s, &q).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let s = SemiclassicalScale::new(23, 2.0).unwrap();
        let q = PhasePoint::new(0.7, 0.9);
        let (_, g) = symbol_h_gradient(&s, &q).unwrap();
        let e = 1e-6;
        let f = |x: f64, p: f64| symbol_h_laguerre(&s, &PhasePoint::new(x, p)).unwrap();
        let dx = (f(q.x + e, q.p) - f(q.x - e, q.p)) / (2.0 * e);
        let dp = (f(q.x, q.p + e) - f(q.x, q.p - e)) / (2.0 * e);
        assert!(
            (g[0] - dx).abs() < 1e-6 * (1.0 + dx.abs()),
            "{} {}",
            g[0],
            dx
        );
        assert!(
            (g[1] - dp).abs() < 1e-6 * (1.0 + dp.abs()),
            "{} {}",
            g[1],
            dp
        );
    }

    #[test]
    fn smooth_disk_profile() {
        let s = SemiclassicalScale::new(57, 2.0).unwrap();
        assert!((chi_d_smooth(&s, &PhasePoint::new(2.0, 0.0)) - 1.0 / 3.0).abs() < 1e-14);
        // Ai₁(−ξ) approaches 1 only like ξ^{−3/4}; reference value Ai₁(−(114)^{2/3}·4/4) from mpmath
        assert!(
            (chi_d_smooth(&s, &PhasePoint::new(0.0, 0.0)) - 0.989_964_122_124_075_7).abs() < 1e-12
        );
        assert!(chi_d_smooth(&s, &PhasePoint::new(3.0, 0.0)) < 1e-12);
    }
}
