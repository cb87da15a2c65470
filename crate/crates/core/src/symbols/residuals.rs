//! Residuals of the weak, edge and pointwise limit statements, and the 𝒜′ distance of σ_H from pσ_P.

use super::pairing::{weak_pairing, HermiteLattice};
use super::testfn::TestFunction;
use super::{symbol_h, symbol_p, SymbolField, SymbolKind};
use crate::classical::{PhasePoint, SemiclassicalScale};
use crate::error::{Result, ZenoError};
use crate::quad::{gauss_legendre, GaussLegendre};
use crate::specfun::airy::airy_integrated;
use crate::specfun::hermite::decay_radius;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

/// (|⟨σ_P − χ_D, φ⟩|, |⟨σ_H − pχ_D, φ⟩|).
pub fn thm1_residual(scale: &SemiclassicalScale, phi: &TestFunction) -> Result<(f64, f64)> {
    let pair = |k| weak_pairing(&SymbolField::new(*scale, k), phi);
    let a = pair(SymbolKind::SigmaP)? - pair(SymbolKind::ChiD)?;
    let b = pair(SymbolKind::SigmaH)? - pair(SymbolKind::PChiD)?;
    Ok((a.abs(), b.abs()))
}

/// A compactly supported profile g on ℝ.
#[derive(Clone)]
pub struct EdgeProfile {
    support: (f64, f64),
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for EdgeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EdgeProfile")
            .field("support", &self.support)
            .finish()
    }
}

impl EdgeProfile {
    pub fn new(support: (f64, f64), f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            support,
            f: Arc::new(f),
        }
    }

    /// exp(1/(z² − a²)) on (−a, a), normalized to unit mass.
    pub fn bump(a: f64) -> Self {
        let raw = move |z: f64| {
            if z.abs() >= a {
                0.0
            } else {
                (1.0 / (z * z - a * a)).exp()
            }
        };
        let mass: f64 = edge_nodes(&Self::new((-a, a), raw))
            .iter()
            .map(|&(z, w)| w * raw(z))
            .sum();
        Self::new((-a, a), move |z| raw(z) / mass)
    }

    pub fn zero() -> Self {
        Self::new((0.0, 0.0), |_| 0.0)
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn eval(&self, z: f64) -> f64 {
        (self.f)(z)
    }
}

impl Default for EdgeProfile {
    fn default() -> Self {
        Self::bump(4.0)
    }
}

fn edge_nodes(g: &EdgeProfile) -> Vec<(f64, f64)> {
    let (lo, hi) = g.support();
    if hi <= lo {
        return Vec::new();
    }
    let rule: &GaussLegendre = gauss_legendre(16);
    // split at 0 so the step control is integrated exactly
    let mut cuts = vec![lo];
    if lo < 0.0 && hi > 0.0 {
        cuts.push(0.0);
    }
    cuts.push(hi);
    let mut nodes = Vec::new();
    for w in cuts.windows(2) {
        let panels = ((w[1] - w[0]) / 0.125).ceil() as usize;
        let h = (w[1] - w[0]) / panels as f64;
        for j in 0..panels {
            let a = w[0] + h * j as f64;
            nodes.extend(rule.mapped(a, a + h));
        }
    }
    nodes
}

/// Edge integrals ∬ [σ − χ] ħ^{−2/3} g((x²+p²−2μ)/ħ^{2/3}) dx dp with s = x²+p² = 2μ + ħ^{2/3}z.
fn edge_integrals(
    scale: &SemiclassicalScale,
    g: &EdgeProfile,
    profile: impl Fn(f64) -> f64,
    with_momentum: bool,
) -> Result<(f64, f64)> {
    let mu = scale.mu();
    let h23 = scale.hbar().powf(2.0 / 3.0);
    const ANG: usize = 16;
    let (mut a, mut b) = (0.0, 0.0);
    for (z, w) in edge_nodes(g) {
        let s = 2.0 * mu + h23 * z;
        if s < 0.0 {
            continue;
        }
        let gz = g.eval(z);
        if gz == 0.0 {
            continue;
        }
        let r = s.sqrt();
        let chi = profile(z);
        let sp = symbol_p(scale, &PhasePoint::new(r, 0.0))?;
        a += w * gz * (sp - chi);
        if with_momentum {
            let mut ang = 0.0;
            for j in 0..ANG {
                let (sn, cs) = (2.0 * PI * j as f64 / ANG as f64).sin_cos();
                let q = PhasePoint::new(r * cs, r * sn);
                ang += symbol_h(scale, &q)? - q.p * chi;
            }
            b += w * gz * ang / ANG as f64;
        }
    }
    Ok((PI * a.abs(), PI * b.abs()))
}

/// Residuals against the smoothed disk χ_D^{(N)}, whose profile in z is Ai₁(z/(2μ)^{1/3}).
pub fn thm2_residual(scale: &SemiclassicalScale, g: &EdgeProfile) -> Result<(f64, f64)> {
    let c = (2.0 * scale.mu()).cbrt();
    edge_integrals(scale, g, |z| airy_integrated(z / c), true)
}

/// Same edge integral of σ_P with χ_D^{(N)} replaced by the sharp indicator χ_D.
pub fn thm2_step_control(scale: &SemiclassicalScale, g: &EdgeProfile) -> Result<f64> {
    let step = |z: f64| {
        if z < 0.0 {
            1.0
        } else if z > 0.0 {
            0.0
        } else {
            0.5
        }
    };
    Ok(edge_integrals(scale, g, step, false)?.0)
}

/// (|σ_P(q) − χ_D^{(N)}(q)|, |σ_H(q) − p χ_D^{(N)}(q)|) for q outside the closed disk.
pub fn thm3_pointwise_residual(scale: &SemiclassicalScale, q: &PhasePoint) -> Result<(f64, f64)> {
    let disk = scale.disk();
    if disk.contains_strictly(q) || disk.on_boundary(q) || !q.is_finite() {
        return Err(ZenoError::OutOfDomain {
            what: "phase point",
            detail: format!("x²+p² = {} must exceed 2μ = {}", q.r2(), 2.0 * scale.mu()),
        });
    }
    let chi = super::chi_d_smooth(scale, q);
    let a = (symbol_p(scale, q)? - chi).abs();
    let b = (symbol_h(scale, q)? - q.p * chi).abs();
    Ok((a, b))
}

/// ∫ |ψ_{N−1}(x−a)ψ_N(x+a) − ψ_N(x−a)ψ_{N−1}(x+a)| dx on lattices offset by ∓ε.
fn shifted_l1(lo: &HermiteLattice, hi: &HermiteLattice, m: i64) -> f64 {
    let k = lo.half();
    let mut s = 0.0;
    for i in (m - k)..=(k - m) {
        let (u, v) = (lo.at(i - m), hi.at(i + m));
        s += (u.psi_n_minus_1() * v.psi_n() - u.psi_n() * v.psi_n_minus_1()).abs();
    }
    s * lo.spacing()
}

/// ‖σ_H − pσ_P‖_{𝒜′} = (1/2π) sup_y ∫ |𝓕₂(σ_H − pσ_P)(x, y)| dx.
///
/// The difference has the rank-two kernel (i/2)√(ħN/2)(ψ_{N−1}⊗ψ_N − ψ_N⊗ψ_{N−1}), so the norm is
/// (ħ/2)√(μ/2) sup_a ∫ |D(x−a, x+a)| dx with a = ħy/2. The sup is located on a lattice in a
/// and refined by golden section.
pub fn symbol_difference_anorm(scale: &SemiclassicalScale) -> Result<f64> {
    let h = scale.hbar();
    let mu = scale.mu();
    let radius = decay_radius(scale.n(), h);
    let delta = PI * h / (32.0 * (2.0 * mu + h).sqrt());
    let base = HermiteLattice::new(scale, delta, radius, 0.0)?;
    let k = base.half();
    let (mut best_m, mut best) = (1, 0.0);
    for m in 1..k {
        let v = shifted_l1(&base, &base, m);
        if v > best {
            best = v;
            best_m = m;
        }
    }
    let at = |a: f64| -> Result<f64> {
        let m = (a / delta).floor() as i64;
        let eps = a - delta * m as f64;
        let lo = HermiteLattice::new(scale, delta, radius, -eps)?;
        let hi = HermiteLattice::new(scale, delta, radius, eps)?;
        Ok(shifted_l1(&lo, &hi, m))
    };
    let a0 = delta * best_m as f64;
    let (mut a, mut b) = ((a0 - delta).max(delta / 2.0), a0 + delta);
    let gr = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - gr * (b - a);
    let mut d = a + gr * (b - a);
    let (mut fc, mut fd) = (at(c)?, at(d)?);
    for _ in 0..24 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = at(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = at(d)?;
        }
    }
    let sup = best.max(fc).max(fd);
    Ok(0.5 * h * (mu / 2.0).sqrt() * sup)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anorm_single_level_closed_form() {
        let s = SemiclassicalScale::new(1, 2.0).unwrap();
        let h = s.hbar();
        let want = h * (s.mu() / 2.0).sqrt() * (-0.5f64).exp();
        let got = symbol_difference_anorm(&s).unwrap();
        assert!((got - want).abs() < 1e-10 * want, "{got} vs {want}");
    }

    #[test]
    fn bump_mass_matches_reference() {
        // ∫_{−4}^{4} exp(1/(z²−16)) dz from mpmath
        let raw = EdgeProfile::new((-4.0, 4.0), |z: f64| (1.0 / (z * z - 16.0)).exp());
        let m: f64 = edge_nodes(&raw).iter().map(|&(z, w)| w * raw.eval(z)).sum();
        assert!((m - 6.870_271_343_410_429).abs() < 1e-10, "{m}");
    }

    #[test]
    fn zero_profile_gives_zero() {
        let s = SemiclassicalScale::new(16, 2.0).unwrap();
        assert_eq!(thm2_residual(&s, &EdgeProfile::zero()).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn pointwise_rejects_interior() {
        let s = SemiclassicalScale::new(16, 2.0).unwrap();
        assert!(thm3_pointwise_residual(&s, &PhasePoint::new(1.0, 0.0)).is_err());
        assert!(thm3_pointwise_residual(&s, &PhasePoint::new(2.0, 0.0)).is_err());
    }
}
