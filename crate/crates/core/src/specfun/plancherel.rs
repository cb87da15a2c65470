//! Leading-order Plancherel–Rotach formulas for ψ_{N+n}^ħ, ħ = μ/N.

use super::airy::{airy, airy_complex};
use super::scaled::ScaledValue;
use crate::error::{check_positive, Result, ZenoError};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlancherelConfig {
    /// Angles must stay this far from 0 and π in the oscillatory regime.
    pub epsilon: f64,
    /// Upper end of the angle range in the forbidden regime.
    pub epsilon_prime: f64,
    /// Bound on |t| in the turning-point regime.
    pub edge_bound: f64,
}

impl Default for PlancherelConfig {
    fn default() -> Self {
        Self {
            epsilon: 0.05,
            epsilon_prime: 4.0,
            edge_bound: 6.0,
        }
    }
}

fn check_n(n: usize) -> Result<f64> {
    if n == 0 {
        Err(ZenoError::InvalidParameter {
            name: "N",
            value: 0.0,
            reason: "degree must be at least 1",
        })
    } else {
        Ok(n as f64)
    }
}

/// Turning point √((2+1/N)μ) used by all three parameterizations.
pub fn pr_turning_point(n: usize, mu: f64) -> f64 {
    ((2.0 + 1.0 / n as f64) * mu).sqrt()
}

/// Oscillatory regime at x = √((2+1/N)μ)·cos φ.
pub fn pr_bulk(n: usize, offset: i64, phi: f64, mu: f64, cfg: &PlancherelConfig) -> Result<f64> {
    let nf = check_n(n)?;
    check_positive("mu", mu)?;
    if !(phi > cfg.epsilon && phi < PI - cfg.epsilon) {
        return Err(ZenoError::OutOfDomain {
            what: "Plancherel-Rotach bulk angle",
            detail: format!("phi = {phi} not in ({}, pi - {})", cfg.epsilon, cfg.epsilon),
        });
    }
    let amp = (2.0 / mu).powf(0.25) / (PI * phi.sin()).sqrt();
    let arg = (nf / 2.0 + 0.25) * ((2.0 * phi).sin() - 2.0 * phi) + 0.75 * PI - offset as f64 * phi;
    Ok(amp * arg.sin())
}

/// Forbidden regime at x = √((2+1/N)μ)·cosh φ.
pub fn pr_forbidden(
    n: usize,
    offset: i64,
    phi: f64,
    mu: f64,
    cfg: &PlancherelConfig,
) -> Result<ScaledValue<f64>> {
    let nf = check_n(n)?;
    check_positive("mu", mu)?;
    if !(phi >= cfg.epsilon && phi <= cfg.epsilon_prime) {
        return Err(ZenoError::OutOfDomain {
            what: "Plancherel-Rotach forbidden angle",
            detail: format!(
                "phi = {phi} not in [{}, {}]",
                cfg.epsilon, cfg.epsilon_prime
            ),
        });
    }
    let log = -0.25 * (8.0 * mu).ln()
        - 0.5 * (PI * phi.sinh()).ln()
        - (nf / 2.0 + 0.25) * ((2.0 * phi).sinh() - 2.0 * phi)
        + offset as f64 * phi;
    Ok(ScaledValue::exp(log))
}

/// Turning-point regime at x = √((2+1/N)μ) + √(μ/2)·N^{−2/3}·t.
pub fn pr_edge(n: usize, t: f64, mu: f64, cfg: &PlancherelConfig) -> Result<f64> {
    let nf = check_n(n)?;
    check_positive("mu", mu)?;
    if !(t.abs() <= cfg.edge_bound) {
        return Err(ZenoError::OutOfDomain {
            what: "Plancherel-Rotach edge variable",
            detail: format!("|t| = {} exceeds {}", t.abs(), cfg.edge_bound),
        });
    }
    Ok(edge_prefactor(nf, mu) * airy(t).ai)
}

pub fn pr_edge_complex(
    n: usize,
    t: Complex64,
    mu: f64,
    cfg: &PlancherelConfig,
) -> Result<Complex64> {
    let nf = check_n(n)?;
    check_positive("mu", mu)?;
    if !(t.norm() <= cfg.edge_bound) {
        return Err(ZenoError::OutOfDomain {
            what: "Plancherel-Rotach edge variable",
            detail: format!("|t| = {} exceeds {}", t.norm(), cfg.edge_bound),
        });
    }
    Ok(airy_complex(t)?.0 * edge_prefactor(nf, mu))
}

fn edge_prefactor(nf: f64, mu: f64) -> f64 {
    ((2.0 / mu).sqrt() * nf.cbrt()).sqrt()
}

/// Position of the edge variable t.
pub fn pr_edge_position(n: usize, t: f64, mu: f64) -> f64 {
    pr_turning_point(n, mu) + (mu / 2.0).sqrt() * (n as f64).powf(-2.0 / 3.0) * t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn amplitude_and_prefactor() {
        let cfg = PlancherelConfig::default();
        // At φ = π/2 the sine argument is (N/2+1/4)(−π) + 3π/4.
        let v = pr_bulk(200, 0, PI / 2.0, 2.0, &cfg).unwrap();
        assert!(v.abs() <= 1.0 / PI.sqrt() + 1e-15);
        let e = pr_edge(8, 0.3, 2.0, &cfg).unwrap();
        assert!((e - 2f64.sqrt() * airy(0.3).ai).abs() < 1e-15);
        assert!(pr_bulk(200, 0, 0.01, 2.0, &cfg).is_err());
        assert!(pr_forbidden(200, 0, 0.01, 2.0, &cfg).is_err());
    }

    #[test]
    fn forbidden_is_positive_and_decays() {
        let cfg = PlancherelConfig::default();
        let a = pr_forbidden(200, 0, 0.3, 2.0, &cfg).unwrap();
        let b = pr_forbidden(200, 0, 0.6, 2.0, &cfg).unwrap();
        assert!(a.signum() > 0.0 && b.signum() > 0.0);
        assert!(b.ln_abs() < a.ln_abs());
    }
}
