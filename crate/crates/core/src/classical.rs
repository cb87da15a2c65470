//! Scaling parameters, phase-space points and the classical limit objects.

use crate::error::{check_positive, Result, ZenoError};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// The pair (N, μ). The Planck constant ħ = μ/N is always derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SemiclassicalScale {
    n: usize,
    mu: f64,
}

impl SemiclassicalScale {
    pub fn new(n: usize, mu: f64) -> Result<Self> {
        if n == 0 {
            return Err(ZenoError::InvalidParameter {
                name: "N",
                value: 0.0,
                reason: "truncation rank must be at least 1",
            });
        }
        check_positive("mu", mu)?;
        Ok(Self { n, mu })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn hbar(&self) -> f64 {
        self.mu / self.n as f64
    }

    pub fn disk(&self) -> DiskGeometry {
        DiskGeometry::new(self.mu).expect("mu validated at construction")
    }

    /// The Airy layer coefficient κ in χ_D^{(N)} = Ai₁(κ(x²+p²−2μ)).
    pub fn airy_layer_coefficient(&self) -> f64 {
        (2.0 * self.n as f64).powf(2.0 / 3.0) / (2.0 * self.mu)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct PhasePoint {
    pub x: f64,
    pub p: f64,
}

impl PhasePoint {
    pub const fn new(x: f64, p: f64) -> Self {
        Self { x, p }
    }

    pub fn r2(&self) -> f64 {
        self.x * self.x + self.p * self.p
    }

    pub fn rotate(&self, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(self.x * c - self.p * s, self.x * s + self.p * c)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.p.is_finite()
    }
}

/// Phase-space point with complexified coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexPhasePoint {
    pub x: Complex64,
    pub p: Complex64,
}

impl ComplexPhasePoint {
    pub fn new(x: Complex64, p: Complex64) -> Self {
        Self { x, p }
    }
}

impl From<PhasePoint> for ComplexPhasePoint {
    fn from(q: PhasePoint) -> Self {
        Self::new(Complex64::new(q.x, 0.0), Complex64::new(q.p, 0.0))
    }
}

/// The disk x² + p² < 2μ of classically allowed states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskGeometry {
    mu: f64,
    radius: f64,
}

impl DiskGeometry {
    pub fn new(mu: f64) -> Result<Self> {
        check_positive("mu", mu)?;
        Ok(Self {
            mu,
            radius: (2.0 * mu).sqrt(),
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Classify a squared radius: negative inside, zero on the circle, positive outside.
    fn side(&self, r2: f64) -> i8 {
        let edge = 2.0 * self.mu;
        let d = r2 - edge;
        if d.abs() <= 4.0 * f64::EPSILON * edge {
            0
        } else if d < 0.0 {
            -1
        } else {
            1
        }
    }

    pub fn contains_strictly(&self, q: &PhasePoint) -> bool {
        self.side(q.r2()) < 0
    }

    pub fn on_boundary(&self, q: &PhasePoint) -> bool {
        self.side(q.r2()) == 0
    }
}

pub fn classical_hamiltonian(q: &PhasePoint) -> f64 {
    0.5 * q.r2()
}

/// Indicator of the disk; takes the value 1/2 on the boundary circle.
pub fn chi_d(q: &PhasePoint, geo: &DiskGeometry) -> f64 {
    match geo.side(q.r2()) {
        -1 => 1.0,
        0 => 0.5,
        _ => 0.0,
    }
}

pub fn semicircle_density(y: f64, mu: f64) -> f64 {
    let s = 2.0 * mu - y * y;
    if s <= 0.0 {
        0.0
    } else {
        s.sqrt() / (PI * mu)
    }
}

pub fn semicircle_cdf(y: f64, mu: f64) -> f64 {
    let a = (2.0 * mu).sqrt();
    if y <= -a {
        0.0
    } else if y >= a {
        1.0
    } else {
        0.5 + y * (2.0 * mu - y * y).sqrt() / (2.0 * PI * mu) + (y / a).asin() / PI
    }
}

/// c_μ = 2^{1/2} μ^{1/6}, the edge rescaling constant.
pub fn edge_constant(mu: f64) -> f64 {
    2f64.sqrt() * mu.powf(1.0 / 6.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamiltonian_values() {
        assert_eq!(classical_hamiltonian(&PhasePoint::new(0.0, 0.0)), 0.0);
        assert_eq!(classical_hamiltonian(&PhasePoint::new(2.0, 0.0)), 2.0);
        assert_eq!(classical_hamiltonian(&PhasePoint::new(1.0, 1.0)), 1.0);
    }

    #[test]
    fn disk_indicator() {
        let g = DiskGeometry::new(2.0).unwrap();
        assert_eq!(chi_d(&PhasePoint::new(0.0, 0.0), &g), 1.0);
        assert_eq!(chi_d(&PhasePoint::new(3.0, 0.0), &g), 0.0);
        assert_eq!(chi_d(&PhasePoint::new(2.0, 0.0), &g), 0.5);
        assert_eq!(g.radius() * g.radius(), 4.0);
    }

    #[test]
    fn density_and_edge_constant() {
        assert!((semicircle_density(0.0, 2.0) - 1.0 / PI).abs() < 1e-15);
        assert_eq!(semicircle_density(2.0, 2.0), 0.0);
        assert!((edge_constant(1.0) - 2f64.sqrt()).abs() < 1e-15);
        assert!((edge_constant(2.0) - 2f64.powf(2.0 / 3.0)).abs() < 1e-15);
        assert!((edge_constant(0.5) - 2f64.powf(1.0 / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn cdf_endpoints() {
        assert_eq!(semicircle_cdf(-2.0, 2.0), 0.0);
        assert!((semicircle_cdf(0.0, 2.0) - 0.5).abs() < 1e-15);
        assert!((semicircle_cdf(1.999_999_999, 2.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn scale_rejects_bad_input() {
        assert!(SemiclassicalScale::new(0, 2.0).is_err());
        assert!(SemiclassicalScale::new(3, 0.0).is_err());
        assert!(SemiclassicalScale::new(3, f64::NAN).is_err());
        let s = SemiclassicalScale::new(3, 2.0).unwrap();
        assert!((s.hbar() * 3.0 - 2.0).abs() <= 2.0 * f64::EPSILON);
    }
}
