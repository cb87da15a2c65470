//! Weak pairings ⟨σ, φ⟩ = ∬ conj(σ) φ dx dp.

use super::testfn::TestFunction;
use super::{SymbolField, SymbolKind};
use crate::classical::{PhasePoint, SemiclassicalScale};
use crate::error::Result;
use crate::kernels::{cd_jet_from_pairs, momentum_from_pairs, EdgePair, KernelKind};
use crate::quad::gauss_legendre;
use crate::specfun::airy::airy_integrated;
use crate::specfun::hermite::decay_radius;
use num_complex::Complex64;
use std::f64::consts::PI;

/// (ψ_{N−1}, ψ_N) pairs on the uniform lattice z_k = offset + kΔ, |k| ≤ K.
pub(crate) struct HermiteLattice {
    spacing: f64,
    half: i64,
    pairs: Vec<EdgePair<f64>>,
}

impl HermiteLattice {
    pub(crate) fn new(
        scale: &SemiclassicalScale,
        spacing: f64,
        radius: f64,
        offset: f64,
    ) -> Result<Self> {
        let half = (radius / spacing).ceil() as i64;
        let pairs = (-half..=half)
            .map(|k| EdgePair::new(scale, offset + spacing * k as f64))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            spacing,
            half,
            pairs,
        })
    }

    pub(crate) fn half(&self) -> i64 {
        self.half
    }

    pub(crate) fn spacing(&self) -> f64 {
        self.spacing
    }

    pub(crate) fn at(&self, k: i64) -> &EdgePair<f64> {
        &self.pairs[(k + self.half) as usize]
    }
}

/// Pairing of σ_P (K_N) or σ_H (Q_N) with φ in the variables (x, y).
///
/// Both trapezoid rules are aliasing-free once the sampling frequencies exceed the combined
/// supports: 2π/h_y against the p-extents of σ and φ, 2π/Δ against the x-bandwidth of the kernel.
/// Choosing ħh_y/2 = Δ puts every x ± ħy/2 on the lattice.
fn operator_pairing(
    scale: &SemiclassicalScale,
    kind: KernelKind,
    phi: &TestFunction,
) -> Result<f64> {
    let h = scale.hbar();
    let radius = decay_radius(scale.n(), h);
    let (plo, phi_hi) = phi.p_extent();
    let p_max = plo.abs().max(phi_hi.abs());
    let hy_max = PI / (p_max + radius);
    let delta = (PI * h / (4.0 * radius)).min(h * hy_max / 2.0);
    let hy = 2.0 * delta / h;
    let (xlo, xhi) = phi.x_extent();
    let (xlo, xhi) = (xlo.max(-radius), xhi.min(radius));
    if xlo >= xhi {
        return Ok(0.0);
    }
    let lattice = HermiteLattice::new(scale, delta, radius, 0.0)?;
    let k = lattice.half();
    let m_phi = (phi.y_extent() / hy).ceil() as i64;
    let i_lo = ((xlo / delta).ceil() as i64).max(-k);
    let i_hi = ((xhi / delta).floor() as i64).min(k);
    let mut total = Complex64::new(0.0, 0.0);
    for i in i_lo..=i_hi {
        let x = delta * i as f64;
        let m_max = m_phi.min(k - i.abs());
        for m in 0..=m_max {
            let (pu, pv) = (lattice.at(i - m), lattice.at(i + m));
            let y = hy * m as f64;
            match kind {
                KernelKind::ChristoffelDarboux => {
                    let kv = cd_jet_from_pairs(scale, pu, pv).value;
                    let f = if m == 0 {
                        phi.partial_fourier(x, 0.0)
                    } else {
                        phi.partial_fourier(x, y) + phi.partial_fourier(x, -y)
                    };
                    total += f * kv;
                }
                _ => {
                    if m == 0 {
                        continue;
                    }
                    let q = momentum_from_pairs(scale, pu, pv);
                    let f = phi.partial_fourier(x, y) - phi.partial_fourier(x, -y);
                    total += f * Complex64::new(0.0, -q);
                }
            }
        }
    }
    Ok(total.re * h * delta * hy)
}

const ANGLES: usize = 256;

/// ∫₀^∞ ∫₀^{2π} w(s) φ(r cos θ, r sin θ) (r sin θ)^{k} dθ ds/2 with s = r², over composite Gauss–Legendre panels in s.
fn radial_pairing(
    phi: &TestFunction,
    panels: &[(f64, f64)],
    weight: impl Fn(f64) -> f64,
    p_power: i32,
) -> f64 {
    let rule = gauss_legendre(16);
    let trig: Vec<(f64, f64)> = (0..ANGLES)
        .map(|j| (2.0 * PI * j as f64 / ANGLES as f64).sin_cos())
        .collect();
    let mut total = 0.0;
    for &(a, b) in panels {
        for (s, ws) in rule.mapped(a, b) {
            let r = s.sqrt();
            let mut ang = 0.0;
            for &(sn, cs) in &trig {
                let p = r * sn;
                ang += phi.direct(r * cs, p) * p.powi(p_power);
            }
            total += ws * weight(s) * ang;
        }
    }
    total * PI / ANGLES as f64
}

fn uniform_panels(a: f64, b: f64, width: f64) -> Vec<(f64, f64)> {
    let n = ((b - a) / width).ceil().max(1.0) as usize;
    let h = (b - a) / n as f64;
    (0..n)
        .map(|j| (a + h * j as f64, a + h * (j + 1) as f64))
        .collect()
}

/// ∬ over the open disk of φ (p_power = 0) or p φ (p_power = 1).
fn disk_pairing(scale: &SemiclassicalScale, phi: &TestFunction, p_power: i32) -> f64 {
    let edge = 2.0 * scale.mu();
    radial_pairing(
        phi,
        &uniform_panels(0.0, edge, edge / 8.0),
        |_| 1.0,
        p_power,
    )
}

fn smooth_disk_pairing(scale: &SemiclassicalScale, phi: &TestFunction, p_power: i32) -> f64 {
    let edge = 2.0 * scale.mu();
    let kappa = scale.airy_layer_coefficient();
    // the Airy ripple inside the disk has s-frequency at most κ^{3/2}√(2μ)
    let width = (PI / (kappa.powf(1.5) * edge.sqrt())).min(edge / 8.0);
    let panels = uniform_panels(0.0, edge + 40.0 / kappa, width);
    radial_pairing(
        phi,
        &panels,
        |s| airy_integrated(kappa * (s - edge)),
        p_power,
    )
}

/// ⟨σ, φ⟩ for a real symbol field and real test function.
pub fn weak_pairing(sigma: &SymbolField, phi: &TestFunction) -> Result<f64> {
    let scale = sigma.scale();
    Ok(match sigma.kind() {
        SymbolKind::SigmaP => operator_pairing(scale, KernelKind::ChristoffelDarboux, phi)?,
        SymbolKind::SigmaH => operator_pairing(scale, KernelKind::Momentum, phi)?,
        SymbolKind::ChiD => disk_pairing(scale, phi, 0),
        SymbolKind::PChiD => disk_pairing(scale, phi, 1),
        SymbolKind::ChiDSmooth => smooth_disk_pairing(scale, phi, 0),
        SymbolKind::PChiDSmooth => smooth_disk_pairing(scale, phi, 1),
    })
}

/// Plain Cartesian quadrature of ∬ σ φ, used as an oracle in tests.
pub fn cartesian_pairing(
    sigma: &SymbolField,
    phi: &TestFunction,
    nodes_per_unit: usize,
) -> Result<f64> {
    let (xlo, xhi) = phi.x_extent();
    let (plo, phi_hi) = phi.p_extent();
    let rule = gauss_legendre(16);
    let px = uniform_panels(xlo, xhi, 16.0 / nodes_per_unit as f64);
    let pp = uniform_panels(plo, phi_hi, 16.0 / nodes_per_unit as f64);
    let mut total = 0.0;
    for &(a, b) in &px {
        for (x, wx) in rule.mapped(a, b) {
            for &(c, d) in &pp {
                for (p, wp) in rule.mapped(c, d) {
                    let f = phi.direct(x, p);
                    if f.abs() < 1e-300 {
                        continue;
                    }
                    total += wx * wp * f * sigma.eval(&PhasePoint::new(x, p))?;
                }
            }
        }
    }
    Ok(total)
}
