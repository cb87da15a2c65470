//! Symbols as oscillatory integrals over the antidiagonal of a kernel.

use crate::classical::{PhasePoint, SemiclassicalScale};
use crate::error::{Result, ZenoError};
use crate::kernels::{kernel_sums, KernelKind};
use crate::specfun::hermite::decay_radius;

/// ∫ ħ L(x − ħy/2, x + ħy/2) e^{ipy} dy for L = K_N or Q_N, by the trapezoid rule.
///
/// K_N is symmetric and Q_N antisymmetric under u ↔ v, so only y ≥ 0 is sampled.
/// The integrand is band-limited to |frequency| ≲ |p| + √(2μ); the spacing samples that band
/// eight times over, and the range stops where both arguments leave the decay radius.
pub fn symbol_via_fourier(
    scale: &SemiclassicalScale,
    kind: KernelKind,
    q: &PhasePoint,
) -> Result<f64> {
    if kind == KernelKind::Commutator {
        return Err(ZenoError::InvalidParameter {
            name: "kernel_kind",
            value: f64::NAN,
            reason: "only the Christoffel-Darboux and momentum kernels have symbols here",
        });
    }
    let h = scale.hbar();
    let radius = decay_radius(scale.n(), h);
    if q.x.abs() >= radius {
        return Ok(0.0);
    }
    let step = std::f64::consts::PI / (4.0 * (q.p.abs() + 1.0 + (2.0 * scale.mu()).sqrt()));
    let y_max = 2.0 * (radius - q.x.abs()) / h;
    let count = (y_max / step).ceil() as usize;
    let mut acc = 0.0;
    for m in 0..=count {
        let y = step * m as f64;
        let sums = kernel_sums(scale, q.x - h * y / 2.0, q.x + h * y / 2.0)?;
        match kind {
            KernelKind::ChristoffelDarboux => {
                let w = if m == 0 { 1.0 } else { 2.0 };
                acc += w * sums.direct * (q.p * y).cos();
            }
            _ => acc -= 2.0 * sums.momentum_over_i * (q.p * y).sin(),
        }
    }
    Ok(h * step * acc)
}
