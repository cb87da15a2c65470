//! Weyl symbols of P_{<N} and H_N, their classical limits, test functions and limit residuals.

pub mod fourier;
pub mod laguerre;
pub mod pairing;
pub mod residuals;
pub mod testfn;

pub use fourier::symbol_via_fourier;
pub use laguerre::{
    chi_d_smooth, groenewold_cross_symbol, p_chi_d_smooth, symbol_h_gradient, symbol_h_laguerre,
    symbol_h_laguerre_complex, symbol_p_laguerre, symbol_p_laguerre_complex, MAX_CONDITION,
};
pub use pairing::{cartesian_pairing, weak_pairing};
pub use residuals::{
    symbol_difference_anorm, thm1_residual, thm2_residual, thm2_step_control,
    thm3_pointwise_residual, EdgeProfile,
};
pub use testfn::{TestFunction, TestShape};

use crate::classical::{chi_d, ComplexPhasePoint, PhasePoint, SemiclassicalScale};
use crate::error::{Result, ZenoError};
use crate::kernels::KernelKind;
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum SymbolKind {
    SigmaP,
    SigmaH,
    ChiD,
    PChiD,
    ChiDSmooth,
    PChiDSmooth,
}

impl SymbolKind {
    pub const ALL: [SymbolKind; 6] = [
        SymbolKind::SigmaP,
        SymbolKind::SigmaH,
        SymbolKind::ChiD,
        SymbolKind::PChiD,
        SymbolKind::ChiDSmooth,
        SymbolKind::PChiDSmooth,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SymbolKind::SigmaP => "sigma_p",
            SymbolKind::SigmaH => "sigma_h",
            SymbolKind::ChiD => "chi_d",
            SymbolKind::PChiD => "p_chi_d",
            SymbolKind::ChiDSmooth => "chi_d_smooth",
            SymbolKind::PChiDSmooth => "p_chi_d_smooth",
        }
    }
}

/// σ_P, falling back to the Fourier route when the Laguerre sum cancels too much.
pub fn symbol_p(scale: &SemiclassicalScale, q: &PhasePoint) -> Result<f64> {
    match symbol_p_laguerre(scale, q) {
        Err(ZenoError::PrecisionLoss { .. }) => {
            symbol_via_fourier(scale, KernelKind::ChristoffelDarboux, q)
        }
        r => r,
    }
}

/// σ_H with the same fallback as [`symbol_p`].
pub fn symbol_h(scale: &SemiclassicalScale, q: &PhasePoint) -> Result<f64> {
    match symbol_h_laguerre(scale, q) {
        Err(ZenoError::PrecisionLoss { .. }) => symbol_via_fourier(scale, KernelKind::Momentum, q),
        r => r,
    }
}

/// One of the symbols at a fixed scale, evaluated pointwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolField {
    scale: SemiclassicalScale,
    kind: SymbolKind,
}

impl SymbolField {
    pub fn new(scale: SemiclassicalScale, kind: SymbolKind) -> Self {
        Self { scale, kind }
    }

    pub fn scale(&self) -> &SemiclassicalScale {
        &self.scale
    }

    pub fn kind(&self) -> SymbolKind {
        self.kind
    }

    pub fn eval(&self, q: &PhasePoint) -> Result<f64> {
        let s = &self.scale;
        Ok(match self.kind {
            SymbolKind::SigmaP => symbol_p(s, q)?,
            SymbolKind::SigmaH => symbol_h(s, q)?,
            SymbolKind::ChiD => chi_d(q, &s.disk()),
            SymbolKind::PChiD => q.p * chi_d(q, &s.disk()),
            SymbolKind::ChiDSmooth => chi_d_smooth(s, q),
            SymbolKind::PChiDSmooth => p_chi_d_smooth(s, q),
        })
    }

    /// Complexified evaluation; only the operator symbols are entire.
    pub fn eval_complex(&self, q: &ComplexPhasePoint) -> Result<Complex64> {
        match self.kind {
            SymbolKind::SigmaP => symbol_p_laguerre_complex(&self.scale, q),
            SymbolKind::SigmaH => symbol_h_laguerre_complex(&self.scale, q),
            _ => Err(ZenoError::OutOfDomain {
                what: "symbol kind",
                detail: format!("{} has no complex extension", self.kind.name()),
            }),
        }
    }

    /// Values on the tensor grid, p varying fastest.
    pub fn grid(&self, xs: &[f64], ps: &[f64]) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(xs.len() * ps.len());
        for &x in xs {
            for &p in ps {
                out.push(self.eval(&PhasePoint::new(x, p))?);
            }
        }
        Ok(out)
    }
}
