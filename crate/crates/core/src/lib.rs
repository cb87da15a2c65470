//! Numerics for the semiclassical limit of the truncated momentum operator P_{<N} p̂ P_{<N}.
//!
//! Every object is parameterized by a [`SemiclassicalScale`] (N, μ) with ħ = μ/N.

pub mod classical;
pub mod dd;
pub mod dynamics;
pub mod error;
pub mod kernels;
pub mod quad;
pub mod scalar;
pub mod specfun;
pub mod spectrum;
pub mod symbols;
pub mod verify;

pub use classical::{
    chi_d, classical_hamiltonian, edge_constant, semicircle_cdf, semicircle_density,
    ComplexPhasePoint, DiskGeometry, PhasePoint, SemiclassicalScale,
};
pub use error::{Result, ZenoError};
pub use num_complex::Complex64;
pub use specfun::ScaledValue;
