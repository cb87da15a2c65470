//! Hermite functions, Laguerre polynomials, Airy functions and Plancherel–Rotach asymptotics.

pub mod airy;
pub mod hermite;
pub mod laguerre;
pub mod plancherel;
pub mod scaled;

pub use airy::{
    airy, airy_ai, airy_ai_prime, airy_complex, airy_integrated, airy_with_integral, AiryValues,
};
pub use hermite::{
    decay_radius, hermite_eval, hermite_pair, hermite_psi, hermite_psi_derivative, hermite_sweep,
    HermiteEval, HermitePair, HermiteRecurrence,
};
pub use laguerre::{
    alternating_laguerre_sum, laguerre_assoc, laguerre_assoc_generic, AlternatingSum,
};
pub use plancherel::{
    pr_bulk, pr_edge, pr_edge_complex, pr_edge_position, pr_forbidden, pr_turning_point,
    PlancherelConfig,
};
pub use scaled::ScaledValue;
