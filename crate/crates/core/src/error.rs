use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZenoError {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    /// The alternating Laguerre sum cancelled beyond what double precision resolves.
    #[error("alternating Laguerre sum lost precision (condition estimate {condition:.3e})")]
    PrecisionLoss { condition: f64 },
    #[error("{what} outside its domain: {detail}")]
    OutOfDomain { what: &'static str, detail: String },
    #[error("step size underflow at t = {t} (h = {h:e})")]
    StepUnderflow { t: f64, h: f64 },
    #[error("step budget of {steps} exhausted at t = {t}")]
    StepBudget { t: f64, steps: usize },
}

pub type Result<T> = std::result::Result<T, ZenoError>;

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(ZenoError::InvalidParameter {
            name,
            value,
            reason: "must be positive and finite",
        })
    }
}
