use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical kernels, model constructors and simulators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParam { field: &'static str, reason: String },

    #[error("QR iteration did not converge after {iterations} iterations ({} eigenvalues found)", found.len())]
    IterationLimit {
        iterations: usize,
        found: Vec<Complex64>,
    },

    #[error("state `w` = {w:e} m left [0, {d_width:e}] m")]
    StateBound { w: f64, d_width: f64 },

    #[error("integration failed at t = {t}: {reason} (state {state:?})")]
    Integration {
        t: f64,
        reason: String,
        state: Vec<f64>,
    },

    #[error("unknown preset `{name}` (valid: {valid})")]
    UnknownPreset { name: String, valid: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_positive(field: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::InvalidParam {
            field,
            reason: format!("must be finite, got {value}"),
        });
    }
    if value <= 0.0 {
        return Err(Error::InvalidParam {
            field,
            reason: format!("must be strictly positive, got {value}"),
        });
    }
    Ok(())
}
