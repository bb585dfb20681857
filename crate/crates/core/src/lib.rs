//! State-space modelling and stability analysis of memristor-augmented
//! RLC ("RLCM") circuits.
//!
//! The crate builds the linear models of the series and parallel RLCM
//! circuits, extracts eigenvalues, transfer functions and pole-zero maps,
//! simulates step and impulse responses, measures the usual transient
//! performance metrics, and integrates the nonlinear linear-drift
//! memristor both on its own (pinched hysteresis) and inside the circuits.
//!
//! ```
//! use rlcm::{analysis, circuits};
//!
//! let preset = circuits::preset("paper-series").unwrap();
//! let ss = preset.state_space();
//! let tf = analysis::transfer_function(&ss, preset.output_scale).unwrap();
//! assert_eq!(tf.to_string(), "(s+1)/(s^2+2s+10)");
//! ```

pub mod analysis;
pub mod circuits;
pub mod error;
pub mod lin_small;
pub mod memristor;
mod ode;
pub mod transient;

pub use error::{Error, Result};
pub use lin_small::{ComplexScalar, Matrix, Polynomial};

/// Formats a number with six significant digits, dropping trailing zeros.
pub fn fmt_sig(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{x:.5e}").parse().unwrap_or(x);
    if rounded == 0.0 {
        return "0".to_string();
    }
    if rounded.abs() < 1e-4 || rounded.abs() >= 1e15 {
        format!("{rounded:e}")
    } else {
        format!("{rounded}")
    }
}

/// `a+bi` / `a-bi` / `a` with six significant digits per component.
pub fn fmt_complex(z: ComplexScalar) -> String {
    let im = fmt_sig(z.im.abs());
    if im == "0" {
        fmt_sig(z.re)
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{}{sign}{im}i", fmt_sig(z.re))
    }
}
