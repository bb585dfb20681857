//! Series and parallel RLCM circuits as linear state-space models.
//!
//! The state vector is `[V_C, I_L]` and the output row sums both states.
//! Series circuit (voltage drive `u`):
//!
//! ```text
//! dV_C/dt = I_L / C
//! dI_L/dt = (u − V_C − (R + R_M)·I_L) / L
//! ```
//!
//! Parallel circuit (current drive `u`):
//!
//! ```text
//! dV_C/dt = (u − V_C/R − V_C/R_M − I_L) / C
//! dI_L/dt = V_C / L
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{require_positive, Error, Result};
use crate::lin_small::Matrix;
use crate::transient::ResponseMetrics;

/// Component values with the memristor frozen at an operating point `r_m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircuitParams {
    pub r: f64,
    pub l: f64,
    pub c_cap: f64,
    pub r_m: f64,
}

impl CircuitParams {
    pub fn new(r: f64, l: f64, c_cap: f64, r_m: f64) -> Result<Self> {
        let p = Self { r, l, c_cap, r_m };
        p.validate()?;
        Ok(p)
    }

    /// Every component must be finite and strictly positive.
    pub fn validate(&self) -> Result<()> {
        require_positive("r", self.r)?;
        require_positive("l", self.l)?;
        require_positive("c_cap", self.c_cap)?;
        require_positive("r_m", self.r_m)
    }
}

/// The fixed linear components of a circuit whose memristor is simulated
/// dynamically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RlcParams {
    pub r: f64,
    pub l: f64,
    pub c_cap: f64,
}

impl RlcParams {
    pub fn validate(&self) -> Result<()> {
        require_positive("r", self.r)?;
        require_positive("l", self.l)?;
        require_positive("c_cap", self.c_cap)
    }

    pub fn with_memristance(&self, r_m: f64) -> Result<CircuitParams> {
        CircuitParams::new(self.r, self.l, self.c_cap, r_m)
    }
}

impl From<CircuitParams> for RlcParams {
    fn from(p: CircuitParams) -> Self {
        Self {
            r: p.r,
            l: p.l,
            c_cap: p.c_cap,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Topology {
    Series,
    Parallel,
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Topology::Series => "series",
            Topology::Parallel => "parallel",
        })
    }
}

impl FromStr for Topology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "series" => Ok(Topology::Series),
            "parallel" => Ok(Topology::Parallel),
            _ => Err(Error::InvalidParam {
                field: "topology",
                reason: format!("expected `series` or `parallel`, got `{s}`"),
            }),
        }
    }
}

/// `ẋ = A x + B u`, `y = C x + D u` with a single input and output.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpace {
    pub a: Matrix,
    pub b: Matrix,
    pub c_out: Matrix,
    pub d: f64,
    pub state_labels: Vec<String>,
}

impl StateSpace {
    pub fn new(
        a: Matrix,
        b: Matrix,
        c_out: Matrix,
        d: f64,
        state_labels: Vec<String>,
    ) -> Result<Self> {
        let n = a.require_square("state matrix")?;
        if b.rows() != n || b.cols() != 1 {
            return Err(Error::Dimension(format!(
                "B must be {n}x1, got {}x{}",
                b.rows(),
                b.cols()
            )));
        }
        if c_out.rows() != 1 || c_out.cols() != n {
            return Err(Error::Dimension(format!(
                "C must be 1x{n}, got {}x{}",
                c_out.rows(),
                c_out.cols()
            )));
        }
        if state_labels.len() != n {
            return Err(Error::Dimension(format!(
                "{} state labels for {n} states",
                state_labels.len()
            )));
        }
        if !(a.is_finite() && b.is_finite() && c_out.is_finite() && d.is_finite()) {
            return Err(Error::Domain("non-finite state-space entry".into()));
        }
        Ok(Self {
            a,
            b,
            c_out,
            d,
            state_labels,
        })
    }

    pub fn order(&self) -> usize {
        self.a.rows()
    }
}

fn rlc_labels() -> Vec<String> {
    vec!["V_C".to_string(), "I_L".to_string()]
}

/// Series RLCM model.
pub fn build_series(p: &CircuitParams) -> Result<StateSpace> {
    p.validate()?;
    let a = Matrix::from_rows(&[[0.0, 1.0 / p.c_cap], [-1.0 / p.l, -(p.r + p.r_m) / p.l]])?;
    let b = Matrix::column(&[0.0, 1.0 / p.l]);
    StateSpace::new(a, b, Matrix::row(&[1.0, 1.0]), 0.0, rlc_labels())
}

/// Parallel RLCM model.
pub fn build_parallel(p: &CircuitParams) -> Result<StateSpace> {
    p.validate()?;
    let damping = 1.0 / (p.r * p.c_cap) + 1.0 / (p.r_m * p.c_cap);
    let a = Matrix::from_rows(&[[-damping, -1.0 / p.c_cap], [1.0 / p.l, 0.0]])?;
    let b = Matrix::column(&[1.0 / p.c_cap, 0.0]);
    StateSpace::new(a, b, Matrix::row(&[1.0, 1.0]), 0.0, rlc_labels())
}

pub fn build(topology: Topology, p: &CircuitParams) -> Result<StateSpace> {
    match topology {
        Topology::Series => build_series(p),
        Topology::Parallel => build_parallel(p),
    }
}

/// Published performance figures for one circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceColumn {
    pub step: ResponseMetrics,
    pub impulse_peak_amplitude: f64,
    pub impulse_settling_time: f64,
}

/// A named circuit configuration together with its reference metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub params: CircuitParams,
    pub topology: Topology,
    /// Multiplies the output row.
    pub output_scale: f64,
    pub expected: ReferenceColumn,
}

impl Preset {
    pub fn state_space(&self) -> StateSpace {
        build(self.topology, &self.params).expect("preset parameters are valid")
    }
}

pub const PRESET_NAMES: [&str; 2] = ["paper-series", "paper-parallel"];

pub fn preset(name: &str) -> Result<Preset> {
    match name {
        "paper-series" => Ok(Preset {
            name: "paper-series",
            params: CircuitParams {
                r: 0.1,
                l: 0.1,
                c_cap: 1.0,
                r_m: 0.1,
            },
            topology: Topology::Series,
            output_scale: 0.1,
            expected: ReferenceColumn {
                step: ResponseMetrics {
                    peak_amplitude: 0.27,
                    peak_time: 0.49,
                    overshoot_pct: Some(177.0),
                    rise_time: Some(0.08),
                    settling_time: 4.06,
                    final_value: 0.10,
                },
                impulse_peak_amplitude: 1.00,
                impulse_settling_time: 3.44,
            },
        }),
        "paper-parallel" => Ok(Preset {
            name: "paper-parallel",
            params: CircuitParams {
                r: 1.0,
                l: 1.0,
                c_cap: 1.0,
                r_m: 1.0,
            },
            topology: Topology::Parallel,
            output_scale: 1.0,
            expected: ReferenceColumn {
                step: ResponseMetrics {
                    peak_amplitude: 0.99,
                    peak_time: 6.00,
                    overshoot_pct: Some(0.0),
                    rise_time: Some(2.20),
                    settling_time: 3.91,
                    final_value: 1.00,
                },
                impulse_peak_amplitude: 1.00,
                impulse_settling_time: 3.91,
            },
        }),
        other => Err(Error::UnknownPreset {
            name: other.to_string(),
            valid: PRESET_NAMES.join(", "),
        }),
    }
}
