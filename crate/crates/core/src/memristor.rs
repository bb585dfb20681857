//! Current-controlled memristor realized with the linear ion-drift model.
//!
//! The device is a film of width `D` whose doped region has width `w`.
//! Its memristance interpolates linearly between `r_on` (fully doped) and
//! `r_off` (undoped), and the boundary drifts at a rate proportional to the
//! current through the device, optionally shaped by a window function.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{require_positive, Error, Result};
use crate::ode::rk4_step;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowKind {
    Unity,
    /// `f(x) = 1 − (2x − 1)^(2p)`
    Joglekar,
}

impl fmt::Display for WindowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WindowKind::Unity => "unity",
            WindowKind::Joglekar => "joglekar",
        })
    }
}

impl FromStr for WindowKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "unity" => Ok(WindowKind::Unity),
            "joglekar" => Ok(WindowKind::Joglekar),
            _ => Err(Error::InvalidParam {
                field: "window",
                reason: format!("expected `unity` or `joglekar`, got `{s}`"),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftParams {
    pub r_on: f64,
    pub r_off: f64,
    pub d_width: f64,
    /// Dopant mobility in m²/(V·s). Zero freezes the state.
    pub mobility: f64,
    pub p_window: u32,
    pub window_kind: WindowKind,
}

impl Default for DriftParams {
    fn default() -> Self {
        Self {
            r_on: 100.0,
            r_off: 16e3,
            d_width: 10e-9,
            mobility: 1e-14,
            p_window: 1,
            window_kind: WindowKind::Joglekar,
        }
    }
}

impl DriftParams {
    pub fn validate(&self) -> Result<()> {
        require_positive("r_on", self.r_on)?;
        require_positive("r_off", self.r_off)?;
        require_positive("d_width", self.d_width)?;
        if self.r_on >= self.r_off {
            return Err(Error::InvalidParam {
                field: "r_off",
                reason: format!("must exceed r_on = {}, got {}", self.r_on, self.r_off),
            });
        }
        if !(self.mobility.is_finite() && self.mobility >= 0.0) {
            return Err(Error::InvalidParam {
                field: "mobility",
                reason: format!("must be finite and non-negative, got {}", self.mobility),
            });
        }
        if self.p_window < 1 {
            return Err(Error::InvalidParam {
                field: "p",
                reason: "window exponent must be at least 1".into(),
            });
        }
        Ok(())
    }

    /// Drift coefficient `μ·r_on/D` in m/C.
    pub fn drift_gain(&self) -> f64 {
        self.mobility * self.r_on / self.d_width
    }

    fn check_w(&self, w: f64) -> Result<()> {
        if !(0.0..=self.d_width).contains(&w) {
            return Err(Error::StateBound {
                w,
                d_width: self.d_width,
            });
        }
        Ok(())
    }

    /// Memristance at an arbitrary `w`, clamped into the physical range.
    fn memristance_clamped(&self, w: f64) -> f64 {
        let x = (w / self.d_width).clamp(0.0, 1.0);
        self.r_on * x + self.r_off * (1.0 - x)
    }

    fn window_clamped(&self, w: f64) -> f64 {
        window_value(
            (w / self.d_width).clamp(0.0, 1.0),
            self.window_kind,
            self.p_window,
        )
    }
}

/// Doped width, accumulated charge and accumulated flux.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemState {
    pub w: f64,
    pub q: f64,
    pub phi: f64,
}

/// `i(t) = amplitude · sin(ω t + phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SineDrive {
    pub amplitude: f64,
    pub omega: f64,
    pub phase: f64,
}

impl SineDrive {
    pub fn new(amplitude: f64, omega: f64, phase: f64) -> Result<Self> {
        if !(amplitude.is_finite() && amplitude >= 0.0) {
            return Err(Error::InvalidParam {
                field: "amplitude",
                reason: format!("must be finite and non-negative, got {amplitude}"),
            });
        }
        require_positive("omega", omega)?;
        if !phase.is_finite() {
            return Err(Error::InvalidParam {
                field: "phase",
                reason: "must be finite".into(),
            });
        }
        Ok(Self {
            amplitude,
            omega,
            phase,
        })
    }

    pub fn at(&self, t: f64) -> f64 {
        self.amplitude * (self.omega * t + self.phase).sin()
    }

    pub fn period(&self) -> f64 {
        2.0 * PI / self.omega
    }
}

/// `r_on·(w/D) + r_off·(1 − w/D)`.
pub fn memristance(dp: &DriftParams, w: f64) -> Result<f64> {
    dp.check_w(w)?;
    Ok(dp.memristance_clamped(w))
}

/// Voltage-controlled view of the same device: `1 / memristance`.
pub fn memductance(dp: &DriftParams, w: f64) -> Result<f64> {
    memristance(dp, w).map(f64::recip)
}

pub fn window(x: f64, kind: WindowKind, p: u32) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("window argument {x} outside [0, 1]")));
    }
    Ok(window_value(x, kind, p))
}

fn window_value(x: f64, kind: WindowKind, p: u32) -> f64 {
    match kind {
        WindowKind::Unity => 1.0,
        WindowKind::Joglekar => (1.0 - (2.0 * x - 1.0).powi(2 * p as i32)).clamp(0.0, 1.0),
    }
}

/// `dw/dt` for device current `i`.
pub fn drift_rate(dp: &DriftParams, s: &MemState, i: f64) -> Result<f64> {
    dp.validate()?;
    dp.check_w(s.w)?;
    Ok(dp.drift_gain() * i * dp.window_clamped(s.w))
}

/// One row of a hysteresis run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HysteresisSample {
    pub t: f64,
    pub i: f64,
    pub v: f64,
    pub q: f64,
    pub phi: f64,
    pub w: f64,
}

/// Overshoot past a boundary that the Joglekar window should have prevented.
const BOUND_ESCAPE_TOL: f64 = 1e-9;

/// Clamps `w` into `[0, D]`. Unity windows may legitimately push `w` past a
/// boundary; with a Joglekar window an escape larger than
/// `1e−9·D` means the step is too coarse.
pub(crate) fn clamp_w(dp: &DriftParams, w: f64, t: f64, state: &[f64]) -> Result<f64> {
    if !w.is_finite() {
        return Err(Error::Integration {
            t,
            reason: "non-finite memristor state".into(),
            state: state.to_vec(),
        });
    }
    let escape = (-w).max(w - dp.d_width).max(0.0);
    if dp.window_kind != WindowKind::Unity && escape > BOUND_ESCAPE_TOL * dp.d_width {
        return Err(Error::Integration {
            t,
            reason: format!("w escaped [0, D] by {escape:e} m; reduce the step"),
            state: state.to_vec(),
        });
    }
    Ok(w.clamp(0.0, dp.d_width))
}

/// Drives the device with a sinusoidal current and integrates `[w, q, φ]`
/// with RK4 on a grid of `steps_per_period` points per drive period.
/// Returns `periods·steps_per_period + 1` samples starting at `t = 0`.
pub fn run_hysteresis(
    dp: &DriftParams,
    drive: &SineDrive,
    w0: f64,
    steps_per_period: usize,
    periods: usize,
) -> Result<Vec<HysteresisSample>> {
    dp.validate()?;
    dp.check_w(w0)?;
    if steps_per_period < 100 {
        return Err(Error::InvalidParam {
            field: "steps_per_period",
            reason: format!("must be at least 100, got {steps_per_period}"),
        });
    }
    if periods == 0 {
        return Err(Error::InvalidParam {
            field: "periods",
            reason: "must be at least 1".into(),
        });
    }
    let h = drive.period() / steps_per_period as f64;
    let total = periods * steps_per_period;
    let mut rhs = |t: f64, x: &[f64]| {
        let i = drive.at(t);
        vec![
            dp.drift_gain() * i * dp.window_clamped(x[0]),
            i,
            dp.memristance_clamped(x[0]) * i,
        ]
    };

    let mut out = Vec::with_capacity(total + 1);
    let mut x = vec![w0, 0.0, 0.0];
    for k in 0..=total {
        let t = k as f64 * h;
        let i = drive.at(t);
        out.push(HysteresisSample {
            t,
            i,
            v: dp.memristance_clamped(x[0]) * i,
            q: x[1],
            phi: x[2],
            w: x[0],
        });
        if k == total {
            break;
        }
        x = rk4_step(&mut rhs, t, &x, h);
        x[0] = clamp_w(dp, x[0], t + h, &x)?;
    }
    Ok(out)
}

/// Area enclosed by the `(i, v)` loop over one stretch of samples.
///
/// The pinched loop is a figure-eight whose lobes carry opposite
/// orientations, so the stretch is split wherever the current changes sign
/// and the absolute shoelace areas of the lobes are summed.
pub fn loop_area(samples: &[HysteresisSample]) -> f64 {
    let mut total = 0.0;
    let mut lobe: Vec<(f64, f64)> = Vec::new();
    let mut flush = |lobe: &mut Vec<(f64, f64)>| {
        if lobe.len() >= 3 {
            let n = lobe.len();
            let twice: f64 = (0..n)
                .map(|k| {
                    let (x0, y0) = lobe[k];
                    let (x1, y1) = lobe[(k + 1) % n];
                    x0 * y1 - x1 * y0
                })
                .sum();
            total += 0.5 * twice.abs();
        }
        lobe.clear();
    };
    let mut sign = 0.0f64;
    for s in samples {
        let this = if s.i > 0.0 {
            1.0
        } else if s.i < 0.0 {
            -1.0
        } else {
            0.0
        };
        if this != 0.0 && sign != 0.0 && this != sign {
            // close the lobe through the pinch point
            lobe.push((0.0, 0.0));
            flush(&mut lobe);
            lobe.push((0.0, 0.0));
        }
        if this != 0.0 {
            sign = this;
        }
        lobe.push((s.i, s.v));
    }
    flush(&mut lobe);
    total
}

/// Loop area of every complete period in a run of `steps_per_period`
/// samples per period.
pub fn loop_areas_per_period(samples: &[HysteresisSample], steps_per_period: usize) -> Vec<f64> {
    if steps_per_period == 0 {
        return Vec::new();
    }
    let periods = samples.len().saturating_sub(1) / steps_per_period;
    (0..periods)
        .map(|p| loop_area(&samples[p * steps_per_period..=(p + 1) * steps_per_period]))
        .collect()
}

/// Loop area over the last complete period.
pub fn steady_loop_area(samples: &[HysteresisSample], steps_per_period: usize) -> f64 {
    loop_areas_per_period(samples, steps_per_period)
        .last()
        .copied()
        .unwrap_or(0.0)
}

/// Flux as a function of charge for a unity window, starting from doped
/// width `w0` at `q = 0`: `φ(q) = ∫₀^q M(w0 + k s) ds`.
pub fn flux_charge_curve(dp: &DriftParams, w0: f64, q_samples: &[f64]) -> Result<Vec<(f64, f64)>> {
    dp.validate()?;
    dp.check_w(w0)?;
    if dp.window_kind != WindowKind::Unity {
        return Err(Error::Domain(
            "closed-form flux-charge curve requires a unity window".into(),
        ));
    }
    let k = dp.drift_gain();
    let slope = (dp.r_off - dp.r_on) / dp.d_width;
    q_samples
        .iter()
        .map(|&q| {
            dp.check_w(w0 + k * q)?;
            let phi = dp.r_off * q - slope * (w0 * q + 0.5 * k * q * q);
            Ok((q, phi))
        })
        .collect()
}
