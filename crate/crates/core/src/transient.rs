//! Time-domain simulation and transient performance metrics.
//!
//! Linear responses are computed either with the exact zero-order-hold
//! propagator (`e^{A·dt}`) or with fixed-step RK4. Impulse responses are
//! obtained by starting from `x(0) = B` with zero input. The nonlinear
//! simulator integrates the circuit together with the memristor state.

use std::fmt;
use std::str::FromStr;

use crate::circuits::{RlcParams, StateSpace, Topology};
use crate::error::{Error, Result};
use crate::lin_small::{expm, Matrix};
use crate::memristor::{clamp_w, DriftParams, SineDrive};
use crate::ode::rk4_step;

/// Uniformly sampled signal: sample `k` is taken at `t0 + k·dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform {
    pub t0: f64,
    pub dt: f64,
    pub samples: Vec<f64>,
}

impl Waveform {
    pub fn new(t0: f64, dt: f64, samples: Vec<f64>) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite() && t0.is_finite()) {
            return Err(Error::Domain(format!(
                "invalid time grid t0 = {t0}, dt = {dt}"
            )));
        }
        if samples.iter().any(|y| !y.is_finite()) {
            return Err(Error::Domain("non-finite waveform sample".into()));
        }
        Ok(Self { t0, dt, samples })
    }

    pub fn time_at(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.dt
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.samples.len()).map(|k| self.time_at(k))
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ZohExact,
    Rk4,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ZohExact => "zoh",
            Method::Rk4 => "rk4",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "zoh" | "zoh-exact" => Ok(Method::ZohExact),
            "rk4" => Ok(Method::Rk4),
            _ => Err(Error::InvalidParam {
                field: "method",
                reason: format!("expected `zoh` or `rk4`, got `{s}`"),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub dt: f64,
    pub t_end: f64,
    pub method: Method,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            t_end: 10.0,
            method: Method::ZohExact,
        }
    }
}

impl SimConfig {
    pub fn new(dt: f64, t_end: f64, method: Method) -> Result<Self> {
        let cfg = Self { dt, t_end, method };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidParam {
                field: "dt",
                reason: format!("must be finite and positive, got {}", self.dt),
            });
        }
        if !(self.t_end.is_finite() && self.t_end > self.dt) {
            return Err(Error::InvalidParam {
                field: "t_end",
                reason: format!(
                    "must be finite and exceed dt = {}, got {}",
                    self.dt, self.t_end
                ),
            });
        }
        Ok(())
    }

    /// Number of steps; the grid has one more sample than this.
    pub fn steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }
}

/// Exact discretization for piecewise-constant input, from the exponential
/// of the augmented matrix `[[A, B], [0, 0]]·dt`.
pub fn discretize_zoh(ss: &StateSpace, dt: f64) -> Result<(Matrix, Matrix)> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidParam {
            field: "dt",
            reason: format!("must be finite and positive, got {dt}"),
        });
    }
    let n = ss.order();
    let mut aug = Matrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = ss.a[(i, j)] * dt;
        }
        aug[(i, n)] = ss.b[(i, 0)] * dt;
    }
    let e = expm(&aug)?;
    Ok((e.block(0, 0, n, n), e.block(0, n, n, 1)))
}

fn simulate_lti(
    ss: &StateSpace,
    x0: Vec<f64>,
    u: f64,
    output_scale: f64,
    cfg: &SimConfig,
) -> Result<Waveform> {
    cfg.validate()?;
    let steps = cfg.steps();
    let c = ss.c_out.as_slice();
    let output = |x: &[f64]| {
        let cx: f64 = c.iter().zip(x).map(|(a, b)| a * b).sum();
        output_scale * (cx + ss.d * u)
    };
    let mut samples = Vec::with_capacity(steps + 1);
    let mut x = x0;
    samples.push(output(&x));
    match cfg.method {
        Method::ZohExact => {
            let (ad, bd) = discretize_zoh(ss, cfg.dt)?;
            let bd = bd.as_slice().to_vec();
            for _ in 0..steps {
                x = ad.mul_vec(&x);
                for (xi, bi) in x.iter_mut().zip(&bd) {
                    *xi += bi * u;
                }
                samples.push(output(&x));
            }
        }
        Method::Rk4 => {
            let b = ss.b.as_slice();
            let mut f = |_t: f64, x: &[f64]| {
                let mut dx = ss.a.mul_vec(x);
                for (d, bi) in dx.iter_mut().zip(b) {
                    *d += bi * u;
                }
                dx
            };
            for k in 0..steps {
                x = rk4_step(&mut f, k as f64 * cfg.dt, &x, cfg.dt);
                samples.push(output(&x));
            }
        }
    }
    Waveform::new(0.0, cfg.dt, samples).map_err(|_| Error::Integration {
        t: cfg.t_end,
        reason: "response diverged".into(),
        state: x,
    })
}

/// Unit-step response from rest: `y = scale·(C x + D)`.
pub fn step_response(ss: &StateSpace, output_scale: f64, cfg: &SimConfig) -> Result<Waveform> {
    simulate_lti(ss, vec![0.0; ss.order()], 1.0, output_scale, cfg)
}

/// Impulse response `scale·C e^{At} B`, simulated from `x(0) = B`.
pub fn impulse_response(ss: &StateSpace, output_scale: f64, cfg: &SimConfig) -> Result<Waveform> {
    simulate_lti(ss, ss.b.as_slice().to_vec(), 0.0, output_scale, cfg)
}

/// Excitation for the nonlinear circuit simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Drive {
    Step { amplitude: f64 },
    Sine(SineDrive),
}

impl Drive {
    fn at(&self, t: f64) -> f64 {
        match self {
            Drive::Step { amplitude } => *amplitude,
            Drive::Sine(s) => s.at(t),
        }
    }
}

/// One row of a nonlinear circuit run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlinearSample {
    pub t: f64,
    pub v_c: f64,
    pub i_l: f64,
    pub w: f64,
    pub r_m: f64,
    /// Current through the memristor.
    pub i_m: f64,
    /// Charge that has passed through the memristor.
    pub q: f64,
}

impl NonlinearSample {
    /// `V_C + I_L`, the same output row as the linear models.
    pub fn output(&self) -> f64 {
        self.v_c + self.i_l
    }
}

/// Integrates the circuit with a live memristor, state `[V_C, I_L, w, q]`.
///
/// The memristor carries `I_L` in the series circuit and `V_C / R_M(w)` in
/// the parallel one. `w` is clamped into `[0, D]` after every step.
pub fn simulate_rlcm_nonlinear(
    p: &RlcParams,
    dp: &DriftParams,
    topology: Topology,
    drive: Drive,
    w0: f64,
    cfg: &SimConfig,
) -> Result<Vec<NonlinearSample>> {
    p.validate()?;
    dp.validate()?;
    cfg.validate()?;
    if cfg.method != Method::Rk4 {
        return Err(Error::InvalidParam {
            field: "method",
            reason: "nonlinear simulation requires rk4".into(),
        });
    }
    crate::memristor::memristance(dp, w0)?;

    let memristance = |w: f64| {
        let x = (w / dp.d_width).clamp(0.0, 1.0);
        dp.r_on * x + dp.r_off * (1.0 - x)
    };
    let window = |w: f64| {
        let x = (w / dp.d_width).clamp(0.0, 1.0);
        crate::memristor::window(x, dp.window_kind, dp.p_window).unwrap_or(0.0)
    };
    let device_current = |x: &[f64]| match topology {
        Topology::Series => x[1],
        Topology::Parallel => x[0] / memristance(x[2]),
    };
    let gain = dp.drift_gain();
    let mut rhs = |t: f64, x: &[f64]| {
        let u = drive.at(t);
        let rm = memristance(x[2]);
        let i_m = device_current(x);
        let (dv, di) = match topology {
            Topology::Series => (x[1] / p.c_cap, (u - x[0] - (p.r + rm) * x[1]) / p.l),
            Topology::Parallel => ((u - x[0] / p.r - i_m - x[1]) / p.c_cap, x[0] / p.l),
        };
        vec![dv, di, gain * i_m * window(x[2]), i_m]
    };

    let steps = cfg.steps();
    let mut out = Vec::with_capacity(steps + 1);
    let mut x = vec![0.0, 0.0, w0, 0.0];
    for k in 0..=steps {
        let t = k as f64 * cfg.dt;
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Integration {
                t,
                reason: "non-finite circuit state".into(),
                state: x,
            });
        }
        out.push(NonlinearSample {
            t,
            v_c: x[0],
            i_l: x[1],
            w: x[2],
            r_m: memristance(x[2]),
            i_m: device_current(&x),
            q: x[3],
        });
        if k == steps {
            break;
        }
        x = rk4_step(&mut rhs, t, &x, cfg.dt);
        x[2] = clamp_w(dp, x[2], t + cfg.dt, &x)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResponseKind {
    Step,
    Impulse,
}

/// Transient performance figures of a step or impulse response.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseMetrics {
    pub peak_amplitude: f64,
    pub peak_time: f64,
    /// `None` for impulse responses and for steps settling at zero.
    pub overshoot_pct: Option<f64>,
    /// 10 %→90 % rise time; `None` when undefined.
    pub rise_time: Option<f64>,
    pub settling_time: f64,
    pub final_value: f64,
}

/// Fraction of trailing samples averaged into the final value.
pub const FINAL_VALUE_FRACTION: f64 = 0.05;

/// Settling band as a fraction of the peak deviation.
pub const SETTLING_BAND: f64 = 0.02;

const MIN_SAMPLES: usize = 10;

/// Linearly interpolated time at which `g` first reaches `level`.
fn first_crossing(w: &Waveform, g: impl Fn(f64) -> f64, level: f64) -> Option<f64> {
    let s = &w.samples;
    if g(s[0]) >= level {
        return Some(w.time_at(0));
    }
    (1..s.len()).find(|&k| g(s[k]) >= level).map(|k| {
        let (a, b) = (g(s[k - 1]), g(s[k]));
        w.time_at(k - 1) + w.dt * (level - a) / (b - a)
    })
}

/// Last time `dev` exceeds `band`, interpolated to the exit of the band.
fn last_exit(w: &Waveform, dev: impl Fn(f64) -> f64, band: f64) -> f64 {
    let s = &w.samples;
    match (0..s.len()).rev().find(|&k| dev(s[k]) > band) {
        None => w.time_at(0),
        Some(k) if k + 1 == s.len() => w.time_at(k),
        Some(k) => {
            let (a, b) = (dev(s[k]), dev(s[k + 1]));
            w.time_at(k) + w.dt * (a - band) / (a - b)
        }
    }
}

/// Peak, overshoot, rise, settling and final value of a response.
///
/// The final value is the mean of the trailing 5 % of samples. The step
/// settling time is the last time `|y − final|` leaves a band of 2 % of the
/// largest such deviation; for a response starting at zero and approaching
/// its final value monotonically that band is 2 % of `|final|`. The impulse
/// settling time is the last time `|y|` exceeds 2 % of the peak. Crossing
/// times are interpolated linearly between samples.
pub fn metrics(w: &Waveform, kind: ResponseKind) -> Result<ResponseMetrics> {
    let s = &w.samples;
    if s.len() < MIN_SAMPLES {
        return Err(Error::Domain(format!(
            "need at least {MIN_SAMPLES} samples, got {}",
            s.len()
        )));
    }
    let tail = ((s.len() as f64 * FINAL_VALUE_FRACTION).ceil() as usize).max(1);
    let final_value = s[s.len() - tail..].iter().sum::<f64>() / tail as f64;
    let (peak_idx, peak_amplitude) =
        s.iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (k, y)| {
                if y.abs() > best.1 {
                    (k, y.abs())
                } else {
                    best
                }
            });
    let peak_time = w.time_at(peak_idx);

    match kind {
        ResponseKind::Step => {
            let max_dev = s
                .iter()
                .map(|y| (y - final_value).abs())
                .fold(0.0, f64::max);
            let settling_time = last_exit(w, |y| (y - final_value).abs(), SETTLING_BAND * max_dev);
            if final_value.abs() < 1e-12 {
                return Ok(ResponseMetrics {
                    peak_amplitude,
                    peak_time,
                    overshoot_pct: None,
                    rise_time: None,
                    settling_time,
                    final_value,
                });
            }
            let dir = final_value.signum();
            let overshoot = ((peak_amplitude - final_value) / final_value.abs()).max(0.0) * 100.0;
            let along = |y: f64| y * dir;
            let rise_time = match (
                first_crossing(w, along, 0.1 * final_value.abs()),
                first_crossing(w, along, 0.9 * final_value.abs()),
            ) {
                (Some(lo), Some(hi)) => Some(hi - lo),
                _ => None,
            };
            Ok(ResponseMetrics {
                peak_amplitude,
                peak_time,
                overshoot_pct: Some(overshoot),
                rise_time,
                settling_time,
                final_value,
            })
        }
        ResponseKind::Impulse => Ok(ResponseMetrics {
            peak_amplitude,
            peak_time,
            overshoot_pct: None,
            rise_time: None,
            settling_time: last_exit(w, f64::abs, SETTLING_BAND * peak_amplitude),
            final_value,
        }),
    }
}
