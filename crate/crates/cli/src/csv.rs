//! Plain CSV in and out. Numbers use Rust's shortest round-trip formatting,
//! so a written file reloads bit for bit.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context};
use rlcm::memristor::HysteresisSample;
use rlcm::transient::Waveform;

pub const WAVEFORM_HEADER: &str = "t,y";
pub const HYSTERESIS_HEADER: &str = "t,i,v,q,phi,w";
pub const SWEEP_HEADER: &str = "value,max_real_eig,verdict";

pub fn waveform_csv(w: &Waveform) -> String {
    let mut out = String::with_capacity(32 * w.len());
    out.push_str(WAVEFORM_HEADER);
    out.push('\n');
    for (t, y) in w.times().zip(&w.samples) {
        let _ = writeln!(out, "{t},{y}");
    }
    out
}

pub fn hysteresis_csv(samples: &[HysteresisSample]) -> String {
    let mut out = String::with_capacity(96 * samples.len());
    out.push_str(HYSTERESIS_HEADER);
    out.push('\n');
    for s in samples {
        let _ = writeln!(out, "{},{},{},{},{},{}", s.t, s.i, s.v, s.q, s.phi, s.w);
    }
    out
}

/// Parses a `t,y` file back into a uniformly sampled waveform.
pub fn parse_waveform(text: &str) -> anyhow::Result<Waveform> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == WAVEFORM_HEADER => {}
        other => bail!("expected header `{WAVEFORM_HEADER}`, got {other:?}"),
    }
    let mut t = Vec::new();
    let mut y = Vec::new();
    for (n, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let (a, b) = line
            .split_once(',')
            .with_context(|| format!("line {}: expected two columns", n + 2))?;
        t.push(
            a.trim()
                .parse::<f64>()
                .with_context(|| format!("line {}: bad t", n + 2))?,
        );
        y.push(
            b.trim()
                .parse::<f64>()
                .with_context(|| format!("line {}: bad y", n + 2))?,
        );
    }
    if t.len() < 2 {
        bail!("need at least two samples, got {}", t.len());
    }
    Ok(Waveform::new(t[0], t[1] - t[0], y)?)
}

pub fn write_file(path: &Path, contents: &str) -> anyhow::Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn waveform_round_trip_is_exact() {
        let w = Waveform::new(
            0.0,
            1e-3,
            (0..50).map(|k| (k as f64 * 0.37).sin() / 3.0).collect(),
        )
        .unwrap();
        let back = parse_waveform(&waveform_csv(&w)).unwrap();
        assert_eq!(back.samples, w.samples);
        assert_eq!(back.dt, w.dt);
        assert_eq!(back.t0, w.t0);
    }

    #[test]
    fn rejects_wrong_header() {
        assert!(parse_waveform("time,y\n0,1\n1,2\n").is_err());
    }
}
