//! Human-readable reports. Every value is printed with six significant
//! digits as `name: value`, one per line.

use std::fmt::Write as _;

use rlcm::analysis::{
    classify_stability, eig_parallel_closed, eig_series_closed, minimal_form, transfer_function,
    StabilityClass, DEFAULT_CANCEL_TOL, DEFAULT_STABILITY_TOL,
};
use rlcm::circuits::{build, Topology};
use rlcm::lin_small::eigenvalues;
use rlcm::transient::ResponseMetrics;
use rlcm::{fmt_complex, fmt_sig, ComplexScalar};

use crate::config::Circuit;

/// Comma-separated roots, listing the upper member of each conjugate pair
/// first.
pub fn fmt_roots(roots: &[ComplexScalar]) -> String {
    if roots.is_empty() {
        return "none".into();
    }
    let mut ordered = Vec::with_capacity(roots.len());
    let mut k = 0;
    while k < roots.len() {
        if k + 1 < roots.len() && roots[k].im < 0.0 && roots[k + 1] == roots[k].conj() {
            ordered.extend([roots[k + 1], roots[k]]);
            k += 2;
        } else {
            ordered.push(roots[k]);
            k += 1;
        }
    }
    ordered
        .into_iter()
        .map(fmt_complex)
        .collect::<Vec<_>>()
        .join(", ")
}

fn zeros_line(zeros: &[ComplexScalar]) -> String {
    let label = if zeros.len() == 1 { "zero" } else { "zeros" };
    format!("{label}: {}", fmt_roots(zeros))
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "n/a".into(), fmt_sig)
}

pub fn metrics_report(m: &ResponseMetrics) -> String {
    format!(
        "peak_amplitude: {}\npeak_time: {}\novershoot_pct: {}\nrise_time: {}\nsettling_time: {}\nfinal_value: {}\n",
        fmt_sig(m.peak_amplitude),
        fmt_sig(m.peak_time),
        opt(m.overshoot_pct),
        opt(m.rise_time),
        fmt_sig(m.settling_time),
        fmt_sig(m.final_value),
    )
}

pub fn circuit_header(c: &Circuit) -> String {
    let p = &c.params;
    format!(
        "circuit: {} ({})\nr: {}\nl: {}\nc: {}\nr_m: {}\noutput_scale: {}\n",
        c.label,
        c.topology,
        fmt_sig(p.r),
        fmt_sig(p.l),
        fmt_sig(p.c_cap),
        fmt_sig(p.r_m),
        fmt_sig(c.output_scale),
    )
}

/// Eigenvalues by both routes, verdict, transfer function and pole-zero
/// map before and after cancellation.
pub fn analyze(c: &Circuit) -> anyhow::Result<(String, StabilityClass)> {
    let ss = build(c.topology, &c.params)?;
    let closed = match c.topology {
        Topology::Series => eig_series_closed(&c.params)?,
        Topology::Parallel => eig_parallel_closed(&c.params)?,
    };
    let qr = eigenvalues(&ss.a)?;
    let verdict = classify_stability(&qr, DEFAULT_STABILITY_TOL)?;
    let tf = transfer_function(&ss, c.output_scale)?;
    let min = minimal_form(&tf, DEFAULT_CANCEL_TOL)?;

    let mut out = circuit_header(c);
    let _ = writeln!(out, "eigenvalues (closed form): {}", fmt_roots(&closed));
    let _ = writeln!(out, "eigenvalues (qr): {}", fmt_roots(&qr));
    let _ = writeln!(out, "verdict: {}", verdict.class);
    let _ = writeln!(out, "max real part: {}", fmt_sig(verdict.max_real_part));
    let _ = writeln!(out, "transfer function: {tf}");
    let _ = writeln!(out, "poles: {}", fmt_roots(&tf.poles));
    let _ = writeln!(out, "{}", zeros_line(&tf.zeros));
    let _ = writeln!(
        out,
        "dc gain: {}",
        tf.dc_gain.map_or_else(|| "inf".into(), fmt_sig)
    );
    let _ = writeln!(out, "minimal: {min}");
    let _ = writeln!(out, "minimal poles: {}", fmt_roots(&min.poles));
    let _ = writeln!(out, "minimal {}", zeros_line(&min.zeros));
    Ok((out, verdict.class))
}
