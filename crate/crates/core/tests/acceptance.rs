//! Acceptance suite: one line per criterion, all must pass.
//!
//! Run with `cargo test -p rlcm --test acceptance -- --nocapture` to see
//! the report.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use nalgebra::{Complex, Matrix2, Vector2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rlcm::analysis::{
    classify_stability, eig_parallel_closed, eig_series_closed, transfer_function, StabilityClass,
    DEFAULT_STABILITY_TOL,
};
use rlcm::circuits::{build, build_parallel, build_series, preset, CircuitParams, RlcParams};
use rlcm::lin_small::{eig_2x2, eigenvalues, resolvent_tf, Matrix};
use rlcm::memristor::{
    memristance, run_hysteresis, steady_loop_area, DriftParams, SineDrive, WindowKind,
};
use rlcm::transient::{
    impulse_response, metrics, simulate_rlcm_nonlinear, step_response, Drive, Method, ResponseKind,
    SimConfig,
};
use rlcm::ComplexScalar;

type Check = fn(&mut Criterion);

/// Collects named checks for one criterion.
struct Criterion {
    failures: Vec<String>,
}

impl Criterion {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
        }
    }

    fn within(&mut self, what: &str, got: f64, want: f64, tol: f64) {
        if (got - want).abs() > tol || got.is_nan() {
            self.failures
                .push(format!("{what} = {got} (want {want} ± {tol})"));
        }
    }

    fn check(&mut self, what: &str, ok: bool) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    fn runtime(&mut self, elapsed: Duration, limit: Duration) {
        if elapsed >= limit {
            self.failures
                .push(format!("runtime {elapsed:?} ≥ {limit:?}"));
        }
    }
}

fn zoh(dt: f64, t_end: f64) -> SimConfig {
    SimConfig::new(dt, t_end, Method::ZohExact).unwrap()
}

fn table_parallel_column(c: &mut Criterion) {
    let start = Instant::now();
    let p = preset("paper-parallel").unwrap();
    let ss = p.state_space();
    let step = metrics(
        &step_response(&ss, p.output_scale, &zoh(1e-3, 10.0)).unwrap(),
        ResponseKind::Step,
    )
    .unwrap();
    c.within("final value", step.final_value, 1.00, 0.005);
    c.within("overshoot %", step.overshoot_pct.unwrap(), 0.00, 0.1);
    c.within("rise time", step.rise_time.unwrap(), 2.20, 0.02);
    c.within(
        "rise time vs ln 9",
        step.rise_time.unwrap(),
        9f64.ln(),
        0.02,
    );
    c.within("settling time", step.settling_time, 3.91, 0.02);
    c.within(
        "settling time vs ln 50",
        step.settling_time,
        50f64.ln(),
        0.02,
    );

    let short = metrics(
        &step_response(&ss, p.output_scale, &zoh(1e-3, 6.0)).unwrap(),
        ResponseKind::Step,
    )
    .unwrap();
    c.within(
        "peak amplitude (t_end = 6)",
        short.peak_amplitude,
        0.99,
        0.01,
    );
    c.within("peak time (t_end = 6)", short.peak_time, 6.0, 0.01);

    let imp = metrics(
        &impulse_response(&ss, p.output_scale, &zoh(1e-3, 10.0)).unwrap(),
        ResponseKind::Impulse,
    )
    .unwrap();
    c.within("impulse peak", imp.peak_amplitude, 1.00, 0.005);
    c.within("impulse settling", imp.settling_time, 3.91, 0.02);
    c.runtime(start.elapsed(), Duration::from_secs(1));
}

fn table_series_column(c: &mut Criterion) {
    let start = Instant::now();
    let p = preset("paper-series").unwrap();
    let ss = p.state_space();
    let step = metrics(
        &step_response(&ss, p.output_scale, &zoh(1e-3, 10.0)).unwrap(),
        ResponseKind::Step,
    )
    .unwrap();
    c.within("final value", step.final_value, 0.10, 0.005);
    c.within("overshoot %", step.overshoot_pct.unwrap(), 177.0, 2.0);
    c.within("peak amplitude", step.peak_amplitude, 0.27, 0.01);
    c.within(
        "peak amplitude vs closed form",
        step.peak_amplitude,
        0.1 + 0.3 * (-PI / 6.0).exp(),
        1e-6,
    );
    c.within("peak time vs π/6", step.peak_time, PI / 6.0, 0.005);
    c.within("rise time", step.rise_time.unwrap(), 0.08, 0.01);
    c.within("settling time", step.settling_time, 4.06, 0.1);

    let imp = metrics(
        &impulse_response(&ss, p.output_scale, &zoh(1e-3, 10.0)).unwrap(),
        ResponseKind::Impulse,
    )
    .unwrap();
    c.within("impulse peak", imp.peak_amplitude, 1.00, 0.005);
    c.within("impulse settling", imp.settling_time, 3.44, 0.1);
    c.runtime(start.elapsed(), Duration::from_secs(1));
}

fn pole_zero_agreement(c: &mut Criterion) {
    let p = preset("paper-series").unwrap();
    let ss = p.state_space();
    let expected = [
        ComplexScalar::new(-1.0, -3.0),
        ComplexScalar::new(-1.0, 3.0),
    ];
    let closed = eig_series_closed(&p.params).unwrap();
    let two = eig_2x2(&ss.a).unwrap();
    let qr = eigenvalues(&ss.a).unwrap();
    for (name, route) in [
        ("closed form", &closed[..]),
        ("2x2", &two[..]),
        ("QR", &qr[..]),
    ] {
        for (got, want) in route.iter().zip(&expected) {
            c.check(
                &format!("{name} pole {got} vs {want}"),
                (got - want).norm() <= 1e-9,
            );
        }
    }
    for k in 0..2 {
        c.check("closed vs 2x2", (closed[k] - two[k]).norm() <= 1e-8);
        c.check("closed vs QR", (closed[k] - qr[k]).norm() <= 1e-8);
        c.check("2x2 vs QR", (two[k] - qr[k]).norm() <= 1e-8);
    }
    let tf = transfer_function(&ss, p.output_scale).unwrap();
    c.check("one zero", tf.zeros.len() == 1);
    c.check(
        "zero at -1",
        (tf.zeros[0] - ComplexScalar::new(-1.0, 0.0)).norm() <= 1e-9,
    );
    for (got, want) in tf.poles.iter().zip(&expected) {
        c.check("transfer-function pole", (got - want).norm() <= 1e-9);
    }
}

fn random_stability(c: &mut Criterion) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut draw = || 10f64.powf(rng.random_range(-3.0..=3.0));
    let mut stable = 0usize;
    let mut total = 0usize;
    for _ in 0..10_000 {
        let p = CircuitParams::new(draw(), draw(), draw(), draw()).unwrap();
        for ss in [build_series(&p).unwrap(), build_parallel(&p).unwrap()] {
            let v =
                classify_stability(&eigenvalues(&ss.a).unwrap(), DEFAULT_STABILITY_TOL).unwrap();
            total += 1;
            if v.class == StabilityClass::Stable && v.max_real_part < 0.0 {
                stable += 1;
            }
        }
        // the closed forms must agree on the verdict
        for e in [
            eig_series_closed(&p).unwrap(),
            eig_parallel_closed(&p).unwrap(),
        ] {
            c.check(
                "closed-form eigenvalues in left half-plane",
                e.iter().all(|z| z.re < 0.0),
            );
        }
    }
    c.check(&format!("{stable}/{total} stable"), stable == total);
    c.runtime(start.elapsed(), Duration::from_secs(5));
}

fn oracle_equivalence(c: &mut Criterion) {
    for name in ["paper-series", "paper-parallel"] {
        let p = preset(name).unwrap();
        let ss = p.state_space();
        let exact = step_response(&ss, p.output_scale, &zoh(1e-3, 10.0)).unwrap();
        let rk4 = step_response(
            &ss,
            p.output_scale,
            &SimConfig::new(1e-5, 10.0, Method::Rk4).unwrap(),
        )
        .unwrap();
        let scale = exact.samples.iter().fold(0.0f64, |m, y| m.max(y.abs()));
        let worst = exact
            .samples
            .iter()
            .enumerate()
            .map(|(k, y)| (y - rk4.samples[100 * k]).abs())
            .fold(0.0, f64::max);
        c.check(
            &format!("{name}: ZOH vs RK4 rel {:e}", worst / scale),
            worst <= 1e-6 * scale,
        );

        let gain = transfer_function(&ss, p.output_scale)
            .unwrap()
            .dc_gain
            .unwrap();
        let long = metrics(
            &step_response(&ss, p.output_scale, &zoh(1e-3, 30.0)).unwrap(),
            ResponseKind::Step,
        )
        .unwrap();
        c.within(
            &format!("{name}: final value vs dc gain"),
            long.final_value,
            gain,
            1e-6,
        );
    }
}

fn transfer_function_correctness(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let a: Vec<f64> = (0..4).map(|_| rng.random_range(-5.0..5.0)).collect();
        let b: Vec<f64> = (0..2).map(|_| rng.random_range(-2.0..2.0)).collect();
        let cr: Vec<f64> = (0..2).map(|_| rng.random_range(-2.0..2.0)).collect();
        let tf = resolvent_tf(
            &Matrix::new(2, 2, a.clone()).unwrap(),
            &Matrix::column(&b),
            &Matrix::row(&cr),
            0.0,
        )
        .unwrap();
        let na = Matrix2::new(a[0], a[1], a[2], a[3]).map(|x| Complex::new(x, 0.0));
        let nb = Vector2::new(b[0], b[1]).map(|x| Complex::new(x, 0.0));
        let nc = Vector2::new(cr[0], cr[1]).map(|x| Complex::new(x, 0.0));
        let poles = eig_2x2(&Matrix::new(2, 2, a).unwrap()).unwrap();
        let mut evaluated = 0;
        while evaluated < 16 {
            let s = ComplexScalar::new(rng.random_range(-6.0..6.0), rng.random_range(-6.0..6.0));
            if poles.iter().any(|p| (p - s).norm() < 1e-2) {
                continue;
            }
            let sn = Complex::new(s.re, s.im);
            let x = (Matrix2::identity() * sn - na).lu().solve(&nb).unwrap();
            let direct = nc.dot(&x);
            if direct.norm() < 1e-6 {
                continue;
            }
            let got = tf.eval(s);
            worst =
                worst.max((got - ComplexScalar::new(direct.re, direct.im)).norm() / direct.norm());
            evaluated += 1;
        }
    }
    c.check(&format!("worst relative error {worst:e}"), worst <= 1e-9);
}

fn memristor_fingerprints(c: &mut Criterion) {
    let start = Instant::now();
    let dp = DriftParams::default();
    let w0 = 0.1 * dp.d_width;
    let amplitude = 1e-4;
    let steps = 1000;
    let omega = 2.0 * PI;
    let area = |mult: f64, c: &mut Criterion| {
        let drive = SineDrive::new(amplitude, mult * omega, 0.0).unwrap();
        let run = run_hysteresis(&dp, &drive, w0, steps, 3).unwrap();
        let zeros: Vec<_> = run
            .iter()
            .filter(|s| s.i.abs() < amplitude * 1e-12)
            .collect();
        c.check("current zeros sampled", !zeros.is_empty());
        for s in zeros {
            c.check("pinched at i = 0", s.v.abs() < 1e-9 * dp.r_off * amplitude);
        }
        steady_loop_area(&run, steps)
    };
    let a1 = area(1.0, c);
    let a2 = area(2.0, c);
    let a4 = area(4.0, c);
    let a100 = area(100.0, c);
    c.check(&format!("area(ω) {a1:e} > area(2ω) {a2:e}"), a1 > a2);
    c.check(&format!("area(2ω) {a2:e} > area(4ω) {a4:e}"), a2 > a4);
    c.check(
        &format!("area(100ω)/area(ω) = {:.5} < 0.01", a100 / a1),
        a100 < 0.01 * a1,
    );
    c.check(
        "Joglekar window in use",
        dp.window_kind == WindowKind::Joglekar,
    );
    c.runtime(start.elapsed(), Duration::from_secs(2));
}

fn nonlinear_reduction(c: &mut Criterion) {
    for name in ["paper-series", "paper-parallel"] {
        let p = preset(name).unwrap();
        let r_m = p.params.r_m;
        let dp = DriftParams {
            r_on: 0.2 * r_m,
            r_off: 5.0 * r_m,
            mobility: 0.0,
            ..DriftParams::default()
        };
        let w0 = 0.3 * dp.d_width;
        let frozen_rm = memristance(&dp, w0).unwrap();
        let base = RlcParams::from(p.params);
        let run = simulate_rlcm_nonlinear(
            &base,
            &dp,
            p.topology,
            Drive::Step { amplitude: 1.0 },
            w0,
            &SimConfig::new(1e-3, 10.0, Method::Rk4).unwrap(),
        )
        .unwrap();
        let lti = step_response(
            &build(p.topology, &base.with_memristance(frozen_rm).unwrap()).unwrap(),
            1.0,
            &zoh(1e-3, 10.0),
        )
        .unwrap();
        let worst = run
            .iter()
            .zip(&lti.samples)
            .map(|(s, y)| (s.output() - y).abs())
            .fold(0.0, f64::max);
        c.check(&format!("{name}: max deviation {worst:e}"), worst <= 1e-8);
    }
}

#[test]
fn acceptance() {
    let criteria: [(&str, Check); 8] = [
        (
            "1 parallel column of the performance table",
            table_parallel_column,
        ),
        (
            "2 series column of the performance table",
            table_series_column,
        ),
        ("3 pole-zero three-way agreement", pole_zero_agreement),
        ("4 stability over 10,000 random circuits", random_stability),
        ("5 ZOH / RK4 oracle equivalence", oracle_equivalence),
        (
            "6 transfer function vs direct resolvent",
            transfer_function_correctness,
        ),
        ("7 memristor fingerprints", memristor_fingerprints),
        ("8 frozen-memristor reduction", nonlinear_reduction),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let mut c = Criterion::new();
        run(&mut c);
        if c.failures.is_empty() {
            println!("[PASS] {name}");
        } else {
            failed += 1;
            println!("[FAIL] {name}");
            for f in &c.failures {
                println!("       {f}");
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
