/// One classical fourth-order Runge–Kutta step of `ẋ = f(t, x)`.
pub(crate) fn rk4_step<F>(f: &mut F, t: f64, x: &[f64], h: f64) -> Vec<f64>
where
    F: FnMut(f64, &[f64]) -> Vec<f64>,
{
    let axpy =
        |k: &[f64], s: f64| -> Vec<f64> { x.iter().zip(k).map(|(a, b)| a + s * b).collect() };
    let k1 = f(t, x);
    let k2 = f(t + 0.5 * h, &axpy(&k1, 0.5 * h));
    let k3 = f(t + 0.5 * h, &axpy(&k2, 0.5 * h));
    let k4 = f(t + h, &axpy(&k3, h));
    x.iter()
        .enumerate()
        .map(|(i, xi)| xi + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect()
}
