use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Padé order of the rational core.
const PADE_ORDER: usize = 8;

/// The scaled operand satisfies `‖m‖₁ / 2^k ≤ SCALE_TARGET`.
const SCALE_TARGET: f64 = 0.5;

/// Matrix exponential by scaling and squaring around a diagonal Padé
/// approximant.
pub fn expm(m: &Matrix) -> Result<Matrix> {
    let n = m.require_square("expm operand")?;
    if !m.is_finite() {
        return Err(Error::Domain("expm of a non-finite matrix".into()));
    }
    if n == 0 {
        return Ok(Matrix::zeros(0, 0));
    }

    let norm = m.norm1();
    let squarings = if norm > SCALE_TARGET {
        (norm / SCALE_TARGET).log2().ceil() as i32
    } else {
        0
    };
    let x = m.scale(0.5f64.powi(squarings));

    let coeffs = pade_coefficients(PADE_ORDER);
    let id = Matrix::identity(n);
    let mut numer = id.scale(coeffs[0]);
    let mut denom = id.scale(coeffs[0]);
    let mut power = id;
    for (k, ck) in coeffs.iter().enumerate().skip(1) {
        power = &power * &x;
        let term = power.scale(*ck);
        numer = numer.add(&term)?;
        denom = if k % 2 == 0 {
            denom.add(&term)?
        } else {
            denom.sub(&term)?
        };
    }
    let mut result = denom.solve(&numer)?;
    for _ in 0..squarings {
        result = &result * &result;
    }
    if !result.is_finite() {
        return Err(Error::Domain("matrix exponential overflowed".into()));
    }
    Ok(result)
}

/// `c_k = (2q − k)! q! / ((2q)! k! (q − k)!)` for `k = 0..=q`.
fn pade_coefficients(q: usize) -> Vec<f64> {
    let mut c = Vec::with_capacity(q + 1);
    c.push(1.0);
    for k in 1..=q {
        let prev = c[k - 1];
        c.push(prev * (q + 1 - k) as f64 / (k * (2 * q + 1 - k)) as f64);
    }
    c
}
