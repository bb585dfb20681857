use num_complex::Complex64;

use super::matrix::Matrix;
use super::poly::Polynomial;
use crate::error::{Error, Result};

/// Numerator/denominator pair of a rational function of `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyRatio {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl PolyRatio {
    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.num.eval_complex(s) / self.den.eval_complex(s)
    }
}

/// Characteristic polynomial `det(sI − A)` and the adjugate coefficient
/// matrices `M₁..Mₙ` with `adj(sI − A) = Σ Mₖ s^(n−k)`, by the
/// Faddeev–LeVerrier trace recursion.
pub fn faddeev_leverrier(a: &Matrix) -> Result<(Polynomial, Vec<Matrix>)> {
    let n = a.require_square("state matrix")?;
    let id = Matrix::identity(n);
    // char_desc[k] is the coefficient of s^(n−k)
    let mut char_desc = vec![1.0];
    let mut adj = Vec::with_capacity(n);
    let mut m_prev = Matrix::zeros(n, n);
    for k in 1..=n {
        let mk = (a * &m_prev).add(&id.scale(char_desc[k - 1]))?;
        let ck = -(a * &mk).trace() / k as f64;
        char_desc.push(ck);
        adj.push(mk.clone());
        m_prev = mk;
    }
    char_desc.reverse();
    Ok((Polynomial::new(char_desc), adj))
}

/// `C (sI − A)⁻¹ B + D` as a ratio of polynomials. The denominator is the
/// characteristic polynomial of `A` (no cancellation is attempted).
pub fn resolvent_tf(a: &Matrix, b: &Matrix, c_out: &Matrix, d: f64) -> Result<PolyRatio> {
    let n = a.require_square("state matrix")?;
    if b.rows() != n || b.cols() != 1 {
        return Err(Error::Dimension(format!(
            "input matrix must be {n}x1, got {}x{}",
            b.rows(),
            b.cols()
        )));
    }
    if c_out.rows() != 1 || c_out.cols() != n {
        return Err(Error::Dimension(format!(
            "output matrix must be 1x{n}, got {}x{}",
            c_out.rows(),
            c_out.cols()
        )));
    }
    let (den, adj) = faddeev_leverrier(a)?;
    // numerator coefficient of s^(n−k) is C·Mₖ·B, plus D·det(sI − A)
    let mut num = vec![0.0; n + 1];
    for (k, mk) in adj.iter().enumerate() {
        let cmb = (&(c_out * mk) * b)[(0, 0)];
        num[n - (k + 1)] = cmb;
    }
    for (nc, dc) in num.iter_mut().zip(den.coeffs()) {
        *nc += d * dc;
    }
    Ok(PolyRatio {
        num: Polynomial::new(num),
        den,
    })
}
