use std::fmt;

use num_complex::Complex64;

use super::eigen::{eigenvalues, roots_quadratic, sort_complex};
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Real polynomial with coefficients in ascending degree order.
///
/// Trailing (highest-degree) zeros are stripped on construction, so the
/// leading coefficient of a nonzero polynomial is never zero. The zero
/// polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// `lead · Π (s − rᵢ)`; conjugate pairs produce exactly real coefficients.
    pub fn from_roots(lead: f64, roots: &[Complex64]) -> Self {
        let mut acc = vec![Complex64::new(lead, 0.0)];
        for r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); acc.len() + 1];
            for (k, c) in acc.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            acc = next;
        }
        Self::new(acc.into_iter().map(|c| c.re).collect())
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Degenerate(
                "zero polynomial has no monic form".into(),
            ));
        }
        Ok(self.scale(1.0 / self.leading()))
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * s + c)
    }

    pub fn eval_complex(&self, s: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * s + c)
    }
}

/// All complex roots with multiplicity, sorted by `(re, im)`.
///
/// Degrees one and two are solved in closed form; higher degrees go through
/// the eigenvalues of the companion matrix.
pub fn poly_roots(p: &Polynomial) -> Result<Vec<Complex64>> {
    let c = p.coeffs();
    match p.degree() {
        None => Err(Error::Degenerate("zero polynomial has no roots".into())),
        Some(0) => Err(Error::Degenerate("constant polynomial has no roots".into())),
        Some(1) => Ok(vec![Complex64::new(-c[0] / c[1], 0.0)]),
        Some(2) => Ok(roots_quadratic(c[2], c[1], c[0])?.to_vec()),
        Some(n) => {
            let lead = c[n];
            let mut comp = Matrix::zeros(n, n);
            for i in 1..n {
                comp[(i, i - 1)] = 1.0;
            }
            for i in 0..n {
                comp[(i, n - 1)] = -c[i] / lead;
            }
            let mut roots = eigenvalues(&comp)?;
            sort_complex(&mut roots);
            Ok(roots)
        }
    }
}

fn fmt_coeff(c: f64) -> String {
    crate::fmt_sig(c)
}

impl fmt::Display for Polynomial {
    /// Compact descending form such as `s^2+2s+10`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            let mag = c.abs();
            if first {
                if c < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c < 0.0 { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = k == 0 || fmt_coeff(mag) != "1";
            if show_coeff {
                write!(f, "{}", fmt_coeff(mag))?;
            }
            match k {
                0 => {}
                1 => write!(f, "s")?,
                _ => write!(f, "s^{k}")?,
            }
        }
        Ok(())
    }
}
