//! Eigenvalues, stability verdicts, transfer functions and pole-zero maps.

use std::fmt;

use crate::circuits::{CircuitParams, StateSpace};
use crate::error::{Error, Result};
use crate::lin_small::{poly_roots, resolvent_tf, sort_complex, ComplexScalar, Polynomial};

/// Half-width of the band around zero classified as marginal.
pub const DEFAULT_STABILITY_TOL: f64 = 1e-9;

/// Pole/zero pairs closer than this are cancelled by [`minimal_form`].
pub const DEFAULT_CANCEL_TOL: f64 = 1e-9;

/// Roots of `s² + b s + c` in closed form, with the smaller-magnitude real
/// root recovered from the product of roots.
fn monic_quadratic_roots(b: f64, c: f64) -> [ComplexScalar; 2] {
    let half = 0.5 * b;
    let disc = half * half - c;
    let mut roots = if disc >= 0.0 {
        let big = -half - half.signum() * disc.sqrt();
        if big == 0.0 {
            [ComplexScalar::new(0.0, 0.0); 2]
        } else {
            [
                ComplexScalar::new(big, 0.0),
                ComplexScalar::new(c / big, 0.0),
            ]
        }
    } else {
        let im = (-disc).sqrt();
        [
            ComplexScalar::new(-half, -im),
            ComplexScalar::new(-half, im),
        ]
    };
    sort_complex(&mut roots);
    roots
}

/// Series circuit eigenvalues
/// `λ = −(r+r_m)/(2l) ± √(((r+r_m)/(2l))² − 1/(l·c))`.
pub fn eig_series_closed(p: &CircuitParams) -> Result<[ComplexScalar; 2]> {
    p.validate()?;
    Ok(monic_quadratic_roots(
        (p.r + p.r_m) / p.l,
        1.0 / (p.l * p.c_cap),
    ))
}

/// Parallel circuit eigenvalues `λ = (−a ± √(a² − 4/(l·c)))/2` with
/// `a = 1/(r·c) + 1/(r_m·c)`.
pub fn eig_parallel_closed(p: &CircuitParams) -> Result<[ComplexScalar; 2]> {
    p.validate()?;
    let a = 1.0 / (p.r * p.c_cap) + 1.0 / (p.r_m * p.c_cap);
    Ok(monic_quadratic_roots(a, 1.0 / (p.l * p.c_cap)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityClass {
    Stable,
    Marginal,
    Unstable,
}

impl fmt::Display for StabilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabilityClass::Stable => "Stable",
            StabilityClass::Marginal => "Marginal",
            StabilityClass::Unstable => "Unstable",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityVerdict {
    pub class: StabilityClass,
    pub eigenvalues: Vec<ComplexScalar>,
    pub max_real_part: f64,
}

pub fn classify_stability(eigs: &[ComplexScalar], tol: f64) -> Result<StabilityVerdict> {
    if eigs.is_empty() {
        return Err(Error::Domain("no eigenvalues to classify".into()));
    }
    let max_real_part = eigs.iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max);
    let class = if max_real_part < -tol {
        StabilityClass::Stable
    } else if max_real_part.abs() <= tol {
        StabilityClass::Marginal
    } else {
        StabilityClass::Unstable
    };
    let mut eigenvalues = eigs.to_vec();
    sort_complex(&mut eigenvalues);
    Ok(StabilityVerdict {
        class,
        eigenvalues,
        max_real_part,
    })
}

/// Rational transfer function with its pole-zero map.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalTF {
    pub num: Polynomial,
    pub den: Polynomial,
    /// Roots of `den` with multiplicity.
    pub poles: Vec<ComplexScalar>,
    /// Roots of `num` with multiplicity.
    pub zeros: Vec<ComplexScalar>,
    /// `num(0)/den(0)`, or `None` when the denominator vanishes at `s = 0`.
    pub dc_gain: Option<f64>,
}

fn roots_or_empty(p: &Polynomial) -> Result<Vec<ComplexScalar>> {
    match p.degree() {
        None | Some(0) => Ok(Vec::new()),
        Some(_) => poly_roots(p),
    }
}

impl RationalTF {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Degenerate("zero denominator".into()));
        }
        let poles = roots_or_empty(&den)?;
        let zeros = roots_or_empty(&num)?;
        let d0 = den.eval(0.0);
        let dc_gain = (d0 != 0.0).then(|| num.eval(0.0) / d0);
        Ok(Self {
            num,
            den,
            poles,
            zeros,
            dc_gain,
        })
    }

    pub fn eval(&self, s: ComplexScalar) -> ComplexScalar {
        self.num.eval_complex(s) / self.den.eval_complex(s)
    }
}

impl fmt::Display for RationalTF {
    /// `(s+1)/(s^2+2s+10)`; single-term polynomials are left unparenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Polynomial| {
            let terms = p.coeffs().iter().filter(|c| **c != 0.0).count();
            if terms > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if self.den.degree() == Some(0) && self.den.leading() == 1.0 {
            return write!(f, "{}", self.num);
        }
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

/// `output_scale · C (sI − A)⁻¹ B + D` with poles, zeros and DC gain.
pub fn transfer_function(ss: &StateSpace, output_scale: f64) -> Result<RationalTF> {
    let raw = resolvent_tf(&ss.a, &ss.b, &ss.c_out, ss.d)?;
    RationalTF::new(raw.num.scale(output_scale), raw.den)
}

/// Cancels every zero that lies within `cancel_tol` of a remaining pole and
/// rebuilds the polynomials from the surviving roots.
pub fn minimal_form(tf: &RationalTF, cancel_tol: f64) -> Result<RationalTF> {
    if tf.num.is_zero() {
        return RationalTF::new(Polynomial::zero(), Polynomial::constant(1.0));
    }
    let mut poles = tf.poles.clone();
    let mut zeros = Vec::with_capacity(tf.zeros.len());
    for z in &tf.zeros {
        let nearest = poles
            .iter()
            .enumerate()
            .map(|(k, p)| (k, (p - z).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match nearest {
            Some((k, dist)) if dist < cancel_tol => {
                poles.remove(k);
            }
            _ => zeros.push(*z),
        }
    }
    if zeros.len() == tf.zeros.len() {
        return Ok(tf.clone());
    }
    let den_lead = tf.den.leading();
    let num = Polynomial::from_roots(tf.num.leading() / den_lead, &zeros);
    let den = Polynomial::from_roots(1.0, &poles);
    RationalTF::new(num, den)
}
