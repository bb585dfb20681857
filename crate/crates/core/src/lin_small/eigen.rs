//! Eigenvalues of small dense real matrices.
//!
//! Two routes are provided: a closed form for 2×2 matrices (through the
//! characteristic quadratic) and a general solver built on Householder
//! reduction to upper Hessenberg form followed by Francis double-shift QR
//! iteration. Both return eigenvalues sorted lexicographically by
//! `(re, im)`.

use std::cmp::Ordering;

use num_complex::Complex64;

use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Largest matrix order accepted by [`eig_qr`].
pub const MAX_ORDER: usize = 8;

/// Default deflation tolerance for [`eig_qr`].
pub const DEFAULT_QR_TOL: f64 = 1e-12;

/// Absolute gap below which two roots are reported as repeated.
pub const REPEATED_ROOT_TOL: f64 = 1e-9;

/// Lexicographic `(re, im)` ordering.
pub fn cmp_complex(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

pub fn sort_complex(values: &mut [Complex64]) {
    values.sort_by(cmp_complex);
}

/// True when the two roots coincide within [`REPEATED_ROOT_TOL`].
pub fn is_repeated(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < REPEATED_ROOT_TOL
}

/// Both roots of `a·s² + b·s + c`, sorted by `(re, im)`.
///
/// Real roots use the cancellation-free pair `q/a`, `c/q` with
/// `q = −(b + sign(b)·√disc)/2`.
pub fn roots_quadratic(a: f64, b: f64, c: f64) -> Result<[Complex64; 2]> {
    if a == 0.0 {
        return Err(Error::Degenerate(
            "leading coefficient of quadratic is zero".into(),
        ));
    }
    if !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(Error::Domain("non-finite quadratic coefficient".into()));
    }
    let disc = b * b - 4.0 * a * c;
    let mut roots = if disc >= 0.0 {
        let sq = disc.sqrt();
        let q = -0.5 * (b + if b >= 0.0 { sq } else { -sq });
        if q == 0.0 {
            // b == 0 and c == 0
            [Complex64::new(0.0, 0.0); 2]
        } else {
            [Complex64::new(q / a, 0.0), Complex64::new(c / q, 0.0)]
        }
    } else {
        let re = -b / (2.0 * a);
        let im = (-disc).sqrt() / (2.0 * a.abs());
        [Complex64::new(re, -im), Complex64::new(re, im)]
    };
    sort_complex(&mut roots);
    Ok(roots)
}

/// Eigenvalues of a 2×2 matrix as roots of `s² − tr·s + det`.
pub fn eig_2x2(m: &Matrix) -> Result<[Complex64; 2]> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::Dimension(format!(
            "eig_2x2 needs a 2x2 matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_finite() {
        return Err(Error::Domain("non-finite matrix entry".into()));
    }
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    roots_quadratic(1.0, -m.trace(), det)
}

/// All eigenvalues of an `n × n` matrix (`1 ≤ n ≤ 8`) by Hessenberg
/// reduction and shifted QR.
///
/// A subdiagonal entry `h[i+1,i]` is deflated once
/// `|h[i+1,i]| ≤ tol·(|h[i,i]| + |h[i+1,i+1]|)`. `max_iter` bounds the
/// total number of QR sweeps; when it is exhausted the eigenvalues already
/// deflated are returned inside [`Error::IterationLimit`].
pub fn eig_qr(m: &Matrix, max_iter: usize, tol: f64) -> Result<Vec<Complex64>> {
    let n = m.require_square("eig_qr operand")?;
    if n == 0 || n > MAX_ORDER {
        return Err(Error::Dimension(format!(
            "eig_qr supports orders 1..={MAX_ORDER}, got {n}"
        )));
    }
    if !m.is_finite() {
        return Err(Error::Domain("non-finite matrix entry".into()));
    }
    let mut h = m.clone();
    hessenberg_in_place(&mut h);
    let mut eigs = hqr(&mut h, max_iter, tol)?;
    sort_complex(&mut eigs);
    Ok(eigs)
}

/// [`eig_qr`] with the default tolerance and an iteration budget of `100·n`.
pub fn eigenvalues(m: &Matrix) -> Result<Vec<Complex64>> {
    eig_qr(m, 100 * m.rows().max(1), DEFAULT_QR_TOL)
}

/// Householder reduction to upper Hessenberg form (similarity transform).
fn hessenberg_in_place(h: &mut Matrix) {
    let n = h.rows();
    if n < 3 {
        return;
    }
    let mut v = vec![0.0; n];
    for k in 0..n - 2 {
        let norm = (k + 1..n).map(|i| h[(i, k)].powi(2)).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let alpha = if x0 >= 0.0 { -norm } else { norm };
        v.iter_mut().for_each(|x| *x = 0.0);
        for i in k + 1..n {
            v[i] = h[(i, k)];
        }
        v[k + 1] -= alpha;
        let vtv: f64 = v[k + 1..].iter().map(|x| x * x).sum();
        if vtv == 0.0 {
            continue;
        }
        let beta = 2.0 / vtv;
        // H ← (I − β v vᵀ) H
        for j in 0..n {
            let s: f64 = (k + 1..n).map(|i| v[i] * h[(i, j)]).sum();
            for i in k + 1..n {
                h[(i, j)] -= beta * v[i] * s;
            }
        }
        // H ← H (I − β v vᵀ)
        for i in 0..n {
            let s: f64 = (k + 1..n).map(|j| h[(i, j)] * v[j]).sum();
            for j in k + 1..n {
                h[(i, j)] -= beta * s * v[j];
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = 0.0;
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix (eigenvalues only).
fn hqr(a: &mut Matrix, max_iter: usize, tol: f64) -> Result<Vec<Complex64>> {
    let n = a.rows() as isize;
    let at = |a: &Matrix, i: isize, j: isize| a[(i as usize, j as usize)];
    let mut wr = vec![Complex64::new(0.0, 0.0); n as usize];
    let mut found = vec![false; n as usize];
    let mut anorm = 0.0;
    for i in 0..n {
        for j in (i - 1).max(0)..n {
            anorm += at(a, i, j).abs();
        }
    }
    let mut nn = n - 1;
    let mut t = 0.0;
    let mut total_iter = 0usize;
    let (mut x, mut y, mut z, mut w);
    let (mut p, mut q, mut r) = (0.0, 0.0, 0.0);
    let mut s;
    while nn >= 0 {
        let mut its = 0;
        loop {
            let mut l = nn;
            while l > 0 {
                s = at(a, l - 1, l - 1).abs() + at(a, l, l).abs();
                if s == 0.0 {
                    s = anorm;
                }
                if at(a, l, l - 1).abs() <= tol * s {
                    a[(l as usize, (l - 1) as usize)] = 0.0;
                    break;
                }
                l -= 1;
            }
            x = at(a, nn, nn);
            if l == nn {
                wr[nn as usize] = Complex64::new(x + t, 0.0);
                found[nn as usize] = true;
                nn -= 1;
                break;
            }
            y = at(a, nn - 1, nn - 1);
            w = at(a, nn, nn - 1) * at(a, nn - 1, nn);
            if l == nn - 1 {
                p = 0.5 * (y - x);
                q = p * p + w;
                z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    // larger root from the mean, smaller one from the block determinant
                    let ys = y + t;
                    let mid = 0.5 * (x + ys);
                    let big = mid + sign(z, mid);
                    let small = if big != 0.0 { (x * ys - w) / big } else { 0.0 };
                    wr[(nn - 1) as usize] = Complex64::new(big, 0.0);
                    wr[nn as usize] = Complex64::new(small, 0.0);
                } else {
                    wr[nn as usize] = Complex64::new(x + p, -z);
                    wr[(nn - 1) as usize] = Complex64::new(x + p, z);
                }
                found[nn as usize] = true;
                found[(nn - 1) as usize] = true;
                nn -= 2;
                break;
            }
            if total_iter >= max_iter {
                let partial = wr
                    .iter()
                    .zip(&found)
                    .filter(|(_, f)| **f)
                    .map(|(e, _)| *e)
                    .collect();
                return Err(Error::IterationLimit {
                    iterations: total_iter,
                    found: partial,
                });
            }
            if its > 0 && its % 10 == 0 {
                // exceptional shift
                t += x;
                for i in 0..=nn {
                    a[(i as usize, i as usize)] -= x;
                }
                s = at(a, nn, nn - 1).abs() + at(a, nn - 1, nn - 2).abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            total_iter += 1;
            let mut m = nn - 2;
            while m >= l {
                z = at(a, m, m);
                r = x - z;
                s = y - z;
                p = (r * s - w) / at(a, m + 1, m) + at(a, m, m + 1);
                q = at(a, m + 1, m + 1) - z - r - s;
                r = at(a, m + 2, m + 1);
                s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = at(a, m, m - 1).abs() * (q.abs() + r.abs());
                let v = p.abs() * (at(a, m - 1, m - 1).abs() + z.abs() + at(a, m + 1, m + 1).abs());
                if u <= f64::EPSILON * v {
                    break;
                }
                m -= 1;
            }
            for i in m..nn - 1 {
                a[((i + 2) as usize, i as usize)] = 0.0;
                if i != m {
                    a[((i + 2) as usize, (i - 1) as usize)] = 0.0;
                }
            }
            let mut k = m;
            while k < nn {
                if k != m {
                    p = at(a, k, k - 1);
                    q = at(a, k + 1, k - 1);
                    r = 0.0;
                    if k + 1 != nn {
                        r = at(a, k + 2, k - 1);
                    }
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                s = sign((p * p + q * q + r * r).sqrt(), p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            a[(k as usize, (k - 1) as usize)] = -at(a, k, k - 1);
                        }
                    } else {
                        a[(k as usize, (k - 1) as usize)] = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nn {
                        let (ku, k1, j) = (k as usize, (k + 1) as usize, j as usize);
                        p = a[(ku, j)] + q * a[(k1, j)];
                        if k + 1 != nn {
                            let k2 = (k + 2) as usize;
                            p += r * a[(k2, j)];
                            a[(k2, j)] -= p * z;
                        }
                        a[(k1, j)] -= p * y;
                        a[(ku, j)] -= p * x;
                    }
                    let mmin = if nn < k + 3 { nn } else { k + 3 };
                    for i in l..=mmin {
                        let (iu, ku, k1) = (i as usize, k as usize, (k + 1) as usize);
                        p = x * a[(iu, ku)] + y * a[(iu, k1)];
                        if k + 1 != nn {
                            let k2 = (k + 2) as usize;
                            p += z * a[(iu, k2)];
                            a[(iu, k2)] -= p * r;
                        }
                        a[(iu, k1)] -= p * q;
                        a[(iu, ku)] -= p;
                    }
                }
                k += 1;
            }
        }
    }
    Ok(wr)
}
