//! Property tests and independent oracles for the small linear-algebra kernels.

use nalgebra::{Complex, DMatrix, DVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rlcm::lin_small::{
    eig_2x2, eigenvalues, expm, faddeev_leverrier, poly_roots, resolvent_tf, Matrix, Polynomial,
};
use rlcm::ComplexScalar;

fn square(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-5.0f64..5.0, n * n).prop_map(move |d| Matrix::new(n, n, d).unwrap())
}

fn any_square() -> impl Strategy<Value = Matrix> {
    (1usize..=8).prop_flat_map(square)
}

fn to_na(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice())
}

/// Classical RK4 on `ẋ = A x` from `x(0) = e_j`, giving column `j` of `e^{A t}`.
fn rk4_propagator(a: &Matrix, t: f64, h: f64) -> Matrix {
    let n = a.rows();
    let steps = (t / h).round() as usize;
    let mut out = Matrix::zeros(n, n);
    for j in 0..n {
        let mut x = vec![0.0; n];
        x[j] = 1.0;
        for _ in 0..steps {
            let k1 = a.mul_vec(&x);
            let x2: Vec<f64> = x.iter().zip(&k1).map(|(a, b)| a + 0.5 * h * b).collect();
            let k2 = a.mul_vec(&x2);
            let x3: Vec<f64> = x.iter().zip(&k2).map(|(a, b)| a + 0.5 * h * b).collect();
            let k3 = a.mul_vec(&x3);
            let x4: Vec<f64> = x.iter().zip(&k3).map(|(a, b)| a + h * b).collect();
            let k4 = a.mul_vec(&x4);
            for i in 0..n {
                x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
        }
        for i in 0..n {
            out[(i, j)] = x[i];
        }
    }
    out
}

#[test]
fn expm_matches_fine_rk4() {
    let a = Matrix::from_rows(&[[0.0, 1.0], [-10.0, -2.0]]).unwrap();
    let m = a.scale(0.01);
    let e = expm(&m).unwrap();
    // e^{0.01 A} is the flow of ẋ = A x over 0.01 s
    let oracle = rk4_propagator(&a, 0.01, 1e-6);
    for (x, y) in e.as_slice().iter().zip(oracle.as_slice()) {
        assert!((x - y).abs() < 1e-10, "{x} vs {y}");
    }
}

#[test]
fn expm_relative_accuracy_up_to_norm_ten() {
    // diagonalizable test matrix with known spectrum: S diag(λ) S⁻¹
    let s = Matrix::from_rows(&[[1.0, 2.0, 0.0], [0.0, 1.0, -1.0], [1.0, 0.0, 1.0]]).unwrap();
    let s_inv = s.solve(&Matrix::identity(3)).unwrap();
    let base = [-2.5, 0.7, 1.3];
    let unscaled = &(&s * &Matrix::diag(&base)) * &s_inv;
    let k = 9.9 / unscaled.norm1();
    let lambdas = base.map(|l| l * k);
    let m = &(&s * &Matrix::diag(&lambdas)) * &s_inv;
    assert!(m.norm1() <= 10.0 && m.norm1() > 9.0);
    let exact = &(&s * &Matrix::diag(&lambdas.map(f64::exp))) * &s_inv;
    let got = expm(&m).unwrap();
    let err = got.sub(&exact).unwrap().norm1() / exact.norm1();
    assert!(err <= 1e-12, "relative error {err:e}");
}

#[test]
fn resolvent_matches_direct_complex_solve() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=6 {
        for _ in 0..20 {
            let a = Matrix::new(
                n,
                n,
                (0..n * n).map(|_| rng.random_range(-3.0..3.0)).collect(),
            )
            .unwrap();
            let b: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
            let c: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
            let d = rng.random_range(-1.0..1.0);
            let tf = resolvent_tf(&a, &Matrix::column(&b), &Matrix::row(&c), d).unwrap();
            assert_eq!(tf.den.degree(), Some(n));
            assert!(tf.num.degree().is_none_or(|k| k <= n));

            let a_na = to_na(&a).map(|x| Complex::new(x, 0.0));
            let b_na = DVector::from_iterator(n, b.iter().map(|x| Complex::new(*x, 0.0)));
            let c_na = DVector::from_iterator(n, c.iter().map(|x| Complex::new(*x, 0.0)));
            for _ in 0..16 {
                let s = Complex::new(rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0));
                let si = DMatrix::<Complex<f64>>::identity(n, n) * s - &a_na;
                let x = si.lu().solve(&b_na).expect("s is not an eigenvalue");
                let direct = c_na.dot(&x) + d;
                let got = tf.eval(ComplexScalar::new(s.re, s.im));
                let rel = (got - ComplexScalar::new(direct.re, direct.im)).norm()
                    / direct.norm().max(1e-3);
                assert!(rel < 1e-9, "n={n} s={s} rel={rel:e}");
            }
        }
    }
}

#[test]
fn qr_agrees_with_nalgebra_schur() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=8 {
        for _ in 0..25 {
            let a = Matrix::new(
                n,
                n,
                (0..n * n).map(|_| rng.random_range(-4.0..4.0)).collect(),
            )
            .unwrap();
            let ours = eigenvalues(&a).unwrap();
            let mut theirs: Vec<ComplexScalar> = to_na(&a)
                .complex_eigenvalues()
                .iter()
                .map(|z| ComplexScalar::new(z.re, z.im))
                .collect();
            // greedy nearest matching, independent of sort order
            for e in &ours {
                let (k, dist) = theirs
                    .iter()
                    .enumerate()
                    .map(|(k, t)| (k, (t - e).norm()))
                    .min_by(|x, y| x.1.total_cmp(&y.1))
                    .unwrap();
                assert!(
                    dist < 1e-7 * (1.0 + e.norm()),
                    "n={n}: {e} unmatched (dist {dist:e})"
                );
                theirs.remove(k);
            }
        }
    }
}

#[test]
fn companion_roots_of_high_degree() {
    // (s+1)(s+2)...(s+6)
    let roots: Vec<ComplexScalar> = (1..=6)
        .map(|k| ComplexScalar::new(-(k as f64), 0.0))
        .collect();
    let p = Polynomial::from_roots(1.0, &roots);
    let got = poly_roots(&p).unwrap();
    for (g, want) in got.iter().zip(&roots.iter().rev().collect::<Vec<_>>()) {
        assert!((g - **want).norm() < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eigenvalue_sum_and_product(m in any_square()) {
        let e = eigenvalues(&m).unwrap();
        prop_assert_eq!(e.len(), m.rows());
        let sum: ComplexScalar = e.iter().sum();
        let prod: ComplexScalar = e.iter().product();
        let det = m.det().unwrap();
        prop_assert!((sum.re - m.trace()).abs() < 1e-8, "sum {} vs trace {}", sum, m.trace());
        prop_assert!(sum.im.abs() < 1e-8);
        let scale = det.abs().max(1.0);
        prop_assert!((prod.re - det).abs() < 1e-8 * scale, "prod {} vs det {}", prod, det);
        prop_assert!(prod.im.abs() < 1e-8 * scale);
    }

    #[test]
    fn complex_eigenvalues_pair_exactly(m in any_square()) {
        let e = eigenvalues(&m).unwrap();
        let mut k = 0;
        while k < e.len() {
            if e[k].im != 0.0 {
                prop_assert!(k + 1 < e.len());
                prop_assert_eq!(e[k + 1], e[k].conj());
                prop_assert!(e[k].im < 0.0);
                k += 2;
            } else {
                k += 1;
            }
        }
        prop_assert!(e.windows(2).all(|w| rlcm::lin_small::cmp_complex(&w[0], &w[1]).is_le()));
    }

    #[test]
    fn qr_matches_closed_form_2x2(m in square(2)) {
        let qr = eigenvalues(&m).unwrap();
        let closed = eig_2x2(&m).unwrap();
        for (a, b) in qr.iter().zip(closed.iter()) {
            prop_assert!((a - b).norm() < 1e-7 * (1.0 + a.norm()), "{} vs {}", a, b);
        }
    }

    #[test]
    fn expm_inverse_identity(m in (1usize..=8).prop_flat_map(square)) {
        let norm = m.norm1();
        let m = if norm > 5.0 { m.scale(5.0 / norm) } else { m };
        let prod = &expm(&m).unwrap() * &expm(&m.scale(-1.0)).unwrap();
        let id = Matrix::identity(m.rows());
        let err = prod.sub(&id).unwrap().as_slice().iter().fold(0.0f64, |a, x| a.max(x.abs()));
        prop_assert!(err < 1e-10, "err {err:e}");
    }

    #[test]
    fn faddeev_leverrier_char_poly(m in any_square()) {
        let (den, _) = faddeev_leverrier(&m).unwrap();
        prop_assert_eq!(den.degree(), Some(m.rows()));
        prop_assert_eq!(den.leading(), 1.0);
        // det(sI − A) at s = 0 is (−1)ⁿ det A
        let n = m.rows() as i32;
        let det = m.det().unwrap();
        prop_assert!((den.eval(0.0) - (-1f64).powi(n) * det).abs() < 1e-8 * det.abs().max(1.0));
        // and vanishes at every eigenvalue
        for e in eigenvalues(&m).unwrap() {
            let v = den.eval_complex(e).norm();
            let scale: f64 = den.coeffs().iter().enumerate().map(|(k, c)| c.abs() * e.norm().powi(k as i32)).sum();
            prop_assert!(v <= 1e-8 * scale.max(1.0), "residual {v:e}");
        }
    }

    #[test]
    fn strictly_proper_without_feedthrough(m in any_square(), seed in any::<u64>()) {
        let n = m.rows();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let c: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let tf = resolvent_tf(&m, &Matrix::column(&b), &Matrix::row(&c), 0.0).unwrap();
        prop_assert!(tf.num.degree().is_none_or(|k| k < n));
    }

    #[test]
    fn roots_reconstruct_polynomial(coeffs in prop::collection::vec(-10.0f64..10.0, 2..=8)) {
        let mut coeffs = coeffs;
        let last = coeffs.len() - 1;
        if coeffs[last].abs() < 0.1 {
            coeffs[last] = 1.0;
        }
        let p = Polynomial::new(coeffs);
        let roots = poly_roots(&p).unwrap();
        prop_assert_eq!(roots.len(), p.degree().unwrap());
        let rebuilt = Polynomial::from_roots(1.0, &roots);
        let monic = p.monic().unwrap();
        let scale = monic.coeffs().iter().fold(1.0f64, |a, c| a.max(c.abs()));
        for (a, b) in rebuilt.coeffs().iter().zip(monic.coeffs()) {
            prop_assert!((a - b).abs() < 1e-8 * scale, "{a} vs {b}");
        }
    }
}
