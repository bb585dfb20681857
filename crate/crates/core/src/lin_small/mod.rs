//! Small dense linear algebra: matrices, eigenvalues, the matrix
//! exponential, polynomials and transfer-function extraction.

mod eigen;
mod expm;
mod matrix;
mod poly;
mod resolvent;

pub use eigen::{
    cmp_complex, eig_2x2, eig_qr, eigenvalues, is_repeated, roots_quadratic, sort_complex,
    DEFAULT_QR_TOL, MAX_ORDER, REPEATED_ROOT_TOL,
};
pub use expm::expm;
pub use matrix::Matrix;
pub use poly::{poly_roots, Polynomial};
pub use resolvent::{faddeev_leverrier, resolvent_tf, PolyRatio};

/// Complex scalar used for eigenvalues, poles and zeros.
pub type ComplexScalar = num_complex::Complex64;
