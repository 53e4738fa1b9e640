//! Exact linear algebra over the Gaussian rationals `ℚ(i)` and over `ℚ(i)[t]`.
//!
//! Matrices are dense; determinants of polynomial matrices use fraction-free
//! elimination so that intermediate entries stay polynomials.

mod hermitian;
mod linalg;
mod matrix;
mod poly;
mod scalar;
mod subspace;

pub use hermitian::{diagonalize_hermitian, hermitian_signature, signature_by_diagonalization, Signature};
pub use linalg::Rref;
pub use matrix::{poly_det, Matrix, Ring};
pub use poly::Poly;
pub use scalar::{Scalar, Sign};
pub use subspace::Subspace;

/// `ε(a) = (−1)^{a(a−1)/2}` as a sign.
pub fn epsilon(a: i64) -> i64 {
    if (a * (a - 1) / 2).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `(−1)^a`.
pub fn parity_sign(a: i64) -> i64 {
    if a.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
