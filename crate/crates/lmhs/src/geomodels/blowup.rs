//! Restriction and Gysin maps between a blowup `X̃ = Bl_Z X` and the strict
//! transform `Ỹ ≅ Y` of a hypersurface `Z ⊂ Y ⊂ X`, in the coordinates
//! `H^k(X̃) = H^k(X) ⊕ H^{k−2}(Z)`.
//!
//! In these coordinates the pairing of `X̃` is `P_X ⊕ (−P_Z)`: the
//! exceptional divisor restricts to `O(−1)` on itself. The same sign shows up
//! as the negated second block of the Gysin map.

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Scalar};

/// `H^k(X) ⊕ H^{k−2}(Z) → H^k(Y)`, the block row `[ι₁* | ι₂!]`.
pub fn blowup_restriction(iota1_star: &Matrix<Scalar>, iota2_gysin: &Matrix<Scalar>) -> Result<Matrix<Scalar>> {
    if iota1_star.rows() != iota2_gysin.rows() {
        return Err(Error::Dimension { expected: iota1_star.rows(), found: iota2_gysin.rows() });
    }
    iota1_star.hstack(iota2_gysin)
}

/// `H^k(Y) → H^{k+2}(X) ⊕ H^k(Z)`, the block column `[ι₁! ; −ι₂*]`.
pub fn blowup_gysin(iota1_gysin: &Matrix<Scalar>, iota2_star: &Matrix<Scalar>) -> Result<Matrix<Scalar>> {
    if iota1_gysin.cols() != iota2_star.cols() {
        return Err(Error::Dimension { expected: iota1_gysin.cols(), found: iota2_star.cols() });
    }
    iota1_gysin.vstack(&iota2_star.neg())
}

/// Pairing of `X̃` in degree `k` against `2m − k`: `P_X ⊕ (−P_Z)`.
pub fn blowup_pairing(p_x: &Matrix<Scalar>, p_z: &Matrix<Scalar>) -> Matrix<Scalar> {
    let mut out = Matrix::zeros(p_x.rows() + p_z.rows(), p_x.cols() + p_z.cols());
    out.set_block(0, 0, p_x);
    out.set_block(p_x.rows(), p_x.cols(), &p_z.neg());
    out
}
