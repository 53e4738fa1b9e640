//! Subspaces of `ℚ(i)^n` represented by a column basis.

use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::{check_dim, Error, Result};

/// Column span inside an ambient space of dimension `ambient`.
/// Invariant: the basis columns are linearly independent.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "SubspaceRepr", into = "SubspaceRepr")]
pub struct Subspace {
    ambient: usize,
    basis: Matrix<Scalar>,
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
}

impl TryFrom<SubspaceRepr> for Subspace {
    type Error = Error;
    fn try_from(r: SubspaceRepr) -> Result<Self> {
        Subspace::span_vectors(r.ambient_dim, &r.basis)
    }
}

impl From<Subspace> for SubspaceRepr {
    fn from(s: Subspace) -> Self {
        SubspaceRepr { ambient_dim: s.ambient, basis: s.basis.columns() }
    }
}

impl PartialEq for Subspace {
    /// Equality as subspaces, not as bases.
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.dim() == other.dim() && self.contains_space(other)
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(ambient, 0) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient) }
    }

    /// Span of the columns of `m`, keeping the earliest independent columns.
    pub fn span(m: &Matrix<Scalar>) -> Self {
        Subspace { ambient: m.rows(), basis: m.image_basis() }
    }

    pub fn span_vectors(ambient: usize, vs: &[Vec<Scalar>]) -> Result<Self> {
        Ok(Subspace::span(&Matrix::from_columns(ambient, vs)?))
    }

    /// Coordinate subspace spanned by the standard vectors `e_i`, `i ∈ idx`.
    pub fn coordinate(ambient: usize, idx: &[usize]) -> Self {
        Subspace::span(&Matrix::from_fn(ambient, idx.len(), |i, j| {
            if i == idx[j] {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        }))
    }

    pub fn kernel(m: &Matrix<Scalar>) -> Self {
        Subspace { ambient: m.cols(), basis: m.kernel_basis() }
    }

    pub fn image(m: &Matrix<Scalar>) -> Self {
        Subspace::span(m)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &Matrix<Scalar> {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.columns()
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        check_dim(self.ambient, v.len())?;
        if v.iter().all(Scalar::is_zero) {
            return Ok(true);
        }
        Ok(self.basis.solve(v)?.is_some())
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        if self.ambient != other.ambient {
            return false;
        }
        if other.is_zero() {
            return true;
        }
        self.basis.hstack(&other.basis).map(|m| m.rank() == self.dim()).unwrap_or(false)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        check_dim(self.ambient, other.ambient)?;
        Ok(Subspace::span(&self.basis.hstack(&other.basis)?))
    }

    /// `U ∩ V` from the kernel of `[U | −V]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        check_dim(self.ambient, other.ambient)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        let stacked = self.basis.hstack(&other.basis.neg())?;
        let k = stacked.kernel_basis();
        let coeffs = k.submatrix(0..self.dim(), 0..k.cols());
        Ok(Subspace::span(&self.basis.mul(&coeffs)?))
    }

    pub fn conj(&self) -> Subspace {
        Subspace { ambient: self.ambient, basis: self.basis.conj() }
    }

    /// Image `M(U)`.
    pub fn apply(&self, m: &Matrix<Scalar>) -> Result<Subspace> {
        check_dim(self.ambient, m.cols())?;
        Ok(Subspace::span(&m.mul(&self.basis)?))
    }

    /// Preimage `M^{-1}(U)` for `M` mapping into the ambient space of `U`.
    pub fn preimage(&self, m: &Matrix<Scalar>) -> Result<Subspace> {
        check_dim(self.ambient, m.rows())?;
        let stacked = m.hstack(&self.basis.neg())?;
        let k = stacked.kernel_basis();
        Ok(Subspace::span(&k.submatrix(0..m.cols(), 0..k.cols())))
    }

    /// Coordinates of `v` in the stored basis.
    pub fn coords(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.basis
            .solve(v)?
            .ok_or_else(|| Error::Contract("vector does not lie in the subspace".into()))
    }

    pub fn is_real(&self) -> bool {
        self.basis.is_real()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[Scalar]) -> Vec<Scalar> {
        xs.to_vec()
    }

    #[test]
    fn lattice_operations() {
        let u = Subspace::coordinate(3, &[0, 1]);
        assert_eq!(u.intersect(&u).unwrap(), u);
        assert_eq!(u.sum(&u).unwrap(), u);
        let e1 = Subspace::coordinate(2, &[0]);
        let e2 = Subspace::coordinate(2, &[1]);
        assert!(e1.intersect(&e2).unwrap().is_zero());
        assert!(e1.sum(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn complex_intersection() {
        let (one, i) = (Scalar::one(), Scalar::i());
        let a = Subspace::span_vectors(2, &[v(&[one.clone(), i.clone()])]).unwrap();
        let b = Subspace::span_vectors(2, &[v(&[one.clone(), -&i])]).unwrap();
        let c = b.sum(&Subspace::coordinate(2, &[1])).unwrap();
        assert_eq!(a.intersect(&c).unwrap(), a);
        assert_eq!(a.conj(), b);
    }

    #[test]
    fn preimage_and_coords() {
        let n = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
        let zero = Subspace::zero(2);
        assert_eq!(zero.preimage(&n).unwrap(), Subspace::coordinate(2, &[1]));
        let u = Subspace::span_vectors(2, &[v(&[Scalar::from_int(2), Scalar::from_int(2)])]).unwrap();
        assert_eq!(u.coords(&[Scalar::from_int(1), Scalar::from_int(1)]).unwrap(), vec![Scalar::from_frac(1, 2)]);
        assert!(u.coords(&[Scalar::from_int(1), Scalar::from_int(0)]).is_err());
    }
}
