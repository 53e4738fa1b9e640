//! Row reduction over `ℚ(i)`: rank, kernel, image, solving.

use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::{check_dim, contract, Error, Result};

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref {
    pub reduced: Matrix<Scalar>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix<Scalar> {
    pub fn from_ints(rows: &[&[i64]]) -> Matrix<Scalar> {
        Matrix::from_fn(rows.len(), rows.first().map_or(0, |r| r.len()), |i, j| Scalar::from_int(rows[i][j]))
    }

    pub fn is_real(&self) -> bool {
        self.to_rows().iter().flatten().all(Scalar::is_real)
    }

    /// Gauss–Jordan elimination; pivots are the earliest independent columns.
    pub fn rref(&self) -> Rref {
        let mut a = self.clone();
        let (rows, cols) = (a.rows(), a.cols());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let inv = a.get(r, c).inv().expect("nonzero pivot");
            for j in c..cols {
                let v = a.get(r, j) * &inv;
                a.set(r, j, v);
            }
            for i in 0..rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in c..cols {
                    let rj = a.get(r, j);
                    if rj.is_zero() {
                        continue;
                    }
                    let v = a.get(i, j) - &(&f * rj);
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: a, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of the null space as columns (one per free variable).
    pub fn kernel_basis(&self) -> Matrix<Scalar> {
        let Rref { reduced, pivots } = self.rref();
        let cols = self.cols();
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        Matrix::from_fn(cols, free.len(), |i, j| {
            let f = free[j];
            if i == f {
                Scalar::one()
            } else if let Some(r) = pivots.iter().position(|&p| p == i) {
                -reduced.get(r, f)
            } else {
                Scalar::zero()
            }
        })
    }

    /// Columns of `self` at the pivot positions: a basis of the column space.
    pub fn image_basis(&self) -> Matrix<Scalar> {
        let pivots = self.rref().pivots;
        self.select_columns(&pivots)
    }

    /// Some `x` with `self · x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        check_dim(self.rows(), b.len())?;
        let aug = self.hstack(&Matrix::from_columns(b.len(), &[b.to_vec()])?)?;
        let Rref { reduced, pivots } = aug.rref();
        let n = self.cols();
        if pivots.last() == Some(&n) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(); n];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = reduced.get(r, n).clone();
        }
        Ok(Some(x))
    }

    /// Solves `self · X = B` column by column; errors if any column is unsolvable.
    pub fn solve_matrix(&self, b: &Matrix<Scalar>) -> Result<Matrix<Scalar>> {
        let mut cols = Vec::with_capacity(b.cols());
        for j in 0..b.cols() {
            match self.solve(&b.column(j))? {
                Some(x) => cols.push(x),
                None => return Err(Error::Contract(format!("column {j} is not in the column space"))),
            }
        }
        Matrix::from_columns(self.cols(), &cols)
    }

    pub fn inverse(&self) -> Result<Matrix<Scalar>> {
        if !self.is_square() {
            return contract("inverse of a non-square matrix");
        }
        let n = self.rows();
        let Rref { reduced, pivots } = self.hstack(&Matrix::identity(n))?.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return contract("matrix is singular");
        }
        Ok(reduced.submatrix(0..n, n..2 * n))
    }
}
