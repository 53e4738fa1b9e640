//! Dense matrices over an exact commutative ring with conjugation.

use std::fmt;

use serde::{de::DeserializeOwned, Deserialize, Deserializer, Serialize, Serializer};

use super::poly::Poly;
use super::scalar::Scalar;
use crate::error::{check_dim, contract, Error, Result};

/// Entry ring of a [`Matrix`]: exact, commutative, with an involution.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    /// Exact quotient, used by fraction-free elimination.
    fn exact_div(&self, other: &Self) -> Result<Self>;
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Scalar::conj(self)
    }
    fn exact_div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inv()?)
    }
}

impl Ring for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Poly::conj(self)
    }
    fn exact_div(&self, o: &Self) -> Result<Self> {
        Poly::exact_div(self, o)
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return contract("ragged rows in matrix");
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<T>]) -> Result<Self> {
        for c in cols {
            check_dim(rows, c.len())?;
        }
        Ok(Matrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Entrywise conjugate.
    pub fn conj(&self) -> Self {
        self.map(T::conj)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn neg(&self) -> Self {
        self.map(T::neg)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        check_dim(self.rows, o.rows)?;
        check_dim(self.cols, o.cols)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        check_dim(self.cols, o.rows)?;
        let mut out = Matrix::<T>::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        check_dim(self.cols, v.len())?;
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect())
    }

    pub fn pow(&self, n: usize) -> Result<Self> {
        if !self.is_square() {
            return contract("power of a non-square matrix");
        }
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `[self | o]`.
    pub fn hstack(&self, o: &Self) -> Result<Self> {
        check_dim(self.rows, o.rows)?;
        Ok(Matrix::from_fn(self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                o.get(i, j - self.cols).clone()
            }
        }))
    }

    /// `[self ; o]`.
    pub fn vstack(&self, o: &Self) -> Result<Self> {
        check_dim(self.cols, o.cols)?;
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Ok(Matrix { rows: self.rows + o.rows, cols: self.cols, data })
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination with row pivoting.
    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return contract(format!("determinant of a {}x{} matrix", self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.clone();
        let mut prev = T::one();
        let mut negate = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Ok(T::zero());
            };
            if p != k {
                a.swap_rows(p, k);
                negate = !negate;
            }
            bareiss_step(&mut a, k, &prev)?;
            prev = a.get(k, k).clone();
        }
        let d = a.get(n - 1, n - 1).clone();
        Ok(if negate { d.neg() } else { d })
    }

    /// Leading principal minors `P_1, …, P_n`.
    ///
    /// Bareiss without pivoting yields all of them in one sweep; once a
    /// zero pivot appears the remaining minors are computed individually.
    pub fn leading_minors(&self) -> Result<Vec<T>> {
        if !self.is_square() {
            return contract("leading minors of a non-square matrix");
        }
        let n = self.rows;
        let mut out = Vec::with_capacity(n);
        let mut a = self.clone();
        let mut prev = T::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                for l in k + 1..=n {
                    out.push(self.submatrix(0..l, 0..l).det()?);
                }
                return Ok(out);
            }
            out.push(a.get(k, k).clone());
            bareiss_step(&mut a, k, &prev)?;
            prev = a.get(k, k).clone();
        }
        Ok(out)
    }
}

/// One Bareiss elimination step below and right of pivot `(k, k)`.
/// Invariant: afterwards `a[i][j]` for `i, j > k` is the `(k+2)`-minor
/// bordered by row `i` and column `j`.
fn bareiss_step<T: Ring>(a: &mut Matrix<T>, k: usize, prev: &T) -> Result<()> {
    let n = a.rows;
    let m = a.cols;
    let pivot = a.get(k, k).clone();
    for i in k + 1..n {
        let aik = a.get(i, k).clone();
        for j in k + 1..m {
            let num = pivot.mul(a.get(i, j)).sub(&aik.mul(a.get(k, j)));
            let v = num.exact_div(prev).map_err(|e| Error::Internal(format!("Bareiss division: {e}")))?;
            a.set(i, j, v);
        }
        a.set(i, k, T::zero());
    }
    Ok(())
}

impl<T: Ring> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T: Ring> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Serialized as a list of rows.
impl<T: Ring + Serialize> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de, T: Ring + DeserializeOwned> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<T>>::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Polynomial determinant of a square matrix.
pub fn poly_det(m: &Matrix<Poly>) -> Result<Poly> {
    m.det()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sm(rows: &[&[i64]]) -> Matrix<Scalar> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn bareiss_det_matches_cofactor_expansion() {
        let m = sm(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        // 2(3·-2 - 20) + 1(-2 - 0) = -54
        assert_eq!(m.det().unwrap(), Scalar::from_int(-54));
        let swapped = sm(&[&[0, 1], &[1, 0]]);
        assert_eq!(swapped.det().unwrap(), Scalar::from_int(-1));
        assert!(sm(&[&[1, 2]]).det().is_err());
    }

    #[test]
    fn poly_det_examples() {
        let t = Poly::t();
        let one = Poly::one();
        assert_eq!(poly_det(&Matrix::from_rows(vec![vec![&t * &t]]).unwrap()).unwrap(), &t * &t);
        let m = Matrix::from_rows(vec![vec![t.clone(), one.clone()], vec![one.clone(), t.clone()]]).unwrap();
        assert_eq!(poly_det(&m).unwrap(), &(&t * &t) - &one);
        let x2 = Poly::monomial(Scalar::from_frac(1, 2), 2);
        let x3 = Poly::monomial(Scalar::from_frac(1, 6), 3);
        let a = Matrix::from_rows(vec![vec![x2.clone(), x3], vec![t.clone(), x2]]).unwrap();
        assert_eq!(poly_det(&a).unwrap(), Poly::monomial(Scalar::from_frac(1, 12), 4));
    }

    #[test]
    fn leading_minors_with_zero_pivot() {
        let m = sm(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 3]]);
        assert_eq!(
            m.leading_minors().unwrap(),
            vec![Scalar::zero(), Scalar::from_int(-1), Scalar::from_int(-3)]
        );
        let h = sm(&[&[2, 1], &[1, 1]]);
        assert_eq!(h.leading_minors().unwrap(), vec![Scalar::from_int(2), Scalar::from_int(1)]);
    }

    #[test]
    fn matrix_serde_is_row_list() {
        let m = sm(&[&[1, 0], &[0, -1]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["1","0"],["0","-1"]]"#);
        let back: Matrix<Scalar> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<Matrix<Scalar>>(r#"[["1"],["0","1"]]"#).is_err());
    }
}
