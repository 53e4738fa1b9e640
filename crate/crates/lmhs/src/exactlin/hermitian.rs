//! Signatures of Hermitian forms by exact congruence diagonalization.

use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::scalar::{Scalar, Sign};
use crate::error::{contract, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub positives: usize,
    pub negatives: usize,
    pub nulls: usize,
}

impl Signature {
    pub fn new(positives: usize, negatives: usize, nulls: usize) -> Self {
        Signature { positives, negatives, nulls }
    }

    pub fn dim(&self) -> usize {
        self.positives + self.negatives + self.nulls
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.nulls == 0
    }

    /// The signature of the negated form.
    pub fn flipped(&self) -> Self {
        Signature { positives: self.negatives, negatives: self.positives, nulls: self.nulls }
    }

    fn count(&mut self, s: Option<Sign>) {
        match s {
            Some(Sign::Plus) => self.positives += 1,
            Some(Sign::Minus) => self.negatives += 1,
            None => self.nulls += 1,
        }
    }
}

/// `(positives, negatives, nulls)` of a Hermitian matrix.
///
/// Symmetric pivoting: a nonzero diagonal entry is a 1×1 pivot; if the
/// remaining diagonal vanishes but some `a = H_kj ≠ 0`, the block
/// `[[0, a], [ā, 0]]` is a hyperbolic pivot contributing `(1, 1)`.
pub fn hermitian_signature(h: &Matrix<Scalar>) -> Result<Signature> {
    if !h.is_hermitian() {
        return contract("matrix is not Hermitian");
    }
    let mut sig = Signature::default();
    let mut a = h.clone();
    loop {
        let n = a.rows();
        if n == 0 {
            return Ok(sig);
        }
        if let Some(k) = (0..n).find(|&k| !a.get(k, k).is_zero()) {
            sig.count(a.get(k, k).real_sign());
            a = schur_1x1(&a, k);
            continue;
        }
        let off = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a.get(i, j).is_zero());
        match off {
            Some((i, j)) => {
                sig.positives += 1;
                sig.negatives += 1;
                a = schur_hyperbolic(&a, i, j);
            }
            None => {
                sig.nulls += n;
                return Ok(sig);
            }
        }
    }
}

/// Schur complement of the 1×1 block at `(k, k)`.
fn schur_1x1(a: &Matrix<Scalar>, k: usize) -> Matrix<Scalar> {
    let n = a.rows();
    let inv = a.get(k, k).inv().expect("nonzero pivot");
    let rest: Vec<usize> = (0..n).filter(|&i| i != k).collect();
    Matrix::from_fn(n - 1, n - 1, |r, c| {
        let (i, j) = (rest[r], rest[c]);
        a.get(i, j) - &(&(a.get(i, k) * &inv) * a.get(k, j))
    })
}

/// Schur complement of the hyperbolic block on `{i, j}` with zero diagonal.
fn schur_hyperbolic(a: &Matrix<Scalar>, i: usize, j: usize) -> Matrix<Scalar> {
    let n = a.rows();
    let x = a.get(i, j).clone();
    // [[0, x], [x̄, 0]]^{-1} = [[0, 1/x̄], [1/x, 0]]
    let inv_xbar = x.conj().inv().expect("nonzero");
    let inv_x = x.inv().expect("nonzero");
    let rest: Vec<usize> = (0..n).filter(|&r| r != i && r != j).collect();
    Matrix::from_fn(n - 2, n - 2, |r, c| {
        let (p, q) = (rest[r], rest[c]);
        let t1 = &(a.get(p, i) * &inv_xbar) * a.get(j, q);
        let t2 = &(a.get(p, j) * &inv_x) * a.get(i, q);
        &(a.get(p, q) - &t1) - &t2
    })
}

/// Congruence diagonalization `Q* H Q = D` using 1×1 pivots only.
///
/// A vanishing diagonal is repaired by the column operation
/// `e_k ← e_k + conj(H_kj) e_j`, which makes the new diagonal `2|H_kj|² > 0`.
/// Returns `(Q, diagonal of D)`.
pub fn diagonalize_hermitian(h: &Matrix<Scalar>) -> Result<(Matrix<Scalar>, Vec<Scalar>)> {
    if !h.is_hermitian() {
        return contract("matrix is not Hermitian");
    }
    let n = h.rows();
    let mut a = h.clone();
    let mut q = Matrix::<Scalar>::identity(n);
    for k in 0..n {
        if a.get(k, k).is_zero() {
            if let Some(p) = (k + 1..n).find(|&p| !a.get(p, p).is_zero()) {
                a.swap_rows(k, p);
                a.swap_cols(k, p);
                q.swap_cols(k, p);
            } else if let Some(j) = (k + 1..n).find(|&j| !a.get(k, j).is_zero()) {
                let c = a.get(k, j).conj();
                add_multiple(&mut a, &mut q, j, k, &c);
            } else if let Some((i, j)) =
                (k + 1..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a.get(i, j).is_zero())
            {
                // Bring the nonzero off-diagonal entry into row k first.
                a.swap_rows(k, i);
                a.swap_cols(k, i);
                q.swap_cols(k, i);
                let c = a.get(k, j).conj();
                add_multiple(&mut a, &mut q, j, k, &c);
            } else {
                break;
            }
        }
        let pivot = a.get(k, k).clone();
        for j in k + 1..n {
            if a.get(k, j).is_zero() {
                continue;
            }
            let c = -(a.get(k, j) / &pivot);
            add_multiple(&mut a, &mut q, k, j, &c);
        }
    }
    let diag = (0..n).map(|k| a.get(k, k).clone()).collect();
    Ok((q, diag))
}

/// Congruence by `P = I + c e_src e_dst^T`: column `dst` += c · column `src`,
/// row `dst` += conj(c) · row `src`.
fn add_multiple(a: &mut Matrix<Scalar>, q: &mut Matrix<Scalar>, src: usize, dst: usize, c: &Scalar) {
    let n = a.rows();
    for i in 0..n {
        let v = a.get(i, dst) + &(a.get(i, src) * c);
        a.set(i, dst, v);
    }
    let cc = c.conj();
    for j in 0..n {
        let v = a.get(dst, j) + &(a.get(src, j) * &cc);
        a.set(dst, j, v);
    }
    for i in 0..n {
        let v = q.get(i, dst) + &(q.get(i, src) * c);
        q.set(i, dst, v);
    }
}

/// Signature read off the diagonal of [`diagonalize_hermitian`].
pub fn signature_by_diagonalization(h: &Matrix<Scalar>) -> Result<Signature> {
    let (_, diag) = diagonalize_hermitian(h)?;
    let mut sig = Signature::default();
    for d in &diag {
        sig.count(d.real_sign());
    }
    Ok(sig)
}
