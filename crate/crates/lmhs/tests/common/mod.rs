//! Shared builders for the integration tests.
#![allow(dead_code)]

use lmhs::filtration::IncreasingFiltration;
use lmhs::{Matrix, Scalar, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A nilpotent operator with prescribed Jordan strings, conjugated by a
/// random invertible rational matrix, together with the conjugating matrix.
pub struct JordanSample {
    pub strings: Vec<usize>,
    pub p: Matrix<Scalar>,
    pub n: Matrix<Scalar>,
}

impl JordanSample {
    pub fn dim(&self) -> usize {
        self.strings.iter().sum()
    }

    /// `W(N, d)` read off the Jordan basis: the `j`-th vector of a string of
    /// length `L` has weight `d + L − 1 − 2j`.
    pub fn expected_weight(&self, d: i64) -> Vec<(i64, Subspace)> {
        let dim = self.dim();
        let mut tagged = Vec::new();
        let mut start = 0;
        for &len in &self.strings {
            for j in 0..len {
                tagged.push((d + len as i64 - 1 - 2 * j as i64, start + j));
            }
            start += len;
        }
        let lo = tagged.iter().map(|t| t.0).min().unwrap_or(d);
        let hi = tagged.iter().map(|t| t.0).max().unwrap_or(d);
        (lo - 1..=hi + 1)
            .map(|k| {
                let cols: Vec<Vec<Scalar>> =
                    tagged.iter().filter(|t| t.0 <= k).map(|t| self.p.column(t.1)).collect();
                (k, Subspace::span_vectors(dim, &cols).unwrap())
            })
            .collect()
    }
}

pub fn jordan_sample(seed: u64, max_dim: usize) -> JordanSample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = rng.gen_range(1..=max_dim);
    let mut strings = Vec::new();
    let mut left = dim;
    while left > 0 {
        let len = rng.gen_range(1..=left.min(5));
        strings.push(len);
        left -= len;
    }
    let mut j = Matrix::<Scalar>::zeros(dim, dim);
    let mut start = 0;
    for &len in &strings {
        for i in 0..len.saturating_sub(1) {
            j.set(start + i + 1, start + i, Scalar::one());
        }
        start += len;
    }
    let lower = Matrix::from_fn(dim, dim, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Equal => Scalar::one(),
        std::cmp::Ordering::Greater => Scalar::from_int(rng.gen_range(-2..=2)),
        std::cmp::Ordering::Less => Scalar::zero(),
    });
    let upper = Matrix::from_fn(dim, dim, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Equal => Scalar::from_int(if rng.gen_bool(0.5) { 1 } else { -2 }),
        std::cmp::Ordering::Less => Scalar::from_int(rng.gen_range(-2..=2)),
        std::cmp::Ordering::Greater => Scalar::zero(),
    });
    let p = lower.mul(&upper).unwrap();
    let n = p.mul(&j).unwrap().mul(&p.inverse().unwrap()).unwrap();
    JordanSample { strings, p, n }
}

/// True when `w` agrees with `expected` at every listed index.
pub fn same_filtration(w: &IncreasingFiltration, expected: &[(i64, Subspace)]) -> bool {
    expected.iter().all(|(k, s)| {
        let got = w.get(*k);
        got.contains_space(s) && s.contains_space(&got)
    })
}
