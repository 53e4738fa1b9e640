//! Closed forms behind the opposedness degree: rectangular Young tableaux,
//! minors of the Taylor matrix of `exp`, and wedges of orbit vectors on a
//! single Jordan string.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::Result;
use crate::exactlin::{Matrix, Poly, Scalar};

/// Number of standard Young tableaux of the `rows × cols` rectangle, by the
/// hook length formula.
pub fn syt_count(rows: usize, cols: usize) -> BigInt {
    let mut num = factorial(rows * cols);
    let mut hooks = BigInt::one();
    for i in 0..rows {
        for j in 0..cols {
            hooks *= BigInt::from((rows - i) + (cols - j) - 1);
        }
    }
    num /= hooks;
    num
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `C_{a,b} / (ab)!` as a scalar.
fn rectangle_coefficient(a: usize, b: usize) -> Scalar {
    Scalar::real(BigRational::new(syt_count(a, b), factorial(a * b)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityKind {
    TaylorMinor,
    Wedge,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub kind: IdentityKind,
    pub n: usize,
    pub k: usize,
    pub a: Option<Scalar>,
    pub computed: Poly,
    pub expected: Poly,
    pub ok: bool,
}

/// Upper-right `k × k` block of the `(n+1) × (n+1)` matrix `x^{j−i}/(j−i)!`;
/// its determinant is `C_{n−k+1,k}/((n−k+1)k)! · x^{(n−k+1)k}`.
pub fn taylor_minor_identity(n: usize, k: usize) -> Result<IdentityCheck> {
    assert!(k <= n + 1, "block size exceeds the matrix");
    let size = n + 1;
    let full = Matrix::from_fn(size, size, |i, j| {
        if j < i {
            Poly::zero()
        } else {
            Poly::monomial(Scalar::real(BigRational::new(BigInt::one(), factorial(j - i))), j - i)
        }
    });
    let block = full.submatrix(0..k, size - k..size);
    let computed = block.det()?;
    let a = n + 1 - k;
    let expected = Poly::monomial(rectangle_coefficient(a, k), a * k);
    Ok(IdentityCheck { kind: IdentityKind::TaylorMinor, n, k, a: None, ok: computed == expected, computed, expected })
}

/// Columns `exp(zN) N^j u` for `j < n−k+1` and `exp(z̄N) N^j u` for `j < k`
/// on a string `u, Nu, …, N^n u`; the determinant is
/// `C_{n−k+1,k}/((n−k+1)k)! · (z̄ − z)^{(n−k+1)k}`.
pub fn wedge_identity(n: usize, k: usize, a: &Scalar) -> Result<IdentityCheck> {
    assert!(k <= n + 1, "too many conjugate columns");
    let size = n + 1;
    let z = Poly::new(vec![a.clone(), Scalar::i()]);
    let zbar = z.conj();
    let column = |w: &Poly, j: usize| -> Vec<Poly> {
        (0..size)
            .map(|idx| {
                if idx < j {
                    Poly::zero()
                } else {
                    let m = idx - j;
                    w.pow(m).scale(&Scalar::real(BigRational::new(BigInt::one(), factorial(m))))
                }
            })
            .collect()
    };
    let rows = n + 1 - k;
    let mut cols: Vec<Vec<Poly>> = (0..rows).map(|j| column(&z, j)).collect();
    cols.extend((0..k).map(|j| column(&zbar, j)));
    let computed = Matrix::from_columns(size, &cols)?.det()?;
    let expected = (&zbar - &z).pow(rows * k).scale(&rectangle_coefficient(rows, k));
    Ok(IdentityCheck {
        kind: IdentityKind::Wedge,
        n,
        k,
        a: Some(a.clone()),
        ok: computed == expected,
        computed,
        expected,
    })
}

/// Both identities for `1 ≤ n ≤ max_n`, `0 ≤ k ≤ n+1`, the wedge at
/// `a = 0` and `a = 1/2`. `corrupt` perturbs the expected leading
/// coefficient at one `(n, k)`, to exercise the failure path.
pub fn verify_identities(max_n: usize, corrupt: Option<(usize, usize)>) -> Result<Vec<IdentityCheck>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for k in 0..=n + 1 {
            let mut batch = vec![taylor_minor_identity(n, k)?];
            for a in [Scalar::zero(), Scalar::from_frac(1, 2)] {
                batch.push(wedge_identity(n, k, &a)?);
            }
            if corrupt == Some((n, k)) {
                for c in &mut batch {
                    let deg = c.expected.degree().unwrap_or(0);
                    c.expected = &c.expected + &Poly::monomial(Scalar::one(), deg);
                    c.ok = c.computed == c.expected;
                }
            }
            out.extend(batch);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tableau_counts() {
        assert_eq!(syt_count(2, 2), BigInt::from(2));
        assert_eq!(syt_count(2, 3), BigInt::from(5));
        assert_eq!(syt_count(3, 3), BigInt::from(42));
        assert_eq!(syt_count(1, 7), BigInt::one());
        assert_eq!(syt_count(0, 4), BigInt::one());
    }

    #[test]
    fn first_wedge() {
        // det[[1, 1], [z, z̄]] = z̄ − z = −2it.
        let c = wedge_identity(1, 1, &Scalar::zero()).unwrap();
        assert_eq!(c.computed, Poly::monomial(Scalar::gaussian(0, -2), 1));
        assert!(c.ok);
    }

    #[test]
    fn identities_up_to_five() {
        for c in verify_identities(5, None).unwrap() {
            assert!(c.ok, "{:?} n={} k={}", c.kind, c.n, c.k);
        }
    }

    #[test]
    fn corruption_is_detected() {
        let bad: Vec<_> = verify_identities(3, Some((2, 1))).unwrap().into_iter().filter(|c| !c.ok).collect();
        assert_eq!(bad.len(), 3);
        assert!(bad.iter().all(|c| (c.n, c.k) == (2, 1)));
    }
}
