//! Cohomology of the smooth `n`-dimensional quadric.
//!
//! Even degrees `2j` are spanned by `h^j`, except the middle degree of an
//! even-dimensional quadric `n = 2c`, spanned by the two families of
//! `c`-planes `A`, `B` with `h^c = A + B`. Intersection numbers:
//! `∫ h^n = 2`; in the middle `A² = B² = 1, AB = 0` for even `c` and
//! `A² = B² = 0, AB = 1` for odd `c`. All classes are of type `(j, j)`.

use crate::exactlin::{Matrix, Scalar};

use super::cohomology::Cohomology;

/// `true` when `H^{2j}` is the two-dimensional middle block.
fn is_middle(n: usize, j: usize) -> bool {
    n % 2 == 0 && 2 * j == n
}

/// Middle intersection matrix on `{A, B}`.
pub fn middle_form(n: usize) -> Matrix<Scalar> {
    let c = n / 2;
    if c % 2 == 0 {
        Matrix::from_ints(&[&[1, 0], &[0, 1]])
    } else {
        Matrix::from_ints(&[&[0, 1], &[1, 0]])
    }
}

pub fn quadric_cohomology(n: usize) -> Cohomology {
    assert!(n >= 1, "quadric of dimension zero");
    let mut out = Cohomology::empty(n);
    for j in 0..=n {
        let dim = if is_middle(n, j) { 2 } else { 1 };
        out.types.insert(2 * j, vec![(j as i64, j as i64); dim]);
    }
    for j in 0..=n / 2 {
        if is_middle(n, j) {
            out.set_pairing(2 * j, middle_form(n));
        } else {
            out.set_pairing(2 * j, Matrix::from_ints(&[&[2]]));
        }
    }
    out
}

/// Coordinates of `h^j` in the degree-`2j` basis.
pub fn power_class(n: usize, j: usize) -> Vec<Scalar> {
    if is_middle(n, j) {
        vec![Scalar::one(), Scalar::one()]
    } else {
        vec![Scalar::one()]
    }
}

/// `A − B` in the middle degree of an even-dimensional quadric.
pub fn primitive_class(n: usize) -> Option<Vec<Scalar>> {
    (n % 2 == 0).then(|| vec![Scalar::one(), Scalar::from_int(-1)])
}

/// `∫ (A − B)²`: `2` for even `c`, `−2` for odd `c`.
pub fn primitive_square(n: usize) -> i64 {
    if (n / 2) % 2 == 0 {
        2
    } else {
        -2
    }
}

/// Restriction `H^q(Q^{n+1}) → H^q(Q^n)` to a hyperplane section:
/// `h^j ↦ h^j`, each middle plane of `Q^{n+1}` goes to `h^j / 2`.
pub fn section_restriction(n: usize, q: usize) -> Matrix<Scalar> {
    let big = n + 1;
    if q % 2 == 1 || q > 2 * n {
        let src = if q % 2 == 0 && q <= 2 * big { quadric_cohomology(big).dim(q) } else { 0 };
        return Matrix::zeros(0, src);
    }
    let j = q / 2;
    let target = power_class(n, j);
    if is_middle(big, j) {
        let half = Scalar::from_frac(1, 2);
        let col: Vec<Scalar> = target.iter().map(|x| x * &half).collect();
        Matrix::from_columns(target.len(), &[col.clone(), col]).expect("two equal columns")
    } else {
        Matrix::from_columns(target.len(), &[target]).expect("one column")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Top-degree pairing of two middle classes through the full pairing block.
    fn middle_pair(n: usize, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let q = quadric_cohomology(n);
        let p = q.pairing(n);
        let px = p.transpose().mul_vec(x).unwrap();
        px.iter().zip(y).fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
    }

    /// `Q² ≅ ℙ¹ × ℙ¹`: in `ℚ[a, b]/(a², b²)` the rulings are `a`, `b` and the
    /// point is `ab`. Monomials `a^i b^j` with `i, j ≤ 1`; multiply and read
    /// the `ab` coefficient.
    #[test]
    fn surface_matches_product_ring() {
        let mul = |x: [i64; 4], y: [i64; 4]| {
            // basis 1, a, b, ab
            let mut out = [0i64; 4];
            for (i, &cx) in x.iter().enumerate() {
                for (j, &cy) in y.iter().enumerate() {
                    let (ai, bi) = (i & 1, i >> 1);
                    let (aj, bj) = (j & 1, j >> 1);
                    if ai + aj <= 1 && bi + bj <= 1 {
                        out[(ai + aj) | ((bi + bj) << 1)] += cx * cy;
                    }
                }
            }
            out[3]
        };
        let a = [0, 1, 0, 0];
        let b = [0, 0, 1, 0];
        let product = [[mul(a, a), mul(a, b)], [mul(b, a), mul(b, b)]];
        let form = middle_form(2);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(*form.get(i, j), Scalar::from_int(product[i][j]));
            }
        }
        let h = [0, 1, 1, 0];
        assert_eq!(mul(h, h), 2);
    }

    /// `Q⁴ ≅ Gr(2, 4)`: Schubert classes `σ₂`, `σ₁₁` in the middle; the top
    /// product `σ_λ σ_μ` is `1` exactly when `μ` is the complement of `λ` in
    /// the `2 × 2` box.
    #[test]
    fn fourfold_matches_schubert_duality() {
        let complement = |l: (i64, i64)| (2 - l.1, 2 - l.0);
        let classes = [(2, 0), (1, 1)];
        let form = middle_form(4);
        for (i, &l) in classes.iter().enumerate() {
            for (j, &m) in classes.iter().enumerate() {
                let expected = i64::from(complement(l) == m);
                assert_eq!(*form.get(i, j), Scalar::from_int(expected));
            }
        }
        // σ₁² = σ₂ + σ₁₁ is h², and (A − B)(A + B) = 0.
        let h2 = power_class(4, 2);
        let prim = primitive_class(4).unwrap();
        assert!(middle_pair(4, &prim, &h2).is_zero());
        assert_eq!(middle_pair(4, &h2, &h2), Scalar::from_int(2));
    }

    #[test]
    fn odd_quadric_has_no_middle() {
        let q = quadric_cohomology(3);
        assert_eq!(q.dim(3), 0);
        for j in 0..=3 {
            assert_eq!(q.dim(2 * j), 1);
        }
    }

    #[test]
    fn primitive_square_matches_form() {
        for n in [2, 4, 6, 8] {
            let p = primitive_class(n).unwrap();
            assert_eq!(middle_pair(n, &p, &p), Scalar::from_int(primitive_square(n)));
            assert!(middle_pair(n, &p, &power_class(n, n / 2)).is_zero());
        }
    }

    #[test]
    fn section_restriction_preserves_degree() {
        // ∫_{Q^{n+1}} x · h = ∫_{Q^n} x|_Q for x of degree 2n.
        for n in 1..7 {
            let big = quadric_cohomology(n + 1);
            let r = section_restriction(n, 2 * n);
            let small = quadric_cohomology(n);
            for x in 0..big.dim(2 * n) {
                let mut e = vec![Scalar::zero(); big.dim(2 * n)];
                e[x] = Scalar::one();
                let restricted = r.mul_vec(&e).unwrap();
                let hx = big.pairing(2 * n).mul_vec(&power_class(n + 1, 1)).unwrap();
                let on_q = small.pairing(2 * n).get(0, 0) * &restricted[0];
                let total = hx[x].clone();
                assert_eq!(total, on_q, "n = {n}, x = {x}");
            }
        }
    }
}
