//! Sano's non-Kähler Calabi–Yau families and the Hashimoto–Sano threefolds.
//!
//! Negative directions of the nearby index sit only in the middle Hodge
//! types; everything else in `H^{k, m−k}` is positive.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Scalar};
use crate::steenbrink::NearbyEntry;

/// Number of negative directions in `H^{k, m−k}` of the nearby fiber, keyed by `k`.
pub fn sano_negatives(m: usize, a: u64) -> Result<BTreeMap<usize, u64>> {
    if m < 3 {
        return Err(Error::Input(format!("the Sano families start in dimension 3, got {m}")));
    }
    if a < 1 {
        return Err(Error::Input("the twisting parameter a must be positive".into()));
    }
    let mut out = BTreeMap::new();
    match m % 4 {
        3 => {}
        1 => {
            let n = 9 * (27 * a * a - 2 * a + 5) + a + 6;
            out.insert((m - 1) / 2, n);
            out.insert((m + 1) / 2, n);
        }
        _ if m == 4 => {
            out.insert(2, a + 1);
        }
        _ => {
            out.insert(m / 2, a + 2);
        }
    }
    Ok(out)
}

/// Full index table from the Hodge numbers `h^{k, m−k}`, `k = 0..=m`.
pub fn sano_index_table(m: usize, a: u64, hodge: &[usize]) -> Result<Vec<NearbyEntry>> {
    if hodge.len() != m + 1 {
        return Err(Error::Input(format!("expected {} Hodge numbers, got {}", m + 1, hodge.len())));
    }
    let neg = sano_negatives(m, a)?;
    let mut table = Vec::with_capacity(m + 1);
    for (k, &h) in hodge.iter().enumerate() {
        let minus = neg.get(&k).copied().unwrap_or(0) as usize;
        let plus = h.checked_sub(minus).ok_or_else(|| {
            Error::Input(format!("h^({k},{}) = {h} is smaller than the {minus} negative directions", m - k))
        })?;
        table.push(NearbyEntry { p: k as i64, q: (m - k) as i64, plus, minus });
    }
    Ok(table)
}

/// `(ι^a)*` on the Picard lattice of a `(2,2,2)` K3 in `P¹×P¹×P¹`, in the
/// basis of the three hyperplane pullbacks.
pub fn hashimoto_sano_matrix(a: i64) -> Matrix<Scalar> {
    Matrix::from_ints(&[
        &[1, 4 * a * a - 2 * a, 4 * a * a + 2 * a],
        &[0, 1 - 2 * a, -2 * a],
        &[0, 2 * a, 1 + 2 * a],
    ])
}

/// Intersection form `h_i·h_j` on the K3 `S ∈ |(2,2,2)|`, computed as
/// `∫_{(P¹)³} h_i h_j (2h₁ + 2h₂ + 2h₃)`.
pub fn k3_picard_form() -> Matrix<Scalar> {
    // ∫ h₁^x h₂^y h₃^z = 1 exactly when x = y = z = 1; h_i² = 0
    let integral = |e: [u8; 3]| i64::from(e == [1, 1, 1]);
    Matrix::from_fn(3, 3, |i, j| {
        let mut total = 0;
        for k in 0..3 {
            let mut e = [0u8; 3];
            e[i] += 1;
            e[j] += 1;
            e[k] += 1;
            total += 2 * integral(e);
        }
        Scalar::from_int(total)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HashimotoSanoCheck {
    pub a: i64,
    pub matrix: Matrix<Scalar>,
    pub form: Matrix<Scalar>,
    pub det: Scalar,
    pub preserves_form: bool,
    pub composite_rank: usize,
    pub ok: bool,
}

/// Checks that `(ι^a)*` is an isometry of the Picard lattice and that the
/// gluing composed with the Gysin map into `H⁴((P¹)³)` has full rank.
pub fn hashimoto_sano_pic_fixture(a: i64) -> Result<HashimotoSanoCheck> {
    if a < 1 {
        return Err(Error::Input("the gluing exponent a must be positive".into()));
    }
    let matrix = hashimoto_sano_matrix(a);
    let form = k3_picard_form();
    let det = matrix.det()?;
    let preserves_form = matrix.transpose().mul(&form)?.mul(&matrix)? == form;
    // Gysin of a Picard class x pairs with h_i as ∫_S h_i·x
    let composite_rank = form.mul(&matrix)?.rank();
    let unimodular = det == Scalar::from_int(1) || det == Scalar::from_int(-1);
    let ok = unimodular && preserves_form && composite_rank == 3;
    Ok(HashimotoSanoCheck { a, matrix, form, det, preserves_form, composite_rank, ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negatives_by_dimension() {
        assert!(sano_negatives(3, 1).unwrap().is_empty());
        assert!(sano_negatives(7, 5).unwrap().is_empty());
        assert_eq!(sano_negatives(5, 1).unwrap(), BTreeMap::from([(2, 277), (3, 277)]));
        for a in 1..6 {
            assert_eq!(sano_negatives(4, a).unwrap(), BTreeMap::from([(2, a + 1)]));
            assert_eq!(sano_negatives(6, a).unwrap(), BTreeMap::from([(3, a + 2)]));
            assert_eq!(sano_negatives(8, a).unwrap(), BTreeMap::from([(4, a + 2)]));
        }
        assert!(sano_negatives(2, 1).is_err());
    }

    #[test]
    fn index_table_needs_room_for_negatives() {
        let t = sano_index_table(4, 2, &[1, 0, 10, 0, 1]).unwrap();
        assert_eq!((t[2].plus, t[2].minus), (7, 3));
        assert!(sano_index_table(4, 2, &[1, 0, 2, 0, 1]).is_err());
    }

    #[test]
    fn picard_form_of_the_k3() {
        assert_eq!(k3_picard_form(), Matrix::from_ints(&[&[0, 2, 2], &[2, 0, 2], &[2, 2, 0]]));
        assert_eq!(k3_picard_form().det().unwrap(), Scalar::from_int(16));
    }

    #[test]
    fn gluing_is_an_isometry() {
        assert_eq!(hashimoto_sano_matrix(1), Matrix::from_ints(&[&[1, 2, 6], &[0, -1, -2], &[0, 2, 3]]));
        for a in 1..=3 {
            let c = hashimoto_sano_pic_fixture(a).unwrap();
            assert!(c.ok, "a = {a}: {c:?}");
            assert_eq!(c.composite_rank, 3);
        }
    }

    #[test]
    fn gluings_are_powers_of_the_first() {
        let m1 = hashimoto_sano_matrix(1);
        for a in 1..=4 {
            assert_eq!(m1.pow(a).unwrap(), hashimoto_sano_matrix(a as i64));
        }
    }
}
