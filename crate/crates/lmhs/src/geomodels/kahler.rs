//! Hodge index of the nearby fiber when the central fiber carries a class
//! restricting to a Kähler class on every component: the general fiber then
//! behaves like a Kähler manifold, and its index is read off the Hodge numbers
//! through the Lefschetz decomposition.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::epsilon;

/// `h[a][b] = h^{a,b}` of an `n`-fold; entries outside the table are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeNumbers {
    pub h: Vec<Vec<usize>>,
}

impl HodgeNumbers {
    pub fn get(&self, a: i64, b: i64) -> usize {
        if a < 0 || b < 0 {
            return 0;
        }
        self.h.get(a as usize).and_then(|row| row.get(b as usize)).copied().unwrap_or(0)
    }

    fn check_symmetric(&self) -> Result<()> {
        for (a, row) in self.h.iter().enumerate() {
            for (b, &x) in row.iter().enumerate() {
                if self.get(b as i64, a as i64) != x {
                    return Err(Error::Contract(format!("h^({a},{b}) = {x} differs from h^({b},{a})")));
                }
            }
        }
        Ok(())
    }

    /// The Hodge numbers of a K3 surface.
    pub fn k3() -> Self {
        HodgeNumbers { h: vec![vec![1, 0, 1], vec![0, 20, 0], vec![1, 0, 1]] }
    }
}

/// `h^{p−s, m−p−s} − h^{p−s−1, m−p−s−1}`, the primitive dimension.
fn primitive(hodge: &HodgeNumbers, m: i64, p: i64, s: i64) -> Result<usize> {
    let (a, b) = (p - s, m - p - s);
    let (top, below) = (hodge.get(a, b), hodge.get(a - 1, b - 1));
    top.checked_sub(below).ok_or_else(|| {
        Error::Input(format!(
            "h^({a},{b}) = {top} < h^({},{}) = {below}: the numbers are not Lefschetz-admissible",
            a - 1,
            b - 1
        ))
    })
}

/// Signature of `S(C·, ·̄)` on `H^{p, m−p}`: even Lefschetz levels are
/// positive, odd levels negative.
pub fn kahler_index_formula(hodge: &HodgeNumbers, m: usize, p: i64) -> Result<(usize, usize)> {
    hodge.check_symmetric()?;
    let m = m as i64;
    let (mut plus, mut minus) = (0, 0);
    let mut s = 0;
    while p - s >= 0 && m - p - s >= 0 {
        let d = primitive(hodge, m, p, s)?;
        if s % 2 == 0 {
            plus += d;
        } else {
            minus += d;
        }
        s += 1;
    }
    Ok((plus, minus))
}

/// `Σ_{a,b} (−1)^a h^{a,b}`, the signature of the cup product on `H^m` for even `m`.
pub fn full_signature(hodge: &HodgeNumbers) -> i64 {
    let mut total = 0i64;
    for (a, row) in hodge.h.iter().enumerate() {
        let sign = if a % 2 == 0 { 1 } else { -1 };
        total += sign * row.iter().map(|&x| x as i64).sum::<i64>();
    }
    total
}

/// Signature of the real cup product on `H^m` assembled from the rows of
/// [`kahler_index_formula`]: on `H^{p,q}` the Hermitian form `∫ x ∧ ȳ` is
/// `ε(m) i^{q−p}` times `S(C·, ·̄)`.
pub fn middle_signature_from_rows(hodge: &HodgeNumbers, m: usize) -> Result<i64> {
    if m % 2 == 1 {
        return Err(Error::Contract("the cup product is symmetric only for even m".into()));
    }
    let mut total = 0i64;
    for p in 0..=m as i64 {
        let (plus, minus) = kahler_index_formula(hodge, m, p)?;
        let q = m as i64 - p;
        let sign = epsilon(m as i64) * if ((q - p) / 2).rem_euclid(2) == 0 { 1 } else { -1 };
        total += sign * (plus as i64 - minus as i64);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn k3_surface() {
        let k3 = HodgeNumbers::k3();
        assert_eq!(kahler_index_formula(&k3, 2, 1).unwrap(), (19, 1));
        assert_eq!(kahler_index_formula(&k3, 2, 2).unwrap(), (1, 0));
        assert_eq!(kahler_index_formula(&k3, 2, 0).unwrap(), (1, 0));
        assert_eq!(full_signature(&k3), -16);
        // b⁺ = 3, b⁻ = 19 for the K3 lattice
        assert_eq!(middle_signature_from_rows(&k3, 2).unwrap(), 3 - 19);
    }

    #[test]
    fn inadmissible_numbers_are_reported() {
        let bad = HodgeNumbers { h: vec![vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]] };
        assert!(matches!(kahler_index_formula(&bad, 2, 1), Err(Error::Input(_))));
        let asym = HodgeNumbers { h: vec![vec![1, 1], vec![0, 1]] };
        assert!(kahler_index_formula(&asym, 1, 1).is_err());
    }

    /// Hodge numbers of a Kähler `n`-fold built from primitive dimensions.
    fn diamond(n: usize, prim: &[Vec<usize>]) -> HodgeNumbers {
        let mut h = vec![vec![0; n + 1]; n + 1];
        for a in 0..=n {
            for b in 0..=n {
                let k = a + b;
                let (a0, b0) = if k <= n { (a, b) } else { (n - b, n - a) };
                let mut total = 0;
                let mut r = 0;
                while r <= a0.min(b0) {
                    let (x, y) = (a0 - r, b0 - r);
                    let (x, y) = if x <= y { (x, y) } else { (y, x) };
                    total += prim[x][y];
                    r += 1;
                }
                h[a][b] = total;
            }
        }
        HodgeNumbers { h }
    }

    proptest! {
        #[test]
        fn rows_add_up_and_signatures_agree(half in 1usize..4, seed in proptest::collection::vec(0usize..4, 16)) {
            let n = 2 * half;
            let mut prim = vec![vec![0; n + 1]; n + 1];
            let mut it = seed.iter().cycle();
            for x in 0..=n {
                for y in x..=n {
                    if x + y <= n {
                        prim[x][y] = *it.next().unwrap();
                    }
                }
            }
            prim[0][0] = 1;
            let h = diamond(n, &prim);
            for p in 0..=n as i64 {
                let (plus, minus) = kahler_index_formula(&h, n, p).unwrap();
                prop_assert_eq!(plus + minus, h.get(p, n as i64 - p));
            }
            prop_assert_eq!(middle_signature_from_rows(&h, n).unwrap(), full_signature(&h));
        }
    }
}
