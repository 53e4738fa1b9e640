//! Kodaira's degeneration of Hopf surfaces, after base change: two
//! Hirzebruch surfaces `S₁, S₂ ≅ F_e` glued along two rational curves,
//! `D₁ = (D₀)₁ = (D_∞)₂` and `D₂ = (D₀)₂ = (D_∞)₁`.
//!
//! `H²(F_e)` has basis `{D₀, f}` with `D₀² = −e`, `D₀·f = 1`, `f² = 0`, so
//! `D_∞ = D₀ + e f`. The gluing signs are `θ(y) = y₂|_D − y₁|_D`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::steenbrink::DegenerationData;

use super::cohomology::{two_level_data, Cohomology};

fn hirzebruch(e: i64) -> Cohomology {
    let mut c = Cohomology::empty(2);
    c.types.insert(0, vec![(0, 0)]);
    c.types.insert(2, vec![(1, 1); 2]);
    c.types.insert(4, vec![(2, 2)]);
    c.set_pairing(0, Matrix::from_ints(&[&[1]]));
    c.set_pairing(2, Matrix::from_ints(&[&[-e, 1], &[1, 0]]));
    c
}

fn line() -> Cohomology {
    let mut c = Cohomology::empty(1);
    c.types.insert(0, vec![(0, 0)]);
    c.types.insert(2, vec![(1, 1)]);
    c.set_pairing(0, Matrix::from_ints(&[&[1]]));
    c
}

/// Semistable model of the Kodaira family with Hirzebruch index `e ≥ 1`.
pub fn kodaira_degeneration(e: i64) -> Result<DegenerationData> {
    if e < 1 {
        return Err(Error::Contract(format!("Hirzebruch index must be positive, got {e}")));
    }
    let s = hirzebruch(e);
    let (components, _) = Cohomology::direct_sum(&[&s, &s])?;
    let d = line();
    let (double, _) = Cohomology::direct_sum(&[&d, &d])?;
    let mut theta = BTreeMap::new();
    // rows D₁, D₂; columns S₁, S₂
    theta.insert(0, Matrix::from_ints(&[&[-1, 1], &[-1, 1]]));
    // columns (D₀, f) of S₁ then of S₂; degree of each class on the curve.
    // D₁ is D₀ in S₁ and D_∞ in S₂; D₂ is D_∞ in S₁ and D₀ in S₂.
    theta.insert(2, Matrix::from_ints(&[&[e, -1, 0, 1], &[0, -1, -e, 1]]));
    two_level_data(
        2,
        &format!("Kodaira degeneration of Hopf surfaces: two copies of F_{e} glued along zero and infinity sections"),
        components,
        double,
        &theta,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steenbrink::{e2_page, nearby_hodge_index, validate, weight_criterion};

    #[test]
    fn fixture_is_valid() {
        for e in 1..4 {
            let data = kodaira_degeneration(e).unwrap();
            let rep = validate(&data);
            assert!(rep.ok, "{:?}", rep.failures);
            assert!(rep.adjointness.iter().all(|a| a.sign == 1));
        }
    }

    #[test]
    fn gysin_of_point_classes() {
        let data = kodaira_degeneration(3).unwrap();
        // H⁰(D₁), H⁰(D₂) → H²(S₁) ⊕ H²(S₂): S₂ part minus S₁ part.
        let g = data.gysin(2, 0);
        let expected = Matrix::from_ints(&[&[-1, -1], &[0, -3], &[1, 1], &[3, 0]]);
        assert_eq!(g, expected);
    }

    #[test]
    fn first_cohomology_is_not_pure() {
        let data = kodaira_degeneration(2).unwrap();
        let page = e2_page(&data, 1).unwrap();
        let dims: Vec<usize> = [-1, 0, 1].iter().map(|r| page.terms[r].dim()).collect();
        // r = −1 is weight 0, r = 1 is weight 2
        assert_eq!(dims, vec![1, 0, 0]);
        let crit = weight_criterion(&data, 1).unwrap();
        assert!(!crit.passes);
        assert_eq!(crit.first_failure(), Some(1));
        let rep = nearby_hodge_index(&data).unwrap();
        assert!(!rep.verdict);
        let h1 = rep.degree(1).unwrap();
        assert_eq!(h1.hodge_numbers.get(&0).copied().unwrap_or(0), 1);
        assert_eq!(h1.hodge_numbers.get(&1).copied().unwrap_or(0), 0);
    }
}
