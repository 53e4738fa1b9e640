//! Degenerations of a quintic threefold acquiring sixteen ordinary double
//! points. Six independent relations among the nodes span the primitive
//! part `E₂^{1,2}`; the defect measures how many fail to lift to `E₂^{−1,4}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::steenbrink::NearbyEntry;

pub const O16_RELATIONS: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct O16Report {
    pub defect: usize,
    pub verdict: bool,
    /// `dim E₂^{1,2} − dim E₂^{−1,4}`; zero exactly when the monodromy criterion holds
    pub criterion_gap: usize,
    pub polarized: bool,
    /// present only when the verdict holds
    pub table: Option<Vec<NearbyEntry>>,
}

/// `resolution` lists `(plus, minus)` of the small resolution on `H^{k,3−k}`.
pub fn o16_evaluator(defect: usize, resolution: &[(usize, usize)]) -> Result<O16Report> {
    if defect > O16_RELATIONS {
        return Err(Error::Input(format!("defect {defect} exceeds the {O16_RELATIONS} relations")));
    }
    if resolution.len() != 4 {
        return Err(Error::Input(format!("expected four resolution rows, got {}", resolution.len())));
    }
    let criterion_gap = O16_RELATIONS - (O16_RELATIONS - defect);
    let verdict = criterion_gap == 0;
    let polarized = resolution.iter().all(|&(_, minus)| minus == 0);
    let table = verdict.then(|| {
        resolution
            .iter()
            .enumerate()
            .map(|(k, &(plus, minus))| {
                // the relations contribute (2,1) and (1,2) classes of weight 3
                let extra = if k == 1 || k == 2 { O16_RELATIONS } else { 0 };
                NearbyEntry { p: k as i64, q: 3 - k as i64, plus: plus + extra, minus }
            })
            .collect()
    });
    Ok(O16Report { defect, verdict, criterion_gap, polarized, table })
}

#[cfg(test)]
mod tests {
    use super::*;

    const RES: [(usize, usize); 4] = [(1, 0), (50, 0), (50, 0), (1, 0)];

    #[test]
    fn zero_defect_passes() {
        let r = o16_evaluator(0, &RES).unwrap();
        assert!(r.verdict && r.polarized);
        let t = r.table.unwrap();
        assert_eq!((t[0].plus, t[1].plus, t[2].plus, t[3].plus), (1, 56, 56, 1));
    }

    #[test]
    fn gap_equals_defect() {
        for d in 1..=6 {
            let r = o16_evaluator(d, &RES).unwrap();
            assert!(!r.verdict);
            assert_eq!(r.criterion_gap, d);
            assert!(r.table.is_none());
        }
        assert!(o16_evaluator(7, &RES).is_err());
    }

    #[test]
    fn unpolarized_resolution_is_carried_through() {
        let r = o16_evaluator(0, &[(1, 0), (3, 1), (3, 1), (1, 0)]).unwrap();
        assert!(r.verdict && !r.polarized);
        assert_eq!(r.table.unwrap()[1].minus, 1);
    }
}
