//! Deligne's splitting `H = ⊕ I^{p,q}`.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use super::{check_mhs, MhsData};
use crate::error::{Error, Result};
use crate::exactlin::Subspace;

/// Nonzero parts `I^{p,q}` of the splitting.
#[derive(Clone, Debug)]
pub struct DeligneSplitting {
    pub parts: BTreeMap<(i64, i64), Subspace>,
    pub ambient: usize,
}

impl DeligneSplitting {
    pub fn get(&self, p: i64, q: i64) -> Subspace {
        self.parts.get(&(p, q)).cloned().unwrap_or_else(|| Subspace::zero(self.ambient))
    }

    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.parts.get(&(p, q)).map_or(0, Subspace::dim)
    }

    /// `⊕ I^{p,q}` over the pairs accepted by `keep`.
    pub fn span_where(&self, keep: impl Fn(i64, i64) -> bool) -> Result<Subspace> {
        let mut acc = Subspace::zero(self.ambient);
        for (&(p, q), s) in &self.parts {
            if keep(p, q) {
                acc = acc.sum(s)?;
            }
        }
        Ok(acc)
    }
}

impl Serialize for DeligneSplitting {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Part {
            p: i64,
            q: i64,
            basis: Vec<Vec<crate::exactlin::Scalar>>,
        }
        let parts: Vec<Part> =
            self.parts.iter().map(|(&(p, q), sub)| Part { p, q, basis: sub.vectors() }).collect();
        parts.serialize(s)
    }
}

/// `I^{p,q} = F^p ∩ W_{p+q} ∩ (conj F^q ∩ W_{p+q} + Σ_{j≥2} conj F^{q−j+1} ∩ W_{p+q−j})`.
pub fn deligne_splitting(data: &MhsData) -> Result<DeligneSplitting> {
    let report = check_mhs(data)?;
    if !report.ok {
        return Err(Error::Contract(format!("not a mixed Hodge structure: {}", report.failures.join("; "))));
    }
    let fbar = data.f.conj();
    let (flo, fhi) = data.level_range();
    let Some((wlo, _)) = data.w.range() else {
        return Ok(DeligneSplitting { parts: BTreeMap::new(), ambient: data.dim });
    };
    let mut parts = BTreeMap::new();
    let mut total = 0;
    for k in data.w.jumps() {
        for p in flo..=fhi {
            let q = k - p;
            let fp = data.f.get(p).intersect(&data.w.get(k))?;
            if fp.is_zero() {
                continue;
            }
            let mut inner = fbar.get(q).intersect(&data.w.get(k))?;
            let mut j = 2;
            while k - j >= wlo {
                inner = inner.sum(&fbar.get(q - j + 1).intersect(&data.w.get(k - j))?)?;
                j += 1;
            }
            let part = fp.intersect(&inner)?;
            if !part.is_zero() {
                total += part.dim();
                parts.insert((p, q), part);
            }
        }
    }
    if total != data.dim {
        return Err(Error::Internal(format!("splitting parts have total dimension {total}, expected {}", data.dim)));
    }
    Ok(DeligneSplitting { parts, ambient: data.dim })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{elliptic, non_split, tate3};
    use super::*;
    use crate::exactlin::Scalar;

    #[test]
    fn hodge_tate_string() {
        let sp = deligne_splitting(&elliptic()).unwrap();
        assert_eq!(sp.get(1, 1), Subspace::coordinate(2, &[0]));
        assert_eq!(sp.get(0, 0), Subspace::coordinate(2, &[1]));
        assert_eq!(sp.parts.len(), 2);
        let sp3 = deligne_splitting(&tate3(1)).unwrap();
        assert_eq!(sp3.dim(2, 2) + sp3.dim(1, 1) + sp3.dim(0, 0), 3);
    }

    #[test]
    fn non_split_example() {
        let sp = deligne_splitting(&non_split()).unwrap();
        let u = Subspace::span_vectors(2, &[vec![Scalar::one(), Scalar::i()]]).unwrap();
        assert_eq!(sp.get(1, 1), u);
        assert_eq!(sp.get(0, 0), Subspace::coordinate(2, &[1]));
    }

    #[test]
    fn pure_structure() {
        let f1 = Subspace::span_vectors(2, &[vec![Scalar::one(), Scalar::i()]]).unwrap();
        let data = MhsData::new(
            1,
            crate::filtration::IncreasingFiltration::trivial(2, 1),
            crate::filtration::DecreasingFiltration::new(2, [(0, Subspace::full(2)), (1, f1.clone())]).unwrap(),
            None,
            None,
        )
        .unwrap();
        let sp = deligne_splitting(&data).unwrap();
        assert_eq!(sp.get(1, 0), f1);
        assert_eq!(sp.get(0, 1), f1.conj());
    }
}
