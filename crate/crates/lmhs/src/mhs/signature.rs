//! Primitive parts, the signature table `s±^{p,q}`, and its aggregation
//! into the signature of the nearby (orbit) Hodge structure.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{check_situation_a, check_situation_b, deligne_splitting, MhsData};
use crate::error::{Error, Result};
use crate::exactlin::{hermitian_signature, Matrix, Scalar, Signature, Subspace};
use crate::filtration::{induced_map, GradedPiece};

/// `P_{d+l} = ker(N^{l+1} : Gr_{d+l} → Gr_{d−l−2})`, in the coordinates of the graded piece.
#[derive(Clone, Debug)]
pub struct PrimitivePart {
    pub l: i64,
    pub piece: GradedPiece,
    pub coords: Subspace,
}

impl PrimitivePart {
    pub fn dim(&self) -> usize {
        self.coords.dim()
    }
}

pub fn primitive_part(data: &MhsData, l: i64) -> Result<PrimitivePart> {
    let piece = data.w.graded_piece(data.d + l);
    if l < 0 {
        return Ok(PrimitivePart { l, coords: Subspace::zero(piece.dim()), piece });
    }
    let power = data.n()?.pow(l as usize + 1)?;
    let map = induced_map(&power, &piece, &data.w.graded_piece(data.d - l - 2))?;
    let coords = if piece.dim() == 0 { Subspace::zero(0) } else { Subspace::kernel(&map) };
    Ok(PrimitivePart { l, piece, coords })
}

/// `s±^{p,q}` on the `(p,q)`-parts of primitive pieces, plus `dim I^{p,q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureTable {
    pub d: i64,
    pub entries: BTreeMap<(i64, i64), Signature>,
    pub part_dims: BTreeMap<(i64, i64), usize>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    p: i64,
    q: i64,
    plus: usize,
    minus: usize,
}

#[derive(Serialize, Deserialize)]
struct PartJson {
    p: i64,
    q: i64,
    dim: usize,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    d: i64,
    entries: Vec<EntryJson>,
    parts: Vec<PartJson>,
}

impl Serialize for SignatureTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableJson {
            d: self.d,
            entries: self
                .entries
                .iter()
                .map(|(&(p, q), sig)| EntryJson { p, q, plus: sig.positives, minus: sig.negatives })
                .collect(),
            parts: self.part_dims.iter().map(|(&(p, q), &dim)| PartJson { p, q, dim }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignatureTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let t = TableJson::deserialize(d)?;
        Ok(SignatureTable {
            d: t.d,
            entries: t.entries.iter().map(|e| ((e.p, e.q), Signature::new(e.plus, e.minus, 0))).collect(),
            part_dims: t.parts.iter().map(|e| ((e.p, e.q), e.dim)).collect(),
        })
    }
}

impl SignatureTable {
    pub fn get(&self, p: i64, q: i64) -> Signature {
        self.entries.get(&(p, q)).copied().unwrap_or_default()
    }

    pub fn part_dim(&self, p: i64, q: i64) -> usize {
        self.part_dims.get(&(p, q)).copied().unwrap_or(0)
    }

    /// True when every primitive form is positive definite.
    pub fn is_polarized(&self) -> bool {
        self.entries.values().all(|s| s.negatives == 0)
    }

    /// Builds a table directly from primitive signatures; part dimensions
    /// follow from the Lefschetz decomposition.
    pub fn from_primitive(d: i64, entries: BTreeMap<(i64, i64), Signature>) -> Self {
        let mut part_dims = BTreeMap::new();
        for (&(p, q), sig) in &entries {
            let l = p + q - d;
            for r in 0..=l {
                *part_dims.entry((p - r, q - r)).or_insert(0) += sig.positives + sig.negatives;
            }
        }
        SignatureTable { d, entries, part_dims }
    }
}

/// Gram matrix of `i^{p−q} S(u, N^l conj v)` on a basis of `I^{p,q}_prim`.
pub(crate) fn primitive_gram(
    s: &Matrix<Scalar>,
    n_l: &Matrix<Scalar>,
    basis: &Matrix<Scalar>,
    p: i64,
    q: i64,
) -> Result<Matrix<Scalar>> {
    let g = basis.transpose().mul(s)?.mul(n_l)?.mul(&basis.conj())?;
    Ok(g.scale(&Scalar::i_pow(p - q)))
}

pub fn signature_table(data: &MhsData) -> Result<SignatureTable> {
    for (name, report) in [("A'", check_situation_a(data)?), ("B'", check_situation_b(data)?)] {
        if !report.ok {
            return Err(Error::Contract(format!("situation {name} fails: {}", report.failures.join("; "))));
        }
    }
    let n = data.n()?;
    let s = data.s()?;
    let split = deligne_splitting(data)?;
    let mut entries = BTreeMap::new();
    let mut part_dims = BTreeMap::new();
    for (&(p, q), part) in &split.parts {
        part_dims.insert((p, q), part.dim());
        let l = p + q - data.d;
        if l < 0 {
            continue;
        }
        let kernel = Subspace::kernel(&n.pow(l as usize + 1)?);
        let prim = part.intersect(&kernel)?;
        if prim.is_zero() {
            continue;
        }
        let gram = primitive_gram(s, &n.pow(l as usize)?, prim.basis(), p, q)?;
        if !gram.is_hermitian() {
            return Err(Error::Internal(format!("primitive form on ({p},{q}) is not Hermitian")));
        }
        let sig = hermitian_signature(&gram)?;
        if !sig.is_nondegenerate() {
            return Err(Error::Contract(format!("primitive form on ({p},{q}) is degenerate")));
        }
        entries.insert((p, q), sig);
    }
    Ok(SignatureTable { d: data.d, entries, part_dims })
}

/// `S±^{p, d+l−p} = Σ_{r ≥ max(0, −l)} s±^{p+r, d+l−p+r}`, checked against
/// the dimension of the `(p, d+l−p)`-part of `Gr_{d+l}`.
pub fn aggregate_s(table: &SignatureTable, p: i64, l: i64) -> Result<(usize, usize)> {
    let q = table.d + l - p;
    let mut plus = 0;
    let mut minus = 0;
    for (&(pp, qq), sig) in &table.entries {
        let r = pp - p;
        if r >= 0.max(-l) && qq - q == r {
            plus += sig.positives;
            minus += sig.negatives;
        }
    }
    let dim = table.part_dim(p, q);
    if plus + minus != dim {
        return Err(Error::Internal(format!(
            "aggregated signature ({plus},{minus}) at ({p},{q}) does not add up to the part dimension {dim}"
        )));
    }
    Ok((plus, minus))
}

/// Predicted signature of `S(C·, conj ·)` on the `(p, d−p)` component of the
/// nearby Hodge structure, as `Σ_{k=0}^{d} S±^{p,k}`; the equivalent double
/// sum over `l ≥ p − d`, `r ≥ max(0, −l)` is evaluated too and must agree.
pub fn nearby_index_formula(table: &SignatureTable, p: i64) -> Result<(usize, usize)> {
    let d = table.d;
    let mut single = (0, 0);
    for k in 0..=d {
        let (a, b) = aggregate_s(table, p, p + k - d)?;
        single.0 += a;
        single.1 += b;
    }
    let mut double = (0, 0);
    for (&(pp, qq), sig) in &table.entries {
        let r = pp - p;
        if r < 0 {
            continue;
        }
        let l = qq - r - d + p;
        if l >= p - d && r >= (-l).max(0) {
            double.0 += sig.positives;
            double.1 += sig.negatives;
        }
    }
    if single != double {
        return Err(Error::Internal(format!(
            "single sum {single:?} and double sum {double:?} disagree at p = {p}"
        )));
    }
    Ok(single)
}

#[cfg(test)]
mod tests {
    use super::super::tests::{elliptic, tate3};
    use super::*;
    use crate::filtration::{DecreasingFiltration, IncreasingFiltration};

    #[test]
    fn primitive_parts() {
        let t = tate3(1);
        assert_eq!(primitive_part(&t, 2).unwrap().dim(), 1);
        assert_eq!(primitive_part(&t, 0).unwrap().dim(), 0);
        assert_eq!(primitive_part(&t, -2).unwrap().dim(), 0);
        let mut n = Matrix::<Scalar>::zeros(3, 3);
        n.set(1, 0, Scalar::one());
        let data = MhsData::new(
            1,
            crate::filtration::weight_filtration(&n, 1).unwrap(),
            DecreasingFiltration::trivial(3, 0),
            Some(n),
            None,
        )
        .unwrap();
        assert_eq!(primitive_part(&data, 1).unwrap().dim(), 1);
        assert_eq!(primitive_part(&data, 0).unwrap().dim(), 1);
    }

    #[test]
    fn elliptic_table_and_aggregation() {
        let table = signature_table(&elliptic()).unwrap();
        assert_eq!(table.get(1, 1), Signature::new(1, 0, 0));
        assert_eq!(table.entries.len(), 1);
        assert_eq!(aggregate_s(&table, 0, -1).unwrap(), (1, 0));
        assert_eq!(nearby_index_formula(&table, 1).unwrap(), (1, 0));
        assert_eq!(nearby_index_formula(&table, 0).unwrap(), (1, 0));
    }

    #[test]
    fn tate3_aggregation() {
        let table = signature_table(&tate3(1)).unwrap();
        assert_eq!(table.get(2, 2), Signature::new(1, 0, 0));
        assert_eq!(aggregate_s(&table, 1, 0).unwrap(), (1, 0));
        let flipped = signature_table(&tate3(-1)).unwrap();
        assert_eq!(flipped.get(2, 2), Signature::new(0, 1, 0));
    }

    #[test]
    fn rank_two_sublattice_of_k3_type() {
        // Pure weight 2, everything of type (1,1), form diag(2, −2).
        let s = Matrix::from_ints(&[&[2, 0], &[0, -2]]);
        let data = MhsData::new(
            2,
            IncreasingFiltration::trivial(2, 2),
            DecreasingFiltration::new(2, [(1, Subspace::full(2))]).unwrap(),
            Some(Matrix::zeros(2, 2)),
            Some(s),
        )
        .unwrap();
        let table = signature_table(&data).unwrap();
        assert_eq!(table.get(1, 1), Signature::new(1, 1, 0));
        assert_eq!(nearby_index_formula(&table, 1).unwrap(), (1, 1));
    }

    #[test]
    fn positive_line_of_top_type() {
        // d = 1, F^1 = span{e0 + i e1}, S = [[0,1],[−1,0]].
        let f1 = Subspace::span_vectors(2, &[vec![Scalar::one(), Scalar::i()]]).unwrap();
        let data = MhsData::new(
            1,
            IncreasingFiltration::trivial(2, 1),
            DecreasingFiltration::new(2, [(0, Subspace::full(2)), (1, f1)]).unwrap(),
            Some(Matrix::zeros(2, 2)),
            Some(Matrix::from_ints(&[&[0, 1], &[-1, 0]])),
        )
        .unwrap();
        let table = signature_table(&data).unwrap();
        // i S(u, ū) with u = e0 + i e1: S(u, ū) = −2i, so the value is 2.
        assert_eq!(table.get(1, 0), Signature::new(1, 0, 0));
        assert_eq!(table.get(0, 1), Signature::new(1, 0, 0));
    }

    #[test]
    fn table_json_round_trip() {
        let table = signature_table(&tate3(1)).unwrap();
        let text = serde_json::to_string(&table).unwrap();
        assert!(text.contains(r#""p":2,"q":2,"plus":1,"minus":0"#));
        let back: SignatureTable = serde_json::from_str(&text).unwrap();
        assert_eq!(back, table);
    }
}
