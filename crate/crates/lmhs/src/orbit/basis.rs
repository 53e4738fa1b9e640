//! The well-ordered basis `N^r u_i^{p,q}` adapted to the Deligne splitting.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{diagonalize_hermitian, Matrix, Scalar, Sign, Subspace};
use crate::mhs::{deligne_splitting, DeligneSplitting, MhsData};

/// `N^r u_i^{p,q}` with `u_i^{p,q}` primitive in `I^{p,q}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisTag {
    pub p: i64,
    pub q: i64,
    pub i: usize,
    pub r: i64,
    /// Sign of the primitive Hermitian value of `u_i^{p,q}`, when `S` is present.
    pub sign: Option<Sign>,
}

impl BasisTag {
    /// Sort key: larger keys come first.
    fn key(&self) -> (i64, i64, i64, usize) {
        (self.p - self.r, self.q - self.r, self.r, self.i)
    }

    /// Hodge level of the vector: it lies in `I^{p−r, q−r}`.
    pub fn level(&self) -> i64 {
        self.p - self.r
    }

    /// Order `p + q − d − 2r` of its diagonal entry in the orbit form.
    pub fn predicted_order(&self, d: i64) -> i64 {
        self.p + self.q - d - 2 * self.r
    }
}

#[derive(Clone, Debug)]
pub struct WellOrderedBasis {
    pub tags: Vec<BasisTag>,
    /// Columns in the order of `tags`.
    pub vectors: Matrix<Scalar>,
}

impl WellOrderedBasis {
    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    /// Positions (in order) of the vectors spanning `F^k`.
    pub fn level_indices(&self, k: i64) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.tags[a].level() >= k).collect()
    }
}

/// Coordinates of `v` along `I^{p,q}` in the splitting `H = ⊕ I^{a,b}`.
fn split_component(split: &DeligneSplitting, v: &[Scalar], p: i64, q: i64) -> Result<Vec<Scalar>> {
    let mut blocks = Vec::new();
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for (&key, part) in &split.parts {
        blocks.push((key, cols.len(), part.dim()));
        cols.extend(part.vectors());
    }
    let all = Matrix::from_columns(split.ambient, &cols)?;
    let c = all.solve(v)?.ok_or_else(|| Error::Internal("splitting does not span".into()))?;
    let mut out = vec![Scalar::zero(); split.ambient];
    for (key, off, len) in blocks {
        if key == (p, q) {
            let part = split.parts[&key].basis();
            out = part.mul_vec(&c[off..off + len])?;
        }
    }
    Ok(out)
}

/// Primitive bases per `(p, q)`, `S`-diagonalized when `S` is present; for
/// `p > q` the `(q, p)` basis is the `I^{q,p}`-component of the conjugates,
/// so `conj u_i^{p,q} = u_i^{q,p} + (lower terms)`.
pub fn well_ordered_basis(data: &MhsData) -> Result<WellOrderedBasis> {
    let n = data.n()?;
    let split = deligne_splitting(data)?;
    let mut entries: Vec<(BasisTag, Vec<Scalar>)> = Vec::new();
    for (&(p, q), part) in &split.parts {
        let l = p + q - data.d;
        if l < 0 || p < q {
            continue;
        }
        let prim = part.intersect(&Subspace::kernel(&n.pow(l as usize + 1)?))?;
        if prim.is_zero() {
            continue;
        }
        let n_l = n.pow(l as usize)?;
        let mut basis = prim.basis().clone();
        let mut signs = vec![None; basis.cols()];
        if let Some(s) = &data.s {
            let gram = crate::mhs::signature::primitive_gram(s, &n_l, &basis, p, q)?;
            let (qm, diag) = diagonalize_hermitian(&gram)?;
            basis = basis.mul(&qm.conj())?;
            signs = diag.iter().map(Scalar::real_sign).collect();
        }
        let mut push = |pp: i64, qq: i64, i: usize, u: Vec<Scalar>, sign: Option<Sign>| -> Result<()> {
            let mut v = u;
            for r in 0..=l {
                entries.push((BasisTag { p: pp, q: qq, i, r, sign }, v.clone()));
                v = n.mul_vec(&v)?;
            }
            Ok(())
        };
        for i in 0..basis.cols() {
            let u = basis.column(i);
            if p > q {
                let ubar: Vec<Scalar> = u.iter().map(Scalar::conj).collect();
                let w = split_component(&split, &ubar, q, p)?;
                let sign = match &data.s {
                    Some(s) => {
                        let wm = Matrix::from_columns(data.dim, &[w.clone()])?;
                        let g = crate::mhs::signature::primitive_gram(s, &n_l, &wm, q, p)?;
                        g.get(0, 0).real_sign()
                    }
                    None => None,
                };
                push(q, p, i, w, sign)?;
            }
            push(p, q, i, u, signs[i])?;
        }
    }
    entries.sort_by(|a, b| b.0.key().cmp(&a.0.key()));
    let cols: Vec<Vec<Scalar>> = entries.iter().map(|(_, v)| v.clone()).collect();
    let vectors = Matrix::from_columns(data.dim, &cols)?;
    if vectors.rank() != data.dim {
        return Err(Error::Internal("well-ordered basis is not a basis".into()));
    }
    Ok(WellOrderedBasis { tags: entries.into_iter().map(|(t, _)| t).collect(), vectors })
}
