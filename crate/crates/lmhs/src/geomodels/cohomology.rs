//! Graded cohomology of a compact manifold as typed vector spaces with the
//! Poincaré pairing, plus direct sums and the assembly of per-depth strata.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Scalar};
use crate::steenbrink::{DegenerationData, DegreeCohomology, MapBlock, StratumCohomology};

/// `H^•` of a complex `n`-fold. `pairing[q]` is `∫ x ∧ y` against degree `2n − q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cohomology {
    pub n: usize,
    pub types: BTreeMap<usize, Vec<(i64, i64)>>,
    pub pairing: BTreeMap<usize, Matrix<Scalar>>,
}

impl Cohomology {
    pub fn empty(n: usize) -> Self {
        Cohomology { n, types: BTreeMap::new(), pairing: BTreeMap::new() }
    }

    pub fn dim(&self, q: usize) -> usize {
        self.types.get(&q).map_or(0, Vec::len)
    }

    pub fn types(&self, q: usize) -> &[(i64, i64)] {
        self.types.get(&q).map_or(&[], |t| t.as_slice())
    }

    /// Pairing block of degree `q`, zero-sized when either side is absent.
    pub fn pairing(&self, q: usize) -> Matrix<Scalar> {
        let dual = (2 * self.n).checked_sub(q).map_or(0, |d| self.dim(d));
        self.pairing.get(&q).cloned().unwrap_or_else(|| Matrix::zeros(self.dim(q), dual))
    }

    /// Sets the pairing of degree `q` and its graded transpose in degree `2n − q`.
    pub fn set_pairing(&mut self, q: usize, block: Matrix<Scalar>) {
        let dual = 2 * self.n - q;
        let sign = Scalar::from_int(crate::exactlin::parity_sign(q as i64));
        self.pairing.insert(dual, block.transpose().scale(&sign));
        self.pairing.insert(q, block);
    }

    /// Offset of each summand's degree-`q` block inside the direct sum.
    pub fn direct_sum(parts: &[&Cohomology]) -> Result<(Cohomology, Vec<BTreeMap<usize, usize>>)> {
        let n = parts.first().map_or(0, |p| p.n);
        if parts.iter().any(|p| p.n != n) {
            return Err(Error::Input("direct sum of cohomologies of different dimensions".into()));
        }
        let mut out = Cohomology::empty(n);
        let mut offsets = vec![BTreeMap::new(); parts.len()];
        for q in 0..=2 * n {
            let mut types = Vec::new();
            for (k, p) in parts.iter().enumerate() {
                offsets[k].insert(q, types.len());
                types.extend_from_slice(p.types(q));
            }
            if !types.is_empty() {
                out.types.insert(q, types);
            }
        }
        for q in 0..=2 * n {
            let dual = 2 * n - q;
            let mut block = Matrix::zeros(out.dim(q), out.dim(dual));
            for (k, p) in parts.iter().enumerate() {
                block.set_block(offsets[k][&q], offsets[k][&dual], &p.pairing(q));
            }
            if block.rows() > 0 && block.cols() > 0 {
                out.pairing.insert(q, block);
            }
        }
        Ok((out, offsets))
    }

    pub fn into_stratum(self, depth: usize) -> StratumCohomology {
        let cohomology = self
            .types
            .iter()
            .map(|(&q, types)| DegreeCohomology {
                q,
                dim: types.len(),
                types: types.clone(),
                pairing: self.pairing(q),
            })
            .collect();
        StratumCohomology { depth, cohomology }
    }
}

/// Gysin map of degree `q` from a restriction `θ: H^{2n_S − q}(B) → H^{2n_S − q}(S)`:
/// the unique `γ` with `γᵀ P_B = P_S θ`, where `P_B` pairs `H^{q+2}(B)`.
pub fn gysin_from_restriction(
    base: &Cohomology,
    sub: &Cohomology,
    q: usize,
    restriction: &Matrix<Scalar>,
) -> Result<Matrix<Scalar>> {
    if base.n != sub.n + 1 {
        return Err(Error::Input(format!("Gysin from dimension {} into dimension {}", sub.n, base.n)));
    }
    let (src, tgt) = (sub.dim(q), base.dim(q + 2));
    if src == 0 || tgt == 0 {
        return Ok(Matrix::zeros(tgt, src));
    }
    let p_base = base.pairing(q + 2);
    if p_base.rows() != p_base.cols() {
        return Err(Error::Input(format!("pairing of degree {} is not square", q + 2)));
    }
    let gt = sub.pairing(q).mul(restriction)?.mul(&p_base.inverse()?)?;
    Ok(gt.transpose())
}

/// Degeneration data with components `E(1)` and double locus `E(2)` only.
/// `theta[q]` is the restriction `H^q(E(1)) → H^q(E(2))` with its gluing
/// signs; the Gysin maps are its adjoints.
pub fn two_level_data(
    m: usize,
    description: &str,
    components: Cohomology,
    double: Cohomology,
    theta: &BTreeMap<usize, Matrix<Scalar>>,
) -> Result<DegenerationData> {
    if components.n != m || (double.n + 1 != m && !double.types.is_empty()) {
        return Err(Error::Input("stratum dimensions do not match the fiber dimension".into()));
    }
    let mut restriction = Vec::new();
    let mut gysin = Vec::new();
    for q in 0..=2 * m {
        let (src, tgt) = (components.dim(q), double.dim(q));
        if src == 0 || tgt == 0 {
            continue;
        }
        let block = theta.get(&q).cloned().unwrap_or_else(|| Matrix::zeros(tgt, src));
        if block.rows() != tgt || block.cols() != src {
            return Err(Error::Dimension { expected: tgt * src, found: block.rows() * block.cols() });
        }
        restriction.push(MapBlock { depth: 1, q, matrix: block });
    }
    if !double.types.is_empty() {
        let n2 = double.n;
        for q in 0..=2 * n2 {
            if double.dim(q) == 0 || components.dim(q + 2) == 0 {
                continue;
            }
            let dual = 2 * n2 - q;
            let th = theta.get(&dual).cloned().unwrap_or_else(|| Matrix::zeros(double.dim(dual), components.dim(dual)));
            let matrix = gysin_from_restriction(&components, &double, q, &th)?;
            gysin.push(MapBlock { depth: 2, q, matrix });
        }
    }
    let mut strata = vec![components.into_stratum(1)];
    if !double.types.is_empty() {
        strata.push(double.into_stratum(2));
    }
    Ok(DegenerationData { m, description: Some(description.to_string()), strata, gysin, restriction })
}
