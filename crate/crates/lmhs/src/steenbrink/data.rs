//! Combinatorial central-fiber data: cohomology of the strata `E(l)` merged
//! per depth, with Gysin and restriction maps between consecutive depths.
//!
//! Basis vectors carry Hodge type tags. The real structure `σ` on each
//! `H^q(E(l))` sends the `j`-th vector of type `(a, b)` to the `j`-th vector
//! of type `(b, a)` and conjugates coefficients, so Hodge–Tate data is
//! simply rational.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{parity_sign, Matrix, Scalar};

/// `H^q` of one depth stratum; `pairing` is `∫ x ∧ y` against degree `2n − q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeCohomology {
    pub q: usize,
    pub dim: usize,
    pub types: Vec<(i64, i64)>,
    pub pairing: Matrix<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StratumCohomology {
    pub depth: usize,
    pub cohomology: Vec<DegreeCohomology>,
}

/// A map out of `H^q(E(depth))`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapBlock {
    pub depth: usize,
    pub q: usize,
    pub matrix: Matrix<Scalar>,
}

/// `gysin {l, q}: H^q(E(l)) → H^{q+2}(E(l−1))`;
/// `restriction {l, q}: H^q(E(l)) → H^q(E(l+1))`. Missing blocks are zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegenerationData {
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub strata: Vec<StratumCohomology>,
    #[serde(default)]
    pub gysin: Vec<MapBlock>,
    #[serde(default)]
    pub restriction: Vec<MapBlock>,
}

impl DegenerationData {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("degeneration data serializes")
    }

    /// Largest depth with a stratum.
    pub fn max_depth(&self) -> usize {
        self.strata.iter().map(|s| s.depth).max().unwrap_or(0)
    }

    /// Complex dimension `m − l + 1` of `E(l)`.
    pub fn stratum_dim(&self, l: usize) -> usize {
        (self.m + 1).saturating_sub(l)
    }

    pub fn block(&self, l: usize, q: usize) -> Option<&DegreeCohomology> {
        self.strata.iter().find(|s| s.depth == l)?.cohomology.iter().find(|c| c.q == q)
    }

    pub fn dim(&self, l: usize, q: i64) -> usize {
        if q < 0 {
            return 0;
        }
        self.block(l, q as usize).map_or(0, |b| b.dim)
    }

    pub fn types(&self, l: usize, q: usize) -> &[(i64, i64)] {
        self.block(l, q).map_or(&[], |b| &b.types)
    }

    /// `dim H^q × dim H^{2n−q}` pairing matrix, zero-sized when absent.
    pub fn pairing(&self, l: usize, q: usize) -> Matrix<Scalar> {
        let n2 = 2 * self.stratum_dim(l) as i64;
        match self.block(l, q) {
            Some(b) => b.pairing.clone(),
            None => Matrix::zeros(self.dim(l, q as i64), self.dim(l, n2 - q as i64)),
        }
    }

    fn find_map(blocks: &[MapBlock], l: usize, q: usize) -> Option<&Matrix<Scalar>> {
        blocks.iter().find(|b| b.depth == l && b.q == q).map(|b| &b.matrix)
    }

    pub fn gysin(&self, l: usize, q: usize) -> Matrix<Scalar> {
        let rows = if l >= 2 { self.dim(l - 1, q as i64 + 2) } else { 0 };
        Self::find_map(&self.gysin, l, q).cloned().unwrap_or_else(|| Matrix::zeros(rows, self.dim(l, q as i64)))
    }

    pub fn restriction(&self, l: usize, q: usize) -> Matrix<Scalar> {
        Self::find_map(&self.restriction, l, q)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(l + 1, q as i64), self.dim(l, q as i64)))
    }

    /// Index permutation of `σ` on `H^q(E(l))`.
    pub fn conj_permutation(&self, l: usize, q: usize) -> Vec<usize> {
        type_permutation(self.types(l, q))
    }
}

/// `j`-th vector of type `(a, b)` ↦ `j`-th vector of type `(b, a)`; vectors
/// without a partner are fixed (validation reports them).
pub fn type_permutation(types: &[(i64, i64)]) -> Vec<usize> {
    let mut by_type: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for (i, &t) in types.iter().enumerate() {
        by_type.entry(t).or_default().push(i);
    }
    let mut perm: Vec<usize> = (0..types.len()).collect();
    for (&(a, b), idx) in &by_type {
        if let Some(partner) = by_type.get(&(b, a)) {
            for (j, &i) in idx.iter().enumerate() {
                if let Some(&p) = partner.get(j) {
                    perm[i] = p;
                }
            }
        }
    }
    perm
}

/// `σ(v) = π(conj v)` for the permutation `π`.
pub fn apply_sigma(perm: &[usize], v: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); v.len()];
    for (i, x) in v.iter().enumerate() {
        out[perm[i]] = x.conj();
    }
    out
}

/// Sign relating `γ` and `θ` through the stratum pairings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjointSign {
    pub depth: usize,
    pub q: usize,
    pub sign: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub failures: Vec<String>,
    pub adjointness: Vec<AdjointSign>,
}

/// `M σ = σ M` with `σ` the permutation-and-conjugation on each side:
/// `M[π_t b][π_s a] = conj M[b][a]`.
fn commutes_with_sigma(m: &Matrix<Scalar>, src: &[usize], tgt: &[usize]) -> bool {
    (0..m.rows()).all(|b| (0..m.cols()).all(|a| *m.get(tgt[b], src[a]) == m.get(b, a).conj()))
}

fn check_types(
    m: &Matrix<Scalar>,
    src: &[(i64, i64)],
    tgt: &[(i64, i64)],
    shift: i64,
) -> Option<(usize, usize)> {
    for b in 0..m.rows() {
        for a in 0..m.cols() {
            if !m.get(b, a).is_zero() && tgt[b] != (src[a].0 + shift, src[a].1 + shift) {
                return Some((b, a));
            }
        }
    }
    None
}

pub fn validate(data: &DegenerationData) -> ValidationReport {
    let mut failures = Vec::new();
    let mut adjointness = Vec::new();
    if data.m == 0 {
        failures.push("fiber dimension m must be positive".into());
    }
    let mut depths: Vec<usize> = data.strata.iter().map(|s| s.depth).collect();
    depths.sort_unstable();
    if depths.first() != Some(&1) || depths.windows(2).any(|w| w[1] != w[0] + 1) {
        failures.push(format!("strata depths {depths:?} must be 1, 2, … without gaps or repeats"));
    }
    for st in &data.strata {
        let l = st.depth;
        if l == 0 || l > data.m + 1 {
            failures.push(format!("depth {l} is out of range for m = {}", data.m));
            continue;
        }
        let n = data.stratum_dim(l);
        let mut seen = Vec::new();
        for c in &st.cohomology {
            let q = c.q;
            if seen.contains(&q) {
                failures.push(format!("E({l}): degree {q} listed twice"));
            }
            seen.push(q);
            if q > 2 * n {
                failures.push(format!("E({l}): degree {q} exceeds 2·{n}"));
                continue;
            }
            if c.types.len() != c.dim {
                failures.push(format!("E({l}) H^{q}: {} type tags for dimension {}", c.types.len(), c.dim));
                continue;
            }
            for &(a, b) in &c.types {
                if a + b != q as i64 || a < 0 || b < 0 || a > n as i64 || b > n as i64 {
                    failures.push(format!("E({l}) H^{q}: type ({a},{b}) is impossible"));
                }
            }
            let mut counts: BTreeMap<(i64, i64), usize> = BTreeMap::new();
            for &t in &c.types {
                *counts.entry(t).or_default() += 1;
            }
            for (&(a, b), &k) in &counts {
                if counts.get(&(b, a)).copied().unwrap_or(0) != k {
                    failures.push(format!("E({l}) H^{q}: type ({a},{b}) has no matching conjugate multiplicity"));
                }
            }
            let dual = data.dim(l, 2 * n as i64 - q as i64);
            if c.pairing.rows() != c.dim || c.pairing.cols() != dual {
                failures.push(format!(
                    "E({l}) H^{q}: pairing is {}x{}, expected {}x{dual}",
                    c.pairing.rows(),
                    c.pairing.cols(),
                    c.dim
                ));
                continue;
            }
            if c.dim != dual || c.pairing.rank() != c.dim {
                failures.push(format!("E({l}) H^{q}: pairing is degenerate"));
                continue;
            }
            let dual_types = data.types(l, 2 * n - q);
            for a in 0..c.dim {
                for b in 0..dual {
                    let (t, u) = (c.types[a], dual_types[b]);
                    if !c.pairing.get(a, b).is_zero() && (t.0 + u.0 != n as i64 || t.1 + u.1 != n as i64) {
                        failures.push(format!("E({l}) H^{q}: pairing couples types {t:?} and {u:?}"));
                    }
                }
            }
            let p_src = type_permutation(&c.types);
            let p_dual = type_permutation(dual_types);
            if !commutes_with_sigma(&c.pairing, &p_dual, &p_src) {
                failures.push(format!("E({l}) H^{q}: pairing is not real"));
            }
            let other = data.pairing(l, 2 * n - q);
            let sign = Scalar::from_int(parity_sign(q as i64));
            if other != c.pairing.transpose().scale(&sign) {
                failures.push(format!("E({l}) H^{q}: pairing is not graded-symmetric"));
            }
        }
    }
    let check_map = |failures: &mut Vec<String>, kind: &str, b: &MapBlock, tgt_l: usize, tgt_q: usize, shift: i64| {
        let (l, q) = (b.depth, b.q);
        let rows = data.dim(tgt_l, tgt_q as i64);
        let cols = data.dim(l, q as i64);
        if b.matrix.rows() != rows || b.matrix.cols() != cols {
            failures.push(format!(
                "{kind} (depth {l}, degree {q}) is {}x{}, expected {rows}x{cols}",
                b.matrix.rows(),
                b.matrix.cols()
            ));
            return;
        }
        if let Some((r, c)) = check_types(&b.matrix, data.types(l, q), data.types(tgt_l, tgt_q), shift) {
            failures.push(format!("{kind} (depth {l}, degree {q}) is not type-compatible at entry ({r},{c})"));
        }
        if !commutes_with_sigma(&b.matrix, &data.conj_permutation(l, q), &data.conj_permutation(tgt_l, tgt_q)) {
            failures.push(format!("{kind} (depth {l}, degree {q}) does not commute with conjugation"));
        }
    };
    for b in &data.gysin {
        if b.depth < 2 {
            failures.push(format!("gysin block at depth {} has no target", b.depth));
            continue;
        }
        check_map(&mut failures, "gysin", b, b.depth - 1, b.q + 2, 1);
    }
    for b in &data.restriction {
        check_map(&mut failures, "restriction", b, b.depth + 1, b.q, 0);
    }
    if !failures.is_empty() {
        return ValidationReport { ok: false, failures, adjointness };
    }
    // γ^T P_{l−1, q+2} = ± P_{l, q} θ_{l−1, 2n_l − q}.
    for l in 2..=data.max_depth() {
        let nl = data.stratum_dim(l);
        for q in 0..=2 * nl {
            let g = data.gysin(l, q);
            let lhs = g.transpose().mul(&data.pairing(l - 1, q + 2));
            let rhs = data.pairing(l, q).mul(&data.restriction(l - 1, 2 * nl - q));
            let (Ok(lhs), Ok(rhs)) = (lhs, rhs) else {
                failures.push(format!("adjointness at (depth {l}, degree {q}): shape mismatch"));
                continue;
            };
            if lhs.is_zero() && rhs.is_zero() {
                continue;
            }
            let sign = if lhs == rhs {
                1
            } else if lhs == rhs.neg() {
                -1
            } else {
                failures.push(format!("gysin (depth {l}, degree {q}) is not adjoint to restriction up to sign"));
                continue;
            };
            adjointness.push(AdjointSign { depth: l, q, sign });
        }
    }
    if failures.is_empty() {
        for d in 0..2 * data.m as i64 {
            if let Err(e) = super::pages::d1_maps(data, d) {
                failures.push(e.to_string());
            }
        }
    }
    ValidationReport { ok: failures.is_empty(), failures, adjointness }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_pairs_types() {
        let perm = type_permutation(&[(1, 0), (0, 1), (1, 0), (0, 1)]);
        assert_eq!(perm, vec![1, 0, 3, 2]);
        let v = vec![Scalar::i(), Scalar::one(), Scalar::zero(), Scalar::zero()];
        assert_eq!(apply_sigma(&perm, &v), vec![Scalar::one(), -Scalar::i(), Scalar::zero(), Scalar::zero()]);
    }
}
