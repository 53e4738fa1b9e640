//! Degenerations whose central fiber has ordinary double points.
//!
//! After blowing up the nodes and a base change, the central fiber becomes
//! `X̃₀ ∪ E₁ ∪ … ∪ E_l` with `E_i` a smooth quadric `m`-fold meeting `X̃₀`
//! along the exceptional quadric `Q_i ⊂ X̃₀` (a hyperplane section of
//! `E_i`). Semistability forces `r_i γ_i = −h` on `Q_i`.
//!
//! The synthetic resolution below realizes any `(l, R)` and any middle Hodge
//! structure. Its cohomology is an orthogonal sum of
//! - base classes `H^j` of type `(j, j)` with `∫ H^j H^{m−j} = 1`;
//! - for each node, `x_{i,a} = γ_i(h^a)` (`0 ≤ a ≤ m − 2`), `∫ x_{i,a} x_{i,b} = −2`
//!   when `a + b = m − 2`;
//! - for odd `m`, relation classes `ρ_a ∈ H^{m+1}` and dual `σ_a ∈ H^{m−1}`
//!   with `r_i(σ_a) = (G_{ai} / ∫P²) P_i`, `P_i = A_i − B_i`, so that
//!   `γ_i(P_i) = Σ_a G_{ai} ρ_a` and `R = l − rank G`;
//! - the prescribed middle classes, killed by every `r_i`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::cohomology::{gysin_from_restriction, two_level_data, Cohomology};
use super::quadric::{power_class, primitive_class, primitive_square, quadric_cohomology, section_restriction};
use crate::error::{Error, Result};
use crate::exactlin::{epsilon, hermitian_signature, parity_sign, Matrix, Scalar};
use crate::steenbrink::{type_permutation, DegenerationData, NearbyEntry};

/// A middle class of type `(p, m − p)`, together with its conjugate when
/// `p > m − p`, on which `S(C·, ·̄)` has the given sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MiddleBlock {
    pub p: i64,
    pub sign: i64,
}

/// Cohomology of the resolution `X̃₀` and its restrictions to the exceptional quadrics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolutionData {
    pub m: usize,
    pub cohomology: Cohomology,
    /// `restrictions[i][q]: H^q(X̃₀) → H^q(Q_i)`.
    pub restrictions: Vec<BTreeMap<usize, Matrix<Scalar>>>,
}

/// The inputs of the closed-form index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OdpInput {
    pub m: usize,
    pub l: usize,
    /// Number of relations among the `A_i − B_i` (odd `m`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    /// Signature on the `(m/2, m/2)` part of `V^m` (even `m`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vm_signature: Option<(usize, usize)>,
    /// `(h₊^{k,m−k}, h₋^{k,m−k})` of `X̃₀`, indexed by `k = 0..=m`.
    pub resolution: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Class {
    Base(usize),
    Exc { node: usize, a: usize },
    Sigma(usize),
    Rho(usize),
    Mid { block: usize, conj: bool },
}

struct Synthetic<'a> {
    m: usize,
    middle: &'a [MiddleBlock],
    relations: &'a Matrix<Scalar>,
}

impl Synthetic<'_> {
    fn degree(&self, c: Class) -> usize {
        let m = self.m;
        match c {
            Class::Base(j) => 2 * j,
            Class::Exc { a, .. } => 2 * a + 2,
            Class::Sigma(_) => m - 1,
            Class::Rho(_) => m + 1,
            Class::Mid { .. } => m,
        }
    }

    fn hodge_type(&self, c: Class) -> (i64, i64) {
        let m = self.m as i64;
        match c {
            Class::Base(j) => (j as i64, j as i64),
            Class::Exc { a, .. } => (a as i64 + 1, a as i64 + 1),
            Class::Sigma(_) => ((m - 1) / 2, (m - 1) / 2),
            Class::Rho(_) => ((m + 1) / 2, (m + 1) / 2),
            Class::Mid { block, conj } => {
                let p = self.middle[block].p;
                if conj {
                    (m - p, p)
                } else {
                    (p, m - p)
                }
            }
        }
    }

    fn classes(&self, l: usize) -> Vec<Class> {
        let m = self.m;
        let mut out: Vec<Class> = (0..=m).map(Class::Base).collect();
        for node in 0..l {
            out.extend((0..m - 1).map(|a| Class::Exc { node, a }));
        }
        for a in 0..self.relations.rows() {
            out.push(Class::Sigma(a));
            out.push(Class::Rho(a));
        }
        for (block, b) in self.middle.iter().enumerate() {
            out.push(Class::Mid { block, conj: false });
            if 2 * b.p != m as i64 {
                out.push(Class::Mid { block, conj: true });
            }
        }
        out
    }

    /// `∫ x ∧ y`.
    fn pair(&self, x: Class, y: Class) -> Scalar {
        let m = self.m as i64;
        match (x, y) {
            (Class::Base(j), Class::Base(k)) if j + k == self.m => Scalar::one(),
            (Class::Exc { node: i, a }, Class::Exc { node: k, a: b }) if i == k && a + b + 2 == self.m => {
                Scalar::from_int(-2)
            }
            (Class::Sigma(a), Class::Rho(b)) | (Class::Rho(b), Class::Sigma(a)) if a == b => Scalar::one(),
            (Class::Mid { block: b1, conj: c1 }, Class::Mid { block: b2, conj: c2 }) if b1 == b2 => {
                let blk = self.middle[b1];
                if 2 * blk.p == m {
                    return Scalar::from_int(blk.sign * epsilon(m));
                }
                if c1 == c2 {
                    return Scalar::zero();
                }
                // ∫ ω ∧ ω̄ = sign·ε(m)·i^{m−2p}; the reverse order picks up (−1)^m.
                let c = Scalar::i_pow(m - 2 * blk.p) * Scalar::from_int(blk.sign * epsilon(m));
                if c1 {
                    c * Scalar::from_int(parity_sign(m))
                } else {
                    c
                }
            }
            _ => Scalar::zero(),
        }
    }

    /// `r_node` on one class, as coordinates in `H^q(Q^{m−1})`.
    fn restrict(&self, node: usize, c: Class) -> Option<Vec<Scalar>> {
        let n = self.m - 1;
        match c {
            Class::Base(0) => Some(power_class(n, 0)),
            Class::Exc { node: i, a } if i == node => {
                Some(power_class(n, a + 1).into_iter().map(|x| -x).collect())
            }
            Class::Sigma(a) => {
                let coef = self.relations.get(a, node) * &Scalar::from_frac(1, primitive_square(n));
                Some(primitive_class(n)?.into_iter().map(|x| x * &coef).collect())
            }
            _ => None,
        }
    }
}

/// Builds the synthetic resolution with `l` nodes, relation matrix `G`
/// (`(l − R) × l`, odd `m` only) and prescribed middle classes.
pub fn synthetic_resolution(
    m: usize,
    l: usize,
    middle: &[MiddleBlock],
    relations: &Matrix<Scalar>,
) -> Result<ResolutionData> {
    if m < 2 {
        return Err(Error::Contract("fiber dimension must be at least 2".into()));
    }
    if relations.rows() > 0 && (m % 2 == 0 || relations.cols() != l) {
        return Err(Error::Input(format!(
            "relation matrix is {}x{}; it needs {l} columns and odd m",
            relations.rows(),
            relations.cols()
        )));
    }
    if relations.rows() > l || relations.rank() != relations.rows() {
        return Err(Error::Input("relation matrix must have full row rank at most l".into()));
    }
    for b in middle {
        if 2 * b.p < m as i64 || b.p > m as i64 || b.sign.abs() != 1 {
            return Err(Error::Input(format!("middle block {b:?} needs m/2 ≤ p ≤ m and sign ±1")));
        }
    }
    let syn = Synthetic { m, middle, relations };
    let classes = syn.classes(l);
    let mut by_degree: BTreeMap<usize, Vec<Class>> = BTreeMap::new();
    for &c in &classes {
        by_degree.entry(syn.degree(c)).or_default().push(c);
    }
    let mut coh = Cohomology::empty(m);
    for (&q, cs) in &by_degree {
        coh.types.insert(q, cs.iter().map(|&c| syn.hodge_type(c)).collect());
    }
    for (&q, cs) in &by_degree {
        let Some(dual) = by_degree.get(&(2 * m - q)) else { continue };
        let block = Matrix::from_fn(cs.len(), dual.len(), |a, b| syn.pair(cs[a], dual[b]));
        coh.pairing.insert(q, block);
    }
    let quad = quadric_cohomology(m - 1);
    let mut restrictions = Vec::with_capacity(l);
    for node in 0..l {
        let mut per_degree = BTreeMap::new();
        for (&q, cs) in &by_degree {
            let rows = quad.dim(q);
            if rows == 0 {
                continue;
            }
            let mut block = Matrix::zeros(rows, cs.len());
            for (col, &c) in cs.iter().enumerate() {
                if let Some(v) = syn.restrict(node, c) {
                    for (row, x) in v.into_iter().enumerate() {
                        block.set(row, col, x);
                    }
                }
            }
            per_degree.insert(q, block);
        }
        restrictions.push(per_degree);
    }
    Ok(ResolutionData { m, cohomology: coh, restrictions })
}

/// A random synthetic resolution with `R = r` relations and up to two middle blocks.
pub fn random_resolution(m: usize, l: usize, r: usize, seed: u64) -> Result<ResolutionData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = if m % 2 == 1 { l.saturating_sub(r) } else { 0 };
    let relations = loop {
        let g = Matrix::from_fn(rows, if rows > 0 { l } else { 0 }, |_, _| Scalar::from_int(rng.gen_range(-2..=2)));
        if g.rank() == rows {
            break g;
        }
    };
    let count = rng.gen_range(0..=2);
    let lo = (m as i64 + 1) / 2;
    let middle: Vec<MiddleBlock> = (0..count)
        .map(|_| MiddleBlock {
            p: rng.gen_range(lo..=m as i64),
            sign: if rng.gen_bool(0.5) { 1 } else { -1 },
        })
        .collect();
    synthetic_resolution(m, l, &middle, &relations)
}

fn gysin_to_resolution(res: &ResolutionData, node: usize, q: usize) -> Result<Matrix<Scalar>> {
    let quad = quadric_cohomology(res.m - 1);
    let dual = 2 * (res.m - 1) - q;
    let theta = res.restrictions[node]
        .get(&dual)
        .cloned()
        .unwrap_or_else(|| Matrix::zeros(quad.dim(dual), res.cohomology.dim(dual)));
    gysin_from_restriction(&res.cohomology, &quad, q, &theta)
}

/// Signature of `ε(m) i^{p−q} ∫ u ∧ σ v` on `span(basis)` of type `(p, q)` in `H^m(X̃₀)`.
fn middle_signature(res: &ResolutionData, k: i64, basis: &Matrix<Scalar>) -> Result<(usize, usize)> {
    let m = res.m as i64;
    if basis.cols() == 0 {
        return Ok((0, 0));
    }
    let types = res.cohomology.types(res.m);
    let perm = type_permutation(types);
    let conj_cols: Vec<Vec<Scalar>> = basis
        .columns()
        .iter()
        .map(|v| {
            let mut out = vec![Scalar::zero(); v.len()];
            for (j, x) in v.iter().enumerate() {
                out[perm[j]] = x.conj();
            }
            out
        })
        .collect();
    let conj = Matrix::from_columns(basis.rows(), &conj_cols)?;
    let factor = Scalar::i_pow(2 * k - m) * Scalar::from_int(epsilon(m));
    let gram = basis.transpose().mul(&res.cohomology.pairing(res.m))?.mul(&conj)?.scale(&factor);
    let sig = hermitian_signature(&gram)?;
    if !sig.is_nondegenerate() {
        return Err(Error::Input(format!("middle pairing is degenerate on type ({k},{})", m - k)));
    }
    Ok((sig.positives, sig.negatives))
}

/// Reads the closed-form inputs off a resolution: `h₊, h₋` of `X̃₀`, `R`
/// for odd `m`, the `V^m` signature for even `m`.
pub fn odp_input(res: &ResolutionData) -> Result<OdpInput> {
    let m = res.m;
    let l = res.restrictions.len();
    let dim = res.cohomology.dim(m);
    let types = res.cohomology.types(m).to_vec();
    let type_basis = |k: i64| {
        let idx: Vec<usize> = (0..dim).filter(|&j| types[j].0 == k).collect();
        Matrix::identity(dim).select_columns(&idx)
    };
    let mut resolution = Vec::new();
    for k in 0..=m as i64 {
        resolution.push(middle_signature(res, k, &type_basis(k))?);
    }
    let (mut r, mut vm_signature) = (None, None);
    if m % 2 == 1 {
        let n = m - 1;
        let prim = primitive_class(n).expect("even-dimensional quadric");
        let mut cols = Vec::new();
        for node in 0..l {
            cols.push(gysin_to_resolution(res, node, n)?.mul_vec(&prim)?);
        }
        let image = Matrix::from_columns(res.cohomology.dim(m + 1), &cols)?;
        r = Some(l - image.rank());
    } else {
        let k = (m / 2) as i64;
        let tb = type_basis(k);
        let mut stacked = Matrix::zeros(0, tb.cols());
        for node in 0..l {
            let rm = res.restrictions[node]
                .get(&m)
                .cloned()
                .unwrap_or_else(|| Matrix::zeros(0, dim));
            stacked = stacked.vstack(&rm.mul(&tb)?)?;
        }
        let kernel = tb.mul(&stacked.kernel_basis())?;
        vm_signature = Some(middle_signature(res, k, &kernel)?);
    }
    Ok(OdpInput { m, l, r, vm_signature, resolution })
}

/// The semistable model `X̃₀ ∪ E₁ ∪ … ∪ E_l` glued along `Q_i`.
pub fn odp_semistable_model(res: &ResolutionData, input: &OdpInput) -> Result<DegenerationData> {
    let m = res.m;
    let l = res.restrictions.len();
    if input.m != m || input.l != l {
        return Err(Error::Input(format!(
            "input is for (m, l) = ({}, {}) but the resolution has ({m}, {l})",
            input.m, input.l
        )));
    }
    let e = quadric_cohomology(m);
    let mut parts = vec![&res.cohomology];
    parts.extend(std::iter::repeat(&e).take(l));
    let (components, comp_off) = Cohomology::direct_sum(&parts)?;
    let mut theta = BTreeMap::new();
    let double = if l == 0 {
        Cohomology::empty(m - 1)
    } else {
        let q_coh = quadric_cohomology(m - 1);
        let quads: Vec<&Cohomology> = std::iter::repeat(&q_coh).take(l).collect();
        let (double, dbl_off) = Cohomology::direct_sum(&quads)?;
        for q in 0..=2 * (m - 1) {
            if double.dim(q) == 0 || components.dim(q) == 0 {
                continue;
            }
            let mut block = Matrix::zeros(double.dim(q), components.dim(q));
            for node in 0..l {
                let row = dbl_off[node][&q];
                if let Some(r) = res.restrictions[node].get(&q) {
                    block.set_block(row, comp_off[0][&q], &r.neg());
                }
                if e.dim(q) > 0 {
                    block.set_block(row, comp_off[node + 1][&q], &section_restriction(m - 1, q));
                }
            }
            theta.insert(q, block);
        }
        double
    };
    two_level_data(
        m,
        &format!("ordinary double point model: resolution plus {l} quadric {m}-folds glued along exceptional quadrics"),
        components,
        double,
        &theta,
    )
}

/// Signature of `S(C·, ·̄)` on `H^{k,m−k}` of the nearby fiber.
pub fn odp_index_formula(input: &OdpInput) -> Result<Vec<NearbyEntry>> {
    let m = input.m as i64;
    if input.resolution.len() != input.m + 1 {
        return Err(Error::Input(format!("expected {} resolution rows", input.m + 1)));
    }
    let mut rows = Vec::new();
    for k in 0..=m {
        let (mut plus, mut minus) = input.resolution[k as usize];
        if m % 2 == 1 {
            let r = input.r.ok_or_else(|| Error::Input("odd m needs R".into()))?;
            if r > input.l {
                return Err(Error::Input(format!("R = {r} exceeds l = {}", input.l)));
            }
            if 2 * k == m + 1 || 2 * k == m - 1 {
                plus += r;
            }
        } else if 2 * k == m {
            let (hp, hm) = input.vm_signature.ok_or_else(|| Error::Input("even m needs the V^m signature".into()))?;
            plus = hp + input.l;
            minus = hm;
        }
        rows.push(NearbyEntry { p: k, q: m - k, plus, minus });
    }
    Ok(rows)
}
