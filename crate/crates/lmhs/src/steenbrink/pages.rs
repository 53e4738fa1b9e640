//! `E₁` and `E₂` of the weight spectral sequence.
//!
//! Term `r` of total degree `D` is `E₁^{−r, D+r} = ⊕_{k ≥ max(0,−r)}
//! H^{D−r−2k}(E(2k+r+1))` with twist `r + k`. Classes are stored by their
//! untwisted representatives, so the twist only shifts type tags.

use std::collections::BTreeMap;

use serde::Serialize;

use super::data::{apply_sigma, DegenerationData};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Scalar, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub k: usize,
    pub depth: usize,
    pub q: usize,
    pub twist: i64,
    pub offset: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct E1Term {
    pub degree: i64,
    pub r: i64,
    pub summands: Vec<Summand>,
    pub dim: usize,
    /// Twisted type of every coordinate.
    pub types: Vec<(i64, i64)>,
}

impl E1Term {
    pub fn weight(&self) -> i64 {
        self.degree + self.r
    }

    pub fn summand_at_depth(&self, depth: usize) -> Option<&Summand> {
        self.summands.iter().find(|s| s.depth == depth)
    }

    /// `σ` applied summand by summand.
    pub fn sigma(&self, data: &DegenerationData, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for s in &self.summands {
            let perm = data.conj_permutation(s.depth, s.q);
            let part = apply_sigma(&perm, &v[s.offset..s.offset + s.dim]);
            out[s.offset..s.offset + s.dim].clone_from_slice(&part);
        }
        out
    }
}

/// Range of `r` with possibly nonzero terms: `1 − L ≤ r ≤ L − 1`.
pub fn r_range(data: &DegenerationData) -> std::ops::RangeInclusive<i64> {
    let l = data.max_depth() as i64;
    (1 - l)..=(l - 1).max(0)
}

pub fn e1_term(data: &DegenerationData, degree: i64, r: i64) -> E1Term {
    let mut summands = Vec::new();
    let mut types = Vec::new();
    let mut offset = 0;
    let max_depth = data.max_depth() as i64;
    let mut k = (-r).max(0);
    loop {
        let depth = 2 * k + r + 1;
        if depth > max_depth {
            break;
        }
        let q = degree - r - 2 * k;
        if q < 0 {
            break;
        }
        let dim = data.dim(depth as usize, q);
        if dim > 0 {
            let twist = r + k;
            for &(a, b) in data.types(depth as usize, q as usize) {
                types.push((a + twist, b + twist));
            }
            summands.push(Summand { k: k as usize, depth: depth as usize, q: q as usize, twist, offset, dim });
            offset += dim;
        }
        k += 1;
    }
    E1Term { degree, r, summands, dim: offset, types }
}

#[derive(Clone, Debug, Serialize)]
pub struct E1Page {
    pub degree: i64,
    pub terms: BTreeMap<i64, E1Term>,
}

pub fn e1_page(data: &DegenerationData, degree: i64) -> E1Page {
    E1Page { degree, terms: r_range(data).map(|r| (r, e1_term(data, degree, r))).collect() }
}

/// `d₁ = −γ + θ` from term `r` of degree `D` to term `r − 1` of degree `D + 1`.
pub fn d1_matrix(data: &DegenerationData, degree: i64, r: i64) -> Result<Matrix<Scalar>> {
    let src = e1_term(data, degree, r);
    let tgt = e1_term(data, degree + 1, r - 1);
    let mut m = Matrix::zeros(tgt.dim, src.dim);
    for s in &src.summands {
        if s.depth >= 2 {
            if let Some(t) = tgt.summand_at_depth(s.depth - 1) {
                debug_assert_eq!(t.q, s.q + 2);
                m.set_block(t.offset, s.offset, &data.gysin(s.depth, s.q).neg());
            }
        }
        if let Some(t) = tgt.summand_at_depth(s.depth + 1) {
            debug_assert_eq!(t.q, s.q);
            m.set_block(t.offset, s.offset, &data.restriction(s.depth, s.q));
        }
    }
    Ok(m)
}

/// All `d₁` out of degree `D`, keyed by `r`, after checking `d₁ ∘ d₁ = 0`
/// into degree `D + 2`.
pub fn d1_maps(data: &DegenerationData, degree: i64) -> Result<BTreeMap<i64, Matrix<Scalar>>> {
    let mut out = BTreeMap::new();
    for r in r_range(data) {
        let first = d1_matrix(data, degree, r)?;
        let second = d1_matrix(data, degree + 1, r - 1)?;
        if !second.mul(&first)?.is_zero() {
            return Err(Error::Input(format!(
                "d1 ∘ d1 ≠ 0 from E1^({},{}) through E1^({},{})",
                -r,
                degree + r,
                1 - r,
                degree + r
            )));
        }
        out.insert(r, first);
    }
    Ok(out)
}

/// `E₂^{−r, D+r}` with type-adapted representatives.
#[derive(Clone, Debug)]
pub struct E2Term {
    pub e1: E1Term,
    /// Cycle representatives as columns in `E₁` coordinates.
    pub reps: Matrix<Scalar>,
    pub types: Vec<(i64, i64)>,
    pub cycles: Subspace,
    pub boundaries: Subspace,
}

impl E2Term {
    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    pub fn r(&self) -> i64 {
        self.e1.r
    }

    pub fn weight(&self) -> i64 {
        self.e1.weight()
    }

    /// Coordinates of the class of the cycle `v` in the representative basis.
    pub fn class_coords(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.dim();
        let all = self.reps.hstack(self.boundaries.basis())?;
        match all.solve(v)? {
            Some(x) => Ok(x[..n].to_vec()),
            None => Err(Error::Internal(format!("vector is not a cycle of E1^({},{})", -self.e1.r, self.weight()))),
        }
    }

    /// Column indices of the representatives of type `t`.
    pub fn type_indices(&self, t: (i64, i64)) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.types[i] == t).collect()
    }
}

#[derive(Clone, Debug)]
pub struct E2Page {
    pub degree: i64,
    pub terms: BTreeMap<i64, E2Term>,
}

impl E2Page {
    /// `dim Gr^W_{D+r}` keyed by weight.
    pub fn dims_by_weight(&self) -> BTreeMap<i64, usize> {
        self.terms.values().map(|t| (t.weight(), t.dim())).collect()
    }
}

fn embed(ambient: usize, idx: &[usize], v: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); ambient];
    for (j, &i) in idx.iter().enumerate() {
        out[i] = v[j].clone();
    }
    out
}

fn indices_of(types: &[(i64, i64)], t: (i64, i64)) -> Vec<usize> {
    (0..types.len()).filter(|&i| types[i] == t).collect()
}

/// Cycles, boundaries and complement representatives on the type-`t` block.
fn type_homology(
    term: &E1Term,
    incoming: (&E1Term, &Matrix<Scalar>),
    outgoing: (&E1Term, &Matrix<Scalar>),
    t: (i64, i64),
) -> Result<(Vec<Vec<Scalar>>, Vec<Vec<Scalar>>, Vec<Vec<Scalar>>)> {
    let idx = indices_of(&term.types, t);
    let out_idx = indices_of(&outgoing.0.types, t);
    let in_idx = indices_of(&incoming.0.types, t);
    let a = outgoing.1.select_rows(&out_idx).select_columns(&idx);
    let b = incoming.1.select_rows(&idx).select_columns(&in_idx);
    let cycles = Subspace::kernel(&a);
    let boundaries = Subspace::span(&b);
    if !cycles.contains_space(&boundaries) {
        return Err(Error::Input(format!("d1 ∘ d1 ≠ 0 on type {t:?}")));
    }
    let mut acc = boundaries.clone();
    let mut reps = Vec::new();
    for c in cycles.vectors() {
        if !acc.contains(&c)? {
            acc = acc.sum(&Subspace::span_vectors(idx.len(), &[c.clone()])?)?;
            reps.push(embed(term.dim, &idx, &c));
        }
    }
    let full = |s: &Subspace| s.vectors().iter().map(|v| embed(term.dim, &idx, v)).collect::<Vec<_>>();
    Ok((reps, full(&cycles), full(&boundaries)))
}

/// Homology at term `r` of degree `D`. Representatives of type `(b, a)` with
/// `a > b` are the conjugates `σ` of those of type `(a, b)`.
pub fn e2_term(data: &DegenerationData, degree: i64, r: i64) -> Result<E2Term> {
    let term = e1_term(data, degree, r);
    let out_term = e1_term(data, degree + 1, r - 1);
    let in_term = e1_term(data, degree - 1, r + 1);
    let a = d1_matrix(data, degree, r)?;
    let b = d1_matrix(data, degree - 1, r + 1)?;
    let mut distinct: Vec<(i64, i64)> = term.types.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let mut by_type: BTreeMap<(i64, i64), Vec<Vec<Scalar>>> = BTreeMap::new();
    let mut cycles = Vec::new();
    let mut boundaries = Vec::new();
    for &t in &distinct {
        let (reps, cyc, bd) = type_homology(&term, (&in_term, &b), (&out_term, &a), t)?;
        cycles.extend(cyc);
        boundaries.extend(bd);
        if t.0 >= t.1 {
            by_type.insert(t, reps);
        }
    }
    for &t in &distinct {
        if t.0 < t.1 {
            let partner = by_type.get(&(t.1, t.0)).cloned().unwrap_or_default();
            let conj: Vec<Vec<Scalar>> = partner.iter().map(|v| term.sigma(data, v)).collect();
            by_type.insert(t, conj);
        }
    }
    let mut cols = Vec::new();
    let mut types = Vec::new();
    for (t, reps) in by_type {
        for v in reps {
            cols.push(v);
            types.push(t);
        }
    }
    let reps = Matrix::from_columns(term.dim, &cols)?;
    let cycles = Subspace::span_vectors(term.dim, &cycles)?;
    let boundaries = Subspace::span_vectors(term.dim, &boundaries)?;
    if reps.cols() + boundaries.dim() != cycles.dim() {
        return Err(Error::Internal(format!("E2 term r = {r}, degree {degree}: representatives do not complete")));
    }
    Ok(E2Term { e1: term, reps, types, cycles, boundaries })
}

pub fn e2_page(data: &DegenerationData, degree: i64) -> Result<E2Page> {
    let mut terms = BTreeMap::new();
    for r in r_range(data) {
        terms.insert(r, e2_term(data, degree, r)?);
    }
    Ok(E2Page { degree, terms })
}

/// `N_geo^s` on `E₁`: summand `k` of term `r` ↦ summand `k + s` of term
/// `r − 2s`, the identity on representatives; zero where the target is absent.
pub fn shift_matrix(data: &DegenerationData, degree: i64, r: i64, s: usize) -> Matrix<Scalar> {
    let src = e1_term(data, degree, r);
    let tgt = e1_term(data, degree, r - 2 * s as i64);
    let mut m = Matrix::zeros(tgt.dim, src.dim);
    for x in &src.summands {
        if let Some(y) = tgt.summands.iter().find(|y| y.k == x.k + s) {
            debug_assert_eq!((y.depth, y.q), (x.depth, x.q));
            m.set_block(y.offset, x.offset, &Matrix::identity(x.dim));
        }
    }
    m
}

/// Matrix of the map induced on `E₂` by a chain-level map, in the
/// representative bases; errors when it does not descend.
pub fn induced_on_e2(map: &Matrix<Scalar>, src: &E2Term, tgt: &E2Term) -> Result<Matrix<Scalar>> {
    let descends = |what: &str| {
        Error::Internal(format!(
            "map from E1^({},{}) does not descend to E2: {what}",
            -src.r(),
            src.weight()
        ))
    };
    for b in src.boundaries.vectors() {
        if !tgt.boundaries.contains(&map.mul_vec(&b)?)? {
            return Err(descends("a boundary maps outside the boundaries"));
        }
    }
    let mut cols = Vec::with_capacity(src.dim());
    for j in 0..src.dim() {
        let image = map.mul_vec(&src.reps.column(j))?;
        if !tgt.cycles.contains(&image)? {
            return Err(descends("a cycle maps outside the cycles"));
        }
        cols.push(tgt.class_coords(&image)?);
    }
    Matrix::from_columns(tgt.dim(), &cols)
}
