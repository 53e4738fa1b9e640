//! The pairing `ψ` on `E₁`, the signature table of the limit, and the
//! extraction of the graded limit as [`MhsData`].
//!
//! On representatives `ψ(η, ξ) = ε(r + D − 2m) ∫ x ∧ y` for `η` in term `r`
//! of degree `D` and `ξ` in term `−r` of degree `2m − D`, supported on the
//! same stratum. For `D = m` the polarization is `S = (−1)^m ψ` and the
//! abstract monodromy is `N = −N_geo`.

use std::collections::BTreeMap;

use super::criterion::weight_criterion_on;
use super::data::DegenerationData;
use super::pages::{e1_term, e2_page, induced_on_e2, shift_matrix, E2Page, E2Term};
use crate::error::{Error, Result};
use crate::exactlin::{epsilon, hermitian_signature, parity_sign, Matrix, Scalar, Subspace};
use crate::filtration::{DecreasingFiltration, IncreasingFiltration};
use crate::mhs::{MhsData, SignatureTable};

/// `ψ` blocks keyed by `r`: rows are term `r` of degree `D`, columns term
/// `−r` of degree `2m − D`.
pub fn psi_form(data: &DegenerationData, degree: i64) -> Result<BTreeMap<i64, Matrix<Scalar>>> {
    let m = data.m as i64;
    let mut out = BTreeMap::new();
    for r in super::pages::r_range(data) {
        let left = e1_term(data, degree, r);
        let right = e1_term(data, 2 * m - degree, -r);
        let mut block = Matrix::zeros(left.dim, right.dim);
        let sign = Scalar::from_int(epsilon(r + degree - 2 * m));
        for x in &left.summands {
            let Some(y) = right.summand_at_depth(x.depth) else {
                continue;
            };
            let n2 = 2 * data.stratum_dim(x.depth);
            if y.q + x.q != n2 {
                return Err(Error::Internal(format!("ψ pairs degrees {} and {} on E({})", x.q, y.q, x.depth)));
            }
            block.set_block(x.offset, y.offset, &data.pairing(x.depth, x.q).scale(&sign));
        }
        out.insert(r, block);
    }
    Ok(out)
}

fn polarization_blocks(data: &DegenerationData) -> Result<BTreeMap<i64, Matrix<Scalar>>> {
    let m = data.m as i64;
    let sign = Scalar::from_int(parity_sign(m));
    Ok(psi_form(data, m)?.into_iter().map(|(r, b)| (r, b.scale(&sign))).collect())
}

/// Induced `N_geo^s` from term `r` of the page, or `None` when the target term is empty.
fn induced_shift(data: &DegenerationData, page: &E2Page, r: i64, s: usize) -> Result<Option<Matrix<Scalar>>> {
    let src = &page.terms[&r];
    match page.terms.get(&(r - 2 * s as i64)) {
        Some(tgt) => Ok(Some(induced_on_e2(&shift_matrix(data, page.degree, r, s), src, tgt)?)),
        None => Ok(None),
    }
}

/// Signatures of `i^{p−q} S(u, N^l conj v)` on the `(p, q)`-parts of the
/// primitive pieces of `E₂` in degree `m`.
pub fn e2_signature_table(data: &DegenerationData) -> Result<SignatureTable> {
    let m = data.m as i64;
    let page = e2_page(data, m)?;
    let crit = weight_criterion_on(data, &page)?;
    if !crit.passes {
        return Err(Error::Contract(format!(
            "weight criterion fails in degree {m} at r = {:?}",
            crit.first_failure()
        )));
    }
    let s_blocks = polarization_blocks(data)?;
    let mut entries = BTreeMap::new();
    let mut part_dims = BTreeMap::new();
    for term in page.terms.values() {
        for &t in &term.types {
            *part_dims.entry(t).or_insert(0) += 1;
        }
    }
    for (&l, term) in page.terms.range(0..) {
        if term.dim() == 0 {
            continue;
        }
        let lower = induced_shift(data, &page, l, l as usize + 1)?;
        let shift = shift_matrix(data, m, l, l as usize);
        let s_l = &s_blocks[&l];
        let mut types = term.types.clone();
        types.dedup();
        for t in types {
            let idx = term.type_indices(t);
            let coords = match &lower {
                Some(map) => map.select_columns(&idx).kernel_basis(),
                None => Matrix::identity(idx.len()),
            };
            if coords.cols() == 0 {
                continue;
            }
            let prim = term.reps.select_columns(&idx).mul(&coords)?;
            let conj_cols: Vec<Vec<Scalar>> =
                prim.columns().iter().map(|v| term.e1.sigma(data, v)).collect();
            let conj = Matrix::from_columns(term.e1.dim, &conj_cols)?;
            let factor = Scalar::i_pow(t.0 - t.1) * Scalar::from_int(parity_sign(l));
            let gram = prim.transpose().mul(s_l)?.mul(&shift)?.mul(&conj)?.scale(&factor);
            if !gram.is_hermitian() {
                return Err(Error::Internal(format!("primitive form on {t:?} is not Hermitian")));
            }
            let sig = hermitian_signature(&gram)?;
            if !sig.is_nondegenerate() {
                return Err(Error::Contract(format!("primitive form on {t:?} is degenerate")));
            }
            entries.insert(t, sig);
        }
    }
    Ok(SignatureTable { d: m, entries, part_dims })
}

struct TypedBasis<'a> {
    /// `(term, column)` per global index, highest weight first.
    slots: Vec<(&'a E2Term, usize)>,
    offsets: BTreeMap<i64, usize>,
    terms: Vec<(&'a E2Term, usize)>,
}

impl<'a> TypedBasis<'a> {
    fn new(page: &'a E2Page) -> Self {
        let mut slots = Vec::new();
        let mut offsets = BTreeMap::new();
        let mut terms = Vec::new();
        for (&r, term) in page.terms.iter().rev() {
            offsets.insert(r, slots.len());
            terms.push((term, slots.len()));
            slots.extend((0..term.dim()).map(|j| (term, j)));
        }
        TypedBasis { slots, offsets, terms }
    }

    fn dim(&self) -> usize {
        self.slots.len()
    }

    fn ty(&self, x: usize) -> (i64, i64) {
        let (t, j) = self.slots[x];
        t.types[j]
    }

    /// Typed → real change of basis: `u + σu` and `i(u − σu)` on conjugate
    /// pairs, `u` on types `(a, a)`.
    fn real_basis(&self) -> Matrix<Scalar> {
        let n = self.dim();
        let mut t = Matrix::zeros(n, n);
        for &(term, off) in &self.terms {
            let mut seen: BTreeMap<(i64, i64), usize> = BTreeMap::new();
            let mut positions: BTreeMap<((i64, i64), usize), usize> = BTreeMap::new();
            for j in 0..term.dim() {
                let ty = term.types[j];
                let c = seen.entry(ty).or_insert(0);
                positions.insert((ty, *c), off + j);
                *c += 1;
            }
            for (&((a, b), c), &x) in &positions {
                if a == b {
                    t.set(x, x, Scalar::one());
                } else if a > b {
                    let y = positions[&((b, a), c)];
                    t.set(x, x, Scalar::one());
                    t.set(y, x, Scalar::one());
                    t.set(x, y, Scalar::i());
                    t.set(y, y, -Scalar::i());
                }
            }
        }
        t
    }
}

/// The graded limit structure `(⊕ E₂, W^St, F, −N_geo, S)` in real
/// coordinates; `S` is present for `D = m`.
pub fn e2_mhs(data: &DegenerationData, degree: i64) -> Result<MhsData> {
    let page = e2_page(data, degree)?;
    let basis = TypedBasis::new(&page);
    let n = basis.dim();
    if n == 0 {
        return Err(Error::Contract(format!("H^{degree} of the limit is zero")));
    }
    let t = basis.real_basis();
    let t_inv = t.inverse()?;
    let mut w_steps: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (x, (term, _)) in basis.slots.iter().enumerate() {
        w_steps.entry(term.weight()).or_default().push(x);
    }
    let mut acc = Vec::new();
    let mut w = Vec::new();
    for (k, idx) in w_steps {
        acc.extend(idx);
        w.push((k, Subspace::coordinate(n, &acc)));
    }
    let w = IncreasingFiltration::new(n, w)?;
    let mut levels: Vec<i64> = (0..n).map(|x| basis.ty(x).0).collect();
    levels.sort_unstable();
    levels.dedup();
    let mut f = Vec::new();
    for &p in &levels {
        let cols: Vec<Vec<Scalar>> =
            (0..n).filter(|&x| basis.ty(x).0 >= p).map(|x| t_inv.column(x)).collect();
        f.push((p, Subspace::span_vectors(n, &cols)?));
    }
    let f = DecreasingFiltration::new(n, f)?;
    let mut n_typed = Matrix::zeros(n, n);
    for (&r, &off) in &basis.offsets {
        if let Some(map) = induced_shift(data, &page, r, 1)? {
            n_typed.set_block(basis.offsets[&(r - 2)], off, &map.neg());
        }
    }
    let n_real = t_inv.mul(&n_typed)?.mul(&t)?;
    let s_real = if degree == data.m as i64 {
        let blocks = polarization_blocks(data)?;
        let mut s_typed = Matrix::zeros(n, n);
        for (&r, &off) in &basis.offsets {
            let (Some(left), Some(right)) = (page.terms.get(&r), page.terms.get(&-r)) else {
                continue;
            };
            let block = left.reps.transpose().mul(&blocks[&r])?.mul(&right.reps)?;
            s_typed.set_block(off, basis.offsets[&-r], &block);
        }
        Some(t.transpose().mul(&s_typed)?.mul(&t)?)
    } else {
        None
    };
    MhsData::new(degree, w, f, Some(n_real), s_real)
}
