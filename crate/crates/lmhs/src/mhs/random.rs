//! Seeded generator of mixed Hodge structures satisfying Situations A′ and B′.
//!
//! Each instance is a direct sum of `N`-strings `x, Nx, …, N^l x` over
//! primitive blocks of type `(p, q)` with `p + q = d + l`. The form is
//! `S(N^a x, N^b y) = (−1)^a Q(x, y) δ_{a+b,l}`, with `Q` on the block chosen so
//! the primitive Hermitian value has a prescribed sign. The split structure
//! is then twisted by `exp(X)` for a random `X` in the weight-lowering part
//! of the centralizer of `N` inside the Lie algebra of `S`, and optionally
//! conjugated by a random rational unipotent matrix. The intended signature
//! table is returned alongside as an independent oracle.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{MhsData, SignatureTable};
use crate::error::Result;
use crate::exactlin::{Matrix, Scalar, Signature, Subspace};
use crate::filtration::{DecreasingFiltration, IncreasingFiltration};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignMode {
    /// Every primitive form positive definite.
    Polarized,
    /// Random signs per primitive block.
    Mixed,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RandomMhsConfig {
    pub max_dim: usize,
    pub max_d: i64,
    pub mode: SignMode,
    /// Apply the non-split twist `exp(X)`.
    pub twist: bool,
    /// Conjugate by a random rational unipotent matrix.
    pub conjugate: bool,
}

impl Default for RandomMhsConfig {
    fn default() -> Self {
        RandomMhsConfig { max_dim: 10, max_d: 4, mode: SignMode::Polarized, twist: true, conjugate: true }
    }
}

struct Block {
    p: i64,
    q: i64,
    l: i64,
    sign: i64,
    mag: i64,
}

impl Block {
    fn width(&self) -> usize {
        if self.p == self.q {
            1
        } else {
            2
        }
    }

    fn size(&self) -> usize {
        self.width() * (self.l as usize + 1)
    }
}

/// Random instance and the signature table it was built to have.
pub fn random_polarized_mhs(seed: u64, cfg: &RandomMhsConfig) -> Result<(MhsData, SignatureTable)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rng.gen_range(0..=cfg.max_d);
    let target = rng.gen_range(1..=cfg.max_dim.max(1));
    let mut blocks: Vec<Block> = Vec::new();
    let mut dim = 0;
    for _ in 0..40 {
        if dim >= target {
            break;
        }
        let l = rng.gen_range(0..=d);
        let p = rng.gen_range((d + l + 1) / 2..=d);
        let sign = match cfg.mode {
            SignMode::Polarized => 1,
            SignMode::Mixed => {
                if rng.gen_bool(0.5) {
                    1
                } else {
                    -1
                }
            }
        };
        let b = Block { p, q: d + l - p, l, sign, mag: rng.gen_range(1..=3) };
        if dim + b.size() <= target {
            dim += b.size();
            blocks.push(b);
        }
    }
    if blocks.is_empty() {
        blocks.push(Block { p: d, q: d, l: d, sign: 1, mag: 1 });
        dim = blocks[0].size();
    }

    let mut n = Matrix::<Scalar>::zeros(dim, dim);
    let mut s = Matrix::<Scalar>::zeros(dim, dim);
    let mut weights = vec![0i64; dim];
    // (Hodge level of the vector, vector) for the split F.
    let mut hodge_vectors: Vec<(i64, Vec<Scalar>)> = Vec::new();
    let mut expected = BTreeMap::new();
    let mut offset = 0;
    for b in &blocks {
        let width = b.width();
        let lu = b.l as usize;
        // Index of N^j applied to the c-th real generator of the block.
        let idx = |c: usize, j: usize| offset + j * width + c;
        let w = b.p + b.q;
        let q_form = block_form(b);
        for j in 0..=lu {
            for c in 0..width {
                weights[idx(c, j)] = w - 2 * j as i64;
                if j < lu {
                    n.set(idx(c, j + 1), idx(c, j), Scalar::one());
                }
            }
        }
        for a in 0..=lu {
            let bb = lu - a;
            let sign = if a % 2 == 0 { 1 } else { -1 };
            for c1 in 0..width {
                for c2 in 0..width {
                    s.set(idx(c1, a), idx(c2, bb), Scalar::from_int(sign * q_form[c1][c2]));
                }
            }
        }
        for j in 0..=lu {
            let ji = j as i64;
            if width == 1 {
                let mut v = vec![Scalar::zero(); dim];
                v[idx(0, j)] = Scalar::one();
                hodge_vectors.push((b.p - ji, v));
            } else {
                let mut u = vec![Scalar::zero(); dim];
                u[idx(0, j)] = Scalar::one();
                u[idx(1, j)] = Scalar::i();
                let ubar: Vec<Scalar> = u.iter().map(Scalar::conj).collect();
                hodge_vectors.push((b.p - ji, u));
                hodge_vectors.push((b.q - ji, ubar));
            }
        }
        let sig = if b.sign > 0 { Signature::new(1, 0, 0) } else { Signature::new(0, 1, 0) };
        let keys: &[(i64, i64)] = if b.p == b.q { &[(b.p, b.q)] } else { &[(b.p, b.q), (b.q, b.p)] };
        for key in keys {
            let e: &mut Signature = expected.entry(*key).or_default();
            e.positives += sig.positives;
            e.negatives += sig.negatives;
        }
        offset += b.size();
    }

    let w = weight_filtration_from(&weights);
    let levels: Vec<i64> = (0..=d + 1).collect();
    let mut f_steps = Vec::new();
    for &r in &levels {
        let vs: Vec<Vec<Scalar>> =
            hodge_vectors.iter().filter(|(h, _)| *h >= r).map(|(_, v)| v.clone()).collect();
        f_steps.push((r, Subspace::span_vectors(dim, &vs)?));
    }
    let mut f = DecreasingFiltration::new(dim, f_steps)?;

    if cfg.twist {
        let x = random_twist(&mut rng, &n, &s, &weights)?;
        f = f.transform(&exp_nilpotent(&x)?)?;
    }
    let mut data = MhsData::new(d, w, f, Some(n), Some(s))?;
    if cfg.conjugate {
        let g = random_unipotent(&mut rng, dim);
        data = data.conjugate_by(&g)?;
    }
    Ok((data, SignatureTable::from_primitive(d, expected)))
}

/// `Q` on the real generators of a block, chosen so that the primitive
/// Hermitian value `i^{p−q} Q(u, ū)` (or `Q(e, e)` when `p = q`) has sign `b.sign`.
fn block_form(b: &Block) -> Vec<Vec<i64>> {
    let c = b.mag * b.sign;
    if b.p == b.q {
        return vec![vec![c]];
    }
    let ipow = |k: i64| -> i64 {
        match k.rem_euclid(4) {
            0 => 1,
            2 => -1,
            _ => unreachable!("even power of i"),
        }
    };
    if (b.p + b.q) % 2 == 0 {
        // Q = c'·I gives Q(u, ū) = 2c'.
        let cp = c * ipow(b.p - b.q);
        vec![vec![cp, 0], vec![0, cp]]
    } else {
        // Q(e1, e2) = c' = −Q(e2, e1) gives Q(u, ū) = −2ic'.
        let cp = -c * ipow(b.p - b.q + 1);
        vec![vec![0, cp], vec![-cp, 0]]
    }
}

fn weight_filtration_from(weights: &[i64]) -> IncreasingFiltration {
    let dim = weights.len();
    let mut ws: Vec<i64> = weights.to_vec();
    ws.sort_unstable();
    ws.dedup();
    let steps = ws.iter().map(|&k| {
        let idx: Vec<usize> = (0..dim).filter(|&i| weights[i] <= k).collect();
        (k, Subspace::coordinate(dim, &idx))
    });
    IncreasingFiltration::new(dim, steps.collect::<Vec<_>>()).expect("coordinate flag")
}

/// `X = Y₁ + iY₂` with real `Y` lowering weight, commuting with `N`, and
/// skew for `S` (`YᵀS + SY = 0`).
fn random_twist(rng: &mut ChaCha8Rng, n: &Matrix<Scalar>, s: &Matrix<Scalar>, weights: &[i64]) -> Result<Matrix<Scalar>> {
    let dim = weights.len();
    let unknowns: Vec<(usize, usize)> = (0..dim)
        .flat_map(|r| (0..dim).map(move |c| (r, c)))
        .filter(|&(r, c)| weights[r] < weights[c])
        .collect();
    if unknowns.is_empty() {
        return Ok(Matrix::zeros(dim, dim));
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            // (YN − NY)_{ij} and (YᵀS + SY)_{ij} as linear forms in the unknowns.
            let mut comm = vec![Scalar::zero(); unknowns.len()];
            let mut skew = vec![Scalar::zero(); unknowns.len()];
            for (u, &(r, c)) in unknowns.iter().enumerate() {
                if r == i {
                    comm[u] += n.get(c, j);
                }
                if c == j {
                    comm[u] -= n.get(i, r);
                }
                // (YᵀS)_{ij} = Σ_k Y_{ki} S_{kj}: unknown (k, i) contributes S_{kj}.
                if c == i {
                    skew[u] += s.get(r, j);
                }
                // (SY)_{ij} = Σ_k S_{ik} Y_{kj}: unknown (k, j) contributes S_{ik}.
                if c == j {
                    skew[u] += s.get(i, r);
                }
            }
            rows.push(comm);
            rows.push(skew);
        }
    }
    let system = Matrix::from_rows(rows)?;
    let kernel = system.kernel_basis();
    let mut x = Matrix::<Scalar>::zeros(dim, dim);
    for k in 0..kernel.cols() {
        let a = rng.gen_range(-2..=2);
        let b = rng.gen_range(-2..=2);
        let coeff = Scalar::gaussian(a, b);
        if coeff.is_zero() {
            continue;
        }
        for (u, &(r, c)) in unknowns.iter().enumerate() {
            let v = kernel.get(u, k);
            if !v.is_zero() {
                let cur = x.get(r, c) + &(v * &coeff);
                x.set(r, c, cur);
            }
        }
    }
    Ok(x)
}

/// `exp(X)` for nilpotent `X`.
pub(crate) fn exp_nilpotent(x: &Matrix<Scalar>) -> Result<Matrix<Scalar>> {
    let dim = x.rows();
    let mut acc = Matrix::<Scalar>::identity(dim);
    let mut term = Matrix::<Scalar>::identity(dim);
    for k in 1..=dim {
        term = term.mul(x)?.scale(&Scalar::from_frac(1, k as i64));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Product of random unit lower and upper triangular integer matrices.
fn random_unipotent(rng: &mut ChaCha8Rng, dim: usize) -> Matrix<Scalar> {
    let mut lower = Matrix::<Scalar>::identity(dim);
    let mut upper = Matrix::<Scalar>::identity(dim);
    for i in 0..dim {
        for j in 0..i {
            if rng.gen_bool(0.3) {
                lower.set(i, j, Scalar::from_int(rng.gen_range(-1..=1)));
            }
            if rng.gen_bool(0.3) {
                upper.set(j, i, Scalar::from_int(rng.gen_range(-1..=1)));
            }
        }
    }
    lower.mul(&upper).expect("square")
}

#[cfg(test)]
mod tests {
    use super::super::{check_mhs, check_situation_a, check_situation_b, signature_table};
    use super::*;

    #[test]
    fn generated_instances_satisfy_both_situations() {
        for seed in 0..15 {
            for mode in [SignMode::Polarized, SignMode::Mixed] {
                let cfg = RandomMhsConfig { mode, ..Default::default() };
                let (data, expected) = random_polarized_mhs(seed, &cfg).unwrap();
                assert!(check_mhs(&data).unwrap().ok, "seed {seed}");
                assert!(check_situation_a(&data).unwrap().ok, "seed {seed}");
                let b = check_situation_b(&data).unwrap();
                assert!(b.ok, "seed {seed}: {:?}", b.failures);
                let table = signature_table(&data).unwrap();
                assert_eq!(table.entries, expected.entries, "seed {seed}");
                assert_eq!(table.part_dims, expected.part_dims, "seed {seed}");
            }
        }
    }
}
