//! The nilpotent orbit `F_z = exp(zN)F` with `z = a + it` and its Hodge
//! signatures as `t → ∞`.
//!
//! Two independent routes are kept apart on purpose. The evaluate route
//! substitutes a large rational `t` and diagonalizes. The asymptotic route
//! reads signs of leading coefficients off the leading principal minors of
//! the polynomial Hermitian matrix in the well-ordered basis.

mod basis;
mod combinatorics;

use serde::Serialize;

pub use basis::{well_ordered_basis, BasisTag, WellOrderedBasis};
pub use combinatorics::{
    syt_count, taylor_minor_identity, verify_identities, wedge_identity, IdentityCheck, IdentityKind,
};

use crate::error::{Error, Result};
use crate::exactlin::{hermitian_signature, Matrix, Poly, Scalar, Sign, Signature};
use crate::mhs::{check_situation_a, check_situation_b, nearby_index_formula, signature_table, MhsData, SignatureTable};

/// `exp(zN) = Σ_j z^j N^j / j!` as a matrix over `ℚ(i)[t]`, with `z = a + it`.
pub fn exp_zn(n: &Matrix<Scalar>, a: &Scalar) -> Result<Matrix<Poly>> {
    let dim = n.rows();
    let z = Poly::new(vec![a.clone(), Scalar::i()]);
    let mut out = Matrix::<Poly>::identity(dim);
    let mut power = Matrix::<Scalar>::identity(dim);
    let mut zj = Poly::one();
    let mut fact = Scalar::one();
    for j in 1..=dim {
        power = power.mul(n)?;
        if power.is_zero() {
            break;
        }
        zj = &zj * &z;
        fact = &fact * &Scalar::from_int(j as i64);
        let c = fact.inv()?;
        let term = power.map(|x| zj.scale(&(x * &c)));
        out = out.add(&term)?;
    }
    Ok(out)
}

/// The orbit at a fixed real part `a`, in the well-ordered basis.
#[derive(Clone, Debug)]
pub struct NilpotentOrbit {
    pub d: i64,
    pub a: Scalar,
    pub basis: WellOrderedBasis,
    /// Columns `exp(zN) v` for the well-ordered `v`.
    pub vectors: Matrix<Poly>,
    /// `i^d S(x_a, conj x_b)` on those columns.
    pub form: Matrix<Poly>,
}

impl NilpotentOrbit {
    /// Basis of `F^k_z`; a prefix of the well-ordered basis.
    pub fn filtration_basis(&self, k: i64) -> Matrix<Poly> {
        self.vectors.select_columns(&self.basis.level_indices(k))
    }

    pub fn level_dim(&self, k: i64) -> usize {
        self.basis.level_indices(k).len()
    }

    fn level_form(&self, k: i64) -> Matrix<Poly> {
        let m = self.level_dim(k);
        self.form.submatrix(0..m, 0..m)
    }
}

pub fn orbit_filtration(data: &MhsData, a: &Scalar) -> Result<NilpotentOrbit> {
    if !a.is_real() {
        return Err(Error::Input(format!("real part a = {a} must be rational")));
    }
    let s = data.s()?.map(|x| Poly::constant(x.clone()));
    let basis = well_ordered_basis(data)?;
    let e = exp_zn(data.n()?, a)?;
    let vectors = e.mul(&basis.vectors.map(|x| Poly::constant(x.clone())))?;
    let form = vectors.transpose().mul(&s)?.mul(&vectors.conj())?.scale(&Poly::constant(Scalar::i_pow(data.d)));
    if !form.is_hermitian() {
        return Err(Error::Internal("orbit form is not Hermitian".into()));
    }
    Ok(NilpotentOrbit { d: data.d, a: a.clone(), basis, vectors, form })
}

/// Result of the evaluate route at one level.
#[derive(Clone, Debug, Serialize)]
pub struct EvaluateReport {
    pub level: i64,
    pub signature: Signature,
    /// The value of `t` at which the signature stabilized.
    pub t: Scalar,
}

/// Signature of `i^d S(·, conj ·)` on `F^k_z` at `t = t0, 2t0, 4t0, …` until two
/// consecutive nondegenerate evaluations agree; fails past `cap`.
pub fn evaluate_signature(orbit: &NilpotentOrbit, k: i64, t0: &Scalar, cap: &Scalar) -> Result<EvaluateReport> {
    let m = orbit.level_form(k);
    let mut t = t0.clone();
    let mut prev: Option<Signature> = None;
    let two = Scalar::from_int(2);
    loop {
        let sig = hermitian_signature(&m.map(|p| p.eval(&t)))?;
        if sig.is_nondegenerate() && prev == Some(sig) {
            return Ok(EvaluateReport { level: k, signature: sig, t });
        }
        prev = sig.is_nondegenerate().then_some(sig);
        t = &t * &two;
        if t.re > cap.re {
            return Err(Error::Contract(format!("orbit signature on F^{k} did not stabilize below t = {cap}")));
        }
    }
}

/// One step `P_l / P_{l−1}` of the leading-minor sequence.
#[derive(Clone, Debug, Serialize)]
pub struct MinorStep {
    pub tag: BasisTag,
    /// `deg P_l − deg P_{l−1}`.
    pub degree: i64,
    /// `p + q − d − 2r` for the tag.
    pub predicted: i64,
    pub sign: Sign,
}

/// The polynomial `det[exp(zN)F^k | conj exp(zN)F^{d−k+1}]`.
#[derive(Clone, Debug, Serialize)]
pub struct Opposedness {
    pub level: i64,
    pub degree: Option<usize>,
    pub expected: Option<usize>,
    pub leading_coefficient: Option<Scalar>,
    /// Sign of `lc / (−2i)^degree` when that ratio is real.
    pub sign: Option<Sign>,
    pub note: Option<String>,
}

/// Result of the asymptotic route at one level.
#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticReport {
    pub level: i64,
    pub signature: Signature,
    pub degree: Option<usize>,
    pub sign: Option<Sign>,
    pub minors: Vec<MinorStep>,
}

/// Leading-minor steps over the whole well-ordered basis.
pub fn minor_steps(orbit: &NilpotentOrbit) -> Result<Vec<MinorStep>> {
    let minors = orbit.form.leading_minors()?;
    let mut out = Vec::with_capacity(minors.len());
    let mut prev = (0usize, Sign::Plus);
    for (idx, p) in minors.iter().enumerate() {
        let tag = orbit.basis.tags[idx].clone();
        let cur = p.leading_sign().map_err(|e| {
            Error::Contract(format!("leading minor {} of the orbit form is degenerate: {e}", idx + 1))
        })?;
        out.push(MinorStep {
            predicted: tag.predicted_order(orbit.d),
            tag,
            degree: cur.0 as i64 - prev.0 as i64,
            sign: cur.1.times(prev.1),
        });
        prev = cur;
    }
    Ok(out)
}

fn count_signs(steps: &[MinorStep]) -> Signature {
    let pos = steps.iter().filter(|s| s.sign == Sign::Plus).count();
    Signature::new(pos, steps.len() - pos, 0)
}

/// `Σ_{p ≥ k, q ≥ d−k+1} |J^{p,q}_prim| (p−k+1)(q−d+k)`.
pub fn expected_opposedness_degree(basis: &WellOrderedBasis, d: i64, k: i64) -> usize {
    basis
        .tags
        .iter()
        .filter(|t| t.r == 0 && t.p >= k && t.q >= d - k + 1)
        .map(|t| ((t.p - k + 1) * (t.q - d + k)) as usize)
        .sum()
}

pub fn opposedness_polynomial(orbit: &NilpotentOrbit, k: i64) -> Result<Opposedness> {
    let left = orbit.filtration_basis(k);
    let right = orbit.filtration_basis(orbit.d - k + 1).conj();
    let dim = orbit.vectors.rows();
    let mut rep = Opposedness {
        level: k,
        degree: None,
        expected: None,
        leading_coefficient: None,
        sign: None,
        note: None,
    };
    if left.cols() + right.cols() != dim {
        rep.note = Some(format!(
            "opposedness impossible: dim F^{k} + dim F^{} = {} ≠ {dim}",
            orbit.d - k + 1,
            left.cols() + right.cols()
        ));
        return Ok(rep);
    }
    let det = left.hstack(&right)?.det()?;
    rep.expected = Some(expected_opposedness_degree(&orbit.basis, orbit.d, k));
    if let (Some(deg), Some(lc)) = (det.degree(), det.lc()) {
        let norm = (0..deg).fold(Scalar::one(), |acc, _| &acc * &Scalar::gaussian(0, -2));
        rep.degree = Some(deg);
        rep.sign = (lc * &norm.inv()?).real_sign();
        rep.leading_coefficient = Some(lc.clone());
    } else {
        rep.note = Some("determinant vanishes identically".into());
    }
    Ok(rep)
}

/// Asymptotic signature of `F^k_z`, sharing the minor sequence across levels.
pub fn asymptotic_signature(orbit: &NilpotentOrbit, steps: &[MinorStep], k: i64) -> Result<AsymptoticReport> {
    let m = orbit.level_dim(k);
    let opp = opposedness_polynomial(orbit, k)?;
    Ok(AsymptoticReport {
        level: k,
        signature: count_signs(&steps[..m]),
        degree: opp.degree,
        sign: opp.sign,
        minors: steps[..m].to_vec(),
    })
}

#[derive(Clone, Debug)]
pub struct OrbitOptions {
    pub a: Scalar,
    pub t0: Scalar,
    pub t_cap: Scalar,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions { a: Scalar::zero(), t0: Scalar::from_int(1 << 10), t_cap: Scalar::from_int(1 << 60) }
    }
}

/// Everything computed at one level `k`.
#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub level: i64,
    pub dim: usize,
    pub evaluate: EvaluateReport,
    pub asymptotic: Signature,
    pub opposedness: Opposedness,
}

/// Signature of `S(C·, conj ·)` on the `(p, d−p)` component of the nearby
/// structure: from the orbit and from the signature table.
#[derive(Clone, Debug, Serialize)]
pub struct PieceReport {
    pub p: i64,
    pub orbit: (usize, usize),
    pub formula: (usize, usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct MainTheoremReport {
    pub d: i64,
    pub a: Scalar,
    pub polarized: bool,
    pub table: SignatureTable,
    pub basis: Vec<BasisTag>,
    pub minors: Vec<MinorStep>,
    pub levels: Vec<LevelReport>,
    pub pieces: Vec<PieceReport>,
    pub failures: Vec<String>,
    pub ok: bool,
}

/// Refined check on the minor sequence: each raw order equals the
/// predicted `p+q−d−2r` and lies in `[k−d, d]` for the vector's level `k`.
pub fn refined_filtration_check(d: i64, steps: &[MinorStep]) -> Vec<String> {
    let mut failures = Vec::new();
    for s in steps {
        let k = s.tag.level();
        if s.degree != s.predicted {
            failures.push(format!(
                "order of N^{} u^({},{})_{} is {}, expected {}",
                s.tag.r, s.tag.p, s.tag.q, s.tag.i, s.degree, s.predicted
            ));
        }
        if s.degree < k - d || s.degree > d {
            failures.push(format!("order {} of a level-{k} vector is outside [{}, {d}]", s.degree, k - d));
        }
    }
    failures
}

fn sub(a: Signature, b: Signature) -> Result<(usize, usize)> {
    match (a.positives.checked_sub(b.positives), a.negatives.checked_sub(b.negatives)) {
        (Some(x), Some(y)) => Ok((x, y)),
        _ => Err(Error::Internal(format!("signature {a:?} does not contain {b:?}"))),
    }
}

/// Runs both routes at every level and compares the graded pieces with the
/// closed formula.
pub fn verify_main_theorem(data: &MhsData, opts: &OrbitOptions) -> Result<MainTheoremReport> {
    // A′ first: it needs no polarization, so its failure is the one reported
    let checks: [(&str, fn(&MhsData) -> Result<_>); 2] = [("A'", check_situation_a), ("B'", check_situation_b)];
    for (name, check) in checks {
        let report = check(data)?;
        if !report.ok {
            return Err(Error::Contract(format!("situation {name} fails: {}", report.failures.join("; "))));
        }
    }
    let table = signature_table(data)?;
    let orbit = orbit_filtration(data, &opts.a)?;
    let steps = minor_steps(&orbit)?;
    let mut failures = refined_filtration_check(data.d, &steps);
    let (lo, hi) = data.level_range();
    let mut levels = Vec::new();
    for k in lo..=hi {
        let evaluate = evaluate_signature(&orbit, k, &opts.t0, &opts.t_cap)?;
        let asym = asymptotic_signature(&orbit, &steps, k)?;
        let opp = opposedness_polynomial(&orbit, k)?;
        if evaluate.signature != asym.signature {
            failures.push(format!(
                "F^{k}: evaluated signature {:?} differs from asymptotic {:?}",
                evaluate.signature, asym.signature
            ));
        }
        if let Some(note) = &opp.note {
            failures.push(format!("F^{k}: {note}"));
        } else if opp.degree != opp.expected {
            failures.push(format!(
                "F^{k}: opposedness degree {:?}, expected {:?}",
                opp.degree, opp.expected
            ));
        }
        levels.push(LevelReport {
            level: k,
            dim: orbit.level_dim(k),
            evaluate,
            asymptotic: asym.signature,
            opposedness: opp,
        });
    }
    let polarized = table.is_polarized();
    let mut pieces = Vec::new();
    for w in levels.windows(2) {
        let p = w[0].level;
        let mut orbit_piece = sub(w[0].evaluate.signature, w[1].evaluate.signature)?;
        if (data.d - p).rem_euclid(2) == 1 {
            orbit_piece = (orbit_piece.1, orbit_piece.0);
        }
        let formula = nearby_index_formula(&table, p)?;
        if orbit_piece != formula {
            failures.push(format!("p = {p}: orbit gives {orbit_piece:?}, formula gives {formula:?}"));
        }
        if polarized && (orbit_piece.1 != 0 || formula.1 != 0) {
            failures.push(format!("p = {p}: negative index in the polarized case"));
        }
        pieces.push(PieceReport { p, orbit: orbit_piece, formula });
    }
    Ok(MainTheoremReport {
        d: data.d,
        a: opts.a.clone(),
        polarized,
        table,
        basis: orbit.basis.tags.clone(),
        minors: steps,
        ok: failures.is_empty(),
        levels,
        pieces,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mhs::tests::{elliptic, tate3};

    #[test]
    fn elliptic_orbit() {
        let orbit = orbit_filtration(&elliptic(), &Scalar::zero()).unwrap();
        // i S(u + zNu, conj(u + zNu)) = i (z̄ − z) = 2t.
        assert_eq!(orbit.form.get(0, 0), &Poly::new(vec![Scalar::zero(), Scalar::from_int(2)]));
        let steps = minor_steps(&orbit).unwrap();
        assert_eq!(count_signs(&steps[..1]), Signature::new(1, 0, 0));
        let opp = opposedness_polynomial(&orbit, 1).unwrap();
        assert_eq!((opp.degree, opp.expected, opp.sign), (Some(1), Some(1), Some(Sign::Plus)));
        let rep = verify_main_theorem(&elliptic(), &OrbitOptions::default()).unwrap();
        assert!(rep.ok, "{:?}", rep.failures);
        let p1 = rep.pieces.iter().find(|x| x.p == 1).unwrap();
        assert_eq!(p1.orbit, (1, 0));
    }

    #[test]
    fn tate3_minors() {
        let orbit = orbit_filtration(&tate3(1), &Scalar::zero()).unwrap();
        let m = orbit.level_form(1);
        let two_t2 = Poly::monomial(Scalar::from_int(2), 2);
        assert_eq!(m.get(0, 0), &two_t2);
        assert_eq!(m.get(0, 1), &Poly::monomial(Scalar::gaussian(0, 2), 1));
        assert_eq!(m.get(1, 1), &Poly::one());
        let minors = m.leading_minors().unwrap();
        assert_eq!(minors[1], two_t2.scale(&Scalar::from_int(-1)));
        let steps = minor_steps(&orbit).unwrap();
        let degs: Vec<i64> = steps[..2].iter().map(|s| s.degree).collect();
        assert_eq!(degs, vec![2, 0]);
        assert_eq!(count_signs(&steps[..2]), Signature::new(1, 1, 0));
        assert!(refined_filtration_check(2, &steps).is_empty());
    }

    #[test]
    fn evaluate_matches_asymptotic_for_tate3() {
        for sign in [1, -1] {
            let rep = verify_main_theorem(&tate3(sign), &OrbitOptions::default()).unwrap();
            assert!(rep.ok, "{:?}", rep.failures);
            assert_eq!(rep.polarized, sign == 1);
        }
    }

    #[test]
    fn real_part_does_not_matter() {
        for a in [Scalar::zero(), Scalar::from_frac(1, 2), Scalar::one()] {
            let opts = OrbitOptions { a, ..OrbitOptions::default() };
            let rep = verify_main_theorem(&tate3(1), &opts).unwrap();
            assert!(rep.ok);
            let sigs: Vec<Signature> = rep.levels.iter().map(|l| l.asymptotic).collect();
            let base = verify_main_theorem(&tate3(1), &OrbitOptions::default()).unwrap();
            assert_eq!(sigs, base.levels.iter().map(|l| l.asymptotic).collect::<Vec<_>>());
        }
    }

    #[test]
    fn exp_is_unipotent() {
        let n = Matrix::from_ints(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        let e = exp_zn(&n, &Scalar::zero()).unwrap();
        assert_eq!(e.det().unwrap(), Poly::one());
        // z²/2 with z = it is −t²/2.
        assert_eq!(e.get(2, 0), &Poly::monomial(Scalar::from_frac(-1, 2), 2));
    }

    #[test]
    fn random_instances() {
        use crate::mhs::{random_polarized_mhs, RandomMhsConfig, SignMode};
        for mode in [SignMode::Polarized, SignMode::Mixed] {
            for seed in 0..10 {
                let cfg = RandomMhsConfig { mode, ..RandomMhsConfig::default() };
                let (data, expected) = random_polarized_mhs(seed, &cfg).unwrap();
                let rep = verify_main_theorem(&data, &OrbitOptions::default()).unwrap();
                assert!(rep.ok, "seed {seed} {mode:?}: {:?}", rep.failures);
                assert_eq!(rep.table, expected);
                assert_eq!(rep.polarized, expected.is_polarized());
            }
        }
    }
}
