//! Mixed Hodge structures with a nilpotent operator and a bilinear form.
//!
//! The real structure is coordinatewise conjugation, so `W`, `N` and `S`
//! must be rational while `F` may have Gaussian-rational bases.

mod random;
pub(crate) mod signature;
mod splitting;

pub use random::{random_polarized_mhs, RandomMhsConfig, SignMode};
pub use signature::{aggregate_s, nearby_index_formula, primitive_part, signature_table, PrimitivePart, SignatureTable};
pub use splitting::{deligne_splitting, DeligneSplitting};

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, contract, Error, Result};
use crate::exactlin::{parity_sign, Matrix, Scalar, Subspace};
use crate::filtration::{
    check_nilpotent, check_weight_axioms, induced_map, weight_filtration, DecreasingFiltration, FiltrationStep,
    IncreasingFiltration,
};

/// `(H, W, F, N, S, d)`.
#[derive(Clone, Debug)]
pub struct MhsData {
    pub dim: usize,
    pub d: i64,
    pub w: IncreasingFiltration,
    pub f: DecreasingFiltration,
    pub n: Option<Matrix<Scalar>>,
    pub s: Option<Matrix<Scalar>>,
}

/// JSON layout of [`MhsData`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MhsJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub dim: usize,
    pub d: i64,
    #[serde(rename = "W")]
    pub w: Vec<FiltrationStep>,
    #[serde(rename = "F")]
    pub f: Vec<FiltrationStep>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<Matrix<Scalar>>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Matrix<Scalar>>,
}

impl MhsData {
    /// Validates the standing invariants: rational `W`, `N`, `S`; `N`
    /// nilpotent; `S` nondegenerate and `(−1)^d`-symmetric.
    pub fn new(
        d: i64,
        w: IncreasingFiltration,
        f: DecreasingFiltration,
        n: Option<Matrix<Scalar>>,
        s: Option<Matrix<Scalar>>,
    ) -> Result<Self> {
        let dim = w.ambient_dim();
        check_dim(dim, f.ambient_dim())?;
        if !w.is_real() {
            return Err(Error::Input("weight filtration must be rational".into()));
        }
        if let Some(n) = &n {
            check_dim(dim, n.rows())?;
            if !n.is_real() {
                return Err(Error::Input("N must be rational".into()));
            }
            check_nilpotent(n).map_err(|e| Error::Input(e.to_string()))?;
        }
        if let Some(s) = &s {
            check_dim(dim, s.rows())?;
            check_dim(dim, s.cols())?;
            if !s.is_real() {
                return Err(Error::Input("S must be rational".into()));
            }
            if s.rank() != dim {
                return Err(Error::Input("S is degenerate".into()));
            }
            let sign = Scalar::from_int(parity_sign(d));
            if s.transpose() != s.scale(&sign) {
                return Err(Error::Input(format!("S is not (-1)^{d}-symmetric")));
            }
        }
        Ok(MhsData { dim, d, w, f, n, s })
    }

    pub fn from_json(j: &MhsJson) -> Result<Self> {
        let w = IncreasingFiltration::from_steps(j.dim, &j.w).map_err(|e| Error::Input(format!("W: {e}")))?;
        let f = DecreasingFiltration::from_steps(j.dim, &j.f).map_err(|e| Error::Input(format!("F: {e}")))?;
        MhsData::new(j.d, w, f, j.n.clone(), j.s.clone())
    }

    pub fn to_json(&self) -> MhsJson {
        MhsJson {
            description: None,
            dim: self.dim,
            d: self.d,
            w: self.w.to_steps(),
            f: self.f.to_steps(),
            n: self.n.clone(),
            s: self.s.clone(),
        }
    }

    pub fn n(&self) -> Result<&Matrix<Scalar>> {
        self.n.as_ref().ok_or_else(|| Error::Contract("N is absent".into()))
    }

    pub fn s(&self) -> Result<&Matrix<Scalar>> {
        self.s.as_ref().ok_or_else(|| Error::Contract("S is absent".into()))
    }

    /// Range of Hodge levels to scan: every level where `F` jumps, padded by one.
    pub(crate) fn level_range(&self) -> (i64, i64) {
        match self.f.range() {
            Some((lo, hi)) => (lo.min(0) - 1, hi.max(self.d) + 1),
            None => (-1, self.d + 1),
        }
    }

    /// Conjugation by an invertible rational `g`: `W ↦ gW`, `F ↦ gF`,
    /// `N ↦ gNg⁻¹`, `S ↦ g^{−T} S g⁻¹`.
    pub fn conjugate_by(&self, g: &Matrix<Scalar>) -> Result<Self> {
        let gi = g.inverse()?;
        let n = self.n.as_ref().map(|n| g.mul(n)?.mul(&gi)).transpose()?;
        let s = self.s.as_ref().map(|s| gi.transpose().mul(s)?.mul(&gi)).transpose()?;
        MhsData::new(self.d, self.w.transform(g)?, self.f.transform(g)?, n, s)
    }
}

/// Structured verdict with human-readable failure reasons.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub ok: bool,
    pub failures: Vec<String>,
}

impl CheckReport {
    fn from_failures(failures: Vec<String>) -> Self {
        CheckReport { ok: failures.is_empty(), failures }
    }
}

/// Induced filtration `F^p Gr_k` in the representative coordinates of `Gr_k`.
fn graded_hodge(data: &MhsData, k: i64, p: i64) -> Result<Subspace> {
    let piece = data.w.graded_piece(k);
    let fk = data.f.get(p).intersect(&data.w.get(k))?;
    piece.project(&fk)
}

/// `F` induces a Hodge structure of weight `k` on every `Gr^W_k`, tested as
/// `F^p ⊕ conj F^{k−p+1} = Gr_k` on graded pieces.
pub fn check_mhs(data: &MhsData) -> Result<CheckReport> {
    let mut failures = Vec::new();
    let (flo, fhi) = data.level_range();
    for k in data.w.jumps() {
        let dim = data.w.graded_piece(k).dim();
        let lo = flo.min(k - fhi);
        let hi = fhi.max(k - flo);
        for p in lo..=hi {
            let a = graded_hodge(data, k, p)?;
            // Representatives are rational, so conjugation acts on coordinates.
            let b = graded_hodge(data, k, k - p + 1)?.conj();
            let sum = a.sum(&b)?;
            if a.dim() + b.dim() != dim || sum.dim() != dim {
                failures.push(format!(
                    "Gr_{k}: F^{p} (dim {}) and conj F^{} (dim {}) are not complementary in dim {dim}",
                    a.dim(),
                    k - p + 1,
                    b.dim()
                ));
            }
        }
    }
    Ok(CheckReport::from_failures(failures))
}

/// `N W_r ⊆ W_{r−2}`, `N F^p ⊆ F^{p−1}` and `W = W(N, d)`.
pub fn check_situation_a(data: &MhsData) -> Result<CheckReport> {
    let n = data.n()?;
    let mut failures = Vec::new();
    if let Some((lo, hi)) = data.w.range() {
        for r in lo..=hi {
            if !data.w.get(r - 2).contains_space(&data.w.get(r).apply(n)?) {
                failures.push(format!("N W_{r} is not contained in W_{}", r - 2));
            }
        }
    }
    let (flo, fhi) = data.level_range();
    for p in flo..=fhi {
        if !data.f.get(p - 1).contains_space(&data.f.get(p).apply(n)?) {
            failures.push(format!("N F^{p} is not contained in F^{}", p - 1));
        }
    }
    let expected = weight_filtration(n, data.d)?;
    if expected != data.w {
        let axioms = check_weight_axioms(&data.w, n, data.d);
        let mut msg = format!("W differs from the monodromy weight filtration W(N, {})", data.d);
        if let Some(first) = axioms.failures.first() {
            msg.push_str(&format!(" ({first})"));
        }
        failures.push(msg);
    }
    Ok(CheckReport::from_failures(failures))
}

/// Symmetry, infinitesimal isometry, first Hodge–Riemann relation and
/// `S(W_a, W_b) = 0` for `a + b ≤ 2d − 1`. The form is bilinear.
pub fn check_situation_b(data: &MhsData) -> Result<CheckReport> {
    let s = data.s()?;
    let n = data.n()?;
    let d = data.d;
    let mut failures = Vec::new();
    if s.transpose() != s.scale(&Scalar::from_int(parity_sign(d))) {
        failures.push(format!("S is not (-1)^{d}-symmetric"));
    }
    if !s.mul(n)?.add(&n.transpose().mul(s)?)?.is_zero() {
        failures.push("S(u, Nv) + S(Nu, v) is not identically zero".into());
    }
    let (flo, fhi) = data.level_range();
    for p in flo..=fhi {
        let a = data.f.get(p);
        let b = data.f.get(d - p + 1);
        if a.is_zero() || b.is_zero() {
            continue;
        }
        if !a.basis().transpose().mul(s)?.mul(b.basis())?.is_zero() {
            failures.push(format!("S(F^{p}, F^{}) is not zero", d - p + 1));
        }
    }
    if let Some((lo, hi)) = data.w.range() {
        for a in lo..=hi {
            for b in lo..=hi {
                if a + b > 2 * d - 1 || a > b {
                    continue;
                }
                let (wa, wb) = (data.w.get(a), data.w.get(b));
                if wa.is_zero() || wb.is_zero() {
                    continue;
                }
                if !wa.basis().transpose().mul(s)?.mul(wb.basis())?.is_zero() {
                    failures.push(format!("S(W_{a}, W_{b}) is not zero"));
                }
            }
        }
    }
    Ok(CheckReport::from_failures(failures))
}

/// `N^l : Gr_{d+l} → Gr_{d−l}` in representative coordinates.
pub fn lefschetz_map(data: &MhsData, l: i64) -> Result<Matrix<Scalar>> {
    if l < 0 {
        return contract("negative Lefschetz index");
    }
    let n = data.n()?;
    let power = n.pow(l as usize)?;
    induced_map(&power, &data.w.graded_piece(data.d + l), &data.w.graded_piece(data.d - l))
}

/// Small structures with known limits, shared by tests and the fixture writer.
pub mod samples {
    use super::*;

    /// `u = e0`, `Nu = e1`, `d = 1`, `S(u, Nu) = 1`, `F^1 = span{u}`.
    pub fn elliptic() -> MhsData {
        let n = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
        let s = Matrix::from_ints(&[&[0, 1], &[-1, 0]]);
        let w = weight_filtration(&n, 1).unwrap();
        let f = DecreasingFiltration::new(2, [(0, Subspace::full(2)), (1, Subspace::coordinate(2, &[0]))]).unwrap();
        MhsData::new(1, w, f, Some(n), Some(s)).unwrap()
    }

    /// Size-3 Hodge–Tate string, `d = 2`, `S(N^a u, N^b u) = (−1)^a δ_{a+b,2}`.
    pub fn tate3(sign: i64) -> MhsData {
        let n = Matrix::from_ints(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        let s = Matrix::from_ints(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]).scale(&Scalar::from_int(sign));
        let w = weight_filtration(&n, 2).unwrap();
        let f = DecreasingFiltration::new(
            3,
            [(0, Subspace::full(3)), (1, Subspace::coordinate(3, &[0, 1])), (2, Subspace::coordinate(3, &[0]))],
        )
        .unwrap();
        MhsData::new(2, w, f, Some(n), Some(s)).unwrap()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    pub use super::samples::{elliptic, tate3};

    /// `F^1 = span{e1 + i e2}`, `W_0 = span{e2}`, `W_2 = H`, `d = 2`.
    pub fn non_split() -> MhsData {
        let w = IncreasingFiltration::new(2, [(0, Subspace::coordinate(2, &[1])), (2, Subspace::full(2))]).unwrap();
        let f1 = Subspace::span_vectors(2, &[vec![Scalar::one(), Scalar::i()]]).unwrap();
        let f = DecreasingFiltration::new(2, [(0, Subspace::full(2)), (1, f1)]).unwrap();
        MhsData::new(2, w, f, None, None).unwrap()
    }

    #[test]
    fn mhs_examples() {
        assert!(check_mhs(&elliptic()).unwrap().ok);
        assert!(check_mhs(&non_split()).unwrap().ok);
        // Pure weight 1 with F^1 = span{e0 + i e1}.
        let f1 = Subspace::span_vectors(2, &[vec![Scalar::one(), Scalar::i()]]).unwrap();
        let pure = MhsData::new(
            1,
            IncreasingFiltration::trivial(2, 1),
            DecreasingFiltration::new(2, [(0, Subspace::full(2)), (1, f1)]).unwrap(),
            None,
            None,
        )
        .unwrap();
        assert!(check_mhs(&pure).unwrap().ok);
        // A real F^1 line is not opposed to its conjugate.
        let bad = MhsData::new(
            1,
            IncreasingFiltration::trivial(2, 1),
            DecreasingFiltration::new(2, [(0, Subspace::full(2)), (1, Subspace::coordinate(2, &[0]))]).unwrap(),
            None,
            None,
        )
        .unwrap();
        assert!(!check_mhs(&bad).unwrap().ok);
    }

    #[test]
    fn situation_a_examples() {
        assert!(check_situation_a(&tate3(1)).unwrap().ok);
        assert!(check_situation_a(&elliptic()).unwrap().ok);
        let pure = MhsData::new(
            0,
            IncreasingFiltration::trivial(1, 0),
            DecreasingFiltration::trivial(1, 0),
            Some(Matrix::zeros(1, 1)),
            Some(Matrix::from_ints(&[&[1]])),
        )
        .unwrap();
        assert!(check_situation_a(&pure).unwrap().ok);
        assert!(check_situation_a(&non_split()).is_err());
    }

    #[test]
    fn situation_b_examples() {
        assert!(check_situation_b(&elliptic()).unwrap().ok);
        // S = identity on a weight {0, 2} Hodge–Tate string with d = 1.
        let mut bad = elliptic();
        bad.s = Some(Matrix::identity(2));
        let r = check_situation_b(&bad).unwrap();
        assert!(!r.ok);
        assert!(r.failures.iter().any(|f| f.contains("S(W_0, W_0)")));
        let pure = MhsData::new(
            0,
            IncreasingFiltration::trivial(1, 0),
            DecreasingFiltration::trivial(1, 0),
            Some(Matrix::zeros(1, 1)),
            Some(Matrix::from_ints(&[&[1]])),
        )
        .unwrap();
        assert!(check_situation_b(&pure).unwrap().ok);
    }

    #[test]
    fn input_validation() {
        let w = IncreasingFiltration::trivial(2, 1);
        let f = DecreasingFiltration::trivial(2, 0);
        let sym = Matrix::identity(2);
        assert!(MhsData::new(1, w.clone(), f.clone(), None, Some(sym)).is_err());
        assert!(MhsData::new(1, w.clone(), f.clone(), Some(Matrix::identity(2)), None).is_err());
        let complex_n = Matrix::from_rows(vec![vec![Scalar::zero(), Scalar::zero()], vec![Scalar::i(), Scalar::zero()]])
            .unwrap();
        assert!(MhsData::new(1, w, f, Some(complex_n), None).is_err());
    }

    #[test]
    fn json_round_trip() {
        let data = tate3(1);
        let text = serde_json::to_string(&data.to_json()).unwrap();
        let back = MhsData::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.w, data.w);
        assert_eq!(back.f, data.f);
        assert_eq!(back.n, data.n);
        assert_eq!(back.s, data.s);
    }
}
