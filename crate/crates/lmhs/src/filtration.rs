//! Increasing (weight) and decreasing (Hodge) filtrations, graded pieces,
//! and the monodromy weight filtration `W(N, d)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, contract, Error, Result};
use crate::exactlin::{Matrix, Scalar, Subspace};

/// One stored step of a filtration, as it appears in JSON.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiltrationStep {
    #[serde(alias = "weight", alias = "level")]
    pub index: i64,
    /// Basis vectors of the step (columns).
    pub basis: Vec<Vec<Scalar>>,
}

/// `W_k`, stored at the weights where it jumps.
/// Query semantics: `W_k` is the stored step with the greatest weight `≤ k`,
/// and zero below the first jump.
#[derive(Clone, Debug)]
pub struct IncreasingFiltration {
    ambient: usize,
    steps: BTreeMap<i64, Subspace>,
}

/// `F^p`, stored at the levels where it jumps.
/// Query semantics: `F^p` is the stored step with the smallest level `≥ p`,
/// and zero above the last stored level.
#[derive(Clone, Debug)]
pub struct DecreasingFiltration {
    ambient: usize,
    steps: BTreeMap<i64, Subspace>,
}

impl IncreasingFiltration {
    /// Builds from arbitrary steps; they must be nested and the top must be full.
    pub fn new(ambient: usize, steps: impl IntoIterator<Item = (i64, Subspace)>) -> Result<Self> {
        let sorted: BTreeMap<i64, Subspace> = steps.into_iter().collect();
        let mut kept = BTreeMap::new();
        let mut prev = Subspace::zero(ambient);
        for (k, s) in sorted {
            check_dim(ambient, s.ambient_dim())?;
            if !s.contains_space(&prev) {
                return contract(format!("weight filtration is not increasing at {k}"));
            }
            if s.dim() > prev.dim() {
                kept.insert(k, s.clone());
                prev = s;
            }
        }
        if prev.dim() != ambient {
            return contract("top step of an increasing filtration must be the whole space");
        }
        Ok(IncreasingFiltration { ambient, steps: kept })
    }

    pub fn trivial(ambient: usize, weight: i64) -> Self {
        IncreasingFiltration::new(ambient, [(weight, Subspace::full(ambient))]).expect("full step")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn get(&self, k: i64) -> Subspace {
        self.steps
            .range(..=k)
            .next_back()
            .map(|(_, s)| s.clone())
            .unwrap_or_else(|| Subspace::zero(self.ambient))
    }

    /// Weights `k` with `Gr_k ≠ 0`, ascending.
    pub fn jumps(&self) -> Vec<i64> {
        self.steps.keys().copied().collect()
    }

    /// Smallest and largest weight with nonzero graded piece.
    pub fn range(&self) -> Option<(i64, i64)> {
        Some((*self.steps.keys().next()?, *self.steps.keys().next_back()?))
    }

    pub fn shift(&self, c: i64) -> Self {
        IncreasingFiltration {
            ambient: self.ambient,
            steps: self.steps.iter().map(|(k, s)| (k + c, s.clone())).collect(),
        }
    }

    pub fn graded_piece(&self, k: i64) -> GradedPiece {
        GradedPiece::new(k, self.get(k), self.get(k - 1))
    }

    /// `gW_k` for an invertible `g`.
    pub fn transform(&self, g: &Matrix<Scalar>) -> Result<Self> {
        let steps: Result<Vec<_>> = self.steps.iter().map(|(k, s)| Ok((*k, s.apply(g)?))).collect();
        IncreasingFiltration::new(self.ambient, steps?)
    }

    pub fn is_real(&self) -> bool {
        self.steps.values().all(Subspace::is_real)
    }

    pub fn to_steps(&self) -> Vec<FiltrationStep> {
        self.steps.iter().map(|(k, s)| FiltrationStep { index: *k, basis: s.vectors() }).collect()
    }

    pub fn from_steps(ambient: usize, steps: &[FiltrationStep]) -> Result<Self> {
        let parsed: Result<Vec<_>> =
            steps.iter().map(|st| Ok((st.index, Subspace::span_vectors(ambient, &st.basis)?))).collect();
        IncreasingFiltration::new(ambient, parsed?)
    }
}

impl PartialEq for IncreasingFiltration {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.steps.len() == other.steps.len()
            && self.steps.iter().zip(&other.steps).all(|((a, s), (b, t))| a == b && s == t)
    }
}

impl DecreasingFiltration {
    /// Builds from arbitrary steps; they must be nested and the lowest must be full.
    pub fn new(ambient: usize, steps: impl IntoIterator<Item = (i64, Subspace)>) -> Result<Self> {
        let sorted: BTreeMap<i64, Subspace> = steps.into_iter().collect();
        let mut kept = BTreeMap::new();
        let mut prev = Subspace::zero(ambient);
        for (p, s) in sorted.into_iter().rev() {
            check_dim(ambient, s.ambient_dim())?;
            if !s.contains_space(&prev) {
                return contract(format!("Hodge filtration is not decreasing at {p}"));
            }
            if s.dim() > prev.dim() {
                kept.insert(p, s.clone());
                prev = s;
            }
        }
        if prev.dim() != ambient {
            return contract("lowest step of a decreasing filtration must be the whole space");
        }
        Ok(DecreasingFiltration { ambient, steps: kept })
    }

    pub fn trivial(ambient: usize, level: i64) -> Self {
        DecreasingFiltration::new(ambient, [(level, Subspace::full(ambient))]).expect("full step")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn get(&self, p: i64) -> Subspace {
        self.steps
            .range(p..)
            .next()
            .map(|(_, s)| s.clone())
            .unwrap_or_else(|| Subspace::zero(self.ambient))
    }

    /// Levels `p` with `Gr_F^p ≠ 0`, ascending.
    pub fn jumps(&self) -> Vec<i64> {
        self.steps.keys().copied().collect()
    }

    pub fn range(&self) -> Option<(i64, i64)> {
        Some((*self.steps.keys().next()?, *self.steps.keys().next_back()?))
    }

    pub fn transform(&self, g: &Matrix<Scalar>) -> Result<Self> {
        let steps: Result<Vec<_>> = self.steps.iter().map(|(k, s)| Ok((*k, s.apply(g)?))).collect();
        DecreasingFiltration::new(self.ambient, steps?)
    }

    pub fn conj(&self) -> Self {
        DecreasingFiltration {
            ambient: self.ambient,
            steps: self.steps.iter().map(|(k, s)| (*k, s.conj())).collect(),
        }
    }

    pub fn to_steps(&self) -> Vec<FiltrationStep> {
        self.steps.iter().map(|(k, s)| FiltrationStep { index: *k, basis: s.vectors() }).collect()
    }

    pub fn from_steps(ambient: usize, steps: &[FiltrationStep]) -> Result<Self> {
        let parsed: Result<Vec<_>> =
            steps.iter().map(|st| Ok((st.index, Subspace::span_vectors(ambient, &st.basis)?))).collect();
        DecreasingFiltration::new(ambient, parsed?)
    }
}

impl PartialEq for DecreasingFiltration {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.steps.len() == other.steps.len()
            && self.steps.iter().zip(&other.steps).all(|((a, s), (b, t))| a == b && s == t)
    }
}

/// `upper / lower` with a deterministic basis of representatives.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub index: i64,
    upper: Subspace,
    lower: Subspace,
    /// Representatives: the earliest columns of `upper`'s basis independent modulo `lower`.
    reps: Matrix<Scalar>,
}

impl GradedPiece {
    pub fn new(index: i64, upper: Subspace, lower: Subspace) -> Self {
        let stacked = lower.basis().hstack(upper.basis()).expect("same ambient dimension");
        let pivots = stacked.rref().pivots;
        let off = lower.dim();
        let chosen: Vec<usize> = pivots.into_iter().filter(|&p| p >= off).collect();
        let reps = stacked.select_columns(&chosen);
        GradedPiece { index, upper, lower, reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.reps.rows()
    }

    pub fn reps(&self) -> &Matrix<Scalar> {
        &self.reps
    }

    pub fn upper(&self) -> &Subspace {
        &self.upper
    }

    pub fn lower(&self) -> &Subspace {
        &self.lower
    }

    /// Class of `v ∈ upper` in the representative basis.
    pub fn coords(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let m = self.reps.hstack(self.lower.basis())?;
        let x = m
            .solve(v)?
            .ok_or_else(|| Error::Contract(format!("vector does not lie in step {}", self.index)))?;
        Ok(x[..self.dim()].to_vec())
    }

    /// Image in the quotient of a subspace of `upper`, in representative coordinates.
    pub fn project(&self, s: &Subspace) -> Result<Subspace> {
        let cols: Result<Vec<_>> = s.vectors().iter().map(|v| self.coords(v)).collect();
        Subspace::span_vectors(self.dim(), &cols?)
    }

    /// Lift of a coordinate vector to the ambient space.
    pub fn lift(&self, c: &[Scalar]) -> Result<Vec<Scalar>> {
        self.reps.mul_vec(c)
    }
}

/// Matrix of the map induced by `m` from `source` to `target`.
///
/// Errors unless `m(source.upper) ⊆ target.upper` and `m(source.lower) ⊆ target.lower`.
pub fn induced_map(m: &Matrix<Scalar>, source: &GradedPiece, target: &GradedPiece) -> Result<Matrix<Scalar>> {
    check_dim(source.ambient_dim(), m.cols())?;
    check_dim(target.ambient_dim(), m.rows())?;
    if !target.upper.contains_space(&source.upper.apply(m)?) || !target.lower.contains_space(&source.lower.apply(m)?) {
        return contract(format!(
            "map is not compatible with the steps {} -> {}",
            source.index, target.index
        ));
    }
    let cols: Result<Vec<_>> =
        (0..source.dim()).map(|j| target.coords(&m.mul_vec(&source.reps.column(j))?)).collect();
    Matrix::from_columns(target.dim(), &cols?)
}

/// Errors unless `n` is nilpotent.
pub fn check_nilpotent(n: &Matrix<Scalar>) -> Result<()> {
    if !n.is_square() {
        return contract("nilpotent operator must be square");
    }
    if !n.pow(n.rows())?.is_zero() {
        return contract("operator is not nilpotent");
    }
    Ok(())
}

/// The monodromy weight filtration `W(N, d)`.
///
/// Works on a subquotient `T/B`, starting from `H/0`: with `l` maximal such
/// that `N^l T ⊄ B`, set `W_{d+l} = T`, `W_{d−l−1} = B`, `W_{d−l} = B + N^l T`,
/// `W_{d+l−1} = {v ∈ T : N^l v ∈ B}` and recurse on the last two.
pub fn weight_filtration(n: &Matrix<Scalar>, d: i64) -> Result<IncreasingFiltration> {
    check_nilpotent(n)?;
    let dim = n.rows();
    let mut steps: Vec<(i64, Subspace)> = Vec::new();
    let mut top = Subspace::full(dim);
    let mut bottom = Subspace::zero(dim);
    let mut powers = vec![Matrix::<Scalar>::identity(dim)];
    for k in 1..=dim {
        powers.push(powers[k - 1].mul(n)?);
    }
    while top.dim() > bottom.dim() {
        let l = (0..=dim)
            .rev()
            .find(|&l| !bottom.contains_space(&top.apply(&powers[l]).expect("square")))
            .expect("l = 0 always qualifies");
        let li = l as i64;
        steps.push((d + li, top.clone()));
        steps.push((d - li - 1, bottom.clone()));
        let new_bottom = bottom.sum(&top.apply(&powers[l])?)?;
        let new_top = top.intersect(&bottom.preimage(&powers[l])?)?;
        if l == 0 {
            break;
        }
        steps.push((d - li, new_bottom.clone()));
        top = new_top;
        bottom = new_bottom;
    }
    IncreasingFiltration::new(dim, steps)
}

/// Outcome of [`check_weight_axioms`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub ok: bool,
    pub failures: Vec<String>,
}

/// Tests `N W_k ⊆ W_{k−2}` and that every `N^l : Gr_{d+l} → Gr_{d−l}` is an isomorphism.
pub fn check_weight_axioms(w: &IncreasingFiltration, n: &Matrix<Scalar>, d: i64) -> AxiomReport {
    let mut failures = Vec::new();
    if n.rows() != w.ambient_dim() || !n.is_square() {
        return AxiomReport { ok: false, failures: vec!["operator and filtration dimensions differ".into()] };
    }
    let Some((lo, hi)) = w.range() else {
        return AxiomReport { ok: true, failures };
    };
    for k in lo..=hi {
        let image = w.get(k).apply(n).expect("dims checked");
        if !w.get(k - 2).contains_space(&image) {
            failures.push(format!("N W_{k} is not contained in W_{}", k - 2));
        }
    }
    let reach = (hi - d).max(d - lo).max(0);
    let mut power = Matrix::<Scalar>::identity(n.rows());
    for l in 0..=reach {
        let up = w.graded_piece(d + l);
        let down = w.graded_piece(d - l);
        if up.dim() != down.dim() {
            failures.push(format!("dim Gr_{} = {} but dim Gr_{} = {}", d + l, up.dim(), d - l, down.dim()));
        } else if up.dim() > 0 {
            match induced_map(&power, &up, &down) {
                Ok(m) if m.rank() == up.dim() => {}
                Ok(_) => failures.push(format!("N^{l}: Gr_{} -> Gr_{} is not injective", d + l, d - l)),
                Err(e) => failures.push(format!("N^{l} does not descend to Gr_{}: {e}", d + l)),
            }
        }
        power = power.mul(n).expect("square");
    }
    AxiomReport { ok: failures.is_empty(), failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Shift on `e0 → e1 → …` (a single Jordan string `u, Nu, N²u, …`).
    fn string(len: usize) -> Matrix<Scalar> {
        Matrix::from_fn(len, len, |i, j| if i == j + 1 { Scalar::one() } else { Scalar::zero() })
    }

    #[test]
    fn zero_operator_is_pure() {
        let w = weight_filtration(&Matrix::zeros(3, 3), 2).unwrap();
        assert!(w.get(1).is_zero());
        assert!(w.get(2).is_full());
        assert_eq!(w.jumps(), vec![2]);
    }

    #[test]
    fn single_string_of_length_three() {
        let w = weight_filtration(&string(3), 2).unwrap();
        let n2u = Subspace::coordinate(3, &[2]);
        assert_eq!(w.get(0), n2u);
        assert_eq!(w.get(1), n2u);
        assert_eq!(w.get(2), Subspace::coordinate(3, &[1, 2]));
        assert_eq!(w.get(3), Subspace::coordinate(3, &[1, 2]));
        assert!(w.get(4).is_full());
        assert!(w.get(-1).is_zero());
    }

    #[test]
    fn strings_of_sizes_two_and_one() {
        // e0 → e1 and e2 alone.
        let mut n = Matrix::<Scalar>::zeros(3, 3);
        n.set(1, 0, Scalar::one());
        let w = weight_filtration(&n, 1).unwrap();
        for k in 0..=2 {
            assert_eq!(w.graded_piece(k).dim(), 1);
        }
        assert!(check_weight_axioms(&w, &n, 1).ok);
    }

    #[test]
    fn induced_maps_on_string() {
        let n = string(3);
        let w = weight_filtration(&n, 2).unwrap();
        let (g4, g2, g0) = (w.graded_piece(4), w.graded_piece(2), w.graded_piece(0));
        let one = Matrix::from_ints(&[&[1]]);
        assert_eq!(induced_map(&n, &g4, &g2).unwrap(), one);
        assert_eq!(induced_map(&n.pow(2).unwrap(), &g4, &g0).unwrap(), one);
        assert_eq!(induced_map(&Matrix::identity(3), &g2, &g2).unwrap(), one);
        assert!(induced_map(&Matrix::identity(3), &g4, &g2).is_err());
    }

    #[test]
    fn shifted_candidate_fails() {
        let n = string(3);
        let w = weight_filtration(&n, 2).unwrap().shift(1);
        let report = check_weight_axioms(&w, &n, 2);
        assert!(!report.ok);
        assert!(!report.failures.is_empty());
    }

    #[test]
    fn non_nilpotent_is_rejected() {
        assert!(weight_filtration(&Matrix::identity(2), 0).is_err());
    }

    #[test]
    fn decreasing_queries_clamp() {
        let u = Subspace::coordinate(2, &[0]);
        let f = DecreasingFiltration::new(2, [(0, Subspace::full(2)), (1, u.clone())]).unwrap();
        assert!(f.get(-3).is_full());
        assert_eq!(f.get(1), u);
        assert!(f.get(2).is_zero());
        assert!(DecreasingFiltration::new(2, [(0, u)]).is_err());
    }
}
