//! The `∂∂̄`-criterion: `W^St = W(N, D)` exactly when every identity shift
//! `E₂^{−r, D+r} → E₂^{r, D−r}` is an isomorphism.

use serde::Serialize;

use super::data::DegenerationData;
use super::pages::{e2_page, induced_on_e2, r_range, shift_matrix, E2Page};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftCheck {
    pub r: i64,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub iso: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub degree: i64,
    pub checks: Vec<ShiftCheck>,
    pub passes: bool,
}

impl CriterionReport {
    /// First `r` at which the shift fails to be an isomorphism.
    pub fn first_failure(&self) -> Option<i64> {
        self.checks.iter().find(|c| !c.iso).map(|c| c.r)
    }
}

pub fn weight_criterion_on(data: &DegenerationData, page: &E2Page) -> Result<CriterionReport> {
    let mut checks = Vec::new();
    for r in r_range(data).filter(|&r| r >= 1) {
        let src = &page.terms[&r];
        let tgt = &page.terms[&-r];
        let induced = induced_on_e2(&shift_matrix(data, page.degree, r, r as usize), src, tgt)?;
        let rank = induced.rank();
        checks.push(ShiftCheck {
            r,
            source_dim: src.dim(),
            target_dim: tgt.dim(),
            rank,
            iso: src.dim() == tgt.dim() && rank == src.dim(),
        });
    }
    Ok(CriterionReport { degree: page.degree, passes: checks.iter().all(|c| c.iso), checks })
}

pub fn weight_criterion(data: &DegenerationData, degree: i64) -> Result<CriterionReport> {
    weight_criterion_on(data, &e2_page(data, degree)?)
}
