//! The nearby-fiber report: the criterion in every degree, limit Hodge
//! numbers, and for the middle degree the signature of `S(C·, conj ·)`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::criterion::{weight_criterion_on, CriterionReport};
use super::data::DegenerationData;
use super::pages::e2_page;
use super::pairing::e2_signature_table;
use crate::error::Result;
use crate::mhs::{nearby_index_formula, SignatureTable};

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub degree: i64,
    /// `dim Gr^W_k` keyed by weight `k`.
    pub graded_dims: BTreeMap<i64, usize>,
    pub criterion: CriterionReport,
    /// `h^{p, D−p}` keyed by `p`.
    pub hodge_numbers: BTreeMap<i64, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NearbyEntry {
    pub p: i64,
    pub q: i64,
    pub plus: usize,
    pub minus: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexReport {
    pub m: usize,
    pub degrees: Vec<DegreeReport>,
    /// True when the criterion holds in every degree.
    pub verdict: bool,
    pub signature_table: Option<SignatureTable>,
    pub nearby: Option<Vec<NearbyEntry>>,
    pub failures: Vec<String>,
}

impl IndexReport {
    pub fn degree(&self, d: i64) -> Option<&DegreeReport> {
        self.degrees.iter().find(|r| r.degree == d)
    }
}

pub fn degree_report(data: &DegenerationData, degree: i64) -> Result<DegreeReport> {
    let page = e2_page(data, degree)?;
    let criterion = weight_criterion_on(data, &page)?;
    let mut hodge_numbers = BTreeMap::new();
    for term in page.terms.values() {
        for &(p, _) in &term.types {
            *hodge_numbers.entry(p).or_insert(0) += 1;
        }
    }
    Ok(DegreeReport { degree, graded_dims: page.dims_by_weight(), criterion, hodge_numbers })
}

/// Combines per-degree reports (computed in any order) into the full report.
pub fn assemble_index_report(data: &DegenerationData, mut degrees: Vec<DegreeReport>) -> Result<IndexReport> {
    degrees.sort_by_key(|r| r.degree);
    let mut failures = Vec::new();
    for r in &degrees {
        for (&p, &h) in &r.hodge_numbers {
            let mirror = r.hodge_numbers.get(&(r.degree - p)).copied().unwrap_or(0);
            if h != mirror {
                failures.push(format!("degree {}: h^({p},{}) = {h} but its mirror is {mirror}", r.degree, r.degree - p));
            }
        }
        if let Some(bad) = r.criterion.first_failure() {
            failures.push(format!("degree {}: identity shift is not an isomorphism at r = {bad}", r.degree));
        }
    }
    let verdict = degrees.iter().all(|r| r.criterion.passes);
    let (mut signature_table, mut nearby) = (None, None);
    if verdict {
        let m = data.m as i64;
        let table = e2_signature_table(data)?;
        let mut rows = Vec::new();
        for p in 0..=m {
            let (plus, minus) = nearby_index_formula(&table, p)?;
            let h = degrees.iter().find(|r| r.degree == m).and_then(|r| r.hodge_numbers.get(&p)).copied();
            if plus + minus != h.unwrap_or(0) {
                failures.push(format!("signature at ({p},{}) does not add up to h^({p},{})", m - p, m - p));
            }
            rows.push(NearbyEntry { p, q: m - p, plus, minus });
        }
        signature_table = Some(table);
        nearby = Some(rows);
    }
    Ok(IndexReport { m: data.m, degrees, verdict, signature_table, nearby, failures })
}

/// Runs every degree `0 ≤ D ≤ 2m` in sequence.
pub fn nearby_hodge_index(data: &DegenerationData) -> Result<IndexReport> {
    let degrees = (0..=2 * data.m as i64).map(|d| degree_report(data, d)).collect::<Result<Vec<_>>>()?;
    assemble_index_report(data, degrees)
}
