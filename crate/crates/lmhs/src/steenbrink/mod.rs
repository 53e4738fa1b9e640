//! The weight spectral sequence of a semistable degeneration, built from
//! the cohomology of the central-fiber strata.
//!
//! Geometric monodromy acts on `E₁` as the identity shift between
//! summands; it is negated when the limit is handed to [`crate::mhs`].

mod criterion;
mod data;
mod pages;
mod pairing;
mod report;

pub use criterion::{weight_criterion, weight_criterion_on, CriterionReport, ShiftCheck};
pub use data::{
    apply_sigma, type_permutation, validate, AdjointSign, DegenerationData, DegreeCohomology, MapBlock,
    StratumCohomology, ValidationReport,
};
pub use pages::{
    d1_maps, d1_matrix, e1_page, e1_term, e2_page, e2_term, induced_on_e2, r_range, shift_matrix, E1Page, E1Term,
    E2Page, E2Term, Summand,
};
pub use pairing::{e2_mhs, e2_signature_table, psi_form};
pub use report::{assemble_index_report, degree_report, nearby_hodge_index, DegreeReport, IndexReport, NearbyEntry};
