//! Builders and closed-form evaluators for concrete degenerations: quadrics,
//! blowups, Kodaira's Hopf-surface family, ordinary double points, Kähler-type
//! central fibers, Lefschetz fiber products and the Sano and Hashimoto–Sano
//! Calabi–Yau families.

mod blowup;
mod cohomology;
mod kahler;
mod kodaira;
mod lefschetz;
mod o16;
mod odp;
mod quadric;
mod sano;

pub use blowup::{blowup_gysin, blowup_pairing, blowup_restriction};
pub use cohomology::{gysin_from_restriction, two_level_data, Cohomology};
pub use kodaira::kodaira_degeneration;
pub use quadric::{middle_form, power_class, primitive_class, primitive_square, quadric_cohomology, section_restriction};
pub use odp::{
    odp_index_formula, odp_input, odp_semistable_model, random_resolution, synthetic_resolution, MiddleBlock, OdpInput,
    ResolutionData,
};
pub use kahler::{full_signature, kahler_index_formula, middle_signature_from_rows, HodgeNumbers};
pub use lefschetz::{
    fiber_product_dim_check, fiber_product_middle_betti, lefschetz_middle_betti, random_pencil, random_pencil_pair,
    tensor_middle_dimension, DimCheck, FiberProductBetti, FibrationFactor, LefschetzInput, PencilData,
};
pub use o16::{o16_evaluator, O16Report, O16_RELATIONS};
pub use sano::{hashimoto_sano_matrix, hashimoto_sano_pic_fixture, k3_picard_form, sano_index_table, sano_negatives, HashimotoSanoCheck};
