//! Exact computation of limiting mixed Hodge structures.
//!
//! The crate builds the weight spectral sequence of a semistable degeneration
//! from combinatorial central-fiber data, decides whether the Steenbrink weight
//! filtration agrees with the monodromy weight filtration, and evaluates the
//! signature formulas for the nearby fiber, both through closed forms and
//! through the nilpotent orbit `exp(zN)F`.
//!
//! Everything is exact: scalars are Gaussian rationals and the orbit parameter
//! `t = Im z` is a polynomial variable.

pub mod error;
pub mod exactlin;
pub mod filtration;
pub mod geomodels;
pub mod mhs;
pub mod orbit;
pub mod steenbrink;

pub use error::{Error, Result};
pub use exactlin::{Matrix, Poly, Scalar, Subspace};
