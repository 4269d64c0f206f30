//! Multiplicative systems and localization by the calculus of fractions.

pub mod hom;
pub mod materialize;
pub mod system;

pub use hom::{
    cross_check_formulas, formula_allowed, hom_unchecked, localized_hom, CrossReport, Fraction,
    HomSet, PairAgreement,
};
pub use materialize::{materialize_localization, materialize_unchecked, LocalizedCategory};
pub use system::{
    complete_left, complete_right, equalize_left, equalize_right, validate_mult_system,
    MorphismClass, Side, SystemReport,
};

use fincat::Violation;

/// Largest number of localized morphisms materialized by default.
pub const DEFAULT_BOUND: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LocError {
    #[error("formula {formula:?} unsupported, failing: {missing:?}")]
    FormulaUnsupported { formula: Side, missing: Vec<String> },
    #[error("localized category exceeds {bound} morphisms")]
    TooLarge { bound: usize },
    #[error("internal inconsistency: {0:?}")]
    Inconsistent(Vec<Violation>),
}
