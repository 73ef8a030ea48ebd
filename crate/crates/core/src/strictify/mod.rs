//! Strict semi-categories, the inflation functor and its left adjoint by
//! truncated colimits.

pub mod semicat;
pub mod stability;
pub mod tower;

pub use semicat::{
    algebra_category, homology_units, inflate, random_semicategory, small_algebra, zero_composition, CategoryPattern,
    SemiCategory, SmallAlgebra, UnitVerdict,
};
pub use stability::{circle_coequalizer, colimit_stability_check, hom_stability_check, CategoryDiagram, StabilityVerdict};
pub use tower::{
    check_quasi_strict_hypotheses, strictify, truncated_colimits, verify_quasi_strictification, HomDiagnostics, Level, Mode, QuasiStrictVerdict,
    StrictificationResult,
};
