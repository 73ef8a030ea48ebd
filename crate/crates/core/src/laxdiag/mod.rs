//! Lax diagrams over truncated sequence shapes, the free construction Γ,
//! latching objects and the cofibrancy and weak-equivalence predicates.

pub mod diagram;
pub mod functor;
pub mod gamma;
pub mod latching;

pub use diagram::{laxity_pairs, validate, validate_bundle, LaxDiagram, LaxMorphism, ValidationReport, Violation, ViolationKind};
pub use functor::{dirac, dirac_map, free_at, free_at_map, project, Bundle, BundleMorphism, HomFunctor, HomMorphism};
pub use gamma::{check_triangles, gamma, gamma_counit, gamma_map, gamma_unit, generating_cofibration_ex, Gamma, GammaLayout, TriangleCheck};
pub use latching::{
    bundle_latching, category_latching, hom_latching, is_bundle_cofibrant, is_bundle_cosegal, is_cosegal, is_excellent, is_reedy_cofibrant,
    is_u_cofibrant, is_u_cofibrant_off_diagonal, is_we_ex, is_we_proj, latching, Latching, LatchingData,
};
