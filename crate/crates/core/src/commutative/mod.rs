//! Commutative co-Segal monoids: symmetric lax functors on finite sets and
//! surjections, their monotone restriction, and commutative
//! strictification.

pub mod functor;
pub mod strictify;

pub use functor::{
    block_transposition, is_cosegal_monoid, is_latching_injective, restrict_to_deltaepi, validate_sym, SymLaxFunctor,
};
pub use strictify::{
    is_commutative, strictify_commutative, surjection_colimit, CommutativeDiagnostics, CommutativeMonoidResult,
};
