//! Strictification of co-Segal precategories valued in rational chain
//! complexes, checked by exact linear algebra.

pub mod chain;
pub mod commutative;
pub mod error;
pub mod fixtures;
pub mod laxdiag;
pub mod seqcat;
pub mod strictify;

pub use error::{Error, Result};
