//! Indexing shapes: labeled sequences, surjections, decompositions and
//! the latching categories built from them.

pub mod category;
pub mod lax_latching;
pub mod phi;
pub mod sequence;
pub mod shape;
pub mod surjection;

pub use category::{FiniteCategory, LatchingCategory, Morphism, SliceMorphism};
pub use lax_latching::{lax_latching_category, LaxLatchMorphism, LaxLatchObject, LaxLatchingCategory, PieceSlice};
pub use phi::PhiShape;
pub use sequence::{enumerate_decompositions, enumerate_sequences, Decomposition, LabeledSeq, ObjectSet};
pub use shape::{HomShape, ShapeArrow, SxShapes};
pub use surjection::{
    compose, enumerate_surjections, enumerate_surjective_functions, rejoin, split_surjection, Surjection,
    SurjectiveFunction,
};
