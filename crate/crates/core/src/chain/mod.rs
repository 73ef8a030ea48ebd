//! The base category: exact linear algebra and chain complexes over ℚ.

pub mod colimit;
pub mod complex;
pub mod homology;
pub mod matrix;
pub mod rational;
pub mod tensor;

pub use colimit::{finite_colimit, Cokernel, Colimit, DiagramArrow};
pub use complex::{ChainComplex, ChainMap, DirectSum};
pub use homology::{betti_numbers, homology, induced_map, is_quasi_iso, Homology};
pub use matrix::{QMatrix, RankKernelCokernel};
pub use rational::{format_rational, int, parse_rational, ratio, Rational};
pub use tensor::{braiding, distribute, flatten, permute_factors, regroup, tensor, tensor_all, tensor_all_maps, tensor_index, tensor_map};
