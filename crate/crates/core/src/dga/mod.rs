//! Differential graded algebras and modules given by structure constants.

pub mod algebra;
pub mod module;
pub mod multiop;
pub mod presentation;

pub use algebra::{
    exterior, free_commutative, ground_field, opposite, polynomial, tensor_algebra, truncated_polynomial,
    AlgebraData, BasisElement, DGAlgebra, Finiteness, Generator, Vector,
};
pub use module::{
    augmentation_module, enveloping_left, enveloping_right, regular_bimodule, twisted_bimodule,
    AlgebraAutomorphism, DGModule, ModuleData,
};
pub use multiop::{levelwise_product, multiop, multiop_wrapping, Tensor};
pub use presentation::AlgebraPresentation;
