//! Finite simplicial sets and the standard models of spaces.

pub mod models;
pub mod set;

pub use models::{
    circle, from_cells, interval, point, product, sphere_small, sphere_standard, surface, torus,
    wedge, Cell, Simplex,
};
pub use set::{NondegeneracyTable, NormalForm, SimplicialSet, Violation};
