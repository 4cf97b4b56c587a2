//! Exact chain complexes over a field and their homology.

pub mod classes;
pub mod complex;
pub mod field;
pub mod matrix;
pub mod ops;
pub mod rank;
pub mod total;

pub use classes::HomologyBasis;
pub use complex::{
    check_differential, homology_dims, Block, ChainComplex, ChainMap, DegreeRange,
    DifferentialWitness, HomologyTable, WeightRequest, WeightSet,
};
pub use field::{Coefficients, Scalar};
pub use matrix::SparseMatrix;
pub use ops::{cone, direct_sum, hom_complex, tensor};
pub use total::{total_complex, totalize, Bicomplex, SimplicialChainObject, Totalization};
