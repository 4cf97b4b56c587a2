//! Exact higher Hochschild homology.

pub mod cech;
pub mod dga;
pub mod error;
pub mod hochschild;
pub mod homalg;
pub mod simp;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/simplicial-sets.md")]
    mod simplicial_sets {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/chains.md")]
    mod chains {}
    #[doc = include_str!("../../../book/src/windows.md")]
    mod windows {}
    #[doc = include_str!("../../../book/src/comparisons.md")]
    mod comparisons {}
    #[doc = include_str!("../../../book/src/products.md")]
    mod products {}
    #[doc = include_str!("../../../book/src/cech.md")]
    mod cech {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
