//! Higher Hochschild chains and cochains, their products, and the classical
//! complexes used to cross-check them.

pub mod chains;
pub mod cochains;
pub mod classical;
pub mod hkr;
pub mod laws;
pub mod periodic;
pub mod products;
pub mod window;

pub use chains::{hochschild_chain, hochschild_chain_with_coeff, Chain, HochschildComplex};
pub use window::{chain_truncation, cochain_truncation, SlotBound, Truncation, Window, DEFAULT_CAP};
pub use classical::{
    classical_cochains, classical_hochschild, cup_product_s1, hh_via_enveloping, iterated_bar, two_sided_bar,
    twisted_hochschild, ClassicalCochain, ClassicalCochains, Word,
};
pub use cochains::{hochschild_cochain, Cochain, HochschildCochains};
pub use products::{shuffle_product, wedge_product};
pub use laws::{cup_laws, cup_table, shuffle_laws, ClassLabel, CupEntry, CupTable, LawReport};
pub use hkr::{hkr_prediction, HKRPrediction, SpaceDescriptor};
pub use periodic::periodic_hochschild;
