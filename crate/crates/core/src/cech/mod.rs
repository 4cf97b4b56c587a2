//! Prefactorization algebras on finite covers and their Čech complexes.
//!
//! A finite cover of a connected 1-manifold is never factorizing, so the
//! comparison `Č(U, F) → F(⋃U)` is not expected to be a quasi-isomorphism
//! in tensor mode. Descent is checked where it holds at finite scale: in
//! coproduct mode (ordinary cosheaf Čech descent) and through the excision
//! identity for the circle.

pub mod complex;
pub mod excision;
pub mod poset;
pub mod prefact;
pub mod validate;

pub use complex::{cech_complex, cech_map, cone_excision, CechComplex};
pub use excision::{excision_report, ExcisionReport};
pub use poset::{Ambient, Meet, OpenPoset, Shape};
pub use prefact::{
    circle_arc_algebra, constant, interval_stratified, trivial, MonoidalMode, Orientation, PrefactorizationData,
    StructureMaps, Value,
};
pub use validate::{validate_prefactorization, Axiom, ValidationReport, Witness};
