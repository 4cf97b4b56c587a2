//! Excision on the circle: the circle glued from two intervals.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::dga::DGAlgebra;
use crate::error::{Error, Result};
use crate::hochschild::{hh_via_enveloping, hochschild_chain, Window};
use crate::homalg::homology_dims;
use crate::simp::circle;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExcisionReport {
    pub algebra: String,
    pub lo: i64,
    pub hi: i64,
    /// `A ⊗^L_{A⊗A^op} A`, by degree.
    pub enveloping: BTreeMap<i64, usize>,
    /// `CH_{S^1}(A)`, by degree.
    pub circle: BTreeMap<i64, usize>,
    pub agree: bool,
}

/// Compares the derived tensor product over the enveloping algebra with the
/// Hochschild chains of the circle on the window.
pub fn excision_report(a: &DGAlgebra, window: &Window) -> Result<ExcisionReport> {
    let env = hh_via_enveloping(a, window)?;
    let enveloping = homology_dims(&env, window.lo, window.hi, &window.weights)?.by_degree();
    let mut top = (2 * (window.hi - window.lo)).max(4) as usize;
    let h = loop {
        match hochschild_chain(&circle(top), a, window) {
            Err(Error::InsufficientLevels { needed, .. }) if needed > top => top = needed,
            other => break other?,
        }
    };
    let circle = h.homology()?.by_degree();
    Ok(ExcisionReport {
        algebra: a.name().to_string(),
        lo: window.lo,
        hi: window.hi,
        agree: enveloping == circle,
        enveloping,
        circle,
    })
}
