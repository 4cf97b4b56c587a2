//! Requested windows and the truncation bound that certifies them.
//!
//! In the normalized complex a tensor at level `n` survives only if the
//! degeneracy masks of its non-unit slots have empty intersection. A slot
//! carried by a simplex whose nondegenerate root has dimension `d` clears at
//! most `d` of the `n` mask bits, so a surviving tensor has at least
//! `⌈n/D⌉` non-unit factors when the space has dimension `D`. Each factor
//! lowers the degree by at least `s` (`s = 1` when all non-unit degrees are
//! negative) and raises the weight by at least the minimal positive weight.
//! This gives two bounds on the level past which nothing in the window
//! survives.

use crate::dga::DGAlgebra;
use crate::error::{Error, Result};
use crate::homalg::{Coefficients, DegreeRange, Totalization, WeightRequest, WeightSet};

pub const DEFAULT_CAP: usize = 20_000;

/// Degrees `[lo, hi]`, weights and computation options.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
    pub weights: WeightRequest,
    pub coefficients: Coefficients,
    /// Largest admissible block dimension.
    pub cap: usize,
    pub totalization: Totalization,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Self {
        Window {
            lo,
            hi,
            weights: WeightRequest::Present,
            coefficients: Coefficients::Rational,
            cap: DEFAULT_CAP,
            totalization: Totalization::Normalized,
        }
    }

    pub fn with_weights(mut self, weights: Vec<i64>) -> Self {
        self.weights = WeightRequest::Only(weights);
        self
    }

    pub fn with_coefficients(mut self, c: Coefficients) -> Self {
        self.coefficients = c;
        self
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn unnormalized(mut self) -> Self {
        self.totalization = Totalization::Unnormalized;
        self
    }

    pub(crate) fn max_weight(&self) -> Option<i64> {
        match &self.weights {
            WeightRequest::Present => None,
            WeightRequest::Only(ws) => ws.iter().copied().max(),
        }
    }
}

/// The outcome of the truncation routine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    /// Highest simplicial level that must be built.
    pub level: usize,
    /// Total degrees in which the truncated chain groups are complete.
    pub complete: DegreeRange,
    pub weights: WeightSet,
    /// Tensors of lower total degree may be skipped.
    pub degree_floor: Option<i64>,
    /// Tensors of higher weight may be skipped.
    pub weight_ceiling: Option<i64>,
}

/// What the routine needs to know about the slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlotBound {
    /// Largest dimension of a nondegenerate simplex; `1` for Bar-type
    /// complexes, where every slot at level `n` beyond the ends is non-unit.
    pub space_dim: usize,
    /// Largest degree carried by the fixed (module) slots.
    pub base_max_degree: i64,
    /// Smallest degree carried by the fixed (module) slots.
    pub base_min_degree: i64,
    /// Smallest weight carried by the fixed (module) slots.
    pub base_min_weight: i64,
}

fn ceil_div(a: i64, b: i64) -> i64 {
    (a + b - 1).div_euclid(b)
}

/// Minimal non-unit factor count at level `n` times the per-factor degree
/// drop, plus `n`.
fn drop_at(n: i64, s: i64, d: i64) -> i64 {
    n + s * ceil_div(n, d)
}

fn weight_ceiling(a: &DGAlgebra, window: &Window) -> Result<Option<i64>> {
    let Some(w) = window.max_weight() else { return Ok(None) };
    if !a.is_weight_graded() || a.nonunit().any(|i| a.weight(i) < 0) {
        return Ok(None);
    }
    if let Some(b) = a.weight_bound() {
        if w > b {
            return Err(Error::NonFinite(format!(
                "{} is materialized up to weight {b}, weight {w} requested",
                a.name()
            )));
        }
    }
    Ok(Some(w))
}

/// Level bound for chains (homological direction).
pub fn chain_truncation(a: &DGAlgebra, slots: &SlotBound, window: &Window) -> Result<Truncation> {
    let ceiling = weight_ceiling(a, window)?;
    let weights = ceiling.map_or(WeightSet::All, WeightSet::UpTo);
    let fin = a.finiteness();
    let d = slots.space_dim as i64;
    let mhi = slots.base_max_degree;
    if window.totalization == Totalization::Unnormalized {
        if fin.by_degree.is_none() {
            return Err(Error::NonFinite(format!(
                "{}: the unnormalized complex is only finite for algebras in non-positive degrees",
                a.name()
            )));
        }
        let level = (mhi - window.lo + 1).max(0);
        return Ok(Truncation {
            level: level as usize,
            complete: DegreeRange::at_least(mhi - level),
            weights,
            degree_floor: Some(mhi - level),
            weight_ceiling: ceiling,
        });
    }
    if d == 0 {
        return Ok(Truncation {
            level: 0,
            complete: DegreeRange::ALL,
            weights,
            degree_floor: None,
            weight_ceiling: ceiling,
        });
    }
    let by_degree = fin.by_degree.map(|b| {
        let s = b.strict as i64;
        let need = mhi - window.lo + 2;
        let mut n = 0i64;
        while drop_at(n + 1, s, d) < need {
            n += 1;
        }
        (n, mhi - drop_at(n + 1, s, d) + 1)
    });
    let by_weight = match (fin.by_weight, ceiling) {
        (Some(wb), Some(w)) => Some(d * ((w - slots.base_min_weight).max(0) / wb.min_positive)),
        _ => None,
    };
    match (by_degree, by_weight) {
        (Some((nd, c)), nw) if nw.is_none_or(|nw| nd < nw) => Ok(Truncation {
            level: nd as usize,
            complete: DegreeRange::at_least(c),
            weights,
            degree_floor: Some(c),
            weight_ceiling: ceiling,
        }),
        (_, Some(nw)) => Ok(Truncation {
            level: nw as usize,
            complete: DegreeRange::ALL,
            weights,
            degree_floor: None,
            weight_ceiling: ceiling,
        }),
        _ => Err(Error::NonFinite(format!(
            "{}: request explicit weights for a weight-graded algebra outside non-positive degrees",
            a.name()
        ))),
    }
}

/// Level bound for cochains: the cochain of a level-`n` tensor `t` with
/// value `m` has degree `n + |m| − |t|`.
pub fn cochain_truncation(a: &DGAlgebra, slots: &SlotBound, window: &Window) -> Result<Truncation> {
    let fin = a.finiteness();
    let Some(b) = fin.by_degree else {
        return Err(Error::NonFinite(format!(
            "{}: cochains are computed for finite algebras in non-positive degrees",
            a.name()
        )));
    };
    let d = slots.space_dim as i64;
    if d == 0 {
        return Ok(Truncation {
            level: 0,
            complete: DegreeRange::ALL,
            weights: WeightSet::All,
            degree_floor: None,
            weight_ceiling: None,
        });
    }
    let s = b.strict as i64;
    let mlo = slots.base_min_degree;
    let mut n = 0i64;
    // complete up to mlo + drop(n+1) − 1; certified up to one less
    while mlo + drop_at(n + 1, s, d) - 2 < window.hi {
        n += 1;
    }
    let top = mlo + drop_at(n + 1, s, d) - 1;
    Ok(Truncation {
        level: n as usize,
        complete: DegreeRange::at_most(top),
        weights: WeightSet::All,
        degree_floor: None,
        weight_ceiling: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::{exterior, polynomial, truncated_polynomial};

    fn slots(d: usize) -> SlotBound {
        SlotBound { space_dim: d, base_max_degree: 0, base_min_degree: 0, base_min_weight: 0 }
    }

    #[test]
    fn degree_route_levels() {
        let a = truncated_polynomial(2, 0).unwrap();
        let t = chain_truncation(&a, &slots(1), &Window::new(-6, 0)).unwrap();
        assert_eq!(t.level, 7);
        assert_eq!(t.complete, DegreeRange::at_least(-7));
        let e = exterior(-1).unwrap();
        let t = chain_truncation(&e, &slots(2), &Window::new(-5, 0)).unwrap();
        // levels n ≥ 5 sit in degrees ≤ −5 − 3
        assert_eq!(t.level, 4);
        assert!(t.complete.interior().contains_range(-5, 0));
    }

    #[test]
    fn weight_route_levels() {
        let p = polynomial(3).unwrap();
        let t = chain_truncation(&p, &slots(3), &Window::new(-9, 0).with_weights(vec![1, 2, 3])).unwrap();
        assert_eq!(t.level, 9);
        assert_eq!(t.complete, DegreeRange::ALL);
        assert!(chain_truncation(&p, &slots(3), &Window::new(-9, 0)).is_err());
        assert!(chain_truncation(&p, &slots(3), &Window::new(-9, 0).with_weights(vec![4])).is_err());
    }

    #[test]
    fn cochain_levels() {
        let a = truncated_polynomial(2, 0).unwrap();
        let t = cochain_truncation(&a, &slots(1), &Window::new(0, 4)).unwrap();
        assert_eq!(t.level, 5);
        assert!(t.complete.interior().contains_range(0, 4));
    }
}
