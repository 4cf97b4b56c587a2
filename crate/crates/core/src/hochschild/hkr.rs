//! Closed-form predictions for free graded-commutative algebras.
//!
//! For `A = S(V)` free on generators `x` with zero differential,
//! `CH_{S^d}(A) ≃ S(V ⊕ V[d])` and `CH_{Σ_g}(A) ≃ S(V ⊕ V[1]^{⊕2g} ⊕ V[2])`,
//! where each shifted copy `dx` has the weight of `x`. The prediction counts
//! monomials of the free algebra on all of these, odd generators entering at
//! most once.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::window::Window;
use crate::dga::{DGAlgebra, Generator};
use crate::error::{Error, Result};
use crate::homalg::{HomologyTable, WeightRequest};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceDescriptor {
    Sphere(usize),
    Surface(usize),
}

impl SpaceDescriptor {
    /// Degree shifts of the copies of `V`, one entry per copy.
    fn shifts(&self) -> Result<Vec<i64>> {
        match *self {
            SpaceDescriptor::Sphere(0) => Err(Error::InvalidInput("S^0 is not connected".into())),
            SpaceDescriptor::Sphere(d) => Ok(vec![0, d as i64]),
            SpaceDescriptor::Surface(g) => {
                let mut v = vec![0, 2];
                v.extend(std::iter::repeat_n(1, 2 * g));
                Ok(v)
            }
        }
    }
}

impl std::fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpaceDescriptor::Sphere(d) => write!(f, "S^{d}"),
            SpaceDescriptor::Surface(g) => write!(f, "Σ_{g}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HKRPrediction {
    pub algebra: String,
    pub space: SpaceDescriptor,
    pub lo: i64,
    pub hi: i64,
    pub weights: Vec<i64>,
    /// Nonzero dimensions by `(degree, weight)`.
    pub table: BTreeMap<(i64, i64), usize>,
}

impl HKRPrediction {
    pub fn get(&self, degree: i64, weight: i64) -> usize {
        self.table.get(&(degree, weight)).copied().unwrap_or(0)
    }

    /// Dimensions for one weight, from `hi` down to `lo`.
    pub fn descending_weight(&self, weight: i64) -> Vec<usize> {
        (self.lo..=self.hi).rev().map(|k| self.get(k, weight)).collect()
    }

    /// Cells of the window and weights where `h` disagrees with the
    /// prediction, as `(degree, weight, predicted, computed)`.
    pub fn mismatches(&self, h: &HomologyTable) -> Vec<(i64, i64, usize, usize)> {
        let mut out = Vec::new();
        for &w in &self.weights {
            for k in self.lo..=self.hi {
                let (p, c) = (self.get(k, w), h.get(k, w));
                if p != c {
                    out.push((k, w, p, c));
                }
            }
        }
        out
    }
}

/// Counts monomials in the shifted generators of `a` by `(degree, weight)`.
///
/// `a` must carry a list of free generators with zero differential. Weights
/// come from the window; without an explicit list every generator must have
/// negative degree, and all weights that reach degree `lo` are used.
pub fn hkr_prediction(a: &DGAlgebra, space: SpaceDescriptor, window: &Window) -> Result<HKRPrediction> {
    let gens = a
        .generators()
        .ok_or_else(|| Error::UnsupportedAlgebra(format!("{}: not presented as free graded-commutative", a.name())))?;
    if !a.has_zero_differential() {
        return Err(Error::UnsupportedAlgebra(format!("{}: differential must vanish", a.name())));
    }
    let mut shifted: Vec<Generator> = Vec::new();
    for s in space.shifts()? {
        for g in gens {
            shifted.push(Generator { name: g.name.clone(), degree: g.degree - s, weight: g.weight });
        }
    }
    let weights: Vec<i64> = match &window.weights {
        WeightRequest::Only(ws) => ws.clone(),
        WeightRequest::Present => {
            if gens.iter().any(|g| g.degree >= 0) {
                return Err(Error::NonFinite(format!("{}: an explicit weight list is required", a.name())));
            }
            let max_w = gens.iter().map(|g| g.weight).max().unwrap_or(0);
            (0..=(-window.lo).max(0) * max_w).collect()
        }
    };
    if let (Some(b), Some(&w)) = (a.weight_bound(), weights.iter().max()) {
        if w > b {
            return Err(Error::NonFinite(format!("{}: weight {w} exceeds the materialized bound {b}", a.name())));
        }
    }
    let max_w = weights.iter().copied().max().unwrap_or(0);
    let mut table = BTreeMap::new();
    count(&shifted, 0, 0, 0, max_w, &mut |deg, w| {
        if (window.lo..=window.hi).contains(&deg) && weights.contains(&w) {
            *table.entry((deg, w)).or_insert(0) += 1;
        }
    });
    Ok(HKRPrediction {
        algebra: a.name().to_string(),
        space,
        lo: window.lo,
        hi: window.hi,
        weights,
        table,
    })
}

fn count(gens: &[Generator], pos: usize, deg: i64, w: i64, max_w: i64, f: &mut impl FnMut(i64, i64)) {
    if pos == gens.len() {
        f(deg, w);
        return;
    }
    let g = &gens[pos];
    let max_e = if g.degree % 2 != 0 { 1 } else { i64::MAX };
    let mut e = 0;
    while e <= max_e && w + e * g.weight <= max_w {
        count(gens, pos + 1, deg + e * g.degree, w + e * g.weight, max_w, f);
        e += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::{exterior, polynomial};

    #[test]
    fn polynomial_on_two_sphere() {
        let a = polynomial(3).unwrap();
        let p = hkr_prediction(&a, SpaceDescriptor::Sphere(2), &Window::new(-8, 0).with_weights(vec![1, 2, 3]))
            .unwrap();
        for w in 1..=3 {
            for k in -8..=0 {
                let expected = usize::from(k % 2 == 0 && k >= -2 * w);
                assert_eq!(p.get(k, w), expected, "degree {k}, weight {w}");
            }
        }
    }

    #[test]
    fn polynomial_on_torus() {
        let a = polynomial(1).unwrap();
        let p = hkr_prediction(&a, SpaceDescriptor::Surface(1), &Window::new(-4, 0).with_weights(vec![1])).unwrap();
        assert_eq!(p.descending_weight(1), vec![1, 2, 1, 0, 0]);
    }

    #[test]
    fn exterior_on_circle() {
        let a = exterior(-1).unwrap();
        let p = hkr_prediction(&a, SpaceDescriptor::Sphere(1), &Window::new(-6, 0)).unwrap();
        let total: Vec<usize> = (-6..=0).rev().map(|k| p.weights.iter().map(|&w| p.get(k, w)).sum()).collect();
        assert_eq!(total, vec![1; 7]);
        // the dx-powers sit in even degrees
        for w in 1..=3 {
            assert_eq!(p.get(-2 * w, w), 1);
        }
    }

    #[test]
    fn weight_bound_is_enforced() {
        let a = polynomial(2).unwrap();
        let w = Window::new(-4, 0).with_weights(vec![3]);
        assert!(hkr_prediction(&a, SpaceDescriptor::Sphere(2), &w).is_err());
        assert!(hkr_prediction(&a, SpaceDescriptor::Sphere(2), &Window::new(-4, 0)).is_err());
    }
}
