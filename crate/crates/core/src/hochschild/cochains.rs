//! Hochschild cochains `Hom_A(CH_Y(A), M)` over a pointed simplicial set.
//!
//! `CH_Y(A)` is free over `A` (the basepoint slot) on the tensors `1 ⊗ t`, so
//! an `A`-linear cochain is determined by its values on them. The basis
//! cochain `φ_{t,m}` sends `1 ⊗ t` to `m` and has degree `n + |m| − |t|` for
//! `t` at level `n`. The differential is `δφ = d_M φ − (−1)^{|φ|} φ ∘ D`.
//!
//! With `D = (−1)^n d_int + ∂` the dg `A`-module structure on chains is
//! `a ⋆ X = (−1)^{|a| n} a X` for `X` at level `n`, and linearity is taken
//! with respect to it: `φ(a ⊗ t) = (−1)^{|a|(n + |φ|)} a φ(1 ⊗ t)`.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use super::chains::{add_term, is_circle, space_dimension, Chain, Frame};
use super::window::{cochain_truncation, SlotBound, Truncation, Window};
use crate::dga::{regular_bimodule, DGAlgebra, DGModule, Tensor, Vector};
use crate::error::{Error, Result};
use crate::homalg::field::{sign, Scalar};
use crate::homalg::{homology_dims, Block, ChainComplex, HomologyTable, SparseMatrix, WeightSet};
use crate::simp::SimplicialSet;

/// Coefficients on basis cochains `φ_{t,m}`, keyed by `(level, t, m)`.
pub type Cochain = BTreeMap<(usize, Tensor, usize), Scalar>;

#[derive(Debug, Clone)]
pub struct HochschildCochains {
    frame: Frame,
    target: DGModule,
    window: Window,
    truncation: Truncation,
    basis: BTreeMap<Block, Vec<(usize, Tensor, usize)>>,
    index: HashMap<(usize, Tensor, usize), (Block, usize)>,
    complex: ChainComplex,
}

/// `CH^Y(A, M) = Hom_A(CH_Y(A), M)` for a symmetric `A`-module `M`.
pub fn hochschild_cochain(
    space: &SimplicialSet,
    a: &DGAlgebra,
    m: &DGModule,
    window: &Window,
) -> Result<HochschildCochains> {
    if !space.is_pointed() {
        return Err(Error::Unpointed(space.name().to_string()));
    }
    if !a.is_commutative() {
        return Err(Error::NonCommutative);
    }
    if !m.is_symmetric(a) {
        let hint = if is_circle(space) { "; use the classical cochains on the circle" } else { "" };
        return Err(Error::InvalidInput(format!("{}: cochains need a symmetric module{hint}", m.name())));
    }
    let d = space_dimension(space)?;
    let slots = SlotBound { space_dim: d, base_max_degree: 0, base_min_degree: m.min_degree(), base_min_weight: 0 };
    let truncation = cochain_truncation(a, &slots, window)?;
    if truncation.level > space.top_level() {
        return Err(Error::InsufficientLevels { needed: truncation.level, available: space.top_level() });
    }
    let top = truncation.complete.hi.unwrap_or(i64::MAX);
    let frame = Frame::new(space.clone(), a.clone(), Some(regular_bimodule(a)), true);
    let floor = (top != i64::MAX).then(|| m.min_degree() - top);
    let unit = a.unit();
    let mut tensors: Vec<(usize, Tensor)> = Vec::new();
    for n in 0..=truncation.level {
        for ts in frame.enumerate(n, &[unit], floor, None, window.cap)?.into_values() {
            tensors.extend(ts.into_iter().map(|t| (n, t)));
        }
    }
    let mut basis: BTreeMap<Block, Vec<(usize, Tensor, usize)>> = BTreeMap::new();
    for (n, t) in &tensors {
        let (i, w) = (frame.degree(t), frame.weight(t));
        for k in 0..m.dim() {
            let deg = *n as i64 + m.degree(k) - i;
            if deg <= top {
                basis.entry((deg, m.weight(k) - w)).or_default().push((*n, t.clone(), k));
            }
        }
    }
    let mut index = HashMap::new();
    for (b, v) in &basis {
        if v.len() > window.cap {
            return Err(Error::Infeasible { estimate: v.len(), cap: window.cap });
        }
        for (i, key) in v.iter().enumerate() {
            index.insert(key.clone(), (*b, i));
        }
    }
    // incoming[(n, t)]: the terms c·(a0 ⊗ t) of D(1 ⊗ t') over all t'
    let mut incoming: HashMap<(usize, Tensor), Vec<(usize, Tensor, usize, Scalar)>> = HashMap::new();
    for (n, t) in &tensors {
        let mut c = Chain::new();
        c.insert((*n, t.clone()), Scalar::one());
        for ((n2, u), x) in frame.boundary(&c) {
            let a0 = u.module.expect("pointed tensor");
            let key = (n2, Tensor { module: Some(unit), factors: u.factors });
            incoming.entry(key).or_default().push((*n, t.clone(), a0, x));
        }
    }
    let mut diff = BTreeMap::new();
    for (&(deg, wt), v) in &basis {
        let Some(target) = basis.get(&(deg + 1, wt)) else { continue };
        let odd = deg % 2 != 0;
        let cols = v
            .iter()
            .map(|(n, t, k)| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                let mut put = |key: (usize, Tensor, usize), c: Scalar| {
                    if let Some(&(_, i)) = index.get(&key) {
                        add_term(&mut acc, i, c);
                    }
                };
                for (j, c) in m.d(*k) {
                    put((*n, t.clone(), *j), c.clone());
                }
                for (n2, t2, a0, c) in incoming.get(&(*n, t.clone())).map_or(&[][..], Vec::as_slice) {
                    let s = -sign(odd) * sign(a.degree(*a0) % 2 != 0 && (deg + *n as i64) % 2 != 0);
                    for (j, e) in m.act_left_or_symmetric(a.degree(*a0), *a0, *k) {
                        put((*n2, t2.clone(), j), &s * c * e);
                    }
                }
                acc.into_iter().collect()
            })
            .collect();
        diff.insert((deg, wt), SparseMatrix::from_columns(target.len(), cols));
    }
    let blocks = basis.iter().map(|(b, v)| (*b, v.len())).collect();
    let complex = ChainComplex::new(window.coefficients, blocks, diff, truncation.complete, WeightSet::All)?;
    Ok(HochschildCochains { frame, target: m.clone(), window: window.clone(), truncation, basis, index, complex })
}

impl HochschildCochains {
    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn space(&self) -> &SimplicialSet {
        &self.frame.space
    }

    pub fn algebra(&self) -> &DGAlgebra {
        &self.frame.algebra
    }

    pub fn target(&self) -> &DGModule {
        &self.target
    }

    pub fn truncation(&self) -> &Truncation {
        &self.truncation
    }

    pub(crate) fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn homology(&self) -> Result<HomologyTable> {
        homology_dims(&self.complex, self.window.lo, self.window.hi, &self.window.weights)
    }

    /// Largest degree with complete cochain groups.
    pub fn complete_top(&self) -> i64 {
        self.truncation.complete.hi.unwrap_or(i64::MAX)
    }

    pub fn basis(&self, b: Block) -> &[(usize, Tensor, usize)] {
        self.basis.get(&b).map_or(&[], Vec::as_slice)
    }

    /// All basis tensors `t` (with the unit at the basepoint), by level.
    pub fn tensors(&self) -> Vec<(usize, Tensor)> {
        let mut seen: Vec<(usize, Tensor)> =
            self.basis.values().flatten().map(|(n, t, _)| (*n, t.clone())).collect();
        seen.sort();
        seen.dedup();
        seen
    }

    /// Degree of `φ_{t,m}`.
    pub fn degree_of(&self, n: usize, t: &Tensor, m: usize) -> i64 {
        n as i64 + self.target.degree(m) - self.frame.degree(t)
    }

    /// `φ_{1,m}` at level 0: the cochain sending `1` to `m`.
    pub fn constant(&self, m: usize) -> Cochain {
        let mut f = Cochain::new();
        f.insert((0, Tensor::unit(Some(self.frame.algebra.unit())), m), Scalar::one());
        f
    }

    pub fn to_total(&self, f: &Cochain) -> Result<BTreeMap<Block, Vec<(usize, Scalar)>>> {
        let mut out: BTreeMap<Block, BTreeMap<usize, Scalar>> = BTreeMap::new();
        for (key, x) in f {
            let (b, i) = self
                .index
                .get(key)
                .ok_or_else(|| Error::InvalidInput(format!("cochain {key:?} outside the materialized range")))?;
            add_term(out.entry(*b).or_default(), *i, x.clone());
        }
        Ok(out.into_iter().map(|(b, v)| (b, v.into_iter().collect())).collect())
    }

    pub fn from_total(&self, b: Block, v: &[(usize, Scalar)]) -> Cochain {
        let mut f = Cochain::new();
        for (i, x) in v {
            add_term(&mut f, self.basis[&b][*i].clone(), x.clone());
        }
        f
    }

    /// `δf`.
    pub fn coboundary(&self, f: &Cochain) -> Result<Cochain> {
        let mut out = Cochain::new();
        for (b, v) in self.to_total(f)? {
            if !self.complex.blocks().contains_key(&(b.0 + 1, b.1)) {
                continue;
            }
            let img = self.complex.differential(b.0, b.1).apply(&v);
            for (k, x) in self.from_total((b.0 + 1, b.1), &img) {
                add_term(&mut out, k, x);
            }
        }
        Ok(out)
    }

    /// `f(1 ⊗ t)` as a vector in `M`.
    pub fn evaluate(&self, f: &Cochain, n: usize, t: &Tensor) -> Vector {
        let mut acc = BTreeMap::new();
        for ((n2, t2, m), x) in f.range((n, t.clone(), 0)..) {
            if *n2 != n || t2 != t {
                break;
            }
            add_term(&mut acc, *m, x.clone());
        }
        acc.into_iter().collect()
    }
}
