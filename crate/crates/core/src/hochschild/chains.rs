//! Hochschild chains over a simplicial set.
//!
//! Level `n` is spanned by tensors indexed by the simplices of `Y_n`; faces
//! and degeneracies act through `multiop` of the simplicial maps. The
//! normalized complex keeps only tensors whose non-unit slots do not all lie
//! in the image of one degeneracy.

use std::collections::{BTreeMap, HashMap};
use std::ops::Range;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::window::{chain_truncation, SlotBound, Truncation, Window};
use crate::dga::{multiop_wrapping, regular_bimodule, DGAlgebra, DGModule, Tensor};
use crate::error::{Error, Result};
use crate::homalg::field::{sign, Scalar};
use crate::homalg::total::layout;
use crate::homalg::{
    homology_dims, totalize, Bicomplex, Block, ChainComplex, HomologyTable, SparseMatrix, Totalization,
};
use crate::simp::{circle, SimplicialSet};

/// A chain as a combination of `(level, tensor)` basis elements.
pub type Chain = BTreeMap<(usize, Tensor), Scalar>;

pub(crate) fn add_term<K: Ord>(c: &mut BTreeMap<K, Scalar>, key: K, x: Scalar) {
    if x.is_zero() {
        return;
    }
    let e = c.entry(key);
    match e {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(x);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += x;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

pub(crate) fn is_circle(space: &SimplicialSet) -> bool {
    space.is_pointed() && circle(space.top_level()).renamed(space.name()) == *space
}

/// The data shared by every operation on one Hochschild complex.
#[derive(Debug, Clone)]
pub(crate) struct Frame {
    pub space: SimplicialSet,
    pub algebra: DGAlgebra,
    pub module: Option<DGModule>,
    pub masks: Vec<Vec<u64>>,
    pub normalized: bool,
    pub wrap_left: bool,
}

impl Frame {
    pub fn new(space: SimplicialSet, algebra: DGAlgebra, module: Option<DGModule>, normalized: bool) -> Self {
        let masks = (0..=space.top_level()).map(|n| space.degeneracy_masks(n)).collect();
        let wrap_left = module.is_some() && is_circle(&space);
        Frame { space, algebra, module, masks, normalized, wrap_left }
    }

    /// Slots carrying algebra factors at level `n`.
    pub fn slots(&self, n: usize) -> Range<usize> {
        let first = usize::from(self.module.is_some());
        first..self.space.size(n)
    }

    pub fn degree(&self, t: &Tensor) -> i64 {
        t.degree(&self.algebra, self.module.as_ref())
    }

    pub fn weight(&self, t: &Tensor) -> i64 {
        t.weight(&self.algebra, self.module.as_ref())
    }

    pub fn survives(&self, n: usize, t: &Tensor) -> bool {
        if !self.normalized || n == 0 {
            return true;
        }
        let mut mask = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
        for &(s, _) in &t.factors {
            mask &= self.masks[n][s];
        }
        mask == 0
    }

    /// Internal differential at level `n` (no level sign).
    pub fn internal(&self, n: usize, t: &Tensor) -> Vec<(Tensor, Scalar)> {
        let a = &self.algebra;
        let mut out = Vec::new();
        let mut before = 0i64;
        if let (Some(i), Some(m)) = (t.module, &self.module) {
            for (j, c) in m.d(i) {
                out.push((Tensor { module: Some(*j), factors: t.factors.clone() }, c.clone()));
            }
            before += m.degree(i);
        }
        for (p, &(slot, x)) in t.factors.iter().enumerate() {
            let s = sign(before % 2 != 0);
            for (y, c) in a.d(x) {
                let mut factors = t.factors.clone();
                if *y == a.unit() {
                    factors.remove(p);
                } else {
                    factors[p] = (slot, *y);
                }
                out.push((Tensor { module: t.module, factors }, &s * c));
            }
            before += a.degree(x);
        }
        out.retain(|(u, _)| self.survives(n, u));
        out
    }

    /// `d_r` from level `n` to `n − 1`.
    pub fn face(&self, n: usize, r: usize, t: &Tensor) -> Vec<(Tensor, Scalar)> {
        let f = self.space.face_table(n, r);
        let wrap = self.wrap_left && r == n;
        let mut out = multiop_wrapping(&self.algebra, self.module.as_ref(), f, t, wrap);
        out.retain(|(u, _)| self.survives(n - 1, u));
        out
    }

    /// `Σ_r (−1)^r d_r`.
    pub fn face_sum(&self, n: usize, t: &Tensor) -> Vec<(Tensor, Scalar)> {
        let mut acc: BTreeMap<Tensor, Scalar> = BTreeMap::new();
        for r in 0..=n {
            let s = sign(r % 2 == 1);
            for (u, c) in self.face(n, r, t) {
                add_term(&mut acc, u, &s * c);
            }
        }
        acc.into_iter().collect()
    }

    /// `s_j` from level `n` to `n + 1` (result not reduced modulo degeneracies).
    pub fn degeneracy(&self, n: usize, j: usize, t: &Tensor) -> Vec<(Tensor, Scalar)> {
        let f = self.space.degeneracy_table(n, j);
        multiop_wrapping(&self.algebra, self.module.as_ref(), f, t, false)
    }

    /// The total differential `D = (−1)^n d_int + Σ_r (−1)^r d_r`.
    pub fn boundary(&self, c: &Chain) -> Chain {
        let mut out = Chain::new();
        for ((n, t), x) in c {
            let s = sign(n % 2 == 1);
            for (u, y) in self.internal(*n, t) {
                add_term(&mut out, (*n, u), &s * x * y);
            }
            if *n > 0 {
                for (u, y) in self.face_sum(*n, t) {
                    add_term(&mut out, (n - 1, u), x * y);
                }
            }
        }
        out
    }

    /// Surviving basis tensors of level `n`, by internal `(degree, weight)`.
    ///
    /// `modules` lists the admissible module entries (ignored without a
    /// module). Tensors of total degree below `floor` or weight above
    /// `ceiling` are skipped.
    pub fn enumerate(
        &self,
        n: usize,
        modules: &[usize],
        floor: Option<i64>,
        ceiling: Option<i64>,
        cap: usize,
    ) -> Result<BTreeMap<Block, Vec<Tensor>>> {
        let a = &self.algebra;
        let nonunit: Vec<usize> = a.nonunit().collect();
        let slots: Vec<usize> = self.slots(n).collect();
        let mut out: BTreeMap<Block, Vec<Tensor>> = BTreeMap::new();
        let starts: Vec<Option<usize>> = match &self.module {
            Some(_) => modules.iter().map(|&m| Some(m)).collect(),
            None => vec![None],
        };
        struct Search<'a> {
            frame: &'a Frame,
            n: usize,
            nonunit: &'a [usize],
            slots: &'a [usize],
            floor: Option<i64>,
            ceiling: Option<i64>,
            cap: usize,
            out: &'a mut BTreeMap<Block, Vec<Tensor>>,
        }
        impl Search<'_> {
            fn go(&mut self, pos: usize, t: &mut Tensor, deg: i64, weight: i64) -> Result<()> {
                if self.floor.is_some_and(|f| deg - (self.n as i64) < f) {
                    return Ok(());
                }
                if self.ceiling.is_some_and(|w| weight > w) {
                    return Ok(());
                }
                if pos == self.slots.len() {
                    if self.frame.survives(self.n, t) {
                        let v = self.out.entry((deg, weight)).or_default();
                        v.push(t.clone());
                        if v.len() > self.cap {
                            return Err(Error::Infeasible { estimate: v.len(), cap: self.cap });
                        }
                    }
                    return Ok(());
                }
                self.go(pos + 1, t, deg, weight)?;
                let a = &self.frame.algebra;
                for &x in self.nonunit {
                    t.factors.push((self.slots[pos], x));
                    let r = self.go(pos + 1, t, deg + a.degree(x), weight + a.weight(x));
                    t.factors.pop();
                    r?;
                }
                Ok(())
            }
        }
        for start in starts {
            let mut t = Tensor::unit(start);
            let deg = self.degree(&t);
            let weight = self.weight(&t);
            let mut search =
                Search { frame: self, n, nonunit: &nonunit, slots: &slots, floor, ceiling, cap, out: &mut out };
            search.go(0, &mut t, deg, weight)?;
        }
        Ok(out)
    }
}

/// Largest dimension of a nondegenerate simplex; fails when the top level
/// still has nondegenerate simplices, since the dimension is then unknown.
pub(crate) fn space_dimension(space: &SimplicialSet) -> Result<usize> {
    let nd = space.nondegenerate();
    let top = space.top_level();
    let d = (0..=top).rev().find(|&n| !nd.nondegenerate[n].is_empty()).unwrap_or(0);
    if d == top && top > 0 || space.size(0) == 0 {
        return Err(Error::InsufficientLevels { needed: top + 1, available: top });
    }
    Ok(d)
}

/// Basis, indices and layout of a built complex.
#[derive(Debug, Clone)]
pub(crate) struct Layout {
    pub levels: Vec<BTreeMap<Block, Vec<Tensor>>>,
    pub index: Vec<HashMap<Tensor, usize>>,
    pub offsets: BTreeMap<(usize, Block), usize>,
}

impl Layout {
    fn new(levels: Vec<BTreeMap<Block, Vec<Tensor>>>) -> Self {
        let index = levels
            .iter()
            .map(|blocks| {
                blocks.values().flat_map(|ts| ts.iter().enumerate().map(|(i, t)| (t.clone(), i))).collect()
            })
            .collect();
        Layout { levels, index, offsets: BTreeMap::new() }
    }
}

/// `CH_Y(A)` or `CH_Y(A, M)`, normalized (default) or not.
#[derive(Debug, Clone)]
pub struct HochschildComplex {
    frame: Frame,
    module_is_algebra: bool,
    window: Window,
    truncation: Truncation,
    layout: Layout,
    complex: ChainComplex,
}

/// `CH_Y(A)`: for a pointed `Y` the basepoint slot carries `A` itself.
pub fn hochschild_chain(space: &SimplicialSet, a: &DGAlgebra, window: &Window) -> Result<HochschildComplex> {
    let module = space.is_pointed().then(|| regular_bimodule(a));
    build(space, a, module, true, window)
}

/// `CH_Y(A, M) = M ⊗_A CH_Y(A)` with `M` at the basepoint.
///
/// `M` must be a symmetric bimodule unless `Y` is the circle, where a
/// genuine bimodule is allowed: the last slot then acts on `M` from the left.
pub fn hochschild_chain_with_coeff(
    space: &SimplicialSet,
    a: &DGAlgebra,
    m: &DGModule,
    window: &Window,
) -> Result<HochschildComplex> {
    if !space.is_pointed() {
        return Err(Error::Unpointed(space.name().to_string()));
    }
    build(space, a, Some(m.clone()), false, window)
}

fn build(
    space: &SimplicialSet,
    a: &DGAlgebra,
    module: Option<DGModule>,
    module_is_algebra: bool,
    window: &Window,
) -> Result<HochschildComplex> {
    let circle_like = is_circle(space);
    if !a.is_commutative() && !circle_like {
        return Err(Error::NonCommutative);
    }
    if let Some(m) = &module {
        if !circle_like && !m.is_symmetric(a) {
            return Err(Error::InvalidInput(format!(
                "{}: non-symmetric bimodule coefficients are supported over the circle only",
                m.name()
            )));
        }
    }
    let d = space_dimension(space)?;
    let slots = SlotBound {
        space_dim: d,
        base_max_degree: module.as_ref().map_or(0, |m| m.max_degree()),
        base_min_degree: module.as_ref().map_or(0, |m| m.min_degree()),
        base_min_weight: module.as_ref().map_or(0, |m| m.min_weight()),
    };
    let truncation = chain_truncation(a, &slots, window)?;
    let n_max = truncation.level;
    if n_max > space.top_level() {
        return Err(Error::InsufficientLevels { needed: n_max, available: space.top_level() });
    }
    let normalized = window.totalization == Totalization::Normalized;
    let frame = Frame::new(space.truncate(n_max), a.clone(), module, normalized);
    let modules: Vec<usize> = frame.module.as_ref().map_or(Vec::new(), |m| (0..m.dim()).collect());
    let levels: Vec<BTreeMap<Block, Vec<Tensor>>> = (0..=n_max)
        .into_par_iter()
        .map(|n| frame.enumerate(n, &modules, truncation.degree_floor, truncation.weight_ceiling, window.cap))
        .collect::<Result<_>>()?;
    let mut layout = Layout::new(levels);
    let bc = bicomplex(&frame, &layout);
    let (_, offsets) = layout_offsets(&bc);
    layout.offsets = offsets;
    let complex = totalize(window.coefficients, &bc, truncation.complete, truncation.weights)?;
    Ok(HochschildComplex { frame, module_is_algebra, window: window.clone(), truncation, layout, complex })
}

fn layout_offsets(bc: &Bicomplex) -> (BTreeMap<Block, usize>, BTreeMap<(usize, Block), usize>) {
    layout(bc)
}

fn bicomplex(frame: &Frame, layout: &Layout) -> Bicomplex {
    let per_level: Vec<(BTreeMap<Block, usize>, BTreeMap<Block, SparseMatrix>, BTreeMap<Block, SparseMatrix>)> =
        (0..layout.levels.len())
            .into_par_iter()
            .map(|n| {
                let blocks = &layout.levels[n];
                let dims: BTreeMap<Block, usize> = blocks.iter().map(|(b, ts)| (*b, ts.len())).collect();
                let mut internal = BTreeMap::new();
                let mut faces = BTreeMap::new();
                for (&(i, w), ts) in blocks {
                    if let Some(target) = blocks.get(&(i + 1, w)) {
                        let cols = ts
                            .iter()
                            .map(|t| column(&layout.index[n], frame.internal(n, t)))
                            .collect();
                        internal.insert((i, w), SparseMatrix::from_columns(target.len(), cols));
                    }
                    if n > 0 {
                        if let Some(target) = layout.levels[n - 1].get(&(i, w)) {
                            let cols = ts
                                .iter()
                                .map(|t| column(&layout.index[n - 1], frame.face_sum(n, t)))
                                .collect();
                            faces.insert((i, w), SparseMatrix::from_columns(target.len(), cols));
                        }
                    }
                }
                (dims, internal, faces)
            })
            .collect();
    let mut bc = Bicomplex::default();
    for (dims, internal, faces) in per_level {
        bc.levels.push(dims);
        bc.internal.push(internal);
        bc.faces.push(faces);
    }
    bc
}

fn column(index: &HashMap<Tensor, usize>, terms: Vec<(Tensor, Scalar)>) -> Vec<(usize, Scalar)> {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (t, c) in terms {
        // targets outside the enumerated range lie below the degree floor
        if let Some(&i) = index.get(&t) {
            add_term(&mut acc, i, c);
        }
    }
    acc.into_iter().collect()
}

impl HochschildComplex {
    pub fn space(&self) -> &SimplicialSet {
        &self.frame.space
    }

    pub fn algebra(&self) -> &DGAlgebra {
        &self.frame.algebra
    }

    /// The module at the basepoint (`A` itself for [`hochschild_chain`] on a
    /// pointed space).
    pub fn module(&self) -> Option<&DGModule> {
        self.frame.module.as_ref()
    }

    pub fn module_is_algebra(&self) -> bool {
        self.module_is_algebra
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn truncation(&self) -> &Truncation {
        &self.truncation
    }

    pub(crate) fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Homology in the requested window.
    pub fn homology(&self) -> Result<HomologyTable> {
        homology_dims(&self.complex, self.window.lo, self.window.hi, &self.window.weights)
    }

    /// Dimensions of level `n` by internal `(degree, weight)`.
    pub fn level_dims(&self, n: usize) -> BTreeMap<Block, usize> {
        self.layout.levels[n].iter().map(|(b, ts)| (*b, ts.len())).collect()
    }

    pub fn level_count(&self) -> usize {
        self.layout.levels.len()
    }

    /// Basis tensors of level `n` in internal block `b`. Slots are simplex
    /// ids of `Y_n`.
    pub fn level_basis(&self, n: usize, b: Block) -> &[Tensor] {
        self.layout.levels[n].get(&b).map_or(&[], Vec::as_slice)
    }

    /// Total degree of a basis tensor at level `n`.
    pub fn total_degree(&self, n: usize, t: &Tensor) -> i64 {
        self.frame.degree(t) - n as i64
    }

    pub fn weight_of(&self, t: &Tensor) -> i64 {
        self.frame.weight(t)
    }

    /// Whether `t` survives normalization at level `n`.
    pub fn survives(&self, n: usize, t: &Tensor) -> bool {
        self.frame.survives(n, t)
    }

    /// The unit chain `1 ∈ CH_0`.
    pub fn unit(&self) -> Chain {
        let t = Tensor::unit(self.frame.module.as_ref().map(|_| self.frame.algebra.unit()));
        let mut c = Chain::new();
        c.insert((0, t), Scalar::one());
        c
    }

    /// `D` applied to a chain.
    pub fn boundary(&self, c: &Chain) -> Chain {
        self.frame.boundary(c)
    }

    /// Coordinates of a chain in the total complex, by total block.
    pub fn to_total(&self, c: &Chain) -> Result<BTreeMap<Block, Vec<(usize, Scalar)>>> {
        let mut out: BTreeMap<Block, BTreeMap<usize, Scalar>> = BTreeMap::new();
        for ((n, t), x) in c {
            let (i, w) = (self.frame.degree(t), self.frame.weight(t));
            let idx = self.layout.index[*n].get(t).ok_or_else(|| {
                Error::InvalidInput(format!("tensor {t:?} at level {n} is not in the materialized basis"))
            })?;
            let off = self.layout.offsets[&(*n, (i, w))];
            add_term(out.entry((i - *n as i64, w)).or_default(), off + idx, x.clone());
        }
        Ok(out.into_iter().map(|(b, v)| (b, v.into_iter().collect())).collect())
    }

    /// The chain with the given coordinates in total block `b`.
    pub fn from_total(&self, b: Block, v: &[(usize, Scalar)]) -> Chain {
        let (k, w) = b;
        let mut c = Chain::new();
        for (j, x) in v {
            for n in 0..self.layout.levels.len() {
                let ib = (k + n as i64, w);
                let Some(&off) = self.layout.offsets.get(&(n, ib)) else { continue };
                let ts = &self.layout.levels[n][&ib];
                if (off..off + ts.len()).contains(j) {
                    add_term(&mut c, (n, ts[j - off].clone()), x.clone());
                }
            }
        }
        c
    }
}
