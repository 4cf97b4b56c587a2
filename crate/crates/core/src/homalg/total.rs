//! Totalization of simplicial objects in chain complexes.
//!
//! A class at simplicial level `n` and internal degree `i` sits in total
//! degree `i − n`. The total differential is
//! `D = (−1)^n d_int + Σ_r (−1)^r (d_r)_*`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::complex::{Block, ChainComplex, DegreeRange, WeightSet};
use super::field::{sign, Coefficients, Scalar};
use super::matrix::SparseMatrix;
use super::rank::Echelon;
use crate::error::{Error, Result};

/// Levelwise data ready to be totalized: dimensions, internal differentials
/// and the alternating face sum, all keyed by internal `(degree, weight)`.
#[derive(Debug, Clone, Default)]
pub struct Bicomplex {
    /// `levels[n][(i, w)]` = dimension.
    pub levels: Vec<BTreeMap<Block, usize>>,
    /// `internal[n][(i, w)]`: level `n`, internal degree `i` → `i + 1`.
    pub internal: Vec<BTreeMap<Block, SparseMatrix>>,
    /// `faces[n][(i, w)]`: `Σ_r (−1)^r d_r` from level `n` to `n − 1`;
    /// `faces[0]` is unused.
    pub faces: Vec<BTreeMap<Block, SparseMatrix>>,
}

impl Bicomplex {
    pub fn top_level(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }
}

/// Position of a level-`n` piece inside each total block: for total block
/// `(k, w)`, the pieces of levels `0, 1, …` are stacked in order.
pub(crate) fn layout(bc: &Bicomplex) -> (BTreeMap<Block, usize>, BTreeMap<(usize, Block), usize>) {
    let mut dims: BTreeMap<Block, usize> = BTreeMap::new();
    let mut offset = BTreeMap::new();
    for (n, level) in bc.levels.iter().enumerate() {
        for (&(i, w), &d) in level {
            if d == 0 {
                continue;
            }
            let k = i - n as i64;
            let e = dims.entry((k, w)).or_insert(0);
            offset.insert((n, (i, w)), *e);
            *e += d;
        }
    }
    (dims, offset)
}

/// Assembles the total complex with the given certification.
pub fn totalize(
    coeffs: Coefficients,
    bc: &Bicomplex,
    complete: DegreeRange,
    weights: WeightSet,
) -> Result<ChainComplex> {
    let (dims, offset) = layout(bc);
    let keys: Vec<(Block, usize)> = dims.iter().map(|(b, d)| (*b, *d)).collect();
    let built: Vec<(Block, SparseMatrix)> = keys
        .par_iter()
        .filter_map(|&((k, w), dim)| {
            let tdim = *dims.get(&(k + 1, w))?;
            let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dim];
            for (n, level) in bc.levels.iter().enumerate() {
                let i = k + n as i64;
                let Some(&src_off) = offset.get(&(n, (i, w))) else { continue };
                let d = level[&(i, w)];
                let s = sign(n % 2 == 1);
                if let Some(m) = bc.internal.get(n).and_then(|x| x.get(&(i, w))) {
                    if let Some(&o) = offset.get(&(n, (i + 1, w))) {
                        for j in 0..d {
                            for (r, x) in m.column(j) {
                                cols[src_off + j].push((o + r, &s * x));
                            }
                        }
                    }
                }
                if n > 0 {
                    if let Some(m) = bc.faces.get(n).and_then(|x| x.get(&(i, w))) {
                        if let Some(&o) = offset.get(&(n - 1, (i, w))) {
                            for j in 0..d {
                                for (r, x) in m.column(j) {
                                    cols[src_off + j].push((o + r, x.clone()));
                                }
                            }
                        }
                    }
                }
            }
            let m = SparseMatrix::from_columns(tdim, cols);
            (!m.is_zero()).then_some(((k, w), m))
        })
        .collect();
    ChainComplex::new(coeffs, dims, built.into_iter().collect(), complete, weights)
}

/// A simplicial object in chain complexes, materialized on levels `0..=N`.
#[derive(Debug, Clone)]
pub struct SimplicialChainObject {
    pub coefficients: Coefficients,
    pub levels: Vec<ChainComplex>,
    /// `faces[n][r]`: `d_r` from level `n` to level `n − 1`, keyed by internal
    /// block (`faces[0]` empty).
    pub faces: Vec<Vec<BTreeMap<Block, SparseMatrix>>>,
    /// `degeneracies[n][j]`: `s_j` from level `n` to level `n + 1`, for
    /// `n < N`. Only needed for the normalized totalization.
    pub degeneracies: Vec<Vec<BTreeMap<Block, SparseMatrix>>>,
    /// Upper bound on internal degrees at every level, if one exists.
    pub internal_top: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Totalization {
    Unnormalized,
    Normalized,
}

impl SimplicialChainObject {
    /// Constant object on `v`: every face and degeneracy is the identity.
    pub fn constant(v: &ChainComplex, top_level: usize) -> Self {
        let ident: BTreeMap<Block, SparseMatrix> = v
            .blocks()
            .iter()
            .map(|(&b, &d)| (b, SparseMatrix::identity(d)))
            .collect();
        let n_max = top_level;
        SimplicialChainObject {
            coefficients: v.coefficients(),
            levels: vec![v.clone(); n_max + 1],
            faces: (0..=n_max).map(|n| vec![ident.clone(); if n == 0 { 0 } else { n + 1 }]).collect(),
            degeneracies: (0..=n_max)
                .map(|n| if n < n_max { vec![ident.clone(); n + 1] } else { Vec::new() })
                .collect(),
            internal_top: v.blocks().keys().map(|(k, _)| *k).max().or(Some(0)),
        }
    }

    /// Total degrees in which the truncation to levels `0..=N` is complete.
    pub fn complete_range(&self) -> DegreeRange {
        let n_max = self.levels.len() as i64 - 1;
        let mut r = match self.internal_top {
            Some(top) => DegreeRange::at_least(top - n_max),
            None => DegreeRange { lo: Some(1), hi: Some(0) },
        };
        for (n, level) in self.levels.iter().enumerate() {
            r = r.intersect(&level.complete_range().shift(-(n as i64)));
        }
        r
    }

    fn weights(&self) -> WeightSet {
        self.levels.iter().fold(WeightSet::All, |acc, l| acc.intersect(&l.weights()))
    }

    fn face_sum(&self, n: usize) -> BTreeMap<Block, SparseMatrix> {
        let mut out: BTreeMap<Block, SparseMatrix> = BTreeMap::new();
        for (r, face) in self.faces[n].iter().enumerate() {
            let s = sign(r % 2 == 1);
            for (&b, m) in face {
                let term = m.scale(&s);
                match out.get_mut(&b) {
                    Some(acc) => *acc = acc.add(&term),
                    None => {
                        out.insert(b, term);
                    }
                }
            }
        }
        out
    }

    fn unnormalized(&self) -> Bicomplex {
        let levels = self.levels.iter().map(|l| l.blocks().clone()).collect();
        let internal = self
            .levels
            .iter()
            .map(|l| {
                l.blocks()
                    .keys()
                    .filter_map(|&(i, w)| l.differential_ref(i, w).map(|m| ((i, w), m.clone())))
                    .collect()
            })
            .collect();
        let faces = (0..self.levels.len())
            .map(|n| if n == 0 { BTreeMap::new() } else { self.face_sum(n) })
            .collect();
        Bicomplex { levels, internal, faces }
    }

    fn normalized(&self) -> Result<Bicomplex> {
        let n_levels = self.levels.len();
        // echelon of the degenerate subspace, per level and block
        let mut ech: Vec<BTreeMap<Block, Echelon>> = Vec::with_capacity(n_levels);
        for n in 0..n_levels {
            let mut per = BTreeMap::new();
            for (&b, &d) in self.levels[n].blocks() {
                let mut vecs = Vec::new();
                if n > 0 {
                    let degs = self.degeneracies.get(n - 1).ok_or(Error::InsufficientLevels {
                        needed: n,
                        available: self.degeneracies.len(),
                    })?;
                    for s in degs {
                        if let Some(m) = s.get(&b) {
                            vecs.extend(m.columns().iter().cloned());
                        }
                    }
                }
                per.insert(b, Echelon::new(d, &vecs));
            }
            ech.push(per);
        }
        let project = |n: usize, b: Block, v: &[(usize, Scalar)]| -> Vec<(usize, Scalar)> {
            match ech[n].get(&b) {
                Some(e) => e.project(v),
                None => Vec::new(),
            }
        };
        let faces_sum: Vec<BTreeMap<Block, SparseMatrix>> = (0..n_levels)
            .map(|n| if n == 0 { BTreeMap::new() } else { self.face_sum(n) })
            .collect();
        let mut bc = Bicomplex::default();
        for n in 0..n_levels {
            let mut dims = BTreeMap::new();
            let mut internal = BTreeMap::new();
            let mut faces = BTreeMap::new();
            for (&(i, w), e) in &ech[n] {
                let comp = e.complement();
                if comp.is_empty() {
                    continue;
                }
                dims.insert((i, w), comp.len());
                if let Some(m) = self.levels[n].differential_ref(i, w) {
                    if let Some(t) = ech[n].get(&(i + 1, w)) {
                        let cols = comp.iter().map(|&c| project(n, (i + 1, w), m.column(c))).collect();
                        internal.insert((i, w), SparseMatrix::from_columns(t.complement().len(), cols));
                    }
                }
                if n > 0 {
                    if let (Some(m), Some(t)) = (faces_sum[n].get(&(i, w)), ech[n - 1].get(&(i, w))) {
                        let cols = comp.iter().map(|&c| project(n - 1, (i, w), m.column(c))).collect();
                        faces.insert((i, w), SparseMatrix::from_columns(t.complement().len(), cols));
                    }
                }
            }
            bc.levels.push(dims);
            bc.internal.push(internal);
            bc.faces.push(faces);
        }
        Ok(bc)
    }
}

/// Total complex of `s`, optionally normalized by quotienting degeneracy
/// images.
pub fn total_complex(s: &SimplicialChainObject, mode: Totalization) -> Result<ChainComplex> {
    if s.levels.is_empty() {
        return Err(Error::InsufficientLevels { needed: 1, available: 0 });
    }
    if s.faces.len() != s.levels.len() {
        return Err(Error::InsufficientLevels { needed: s.levels.len(), available: s.faces.len() });
    }
    let bc = match mode {
        Totalization::Unnormalized => s.unnormalized(),
        Totalization::Normalized => s.normalized()?,
    };
    totalize(s.coefficients, &bc, s.complete_range(), s.weights())
}
