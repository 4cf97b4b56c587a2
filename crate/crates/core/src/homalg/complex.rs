use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::Coefficients;
use super::matrix::SparseMatrix;
use super::rank::rank;
use crate::error::{Error, Result};

/// A `(degree, weight)` pair indexing one block of a complex.
pub type Block = (i64, i64);

/// A closed range of degrees; `None` means unbounded on that side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRange {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl DegreeRange {
    pub const ALL: DegreeRange = DegreeRange { lo: None, hi: None };

    pub fn new(lo: i64, hi: i64) -> Self {
        DegreeRange { lo: Some(lo), hi: Some(hi) }
    }

    pub fn at_least(lo: i64) -> Self {
        DegreeRange { lo: Some(lo), hi: None }
    }

    pub fn at_most(hi: i64) -> Self {
        DegreeRange { lo: None, hi: Some(hi) }
    }

    pub fn contains(&self, k: i64) -> bool {
        self.lo.is_none_or(|lo| lo <= k) && self.hi.is_none_or(|hi| k <= hi)
    }

    pub fn is_empty(&self) -> bool {
        matches!((self.lo, self.hi), (Some(lo), Some(hi)) if lo > hi)
    }

    pub fn contains_range(&self, lo: i64, hi: i64) -> bool {
        lo > hi || (self.contains(lo) && self.contains(hi))
    }

    pub fn intersect(&self, other: &DegreeRange) -> DegreeRange {
        let lo = match (self.lo, other.lo) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let hi = match (self.hi, other.hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        DegreeRange { lo, hi }
    }

    pub fn shift(&self, by: i64) -> DegreeRange {
        DegreeRange { lo: self.lo.map(|x| x + by), hi: self.hi.map(|x| x + by) }
    }

    /// Shrinks by one on each bounded side.
    pub fn interior(&self) -> DegreeRange {
        DegreeRange { lo: self.lo.map(|x| x + 1), hi: self.hi.map(|x| x - 1) }
    }
}

impl fmt::Display for DegreeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lo {
            Some(lo) => write!(f, "[{lo}, ")?,
            None => write!(f, "(-inf, ")?,
        }
        match self.hi {
            Some(hi) => write!(f, "{hi}]"),
            None => write!(f, "+inf)"),
        }
    }
}

/// The weights in which a complex is complete.
///
/// `UpTo(w)` is only used for complexes whose weights are all non-negative;
/// it certifies weights `0..=w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightSet {
    All,
    UpTo(i64),
}

impl WeightSet {
    pub fn contains(&self, w: i64) -> bool {
        match self {
            WeightSet::All => true,
            WeightSet::UpTo(max) => w <= *max,
        }
    }

    pub fn intersect(&self, other: &WeightSet) -> WeightSet {
        match (self, other) {
            (WeightSet::All, x) | (x, WeightSet::All) => *x,
            (WeightSet::UpTo(a), WeightSet::UpTo(b)) => WeightSet::UpTo(*a.min(b)),
        }
    }
}

impl fmt::Display for WeightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSet::All => write!(f, "all weights"),
            WeightSet::UpTo(w) => write!(f, "weights <= {w}"),
        }
    }
}

/// A cochain complex of finite-dimensional vector spaces, split by
/// `(degree, weight)`, with a differential of degree `+1`.
///
/// `complete` records the degrees in which the chain groups (and the
/// differential between them) agree with the untruncated complex;
/// homology is certified one degree inside that range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    coeffs: Coefficients,
    blocks: BTreeMap<Block, usize>,
    diff: BTreeMap<Block, SparseMatrix>,
    complete: DegreeRange,
    weights: WeightSet,
}

impl ChainComplex {
    /// Assembles a complex, checking matrix shapes. Differentials are keyed
    /// by their source block; missing entries are zero.
    pub fn new(
        coeffs: Coefficients,
        blocks: BTreeMap<Block, usize>,
        diff: BTreeMap<Block, SparseMatrix>,
        complete: DegreeRange,
        weights: WeightSet,
    ) -> Result<Self> {
        let blocks: BTreeMap<Block, usize> = blocks.into_iter().filter(|(_, d)| *d > 0).collect();
        let mut kept = BTreeMap::new();
        for ((k, w), m) in diff {
            let src = blocks.get(&(k, w)).copied().unwrap_or(0);
            let tgt = blocks.get(&(k + 1, w)).copied().unwrap_or(0);
            if m.ncols() != src || m.nrows() != tgt {
                return Err(Error::InvalidInput(format!(
                    "differential at ({k}, {w}) is {}x{}, expected {tgt}x{src}",
                    m.nrows(),
                    m.ncols()
                )));
            }
            if !m.is_zero() {
                kept.insert((k, w), m);
            }
        }
        if let WeightSet::UpTo(_) = weights {
            if blocks.keys().any(|(_, w)| *w < 0) {
                return Err(Error::InvalidInput(
                    "weight-truncated complex with negative weights".into(),
                ));
            }
        }
        Ok(ChainComplex { coeffs, blocks, diff: kept, complete, weights })
    }

    pub fn zero(coeffs: Coefficients) -> Self {
        ChainComplex {
            coeffs,
            blocks: BTreeMap::new(),
            diff: BTreeMap::new(),
            complete: DegreeRange::ALL,
            weights: WeightSet::All,
        }
    }

    /// `k^dim` in a single degree and weight, zero differential.
    pub fn concentrated(coeffs: Coefficients, degree: i64, weight: i64, dim: usize) -> Self {
        let mut blocks = BTreeMap::new();
        if dim > 0 {
            blocks.insert((degree, weight), dim);
        }
        ChainComplex {
            coeffs,
            blocks,
            diff: BTreeMap::new(),
            complete: DegreeRange::ALL,
            weights: WeightSet::All,
        }
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coeffs
    }

    pub fn complete_range(&self) -> DegreeRange {
        self.complete
    }

    /// Degrees in which homology is certified.
    pub fn certified_window(&self) -> DegreeRange {
        self.complete.interior()
    }

    pub fn weights(&self) -> WeightSet {
        self.weights
    }

    pub fn blocks(&self) -> &BTreeMap<Block, usize> {
        &self.blocks
    }

    pub fn dim(&self, degree: i64, weight: i64) -> usize {
        self.blocks.get(&(degree, weight)).copied().unwrap_or(0)
    }

    /// Total dimension in a degree, summed over weights.
    pub fn dim_in_degree(&self, degree: i64) -> usize {
        self.blocks.iter().filter(|((k, _), _)| *k == degree).map(|(_, d)| d).sum()
    }

    pub fn max_block(&self) -> usize {
        self.blocks.values().copied().max().unwrap_or(0)
    }

    pub fn degrees(&self) -> BTreeSet<i64> {
        self.blocks.keys().map(|(k, _)| *k).collect()
    }

    pub fn weight_values(&self) -> BTreeSet<i64> {
        self.blocks.keys().map(|(_, w)| *w).collect()
    }

    /// The differential out of block `(degree, weight)`, as a
    /// `dim(degree+1, weight) × dim(degree, weight)` matrix.
    pub fn differential(&self, degree: i64, weight: i64) -> SparseMatrix {
        self.diff.get(&(degree, weight)).cloned().unwrap_or_else(|| {
            SparseMatrix::zero(self.dim(degree + 1, weight), self.dim(degree, weight))
        })
    }

    pub(crate) fn differential_ref(&self, degree: i64, weight: i64) -> Option<&SparseMatrix> {
        self.diff.get(&(degree, weight))
    }

    pub fn with_coefficients(mut self, coeffs: Coefficients) -> Self {
        self.coeffs = coeffs;
        self
    }

    /// Narrows the certified data, e.g. after a caller-side truncation.
    pub fn restrict_certification(mut self, complete: DegreeRange, weights: WeightSet) -> Self {
        self.complete = self.complete.intersect(&complete);
        self.weights = self.weights.intersect(&weights);
        self
    }

    /// Replaces the differential in one block; used to inject faults in tests.
    pub fn with_differential(mut self, degree: i64, weight: i64, m: SparseMatrix) -> Result<Self> {
        let (src, tgt) = (self.dim(degree, weight), self.dim(degree + 1, weight));
        if m.ncols() != src || m.nrows() != tgt {
            return Err(Error::InvalidInput("differential shape mismatch".into()));
        }
        self.diff.insert((degree, weight), m);
        Ok(self)
    }

    /// Relabels the basis of every block by the given permutations
    /// (`perms[block][old] = new`).
    pub fn permuted(&self, perms: &BTreeMap<Block, Vec<usize>>) -> ChainComplex {
        let ident = |b: &Block| (0..self.dim(b.0, b.1)).collect::<Vec<_>>();
        let mut diff = BTreeMap::new();
        for (&(k, w), m) in &self.diff {
            let p_src = perms.get(&(k, w)).cloned().unwrap_or_else(|| ident(&(k, w)));
            let p_tgt = perms.get(&(k + 1, w)).cloned().unwrap_or_else(|| ident(&(k + 1, w)));
            let mut inv = vec![0; p_src.len()];
            for (old, &new) in p_src.iter().enumerate() {
                inv[new] = old;
            }
            diff.insert((k, w), m.permute_rows(&p_tgt).permute_columns(&inv));
        }
        ChainComplex { diff, ..self.clone() }
    }

    /// Euler characteristic of the chain groups of one weight over a degree
    /// range.
    pub fn euler_characteristic(&self, weight: i64, lo: i64, hi: i64) -> i64 {
        (lo..=hi)
            .map(|k| if k.rem_euclid(2) == 0 { 1 } else { -1 } * self.dim(k, weight) as i64)
            .sum()
    }
}

/// Homology dimensions indexed by `(degree, weight)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyTable {
    pub lo: i64,
    pub hi: i64,
    pub weights: Vec<i64>,
    dims: BTreeMap<Block, usize>,
}

impl HomologyTable {
    pub fn get(&self, degree: i64, weight: i64) -> usize {
        self.dims.get(&(degree, weight)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (Block, usize)> + '_ {
        self.dims.iter().map(|(b, d)| (*b, *d))
    }

    /// Totals over the requested weights, one entry per degree in the window.
    pub fn by_degree(&self) -> BTreeMap<i64, usize> {
        (self.lo..=self.hi)
            .map(|k| (k, self.weights.iter().map(|&w| self.get(k, w)).sum()))
            .collect()
    }

    /// Totals listed from the top degree downward.
    pub fn descending(&self) -> Vec<usize> {
        self.by_degree().into_values().rev().collect()
    }

    /// Totals of a single weight listed from the top degree downward.
    pub fn descending_weight(&self, weight: i64) -> Vec<usize> {
        (self.lo..=self.hi).rev().map(|k| self.get(k, weight)).collect()
    }
}

/// Which weights to report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightRequest {
    /// Every weight carrying a nonzero chain group in the window.
    Present,
    Only(Vec<i64>),
}

/// `dim H^k` for every `k` in `[lo, hi]` and every requested weight.
///
/// Fails with [`Error::WindowNotCertified`] unless the window lies inside
/// the certified window of `c` and the weights are certified.
pub fn homology_dims(
    c: &ChainComplex,
    lo: i64,
    hi: i64,
    weights: &WeightRequest,
) -> Result<HomologyTable> {
    let cert = c.certified_window();
    if !cert.contains_range(lo, hi) {
        return Err(Error::WindowNotCertified {
            requested: format!("[{lo}, {hi}]"),
            certified: cert.to_string(),
        });
    }
    let weights: Vec<i64> = match weights {
        WeightRequest::Present => c
            .blocks
            .keys()
            .filter(|(k, _)| (lo..=hi).contains(k))
            .map(|(_, w)| *w)
            .filter(|w| c.weights.contains(*w))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect(),
        WeightRequest::Only(ws) => {
            let ws: BTreeSet<i64> = ws.iter().copied().collect();
            if let Some(w) = ws.iter().find(|w| !c.weights.contains(**w)) {
                return Err(Error::WindowNotCertified {
                    requested: format!("weight {w}"),
                    certified: c.weights.to_string(),
                });
            }
            ws.into_iter().collect()
        }
    };
    // ranks needed: d out of k and d into k, for k in the window
    let mut needed: BTreeSet<Block> = BTreeSet::new();
    for &w in &weights {
        for k in lo..=hi {
            if c.dim(k, w) == 0 {
                continue;
            }
            for src in [k, k - 1] {
                if c.diff.contains_key(&(src, w)) {
                    needed.insert((src, w));
                }
            }
        }
    }
    let needed: Vec<Block> = needed.into_iter().collect();
    let ranks: Vec<Result<usize>> = needed
        .par_iter()
        .map(|b| rank(&c.diff[b], c.coeffs))
        .collect();
    let mut rank_of = BTreeMap::new();
    for (b, r) in needed.into_iter().zip(ranks) {
        rank_of.insert(b, r?);
    }
    let r = |b: Block| rank_of.get(&b).copied().unwrap_or(0);
    let mut dims = BTreeMap::new();
    for &w in &weights {
        for k in lo..=hi {
            let d = c.dim(k, w);
            if d == 0 {
                continue;
            }
            let h = d - r((k, w)) - r((k - 1, w));
            if h > 0 {
                dims.insert((k, w), h);
            }
        }
    }
    Ok(HomologyTable { lo, hi, weights, dims })
}

/// Witness of a failed `d∘d = 0` check: the basis vector `index` of block
/// `(degree, weight)` has nonzero image under `d∘d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialWitness {
    pub degree: i64,
    pub weight: i64,
    pub index: usize,
}

/// Verifies `d∘d = 0` block by block.
pub fn check_differential(c: &ChainComplex) -> std::result::Result<(), DifferentialWitness> {
    let bad: Vec<DifferentialWitness> = c
        .diff
        .par_iter()
        .filter_map(|(&(k, w), d1)| {
            let d2 = c.diff.get(&(k + 1, w))?;
            let dd = d2.compose(d1);
            let index = (0..dd.ncols()).find(|&j| !dd.column(j).is_empty())?;
            Some(DifferentialWitness { degree: k, weight: w, index })
        })
        .collect();
    match bad.into_iter().next() {
        Some(w) => Err(w),
        None => Ok(()),
    }
}

/// A degree-preserving map of complexes, one matrix per source block.
#[derive(Debug, Clone)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    blocks: BTreeMap<Block, SparseMatrix>,
}

impl ChainMap {
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        blocks: BTreeMap<Block, SparseMatrix>,
    ) -> Result<Self> {
        if source.coeffs != target.coeffs {
            return Err(Error::CoefficientMismatch(
                source.coeffs.to_string(),
                target.coeffs.to_string(),
            ));
        }
        for (&(k, w), m) in &blocks {
            if m.ncols() != source.dim(k, w) || m.nrows() != target.dim(k, w) {
                return Err(Error::DegreeMismatch(format!(
                    "map block ({k}, {w}) has shape {}x{}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        Ok(ChainMap { source, target, blocks })
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let blocks = c
            .blocks
            .iter()
            .map(|(&b, &d)| (b, SparseMatrix::identity(d)))
            .collect();
        ChainMap { source: c.clone(), target: c.clone(), blocks }
    }

    pub fn zero(source: ChainComplex, target: ChainComplex) -> Self {
        ChainMap { source, target, blocks: BTreeMap::new() }
    }

    pub fn block(&self, degree: i64, weight: i64) -> SparseMatrix {
        self.blocks.get(&(degree, weight)).cloned().unwrap_or_else(|| {
            SparseMatrix::zero(self.target.dim(degree, weight), self.source.dim(degree, weight))
        })
    }

    /// Checks `d f = f d` on every block; returns the first offending
    /// source block.
    pub fn check(&self) -> std::result::Result<(), Block> {
        let keys: BTreeSet<Block> = self.source.blocks.keys().copied().collect();
        for (k, w) in keys {
            let lhs = self.target.differential(k, w).compose(&self.block(k, w));
            let rhs = self.block(k + 1, w).compose(&self.source.differential(k, w));
            if lhs != rhs {
                return Err((k, w));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::field::int;

    fn q() -> Coefficients {
        Coefficients::Rational
    }

    /// k --1--> k in degrees -1, 0, plus k in degree -2.
    fn sample() -> ChainComplex {
        let mut blocks = BTreeMap::new();
        blocks.insert((-2, 0), 1);
        blocks.insert((-1, 0), 1);
        blocks.insert((0, 0), 1);
        let mut diff = BTreeMap::new();
        diff.insert((-1, 0), SparseMatrix::from_dense(&[vec![int(1)]]));
        ChainComplex::new(q(), blocks, diff, DegreeRange::ALL, WeightSet::All).unwrap()
    }

    #[test]
    fn zero_and_point() {
        let z = ChainComplex::zero(q());
        let t = homology_dims(&z, -3, 3, &WeightRequest::Present).unwrap();
        assert!(t.by_degree().values().all(|&d| d == 0));
        let k = ChainComplex::concentrated(q(), 0, 0, 1);
        let t = homology_dims(&k, -2, 2, &WeightRequest::Present).unwrap();
        assert_eq!(t.descending(), vec![0, 0, 1, 0, 0]);
    }

    #[test]
    fn sample_homology() {
        let t = homology_dims(&sample(), -2, 0, &WeightRequest::Present).unwrap();
        assert_eq!(t.descending(), vec![0, 0, 1]);
        assert!(check_differential(&sample()).is_ok());
    }

    #[test]
    fn window_is_enforced() {
        let c = sample().restrict_certification(DegreeRange::at_least(-2), WeightSet::All);
        assert!(homology_dims(&c, -2, 0, &WeightRequest::Present).is_err());
        assert!(homology_dims(&c, -1, 0, &WeightRequest::Present).is_ok());
    }

    #[test]
    fn injected_fault_is_caught() {
        let mut blocks = BTreeMap::new();
        for k in -2..=0 {
            blocks.insert((k, 0), 1);
        }
        let mut diff = BTreeMap::new();
        diff.insert((-2, 0), SparseMatrix::from_dense(&[vec![int(1)]]));
        diff.insert((-1, 0), SparseMatrix::from_dense(&[vec![int(1)]]));
        let c = ChainComplex::new(q(), blocks, diff, DegreeRange::ALL, WeightSet::All).unwrap();
        let w = check_differential(&c).unwrap_err();
        assert_eq!((w.degree, w.weight, w.index), (-2, 0, 0));
    }

    #[test]
    fn identity_map_commutes() {
        assert!(ChainMap::identity(&sample()).check().is_ok());
    }
}
