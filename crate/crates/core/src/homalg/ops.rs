//! Tensor products, hom complexes and mapping cones.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use super::complex::{Block, ChainComplex, ChainMap, DegreeRange, WeightSet};
use super::field::{sign, Scalar};
use super::matrix::SparseMatrix;
use crate::error::{Error, Result};

fn max_degree(c: &ChainComplex) -> Option<i64> {
    c.blocks().keys().map(|(k, _)| *k).max()
}

fn min_degree(c: &ChainComplex) -> Option<i64> {
    c.blocks().keys().map(|(k, _)| *k).min()
}

fn same_coefficients(c: &ChainComplex, d: &ChainComplex) -> Result<()> {
    if c.coefficients() != d.coefficients() {
        return Err(Error::CoefficientMismatch(
            c.coefficients().to_string(),
            d.coefficients().to_string(),
        ));
    }
    Ok(())
}

const EMPTY: DegreeRange = DegreeRange { lo: Some(1), hi: Some(0) };

/// Degrees in which `C ⊗ D` is complete, given which degrees of each factor
/// are complete and where each factor is known to vanish.
fn tensor_range(c: &ChainComplex, d: &ChainComplex) -> DegreeRange {
    let mut out = DegreeRange::ALL;
    for (x, y) in [(c, d), (d, c)] {
        let xr = x.complete_range();
        let yr = y.complete_range();
        if let Some(a) = xr.lo {
            // x unknown below a: need y known to vanish above k - a
            if yr.hi.is_some() {
                return EMPTY;
            }
            let mut lo = i64::MIN;
            if let Some(c0) = yr.lo {
                lo = lo.max(a + c0 - 1);
            }
            if let Some(m) = max_degree(y) {
                lo = lo.max(a + m);
            }
            if lo > i64::MIN {
                out = out.intersect(&DegreeRange::at_least(lo));
            }
        }
        if let Some(b) = xr.hi {
            if yr.lo.is_some() {
                return EMPTY;
            }
            let mut hi = i64::MAX;
            if let Some(d0) = yr.hi {
                hi = hi.min(b + d0 + 1);
            }
            if let Some(m) = min_degree(y) {
                hi = hi.min(b + m);
            }
            if hi < i64::MAX {
                out = out.intersect(&DegreeRange::at_most(hi));
            }
        }
    }
    out
}

fn combined_weights(c: &ChainComplex, d: &ChainComplex) -> Result<WeightSet> {
    let ws = c.weights().intersect(&d.weights());
    if ws != WeightSet::All {
        let negative = |x: &ChainComplex| x.blocks().keys().any(|(_, w)| *w < 0);
        if negative(c) || negative(d) {
            return Err(Error::NonFinite(
                "weight-truncated factor combined with negative weights".into(),
            ));
        }
    }
    Ok(ws)
}

/// `C ⊗ D` with differential `d⊗1 + (−1)^{|c|} 1⊗d`.
///
/// The basis of each block lists the pairs `(c_i, d_j)` grouped by the
/// factor blocks in lexicographic order, `j` varying fastest.
pub fn tensor(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex> {
    same_coefficients(c, d)?;
    let weights = combined_weights(c, d)?;
    let complete = tensor_range(c, d);

    let mut layout: BTreeMap<Block, usize> = BTreeMap::new();
    let mut offset: HashMap<(Block, Block), usize> = HashMap::new();
    for (&cb, &cd) in c.blocks() {
        for (&db, &dd) in d.blocks() {
            let out = (cb.0 + db.0, cb.1 + db.1);
            let next = layout.entry(out).or_insert(0);
            offset.insert((cb, db), *next);
            *next += cd * dd;
        }
    }

    let mut diff = BTreeMap::new();
    for (&out, &dim) in &layout {
        let target = (out.0 + 1, out.1);
        let Some(&tdim) = layout.get(&target) else { continue };
        let mut cols = vec![Vec::new(); dim];
        for (&cb, &cd) in c.blocks() {
            for (&db, &dd) in d.blocks() {
                if (cb.0 + db.0, cb.1 + db.1) != out {
                    continue;
                }
                let off = offset[&(cb, db)];
                let dc = c.differential_ref(cb.0, cb.1);
                let ddm = d.differential_ref(db.0, db.1);
                let o_c = offset.get(&((cb.0 + 1, cb.1), db)).copied();
                let db_next = (db.0 + 1, db.1);
                let o_d = offset.get(&(cb, db_next)).copied();
                let dd_next = d.dim(db_next.0, db_next.1);
                let s = sign(cb.0.rem_euclid(2) == 1);
                for i in 0..cd {
                    for j in 0..dd {
                        let col = &mut cols[off + i * dd + j];
                        if let (Some(m), Some(o)) = (dc, o_c) {
                            for (r, x) in m.column(i) {
                                col.push((o + r * dd + j, x.clone()));
                            }
                        }
                        if let (Some(m), Some(o)) = (ddm, o_d) {
                            for (r, x) in m.column(j) {
                                col.push((o + i * dd_next + r, &s * x));
                            }
                        }
                    }
                }
            }
        }
        let m = SparseMatrix::from_columns(tdim, cols);
        if !m.is_zero() {
            diff.insert(out, m);
        }
    }
    ChainComplex::new(c.coefficients(), layout, diff, complete, weights)
}

/// `Hom(C, D)` with `(δf) = d_D f − (−1)^n f d_C` on degree-`n` maps.
///
/// The basis element `(i, j)` of `Hom(C_p, D_{p+n})` sends the `i`-th basis
/// vector of `C_p` to the `j`-th of `D_{p+n}`; pairs are ordered with `j`
/// fastest. Weights subtract.
pub fn hom_complex(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex> {
    same_coefficients(c, d)?;
    if c.complete_range() != DegreeRange::ALL {
        return Err(Error::NonFinite(format!(
            "source of hom is only complete on {}",
            c.complete_range()
        )));
    }
    if c.weights() != WeightSet::All || d.weights() != WeightSet::All {
        return Err(Error::NonFinite("hom between weight-truncated complexes".into()));
    }
    let dr = d.complete_range();
    let complete = match (min_degree(c), max_degree(c)) {
        (Some(cmin), Some(cmax)) => DegreeRange {
            lo: dr.lo.map(|x| x - cmin),
            hi: dr.hi.map(|x| x - cmax),
        },
        _ => DegreeRange::ALL,
    };

    let mut layout: BTreeMap<Block, usize> = BTreeMap::new();
    let mut offset: HashMap<(Block, Block), usize> = HashMap::new();
    for (&cb, &cd) in c.blocks() {
        for (&db, &dd) in d.blocks() {
            let out = (db.0 - cb.0, db.1 - cb.1);
            let next = layout.entry(out).or_insert(0);
            offset.insert((cb, db), *next);
            *next += cd * dd;
        }
    }
    // rows of d_C into each block, i.e. transposed differentials keyed by
    // their target block
    let mut dc_rows: HashMap<Block, SparseMatrix> = HashMap::new();
    for &(k, w) in c.blocks().keys() {
        if let Some(m) = c.differential_ref(k - 1, w) {
            dc_rows.insert((k, w), m.transpose());
        }
    }

    let mut diff = BTreeMap::new();
    for (&out, &dim) in &layout {
        let n = out.0;
        let target = (n + 1, out.1);
        let Some(&tdim) = layout.get(&target) else { continue };
        let s = -sign(n.rem_euclid(2) == 1);
        let mut cols = vec![Vec::new(); dim];
        for (&cb, &cd) in c.blocks() {
            for (&db, &dd) in d.blocks() {
                if (db.0 - cb.0, db.1 - cb.1) != out {
                    continue;
                }
                let off = offset[&(cb, db)];
                let db_next = (db.0 + 1, db.1);
                let o_d = offset.get(&(cb, db_next)).copied();
                let dd_next = d.dim(db_next.0, db_next.1);
                let ddm = d.differential_ref(db.0, db.1);
                let cb_prev = (cb.0 - 1, cb.1);
                let o_c = offset.get(&(cb_prev, db)).copied();
                let rows = dc_rows.get(&cb);
                for i in 0..cd {
                    for j in 0..dd {
                        let col = &mut cols[off + i * dd + j];
                        if let (Some(m), Some(o)) = (ddm, o_d) {
                            for (r, x) in m.column(j) {
                                col.push((o + i * dd_next + r, x.clone()));
                            }
                        }
                        if let (Some(t), Some(o)) = (rows, o_c) {
                            for (l, x) in t.column(i) {
                                col.push((o + l * dd + j, &s * x));
                            }
                        }
                    }
                }
            }
        }
        let m = SparseMatrix::from_columns(tdim, cols);
        if !m.is_zero() {
            diff.insert(out, m);
        }
    }
    ChainComplex::new(c.coefficients(), layout, diff, complete, WeightSet::All)
}

/// Mapping cone: `cone^k = C^{k+1} ⊕ D^k`, `d(c, e) = (−d c, f c + d e)`.
pub fn cone(f: &ChainMap) -> Result<ChainComplex> {
    let (c, d) = (&f.source, &f.target);
    same_coefficients(c, d)?;
    let mut layout: BTreeMap<Block, usize> = BTreeMap::new();
    for (&(k, w), &n) in c.blocks() {
        *layout.entry((k - 1, w)).or_insert(0) += n;
    }
    for (&b, &n) in d.blocks() {
        *layout.entry(b).or_insert(0) += n;
    }
    let minus_one = -Scalar::one();
    let mut diff = BTreeMap::new();
    for (&(k, w), &dim) in &layout {
        let Some(&tdim) = layout.get(&(k + 1, w)) else { continue };
        let c_here = c.dim(k + 1, w);
        let c_next = c.dim(k + 2, w);
        let mut cols = vec![Vec::new(); dim];
        let dc = c.differential(k + 1, w);
        let fm = f.block(k + 1, w);
        for (i, col) in cols.iter_mut().enumerate().take(c_here) {
            for (r, x) in dc.column(i) {
                col.push((*r, x * &minus_one));
            }
            for (r, x) in fm.column(i) {
                col.push((c_next + r, x.clone()));
            }
        }
        let dd = d.differential(k, w);
        for j in 0..d.dim(k, w) {
            for (r, x) in dd.column(j) {
                cols[c_here + j].push((c_next + r, x.clone()));
            }
        }
        let m = SparseMatrix::from_columns(tdim, cols);
        if !m.is_zero() {
            diff.insert((k, w), m);
        }
    }
    let complete = c.complete_range().shift(-1).intersect(&d.complete_range());
    let weights = c.weights().intersect(&d.weights());
    ChainComplex::new(c.coefficients(), layout, diff, complete, weights)
}

/// Direct sum of complexes, blocks concatenated in argument order.
pub fn direct_sum(parts: &[&ChainComplex]) -> Result<ChainComplex> {
    let Some(first) = parts.first() else {
        return Err(Error::InvalidInput("empty direct sum".into()));
    };
    for p in parts {
        same_coefficients(first, p)?;
    }
    let mut layout: BTreeMap<Block, usize> = BTreeMap::new();
    let mut offsets: Vec<HashMap<Block, usize>> = Vec::new();
    for p in parts {
        let mut off = HashMap::new();
        for (&b, &n) in p.blocks() {
            let e = layout.entry(b).or_insert(0);
            off.insert(b, *e);
            *e += n;
        }
        offsets.push(off);
    }
    let mut diff = BTreeMap::new();
    for (&(k, w), &dim) in &layout {
        let Some(&tdim) = layout.get(&(k + 1, w)) else { continue };
        let mut cols = vec![Vec::new(); dim];
        for (p, off) in parts.iter().zip(&offsets) {
            let Some(m) = p.differential_ref(k, w) else { continue };
            let (o_src, o_tgt) = (off[&(k, w)], off[&(k + 1, w)]);
            for j in 0..m.ncols() {
                for (r, x) in m.column(j) {
                    cols[o_src + j].push((o_tgt + r, x.clone()));
                }
            }
        }
        diff.insert((k, w), SparseMatrix::from_columns(tdim, cols));
    }
    let complete = parts
        .iter()
        .fold(DegreeRange::ALL, |acc, p| acc.intersect(&p.complete_range()));
    let weights = parts.iter().fold(WeightSet::All, |acc, p| acc.intersect(&p.weights()));
    ChainComplex::new(first.coefficients(), layout, diff, complete, weights)
}

/// `(f, g): C → D ⊕ E` for maps with a common source.
pub fn pair_into_sum(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    let target = direct_sum(&[&f.target, &g.target])?;
    let mut blocks = BTreeMap::new();
    for &(k, w) in f.source.blocks().keys() {
        let a = f.block(k, w);
        let b = g.block(k, w);
        let shift = f.target.dim(k, w);
        let cols = (0..a.ncols())
            .map(|j| {
                let mut col = a.column(j).to_vec();
                col.extend(b.column(j).iter().map(|(r, x)| (shift + r, x.clone())));
                col
            })
            .collect();
        blocks.insert((k, w), SparseMatrix::from_columns(target.dim(k, w), cols));
    }
    ChainMap::new(f.source.clone(), target, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::complex::{check_differential, homology_dims, WeightRequest};
    use crate::homalg::field::{int, Coefficients};

    fn q() -> Coefficients {
        Coefficients::Rational
    }

    fn k_at(deg: i64) -> ChainComplex {
        ChainComplex::concentrated(q(), deg, 0, 1)
    }

    /// Two-term complex k^2 --[1 1]--> k in degrees -1, 0.
    fn two_term() -> ChainComplex {
        let mut blocks = BTreeMap::new();
        blocks.insert((-1, 0), 2);
        blocks.insert((0, 0), 1);
        let mut diff = BTreeMap::new();
        diff.insert((-1, 0), SparseMatrix::from_dense(&[vec![int(1), int(1)]]));
        ChainComplex::new(q(), blocks, diff, DegreeRange::ALL, WeightSet::All).unwrap()
    }

    #[test]
    fn tensor_unit_and_degrees() {
        let c = two_term();
        let t = tensor(&c, &k_at(0)).unwrap();
        assert_eq!(t, c);
        let s = tensor(&k_at(-1), &k_at(-1)).unwrap();
        assert_eq!(s.blocks().iter().collect::<Vec<_>>(), vec![(&(-2, 0), &1)]);
    }

    #[test]
    fn tensor_squares_to_zero() {
        let t = tensor(&two_term(), &two_term()).unwrap();
        check_differential(&t).unwrap();
        let h = homology_dims(&t, -3, 1, &WeightRequest::Present).unwrap();
        assert_eq!(h.descending(), vec![0, 0, 0, 1, 0]);
    }

    #[test]
    fn hom_dualizes() {
        let c = two_term();
        let dual = hom_complex(&c, &k_at(0)).unwrap();
        check_differential(&dual).unwrap();
        let h = homology_dims(&c, -2, 1, &WeightRequest::Present).unwrap();
        let hd = homology_dims(&dual, -1, 2, &WeightRequest::Present).unwrap();
        let mut rev = hd.descending();
        rev.reverse();
        assert_eq!(h.descending(), rev);
        let same = hom_complex(&k_at(0), &c).unwrap();
        assert_eq!(same, c);
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = two_term();
        let cn = cone(&ChainMap::identity(&c)).unwrap();
        check_differential(&cn).unwrap();
        let h = homology_dims(&cn, -3, 1, &WeightRequest::Present).unwrap();
        assert!(h.descending().iter().all(|&d| d == 0));
        let z = ChainMap::zero(ChainComplex::zero(q()), c.clone());
        assert_eq!(cone(&z).unwrap(), c);
    }
}
