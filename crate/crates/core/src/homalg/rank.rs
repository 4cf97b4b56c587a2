//! Exact rank computation.
//!
//! Over ℚ the columns are cleared of denominators and reduced fraction-free
//! over ℤ: sparse column reduction with content removal for large matrices,
//! dense Bareiss elimination below [`DENSE_THRESHOLD`]. Over 𝔽_p ordinary
//! sparse Gaussian elimination is used.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{inv_mod, mul_mod, primitive_integers, reduce_mod, Coefficients, Scalar};
use super::matrix::SparseMatrix;
use crate::error::Result;

/// Matrices with both dimensions at most this size use dense elimination.
pub const DENSE_THRESHOLD: usize = 64;

/// Pivot order used by the sparse eliminator. Ranks do not depend on it;
/// it exists so tests can exercise that claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotStrategy {
    #[default]
    LowestRow,
    HighestRow,
}

pub fn rank(m: &SparseMatrix, coeffs: Coefficients) -> Result<usize> {
    rank_with(m, coeffs, PivotStrategy::default(), DENSE_THRESHOLD)
}

pub fn rank_with(
    m: &SparseMatrix,
    coeffs: Coefficients,
    strategy: PivotStrategy,
    dense_threshold: usize,
) -> Result<usize> {
    if m.is_zero() {
        return Ok(0);
    }
    let dense = m.nrows() <= dense_threshold && m.ncols() <= dense_threshold;
    match coeffs {
        Coefficients::Rational => {
            let cols = integer_columns(m, strategy);
            if dense {
                Ok(bareiss_rank(m.nrows(), &cols))
            } else {
                Ok(sparse_rank_z(cols))
            }
        }
        Coefficients::PrimeField { p } => {
            let mut cols = Vec::with_capacity(m.ncols());
            for col in m.columns() {
                let mut v = Vec::with_capacity(col.len());
                for (i, x) in col {
                    let r = reduce_mod(x, p)?;
                    if r != 0 {
                        v.push((row_key(*i, m.nrows(), strategy), r));
                    }
                }
                v.sort_by_key(|(i, _)| *i);
                cols.push(v);
            }
            Ok(sparse_rank_p(cols, p))
        }
    }
}

fn row_key(i: usize, nrows: usize, strategy: PivotStrategy) -> usize {
    match strategy {
        PivotStrategy::LowestRow => i,
        PivotStrategy::HighestRow => nrows - 1 - i,
    }
}

fn integer_columns(m: &SparseMatrix, strategy: PivotStrategy) -> Vec<Vec<(usize, BigInt)>> {
    m.columns()
        .iter()
        .filter(|c| !c.is_empty())
        .map(|col| {
            let vals: Vec<Scalar> = col.iter().map(|(_, x)| x.clone()).collect();
            let ints = primitive_integers(&vals);
            let mut v: Vec<(usize, BigInt)> = col
                .iter()
                .zip(ints)
                .map(|((i, _), x)| (row_key(*i, m.nrows(), strategy), x))
                .collect();
            v.sort_by_key(|(i, _)| *i);
            v
        })
        .collect()
}

fn sparse_rank_z(cols: Vec<Vec<(usize, BigInt)>>) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, BigInt)>> = HashMap::new();
    for mut v in cols {
        loop {
            let Some((lead, b)) = v.first().cloned() else { break };
            let Some(p) = pivots.get(&lead) else {
                pivots.insert(lead, v);
                break;
            };
            let a = &p[0].1;
            let g = a.gcd(&b);
            let fa = a / &g;
            let fb = &b / &g;
            v = combine_z(&fa, &v, &fb, p);
            make_primitive(&mut v);
        }
    }
    pivots.len()
}

/// `fa·v − fb·p`, dropping zeros.
fn combine_z(
    fa: &BigInt,
    v: &[(usize, BigInt)],
    fb: &BigInt,
    p: &[(usize, BigInt)],
) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let take_v = j >= p.len() || (i < v.len() && v[i].0 < p[j].0);
        let take_p = i >= v.len() || (j < p.len() && p[j].0 < v[i].0);
        if take_v {
            out.push((v[i].0, fa * &v[i].1));
            i += 1;
        } else if take_p {
            out.push((p[j].0, -(fb * &p[j].1)));
            j += 1;
        } else {
            let x = fa * &v[i].1 - fb * &p[j].1;
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn make_primitive(v: &mut [(usize, BigInt)]) {
    let g = v.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for (_, x) in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Fraction-free Bareiss elimination on the dense integer matrix whose
/// columns are given sparsely.
fn bareiss_rank(nrows: usize, cols: &[Vec<(usize, BigInt)>]) -> usize {
    let ncols = cols.len();
    let mut a = vec![vec![BigInt::zero(); ncols]; nrows];
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col {
            a[*i][j] = x.clone();
        }
    }
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(r) = (rank..nrows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, r);
        for i in rank + 1..nrows {
            for j in c + 1..ncols {
                let x = &a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j];
                a[i][j] = x / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].abs();
        if a[rank][c].is_negative() {
            // keep the divisor positive; flipping a row does not change rank
            for j in c..ncols {
                a[rank][j] = -&a[rank][j];
            }
        }
        rank += 1;
    }
    rank
}

fn sparse_rank_p(cols: Vec<Vec<(usize, u64)>>, p: u64) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for mut v in cols {
        loop {
            let Some(&(lead, b)) = v.first() else { break };
            let Some(piv) = pivots.get(&lead) else {
                // normalize to a monic pivot
                let inv = inv_mod(b, p);
                for (_, x) in v.iter_mut() {
                    *x = mul_mod(*x, inv, p);
                }
                pivots.insert(lead, v);
                break;
            };
            v = axpy_p(&v, b, piv, p);
        }
    }
    pivots.len()
}

/// `v − c·piv` over 𝔽_p.
fn axpy_p(v: &[(usize, u64)], c: u64, piv: &[(usize, u64)], p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(v.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    let neg = |x: u64| (p - mul_mod(c, x, p)) % p;
    while i < v.len() || j < piv.len() {
        if j >= piv.len() || (i < v.len() && v[i].0 < piv[j].0) {
            out.push(v[i]);
            i += 1;
        } else if i >= v.len() || piv[j].0 < v[i].0 {
            let x = neg(piv[j].1);
            if x != 0 {
                out.push((piv[j].0, x));
            }
            j += 1;
        } else {
            let x = (v[i].1 + neg(piv[j].1)) % p;
            if x != 0 {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced row echelon data for the span of a set of vectors in `k^n`.
///
/// Used to pass to quotients `k^n / span`: the non-pivot coordinates index a
/// basis of the quotient, and [`Echelon::project`] writes any vector in that
/// basis.
#[derive(Debug, Clone)]
pub struct Echelon {
    dim: usize,
    /// pivot coordinate -> reduced row (pivot entry 1, zero at other pivots)
    rows: Vec<(usize, Vec<(usize, Scalar)>)>,
    pivot_of: HashMap<usize, usize>,
    complement: Vec<usize>,
    complement_index: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(dim: usize, vectors: &[Vec<(usize, Scalar)>]) -> Self {
        let mut rows: Vec<(usize, Vec<(usize, Scalar)>)> = Vec::new();
        let mut pivot_of: HashMap<usize, usize> = HashMap::new();
        for v in vectors {
            let mut v = v.clone();
            v.sort_by_key(|(i, _)| *i);
            v = reduce_against(&v, &rows, &pivot_of);
            let Some((lead, lc)) = v.first().cloned() else { continue };
            let inv = Scalar::one() / lc;
            let v: Vec<(usize, Scalar)> = v.into_iter().map(|(i, x)| (i, x * &inv)).collect();
            // back-substitute into existing rows
            for (_, row) in rows.iter_mut() {
                if let Ok(k) = row.binary_search_by_key(&lead, |(i, _)| *i) {
                    let c = row[k].1.clone();
                    *row = sub_scaled(row, &c, &v);
                }
            }
            pivot_of.insert(lead, rows.len());
            rows.push((lead, v));
        }
        let complement: Vec<usize> = (0..dim).filter(|i| !pivot_of.contains_key(i)).collect();
        let complement_index = complement.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        Echelon { dim, rows, pivot_of, complement, complement_index }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of the ambient space whose classes form a basis of the
    /// quotient.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// Class of `v` in the quotient, in the complement basis.
    pub fn project(&self, v: &[(usize, Scalar)]) -> Vec<(usize, Scalar)> {
        let mut v = v.to_vec();
        v.sort_by_key(|(i, _)| *i);
        let r = reduce_against(&v, &self.rows, &self.pivot_of);
        r.into_iter()
            .map(|(i, x)| (self.complement_index[&i], x))
            .collect()
    }

    /// The reduced rows, keyed by pivot coordinate.
    pub fn reduced_rows(&self) -> Vec<(usize, Vec<(usize, Scalar)>)> {
        self.rows.clone()
    }

    /// `v` minus its component along the row space, in ambient coordinates.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> Vec<(usize, Scalar)> {
        let mut v = v.to_vec();
        v.sort_by_key(|(i, _)| *i);
        reduce_against(&v, &self.rows, &self.pivot_of)
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        let mut v = v.to_vec();
        v.sort_by_key(|(i, _)| *i);
        reduce_against(&v, &self.rows, &self.pivot_of).is_empty()
    }
}

fn reduce_against(
    v: &[(usize, Scalar)],
    rows: &[(usize, Vec<(usize, Scalar)>)],
    pivot_of: &HashMap<usize, usize>,
) -> Vec<(usize, Scalar)> {
    let mut v: Vec<(usize, Scalar)> = v.iter().filter(|(_, x)| !x.is_zero()).cloned().collect();
    loop {
        let hit = v.iter().find_map(|(i, x)| pivot_of.get(i).map(|&r| (r, x.clone())));
        match hit {
            Some((r, c)) => v = sub_scaled(&v, &c, &rows[r].1),
            None => return v,
        }
    }
}

fn sub_scaled(v: &[(usize, Scalar)], c: &Scalar, w: &[(usize, Scalar)]) -> Vec<(usize, Scalar)> {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        if j >= w.len() || (i < v.len() && v[i].0 < w[j].0) {
            out.push(v[i].clone());
            i += 1;
        } else if i >= v.len() || w[j].0 < v[i].0 {
            out.push((w[j].0, -(c * &w[j].1)));
            j += 1;
        } else {
            let x = &v[i].1 - c * &w[j].1;
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::field::{int, parse_scalar};

    fn m(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(
            &rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn small_ranks() {
        let q = Coefficients::Rational;
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]]), q).unwrap(), 1);
        assert_eq!(rank(&m(&[&[1, 2], &[3, 4]]), q).unwrap(), 2);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]]), q).unwrap(), 0);
        // singular mod 2 only
        let f2 = Coefficients::PrimeField { p: 2 };
        assert_eq!(rank(&m(&[&[1, 1], &[1, -1]]), f2).unwrap(), 1);
        assert_eq!(rank(&m(&[&[1, 1], &[1, -1]]), q).unwrap(), 2);
    }

    #[test]
    fn sparse_and_dense_agree() {
        let a = m(&[&[2, 4, 6, 0], &[1, 3, 0, 5], &[3, 7, 6, 5], &[0, 0, 0, 1]]);
        for t in [0, 64] {
            for s in [PivotStrategy::LowestRow, PivotStrategy::HighestRow] {
                assert_eq!(rank_with(&a, Coefficients::Rational, s, t).unwrap(), 3);
            }
        }
    }

    #[test]
    fn rational_entries() {
        let a = SparseMatrix::from_dense(&[
            vec![parse_scalar("1/2").unwrap(), parse_scalar("1/3").unwrap()],
            vec![int(3), int(2)],
        ]);
        assert_eq!(rank(&a, Coefficients::Rational).unwrap(), 1);
    }

    #[test]
    fn echelon_quotient() {
        // span{e0 + e1} in k^3: quotient has basis [e1], [e2]; e0 ≡ -e1
        let e = Echelon::new(3, &[vec![(0, int(1)), (1, int(1))]]);
        assert_eq!(e.complement(), &[1, 2]);
        assert_eq!(e.project(&[(0, int(1))]), vec![(0, int(-1))]);
        assert!(e.contains(&[(0, int(2)), (1, int(2))]));
    }
}
