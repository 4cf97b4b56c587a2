use std::collections::BTreeMap;

use num_traits::Zero;

use super::field::Scalar;

/// Column-major sparse matrix with exact entries.
///
/// Column `j` holds the image of the `j`-th source basis vector as a list of
/// `(row, value)` pairs sorted by row, without zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, Scalar)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let cols = (0..n).map(|i| vec![(i, Scalar::from_integer(1.into()))]).collect();
        SparseMatrix { rows: n, cols }
    }

    /// Builds a matrix from columns given as arbitrary `(row, value)` lists;
    /// duplicates are summed and zeros dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, Scalar)>>) -> Self {
        let cols = columns.into_iter().map(normalize_column).collect::<Vec<_>>();
        debug_assert!(cols.iter().flatten().all(|(r, _)| *r < rows));
        SparseMatrix { rows, cols }
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut cols = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    cols[j].push((i, x.clone()));
                }
            }
        }
        SparseMatrix { rows: nrows, cols }
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.ncols()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, x) in col {
                out[*i][j] = x.clone();
            }
        }
        out
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, Scalar)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vec<(usize, Scalar)>] {
        &self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.cols[j]
            .binary_search_by_key(&i, |(r, _)| *r)
            .map(|k| self.cols[j][k].1.clone())
            .unwrap_or_else(|_| Scalar::zero())
    }

    /// Applies the matrix to a sparse vector.
    pub fn apply(&self, v: &[(usize, Scalar)]) -> Vec<(usize, Scalar)> {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (j, x) in v {
            for (i, y) in &self.cols[*j] {
                *acc.entry(*i).or_insert_with(Scalar::zero) += x * y;
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), rhs.nrows(), "dimension mismatch in compose");
        let cols = rhs.cols.iter().map(|c| self.apply(c)).collect();
        SparseMatrix { rows: self.rows, cols }
    }

    pub fn add(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.ncols()), (rhs.rows, rhs.ncols()));
        let cols = self
            .cols
            .iter()
            .zip(&rhs.cols)
            .map(|(a, b)| normalize_column(a.iter().chain(b).cloned().collect()))
            .collect();
        SparseMatrix { rows: self.rows, cols }
    }

    pub fn scale(&self, c: &Scalar) -> SparseMatrix {
        if c.is_zero() {
            return SparseMatrix::zero(self.rows, self.ncols());
        }
        let cols = self
            .cols
            .iter()
            .map(|col| col.iter().map(|(i, x)| (*i, x * c)).collect())
            .collect();
        SparseMatrix { rows: self.rows, cols }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols = vec![Vec::new(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, x) in col {
                cols[*i].push((j, x.clone()));
            }
        }
        SparseMatrix { rows: self.ncols(), cols }
    }

    /// Reorders columns: column `k` of the result is column `perm[k]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> SparseMatrix {
        let cols = perm.iter().map(|&j| self.cols[j].clone()).collect();
        SparseMatrix { rows: self.rows, cols }
    }

    /// Relabels rows: row `i` moves to `perm[i]`.
    pub fn permute_rows(&self, perm: &[usize]) -> SparseMatrix {
        let cols = self
            .cols
            .iter()
            .map(|col| normalize_column(col.iter().map(|(i, x)| (perm[*i], x.clone())).collect()))
            .collect();
        SparseMatrix { rows: self.rows, cols }
    }

}

pub(crate) fn normalize_column(mut col: Vec<(usize, Scalar)>) -> Vec<(usize, Scalar)> {
    col.sort_by_key(|(i, _)| *i);
    let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(col.len());
    for (i, x) in col {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}
