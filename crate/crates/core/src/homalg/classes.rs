//! Representative cycles and class coordinates in one block.

use num_traits::{One, Zero};

use super::complex::ChainComplex;
use super::field::Scalar;
use super::rank::Echelon;
use crate::error::{Error, Result};

/// A basis of `H^k` in weight `w`, given by representative cycles.
#[derive(Debug, Clone)]
pub struct HomologyBasis {
    degree: i64,
    weight: i64,
    dim: usize,
    reps: Vec<Vec<(usize, Scalar)>>,
    /// Rows of `[boundaries | 0]` and `[reps | e_i]`, reduced.
    solver: Echelon,
}

/// Kernel of a matrix given by its columns, from the reduced row space.
fn kernel(rows: &Echelon, pivots: &[(usize, Vec<(usize, Scalar)>)], n: usize) -> Vec<Vec<(usize, Scalar)>> {
    rows.complement()
        .iter()
        .map(|&j| {
            let mut v = vec![(j, Scalar::one())];
            for (p, row) in pivots {
                if let Some((_, x)) = row.iter().find(|(i, _)| *i == j) {
                    v.push((*p, -x.clone()));
                }
            }
            v.sort_by_key(|(i, _)| *i);
            debug_assert!(v.iter().all(|(i, _)| *i < n));
            v
        })
        .collect()
}

impl HomologyBasis {
    pub fn new(c: &ChainComplex, degree: i64, weight: i64) -> Result<Self> {
        if !c.certified_window().contains(degree) {
            return Err(Error::WindowNotCertified {
                requested: degree.to_string(),
                certified: format!("{:?}", c.certified_window()),
            });
        }
        let n = c.dim(degree, weight);
        let d = c.differential(degree, weight);
        let rows_of_d = d.transpose();
        let row_vecs: Vec<Vec<(usize, Scalar)>> = rows_of_d.columns().to_vec();
        let ech = Echelon::new(n, &row_vecs);
        let cycles = kernel(&ech, &ech.reduced_rows(), n);
        let incoming = c.differential(degree - 1, weight);
        let boundaries: Vec<Vec<(usize, Scalar)>> = incoming.columns().to_vec();
        let mut span = Echelon::new(n, &boundaries);
        let mut reps = Vec::new();
        for z in cycles {
            if !span.contains(&z) {
                let mut vs: Vec<Vec<(usize, Scalar)>> = boundaries.clone();
                vs.extend(reps.iter().cloned());
                vs.push(z.clone());
                span = Echelon::new(n, &vs);
                reps.push(z);
            }
        }
        let mut tagged: Vec<Vec<(usize, Scalar)>> = boundaries;
        for (i, z) in reps.iter().enumerate() {
            let mut v = z.clone();
            v.push((n + i, Scalar::one()));
            tagged.push(v);
        }
        let solver = Echelon::new(n + reps.len(), &tagged);
        Ok(HomologyBasis { degree, weight, dim: n, reps, solver })
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representatives(&self) -> &[Vec<(usize, Scalar)>] {
        &self.reps
    }

    /// Coordinates of the class of the cycle `z` on the representatives;
    /// errors if `z` is not a cycle of this block.
    pub fn coordinates(&self, z: &[(usize, Scalar)]) -> Result<Vec<(usize, Scalar)>> {
        let r = self.solver.reduce(z);
        if r.iter().any(|(i, _)| *i < self.dim) {
            return Err(Error::InvalidInput("not a cycle".into()));
        }
        Ok(r.into_iter().map(|(i, x)| (i - self.dim, -x)).filter(|(_, x)| !x.is_zero()).collect())
    }
}
