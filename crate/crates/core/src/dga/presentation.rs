//! JSON presentations of algebras.
//!
//! ```json
//! {
//!   "name": "k[x]/x^2",
//!   "basis": [{"name": "1", "degree": 0, "weight": 0}, {"name": "x", "degree": 0, "weight": 1}],
//!   "unit": "1",
//!   "products": [],
//!   "differential": {},
//!   "augmentation": {"1": "1"},
//!   "commutative": true,
//!   "weight_graded": true
//! }
//! ```
//!
//! Products involving the unit are implied; unlisted products are zero.
//! Linear combinations map basis names to rational coefficient strings.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::algebra::{AlgebraData, BasisElement, DGAlgebra, Vector};
use crate::error::{Error, Result};
use crate::homalg::field::{format_scalar, parse_scalar, Scalar};

pub type Combination = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub result: Combination,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraPresentation {
    pub name: String,
    pub basis: Vec<BasisElement>,
    pub unit: String,
    #[serde(default)]
    pub products: Vec<ProductEntry>,
    #[serde(default)]
    pub differential: BTreeMap<String, Combination>,
    #[serde(default)]
    pub augmentation: Option<Combination>,
    #[serde(default)]
    pub commutative: bool,
    #[serde(default)]
    pub weight_graded: bool,
}

impl AlgebraPresentation {
    pub fn build(&self) -> Result<DGAlgebra> {
        let index: BTreeMap<&str, usize> =
            self.basis.iter().enumerate().map(|(i, b)| (b.name.as_str(), i)).collect();
        if index.len() != self.basis.len() {
            return Err(Error::InvalidInput(format!("{}: duplicate basis names", self.name)));
        }
        let lookup = |s: &str| -> Result<usize> {
            index.get(s).copied().ok_or_else(|| Error::InvalidInput(format!("unknown basis element {s:?}")))
        };
        let vector = |c: &Combination| -> Result<Vector> {
            let mut v = Vec::with_capacity(c.len());
            for (name, x) in c {
                v.push((lookup(name)?, parse_scalar(x)?));
            }
            v.sort_by_key(|e| e.0);
            Ok(v)
        };
        let n = self.basis.len();
        let unit = lookup(&self.unit)?;
        let mut mult = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            mult[unit][i] = vec![(i, Scalar::one())];
            mult[i][unit] = vec![(i, Scalar::one())];
        }
        for p in &self.products {
            let (i, j) = (lookup(&p.left)?, lookup(&p.right)?);
            if i == unit || j == unit {
                return Err(Error::InvalidInput("products with the unit are implied".into()));
            }
            mult[i][j] = vector(&p.result)?;
        }
        let mut diff = vec![Vec::new(); n];
        for (x, v) in &self.differential {
            diff[lookup(x)?] = vector(v)?;
        }
        let augmentation = match &self.augmentation {
            None => None,
            Some(c) => {
                let mut eps = vec![Scalar::zero(); n];
                for (i, x) in vector(c)? {
                    eps[i] = x;
                }
                Some(eps)
            }
        };
        DGAlgebra::new(AlgebraData {
            name: self.name.clone(),
            basis: self.basis.clone(),
            mult,
            diff,
            unit,
            commutative: self.commutative,
            augmentation,
            weight_graded: self.weight_graded,
            weight_bound: None,
            generators: None,
        })
    }

    /// Presentation of a finite algebra (inverse of [`build`](Self::build)).
    pub fn of(a: &DGAlgebra) -> Self {
        let name = |i: usize| a.basis()[i].name.clone();
        let combo = |v: &[(usize, Scalar)]| -> Combination {
            v.iter().map(|(i, x)| (name(*i), format_scalar(x))).collect()
        };
        let mut products = Vec::new();
        for i in a.nonunit() {
            for j in a.nonunit() {
                if !a.mul(i, j).is_empty() {
                    products.push(ProductEntry { left: name(i), right: name(j), result: combo(a.mul(i, j)) });
                }
            }
        }
        AlgebraPresentation {
            name: a.name().to_string(),
            basis: a.basis().to_vec(),
            unit: name(a.unit()),
            products,
            differential: (0..a.dim()).filter(|&i| !a.d(i).is_empty()).map(|i| (name(i), combo(a.d(i)))).collect(),
            augmentation: a.augmentation().map(|eps| {
                eps.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (name(i), format_scalar(x)))
                    .collect()
            }),
            commutative: a.is_commutative(),
            weight_graded: a.is_weight_graded(),
        }
    }
}
