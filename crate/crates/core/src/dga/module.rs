use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::algebra::{add_scaled, collect, BasisElement, DGAlgebra, Vector};
use crate::error::{Error, Result};
use crate::homalg::field::{sign, Scalar};

/// A differential graded module over a [`DGAlgebra`], with a left action, a
/// right action, or both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DGModule {
    name: String,
    basis: Vec<BasisElement>,
    /// `left[a][m] = e_a · m_m`.
    left: Option<Vec<Vec<Vector>>>,
    /// `right[m][a] = m_m · e_a`.
    right: Option<Vec<Vec<Vector>>>,
    diff: Vec<Vector>,
    pointed: Option<Vector>,
    /// Highest weight in which the actions are recorded.
    weight_bound: Option<i64>,
}

/// Raw data for [`DGModule::new`].
#[derive(Debug, Clone)]
pub struct ModuleData {
    pub name: String,
    pub basis: Vec<BasisElement>,
    pub left: Option<Vec<Vec<Vector>>>,
    pub right: Option<Vec<Vec<Vector>>>,
    pub diff: Vec<Vector>,
    pub pointed: Option<Vector>,
}

impl DGModule {
    /// Builds a module over `a` and audits the module axioms.
    pub fn new(a: &DGAlgebra, data: ModuleData) -> Result<Self> {
        if data.left.is_none() && data.right.is_none() {
            return Err(Error::InvalidInput(format!("{}: no action given", data.name)));
        }
        let m = DGModule {
            name: data.name,
            basis: data.basis,
            left: data.left,
            right: data.right,
            diff: data.diff,
            pointed: data.pointed,
            weight_bound: a.weight_bound(),
        };
        m.audit(a)?;
        Ok(m)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].degree
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.basis[i].weight
    }

    pub fn has_left(&self) -> bool {
        self.left.is_some()
    }

    pub fn has_right(&self) -> bool {
        self.right.is_some()
    }

    pub fn d(&self, m: usize) -> &[(usize, Scalar)] {
        &self.diff[m]
    }

    /// `e_a · m`.
    pub fn left_act(&self, a: usize, m: usize) -> &[(usize, Scalar)] {
        &self.left.as_ref().expect("module has a left action")[a][m]
    }

    /// `m · e_a`.
    pub fn right_act(&self, m: usize, a: usize) -> &[(usize, Scalar)] {
        &self.right.as_ref().expect("module has a right action")[m][a]
    }

    pub fn pointed_element(&self) -> Option<&[(usize, Scalar)]> {
        self.pointed.as_deref()
    }

    pub fn with_pointed(mut self, p: Vector) -> Self {
        self.pointed = Some(p);
        self
    }

    pub fn max_degree(&self) -> i64 {
        self.basis.iter().map(|b| b.degree).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> i64 {
        self.basis.iter().map(|b| b.degree).min().unwrap_or(0)
    }

    pub fn min_weight(&self) -> i64 {
        self.basis.iter().map(|b| b.weight).min().unwrap_or(0)
    }

    pub fn d_vec(&self, v: &[(usize, Scalar)]) -> Vector {
        let mut acc = BTreeMap::new();
        for (i, x) in v {
            add_scaled(&mut acc, x, &self.diff[*i]);
        }
        collect(acc)
    }

    pub fn right_vec(&self, v: &[(usize, Scalar)], a: &[(usize, Scalar)]) -> Vector {
        let mut acc = BTreeMap::new();
        for (m, x) in v {
            for (b, y) in a {
                add_scaled(&mut acc, &(x * y), self.right_act(*m, *b));
            }
        }
        collect(acc)
    }

    pub fn left_vec(&self, a: &[(usize, Scalar)], v: &[(usize, Scalar)]) -> Vector {
        let mut acc = BTreeMap::new();
        for (b, y) in a {
            for (m, x) in v {
                add_scaled(&mut acc, &(x * y), self.left_act(*b, *m));
            }
        }
        collect(acc)
    }

    /// Whether `m · a = (−1)^{|m||a|} a · m` on all basis pairs (a module over
    /// a commutative algebra viewed as a symmetric bimodule). A module with a
    /// single action counts as symmetric.
    pub fn is_symmetric(&self, a: &DGAlgebra) -> bool {
        let (Some(_), Some(_)) = (&self.left, &self.right) else { return true };
        (0..self.dim()).all(|m| {
            (0..a.dim()).all(|x| {
                let s = sign(self.degree(m) * a.degree(x) % 2 != 0);
                let l: Vector = self.left_act(x, m).iter().map(|(k, c)| (*k, &s * c)).collect();
                l == self.right_act(m, x)
            })
        })
    }

    /// `m · a` if there is a right action, otherwise the symmetric
    /// `(−1)^{|m||a|} a · m`.
    pub fn act_right_or_symmetric(&self, a_deg: i64, m: usize, a: usize) -> Vector {
        match &self.right {
            Some(r) => r[m][a].clone(),
            None => {
                let s = sign(self.degree(m) * a_deg % 2 != 0);
                self.left_act(a, m).iter().map(|(k, c)| (*k, &s * c)).collect()
            }
        }
    }

    /// `a · m` if there is a left action, otherwise the symmetric one.
    pub fn act_left_or_symmetric(&self, a_deg: i64, a: usize, m: usize) -> Vector {
        match &self.left {
            Some(l) => l[a][m].clone(),
            None => {
                let s = sign(self.degree(m) * a_deg % 2 != 0);
                self.right_act(m, a).iter().map(|(k, c)| (*k, &s * c)).collect()
            }
        }
    }

    fn audit(&self, a: &DGAlgebra) -> Result<()> {
        let n = self.dim();
        let bad = |msg: String| Err(Error::AxiomViolation(format!("{}: {msg}", self.name)));
        let within = |w: i64| self.weight_bound.is_none_or(|b| w <= b);
        if self.diff.len() != n {
            return bad("differential has the wrong length".into());
        }
        for (m, v) in self.diff.iter().enumerate() {
            for (k, _) in v {
                if *k >= n || self.degree(*k) != self.degree(m) + 1 {
                    return bad(format!("d({}) has the wrong degree", self.basis[m].name));
                }
            }
        }
        for m in 0..n {
            if !self.d_vec(self.d(m)).is_empty() {
                return bad("d² != 0".into());
            }
        }
        let e = |i: usize| vec![(i, Scalar::one())];
        let check_grading = |v: &Vector, deg: i64, w: i64, what: &str| -> Result<()> {
            for (k, _) in v {
                if *k >= n || self.degree(*k) != deg || (a.is_weight_graded() && self.weight(*k) != w) {
                    return Err(Error::AxiomViolation(format!("{}: {what} breaks grading", self.name)));
                }
            }
            Ok(())
        };
        if let Some(left) = &self.left {
            if left.len() != a.dim() || left.iter().any(|r| r.len() != n) {
                return bad("left action table has the wrong shape".into());
            }
            for x in 0..a.dim() {
                for m in 0..n {
                    if within(a.weight(x) + self.weight(m)) {
                        check_grading(&left[x][m], a.degree(x) + self.degree(m), a.weight(x) + self.weight(m), "left action")?;
                    }
                }
            }
            for m in 0..n {
                if left[a.unit()][m] != e(m) {
                    return bad("unit does not act as identity on the left".into());
                }
                for x in 0..a.dim() {
                    if !within(a.weight(x) + self.weight(m)) {
                        continue;
                    }
                    // d(am) = (da)m + (−1)^{|a|} a dm
                    let lhs = self.d_vec(&left[x][m]);
                    let mut acc = BTreeMap::new();
                    add_scaled(&mut acc, &Scalar::one(), &self.left_vec(a.d(x), &e(m)));
                    add_scaled(&mut acc, &sign(a.degree(x) % 2 != 0), &self.left_vec(&e(x), self.d(m)));
                    if lhs != collect(acc) {
                        return bad("left Leibniz rule fails".into());
                    }
                    for y in 0..a.dim() {
                        if !within(a.weight(x) + a.weight(y) + self.weight(m)) {
                            continue;
                        }
                        let l = self.left_vec(a.mul(x, y), &e(m));
                        let r = self.left_vec(&e(x), &left[y][m]);
                        if l != r {
                            return bad(format!(
                                "left action not associative on ({}, {}, {})",
                                a.basis()[x].name,
                                a.basis()[y].name,
                                self.basis[m].name
                            ));
                        }
                    }
                }
            }
        }
        if let Some(right) = &self.right {
            if right.len() != n || right.iter().any(|r| r.len() != a.dim()) {
                return bad("right action table has the wrong shape".into());
            }
            for m in 0..n {
                if right[m][a.unit()] != e(m) {
                    return bad("unit does not act as identity on the right".into());
                }
                for x in 0..a.dim() {
                    if !within(a.weight(x) + self.weight(m)) {
                        continue;
                    }
                    check_grading(&right[m][x], a.degree(x) + self.degree(m), a.weight(x) + self.weight(m), "right action")?;
                    // d(ma) = (dm)a + (−1)^{|m|} m da
                    let lhs = self.d_vec(&right[m][x]);
                    let mut acc = BTreeMap::new();
                    add_scaled(&mut acc, &Scalar::one(), &self.right_vec(self.d(m), &e(x)));
                    add_scaled(&mut acc, &sign(self.degree(m) % 2 != 0), &self.right_vec(&e(m), a.d(x)));
                    if lhs != collect(acc) {
                        return bad("right Leibniz rule fails".into());
                    }
                    for y in 0..a.dim() {
                        if !within(a.weight(x) + a.weight(y) + self.weight(m)) {
                            continue;
                        }
                        let l = self.right_vec(&right[m][x], &e(y));
                        let r = self.right_vec(&e(m), a.mul(x, y));
                        if l != r {
                            return bad(format!(
                                "right action not associative on ({}, {}, {})",
                                self.basis[m].name,
                                a.basis()[x].name,
                                a.basis()[y].name
                            ));
                        }
                    }
                }
            }
        }
        if let (Some(_), Some(right)) = (&self.left, &self.right) {
            for x in 0..a.dim() {
                for m in 0..n {
                    for y in 0..a.dim() {
                        if !within(a.weight(x) + self.weight(m) + a.weight(y)) {
                            continue;
                        }
                        let l = self.right_vec(self.left_act(x, m), &e(y));
                        let r = self.left_vec(&e(x), &right[m][y]);
                        if l != r {
                            return bad("left and right actions do not commute".into());
                        }
                    }
                }
            }
        }
        if let Some(p) = &self.pointed {
            if !self.d_vec(p).is_empty() {
                return bad("distinguished element is not a cycle".into());
            }
            if p.iter().any(|(k, _)| *k >= n || self.degree(*k) != 0 || self.weight(*k) != 0) {
                return bad("distinguished element must have degree 0 and weight 0".into());
            }
        }
        Ok(())
    }
}

/// `A` as a bimodule over itself, pointed by the unit.
pub fn regular_bimodule(a: &DGAlgebra) -> DGModule {
    let n = a.dim();
    let table: Vec<Vec<Vector>> = (0..n).map(|i| (0..n).map(|j| a.mul(i, j).to_vec()).collect()).collect();
    DGModule::new(
        a,
        ModuleData {
            name: a.name().to_string(),
            basis: a.basis().to_vec(),
            left: Some(table.clone()),
            right: Some(table),
            diff: (0..n).map(|i| a.d(i).to_vec()).collect(),
            pointed: Some(vec![(a.unit(), Scalar::one())]),
        },
    )
    .expect("an algebra is a bimodule over itself")
}

/// The ground field with `A` acting through the augmentation on both sides.
pub fn augmentation_module(a: &DGAlgebra) -> Result<DGModule> {
    let eps = a.augmentation().ok_or(Error::MissingAugmentation)?;
    let act: Vec<Vector> = eps
        .iter()
        .map(|x| if x.is_zero() { Vec::new() } else { vec![(0, x.clone())] })
        .collect();
    DGModule::new(
        a,
        ModuleData {
            name: "k".into(),
            basis: vec![BasisElement::new("1", 0, 0)],
            left: Some(act.iter().map(|v| vec![v.clone()]).collect()),
            right: Some(vec![act]),
            diff: vec![Vec::new()],
            pointed: Some(vec![(0, Scalar::one())]),
        },
    )
}

/// A degree-0, weight-preserving algebra automorphism, stored by the images
/// of basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraAutomorphism {
    images: Vec<Vector>,
}

impl AlgebraAutomorphism {
    /// Validates multiplicativity, unitality, compatibility with `d`,
    /// grading and invertibility.
    pub fn new(a: &DGAlgebra, images: Vec<Vector>) -> Result<Self> {
        let bad = |msg: &str| Err(Error::InvalidAutomorphism(msg.to_string()));
        if images.len() != a.dim() {
            return bad("one image per basis element is required");
        }
        let images: Vec<Vector> = images
            .into_iter()
            .map(|v| {
                let mut acc = BTreeMap::new();
                add_scaled(&mut acc, &Scalar::one(), &v);
                collect(acc)
            })
            .collect();
        let sigma = AlgebraAutomorphism { images };
        for (i, v) in sigma.images.iter().enumerate() {
            for (k, _) in v {
                if *k >= a.dim() || a.degree(*k) != a.degree(i) || (a.is_weight_graded() && a.weight(*k) != a.weight(i)) {
                    return bad("image does not preserve degree and weight");
                }
            }
        }
        if sigma.images[a.unit()] != vec![(a.unit(), Scalar::one())] {
            return bad("unit is not fixed");
        }
        for i in 0..a.dim() {
            if sigma.apply(&a.d_vec(&[(i, Scalar::one())])) != a.d_vec(&sigma.images[i]) {
                return bad("does not commute with the differential");
            }
            for j in 0..a.dim() {
                if !a.product_materialized(i, j) {
                    continue;
                }
                let lhs = sigma.apply(a.mul(i, j));
                let rhs = a.mul_vec(&sigma.images[i], &sigma.images[j]);
                if lhs != rhs {
                    return bad("not multiplicative");
                }
            }
        }
        let m = crate::homalg::SparseMatrix::from_columns(a.dim(), sigma.images.clone());
        if crate::homalg::rank::rank(&m, crate::homalg::Coefficients::Rational)? != a.dim() {
            return bad("not invertible");
        }
        Ok(sigma)
    }

    pub fn identity(a: &DGAlgebra) -> Self {
        AlgebraAutomorphism { images: (0..a.dim()).map(|i| vec![(i, Scalar::one())]).collect() }
    }

    pub fn image(&self, i: usize) -> &[(usize, Scalar)] {
        &self.images[i]
    }

    pub fn apply(&self, v: &[(usize, Scalar)]) -> Vector {
        let mut acc = BTreeMap::new();
        for (i, x) in v {
            add_scaled(&mut acc, x, &self.images[*i]);
        }
        collect(acc)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AlgebraAutomorphism) -> AlgebraAutomorphism {
        AlgebraAutomorphism { images: other.images.iter().map(|v| self.apply(v)).collect() }
    }
}

/// `A` with the standard left action and the right action twisted:
/// `m ◃ b = m σ(b)`.
pub fn twisted_bimodule(a: &DGAlgebra, sigma: &AlgebraAutomorphism) -> Result<DGModule> {
    let n = a.dim();
    let left: Vec<Vec<Vector>> = (0..n).map(|i| (0..n).map(|j| a.mul(i, j).to_vec()).collect()).collect();
    let right: Vec<Vec<Vector>> = (0..n)
        .map(|m| (0..n).map(|b| a.mul_vec(&[(m, Scalar::one())], sigma.image(b))).collect())
        .collect();
    DGModule::new(
        a,
        ModuleData {
            name: format!("{}^σ", a.name()),
            basis: a.basis().to_vec(),
            left: Some(left),
            right: Some(right),
            diff: (0..n).map(|i| a.d(i).to_vec()).collect(),
            pointed: Some(vec![(a.unit(), Scalar::one())]),
        },
    )
}

/// `A` as a right module over `A ⊗ A^op`: `m · (a⊗b) = (−1)^{|a|(|m|+|b|)} b m a`.
///
/// `ae` must be `tensor_algebra(a, opposite(a))`.
pub fn enveloping_right(a: &DGAlgebra, ae: &DGAlgebra) -> Result<DGModule> {
    let n = a.dim();
    if ae.dim() != n * n {
        return Err(Error::InvalidInput("not an enveloping algebra".into()));
    }
    let right: Vec<Vec<Vector>> = (0..n)
        .map(|m| {
            (0..n * n)
                .map(|ab| {
                    let (x, y) = (ab / n, ab % n);
                    let s = sign(a.degree(x) * (a.degree(m) + a.degree(y)) % 2 != 0);
                    let ym = a.mul(y, m);
                    let v = a.mul_vec(ym, &[(x, Scalar::one())]);
                    v.into_iter().map(|(k, c)| (k, &s * c)).collect()
                })
                .collect()
        })
        .collect();
    DGModule::new(
        ae,
        ModuleData {
            name: format!("{} (right {})", a.name(), ae.name()),
            basis: a.basis().to_vec(),
            left: None,
            right: Some(right),
            diff: (0..n).map(|i| a.d(i).to_vec()).collect(),
            pointed: Some(vec![(a.unit(), Scalar::one())]),
        },
    )
}

/// `A` as a left module over `A ⊗ A^op`: `(a⊗b) · m = (−1)^{|b||m|} a m b`.
pub fn enveloping_left(a: &DGAlgebra, ae: &DGAlgebra) -> Result<DGModule> {
    let n = a.dim();
    if ae.dim() != n * n {
        return Err(Error::InvalidInput("not an enveloping algebra".into()));
    }
    let left: Vec<Vec<Vector>> = (0..n * n)
        .map(|ab| {
            let (x, y) = (ab / n, ab % n);
            (0..n)
                .map(|m| {
                    let s = sign(a.degree(y) * a.degree(m) % 2 != 0);
                    let xm = a.mul(x, m);
                    let v = a.mul_vec(xm, &[(y, Scalar::one())]);
                    v.into_iter().map(|(k, c)| (k, &s * c)).collect()
                })
                .collect()
        })
        .collect();
    DGModule::new(
        ae,
        ModuleData {
            name: format!("{} (left {})", a.name(), ae.name()),
            basis: a.basis().to_vec(),
            left: Some(left),
            right: None,
            diff: (0..n).map(|i| a.d(i).to_vec()).collect(),
            pointed: Some(vec![(a.unit(), Scalar::one())]),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::algebra::{exterior, opposite, tensor_algebra, truncated_polynomial};
    use crate::homalg::field::int;

    #[test]
    fn augmentation_module_of_exterior() {
        let a = exterior(-1).unwrap();
        let k = augmentation_module(&a).unwrap();
        assert_eq!(k.dim(), 1);
        let x = a.index_of("x").unwrap();
        assert!(k.left_act(x, 0).is_empty());
    }

    #[test]
    fn sign_automorphism() {
        let a = truncated_polynomial(2, 0).unwrap();
        let s = AlgebraAutomorphism::new(&a, vec![vec![(0, int(1))], vec![(1, int(-1))]]).unwrap();
        let m = twisted_bimodule(&a, &s).unwrap();
        assert!(!m.is_symmetric(&a));
        let id = twisted_bimodule(&a, &AlgebraAutomorphism::identity(&a)).unwrap();
        assert_eq!(id.right_act(0, 1), regular_bimodule(&a).right_act(0, 1));
        assert!(AlgebraAutomorphism::new(&a, vec![vec![(0, int(1))], vec![(1, int(0))]]).is_err());
        let p3 = truncated_polynomial(3, 0).unwrap();
        let bad = vec![vec![(0, int(1))], vec![(1, int(2))], vec![(2, int(2))]];
        assert!(AlgebraAutomorphism::new(&p3, bad).is_err());
    }

    #[test]
    fn enveloping_actions_pass_audit() {
        for a in [truncated_polynomial(2, 0).unwrap(), exterior(-1).unwrap(), exterior(-3).unwrap()] {
            let ae = tensor_algebra(&a, &opposite(&a)).unwrap();
            enveloping_right(&a, &ae).unwrap();
            enveloping_left(&a, &ae).unwrap();
        }
    }

    #[test]
    fn regular_is_symmetric_for_commutative() {
        let a = exterior(-1).unwrap();
        assert!(regular_bimodule(&a).is_symmetric(&a));
    }
}
