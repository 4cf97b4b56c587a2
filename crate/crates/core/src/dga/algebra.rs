use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homalg::field::{int, sign, Scalar};

/// A sparse vector in some basis: `(index, coefficient)` sorted by index,
/// no zeros.
pub type Vector = Vec<(usize, Scalar)>;

pub(crate) fn collect(acc: BTreeMap<usize, Scalar>) -> Vector {
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

pub(crate) fn add_scaled(acc: &mut BTreeMap<usize, Scalar>, c: &Scalar, v: &[(usize, Scalar)]) {
    for (i, x) in v {
        *acc.entry(*i).or_insert_with(Scalar::zero) += c * x;
    }
}

/// A named basis vector with its cohomological degree and weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub degree: i64,
    pub weight: i64,
}

impl BasisElement {
    pub fn new(name: impl Into<String>, degree: i64, weight: i64) -> Self {
        BasisElement { name: name.into(), degree, weight }
    }
}

/// A generator of a free graded-commutative algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
    pub weight: i64,
}

/// Which of the two finiteness regimes an algebra falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Finiteness {
    /// Finite-dimensional with every non-unit basis element in degree `≤ 0`;
    /// `strict` when all of them are in degree `< 0`.
    pub by_degree: Option<DegreeBound>,
    /// Weight-graded with every non-unit basis element in weight `> 0`.
    pub by_weight: Option<WeightBound>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeBound {
    pub strict: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightBound {
    /// Smallest weight of a non-unit basis element.
    pub min_positive: i64,
}

/// A differential graded algebra given by a basis and structure constants.
///
/// Products of basis elements are stored densely as sparse vectors. When
/// `weight_bound` is `Some(W)` only the weights `0..=W` are materialized and
/// products landing above `W` are not recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DGAlgebra {
    name: String,
    basis: Vec<BasisElement>,
    mult: Vec<Vec<Vector>>,
    diff: Vec<Vector>,
    unit: usize,
    commutative: bool,
    augmentation: Option<Vec<Scalar>>,
    weight_graded: bool,
    weight_bound: Option<i64>,
    generators: Option<Vec<Generator>>,
}

/// Raw data for [`DGAlgebra::new`].
#[derive(Debug, Clone)]
pub struct AlgebraData {
    pub name: String,
    pub basis: Vec<BasisElement>,
    /// `mult[i][j] = e_i · e_j`.
    pub mult: Vec<Vec<Vector>>,
    pub diff: Vec<Vector>,
    pub unit: usize,
    pub commutative: bool,
    pub augmentation: Option<Vec<Scalar>>,
    pub weight_graded: bool,
    pub weight_bound: Option<i64>,
    pub generators: Option<Vec<Generator>>,
}

impl DGAlgebra {
    /// Builds an algebra and runs the full axiom audit; any violation is an
    /// error. Algebras outside both finiteness regimes are rejected.
    pub fn new(data: AlgebraData) -> Result<Self> {
        let n = data.basis.len();
        if data.unit >= n || data.mult.len() != n || data.diff.len() != n {
            return Err(Error::InvalidInput(format!("{}: table sizes disagree", data.name)));
        }
        if data.mult.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput(format!("{}: ragged product table", data.name)));
        }
        let a = DGAlgebra {
            name: data.name,
            basis: data.basis,
            mult: data
                .mult
                .into_iter()
                .map(|row| row.into_iter().map(normalize).collect())
                .collect(),
            diff: data.diff.into_iter().map(normalize).collect(),
            unit: data.unit,
            commutative: data.commutative,
            augmentation: data.augmentation,
            weight_graded: data.weight_graded,
            weight_bound: data.weight_bound,
            generators: data.generators,
        };
        a.audit()?;
        let f = a.finiteness();
        if f.by_degree.is_none() && f.by_weight.is_none() {
            return Err(Error::UnsupportedAlgebra(format!(
                "{}: neither finite-dimensional with non-unit degrees <= 0 nor weight-graded \
                 with non-unit weights > 0",
                a.name
            )));
        }
        Ok(a)
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

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_weight_graded(&self) -> bool {
        self.weight_graded
    }

    pub fn weight_bound(&self) -> Option<i64> {
        self.weight_bound
    }

    pub fn generators(&self) -> Option<&[Generator]> {
        self.generators.as_deref()
    }

    pub fn augmentation(&self) -> Option<&[Scalar]> {
        self.augmentation.as_deref()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// `e_i · e_j`.
    pub fn mul(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.mult[i][j]
    }

    /// `d(e_i)`.
    pub fn d(&self, i: usize) -> &[(usize, Scalar)] {
        &self.diff[i]
    }

    pub fn has_zero_differential(&self) -> bool {
        self.diff.iter().all(Vec::is_empty)
    }

    /// Product of two vectors.
    pub fn mul_vec(&self, u: &[(usize, Scalar)], v: &[(usize, Scalar)]) -> Vector {
        let mut acc = BTreeMap::new();
        for (i, x) in u {
            for (j, y) in v {
                add_scaled(&mut acc, &(x * y), &self.mult[*i][*j]);
            }
        }
        collect(acc)
    }

    pub fn d_vec(&self, v: &[(usize, Scalar)]) -> Vector {
        let mut acc = BTreeMap::new();
        for (i, x) in v {
            add_scaled(&mut acc, x, &self.diff[*i]);
        }
        collect(acc)
    }

    /// Whether the product `e_i e_j` lies in the materialized range.
    pub fn product_materialized(&self, i: usize, j: usize) -> bool {
        self.weight_bound.is_none_or(|w| self.weight(i) + self.weight(j) <= w)
    }

    /// Basis indices other than the unit.
    pub fn nonunit(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(move |&i| i != self.unit)
    }

    pub fn finiteness(&self) -> Finiteness {
        let by_degree = if self.weight_bound.is_none() && self.nonunit().all(|i| self.degree(i) <= 0)
        {
            Some(DegreeBound { strict: self.nonunit().all(|i| self.degree(i) < 0) })
        } else {
            None
        };
        let by_weight = if self.weight_graded
            && self.weight(self.unit) == 0
            && self.nonunit().all(|i| self.weight(i) > 0)
        {
            Some(WeightBound { min_positive: self.nonunit().map(|i| self.weight(i)).min().unwrap_or(1) })
        } else {
            None
        };
        Finiteness { by_degree, by_weight }
    }

    /// Largest degree of a non-unit basis element (0 if none).
    pub fn max_nonunit_degree(&self) -> i64 {
        self.nonunit().map(|i| self.degree(i)).max().unwrap_or(0)
    }

    /// Exhaustive check of the algebra axioms on basis elements (within the
    /// materialized weights).
    pub fn audit(&self) -> Result<()> {
        let n = self.dim();
        let bad = |msg: String| Err(Error::AxiomViolation(format!("{}: {msg}", self.name)));
        let within = |w: i64| self.weight_bound.is_none_or(|b| w <= b);
        let name = |i: usize| self.basis[i].name.as_str();
        for (i, row) in self.mult.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                for (k, _) in v {
                    if *k >= n {
                        return bad(format!("product {}·{} out of range", name(i), name(j)));
                    }
                    if self.degree(*k) != self.degree(i) + self.degree(j) {
                        return bad(format!("product {}·{} breaks degree", name(i), name(j)));
                    }
                    if self.weight_graded && self.weight(*k) != self.weight(i) + self.weight(j) {
                        return bad(format!("product {}·{} breaks weight", name(i), name(j)));
                    }
                }
            }
        }
        for (i, v) in self.diff.iter().enumerate() {
            for (k, _) in v {
                if *k >= n || self.degree(*k) != self.degree(i) + 1 {
                    return bad(format!("d({}) has the wrong degree", name(i)));
                }
                if self.weight_graded && self.weight(*k) != self.weight(i) {
                    return bad(format!("d({}) changes weight", name(i)));
                }
            }
        }
        let e = |i: usize| vec![(i, Scalar::one())];
        if !self.diff[self.unit].is_empty() {
            return bad("d(1) != 0".into());
        }
        for i in 0..n {
            if self.mult[self.unit][i] != e(i) || self.mult[i][self.unit] != e(i) {
                return bad(format!("unit law fails on {}", name(i)));
            }
            if !self.d_vec(self.d(i)).is_empty() {
                return bad(format!("d² != 0 on {}", name(i)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !within(self.weight(i) + self.weight(j)) {
                    continue;
                }
                if self.commutative {
                    let s = sign(self.degree(i) * self.degree(j) % 2 != 0);
                    let swapped: Vector = self.mult[j][i].iter().map(|(k, x)| (*k, &s * x)).collect();
                    if self.mult[i][j] != swapped {
                        return bad(format!("graded commutativity fails on ({}, {})", name(i), name(j)));
                    }
                }
                // Leibniz: d(ab) = d(a) b + (−1)^{|a|} a d(b)
                let lhs = self.d_vec(&self.mult[i][j]);
                let mut acc = BTreeMap::new();
                add_scaled(&mut acc, &Scalar::one(), &self.mul_vec(self.d(i), &e(j)));
                add_scaled(&mut acc, &sign(self.degree(i) % 2 != 0), &self.mul_vec(&e(i), self.d(j)));
                if lhs != collect(acc) {
                    return bad(format!("Leibniz rule fails on ({}, {})", name(i), name(j)));
                }
                for k in 0..n {
                    if !within(self.weight(i) + self.weight(j) + self.weight(k)) {
                        continue;
                    }
                    let l = self.mul_vec(&self.mult[i][j], &e(k));
                    let r = self.mul_vec(&e(i), &self.mult[j][k]);
                    if l != r {
                        return bad(format!(
                            "associativity fails on ({}, {}, {})",
                            name(i),
                            name(j),
                            name(k)
                        ));
                    }
                }
            }
        }
        if let Some(eps) = &self.augmentation {
            if eps.len() != n {
                return bad("augmentation has the wrong length".into());
            }
            if !eps[self.unit].is_one() {
                return bad("augmentation does not send 1 to 1".into());
            }
            for i in 0..n {
                if !eps[i].is_zero() && (self.degree(i) != 0 || (self.weight_graded && self.weight(i) != 0)) {
                    return bad(format!("augmentation nonzero on {}", name(i)));
                }
                let de: Scalar = self.d(i).iter().map(|(k, x)| x * &eps[*k]).sum();
                if !de.is_zero() {
                    return bad(format!("augmentation does not kill d({})", name(i)));
                }
                for j in 0..n {
                    if !within(self.weight(i) + self.weight(j)) {
                        continue;
                    }
                    let lhs: Scalar = self.mult[i][j].iter().map(|(k, x)| x * &eps[*k]).sum();
                    if lhs != &eps[i] * &eps[j] {
                        return bad(format!("augmentation not multiplicative on ({}, {})", name(i), name(j)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Evaluates the augmentation on a vector.
    pub fn epsilon(&self, v: &[(usize, Scalar)]) -> Result<Scalar> {
        let eps = self.augmentation.as_ref().ok_or(Error::MissingAugmentation)?;
        Ok(v.iter().map(|(k, x)| x * &eps[*k]).sum())
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub(crate) fn data(&self) -> AlgebraData {
        AlgebraData {
            name: self.name.clone(),
            basis: self.basis.clone(),
            mult: self.mult.clone(),
            diff: self.diff.clone(),
            unit: self.unit,
            commutative: self.commutative,
            augmentation: self.augmentation.clone(),
            weight_graded: self.weight_graded,
            weight_bound: self.weight_bound,
            generators: self.generators.clone(),
        }
    }
}

impl fmt::Display for DGAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim())
    }
}

fn normalize(v: Vector) -> Vector {
    let mut acc = BTreeMap::new();
    for (i, x) in v {
        *acc.entry(i).or_insert_with(Scalar::zero) += x;
    }
    collect(acc)
}

/// The ground field as an algebra concentrated in degree 0.
pub fn ground_field() -> DGAlgebra {
    DGAlgebra::new(AlgebraData {
        name: "k".into(),
        basis: vec![BasisElement::new("1", 0, 0)],
        mult: vec![vec![vec![(0, Scalar::one())]]],
        diff: vec![Vec::new()],
        unit: 0,
        commutative: true,
        augmentation: Some(vec![Scalar::one()]),
        weight_graded: true,
        weight_bound: None,
        generators: Some(Vec::new()),
    })
    .expect("the ground field is an algebra")
}

/// Free graded-commutative algebra on the given generators, with zero
/// differential: polynomial on even generators, exterior on odd ones.
///
/// Monomials are listed by weight, then lexicographically in the exponent
/// vector. If some even generator exists, only weights `≤ weight_bound` are
/// materialized and the bound is required.
pub fn free_commutative(
    name: &str,
    generators: &[Generator],
    weight_bound: Option<i64>,
) -> Result<DGAlgebra> {
    let infinite = generators.iter().any(|g| g.degree % 2 == 0);
    if generators.iter().any(|g| g.weight <= 0) {
        return Err(Error::UnsupportedAlgebra(format!("{name}: generator weights must be positive")));
    }
    let bound = match (infinite, weight_bound) {
        (true, None) => {
            return Err(Error::NonFinite(format!("{name}: polynomial generators need a weight bound")))
        }
        (true, Some(w)) => Some(w),
        (false, _) => None,
    };
    // enumerate exponent vectors
    let r = generators.len();
    let mut monomials: Vec<Vec<u32>> = Vec::new();
    let mut cur = vec![0u32; r];
    fn rec(
        pos: usize,
        weight: i64,
        gens: &[Generator],
        bound: Option<i64>,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if pos == gens.len() {
            out.push(cur.clone());
            return;
        }
        let g = &gens[pos];
        let max_e = if g.degree % 2 != 0 { 1 } else { u32::MAX };
        let mut e = 0u32;
        loop {
            let w = weight + e as i64 * g.weight;
            if bound.is_some_and(|b| w > b) || e > max_e {
                break;
            }
            cur[pos] = e;
            rec(pos + 1, w, gens, bound, cur, out);
            e += 1;
        }
        cur[pos] = 0;
    }
    rec(0, 0, generators, bound, &mut cur, &mut monomials);
    let weight_of = |m: &[u32]| -> i64 { m.iter().zip(generators).map(|(e, g)| *e as i64 * g.weight).sum() };
    let degree_of = |m: &[u32]| -> i64 { m.iter().zip(generators).map(|(e, g)| *e as i64 * g.degree).sum() };
    monomials.sort_by(|a, b| weight_of(a).cmp(&weight_of(b)).then_with(|| a.cmp(b)));
    let index: BTreeMap<Vec<u32>, usize> =
        monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let basis: Vec<BasisElement> = monomials
        .iter()
        .map(|m| BasisElement::new(monomial_name(m, generators), degree_of(m), weight_of(m)))
        .collect();
    let n = monomials.len();
    let mut mult = vec![vec![Vec::new(); n]; n];
    for (i, a) in monomials.iter().enumerate() {
        for (j, b) in monomials.iter().enumerate() {
            let prod: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if prod.iter().zip(generators).any(|(e, g)| g.degree % 2 != 0 && *e > 1) {
                continue;
            }
            let Some(&k) = index.get(&prod) else { continue };
            // sort the word a·b into generator order; only odd letters sign
            let word: Vec<usize> = a
                .iter()
                .chain(b.iter())
                .enumerate()
                .flat_map(|(p, e)| std::iter::repeat_n(p % r, *e as usize))
                .collect();
            let odd = |g: usize| generators[g].degree % 2 != 0;
            let mut inversions = 0usize;
            for x in 0..word.len() {
                for y in x + 1..word.len() {
                    if word[x] > word[y] && odd(word[x]) && odd(word[y]) {
                        inversions += 1;
                    }
                }
            }
            mult[i][j] = vec![(k, sign(inversions % 2 == 1))];
        }
    }
    let unit = index[&vec![0u32; r]];
    let augmentation = Some((0..n).map(|i| if i == unit { Scalar::one() } else { Scalar::zero() }).collect());
    DGAlgebra::new(AlgebraData {
        name: name.into(),
        basis,
        mult,
        diff: vec![Vec::new(); n],
        unit,
        commutative: true,
        augmentation,
        weight_graded: true,
        weight_bound: bound,
        generators: Some(generators.to_vec()),
    })
}

fn monomial_name(m: &[u32], gens: &[Generator]) -> String {
    let parts: Vec<String> = m
        .iter()
        .zip(gens)
        .filter(|(e, _)| **e > 0)
        .map(|(e, g)| if *e == 1 { g.name.clone() } else { format!("{}^{}", g.name, e) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("")
    }
}

/// `Λ(x)` with `x` of the given odd negative degree and weight 1.
pub fn exterior(degree: i64) -> Result<DGAlgebra> {
    if degree % 2 == 0 || degree >= 0 {
        return Err(Error::ParityViolation(format!(
            "exterior generator must have odd negative degree, got {degree}"
        )));
    }
    let g = Generator { name: "x".into(), degree, weight: 1 };
    free_commutative(&format!("Λ(x)[{degree}]"), &[g], None)
}

/// `k[x]/x^n` with `x` of even degree and weight 1.
pub fn truncated_polynomial(n: usize, degree: i64) -> Result<DGAlgebra> {
    if degree % 2 != 0 {
        return Err(Error::ParityViolation(format!(
            "truncated polynomial generator must have even degree, got {degree}"
        )));
    }
    if n < 1 {
        return Err(Error::InvalidInput("truncation order must be at least 1".into()));
    }
    let basis: Vec<BasisElement> = (0..n)
        .map(|k| {
            let name = match k {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            BasisElement::new(name, degree * k as i64, k as i64)
        })
        .collect();
    let mult = (0..n)
        .map(|i| (0..n).map(|j| if i + j < n { vec![(i + j, Scalar::one())] } else { Vec::new() }).collect())
        .collect();
    let augmentation = Some((0..n).map(|i| if i == 0 { Scalar::one() } else { Scalar::zero() }).collect());
    DGAlgebra::new(AlgebraData {
        name: format!("k[x]/x^{n}"),
        basis,
        mult,
        diff: vec![Vec::new(); n],
        unit: 0,
        commutative: true,
        augmentation,
        weight_graded: true,
        weight_bound: None,
        generators: None,
    })
}

/// `k[x]` with `x` in degree 0 and weight 1, materialized up to weight `w`.
pub fn polynomial(weight_bound: i64) -> Result<DGAlgebra> {
    let g = Generator { name: "x".into(), degree: 0, weight: 1 };
    free_commutative("k[x]", &[g], Some(weight_bound))
}

/// `A ⊗ B` with `(a⊗b)(a'⊗b') = (−1)^{|b||a'|} aa' ⊗ bb'`; basis pairs in
/// lexicographic order.
pub fn tensor_algebra(a: &DGAlgebra, b: &DGAlgebra) -> Result<DGAlgebra> {
    let (na, nb) = (a.dim(), b.dim());
    let idx = |i: usize, j: usize| i * nb + j;
    let mut basis = Vec::with_capacity(na * nb);
    for ea in a.basis() {
        for eb in b.basis() {
            basis.push(BasisElement::new(
                format!("{}⊗{}", ea.name, eb.name),
                ea.degree + eb.degree,
                ea.weight + eb.weight,
            ));
        }
    }
    let mut mult = vec![vec![Vec::new(); na * nb]; na * nb];
    for i in 0..na {
        for j in 0..nb {
            for i2 in 0..na {
                for j2 in 0..nb {
                    let s = sign(b.degree(j) * a.degree(i2) % 2 != 0);
                    let mut out = Vec::new();
                    for (p, x) in a.mul(i, i2) {
                        for (q, y) in b.mul(j, j2) {
                            out.push((idx(*p, *q), &s * x * y));
                        }
                    }
                    mult[idx(i, j)][idx(i2, j2)] = out;
                }
            }
        }
    }
    let mut diff = vec![Vec::new(); na * nb];
    for i in 0..na {
        for j in 0..nb {
            let mut out = Vec::new();
            for (p, x) in a.d(i) {
                out.push((idx(*p, j), x.clone()));
            }
            let s = sign(a.degree(i) % 2 != 0);
            for (q, y) in b.d(j) {
                out.push((idx(i, *q), &s * y));
            }
            diff[idx(i, j)] = out;
        }
    }
    let augmentation = match (a.augmentation(), b.augmentation()) {
        (Some(ea), Some(eb)) => {
            let mut v = Vec::with_capacity(na * nb);
            for x in ea {
                for y in eb {
                    v.push(x * y);
                }
            }
            Some(v)
        }
        _ => None,
    };
    let weight_bound = match (a.weight_bound(), b.weight_bound()) {
        (None, None) => None,
        (x, y) => Some(x.unwrap_or(i64::MAX).min(y.unwrap_or(i64::MAX))),
    };
    DGAlgebra::new(AlgebraData {
        name: format!("{}⊗{}", a.name(), b.name()),
        basis,
        mult,
        diff,
        unit: idx(a.unit(), b.unit()),
        commutative: a.is_commutative() && b.is_commutative(),
        augmentation,
        weight_graded: a.is_weight_graded() && b.is_weight_graded(),
        weight_bound,
        generators: None,
    })
}

/// `A^op`: `a ·_op b = (−1)^{|a||b|} b a`, same basis.
pub fn opposite(a: &DGAlgebra) -> DGAlgebra {
    let mut data = a.data();
    let n = a.dim();
    data.mult = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let s = sign(a.degree(i) * a.degree(j) % 2 != 0);
                    a.mul(j, i).iter().map(|(k, x)| (*k, &s * x)).collect()
                })
                .collect()
        })
        .collect();
    if !a.name().ends_with("^op") {
        data.name = format!("{}^op", a.name());
    } else {
        data.name = a.name().trim_end_matches("^op").to_string();
    }
    DGAlgebra::new(data).expect("the opposite of an algebra is an algebra")
}

/// Scalar helper used by presentations: `n` as a rational.
pub fn scalar(n: i64) -> Scalar {
    int(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exterior_square_vanishes() {
        let a = exterior(-1).unwrap();
        assert_eq!(a.dim(), 2);
        let x = a.index_of("x").unwrap();
        assert!(a.mul(x, x).is_empty());
        assert!(exterior(-2).is_err());
        assert!(exterior(1).is_err());
    }

    #[test]
    fn truncated_and_polynomial() {
        let a = truncated_polynomial(2, 0).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.mul(1, 1).is_empty());
        let p = polynomial(5).unwrap();
        for w in 0..=5 {
            assert_eq!(p.basis().iter().filter(|b| b.weight == w).count(), 1);
        }
        assert!(truncated_polynomial(3, 1).is_err());
    }

    #[test]
    fn opposite_is_an_involution() {
        let a = truncated_polynomial(3, 0).unwrap();
        assert_eq!(opposite(&a).mul(1, 1), a.mul(1, 1));
        let e = exterior(-1).unwrap();
        assert_eq!(opposite(&opposite(&e)), e);
    }

    #[test]
    fn enveloping_algebra_is_associative() {
        let a = truncated_polynomial(2, 0).unwrap();
        let ae = tensor_algebra(&a, &opposite(&a)).unwrap();
        assert_eq!(ae.dim(), 4);
        ae.audit().unwrap();
        let e = exterior(-1).unwrap();
        tensor_algebra(&e, &opposite(&e)).unwrap().audit().unwrap();
    }

    #[test]
    fn free_algebra_signs() {
        let gens = [
            Generator { name: "y".into(), degree: -1, weight: 1 },
            Generator { name: "z".into(), degree: -3, weight: 1 },
        ];
        let a = free_commutative("Λ(y,z)", &gens, None).unwrap();
        assert_eq!(a.dim(), 4);
        let (y, z) = (a.index_of("y").unwrap(), a.index_of("z").unwrap());
        let yz = a.index_of("yz").unwrap();
        assert_eq!(a.mul(y, z), &[(yz, int(1))]);
        assert_eq!(a.mul(z, y), &[(yz, int(-1))]);
    }

    #[test]
    fn broken_tables_are_rejected() {
        let mut data = truncated_polynomial(4, 0).unwrap().data();
        data.mult[1][2] = vec![(3, int(2))];
        assert!(matches!(DGAlgebra::new(data), Err(Error::AxiomViolation(_))));
    }
}
