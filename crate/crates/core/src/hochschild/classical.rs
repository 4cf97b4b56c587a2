//! Bar-type complexes built directly from words in `Ā = A/k·1`: the classical
//! Hochschild complex `M ⊗ Ā^{⊗n}`, the two-sided Bar construction
//! `Mr ⊗ Ā^{⊗n} ⊗ Ml`, and classical Hochschild cochains.

use std::collections::{BTreeMap, HashMap};

use super::chains::{add_term, hochschild_chain_with_coeff};
use super::window::{chain_truncation, cochain_truncation, SlotBound, Window};
use crate::dga::{
    augmentation_module, enveloping_left, enveloping_right, opposite, regular_bimodule, tensor_algebra,
    twisted_bimodule, AlgebraAutomorphism, DGAlgebra, DGModule, Vector,
};
use crate::error::{Error, Result};
use crate::homalg::field::{sign, Scalar};
use crate::homalg::{totalize, Bicomplex, Block, ChainComplex, SparseMatrix, Totalization, WeightSet};
use crate::simp::sphere_small;

/// A basis word: `left ⊗ a_1 ⊗ ⋯ ⊗ a_n ⊗ right`. In the cyclic shape
/// `right` is unused.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub left: usize,
    pub letters: Vec<usize>,
    pub right: usize,
}

#[derive(Debug, Clone, Copy)]
enum Shape<'a> {
    /// `M ⊗ Ā^{⊗n}`, last letter wrapping around to act on `M` from the left.
    Cyclic(&'a DGModule),
    /// `Mr ⊗ Ā^{⊗n} ⊗ Ml`.
    TwoSided(&'a DGModule, &'a DGModule),
}

struct Bar<'a> {
    a: &'a DGAlgebra,
    shape: Shape<'a>,
}

impl Bar<'_> {
    fn left(&self) -> &DGModule {
        match self.shape {
            Shape::Cyclic(m) | Shape::TwoSided(m, _) => m,
        }
    }

    fn letters_degree(&self, w: &[usize]) -> i64 {
        w.iter().map(|&x| self.a.degree(x)).sum()
    }

    fn degree(&self, w: &Word) -> i64 {
        let r = match self.shape {
            Shape::Cyclic(_) => 0,
            Shape::TwoSided(_, ml) => ml.degree(w.right),
        };
        self.left().degree(w.left) + self.letters_degree(&w.letters) + r
    }

    fn weight(&self, w: &Word) -> i64 {
        let r = match self.shape {
            Shape::Cyclic(_) => 0,
            Shape::TwoSided(_, ml) => ml.weight(w.right),
        };
        self.left().weight(w.left) + w.letters.iter().map(|&x| self.a.weight(x)).sum::<i64>() + r
    }

    fn ends(&self) -> (Vec<usize>, Vec<usize>) {
        match self.shape {
            Shape::Cyclic(m) => ((0..m.dim()).collect(), vec![0]),
            Shape::TwoSided(mr, ml) => ((0..mr.dim()).collect(), (0..ml.dim()).collect()),
        }
    }

    /// Drops the unit coordinate: the projection `A → Ā`.
    fn bar(&self, v: Vector) -> Vector {
        v.into_iter().filter(|(i, _)| *i != self.a.unit()).collect()
    }

    fn face(&self, r: usize, w: &Word) -> Vec<(Word, Scalar)> {
        let n = w.letters.len();
        let a = self.a;
        let mut out = Vec::new();
        if r == 0 {
            let x = w.letters[0];
            let m = self.left();
            for (k, c) in m.act_right_or_symmetric(a.degree(x), w.left, x) {
                out.push((Word { left: k, letters: w.letters[1..].to_vec(), right: w.right }, c));
            }
        } else if r < n {
            let (x, y) = (w.letters[r - 1], w.letters[r]);
            for (k, c) in self.bar(a.mul(x, y).to_vec()) {
                let mut letters = w.letters.clone();
                letters.splice(r - 1..=r, [k]);
                out.push((Word { left: w.left, letters, right: w.right }, c));
            }
        } else {
            let x = w.letters[n - 1];
            let rest = w.letters[..n - 1].to_vec();
            match self.shape {
                Shape::Cyclic(m) => {
                    let passed = m.degree(w.left) + self.letters_degree(&rest);
                    let s = sign(a.degree(x) * passed % 2 != 0);
                    for (k, c) in m.act_left_or_symmetric(a.degree(x), x, w.left) {
                        out.push((Word { left: k, letters: rest.clone(), right: 0 }, &s * c));
                    }
                }
                Shape::TwoSided(_, ml) => {
                    for (k, c) in ml.act_left_or_symmetric(a.degree(x), x, w.right) {
                        out.push((Word { left: w.left, letters: rest.clone(), right: k }, c));
                    }
                }
            }
        }
        out
    }

    fn internal(&self, w: &Word) -> Vec<(Word, Scalar)> {
        let a = self.a;
        let mut out = Vec::new();
        let m = self.left();
        for (k, c) in m.d(w.left) {
            out.push((Word { left: *k, ..w.clone() }, c.clone()));
        }
        let mut before = m.degree(w.left);
        for (p, &x) in w.letters.iter().enumerate() {
            let s = sign(before % 2 != 0);
            for (k, c) in self.bar(a.d(x).to_vec()) {
                let mut letters = w.letters.clone();
                letters[p] = k;
                out.push((Word { letters, ..w.clone() }, &s * c));
            }
            before += a.degree(x);
        }
        if let Shape::TwoSided(_, ml) = self.shape {
            let s = sign(before % 2 != 0);
            for (k, c) in ml.d(w.right) {
                out.push((Word { right: *k, ..w.clone() }, &s * c));
            }
        }
        out
    }

    fn face_sum(&self, w: &Word) -> Vec<(Word, Scalar)> {
        let mut acc = BTreeMap::new();
        for r in 0..=w.letters.len() {
            let s = sign(r % 2 == 1);
            for (u, c) in self.face(r, w) {
                add_term(&mut acc, u, &s * c);
            }
        }
        acc.into_iter().collect()
    }

    fn slot_bound(&self) -> SlotBound {
        let (hi, lo, wt) = match self.shape {
            Shape::Cyclic(m) => (m.max_degree(), m.min_degree(), m.min_weight()),
            Shape::TwoSided(mr, ml) => (
                mr.max_degree() + ml.max_degree(),
                mr.min_degree() + ml.min_degree(),
                mr.min_weight() + ml.min_weight(),
            ),
        };
        SlotBound { space_dim: 1, base_max_degree: hi, base_min_degree: lo, base_min_weight: wt }
    }

    fn enumerate(
        &self,
        n: usize,
        floor: Option<i64>,
        ceiling: Option<i64>,
        cap: usize,
    ) -> Result<BTreeMap<Block, Vec<Word>>> {
        let nonunit: Vec<usize> = self.a.nonunit().collect();
        let (lefts, rights) = self.ends();
        let mut out: BTreeMap<Block, Vec<Word>> = BTreeMap::new();
        let mut stack: Vec<Word> = Vec::new();
        for &l in &lefts {
            for &r in &rights {
                stack.push(Word { left: l, letters: Vec::new(), right: r });
            }
        }
        while let Some(w) = stack.pop() {
            // further letters only lower the degree
            if floor.is_some_and(|f| self.degree(&w) - (n as i64) < f) {
                continue;
            }
            if ceiling.is_some_and(|c| self.weight(&w) > c) {
                continue;
            }
            if w.letters.len() == n {
                let v = out.entry((self.degree(&w), self.weight(&w))).or_default();
                v.push(w);
                if v.len() > cap {
                    return Err(Error::Infeasible { estimate: v.len(), cap });
                }
                continue;
            }
            for &x in nonunit.iter().rev() {
                let mut next = w.clone();
                next.letters.push(x);
                stack.push(next);
            }
        }
        for v in out.values_mut() {
            v.sort();
        }
        Ok(out)
    }

    fn complex(&self, window: &Window) -> Result<ChainComplex> {
        let t = chain_truncation(self.a, &self.slot_bound(), &Window { totalization: Totalization::Normalized, ..window.clone() })?;
        let levels: Vec<BTreeMap<Block, Vec<Word>>> = (0..=t.level)
            .map(|n| self.enumerate(n, t.degree_floor, t.weight_ceiling, window.cap))
            .collect::<Result<_>>()?;
        let index: Vec<HashMap<&Word, usize>> = levels
            .iter()
            .map(|bl| bl.values().flat_map(|ws| ws.iter().enumerate().map(|(i, w)| (w, i))).collect())
            .collect();
        let column = |idx: &HashMap<&Word, usize>, terms: Vec<(Word, Scalar)>| -> Vec<(usize, Scalar)> {
            let mut acc = BTreeMap::new();
            for (w, c) in terms {
                if let Some(&i) = idx.get(&w) {
                    add_term(&mut acc, i, c);
                }
            }
            acc.into_iter().collect()
        };
        let mut bc = Bicomplex::default();
        for (n, blocks) in levels.iter().enumerate() {
            let mut internal = BTreeMap::new();
            let mut faces = BTreeMap::new();
            for (&(i, w), ws) in blocks {
                if let Some(target) = blocks.get(&(i + 1, w)) {
                    let cols = ws.iter().map(|x| column(&index[n], self.internal(x))).collect();
                    internal.insert((i, w), SparseMatrix::from_columns(target.len(), cols));
                }
                if n > 0 {
                    if let Some(target) = levels[n - 1].get(&(i, w)) {
                        let cols = ws.iter().map(|x| column(&index[n - 1], self.face_sum(x))).collect();
                        faces.insert((i, w), SparseMatrix::from_columns(target.len(), cols));
                    }
                }
            }
            bc.levels.push(blocks.iter().map(|(b, ws)| (*b, ws.len())).collect());
            bc.internal.push(internal);
            bc.faces.push(faces);
        }
        totalize(window.coefficients, &bc, t.complete, t.weights)
    }
}

/// The normalized classical Hochschild complex `M ⊗ Ā^{⊗n}` with
/// `b(m ⊗ a_1 ⊗ ⋯ ⊗ a_n) = m a_1 ⊗ ⋯ + Σ ± m ⊗ ⋯ ⊗ a_i a_{i+1} ⊗ ⋯ ± a_n m ⊗ ⋯`.
pub fn classical_hochschild(a: &DGAlgebra, m: &DGModule, window: &Window) -> Result<ChainComplex> {
    Bar { a, shape: Shape::Cyclic(m) }.complex(window)
}

/// Hochschild homology of `B` with coefficients twisted by `mon`.
pub fn twisted_hochschild(b: &DGAlgebra, mon: &AlgebraAutomorphism, window: &Window) -> Result<ChainComplex> {
    classical_hochschild(b, &twisted_bimodule(b, mon)?, window)
}

/// The two-sided Bar construction `Mr ⊗ Ā^{⊗n} ⊗ Ml`.
pub fn two_sided_bar(mr: &DGModule, a: &DGAlgebra, ml: &DGModule, window: &Window) -> Result<ChainComplex> {
    Bar { a, shape: Shape::TwoSided(mr, ml) }.complex(window)
}

/// `A ⊗^L_{A⊗A^op} A` through the Bar construction over the enveloping
/// algebra.
pub fn hh_via_enveloping(a: &DGAlgebra, window: &Window) -> Result<ChainComplex> {
    let ae = tensor_algebra(a, &opposite(a))?;
    let right = enveloping_right(a, &ae)?;
    let left = enveloping_left(a, &ae)?;
    two_sided_bar(&right, &ae, &left, window)
}

/// `CH_{S^i}(A, k)`, the `i`-fold iterated Bar construction of an augmented
/// commutative algebra.
pub fn iterated_bar(a: &DGAlgebra, i: usize, window: &Window) -> Result<ChainComplex> {
    if !a.is_commutative() {
        return Err(Error::NonCommutative);
    }
    let k = augmentation_module(a)?;
    let slots = SlotBound { space_dim: i, base_max_degree: 0, base_min_degree: 0, base_min_weight: 0 };
    let level = chain_truncation(a, &slots, window)?.level.max(i + 1);
    let sphere = sphere_small(i, level)?;
    Ok(hochschild_chain_with_coeff(&sphere, a, &k, window)?.complex().clone())
}

/// A classical cochain: coefficients on `φ_{word, m}`, the functional sending
/// `a_1 ⊗ ⋯ ⊗ a_n` (the word) to `m` and other words to zero.
pub type ClassicalCochain = BTreeMap<(Vec<usize>, usize), Scalar>;

/// `C^n(A, M) = Hom(Ā^{⊗n}, M)`, identified with `Hom_{A⊗A^op}` of the Bar
/// resolution `A ⊗ Ā^{⊗n} ⊗ A` into `M`. `φ_{w,m}` has degree
/// `n + |m| − |w|`.
#[derive(Debug, Clone)]
pub struct ClassicalCochains {
    algebra: DGAlgebra,
    module: DGModule,
    basis: BTreeMap<Block, Vec<(Vec<usize>, usize)>>,
    index: HashMap<(Vec<usize>, usize), (Block, usize)>,
    complex: ChainComplex,
}

/// Classical Hochschild cochains with values in the bimodule `M`.
pub fn classical_cochains(a: &DGAlgebra, m: &DGModule, window: &Window) -> Result<ClassicalCochains> {
    let reg = regular_bimodule(a);
    let resolution = Bar { a, shape: Shape::TwoSided(&reg, &reg) };
    let slots = SlotBound { space_dim: 1, base_max_degree: 0, base_min_degree: m.min_degree(), base_min_weight: 0 };
    let t = cochain_truncation(a, &slots, window)?;
    let top = t.complete.hi.expect("cochain truncation bounds degrees above");
    let nonunit: Vec<usize> = a.nonunit().collect();
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..t.level {
        let mut next = Vec::new();
        for w in &frontier {
            for &x in &nonunit {
                let mut v: Vec<usize> = w.clone();
                v.push(x);
                // the cochain degree only grows with further letters
                let wdeg: i64 = v.iter().map(|&y| a.degree(y)).sum();
                if v.len() as i64 + m.min_degree() - wdeg <= top {
                    next.push(v);
                }
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let deg_of = |w: &[usize], k: usize| -> i64 {
        w.len() as i64 + m.degree(k) - w.iter().map(|&y| a.degree(y)).sum::<i64>()
    };
    let wt_of = |w: &[usize], k: usize| -> i64 { m.weight(k) - w.iter().map(|&y| a.weight(y)).sum::<i64>() };
    let mut basis: BTreeMap<Block, Vec<(Vec<usize>, usize)>> = BTreeMap::new();
    for w in &words {
        for k in 0..m.dim() {
            let d = deg_of(w, k);
            if d <= top {
                basis.entry((d, wt_of(w, k))).or_default().push((w.clone(), k));
            }
        }
    }
    let mut index = HashMap::new();
    for (b, v) in &basis {
        for (i, key) in v.iter().enumerate() {
            index.insert(key.clone(), (*b, i));
        }
        if v.len() > window.cap {
            return Err(Error::Infeasible { estimate: v.len(), cap: window.cap });
        }
    }
    // D(1 ⊗ w ⊗ 1) in the Bar resolution, inverted: for each word u, the
    // terms c·(x ⊗ u ⊗ y) appearing in D(1 ⊗ w ⊗ 1)
    let unit = a.unit();
    let mut incoming: HashMap<Vec<usize>, Vec<(Vec<usize>, usize, usize, Scalar)>> = HashMap::new();
    for w in &words {
        let n = w.len();
        let src = Word { left: unit, letters: w.clone(), right: unit };
        let s = sign(n % 2 == 1);
        let mut terms: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (u, c) in resolution.internal(&src) {
            add_term(&mut terms, u, &s * c);
        }
        if n > 0 {
            for (u, c) in resolution.face_sum(&src) {
                add_term(&mut terms, u, c);
            }
        }
        for (u, c) in terms {
            incoming.entry(u.letters).or_default().push((w.clone(), u.left, u.right, c));
        }
    }
    let mut diff: BTreeMap<Block, SparseMatrix> = BTreeMap::new();
    for (&(d, wt), v) in &basis {
        let Some(target) = basis.get(&(d + 1, wt)) else { continue };
        let mut cols = Vec::with_capacity(v.len());
        for (w, k) in v {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            let mut put = |key: (Vec<usize>, usize), c: Scalar| {
                if let Some(&(b, i)) = index.get(&key) {
                    debug_assert_eq!(b, (d + 1, wt));
                    add_term(&mut acc, i, c);
                }
            };
            for (j, c) in m.d(*k) {
                put((w.clone(), *j), c.clone());
            }
            let phi_odd = d % 2 != 0;
            for (src, x, y, c) in incoming.get(w).map_or(&[][..], Vec::as_slice) {
                // the left action on the resolution is x ⋆ X = (−1)^{|x| n} x X, so
                // φ(x ⊗ w ⊗ y) = (−1)^{|x|(n + |φ|)} x·φ(w)·y
                let twist = (d + w.len() as i64) % 2 != 0;
                let s = -sign(phi_odd) * sign(twist && a.degree(*x) % 2 != 0);
                let xm = m.act_left_or_symmetric(a.degree(*x), *x, *k);
                let mut val: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (j, e) in xm {
                    for (l, f) in m.act_right_or_symmetric(a.degree(*y), j, *y) {
                        add_term(&mut val, l, &e * f);
                    }
                }
                for (l, e) in val {
                    put((src.clone(), l), &s * c * e);
                }
            }
            cols.push(acc.into_iter().collect());
        }
        diff.insert((d, wt), SparseMatrix::from_columns(target.len(), cols));
    }
    let blocks = basis.iter().map(|(b, v)| (*b, v.len())).collect();
    let complex = ChainComplex::new(window.coefficients, blocks, diff, t.complete, WeightSet::All)?;
    Ok(ClassicalCochains { algebra: a.clone(), module: m.clone(), basis, index, complex })
}

impl ClassicalCochains {
    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn algebra(&self) -> &DGAlgebra {
        &self.algebra
    }

    pub fn module(&self) -> &DGModule {
        &self.module
    }

    pub fn basis(&self, b: Block) -> &[(Vec<usize>, usize)] {
        self.basis.get(&b).map_or(&[], Vec::as_slice)
    }

    pub fn degree_of(&self, w: &[usize], m: usize) -> i64 {
        w.len() as i64 + self.module.degree(m) - w.iter().map(|&y| self.algebra.degree(y)).sum::<i64>()
    }

    /// Largest degree in which the cochain groups are complete.
    pub fn complete_top(&self) -> i64 {
        self.complex.complete_range().hi.unwrap_or(i64::MAX)
    }

    pub fn to_total(&self, f: &ClassicalCochain) -> Result<BTreeMap<Block, Vec<(usize, Scalar)>>> {
        let mut out: BTreeMap<Block, BTreeMap<usize, Scalar>> = BTreeMap::new();
        for (key, x) in f {
            let (b, i) = self
                .index
                .get(key)
                .ok_or_else(|| Error::InvalidInput(format!("cochain {key:?} outside the materialized range")))?;
            add_term(out.entry(*b).or_default(), *i, x.clone());
        }
        Ok(out.into_iter().map(|(b, v)| (b, v.into_iter().collect())).collect())
    }

    pub fn from_total(&self, b: Block, v: &[(usize, Scalar)]) -> ClassicalCochain {
        let mut f = ClassicalCochain::new();
        for (i, x) in v {
            add_term(&mut f, self.basis[&b][*i].clone(), x.clone());
        }
        f
    }

    /// `δf`, within the complete range.
    pub fn coboundary(&self, f: &ClassicalCochain) -> Result<ClassicalCochain> {
        let mut out = ClassicalCochain::new();
        for (b, v) in self.to_total(f)? {
            let d = self.complex.differential(b.0, b.1);
            if d.ncols() == 0 {
                continue;
            }
            let img = d.apply(&v);
            for (k, x) in self.from_total((b.0 + 1, b.1), &img) {
                add_term(&mut out, k, x);
            }
        }
        Ok(out)
    }

    /// `f(a_1 ⊗ ⋯ ⊗ a_n)` as a vector in `M`.
    pub fn evaluate(&self, f: &ClassicalCochain, word: &[usize]) -> Vector {
        let mut acc = BTreeMap::new();
        for ((w, m), x) in f.range((word.to_vec(), 0)..) {
            if w.as_slice() != word {
                break;
            }
            add_term(&mut acc, *m, x.clone());
        }
        acc.into_iter().collect()
    }
}

/// `(f ∪ g)(a_1, …, a_{p+q}) = ± f(a_1, …, a_p) · g(a_{p+1}, …, a_{p+q})` on
/// cochains with values in `A`.
pub fn cup_product_s1(c: &ClassicalCochains, f: &ClassicalCochain, g: &ClassicalCochain) -> Result<ClassicalCochain> {
    let a = &c.algebra;
    if c.module != regular_bimodule(a) {
        return Err(Error::InvalidInput("the cup product needs cochains with values in A".into()));
    }
    let mut out = ClassicalCochain::new();
    let top = c.complete_top();
    for ((w1, m1), x) in f {
        let f_deg = c.degree_of(w1, *m1);
        let w1_deg: i64 = w1.iter().map(|&y| a.degree(y)).sum();
        for ((w2, m2), y) in g {
            let g_deg = c.degree_of(w2, *m2);
            if f_deg + g_deg > top {
                continue;
            }
            let q = w2.len() as i64;
            let s = sign((q * w1_deg + g_deg * (w1_deg - w1.len() as i64)) % 2 != 0);
            let mut word = w1.clone();
            word.extend_from_slice(w2);
            for (k, z) in a.mul(*m1, *m2) {
                add_term(&mut out, (word.clone(), *k), &s * x * y * z);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::{exterior, truncated_polynomial};
    use crate::homalg::{check_differential, homology_dims, WeightRequest};

    fn dims(c: &ChainComplex, lo: i64, hi: i64) -> Vec<usize> {
        homology_dims(c, lo, hi, &WeightRequest::Present).unwrap().descending()
    }

    #[test]
    fn dual_numbers() {
        let a = truncated_polynomial(2, 0).unwrap();
        let c = classical_hochschild(&a, &regular_bimodule(&a), &Window::new(-6, 0)).unwrap();
        check_differential(&c).unwrap();
        assert_eq!(dims(&c, -6, 0), vec![2, 1, 1, 1, 1, 1, 1]);
        let e = hh_via_enveloping(&a, &Window::new(-5, 0)).unwrap();
        check_differential(&e).unwrap();
        assert_eq!(dims(&e, -5, 0), vec![2, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn cochains_of_mixed_parity() {
        let a = crate::dga::tensor_algebra(&exterior(-1).unwrap(), &truncated_polynomial(2, -2).unwrap()).unwrap();
        let c = classical_cochains(&a, &regular_bimodule(&a), &Window::new(0, 4)).unwrap();
        check_differential(c.complex()).unwrap();
    }

    #[test]
    fn bar_of_exterior() {
        let a = exterior(-1).unwrap();
        let k = augmentation_module(&a).unwrap();
        let b = two_sided_bar(&k, &a, &k, &Window::new(-6, 0)).unwrap();
        assert_eq!(dims(&b, -6, 0), vec![1, 0, 1, 0, 1, 0, 1]);
        let reg = regular_bimodule(&a);
        let r = two_sided_bar(&reg, &a, &reg, &Window::new(-6, 0)).unwrap();
        assert_eq!(dims(&r, -6, 0), vec![1, 1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn cochains_of_dual_numbers() {
        let a = truncated_polynomial(2, 0).unwrap();
        let c = classical_cochains(&a, &regular_bimodule(&a), &Window::new(0, 4)).unwrap();
        check_differential(c.complex()).unwrap();
        for k in 0..=4 {
            assert_eq!(c.complex().dim_in_degree(k), 2);
        }
    }

    fn upper_triangular() -> DGAlgebra {
        let json = r#"{
            "name": "T2",
            "basis": [{"name": "1", "degree": 0, "weight": 0},
                      {"name": "e", "degree": 0, "weight": 0},
                      {"name": "n", "degree": 0, "weight": 1}],
            "unit": "1",
            "products": [{"left": "e", "right": "e", "result": {"e": "1"}},
                         {"left": "e", "right": "n", "result": {"n": "1"}}]
        }"#;
        serde_json::from_str::<crate::dga::AlgebraPresentation>(json).unwrap().build().unwrap()
    }

    /// Dimension of the center, by solving `zb = bz` for every basis `b`.
    fn center_dim(a: &DGAlgebra) -> usize {
        let n = a.dim();
        let mut rows = Vec::new();
        for b in 0..n {
            for k in 0..n {
                let row: Vec<Scalar> = (0..n)
                    .map(|z| {
                        let coeff = |v: &[(usize, Scalar)]| v.iter().find(|(i, _)| *i == k).map_or(Scalar::from_integer(0.into()), |(_, c)| c.clone());
                        coeff(a.mul(z, b)) - coeff(a.mul(b, z))
                    })
                    .collect();
                rows.push(row);
            }
        }
        let m = SparseMatrix::from_dense(&rows);
        n - crate::homalg::rank::rank(&m, crate::homalg::Coefficients::Rational).unwrap()
    }

    #[test]
    fn noncommutative_upper_triangular() {
        let a = upper_triangular();
        assert!(!a.is_commutative());
        let reg = regular_bimodule(&a);
        let c = classical_hochschild(&a, &reg, &Window::new(-4, 0)).unwrap();
        assert_eq!(dims(&c, -4, 0), vec![2, 0, 0, 0, 0]);
        let h = crate::hochschild::hochschild_chain(&crate::simp::circle(8), &a, &Window::new(-4, 0)).unwrap();
        assert_eq!(h.homology().unwrap().descending(), vec![2, 0, 0, 0, 0]);
        let co = classical_cochains(&a, &reg, &Window::new(0, 3)).unwrap();
        let hh = homology_dims(co.complex(), 0, 3, &WeightRequest::Present).unwrap();
        assert_eq!(hh.get(0, 0) + hh.get(0, 1), center_dim(&a));
        assert_eq!(center_dim(&a), 1);
        assert_eq!(hh.descending(), vec![0, 0, 0, 1]);
    }

    fn basis_cochains(c: &ClassicalCochains, max_deg: i64) -> Vec<(i64, ClassicalCochain)> {
        let mut out = Vec::new();
        for (&b, &dim) in c.complex().blocks() {
            if b.0 <= max_deg {
                for i in 0..dim {
                    out.push((b.0, c.from_total(b, &[(i, Scalar::from_integer(1.into()))])));
                }
            }
        }
        out
    }

    fn add(f: &mut ClassicalCochain, g: ClassicalCochain, s: &Scalar) {
        for (k, v) in g {
            add_term(f, k, s * v);
        }
    }

    #[test]
    fn cup_product_laws() {
        for a in [truncated_polynomial(2, 0).unwrap(), exterior(-1).unwrap(), truncated_polynomial(3, -2).unwrap()] {
            let c = classical_cochains(&a, &regular_bimodule(&a), &Window::new(0, 3)).unwrap();
            let top = c.complete_top();
            let gens = basis_cochains(&c, 2);
            let mut noncommuting = 0;
            for (df, f) in &gens {
                for (dg, g) in &gens {
                    let fg = cup_product_s1(&c, f, g).unwrap();
                    if df + dg + 1 <= top && df + 1 <= top && dg + 1 <= top {
                        let lhs = c.coboundary(&fg).unwrap();
                        let mut rhs = cup_product_s1(&c, &c.coboundary(f).unwrap(), g).unwrap();
                        add(&mut rhs, cup_product_s1(&c, f, &c.coboundary(g).unwrap()).unwrap(), &sign(df % 2 != 0));
                        assert_eq!(lhs, rhs, "{}", a.name());
                    }
                    let mut gf = cup_product_s1(&c, g, f).unwrap();
                    add(&mut gf, fg.clone(), &-sign(df * dg % 2 != 0));
                    noncommuting += usize::from(!gf.is_empty());
                    for (dh, h) in &gens {
                        if df + dg + dh <= top {
                            let l = cup_product_s1(&c, &fg, h).unwrap();
                            let r = cup_product_s1(&c, f, &cup_product_s1(&c, g, h).unwrap()).unwrap();
                            assert_eq!(l, r);
                        }
                    }
                }
            }
            // graded commutativity only holds up to homotopy
            if a.name() == "k[x]/x^2" {
                assert!(noncommuting > 0);
            }
        }
    }
}
