//! Exhaustive law checks for the products on small bases, and the product
//! table of `HH^*(A, A)`.

use std::collections::BTreeMap;

use num_traits::One;
use serde::Serialize;

use super::chains::{add_term, Chain, HochschildComplex};
use super::classical::{cup_product_s1, ClassicalCochain, ClassicalCochains};
use super::products::shuffle_product;
use crate::error::Result;
use crate::homalg::field::{format_scalar, sign, Scalar};
use crate::homalg::{Block, HomologyBasis};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub checks: usize,
    /// One line per failed identity.
    pub failures: Vec<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn scaled<K: Ord + Clone>(c: &BTreeMap<K, Scalar>, s: &Scalar) -> BTreeMap<K, Scalar> {
    c.iter().map(|(k, x)| (k.clone(), s * x)).collect()
}

fn plus<K: Ord + Clone>(a: &BTreeMap<K, Scalar>, b: &BTreeMap<K, Scalar>) -> BTreeMap<K, Scalar> {
    let mut out = a.clone();
    for (k, x) in b {
        add_term(&mut out, k.clone(), x.clone());
    }
    out
}

/// Basis chains `1·t` of the levels `0..=max_level`.
pub fn basis_chains(h: &HochschildComplex, max_level: usize) -> Vec<(i64, Chain)> {
    let mut out = Vec::new();
    for n in 0..=max_level.min(h.level_count() - 1) {
        for (b, _) in h.level_dims(n) {
            for t in h.level_basis(n, b) {
                let mut c = Chain::new();
                c.insert((n, t.clone()), Scalar::one());
                out.push((h.total_degree(n, t), c));
            }
        }
    }
    out
}

/// Unit, graded commutativity and the Leibniz rule on basis chains of
/// levels `≤ (N − 1)/2`, associativity on levels `≤ (N − 1)/3`, where `N`
/// is the number of materialized levels.
pub fn shuffle_laws(h: &HochschildComplex) -> Result<LawReport> {
    let mut r = LawReport::default();
    let top = h.level_count().saturating_sub(1);
    let gens = basis_chains(h, top / 2);
    let unit = h.unit();
    for (i, (du, u)) in gens.iter().enumerate() {
        r.record(shuffle_product(h, &unit, u)? == *u, || format!("unit on generator {i}"));
        for (j, (dv, v)) in gens.iter().enumerate() {
            let uv = shuffle_product(h, u, v)?;
            let vu = shuffle_product(h, v, u)?;
            r.record(uv == scaled(&vu, &sign(du * dv % 2 != 0)), || format!("commutativity on ({i}, {j})"));
            let lhs = h.boundary(&uv);
            let rhs = plus(
                &shuffle_product(h, &h.boundary(u), v)?,
                &scaled(&shuffle_product(h, u, &h.boundary(v))?, &sign(du % 2 != 0)),
            );
            r.record(lhs == rhs, || format!("Leibniz on ({i}, {j})"));
        }
    }
    let small = basis_chains(h, top / 3);
    for (i, (_, u)) in small.iter().enumerate() {
        for (j, (_, v)) in small.iter().enumerate() {
            let uv = shuffle_product(h, u, v)?;
            for (k, (_, w)) in small.iter().enumerate() {
                let l = shuffle_product(h, &uv, w)?;
                let rr = shuffle_product(h, u, &shuffle_product(h, v, w)?)?;
                r.record(l == rr, || format!("associativity on ({i}, {j}, {k})"));
            }
        }
    }
    Ok(r)
}

/// Basis cochains of degree `≤ max_degree`.
pub fn basis_cochains(c: &ClassicalCochains, max_degree: i64) -> Vec<(i64, ClassicalCochain)> {
    let mut out = Vec::new();
    for (&b, &dim) in c.complex().blocks() {
        if b.0 <= max_degree {
            for i in 0..dim {
                out.push((b.0, c.from_total(b, &[(i, Scalar::one())])));
            }
        }
    }
    out
}

/// The Leibniz rule and strict associativity of the cup product on basis
/// cochains of degree `≤ max_degree`, wherever the result is complete.
pub fn cup_laws(c: &ClassicalCochains, max_degree: i64) -> Result<LawReport> {
    let mut r = LawReport::default();
    let top = c.complete_top();
    let gens = basis_cochains(c, max_degree);
    for (i, (df, f)) in gens.iter().enumerate() {
        for (j, (dg, g)) in gens.iter().enumerate() {
            let fg = cup_product_s1(c, f, g)?;
            if df + dg < top && *df < top && *dg < top {
                let lhs = c.coboundary(&fg)?;
                let rhs = plus(
                    &cup_product_s1(c, &c.coboundary(f)?, g)?,
                    &scaled(&cup_product_s1(c, f, &c.coboundary(g)?)?, &sign(df % 2 != 0)),
                );
                r.record(lhs == rhs, || format!("Leibniz on ({i}, {j})"));
            }
            for (k, (dh, h)) in gens.iter().enumerate() {
                if df + dg + dh <= top {
                    let left = cup_product_s1(c, &fg, h)?;
                    let right = cup_product_s1(c, f, &cup_product_s1(c, g, h)?)?;
                    r.record(left == right, || format!("associativity on ({i}, {j}, {k})"));
                }
            }
        }
    }
    Ok(r)
}

/// A basis class of `HH^*`: degree, weight and index in its block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ClassLabel {
    pub degree: i64,
    pub weight: i64,
    pub index: usize,
}

impl std::fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "h{}_{}.{}", self.degree, self.weight, self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CupEntry {
    pub left: ClassLabel,
    pub right: ClassLabel,
    /// `(class, coefficient)` with coefficients as exact strings.
    pub product: Vec<(ClassLabel, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CupTable {
    pub classes: Vec<ClassLabel>,
    pub entries: Vec<CupEntry>,
}

/// Products of the basis classes of `HH^k(A, A)` for `lo ≤ k ≤ hi`, kept
/// when the product degree is certified.
pub fn cup_table(c: &ClassicalCochains, lo: i64, hi: i64) -> Result<CupTable> {
    let cx = c.complex();
    let cert = cx.certified_window();
    let mut bases: BTreeMap<Block, HomologyBasis> = BTreeMap::new();
    let weights = cx.weight_values();
    for k in lo..=hi {
        for &w in &weights {
            if cert.contains(k) {
                let b = HomologyBasis::new(cx, k, w)?;
                if !b.is_empty() {
                    bases.insert((k, w), b);
                }
            }
        }
    }
    let classes: Vec<ClassLabel> = bases
        .iter()
        .flat_map(|(&(degree, weight), b)| (0..b.len()).map(move |index| ClassLabel { degree, weight, index }))
        .collect();
    let rep = |l: &ClassLabel| c.from_total((l.degree, l.weight), &bases[&(l.degree, l.weight)].representatives()[l.index]);
    let mut entries = Vec::new();
    for l in &classes {
        for r in &classes {
            let (k, w) = (l.degree + r.degree, l.weight + r.weight);
            if !cert.contains(k) || k > hi {
                continue;
            }
            let prod = cup_product_s1(c, &rep(l), &rep(r))?;
            let total = c.to_total(&prod)?;
            let v = total.get(&(k, w)).cloned().unwrap_or_default();
            let product = match bases.get(&(k, w)) {
                Some(b) => b
                    .coordinates(&v)?
                    .into_iter()
                    .map(|(i, x)| (ClassLabel { degree: k, weight: w, index: i }, format_scalar(&x)))
                    .collect(),
                None => Vec::new(),
            };
            entries.push(CupEntry { left: *l, right: *r, product });
        }
    }
    Ok(CupTable { classes, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::{exterior, regular_bimodule, truncated_polynomial};
    use crate::hochschild::{classical_cochains, hochschild_chain, Window};
    use crate::simp::circle;

    #[test]
    fn laws_hold() {
        let a = exterior(-1).unwrap();
        let h = hochschild_chain(&circle(6), &a, &Window::new(-4, 0)).unwrap();
        let r = shuffle_laws(&h).unwrap();
        assert!(r.passed() && r.checks > 10, "{r:?}");
        let c = classical_cochains(&a, &regular_bimodule(&a), &Window::new(0, 3)).unwrap();
        let r = cup_laws(&c, 2).unwrap();
        assert!(r.passed() && r.checks > 10, "{r:?}");
    }

    #[test]
    fn unit_class_acts_trivially() {
        let a = truncated_polynomial(2, 0).unwrap();
        let c = classical_cochains(&a, &regular_bimodule(&a), &Window::new(0, 4)).unwrap();
        let t = cup_table(&c, 0, 3).unwrap();
        // the class of the unit cochain is the unit of HH^*
        let one = t
            .classes
            .iter()
            .copied()
            .find(|l| {
                let e = t.entries.iter().find(|e| e.left == *l && e.right == *l).unwrap();
                l.degree == 0 && e.product == vec![(*l, "1".to_string())]
            })
            .unwrap();
        for e in t.entries.iter().filter(|e| e.left == one) {
            assert_eq!(e.product, vec![(e.right, "1".to_string())]);
        }
        assert_eq!(t.classes.iter().filter(|l| l.degree == 0).count(), 2);
    }
}
