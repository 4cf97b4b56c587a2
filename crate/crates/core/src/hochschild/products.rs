//! Products: the shuffle product on Hochschild chains of a commutative
//! algebra, and the pairing of cochains over `X` and `Y` into cochains over
//! the wedge `X ∨ Y`.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::One;

use super::chains::{add_term, Chain, Frame};
use super::cochains::{Cochain, HochschildCochains};
use super::HochschildComplex;
use crate::dga::{levelwise_product, multiop, regular_bimodule, Tensor};
use crate::error::{Error, Result};
use crate::homalg::field::{sign, Scalar};
use crate::simp::wedge;

/// Applies `s_{j_k} ⋯ s_{j_1}` (ascending `js`) to a tensor at level `n`.
fn degenerate(frame: &Frame, n: usize, js: &[usize], t: &Tensor) -> Vec<(Tensor, Scalar)> {
    let mut cur = vec![(t.clone(), Scalar::one())];
    for (k, &j) in js.iter().enumerate() {
        let mut next = Vec::new();
        for (u, c) in &cur {
            for (v, x) in frame.degeneracy(n + k, j, u) {
                next.push((v, c * x));
            }
        }
        cur = next;
    }
    cur
}

/// `u × v = Σ_{(μ,ν)} sgn(μ,ν) s_ν(u) · s_μ(v)`, with the Koszul sign of
/// moving the simplicial suspension of `v` past the internal part of `u`.
///
/// Needs a commutative algebra, with `A` itself at the basepoint when the
/// space is pointed. The result lies at level `p + q`, which must be
/// materialized.
pub fn shuffle_product(h: &HochschildComplex, u: &Chain, v: &Chain) -> Result<Chain> {
    let frame = h.frame();
    if !frame.algebra.is_commutative() {
        return Err(Error::NonCommutative);
    }
    if frame.module.is_some() && !h.module_is_algebra() {
        return Err(Error::InvalidInput("the shuffle product needs A at the basepoint".into()));
    }
    let top = frame.space.top_level();
    let mut out = Chain::new();
    for ((p, t1), x) in u {
        let int1 = frame.degree(t1);
        for ((q, t2), y) in v {
            let n = p + q;
            if n > top {
                return Err(Error::InsufficientLevels { needed: n, available: top });
            }
            let koszul = sign((*q as i64 * int1) % 2 != 0);
            for mu in (0..n).combinations(*p) {
                let nu: Vec<usize> = (0..n).filter(|i| !mu.contains(i)).collect();
                let inversions: usize = mu.iter().enumerate().map(|(i, &m)| m - i).sum();
                let s = &koszul * sign(inversions % 2 == 1);
                let left = degenerate(frame, *p, &nu, t1);
                let right = degenerate(frame, *q, &mu, t2);
                for (a1, c1) in &left {
                    for (a2, c2) in &right {
                        for (w, c) in levelwise_product(&frame.algebra, a1, a2) {
                            if frame.survives(n, &w) {
                                add_term(&mut out, (n, w), &s * x * y * c1 * c2 * c);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Composite of faces taking a tensor at level `from` to level `to`: the
/// last face each time when `front`, `d_0` otherwise. Single faces do not
/// preserve degenerate tensors, so only the result is reduced.
fn faces_down(frame: &Frame, from: usize, to: usize, t: &Tensor, front: bool) -> Vec<(Tensor, Scalar)> {
    let mut cur: BTreeMap<Tensor, Scalar> = BTreeMap::new();
    cur.insert(t.clone(), Scalar::one());
    for n in (to + 1..=from).rev() {
        let r = if front { n } else { 0 };
        let f = frame.space.face_table(n, r);
        let mut next = BTreeMap::new();
        for (u, c) in &cur {
            for (v, x) in multiop(&frame.algebra, frame.module.as_ref(), f, u) {
                add_term(&mut next, v, c * x);
            }
        }
        cur = next;
    }
    cur.into_iter().filter(|(u, _)| frame.survives(to, u)).collect()
}

/// `f(a ⊗ t) = (−1)^{|a|(n + |f|)} a · f(1 ⊗ t)` at level `n` as a list of `(A basis, coefficient,
/// degree of the cochain term)`.
fn apply_cochain(c: &HochschildCochains, f: &Cochain, level: usize, t: &Tensor) -> Vec<(usize, Scalar, i64)> {
    let a = c.algebra();
    let a0 = t.module.expect("pointed tensor");
    let key = Tensor { module: Some(a.unit()), factors: t.factors.clone() };
    let mut out = Vec::new();
    for (m, x) in c.evaluate(f, level, &key) {
        let fdeg = c.degree_of(level, &key, m);
        let s = sign(a.degree(a0) % 2 != 0 && (fdeg + level as i64) % 2 != 0);
        for (k, y) in a.mul(a0, m) {
            out.push((*k, &s * &x * y, fdeg));
        }
    }
    out
}

/// `f ∨ g`: the cochain on `X ∨ Y` given by `(f ⊗ g) ∘ AW`, where the
/// Alexander–Whitney map pairs front faces on the `X` part with back faces on
/// the `Y` part. Cochains take values in `A`.
///
/// `target` must be built over `wedge(X, Y)` with the same algebra. Terms
/// above its complete range are dropped.
pub fn wedge_product(
    target: &HochschildCochains,
    fx: &HochschildCochains,
    f: &Cochain,
    gy: &HochschildCochains,
    g: &Cochain,
) -> Result<Cochain> {
    let a = target.algebra();
    let reg = regular_bimodule(a);
    for c in [target, fx, gy] {
        if c.algebra() != a || c.target() != &reg {
            return Err(Error::InvalidInput("wedge products need cochains with values in one algebra A".into()));
        }
    }
    let (x, y) = (fx.space(), gy.space());
    let levels = target.tensors().iter().map(|(n, _)| *n).max().unwrap_or(0);
    for s in [x, y] {
        if s.top_level() < levels {
            return Err(Error::InsufficientLevels { needed: levels, available: s.top_level() });
        }
    }
    let k = levels.min(target.space().top_level());
    let expected = wedge(&x.truncate(k), &y.truncate(k))?.renamed("");
    if target.space().truncate(k).renamed("") != expected {
        return Err(Error::InvalidInput(format!(
            "{} is not the wedge of {} and {}",
            target.space().name(),
            x.name(),
            y.name()
        )));
    }
    let top = target.complete_top();
    let unit = a.unit();
    let mut out = Cochain::new();
    for (n, t) in target.tensors() {
        let nx = x.size(n);
        let tx = Tensor { module: Some(unit), factors: t.factors.iter().copied().filter(|&(s, _)| s < nx).collect() };
        let ty = Tensor {
            module: Some(unit),
            factors: t.factors.iter().filter(|&&(s, _)| s >= nx).map(|&(s, v)| (s - nx + 1, v)).collect(),
        };
        let deg_x = fx.frame().degree(&tx);
        for p in 0..=n {
            let q = n - p;
            let fronts = faces_down(fx.frame(), n, p, &tx, true);
            if fronts.is_empty() {
                continue;
            }
            let backs = faces_down(gy.frame(), n, q, &ty, false);
            for (u, cu) in &fronts {
                let fu = apply_cochain(fx, f, p, u);
                if fu.is_empty() {
                    continue;
                }
                for (v, cv) in &backs {
                    for (gk, gx, gdeg) in apply_cochain(gy, g, q, v) {
                        let s = sign((q as i64 * deg_x + gdeg * (deg_x - p as i64)) % 2 != 0);
                        for (fk, fxv, fdeg) in &fu {
                            if fdeg + gdeg > top {
                                continue;
                            }
                            for (r, z) in a.mul(*fk, gk) {
                                add_term(&mut out, (n, t.clone(), *r), &s * cu * cv * fxv * &gx * z);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::{exterior, truncated_polynomial};
    use crate::hochschild::{hochschild_chain, hochschild_cochain, Window};
    use crate::homalg::Block;
    use crate::simp::{circle, point, sphere_small, SimplicialSet};

    fn basis_chains(h: &HochschildComplex, max_level: usize) -> Vec<Chain> {
        let mut out = Vec::new();
        for n in 0..=max_level.min(h.level_count() - 1) {
            for (b, _) in h.level_dims(n) {
                for t in h.level_basis(n, b) {
                    let mut c = Chain::new();
                    c.insert((n, t.clone()), Scalar::one());
                    out.push(c);
                }
            }
        }
        out
    }

    fn total_degree(h: &HochschildComplex, c: &Chain) -> i64 {
        let ((n, t), _) = c.iter().next().unwrap();
        h.total_degree(*n, t)
    }

    fn scale(c: &Chain, s: &Scalar) -> Chain {
        c.iter().map(|(k, x)| (k.clone(), s * x)).collect()
    }

    fn sum(a: &Chain, b: &Chain) -> Chain {
        let mut out = a.clone();
        for (k, x) in b {
            add_term(&mut out, k.clone(), x.clone());
        }
        out
    }

    #[test]
    fn shuffle_laws_on_the_circle() {
        let a = exterior(-1).unwrap();
        let h = hochschild_chain(&circle(6), &a, &Window::new(-4, 0)).unwrap();
        let gens = basis_chains(&h, (h.level_count() - 1) / 2);
        let unit = h.unit();
        for u in &gens {
            assert_eq!(&shuffle_product(&h, &unit, u).unwrap(), u);
            for v in &gens {
                let (du, dv) = (total_degree(&h, u), total_degree(&h, v));
                let uv = shuffle_product(&h, u, v).unwrap();
                let vu = shuffle_product(&h, v, u).unwrap();
                assert_eq!(uv, scale(&vu, &sign(du * dv % 2 != 0)));
                let lhs = h.boundary(&uv);
                let rhs = sum(
                    &shuffle_product(&h, &h.boundary(u), v).unwrap(),
                    &scale(&shuffle_product(&h, u, &h.boundary(v)).unwrap(), &sign(du % 2 != 0)),
                );
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn shuffle_is_associative() {
        let a = truncated_polynomial(2, 0).unwrap();
        let h = hochschild_chain(&circle(6), &a, &Window::new(-4, 0)).unwrap();
        let gens = basis_chains(&h, (h.level_count() - 1) / 3);
        assert!(gens.len() > 1);
        for u in &gens {
            for v in &gens {
                for w in &gens {
                    let l = shuffle_product(&h, &shuffle_product(&h, u, v).unwrap(), w).unwrap();
                    let r = shuffle_product(&h, u, &shuffle_product(&h, v, w).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    fn basis_cochains(c: &HochschildCochains, max_deg: i64) -> Vec<(Block, Cochain)> {
        let mut out = Vec::new();
        for (&b, &dim) in c.complex().blocks() {
            if b.0 > max_deg {
                continue;
            }
            for i in 0..dim {
                out.push((b, c.from_total(b, &[(i, Scalar::one())])));
            }
        }
        out
    }

    fn check_wedge_leibniz(a: &crate::dga::DGAlgebra, x: &SimplicialSet, y: &SimplicialSet, w: &Window) {
        let reg = regular_bimodule(a);
        let cx = hochschild_cochain(x, a, &reg, w).unwrap();
        let cy = hochschild_cochain(y, a, &reg, w).unwrap();
        let cxy = hochschild_cochain(&wedge(x, y).unwrap(), a, &reg, w).unwrap();
        let top = cxy.complete_top();
        let mut checked = 0;
        for (bf, f) in basis_cochains(&cx, top) {
            for (bg, g) in basis_cochains(&cy, top) {
                // coboundaries of the factors must be complete too
                if bf.0 + bg.0 + 1 > top || bf.0 + 1 > cx.complete_top() || bg.0 + 1 > cy.complete_top() {
                    continue;
                }
                let fg = wedge_product(&cxy, &cx, &f, &cy, &g).unwrap();
                let lhs = cxy.coboundary(&fg).unwrap();
                let mut rhs = wedge_product(&cxy, &cx, &cx.coboundary(&f).unwrap(), &cy, &g).unwrap();
                let s = sign(bf.0 % 2 != 0);
                for (k, v) in wedge_product(&cxy, &cx, &f, &cy, &cy.coboundary(&g).unwrap()).unwrap() {
                    add_term(&mut rhs, k, &s * v);
                }
                assert_eq!(lhs, rhs, "f in {bf:?}, g in {bg:?}");
                checked += 1;
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn wedge_is_a_cochain_map() {
        let dual = truncated_polynomial(2, 0).unwrap();
        check_wedge_leibniz(&dual, &circle(8), &sphere_small(2, 8).unwrap(), &Window::new(0, 2));
        let graded = [exterior(-1).unwrap(), exterior(-3).unwrap(), truncated_polynomial(3, -2).unwrap()];
        for a in &graded {
            check_wedge_leibniz(a, &circle(8), &circle(8), &Window::new(-1, 1));
            check_wedge_leibniz(a, &sphere_small(2, 8).unwrap(), &circle(8), &Window::new(-1, 1));
        }
    }

    #[test]
    fn point_unit_is_neutral() {
        let a = truncated_polynomial(2, 0).unwrap();
        let reg = regular_bimodule(&a);
        let w = Window::new(0, 2);
        let x = circle(6);
        let cx = hochschild_cochain(&x, &a, &reg, &w).unwrap();
        let cp = hochschild_cochain(&point(6), &a, &reg, &w).unwrap();
        let xp = wedge(&x, &point(6)).unwrap();
        let cxp = hochschild_cochain(&xp, &a, &reg, &w).unwrap();
        let one = cp.constant(a.unit());
        for (_, f) in basis_cochains(&cx, 2) {
            let fg = wedge_product(&cxp, &cx, &f, &cp, &one).unwrap();
            assert_eq!(fg, f);
        }
    }
}
