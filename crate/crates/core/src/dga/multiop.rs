//! The action of maps of finite sets on tensor powers.
//!
//! A map `f: S → T` sends `⊗_{s∈S} a_s` to `⊗_{t∈T} b_t` with
//! `b_t = Π_{f(s)=t} a_s` (product in the order of `S`, unit when the
//! preimage is empty), signed by the Koszul sign of the permutation that
//! sorts the factors into target order.

use num_traits::One;

use super::algebra::{DGAlgebra, Vector};
use super::module::DGModule;
use crate::homalg::field::{sign, Scalar};

/// A basis tensor: an optional module basis element at slot 0 and the
/// non-unit algebra factors `(slot, basis index)` sorted by slot. Slots not
/// listed hold the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tensor {
    pub module: Option<usize>,
    pub factors: Vec<(usize, usize)>,
}

impl Tensor {
    pub fn unit(module: Option<usize>) -> Self {
        Tensor { module, factors: Vec::new() }
    }

    /// Internal degree, module included.
    pub fn degree(&self, a: &DGAlgebra, m: Option<&DGModule>) -> i64 {
        let md = match (self.module, m) {
            (Some(i), Some(m)) => m.degree(i),
            _ => 0,
        };
        md + self.factors.iter().map(|&(_, x)| a.degree(x)).sum::<i64>()
    }

    pub fn weight(&self, a: &DGAlgebra, m: Option<&DGModule>) -> i64 {
        let mw = match (self.module, m) {
            (Some(i), Some(m)) => m.weight(i),
            _ => 0,
        };
        mw + self.factors.iter().map(|&(_, x)| a.weight(x)).sum::<i64>()
    }
}

#[derive(Debug, Clone, Copy)]
enum Factor {
    Module(usize),
    Alg(usize),
}

/// Koszul sign of the stable sort of `items` by key; `odd[i]` marks factors of
/// odd degree.
pub(crate) fn sorting_sign(keys: &[usize], odd: &[bool]) -> Scalar {
    let mut inversions = 0usize;
    for i in 0..keys.len() {
        if !odd[i] {
            continue;
        }
        for j in i + 1..keys.len() {
            if odd[j] && keys[i] > keys[j] {
                inversions += 1;
            }
        }
    }
    sign(inversions % 2 == 1)
}

/// Products of a sequence of factors already grouped by target slot, in
/// group order; the Cartesian expansion of the per-slot products.
fn expand(
    a: &DGAlgebra,
    m: Option<&DGModule>,
    groups: Vec<(usize, Vec<Factor>)>,
    coefficient: Scalar,
) -> Vec<(Tensor, Scalar)> {
    let mut partial: Vec<(Tensor, Scalar)> = vec![(Tensor::unit(None), coefficient)];
    for (slot, group) in groups {
        let module_pos = group.iter().position(|f| matches!(f, Factor::Module(_)));
        let (is_module, v): (bool, Vector) = match module_pos {
            Some(p) => {
                let m = m.expect("module factor without a module");
                let Factor::Module(i) = group[p] else { unreachable!() };
                let mut v: Vector = vec![(i, Scalar::one())];
                let alg = |f: &Factor| match *f {
                    Factor::Alg(x) => x,
                    Factor::Module(_) => unreachable!("one module factor per tensor"),
                };
                for f in group[..p].iter().rev() {
                    let x = alg(f);
                    let mut acc = std::collections::BTreeMap::new();
                    for (j, c) in &v {
                        super::algebra::add_scaled(&mut acc, c, &m.act_left_or_symmetric(a.degree(x), x, *j));
                    }
                    v = super::algebra::collect(acc);
                }
                for f in &group[p + 1..] {
                    let x = alg(f);
                    let mut acc = std::collections::BTreeMap::new();
                    for (j, c) in &v {
                        super::algebra::add_scaled(&mut acc, c, &m.act_right_or_symmetric(a.degree(x), *j, x));
                    }
                    v = super::algebra::collect(acc);
                }
                (true, v)
            }
            None => {
                let Factor::Alg(first) = group[0] else { unreachable!() };
                let mut v: Vector = vec![(first, Scalar::one())];
                for f in &group[1..] {
                    let Factor::Alg(x) = *f else { unreachable!() };
                    v = a.mul_vec(&v, &[(x, Scalar::one())]);
                }
                (false, v)
            }
        };
        if v.is_empty() {
            return Vec::new();
        }
        let mut next = Vec::with_capacity(partial.len() * v.len());
        for (t, c) in &partial {
            for (k, x) in &v {
                let mut t2 = t.clone();
                if is_module {
                    t2.module = Some(*k);
                } else if *k != a.unit() {
                    t2.factors.push((slot, *k));
                }
                next.push((t2, c * x));
            }
        }
        partial = next;
    }
    partial
}

/// `f_*` applied to a basis tensor over `S = 0..f.len()`.
///
/// With a module, slot 0 carries the module element and `f(0)` must be `0`;
/// algebra factors landing in slot 0 act on it from the right.
pub fn multiop(a: &DGAlgebra, m: Option<&DGModule>, f: &[usize], t: &Tensor) -> Vec<(Tensor, Scalar)> {
    multiop_wrapping(a, m, f, t, false)
}

/// As [`multiop`]; with `wrap_left`, algebra factors landing in slot 0 act on
/// the module from the left instead (the cyclic order of the circle, where
/// the last slot precedes the basepoint).
pub fn multiop_wrapping(
    a: &DGAlgebra,
    m: Option<&DGModule>,
    f: &[usize],
    t: &Tensor,
    wrap_left: bool,
) -> Vec<(Tensor, Scalar)> {
    let mut items: Vec<(usize, Factor, i64)> = Vec::with_capacity(t.factors.len() + 1);
    if let Some(i) = t.module {
        debug_assert_eq!(f[0], 0, "basepoint must be preserved");
        let deg = m.map_or(0, |m| m.degree(i));
        items.push((1, Factor::Module(i), deg));
    }
    for &(s, x) in &t.factors {
        let key = if f[s] == 0 && t.module.is_some() {
            if wrap_left { 0 } else { 2 }
        } else {
            3 * f[s] + 2
        };
        items.push((key, Factor::Alg(x), a.degree(x)));
    }
    product_of_items(a, m, items, t.module)
}

fn product_of_items(
    a: &DGAlgebra,
    m: Option<&DGModule>,
    items: Vec<(usize, Factor, i64)>,
    module: Option<usize>,
) -> Vec<(Tensor, Scalar)> {
    let keys: Vec<usize> = items.iter().map(|x| x.0).collect();
    let odd: Vec<bool> = items.iter().map(|x| x.2 % 2 != 0).collect();
    let s = sorting_sign(&keys, &odd);
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by_key(|&i| keys[i]);
    let mut groups: Vec<(usize, Vec<Factor>)> = Vec::new();
    for i in order {
        let (key, f, _) = items[i];
        let slot = key / 3;
        match groups.last_mut() {
            Some((g, v)) if *g == slot => v.push(f),
            _ => groups.push((slot, vec![f])),
        }
    }
    let out = expand(a, m, groups, s);
    debug_assert!(module.is_none() || out.iter().all(|(t, _)| t.module.is_some()));
    out
}

/// Slotwise product of two tensors on the same index set:
/// `(u_0 ⊗ u_1 ⊗ ⋯)(v_0 ⊗ v_1 ⊗ ⋯) = ± u_0v_0 ⊗ u_1v_1 ⊗ ⋯`, with module
/// elements read as algebra elements (the module must be the algebra).
pub fn levelwise_product(a: &DGAlgebra, u: &Tensor, v: &Tensor) -> Vec<(Tensor, Scalar)> {
    let mut items: Vec<(usize, Factor, i64)> = Vec::new();
    let mut push_all = |t: &Tensor| {
        if let Some(i) = t.module {
            items.push((2, Factor::Alg(i), a.degree(i)));
        }
        for &(s, x) in &t.factors {
            items.push((3 * s + 2, Factor::Alg(x), a.degree(x)));
        }
    };
    push_all(u);
    push_all(v);
    let pointed = u.module.is_some();
    let mut out = product_of_items(a, None, items, None);
    if pointed {
        // move slot 0 back into the module position
        for (t, _) in &mut out {
            let pos = t.factors.iter().position(|&(s, _)| s == 0);
            t.module = Some(match pos {
                Some(p) => t.factors.remove(p).1,
                None => a.unit(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::algebra::exterior;
    use crate::homalg::field::int;

    #[test]
    fn collapse_kills_square() {
        let a = exterior(-1).unwrap();
        let x = a.index_of("x").unwrap();
        let t = Tensor { module: None, factors: vec![(0, x), (1, x)] };
        assert!(multiop(&a, None, &[0, 0], &t).is_empty());
        let id = multiop(&a, None, &[0, 1], &t);
        assert_eq!(id, vec![(t.clone(), int(1))]);
    }

    #[test]
    fn swapping_odd_factors_is_signed() {
        let a = exterior(-1).unwrap();
        let x = a.index_of("x").unwrap();
        let t = Tensor { module: None, factors: vec![(0, x), (2, x)] };
        let out = multiop(&a, None, &[1, 0, 0], &t);
        assert_eq!(out, vec![(Tensor { module: None, factors: vec![(0, x), (1, x)] }, int(-1))]);
    }
}
