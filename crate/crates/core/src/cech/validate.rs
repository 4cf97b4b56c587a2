//! Exhaustive audit of the prefactorization axioms on a finite poset.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::Serialize;

use super::prefact::{permutation_sign, MonoidalMode, PrefactorizationData};
use crate::dga::Vector;
use crate::homalg::field::{sign, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    ChainMap,
    Unit,
    Symmetry,
    Associativity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::ChainMap => "chain map",
            Axiom::Unit => "unit",
            Axiom::Symmetry => "symmetry",
            Axiom::Associativity => "associativity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub axiom: Axiom,
    /// The family (or nesting of families) and target, by name.
    pub nesting: String,
    pub input: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails for {} on {}", self.axiom, self.nesting, self.input)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    /// Number of identities checked.
    pub checks: usize,
    pub witness: Option<Witness>,
}

/// Basis tensors of the values on `family`, in family order.
pub(crate) fn input_tuples(f: &PrefactorizationData, family: &[usize]) -> Vec<Vec<usize>> {
    if family.is_empty() {
        return vec![Vec::new()];
    }
    family.iter().map(|&u| 0..f.value(u).dim()).multi_cartesian_product().collect()
}

fn normalize(v: Vector) -> BTreeMap<usize, Scalar> {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, x) in v {
        *acc.entry(i).or_insert_with(Scalar::zero) += x;
    }
    acc.retain(|_, x| !x.is_zero());
    acc
}

/// `⊗_j v_j` as a sum of basis tensors.
pub(crate) fn tensor_vectors(parts: &[Vector]) -> Vec<(Vec<usize>, Scalar)> {
    let mut acc: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), Scalar::one())];
    for p in parts {
        acc = acc
            .iter()
            .flat_map(|(xs, c)| {
                p.iter().map(move |(i, x)| {
                    let mut ys = xs.clone();
                    ys.push(*i);
                    (ys, c * x)
                })
            })
            .collect();
    }
    acc
}

struct Auditor<'a> {
    f: &'a PrefactorizationData,
    checks: usize,
}

impl Auditor<'_> {
    fn names(&self, family: &[usize]) -> String {
        format!("{{{}}}", family.iter().map(|&u| self.f.poset().name(u)).join(", "))
    }

    fn input(&self, family: &[usize], xs: &[usize]) -> String {
        if xs.is_empty() {
            return "1".into();
        }
        family.iter().zip(xs).map(|(&u, &x)| self.f.value(u).names[x].clone()).join(" ⊗ ")
    }

    fn degrees(&self, family: &[usize], xs: &[usize]) -> Vec<i64> {
        family.iter().zip(xs).map(|(&u, &x)| self.f.value(u).degrees[x]).collect()
    }

    fn expect(&mut self, ok: bool, axiom: Axiom, nesting: String, input: String) -> Result<(), Witness> {
        self.checks += 1;
        if ok {
            Ok(())
        } else {
            Err(Witness { axiom, nesting, input })
        }
    }

    fn chain_map(&mut self, family: &[usize], w: usize, xs: &[usize]) -> Result<(), Witness> {
        let f = self.f;
        let img = f.rho(family, w, xs);
        let mut lhs = Vec::new();
        for (i, x) in img {
            lhs.extend(f.value(w).d[i].iter().map(|(j, y)| (*j, &x * y)));
        }
        let mut rhs = Vec::new();
        let mut parity = false;
        for j in 0..family.len() {
            let s = sign(parity);
            for (y, c) in &f.value(family[j]).d[xs[j]] {
                let mut ys = xs.to_vec();
                ys[j] = *y;
                rhs.extend(f.rho(family, w, &ys).into_iter().map(|(i, x)| (i, &s * c * x)));
            }
            parity ^= f.value(family[j]).degrees[xs[j]] % 2 != 0;
        }
        let ok = normalize(lhs) == normalize(rhs);
        self.expect(ok, Axiom::ChainMap, format!("{} ⊆ {}", self.names(family), f.poset().name(w)), self.input(family, xs))
    }

    fn symmetry(&mut self, family: &[usize], w: usize, xs: &[usize]) -> Result<(), Witness> {
        let f = self.f;
        let n = family.len();
        let perms: Vec<Vec<usize>> = if n <= 4 {
            (0..n).permutations(n).collect()
        } else {
            (0..n - 1)
                .map(|i| {
                    let mut p: Vec<usize> = (0..n).collect();
                    p.swap(i, i + 1);
                    p
                })
                .collect()
        };
        let base = normalize(f.rho(family, w, xs));
        let degrees = self.degrees(family, xs);
        for p in perms {
            let fam: Vec<usize> = p.iter().map(|&i| family[i]).collect();
            let ys: Vec<usize> = p.iter().map(|&i| xs[i]).collect();
            let s = permutation_sign(&p, &degrees);
            let expected: BTreeMap<usize, Scalar> = base.iter().map(|(i, x)| (*i, &s * x)).collect();
            let ok = normalize(f.rho(&fam, w, &ys)) == expected;
            self.expect(ok, Axiom::Symmetry, format!("{} ⊆ {}", self.names(&fam), f.poset().name(w)), self.input(&fam, &ys))?;
        }
        Ok(())
    }

    fn associativity(&mut self, w: usize, outer: &[usize], inner: &[Vec<usize>]) -> Result<(), Witness> {
        let f = self.f;
        let flat: Vec<usize> = inner.concat();
        let nesting = format!(
            "{} ⊆ {} ⊆ {}",
            inner.iter().map(|v| self.names(v)).join(" ⊔ "),
            self.names(outer),
            f.poset().name(w)
        );
        for xs in input_tuples(f, &flat) {
            let direct = normalize(f.rho(&flat, w, &xs));
            let mut pos = 0;
            let parts: Vec<Vector> = inner
                .iter()
                .zip(outer)
                .map(|(fam, &v)| {
                    let part = f.rho(fam, v, &xs[pos..pos + fam.len()]);
                    pos += fam.len();
                    part
                })
                .collect();
            let composed = normalize(f.rho_vec(outer, w, &tensor_vectors(&parts)));
            self.expect(direct == composed, Axiom::Associativity, nesting.clone(), self.input(&flat, &xs))?;
        }
        Ok(())
    }

    fn run_tensor(&mut self) -> Result<(), Witness> {
        let f = self.f;
        let p = f.poset();
        for w in 0..p.len() {
            let below = p.below(w);
            let families = p.disjoint_families(&below);
            for fam in &families {
                for xs in input_tuples(f, fam) {
                    self.chain_map(fam, w, &xs)?;
                    if fam.as_slice() == [w] {
                        let ok = normalize(f.rho(fam, w, &xs)) == normalize(vec![(xs[0], Scalar::one())]);
                        self.expect(ok, Axiom::Unit, p.name(w).to_string(), self.input(fam, &xs))?;
                    }
                    if fam.len() > 1 {
                        self.symmetry(fam, w, &xs)?;
                    }
                }
            }
            for outer in &families {
                let choices: Vec<Vec<Vec<usize>>> =
                    outer.iter().map(|&v| p.disjoint_families(&p.below(v))).collect();
                let nestings: Vec<Vec<Vec<usize>>> = if outer.is_empty() {
                    vec![Vec::new()]
                } else {
                    choices.iter().map(|c| c.iter().cloned()).multi_cartesian_product().collect()
                };
                for inner in nestings {
                    self.associativity(w, outer, &inner)?;
                }
            }
        }
        Ok(())
    }

    fn run_coproduct(&mut self) -> Result<(), Witness> {
        let f = self.f;
        let p = f.poset();
        for w in 0..p.len() {
            for v in p.below(w) {
                for x in 0..f.value(v).dim() {
                    self.chain_map(&[v], w, &[x])?;
                    if v == w {
                        let ok = normalize(f.rho(&[w], w, &[x])) == normalize(vec![(x, Scalar::one())]);
                        self.expect(ok, Axiom::Unit, p.name(w).to_string(), self.input(&[w], &[x]))?;
                    }
                }
                for u in p.below(v) {
                    self.associativity(w, &[v], &[vec![u]])?;
                }
            }
        }
        Ok(())
    }
}

/// Checks that every structure map is a chain map, that `ρ_{U,U}` is the
/// identity, symmetry under permutations of a family (with Koszul signs) and
/// associativity over every nesting of families, including empty ones.
/// In coproduct mode only unary maps are audited.
pub fn validate_prefactorization(f: &PrefactorizationData) -> ValidationReport {
    let mut a = Auditor { f, checks: 0 };
    let r = match f.mode() {
        MonoidalMode::Tensor => a.run_tensor(),
        MonoidalMode::Coproduct => a.run_coproduct(),
    };
    ValidationReport { passed: r.is_ok(), checks: a.checks, witness: r.err() }
}
