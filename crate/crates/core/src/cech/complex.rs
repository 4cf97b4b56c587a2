//! The Čech complex of a prefactorization algebra on a finite cover.
//!
//! `PU` is the set of nonempty pairwise disjoint families of opens of the
//! cover, ordered lexicographically. Level `n` is the sum, over strictly
//! increasing tuples `α = (α_0 < ⋯ < α_n)` in `PU`, of `F(α)`: the tensor
//! product (or direct sum, in coproduct mode) of `F(U_0 ∩ ⋯ ∩ U_n)` over the
//! choices `U_j ∈ α_j` with nonempty intersection. The face `∂_s` drops
//! `α_s` and applies the structure maps of the inclusions of intersections.
//!
//! Tuples with repetitions are left out: the value on a tuple only depends
//! on its underlying set, so the full simplicial object and this ordered
//! subcomplex have the same homology.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_traits::{One, Zero};

use super::poset::Meet;
use super::prefact::{koszul, MonoidalMode, PrefactorizationData};
use super::validate::tensor_vectors;
use crate::error::{Error, Result};
use crate::hochschild::DEFAULT_CAP;
use crate::homalg::field::{sign, Coefficients, Scalar};
use crate::homalg::ops::pair_into_sum;
use crate::homalg::total::layout;
use crate::homalg::{
    cone, totalize, Bicomplex, Block, ChainComplex, ChainMap, DegreeRange, SparseMatrix, WeightSet,
};

/// A tuple of families with the nonempty intersections of its choices.
#[derive(Debug, Clone)]
struct Piece {
    tuple: Vec<usize>,
    /// `(choice, intersection)` in lexicographic order of the choices.
    choices: Vec<(Vec<usize>, usize)>,
}

/// A basis element of a level: its piece and its key (the basis element per
/// choice in tensor mode; `[choice index, basis element]` in coproduct mode).
type Cell = (usize, Vec<usize>);

#[derive(Debug, Clone)]
pub struct CechComplex {
    cover: Vec<usize>,
    families: Vec<Vec<usize>>,
    mode: MonoidalMode,
    levels: Vec<Vec<Piece>>,
    top_level: usize,
    total: ChainComplex,
    /// Total block and position of each cell, per level.
    cells: Vec<HashMap<Cell, (Block, usize)>>,
}

fn intersection(f: &PrefactorizationData, choice: &[usize]) -> Result<Option<usize>> {
    let p = f.poset();
    let mut cur = choice[0];
    for &u in &choice[1..] {
        match p.meet(cur, u) {
            Meet::Empty => return Ok(None),
            Meet::Open(m) => cur = m,
            Meet::Outside => {
                let names = choice.iter().map(|&u| p.name(u)).join(" ∩ ");
                return Err(Error::NonClosedCover(names));
            }
        }
    }
    Ok(Some(cur))
}

impl CechComplex {
    pub fn total(&self) -> &ChainComplex {
        &self.total
    }

    pub fn cover(&self) -> &[usize] {
        &self.cover
    }

    /// The nonempty disjoint families of the cover, in the order used for
    /// tuples.
    pub fn families(&self) -> &[Vec<usize>] {
        &self.families
    }

    /// Highest simplicial level materialized.
    pub fn top_level(&self) -> usize {
        self.top_level
    }

    /// Whether every level is present (the tuples run out at `|PU| − 1`).
    pub fn is_full(&self) -> bool {
        self.top_level + 1 >= self.families.len()
    }

    fn tuple_families(&self, tuple: &[usize]) -> Vec<Vec<usize>> {
        tuple.iter().map(|&i| self.families[i].clone()).collect()
    }

    /// Level-0 cells with their total positions.
    fn level_zero(&self) -> impl Iterator<Item = (&Piece, &Vec<usize>, &(Block, usize))> {
        self.cells[0].iter().map(|((p, key), pos)| (&self.levels[0][*p], key, pos))
    }

    /// The canonical map `Č(U, F) → F(target)` on level 0; `target` must
    /// contain every open of the cover.
    pub fn augmentation(&self, f: &PrefactorizationData, target: usize) -> Result<ChainMap> {
        let p = f.poset();
        if let Some(&u) = self.cover.iter().find(|&&u| !p.includes(u, target)) {
            return Err(Error::InvalidInput(format!("{} is not inside {}", p.name(u), p.name(target))));
        }
        let value = f.value(target);
        let tc = value.complex(self.total.coefficients())?;
        let pos = value.positions();
        let mut cols: BTreeMap<Block, Vec<Vec<(usize, Scalar)>>> =
            self.total.blocks().iter().map(|(b, d)| (*b, vec![Vec::new(); *d])).collect();
        for (piece, key, (b, j)) in self.level_zero() {
            let img = match self.mode {
                MonoidalMode::Tensor => {
                    let fam: Vec<usize> = piece.choices.iter().map(|(_, o)| *o).collect();
                    f.rho(&fam, target, key)
                }
                MonoidalMode::Coproduct => f.rho(&[piece.choices[key[0]].1], target, &key[1..]),
            };
            for (i, x) in img {
                if pos[i].0 != *b {
                    return Err(Error::DegreeMismatch("structure map changes degree".into()));
                }
                cols.get_mut(b).unwrap()[*j].push((pos[i].1, x));
            }
        }
        let blocks = cols
            .into_iter()
            .map(|(b, c)| (b, SparseMatrix::from_columns(tc.dim(b.0, b.1), c)))
            .collect();
        ChainMap::new(self.total.clone(), tc, blocks)
    }
}

/// The ordered Čech complex of `f` on `cover`, with levels up to
/// `max_level` (all of them by default).
pub fn cech_complex(f: &PrefactorizationData, cover: &[usize], max_level: Option<usize>) -> Result<CechComplex> {
    let p = f.poset();
    let mut cover = cover.to_vec();
    cover.sort_unstable();
    cover.dedup();
    if cover.is_empty() || cover.iter().any(|&u| u >= p.len()) {
        return Err(Error::InvalidInput("cover must be a nonempty set of opens".into()));
    }
    p.check_closed(&cover)?;
    let families: Vec<Vec<usize>> = p.disjoint_families(&cover).into_iter().filter(|v| !v.is_empty()).sorted().collect();
    let top_level = max_level.map_or(families.len() - 1, |l| l.min(families.len() - 1));
    let mode = f.mode();

    let mut levels: Vec<Vec<Piece>> = Vec::new();
    for n in 0..=top_level {
        let mut pieces = Vec::new();
        for tuple in (0..families.len()).combinations(n + 1) {
            let mut choices = Vec::new();
            for choice in tuple.iter().map(|&i| families[i].iter().copied()).multi_cartesian_product() {
                if let Some(o) = intersection(f, &choice)? {
                    choices.push((choice, o));
                }
            }
            pieces.push(Piece { tuple, choices });
        }
        levels.push(pieces);
    }

    // basis of each level, by internal block
    let mut bases: Vec<BTreeMap<Block, Vec<Cell>>> = Vec::new();
    for pieces in &levels {
        let mut basis: BTreeMap<Block, Vec<Cell>> = BTreeMap::new();
        for (pi, piece) in pieces.iter().enumerate() {
            match mode {
                MonoidalMode::Tensor => {
                    let keys: Vec<Vec<usize>> = if piece.choices.is_empty() {
                        vec![Vec::new()]
                    } else {
                        piece.choices.iter().map(|(_, o)| 0..f.value(*o).dim()).multi_cartesian_product().collect()
                    };
                    for key in keys {
                        let (mut deg, mut wt) = (0, 0);
                        for ((_, o), &x) in piece.choices.iter().zip(&key) {
                            deg += f.value(*o).degrees[x];
                            wt += f.value(*o).weights[x];
                        }
                        basis.entry((deg, wt)).or_default().push((pi, key));
                    }
                }
                MonoidalMode::Coproduct => {
                    for (ci, (_, o)) in piece.choices.iter().enumerate() {
                        let v = f.value(*o);
                        for x in 0..v.dim() {
                            basis.entry((v.degrees[x], v.weights[x])).or_default().push((pi, vec![ci, x]));
                        }
                    }
                }
            }
        }
        if let Some(big) = basis.values().map(Vec::len).max() {
            if big > DEFAULT_CAP {
                return Err(Error::Infeasible { estimate: big, cap: DEFAULT_CAP });
            }
        }
        bases.push(basis);
    }
    let index: Vec<HashMap<Cell, (Block, usize)>> = bases
        .iter()
        .map(|basis| {
            basis.iter().flat_map(|(b, v)| v.iter().enumerate().map(move |(i, c)| (c.clone(), (*b, i)))).collect()
        })
        .collect();
    let tuple_index: Vec<HashMap<Vec<usize>, usize>> = levels
        .iter()
        .map(|pieces| pieces.iter().enumerate().map(|(i, p)| (p.tuple.clone(), i)).collect())
        .collect();

    let internal_of = |n: usize, cell: &Cell| -> Vec<(Cell, Scalar)> {
        let (pi, key) = cell;
        let piece = &levels[n][*pi];
        let mut out = Vec::new();
        match mode {
            MonoidalMode::Tensor => {
                let mut parity = false;
                for (j, (_, o)) in piece.choices.iter().enumerate() {
                    let v = f.value(*o);
                    for (y, c) in &v.d[key[j]] {
                        let mut k2 = key.clone();
                        k2[j] = *y;
                        out.push(((*pi, k2), sign(parity) * c));
                    }
                    parity ^= v.degrees[key[j]] % 2 != 0;
                }
            }
            MonoidalMode::Coproduct => {
                let o = piece.choices[key[0]].1;
                for (y, c) in &f.value(o).d[key[1]] {
                    out.push(((*pi, vec![key[0], *y]), c.clone()));
                }
            }
        }
        out
    };

    let face_of = |n: usize, cell: &Cell| -> Vec<(Cell, Scalar)> {
        let (pi, key) = cell;
        let piece = &levels[n][*pi];
        let mut out = Vec::new();
        for s in 0..=n {
            let mut tuple = piece.tuple.clone();
            tuple.remove(s);
            let ti = tuple_index[n - 1][&tuple];
            let target = &levels[n - 1][ti];
            let locate = |choice: &[usize]| {
                let mut c = choice.to_vec();
                c.remove(s);
                target.choices.iter().position(|(t, _)| *t == c).expect("a larger intersection is nonempty")
            };
            let sgn = sign(s % 2 == 1);
            match mode {
                MonoidalMode::Coproduct => {
                    let (choice, o) = &piece.choices[key[0]];
                    let t = locate(choice);
                    for (y, c) in f.rho(&[*o], target.choices[t].1, &key[1..]) {
                        out.push(((ti, vec![t, y]), &sgn * c));
                    }
                }
                MonoidalMode::Tensor => {
                    let dest: Vec<usize> = piece.choices.iter().map(|(c, _)| locate(c)).collect();
                    let degrees: Vec<i64> =
                        piece.choices.iter().zip(key).map(|((_, o), &x)| f.value(*o).degrees[x]).collect();
                    let s0 = koszul(&dest, &degrees) * &sgn;
                    let parts: Vec<_> = target
                        .choices
                        .iter()
                        .enumerate()
                        .map(|(t, (_, o))| {
                            let members: Vec<usize> = (0..dest.len()).filter(|&k| dest[k] == t).collect();
                            let fam: Vec<usize> = members.iter().map(|&k| piece.choices[k].1).collect();
                            let xs: Vec<usize> = members.iter().map(|&k| key[k]).collect();
                            f.rho(&fam, *o, &xs)
                        })
                        .collect();
                    for (k2, c) in tensor_vectors(&parts) {
                        out.push(((ti, k2), &s0 * c));
                    }
                }
            }
        }
        out
    };

    let matrix = |src: &[Cell], rows: usize, tgt: &HashMap<Cell, (Block, usize)>, img: &dyn Fn(&Cell) -> Vec<(Cell, Scalar)>| {
        let cols = src
            .iter()
            .map(|cell| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (c, x) in img(cell) {
                    let (_, i) = tgt[&c];
                    *acc.entry(i).or_insert_with(Scalar::zero) += x;
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect();
        SparseMatrix::from_columns(rows, cols)
    };

    let mut bc = Bicomplex::default();
    for n in 0..=top_level {
        bc.levels.push(bases[n].iter().map(|(b, v)| (*b, v.len())).collect());
        let mut internal = BTreeMap::new();
        let mut faces = BTreeMap::new();
        for (&(i, w), cells) in &bases[n] {
            if let Some(t) = bases[n].get(&(i + 1, w)) {
                internal.insert((i, w), matrix(cells, t.len(), &index[n], &|c| internal_of(n, c)));
            }
            if n > 0 {
                if let Some(t) = bases[n - 1].get(&(i, w)) {
                    faces.insert((i, w), matrix(cells, t.len(), &index[n - 1], &|c| face_of(n, c)));
                }
            }
        }
        bc.internal.push(internal);
        bc.faces.push(faces);
    }

    let complete = if top_level + 1 >= families.len() {
        DegreeRange::ALL
    } else {
        let top_value = cover.iter().flat_map(|&u| f.value(u).degrees.iter().copied()).max().unwrap_or(0);
        let bound = match mode {
            MonoidalMode::Tensor => {
                let widest = families.iter().map(Vec::len).max().unwrap_or(1) as i64;
                top_value.max(0) * widest
            }
            MonoidalMode::Coproduct => top_value,
        };
        DegreeRange::at_least(bound - top_level as i64)
    };
    let total = totalize(Coefficients::Rational, &bc, complete, WeightSet::All)?;
    let (_, offset) = layout(&bc);
    let cells = bases
        .iter()
        .enumerate()
        .map(|(n, basis)| {
            basis
                .iter()
                .flat_map(|(&(i, w), v)| {
                    let o = offset[&(n, (i, w))];
                    let k = i - n as i64;
                    v.iter().enumerate().map(move |(j, c)| (c.clone(), ((k, w), o + j)))
                })
                .collect()
        })
        .collect();
    Ok(CechComplex { cover, families, mode, levels, top_level, total, cells })
}

fn inclusion(sub: &CechComplex, sup: &CechComplex, scale: &Scalar) -> Result<ChainMap> {
    if sub.mode != sup.mode || sub.cover.iter().any(|u| !sup.cover.contains(u)) {
        return Err(Error::InvalidInput("not a subcover of the same data".into()));
    }
    if sub.top_level > sup.top_level {
        return Err(Error::InsufficientLevels { needed: sub.top_level, available: sup.top_level });
    }
    let mut lookup: Vec<HashMap<(Vec<Vec<usize>>, Vec<usize>), (Block, usize)>> = Vec::new();
    for (n, cells) in sup.cells.iter().enumerate().take(sub.top_level + 1) {
        lookup.push(
            cells
                .iter()
                .map(|((pi, key), pos)| ((sup.tuple_families(&sup.levels[n][*pi].tuple), key.clone()), *pos))
                .collect(),
        );
    }
    let mut cols: BTreeMap<Block, Vec<Vec<(usize, Scalar)>>> =
        sub.total.blocks().iter().map(|(b, d)| (*b, vec![Vec::new(); *d])).collect();
    for (n, cells) in sub.cells.iter().enumerate() {
        for ((pi, key), (b, j)) in cells {
            let fams = sub.tuple_families(&sub.levels[n][*pi].tuple);
            let (b2, i) = lookup[n][&(fams, key.clone())];
            debug_assert_eq!(*b, b2);
            cols.get_mut(b).unwrap()[*j].push((i, scale.clone()));
        }
    }
    let blocks = cols
        .into_iter()
        .map(|(b, c)| (b, SparseMatrix::from_columns(sup.total.dim(b.0, b.1), c)))
        .collect();
    ChainMap::new(sub.total.clone(), sup.total.clone(), blocks)
}

/// The map induced by an inclusion of covers.
pub fn cech_map(sub: &CechComplex, sup: &CechComplex) -> Result<ChainMap> {
    inclusion(sub, sup, &Scalar::one())
}

/// The Mayer–Vietoris cone of `Č(Z) → Č(X) ⊕ Č(Y)`, `z ↦ (z, −z)`, for
/// covers `Z ⊆ X, Y`. When `X ∪ Y` covers a space and `Z` covers `X ∩ Y`,
/// it computes that space's Čech homology.
pub fn cone_excision(
    f: &PrefactorizationData,
    x: &[usize],
    y: &[usize],
    z: &[usize],
    max_level: Option<usize>,
) -> Result<ChainComplex> {
    let (cx, cy, cz) = (cech_complex(f, x, max_level)?, cech_complex(f, y, max_level)?, cech_complex(f, z, max_level)?);
    let i = inclusion(&cz, &cx, &Scalar::one())?;
    let j = inclusion(&cz, &cy, &-Scalar::one())?;
    cone(&pair_into_sum(&i, &j)?)
}
