//! Standard simplicial models and the combinators building new ones.

use std::collections::HashMap;

use super::set::SimplicialSet;
use crate::error::{Error, Result};

/// The constant simplicial set with one simplex in every level.
pub fn point(top: usize) -> SimplicialSet {
    SimplicialSet::from_fns("point", top, true, |_| 1, |_, _, _| 0, |_, _, _| 0)
}

/// `I_n = {0, 1, …, n+1}`, pointed at `0`. `d_i` merges `i` and `i + 1`.
pub fn interval(top: usize) -> SimplicialSet {
    SimplicialSet::from_fns(
        "interval",
        top,
        true,
        |n| n + 2,
        |_, i, j| if j <= i { j } else { j - 1 },
        |_, i, j| if j <= i { j } else { j + 1 },
    )
}

/// `S¹_n = {0, …, n}`: `d_i` as on the interval for `i < n`, and `d_n` sends
/// `n` to the basepoint `0`.
pub fn circle(top: usize) -> SimplicialSet {
    SimplicialSet::from_fns(
        "circle",
        top,
        true,
        |n| n + 1,
        circle_face,
        |_, i, j| if j <= i { j } else { j + 1 },
    )
}

fn circle_face(n: usize, i: usize, j: usize) -> usize {
    if i < n {
        if j <= i {
            j
        } else {
            j - 1
        }
    } else if j == n {
        0
    } else {
        j
    }
}

/// The `d`-fold smash of circles: the basepoint plus `{1, …, n}^d`, tuples in
/// lexicographic order. A face that sends any coordinate to `0` lands on the
/// basepoint.
pub fn sphere_standard(d: usize, top: usize) -> Result<SimplicialSet> {
    if d == 0 {
        return Err(Error::InvalidInput("sphere dimension must be at least 1".into()));
    }
    let encode = |n: usize, coords: &[usize]| -> usize {
        // coordinates in 1..=n
        1 + coords.iter().fold(0, |acc, &c| acc * n + (c - 1))
    };
    let decode = |n: usize, mut id: usize| -> Vec<usize> {
        id -= 1;
        let mut out = vec![0; d];
        for slot in out.iter_mut().rev() {
            *slot = id % n + 1;
            id /= n;
        }
        out
    };
    let x = SimplicialSet::from_fns(
        format!("sphere_standard({d})"),
        top,
        true,
        |n| 1 + n.pow(d as u32),
        |n, i, y| {
            if y == 0 {
                return 0;
            }
            let c: Vec<usize> = decode(n, y).iter().map(|&j| circle_face(n, i, j)).collect();
            if c.contains(&0) {
                0
            } else {
                encode(n - 1, &c)
            }
        },
        |n, i, y| {
            if y == 0 {
                return 0;
            }
            let c: Vec<usize> =
                decode(n, y).iter().map(|&j| if j <= i { j } else { j + 1 }).collect();
            encode(n + 1, &c)
        },
    );
    Ok(x)
}

/// The model with exactly two nondegenerate simplices, the basepoint and one
/// `d`-simplex. Level `n` is the basepoint followed by the monotone
/// surjections `[n] → [d]` in lexicographic order. `d = 0` gives two points.
pub fn sphere_small(d: usize, top: usize) -> Result<SimplicialSet> {
    let mut cells = vec![Cell { dim: 0, faces: Vec::new() }];
    if d == 0 {
        cells.push(Cell { dim: 0, faces: Vec::new() });
    } else {
        let base = Simplex { cell: 0, map: vec![0; d] };
        cells.push(Cell { dim: d, faces: vec![base; d + 1] });
    }
    from_cells(&format!("sphere_small({d})"), &cells, top, true)
}

/// Diagonal product; `(x, y)` has id `x·|Y_n| + y`.
pub fn product(x: &SimplicialSet, y: &SimplicialSet) -> SimplicialSet {
    let top = x.top_level().min(y.top_level());
    SimplicialSet::from_fns(
        format!("{}×{}", x.name(), y.name()),
        top,
        x.is_pointed() && y.is_pointed(),
        |n| x.size(n) * y.size(n),
        |n, i, p| {
            let (a, b) = (p / y.size(n), p % y.size(n));
            x.face(n, i, a) * y.size(n - 1) + y.face(n, i, b)
        },
        |n, i, p| {
            let (a, b) = (p / y.size(n), p % y.size(n));
            x.degeneracy(n, i, a) * y.size(n + 1) + y.degeneracy(n, i, b)
        },
    )
}

/// `S¹ × S¹` as the diagonal of the bisimplicial product.
pub fn torus(top: usize) -> SimplicialSet {
    product(&circle(top), &circle(top)).renamed("torus")
}

/// Wedge sum: simplices of `X` keep their ids, the non-basepoint simplices of
/// `Y` follow in order.
pub fn wedge(x: &SimplicialSet, y: &SimplicialSet) -> Result<SimplicialSet> {
    if !x.is_pointed() || !y.is_pointed() {
        return Err(Error::Unpointed(format!("wedge of {} and {}", x.name(), y.name())));
    }
    let top = x.top_level().min(y.top_level());
    let embed = |n: usize, s: usize| if s == 0 { 0 } else { x.size(n) + s - 1 };
    Ok(SimplicialSet::from_fns(
        format!("({}∨{})", x.name(), y.name()),
        top,
        true,
        |n| x.size(n) + y.size(n) - 1,
        |n, i, p| {
            if p < x.size(n) {
                x.face(n, i, p)
            } else {
                embed(n - 1, y.face(n, i, p - x.size(n) + 1))
            }
        },
        |n, i, p| {
            if p < x.size(n) {
                x.degeneracy(n, i, p)
            } else {
                embed(n + 1, y.degeneracy(n, i, p - x.size(n) + 1))
            }
        },
    ))
}

/// `θ^* x` for a nondegenerate cell `x` and a monotone surjection
/// `θ: [n] → [dim x]`, stored as its value list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub cell: usize,
    pub map: Vec<usize>,
}

/// A nondegenerate cell with its faces `d_0, …, d_dim` in normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub dim: usize,
    pub faces: Vec<Simplex>,
}

/// Monotone surjections `[n] → [m]` in lexicographic order.
fn surjections(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m > n {
        return out;
    }
    let mut cur = vec![0usize];
    fn rec(n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n + 1 {
            if *cur.last().unwrap() == m {
                out.push(cur.clone());
            }
            return;
        }
        let last = *cur.last().unwrap();
        let remaining = n + 1 - cur.len();
        for next in [last, last + 1] {
            if next <= m && m - next <= remaining - 1 {
                cur.push(next);
                rec(n, m, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, m, &mut cur, &mut out);
    out
}

/// The simplicial set generated by nondegenerate cells, each simplex written
/// uniquely as a degeneracy of a cell. Simplices of level `n` are listed cell
/// by cell, each cell's surjections in lexicographic order; if `pointed`,
/// cell `0` must be a vertex and becomes the basepoint.
pub fn from_cells(name: &str, cells: &[Cell], top: usize, pointed: bool) -> Result<SimplicialSet> {
    for (c, cell) in cells.iter().enumerate() {
        let expected = if cell.dim == 0 { 0 } else { cell.dim + 1 };
        if cell.faces.len() != expected {
            return Err(Error::InvalidInput(format!("cell {c} has {} faces", cell.faces.len())));
        }
        for f in &cell.faces {
            let ok = f.cell < cells.len()
                && f.map.len() == cell.dim
                && f.map.first() == Some(&0)
                && f.map.last() == Some(&cells[f.cell].dim)
                && f.map.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1);
            if !ok {
                return Err(Error::InvalidInput(format!("cell {c} has a malformed face")));
            }
        }
    }
    if pointed && cells.first().map(|c| c.dim) != Some(0) {
        return Err(Error::Unpointed(format!("{name}: first cell is not a vertex")));
    }
    let mut levels: Vec<Vec<Simplex>> = Vec::with_capacity(top + 2);
    let mut index: Vec<HashMap<Simplex, usize>> = Vec::with_capacity(top + 2);
    for n in 0..=top {
        let mut list = Vec::new();
        for (c, cell) in cells.iter().enumerate() {
            for map in surjections(n, cell.dim) {
                list.push(Simplex { cell: c, map });
            }
        }
        index.push(list.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect());
        levels.push(list);
    }
    let face = |s: &Simplex, i: usize| -> Simplex {
        // θ∘δ_i drops position i from the value list
        let mut map = s.map.clone();
        map.remove(i);
        let m = cells[s.cell].dim;
        let missing = (0..=m).find(|v| !map.contains(v));
        match missing {
            None => Simplex { cell: s.cell, map },
            Some(k) => {
                // θ∘δ_i = δ_k∘θ'; result is θ'^* (d_k x)
                let theta: Vec<usize> = map.iter().map(|&v| if v > k { v - 1 } else { v }).collect();
                let f = &cells[s.cell].faces[k];
                Simplex { cell: f.cell, map: theta.iter().map(|&v| f.map[v]).collect() }
            }
        }
    };
    let sizes = levels.iter().map(Vec::len).collect();
    let faces = (0..=top)
        .map(|n| {
            if n == 0 {
                return Vec::new();
            }
            (0..=n)
                .map(|i| {
                    levels[n]
                        .iter()
                        .map(|s| {
                            let f = face(s, i);
                            *index[n - 1].get(&f).expect("face lies in the previous level")
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let degens = (0..=top)
        .map(|n| {
            if n == top {
                return Vec::new();
            }
            (0..=n)
                .map(|i| {
                    levels[n]
                        .iter()
                        .map(|s| {
                            let mut map = s.map.clone();
                            map.insert(i, s.map[i]);
                            index[n + 1][&Simplex { cell: s.cell, map }]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    SimplicialSet::from_tables(name, sizes, faces, degens, pointed)
}

/// A genus-`g` surface: the `4g`-gon with boundary word
/// `a_1 b_1 a_1⁻¹ b_1⁻¹ ⋯ a_g b_g a_g⁻¹ b_g⁻¹`, triangulated by a fan of
/// diagonals from one corner. One vertex, `6g − 3` edges, `4g − 2` triangles.
pub fn surface(g: usize, top: usize) -> Result<SimplicialSet> {
    if g == 0 {
        return Err(Error::InvalidInput("surface genus must be at least 1".into()));
    }
    let sides = 4 * g;
    // boundary side k runs from corner k to corner k+1; letter index and
    // whether the letter points the same way
    let side = |k: usize| -> (usize, bool) {
        let block = k / 4;
        match k % 4 {
            0 => (2 * block, true),
            1 => (2 * block + 1, true),
            2 => (2 * block, false),
            _ => (2 * block + 1, false),
        }
    };
    let vertex = Simplex { cell: 0, map: vec![0] };
    let mut cells = vec![Cell { dim: 0, faces: Vec::new() }];
    for _ in 0..2 * g {
        cells.push(Cell { dim: 1, faces: vec![vertex.clone(), vertex.clone()] });
    }
    let letter_cell = |l: usize| 1 + l;
    // diagonal from corner 0 to corner j, j = 2..=sides-2
    let first_diagonal = cells.len();
    for _ in 2..=sides - 2 {
        cells.push(Cell { dim: 1, faces: vec![vertex.clone(), vertex.clone()] });
    }
    let edge = |c: usize| Simplex { cell: c, map: vec![0, 1] };
    // the edge oriented from corner 0 to corner j
    let spoke = |j: usize| -> Simplex {
        if j == 1 {
            edge(letter_cell(side(0).0))
        } else if j == sides - 1 {
            edge(letter_cell(side(sides - 1).0))
        } else {
            edge(first_diagonal + j - 2)
        }
    };
    for j in 1..=sides - 2 {
        let (letter, forward) = side(j);
        let outer = edge(letter_cell(letter));
        // vertices ordered (0, j, j+1) when the side points forward, else
        // (0, j+1, j)
        let faces = if forward {
            vec![outer, spoke(j + 1), spoke(j)]
        } else {
            vec![outer, spoke(j), spoke(j + 1)]
        };
        cells.push(Cell { dim: 2, faces });
    }
    from_cells(&format!("surface({g})"), &cells, top, true)
}
