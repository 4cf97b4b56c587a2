use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A simplicial set materialized on levels `0..=N`.
///
/// Simplices of level `n` are the integers `0..size(n)`. Faces are stored for
/// `1 ≤ n ≤ N`, degeneracies for `n < N`. A pointed set has its basepoint at
/// id `0` on every level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicialSet {
    name: String,
    sizes: Vec<usize>,
    /// `faces[n][i][y] = d_i(y)` for `y ∈ Y_n`; `faces[0]` is empty.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degens[n][i][y] = s_i(y)` for `y ∈ Y_n`, `n < N`.
    degens: Vec<Vec<Vec<usize>>>,
    pointed: bool,
}

impl SimplicialSet {
    /// Assembles a simplicial set from explicit tables and validates it.
    pub fn from_tables(
        name: impl Into<String>,
        sizes: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
        pointed: bool,
    ) -> Result<Self> {
        let x = Self::from_tables_unchecked(name, sizes, faces, degens, pointed);
        if let Err(v) = x.validate() {
            return Err(Error::InvalidInput(format!("{}: {v}", x.name)));
        }
        Ok(x)
    }

    pub(crate) fn from_tables_unchecked(
        name: impl Into<String>,
        sizes: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
        pointed: bool,
    ) -> Self {
        SimplicialSet { name: name.into(), sizes, faces, degens, pointed }
    }

    /// Builds levels `0..=top` from closures for faces and degeneracies.
    pub(crate) fn from_fns(
        name: impl Into<String>,
        top: usize,
        pointed: bool,
        size: impl Fn(usize) -> usize,
        face: impl Fn(usize, usize, usize) -> usize,
        degen: impl Fn(usize, usize, usize) -> usize,
    ) -> Self {
        let sizes: Vec<usize> = (0..=top).map(&size).collect();
        let faces = (0..=top)
            .map(|n| {
                if n == 0 {
                    Vec::new()
                } else {
                    (0..=n).map(|i| (0..sizes[n]).map(|y| face(n, i, y)).collect()).collect()
                }
            })
            .collect();
        let degens = (0..=top)
            .map(|n| {
                if n == top {
                    Vec::new()
                } else {
                    (0..=n).map(|i| (0..sizes[n]).map(|y| degen(n, i, y)).collect()).collect()
                }
            })
            .collect();
        SimplicialSet { name: name.into(), sizes, faces, degens, pointed }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Highest materialized level `N`.
    pub fn top_level(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn size(&self, n: usize) -> usize {
        self.sizes[n]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn is_pointed(&self) -> bool {
        self.pointed
    }

    /// The basepoint id, `0` on every level.
    pub fn basepoint(&self) -> Option<usize> {
        self.pointed.then_some(0)
    }

    /// `d_i: Y_n → Y_{n−1}`.
    pub fn face(&self, n: usize, i: usize, y: usize) -> usize {
        self.faces[n][i][y]
    }

    pub fn face_table(&self, n: usize, i: usize) -> &[usize] {
        &self.faces[n][i]
    }

    /// `s_i: Y_n → Y_{n+1}`, defined for `n < N`.
    pub fn degeneracy(&self, n: usize, i: usize, y: usize) -> usize {
        self.degens[n][i][y]
    }

    pub fn degeneracy_table(&self, n: usize, i: usize) -> &[usize] {
        &self.degens[n][i]
    }

    /// Restriction to levels `0..=n`.
    pub fn truncate(&self, n: usize) -> SimplicialSet {
        let n = n.min(self.top_level());
        let mut degens: Vec<_> = self.degens[..=n].to_vec();
        degens[n] = Vec::new();
        SimplicialSet {
            name: self.name.clone(),
            sizes: self.sizes[..=n].to_vec(),
            faces: self.faces[..=n].to_vec(),
            degens,
            pointed: self.pointed,
        }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Replaces one face value; used to build corrupted fixtures.
    pub fn with_face(mut self, n: usize, i: usize, y: usize, value: usize) -> Self {
        self.faces[n][i][y] = value;
        self
    }

    /// Checks every simplicial identity on every materialized simplex and
    /// returns the first violation.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let top = self.top_level();
        if self.faces.len() != top + 1 || self.degens.len() != top + 1 {
            return Err(Violation::shape("table count", 0));
        }
        for n in 0..=top {
            let faces_expected = if n == 0 { 0 } else { n + 1 };
            let degens_expected = if n == top { 0 } else { n + 1 };
            if self.faces[n].len() != faces_expected || self.degens[n].len() != degens_expected {
                return Err(Violation::shape("operator count", n));
            }
            for t in &self.faces[n] {
                if t.len() != self.sizes[n] || t.iter().any(|&x| x >= self.sizes[n - 1]) {
                    return Err(Violation::shape("face table", n));
                }
            }
            for t in &self.degens[n] {
                if t.len() != self.sizes[n] || t.iter().any(|&x| x >= self.sizes[n + 1]) {
                    return Err(Violation::shape("degeneracy table", n));
                }
            }
            if self.pointed && self.sizes[n] == 0 {
                return Err(Violation::shape("empty level of a pointed set", n));
            }
        }
        let fail = |identity, level, i, j, simplex| {
            Err(Violation { identity, level, i, j, simplex })
        };
        for n in 0..=top {
            for y in 0..self.sizes[n] {
                // d_i d_j = d_{j-1} d_i, i < j
                if n >= 2 {
                    for j in 1..=n {
                        for i in 0..j {
                            let a = self.face(n - 1, i, self.face(n, j, y));
                            let b = self.face(n - 1, j - 1, self.face(n, i, y));
                            if a != b {
                                return fail("d_i d_j = d_{j-1} d_i", n, i, j, y);
                            }
                        }
                    }
                }
                if n < top {
                    for j in 0..=n {
                        let sy = self.degeneracy(n, j, y);
                        for i in 0..=n + 1 {
                            let lhs = self.face(n + 1, i, sy);
                            let ok = if i < j {
                                n >= 1 && lhs == self.degeneracy(n - 1, j - 1, self.face(n, i, y))
                            } else if i == j || i == j + 1 {
                                lhs == y
                            } else {
                                lhs == self.degeneracy(n - 1, j, self.face(n, i - 1, y))
                            };
                            if !ok {
                                return fail("d_i s_j", n, i, j, y);
                            }
                        }
                    }
                }
                if n + 1 < top {
                    for j in 0..=n {
                        for i in 0..=j {
                            let a = self.degeneracy(n + 1, i, self.degeneracy(n, j, y));
                            let b = self.degeneracy(n + 1, j + 1, self.degeneracy(n, i, y));
                            if a != b {
                                return fail("s_i s_j = s_{j+1} s_i", n, i, j, y);
                            }
                        }
                    }
                }
            }
            if self.pointed {
                if n >= 1 {
                    if let Some(i) = (0..=n).find(|&i| self.face(n, i, 0) != 0) {
                        return fail("basepoint fixed by faces", n, i, i, 0);
                    }
                }
                if n < top {
                    if let Some(i) = (0..=n).find(|&i| self.degeneracy(n, i, 0) != 0) {
                        return fail("basepoint fixed by degeneracies", n, i, i, 0);
                    }
                }
            }
        }
        Ok(())
    }

    /// `mask[y]` has bit `i` set iff `y = s_i(d_i y)`, i.e. `y` lies in the
    /// image of `s_i`. Requires `n ≥ 1`; level 0 has no degenerate simplices.
    pub fn degeneracy_masks(&self, n: usize) -> Vec<u64> {
        assert!(n <= 63, "levels above 63 are not supported");
        (0..self.sizes[n])
            .map(|y| {
                if n == 0 {
                    return 0;
                }
                let mut mask = 0u64;
                for i in 0..n {
                    if self.degeneracy(n - 1, i, self.face(n, i, y)) == y {
                        mask |= 1 << i;
                    }
                }
                mask
            })
            .collect()
    }

    /// Nondegenerate simplices and Eilenberg–Zilber normal forms.
    pub fn nondegenerate(&self) -> NondegeneracyTable {
        let top = self.top_level();
        let mut nondegenerate = Vec::with_capacity(top + 1);
        let mut normal_forms = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut nd = Vec::new();
            let mut nf = Vec::with_capacity(self.sizes[n]);
            for y in 0..self.sizes[n] {
                let mut ops = Vec::new();
                let (mut m, mut x) = (n, y);
                while m > 0 {
                    let Some(i) = (0..m)
                        .rev()
                        .find(|&i| self.degeneracy(m - 1, i, self.face(m, i, x)) == x)
                    else {
                        break;
                    };
                    ops.push(i);
                    x = self.face(m, i, x);
                    m -= 1;
                }
                if ops.is_empty() {
                    nd.push(y);
                }
                nf.push(NormalForm { level: m, simplex: x, degeneracies: ops });
            }
            nondegenerate.push(nd);
            normal_forms.push(nf);
        }
        NondegeneracyTable { nondegenerate, normal_forms }
    }

    /// JSON document with levels, faces and degeneracies.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("simplicial set serializes")
    }
}

/// A violated identity: the operator indices `(i, j)` and the simplex at
/// `level` on which the two sides disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub identity: &'static str,
    pub level: usize,
    pub i: usize,
    pub j: usize,
    pub simplex: usize,
}

impl Violation {
    fn shape(identity: &'static str, level: usize) -> Self {
        Violation { identity, level, i: 0, j: 0, simplex: 0 }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at level {} for (i, j) = ({}, {}) on simplex {}",
            self.identity, self.level, self.i, self.j, self.simplex
        )
    }
}

/// `y = s_{i_1} s_{i_2} ⋯ s_{i_k} x` with `x` nondegenerate at `level` and
/// `degeneracies = [i_1, …, i_k]` strictly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    pub level: usize,
    pub simplex: usize,
    pub degeneracies: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NondegeneracyTable {
    pub nondegenerate: Vec<Vec<usize>>,
    pub normal_forms: Vec<Vec<NormalForm>>,
}

impl NondegeneracyTable {
    pub fn counts(&self) -> Vec<usize> {
        self.nondegenerate.iter().map(Vec::len).collect()
    }
}
