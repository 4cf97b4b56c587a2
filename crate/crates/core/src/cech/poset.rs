//! Finite posets of opens with their intersection table.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homalg::field::Scalar;

/// An open of the line or of the circle `ℝ/ℤ`, with exact endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    /// A connected subset of `ℝ` with the given endpoints; each end may be
    /// closed (relatively open in a closed ambient interval).
    Interval { lo: Scalar, hi: Scalar, lo_closed: bool, hi_closed: bool },
    /// The open arc `{start + t : 0 < t < length}` of `ℝ/ℤ`.
    Arc { start: Scalar, length: Scalar },
}

impl Shape {
    pub fn open(lo: Scalar, hi: Scalar) -> Self {
        Shape::Interval { lo, hi, lo_closed: false, hi_closed: false }
    }

    pub fn arc(start: Scalar, length: Scalar) -> Self {
        let start = &start - start.floor();
        Shape::Arc { start, length }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Interval { lo, hi, lo_closed, hi_closed } => write!(
                f,
                "{}{lo}, {hi}{}",
                if *lo_closed { "[" } else { "(" },
                if *hi_closed { "]" } else { ")" }
            ),
            Shape::Arc { start, length } => write!(f, "arc({start}, +{length})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    Line,
    Circle,
    Abstract,
}

/// Result of intersecting two opens of a poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Meet {
    Empty,
    Open(usize),
    /// Nonempty, but not an open of the poset.
    Outside,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenPoset {
    ambient: Ambient,
    names: Vec<String>,
    shapes: Option<Vec<Shape>>,
    meet: Vec<Vec<Meet>>,
}

enum Piece {
    Empty,
    One(Shape),
    Several,
}

fn interval_meet(a: &Shape, b: &Shape) -> Piece {
    let (
        Shape::Interval { lo: l1, hi: h1, lo_closed: lc1, hi_closed: hc1 },
        Shape::Interval { lo: l2, hi: h2, lo_closed: lc2, hi_closed: hc2 },
    ) = (a, b)
    else {
        unreachable!()
    };
    let (lo, lo_closed) = match l1.cmp(l2) {
        std::cmp::Ordering::Less => (l2.clone(), *lc2),
        std::cmp::Ordering::Greater => (l1.clone(), *lc1),
        std::cmp::Ordering::Equal => (l1.clone(), *lc1 && *lc2),
    };
    let (hi, hi_closed) = match h1.cmp(h2) {
        std::cmp::Ordering::Less => (h1.clone(), *hc1),
        std::cmp::Ordering::Greater => (h2.clone(), *hc2),
        std::cmp::Ordering::Equal => (h1.clone(), *hc1 && *hc2),
    };
    if lo > hi || (lo == hi && !(lo_closed && hi_closed)) {
        return Piece::Empty;
    }
    Piece::One(Shape::Interval { lo, hi, lo_closed, hi_closed })
}

/// Intersection of open arcs, computed in coordinates relative to `a`'s start.
fn arc_meet(a: &Shape, b: &Shape) -> Piece {
    let (Shape::Arc { start: s1, length: l1 }, Shape::Arc { start: s2, length: l2 }) = (a, b) else {
        unreachable!()
    };
    let one = Scalar::one();
    if *l1 >= one || *l2 >= one {
        return Piece::Several;
    }
    let mut delta = s2 - s1;
    if delta < Scalar::zero() {
        delta += &one;
    }
    let mut pieces = Vec::new();
    for shift in [delta.clone(), &delta - &one] {
        let lo = shift.clone().max(Scalar::zero());
        let hi = (&shift + l2).min(l1.clone());
        if lo < hi {
            pieces.push((lo, hi));
        }
    }
    match pieces.as_slice() {
        [] => Piece::Empty,
        [(lo, hi)] => Piece::One(Shape::arc(s1 + lo, hi - lo)),
        _ => Piece::Several,
    }
}

impl OpenPoset {
    /// Opens of the line (or of a closed interval, using closed ends).
    pub fn intervals(named: Vec<(String, Shape)>) -> Result<Self> {
        if named.iter().any(|(_, s)| !matches!(s, Shape::Interval { .. })) {
            return Err(Error::InvalidInput("interval posets take interval shapes".into()));
        }
        for (n, s) in &named {
            if matches!(interval_meet(s, s), Piece::Empty) {
                return Err(Error::InvalidInput(format!("open {n} is empty")));
            }
        }
        Ok(Self::geometric(Ambient::Line, named, interval_meet))
    }

    /// Arcs of the circle `ℝ/ℤ`.
    pub fn arcs(named: Vec<(String, Shape)>) -> Result<Self> {
        for (n, s) in &named {
            match s {
                Shape::Arc { length, .. } if *length > Scalar::zero() && *length < Scalar::one() => {}
                _ => return Err(Error::InvalidInput(format!("{n}: arcs need length in (0, 1)"))),
            }
        }
        Ok(Self::geometric(Ambient::Circle, named, arc_meet))
    }

    fn geometric(ambient: Ambient, named: Vec<(String, Shape)>, f: fn(&Shape, &Shape) -> Piece) -> Self {
        let (names, shapes): (Vec<String>, Vec<Shape>) = named.into_iter().unzip();
        let n = shapes.len();
        let meet = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match f(&shapes[i], &shapes[j]) {
                        Piece::Empty => Meet::Empty,
                        Piece::Several => Meet::Outside,
                        Piece::One(s) => shapes.iter().position(|t| *t == s).map_or(Meet::Outside, Meet::Open),
                    })
                    .collect()
            })
            .collect();
        OpenPoset { ambient, names, shapes: Some(shapes), meet }
    }

    /// An abstract poset given by its meet table (`None` = empty
    /// intersection); inclusion is `u ≤ v ⇔ u ∧ v = u`.
    pub fn from_table(names: Vec<String>, meet: Vec<Vec<Option<usize>>>) -> Result<Self> {
        let n = names.len();
        if meet.len() != n || meet.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("meet table must be square".into()));
        }
        let meet: Vec<Vec<Meet>> =
            meet.into_iter().map(|r| r.into_iter().map(|m| m.map_or(Meet::Empty, Meet::Open)).collect()).collect();
        let p = OpenPoset { ambient: Ambient::Abstract, names, shapes: None, meet };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<()> {
        let n = self.len();
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        for a in 0..n {
            if self.meet(a, a) != Meet::Open(a) {
                return bad(format!("{} ∧ {} must be {}", self.names[a], self.names[a], self.names[a]));
            }
            for b in 0..n {
                if self.meet(a, b) != self.meet(b, a) {
                    return bad(format!("meet of {} and {} is not symmetric", self.names[a], self.names[b]));
                }
                if let Meet::Open(m) = self.meet(a, b) {
                    if m >= n || !self.includes(m, a) || !self.includes(m, b) {
                        return bad(format!("meet of {} and {} is not below both", self.names[a], self.names[b]));
                    }
                }
                for c in 0..n {
                    if self.meet3(a, b, c) != self.meet3(b, c, a) {
                        return bad(format!(
                            "meet is not associative on {}, {}, {}",
                            self.names[a], self.names[b], self.names[c]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn meet3(&self, a: usize, b: usize, c: usize) -> Meet {
        match self.meet(a, b) {
            Meet::Open(m) => self.meet(m, c),
            other => other,
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, u: usize) -> &str {
        &self.names[u]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn shape(&self, u: usize) -> Option<&Shape> {
        self.shapes.as_ref().map(|s| &s[u])
    }

    pub fn meet(&self, a: usize, b: usize) -> Meet {
        self.meet[a][b]
    }

    pub fn disjoint(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == Meet::Empty
    }

    /// `u ⊆ v`.
    pub fn includes(&self, u: usize, v: usize) -> bool {
        self.meet(u, v) == Meet::Open(u)
    }

    /// Whether `family` is pairwise disjoint.
    pub fn is_disjoint_family(&self, family: &[usize]) -> bool {
        family.iter().enumerate().all(|(i, &u)| family[i + 1..].iter().all(|&v| self.disjoint(u, v)))
    }

    /// All pairwise disjoint families (sorted, possibly empty) drawn from
    /// `opens`.
    pub fn disjoint_families(&self, opens: &[usize]) -> Vec<Vec<usize>> {
        let mut sorted = opens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn go(p: &OpenPoset, pos: usize, opens: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if pos == opens.len() {
                out.push(cur.clone());
                return;
            }
            go(p, pos + 1, opens, cur, out);
            if cur.iter().all(|&u| p.disjoint(u, opens[pos])) {
                cur.push(opens[pos]);
                go(p, pos + 1, opens, cur, out);
                cur.pop();
            }
        }
        go(self, 0, &sorted, &mut cur, &mut out);
        out
    }

    /// Opens contained in `v`.
    pub fn below(&self, v: usize) -> Vec<usize> {
        (0..self.len()).filter(|&u| self.includes(u, v)).collect()
    }

    /// The intersection of `cover` is closed under pairwise intersection
    /// inside the cover; returns the first offending pair otherwise.
    pub fn check_closed(&self, cover: &[usize]) -> Result<()> {
        for &a in cover {
            for &b in cover {
                match self.meet(a, b) {
                    Meet::Empty => {}
                    Meet::Open(m) if cover.contains(&m) => {}
                    _ => {
                        return Err(Error::NonClosedCover(format!(
                            "{} ∩ {} is not in the cover",
                            self.names[a], self.names[b]
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    /// The poset with every arc reflected `t ↦ −t` (names kept).
    pub fn reflected(&self) -> Self {
        let mut p = self.clone();
        if let Some(shapes) = &mut p.shapes {
            for s in shapes.iter_mut() {
                *s = match s.clone() {
                    Shape::Interval { lo, hi, lo_closed, hi_closed } => {
                        Shape::Interval { lo: -hi, hi: -lo, lo_closed: hi_closed, hi_closed: lo_closed }
                    }
                    Shape::Arc { start, length } => Shape::arc(-(&start + &length), length),
                };
            }
        }
        p
    }
}
