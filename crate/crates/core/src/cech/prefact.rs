//! Prefactorization algebras on a finite poset of opens.
//!
//! Values are finite-dimensional complexes given on a basis. The structure
//! map of a disjoint family `U_1, …, U_n ⊆ V` is evaluated on basis tensors
//! through [`StructureMaps::apply`]; the family may be given in any order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poset::{Ambient, OpenPoset, Shape};
use crate::dga::multiop::sorting_sign;
use crate::dga::{DGAlgebra, DGModule, Vector};
use crate::error::{Error, Result};
use crate::homalg::field::{sign, Coefficients, Scalar};
use crate::homalg::{Block, ChainComplex, DegreeRange, SparseMatrix, WeightSet};

/// A finite-dimensional complex on a named basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Value {
    pub names: Vec<String>,
    pub degrees: Vec<i64>,
    pub weights: Vec<i64>,
    /// `d[i]` is the image of basis element `i`.
    pub d: Vec<Vector>,
}

impl Value {
    /// The ground field in degree 0.
    pub fn ground() -> Self {
        Value { names: vec!["1".into()], degrees: vec![0], weights: vec![0], d: vec![Vec::new()] }
    }

    pub fn of_algebra(a: &DGAlgebra) -> Self {
        Value {
            names: a.basis().iter().map(|b| b.name.clone()).collect(),
            degrees: a.basis().iter().map(|b| b.degree).collect(),
            weights: a.basis().iter().map(|b| b.weight).collect(),
            d: (0..a.dim()).map(|i| a.d(i).to_vec()).collect(),
        }
    }

    pub fn of_module(m: &DGModule) -> Self {
        Value {
            names: m.basis().iter().map(|b| b.name.clone()).collect(),
            degrees: m.basis().iter().map(|b| b.degree).collect(),
            weights: m.basis().iter().map(|b| b.weight).collect(),
            d: (0..m.dim()).map(|i| m.d(i).to_vec()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    /// Block and position of every basis element.
    pub fn positions(&self) -> Vec<(Block, usize)> {
        let mut seen: BTreeMap<Block, usize> = BTreeMap::new();
        (0..self.dim())
            .map(|i| {
                let b = (self.degrees[i], self.weights[i]);
                let e = seen.entry(b).or_insert(0);
                *e += 1;
                (b, *e - 1)
            })
            .collect()
    }

    pub fn complex(&self, coeffs: Coefficients) -> Result<ChainComplex> {
        let pos = self.positions();
        let mut blocks: BTreeMap<Block, usize> = BTreeMap::new();
        for (b, _) in &pos {
            *blocks.entry(*b).or_insert(0) += 1;
        }
        let mut cols: BTreeMap<Block, Vec<Vec<(usize, Scalar)>>> =
            blocks.iter().map(|(b, d)| (*b, vec![Vec::new(); *d])).collect();
        for i in 0..self.dim() {
            let (b, j) = pos[i];
            for (t, x) in &self.d[i] {
                if pos[*t].0 != (b.0 + 1, b.1) {
                    return Err(Error::DegreeMismatch(format!("d({}) leaves its block", self.names[i])));
                }
                cols.get_mut(&b).unwrap()[j].push((pos[*t].1, x.clone()));
            }
        }
        let diff = cols
            .into_iter()
            .filter_map(|(b, c)| {
                let rows = blocks.get(&(b.0 + 1, b.1)).copied()?;
                Some((b, SparseMatrix::from_columns(rows, c)))
            })
            .collect();
        ChainComplex::new(coeffs, blocks, diff, DegreeRange::ALL, WeightSet::All)
    }
}

/// Whether families are combined by tensor product or by direct sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonoidalMode {
    Tensor,
    /// Cosheaf regime: the product is `⊕`, the unit object is `0`, and the
    /// structure is carried by the unary maps.
    Coproduct,
}

/// Structure maps evaluated on basis elements.
pub trait StructureMaps: Send + Sync + fmt::Debug {
    /// `ρ_{family, target}(x_1 ⊗ ⋯ ⊗ x_n)` where `inputs[i]` is a basis
    /// element of the value on `family[i]`. In coproduct mode only unary
    /// families are used.
    fn apply(&self, family: &[usize], target: usize, inputs: &[usize]) -> Vector;
}

#[derive(Debug, Clone)]
pub struct PrefactorizationData {
    name: String,
    poset: OpenPoset,
    values: Vec<Value>,
    structure: Arc<dyn StructureMaps>,
    mode: MonoidalMode,
}

impl PrefactorizationData {
    pub fn new(
        name: impl Into<String>,
        poset: OpenPoset,
        values: Vec<Value>,
        structure: Arc<dyn StructureMaps>,
        mode: MonoidalMode,
    ) -> Result<Self> {
        if values.len() != poset.len() {
            return Err(Error::InvalidInput(format!("{} values for {} opens", values.len(), poset.len())));
        }
        Ok(PrefactorizationData { name: name.into(), poset, values, structure, mode })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn poset(&self) -> &OpenPoset {
        &self.poset
    }

    pub fn value(&self, u: usize) -> &Value {
        &self.values[u]
    }

    pub fn mode(&self) -> MonoidalMode {
        self.mode
    }

    pub fn structure(&self) -> &Arc<dyn StructureMaps> {
        &self.structure
    }

    /// The same data with other structure maps.
    pub fn with_structure(&self, structure: Arc<dyn StructureMaps>) -> Self {
        PrefactorizationData { structure, ..self.clone() }
    }

    pub fn rho(&self, family: &[usize], target: usize, inputs: &[usize]) -> Vector {
        self.structure.apply(family, target, inputs)
    }

    /// `ρ` extended multilinearly to a sum of basis tensors.
    pub fn rho_vec(&self, family: &[usize], target: usize, inputs: &[(Vec<usize>, Scalar)]) -> Vector {
        let mut acc = BTreeMap::new();
        for (xs, c) in inputs {
            for (i, x) in self.rho(family, target, xs) {
                *acc.entry(i).or_insert_with(Scalar::zero) += c * x;
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }
}

/// Koszul sign of listing `inputs` (of values with `degree`) in the order
/// given by `keys`.
pub(crate) fn koszul(keys: &[usize], degrees: &[i64]) -> Scalar {
    let odd: Vec<bool> = degrees.iter().map(|d| d % 2 != 0).collect();
    sorting_sign(keys, &odd)
}

#[derive(Debug)]
struct Unital;

impl StructureMaps for Unital {
    fn apply(&self, _: &[usize], _: usize, _: &[usize]) -> Vector {
        vec![(0, Scalar::one())]
    }
}

/// `U ↦ k` with every structure map the multiplication of scalars.
pub fn trivial(poset: &OpenPoset) -> PrefactorizationData {
    let values = vec![Value::ground(); poset.len()];
    PrefactorizationData::new("trivial", poset.clone(), values, Arc::new(Unital), MonoidalMode::Tensor)
        .expect("one value per open")
}

/// The constant precosheaf `U ↦ k` with identity corestrictions.
pub fn constant(poset: &OpenPoset) -> PrefactorizationData {
    let values = vec![Value::ground(); poset.len()];
    PrefactorizationData::new("constant", poset.clone(), values, Arc::new(Unital), MonoidalMode::Coproduct)
        .expect("one value per open")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Positive,
    Negative,
}

/// Position of each member of `family` along `target`, in the direction of
/// the ambient.
fn offsets(poset: &OpenPoset, family: &[usize], target: usize) -> Vec<Scalar> {
    let start = |u: usize| match poset.shape(u) {
        Some(Shape::Arc { start, .. }) => start.clone(),
        Some(Shape::Interval { lo, .. }) => lo.clone(),
        None => unreachable!("geometric poset"),
    };
    let s0 = start(target);
    family
        .iter()
        .map(|&u| {
            let mut x = start(u) - &s0;
            if poset.ambient() == Ambient::Circle && x < Scalar::zero() {
                x += Scalar::one();
            }
            x
        })
        .collect()
}

/// Ranks of `offsets` in increasing order (ties are impossible for disjoint
/// members).
fn ranks(offsets: &[Scalar], reverse: bool) -> Vec<usize> {
    let mut order: Vec<usize> = (0..offsets.len()).collect();
    order.sort_by(|&i, &j| offsets[i].cmp(&offsets[j]));
    if reverse {
        order.reverse();
    }
    let mut rank = vec![0; offsets.len()];
    for (r, i) in order.into_iter().enumerate() {
        rank[i] = r;
    }
    rank
}

fn ordered(poset: &OpenPoset, family: &[usize], target: usize, reverse: bool) -> (Vec<usize>, Vec<usize>) {
    let rank = ranks(&offsets(poset, family, target), reverse);
    let mut order: Vec<usize> = (0..family.len()).collect();
    order.sort_by_key(|&i| rank[i]);
    (rank, order)
}

#[derive(Debug)]
struct ArcProduct {
    algebra: DGAlgebra,
    poset: OpenPoset,
    orientation: Orientation,
}

impl StructureMaps for ArcProduct {
    fn apply(&self, family: &[usize], target: usize, inputs: &[usize]) -> Vector {
        let a = &self.algebra;
        let (rank, order) = ordered(&self.poset, family, target, self.orientation == Orientation::Negative);
        let degrees: Vec<i64> = inputs.iter().map(|&x| a.degree(x)).collect();
        let s = koszul(&rank, &degrees);
        let mut acc: Vector = vec![(a.unit(), s)];
        for i in order {
            acc = a.mul_vec(&acc, &[(inputs[i], Scalar::one())]);
        }
        acc
    }
}

/// `A` on every arc, multiplied in the cyclic order given by `orientation`.
pub fn circle_arc_algebra(a: &DGAlgebra, arcs: &OpenPoset, orientation: Orientation) -> Result<PrefactorizationData> {
    if arcs.ambient() != Ambient::Circle {
        return Err(Error::InvalidInput("circle_arc_algebra needs arcs of the circle".into()));
    }
    let half = Scalar::new(1.into(), 2.into());
    for u in 0..arcs.len() {
        if let Some(Shape::Arc { length, .. }) = arcs.shape(u) {
            if *length >= half {
                return Err(Error::OverlongArc(format!("{} has length {length}", arcs.name(u))));
            }
        }
    }
    let all: Vec<usize> = (0..arcs.len()).collect();
    arcs.check_closed(&all)?;
    a.audit()?;
    let structure = ArcProduct { algebra: a.clone(), poset: arcs.clone(), orientation };
    let name = match orientation {
        Orientation::Positive => format!("arcs({})", a.name()),
        Orientation::Negative => format!("arcs({})^-", a.name()),
    };
    PrefactorizationData::new(
        name,
        arcs.clone(),
        vec![Value::of_algebra(a); arcs.len()],
        Arc::new(structure),
        MonoidalMode::Tensor,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stratum {
    Right,
    Bulk,
    Left,
}

#[derive(Debug)]
struct IntervalMaps {
    right: DGModule,
    algebra: DGAlgebra,
    left: DGModule,
    poset: OpenPoset,
    strata: Vec<Stratum>,
}

impl StructureMaps for IntervalMaps {
    fn apply(&self, family: &[usize], target: usize, inputs: &[usize]) -> Vector {
        let a = &self.algebra;
        let (rank, order) = ordered(&self.poset, family, target, false);
        let degree = |i: usize| match self.strata[family[i]] {
            Stratum::Right => self.right.degree(inputs[i]),
            Stratum::Bulk => a.degree(inputs[i]),
            Stratum::Left => self.left.degree(inputs[i]),
        };
        let degrees: Vec<i64> = (0..family.len()).map(degree).collect();
        let s = koszul(&rank, &degrees);
        let scale = |v: Vector| v.into_iter().map(|(i, x)| (i, &s * x)).collect::<Vector>();
        let mut bulk: Vector = vec![(a.unit(), Scalar::one())];
        let mut edge: Option<usize> = None;
        for &i in &order {
            match self.strata[family[i]] {
                Stratum::Bulk => bulk = a.mul_vec(&bulk, &[(inputs[i], Scalar::one())]),
                _ => edge = Some(inputs[i]),
            }
        }
        match self.strata[target] {
            Stratum::Bulk => scale(bulk),
            Stratum::Right => {
                let m: Vector = match edge {
                    Some(x) => vec![(x, Scalar::one())],
                    None => self.right.pointed_element().expect("checked").to_vec(),
                };
                scale(self.right.right_vec(&m, &bulk))
            }
            Stratum::Left => {
                let m: Vector = match edge {
                    Some(x) => vec![(x, Scalar::one())],
                    None => self.left.pointed_element().expect("checked").to_vec(),
                };
                scale(self.left.left_vec(&bulk, &m))
            }
        }
    }
}

fn check_pointed(m: &DGModule) -> Result<()> {
    let p = m.pointed_element().ok_or_else(|| Error::UnpointedModule(m.name().to_string()))?;
    if p.iter().any(|(i, _)| m.degree(*i) != 0) || !m.d_vec(p).is_empty() {
        return Err(Error::UnpointedModule(format!("{}: the distinguished element must be a degree-0 cycle", m.name())));
    }
    Ok(())
}

/// `M^r` on intervals containing 0, `M^ℓ` on those containing 1 and `A` on
/// the others, with the module actions as structure maps.
pub fn interval_stratified(
    mr: &DGModule,
    a: &DGAlgebra,
    ml: &DGModule,
    intervals: &OpenPoset,
) -> Result<PrefactorizationData> {
    if !mr.has_right() || !ml.has_left() {
        return Err(Error::InvalidInput("need a right module and a left module".into()));
    }
    check_pointed(mr)?;
    check_pointed(ml)?;
    if intervals.ambient() != Ambient::Line {
        return Err(Error::InvalidInput("interval_stratified needs intervals".into()));
    }
    let (zero, one) = (Scalar::zero(), Scalar::one());
    let mut strata = Vec::new();
    for u in 0..intervals.len() {
        let Some(Shape::Interval { lo, hi, lo_closed, hi_closed }) = intervals.shape(u) else { unreachable!() };
        if *lo < zero || *hi > one {
            return Err(Error::InvalidInput(format!("{} is not inside [0, 1]", intervals.name(u))));
        }
        let has0 = *lo == zero && *lo_closed;
        let has1 = *hi == one && *hi_closed;
        let open_end = (!lo_closed || has0) && (!hi_closed || has1);
        if !open_end {
            return Err(Error::InvalidInput(format!("{} is not open in [0, 1]", intervals.name(u))));
        }
        strata.push(match (has0, has1) {
            (true, true) => {
                return Err(Error::InvalidInput(format!("{} contains both endpoints", intervals.name(u))))
            }
            (true, false) => Stratum::Right,
            (false, true) => Stratum::Left,
            (false, false) => Stratum::Bulk,
        });
    }
    let all: Vec<usize> = (0..intervals.len()).collect();
    intervals.check_closed(&all)?;
    let values = strata
        .iter()
        .map(|s| match s {
            Stratum::Right => Value::of_module(mr),
            Stratum::Bulk => Value::of_algebra(a),
            Stratum::Left => Value::of_module(ml),
        })
        .collect();
    let maps = IntervalMaps { right: mr.clone(), algebra: a.clone(), left: ml.clone(), poset: intervals.clone(), strata };
    PrefactorizationData::new(
        format!("[{}, {}, {}]", mr.name(), a.name(), ml.name()),
        intervals.clone(),
        values,
        Arc::new(maps),
        MonoidalMode::Tensor,
    )
}

/// Sign of a permutation acting on graded inputs.
pub(crate) fn permutation_sign(perm: &[usize], degrees: &[i64]) -> Scalar {
    let odd: Vec<bool> = degrees.iter().map(|d| d % 2 != 0).collect();
    let mut s = false;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] && odd[perm[i]] && odd[perm[j]] {
                s = !s;
            }
        }
    }
    sign(s)
}
