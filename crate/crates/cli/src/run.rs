//! Dispatch of a job to the engine.

use std::collections::BTreeMap;
use std::time::Instant;

use hoch::cech::{
    cech_complex, circle_arc_algebra, cone_excision, constant, excision_report, interval_stratified, trivial,
    validate_prefactorization, Ambient, OpenPoset, PrefactorizationData, Shape,
};
use hoch::dga::{
    augmentation_module, exterior, free_commutative, ground_field, polynomial, regular_bimodule,
    truncated_polynomial, AlgebraAutomorphism, DGAlgebra, DGModule, Vector,
};
use hoch::hochschild::{
    classical_cochains, classical_hochschild, cup_laws, cup_table, hh_via_enveloping, hkr_prediction,
    hochschild_chain, hochschild_chain_with_coeff, iterated_bar, periodic_hochschild, shuffle_laws,
    twisted_hochschild, two_sided_bar, HochschildComplex, SpaceDescriptor, Window,
};
use hoch::homalg::field::{parse_scalar, Scalar};
use hoch::homalg::rank::rank;
use hoch::homalg::{homology_dims, ChainComplex, Coefficients, HomologyTable, SparseMatrix};
use hoch::simp::{circle, interval, point, sphere_small, sphere_standard, surface, torus, SimplicialSet};
use hoch::Error;
use num_traits::{One, Zero};

use crate::report::{BettiEntry, Check, Delta, Explanation, Report, Verdict};
use crate::spec::{AlgebraSpec, CoverSpec, JobSpec, ModuleSpec, Oracle, SpaceSpec, Task, ValueSpec};

/// Everything that stops a job before a verdict.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Infeasible { estimate: usize, cap: usize },
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Infeasible { .. } => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Infeasible { estimate, cap } => {
                write!(f, "infeasible: estimated block dimension {estimate} exceeds cap {cap}")
            }
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Infeasible { estimate, cap } => Failure::Infeasible { estimate, cap },
            e => Failure::Usage(e.to_string()),
        }
    }
}

type Out<T> = Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> Out<T> {
    Err(Failure::Usage(msg.into()))
}

const DEFAULT_LEVEL: usize = 8;

struct Job<'a> {
    spec: &'a JobSpec,
    window: Window,
}

impl<'a> Job<'a> {
    fn new(spec: &'a JobSpec) -> Out<Self> {
        let [lo, hi] = spec.window;
        let mut window = Window::new(lo, hi).with_cap(spec.cap.unwrap_or(hoch::hochschild::DEFAULT_CAP));
        if let Some(ws) = &spec.weights {
            window = window.with_weights(ws.clone());
        }
        if let Some(c) = &spec.coefficients {
            window = window.with_coefficients(c.parse::<Coefficients>()?);
        }
        if spec.unnormalized {
            window = window.unnormalized();
        }
        Ok(Job { spec, window })
    }

    fn algebra(&self) -> Out<DGAlgebra> {
        let a = match self.spec.algebra.as_ref() {
            None => return usage(format!("task {:?} needs an algebra", self.spec.task)),
            Some(AlgebraSpec::Ground) => ground_field(),
            Some(AlgebraSpec::Exterior { degree }) => exterior(*degree)?,
            Some(AlgebraSpec::TruncatedPolynomial { n, degree }) => truncated_polynomial(*n, *degree)?,
            Some(AlgebraSpec::Polynomial { weight_bound }) => polynomial(*weight_bound)?,
            Some(AlgebraSpec::Free { name, generators, weight_bound }) => {
                free_commutative(name, generators, *weight_bound)?
            }
            Some(AlgebraSpec::Presentation(p)) => p.build()?,
        };
        Ok(a)
    }

    fn space_spec(&self) -> Out<&SpaceSpec> {
        match &self.spec.space {
            Some(s) => Ok(s),
            None => usage(format!("task {:?} needs a space", self.spec.task)),
        }
    }

    fn module(&self, a: &DGAlgebra, m: Option<ModuleSpec>) -> Out<Option<DGModule>> {
        Ok(match m {
            None => None,
            Some(ModuleSpec::Regular) => Some(regular_bimodule(a)),
            Some(ModuleSpec::Augmentation) => Some(augmentation_module(a)?),
        })
    }

    fn side(&self, a: &DGAlgebra, m: Option<ModuleSpec>, which: &str) -> Out<DGModule> {
        match self.module(a, m)? {
            Some(m) => Ok(m),
            None => usage(format!("task {:?} needs a {which} module", self.spec.task)),
        }
    }

    /// Higher Hochschild chains over `space`, growing the model when the
    /// window needs more levels than it has and no level was given.
    fn chains(&self, space: &SpaceSpec, a: &DGAlgebra, m: Option<&DGModule>) -> Out<HochschildComplex> {
        let fixed = space.level();
        let mut level = fixed.unwrap_or(DEFAULT_LEVEL);
        loop {
            let y = model(space, level)?;
            let r = match m {
                None => hochschild_chain(&y, a, &self.window),
                Some(m) => hochschild_chain_with_coeff(&y, a, m, &self.window),
            };
            match r {
                Err(Error::InsufficientLevels { needed, .. }) if fixed.is_none() && needed > level => level = needed,
                other => return Ok(other?),
            }
        }
    }

    fn table(&self, c: &ChainComplex) -> Out<HomologyTable> {
        Ok(homology_dims(c, self.window.lo, self.window.hi, &self.window.weights)?)
    }

    fn monodromy(&self, a: &DGAlgebra) -> Out<AlgebraAutomorphism> {
        let Some(mon) = &self.spec.monodromy else {
            return Ok(AlgebraAutomorphism::identity(a));
        };
        let mut images: Vec<Vector> = (0..a.dim()).map(|i| vec![(i, Scalar::one())]).collect();
        for (name, image) in mon {
            let i = a.index_of(name).ok_or_else(|| Failure::Usage(format!("monodromy: no basis element {name:?}")))?;
            let mut v = Vec::new();
            for (target, c) in image {
                let j = a
                    .index_of(target)
                    .ok_or_else(|| Failure::Usage(format!("monodromy: no basis element {target:?}")))?;
                v.push((j, parse_scalar(c)?));
            }
            images[i] = v;
        }
        Ok(AlgebraAutomorphism::new(a, images)?)
    }
}

pub fn model(s: &SpaceSpec, level: usize) -> Out<SimplicialSet> {
    Ok(match *s {
        SpaceSpec::Point { .. } => point(level),
        SpaceSpec::Interval { .. } => interval(level),
        SpaceSpec::Circle { .. } => circle(level),
        SpaceSpec::SphereStandard { d, .. } => sphere_standard(d, level)?,
        SpaceSpec::SphereSmall { d, .. } => sphere_small(d, level)?,
        SpaceSpec::Torus { .. } => torus(level),
        SpaceSpec::Surface { genus, .. } => surface(genus, level)?,
    })
}

fn descriptor(s: &SpaceSpec) -> Out<SpaceDescriptor> {
    match *s {
        SpaceSpec::Circle { .. } => Ok(SpaceDescriptor::Sphere(1)),
        SpaceSpec::SphereStandard { d, .. } | SpaceSpec::SphereSmall { d, .. } => Ok(SpaceDescriptor::Sphere(d)),
        SpaceSpec::Torus { .. } => Ok(SpaceDescriptor::Surface(1)),
        SpaceSpec::Surface { genus, .. } => Ok(SpaceDescriptor::Surface(genus)),
        _ => usage("the HKR prediction needs a sphere or a surface"),
    }
}

fn parse_q(s: &Option<String>, field: &str, open: &str) -> Out<Scalar> {
    match s {
        Some(s) => Ok(parse_scalar(s)?),
        None => usage(format!("open {open:?} needs {field}")),
    }
}

fn poset(c: &CoverSpec) -> Out<OpenPoset> {
    let mut named = Vec::new();
    for o in &c.opens {
        let shape = match c.ambient {
            Ambient::Line => Shape::Interval {
                lo: parse_q(&o.lo, "lo", &o.name)?,
                hi: parse_q(&o.hi, "hi", &o.name)?,
                lo_closed: o.lo_closed,
                hi_closed: o.hi_closed,
            },
            Ambient::Circle => Shape::arc(parse_q(&o.start, "start", &o.name)?, parse_q(&o.length, "length", &o.name)?),
            Ambient::Abstract => return usage("abstract posets are not supported in job files"),
        };
        named.push((o.name.clone(), shape));
    }
    Ok(match c.ambient {
        Ambient::Line => OpenPoset::intervals(named)?,
        _ => OpenPoset::arcs(named)?,
    })
}

fn indices(p: &OpenPoset, names: &[String]) -> Out<Vec<usize>> {
    names
        .iter()
        .map(|n| p.index_of(n).ok_or_else(|| Failure::Usage(format!("no open named {n:?}"))))
        .collect()
}

/// Simplicial homology of `y` by degree `−n`, for `n` below its top level.
fn simplicial_homology(y: &SimplicialSet, coeffs: Coefficients) -> Out<BTreeMap<i64, usize>> {
    let top = y.top_level();
    let boundary = |n: usize| -> SparseMatrix {
        let cols = (0..y.size(n))
            .map(|s| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for i in 0..=n {
                    let c = if i % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                    *acc.entry(y.face(n, i, s)).or_insert_with(Scalar::zero) += c;
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect();
        SparseMatrix::from_columns(y.size(n - 1), cols)
    };
    let mut ranks = vec![0; top + 1];
    for (n, r) in ranks.iter_mut().enumerate().skip(1) {
        *r = rank(&boundary(n), coeffs)?;
    }
    Ok((0..top).map(|n| (-(n as i64), y.size(n) - ranks[n] - ranks[n + 1])).collect())
}

fn by_degree(t: &BTreeMap<(i64, i64), usize>, lo: i64, hi: i64) -> BTreeMap<i64, usize> {
    (lo..=hi).map(|k| (k, t.iter().filter(|((d, _), _)| *d == k).map(|(_, v)| v).sum())).collect()
}

fn degree_deltas(source: &str, expected: &BTreeMap<i64, usize>, computed: &BTreeMap<i64, usize>) -> Vec<Delta> {
    computed
        .iter()
        .map(|(&k, &c)| Delta {
            source: source.to_string(),
            degree: k,
            weight: None,
            expected: expected.get(&k).copied().unwrap_or(0),
            computed: c,
        })
        .collect()
}

/// What the main computation produced.
struct Outcome {
    complex: ChainComplex,
    homology: HomologyTable,
    checks: Vec<Check>,
    table: Option<serde_json::Value>,
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check { name: name.to_string(), passed, detail }
}

fn law_check(name: &str, r: &hoch::hochschild::LawReport) -> Check {
    let detail = match r.failures.first() {
        None => format!("{} identities", r.checks),
        Some(f) => format!("{} of {} failed, first: {f}", r.failures.len(), r.checks),
    };
    check(name, r.passed(), detail)
}

impl Job<'_> {
    fn compute(&self) -> Out<Outcome> {
        let mut checks = Vec::new();
        let mut table = None;
        let complex = match self.spec.task {
            Task::Homology | Task::HkrCheck | Task::ShuffleCheck => {
                let a = self.algebra()?;
                let m = self.module(&a, self.spec.module)?;
                let h = self.chains(self.space_spec()?, &a, m.as_ref())?;
                if self.spec.task == Task::ShuffleCheck {
                    checks.push(law_check("shuffle laws", &shuffle_laws(&h)?));
                }
                h.complex().clone()
            }
            Task::Bar => {
                let a = self.algebra()?;
                let right = self.side(&a, self.spec.right, "right")?;
                let left = self.side(&a, self.spec.left, "left")?;
                two_sided_bar(&right, &a, &left, &self.window)?
            }
            Task::IteratedBar => {
                let a = self.algebra()?;
                let i = self.spec.i.ok_or_else(|| Failure::Usage("iterated-bar needs i".into()))?;
                iterated_bar(&a, i, &self.window)?
            }
            Task::TwistedHh => {
                let a = self.algebra()?;
                twisted_hochschild(&a, &self.monodromy(&a)?, &self.window)?
            }
            Task::ExcisionCheck => {
                let a = self.algebra()?;
                let r = excision_report(&a, &self.window)?;
                checks.push(check(
                    "excision",
                    r.agree,
                    format!("enveloping {:?} vs circle {:?}", r.enveloping, r.circle),
                ));
                hh_via_enveloping(&a, &self.window)?
            }
            Task::CupTable => {
                let a = self.algebra()?;
                let m = self.module(&a, self.spec.module)?.unwrap_or_else(|| regular_bimodule(&a));
                let c = classical_cochains(&a, &m, &self.window)?;
                checks.push(law_check("cup laws", &cup_laws(&c, self.window.hi.min(c.complete_top()))?));
                let t = cup_table(&c, self.window.lo, self.window.hi)?;
                table = Some(serde_json::to_value(&t).expect("tables serialize"));
                c.complex().clone()
            }
            Task::Cech => {
                let cover = self.spec.cover.as_ref().ok_or_else(|| Failure::Usage("cech needs a cover".into()))?;
                let f = self.prefactorization(cover)?;
                let v = validate_prefactorization(&f);
                let detail = match &v.witness {
                    None => format!("{} identities", v.checks),
                    Some(w) => w.to_string(),
                };
                checks.push(check("prefactorization axioms", v.passed, detail));
                let p = f.poset();
                let all: Vec<usize> = (0..p.len()).collect();
                let u = match &cover.cover {
                    Some(names) => indices(p, names)?,
                    None => all,
                };
                cech_complex(&f, &u, cover.max_level)?.total().clone()
            }
        };
        if complex.max_block() > self.window.cap {
            return Err(Failure::Infeasible { estimate: complex.max_block(), cap: self.window.cap });
        }
        let homology = self.table(&complex)?;
        Ok(Outcome { complex, homology, checks, table })
    }

    fn prefactorization(&self, cover: &CoverSpec) -> Out<PrefactorizationData> {
        let p = poset(cover)?;
        Ok(match &cover.values {
            ValueSpec::Constant => constant(&p),
            ValueSpec::Trivial => trivial(&p),
            ValueSpec::ArcAlgebra { orientation } => circle_arc_algebra(&self.algebra()?, &p, *orientation)?,
            ValueSpec::Stratified => {
                let a = self.algebra()?;
                let right = self.side(&a, self.spec.right, "right")?;
                let left = self.side(&a, self.spec.left, "left")?;
                interval_stratified(&right, &a, &left, &p)?
            }
        })
    }

    fn oracle(&self, o: &Oracle, got: &HomologyTable) -> Out<Vec<Delta>> {
        let (lo, hi) = (self.window.lo, self.window.hi);
        let computed = got.by_degree();
        let via_complex = |name: &str, c: ChainComplex| -> Out<Vec<Delta>> {
            Ok(degree_deltas(name, &self.table(&c)?.by_degree(), &computed))
        };
        match o {
            Oracle::Classical => {
                let a = self.algebra()?;
                let m = self.module(&a, self.spec.module)?.unwrap_or_else(|| regular_bimodule(&a));
                via_complex("classical", classical_hochschild(&a, &m, &self.window)?)
            }
            Oracle::Enveloping => via_complex("enveloping", hh_via_enveloping(&self.algebra()?, &self.window)?),
            Oracle::TwoSidedBar => {
                let a = self.algebra()?;
                let k = augmentation_module(&a)?;
                via_complex("two-sided bar", two_sided_bar(&k, &a, &k, &self.window)?)
            }
            Oracle::Periodic => {
                let Some(AlgebraSpec::TruncatedPolynomial { n, degree: 0 }) = self.spec.algebra else {
                    return usage("the periodic oracle needs a truncated polynomial algebra in degree 0");
                };
                let a = self.algebra()?;
                let c = self.twist_factor(&a)?;
                let t = periodic_hochschild(n, &c, lo, self.window.coefficients)?;
                Ok(degree_deltas("periodic resolution", &by_degree(&t, lo, hi), &computed))
            }
            Oracle::ModuleDims => {
                let a = self.algebra()?;
                let m = self.module(&a, self.spec.module)?.unwrap_or_else(|| regular_bimodule(&a));
                let mut dims = BTreeMap::new();
                for i in 0..m.dim() {
                    *dims.entry(m.degree(i)).or_insert(0) += 1;
                }
                Ok(degree_deltas("module dims", &dims, &computed))
            }
            Oracle::Hkr => {
                let a = self.algebra()?;
                let p = hkr_prediction(&a, descriptor(self.space_spec()?)?, &self.window)?;
                let mut out = Vec::new();
                for &w in &p.weights {
                    for k in lo..=hi {
                        out.push(Delta {
                            source: "hkr".into(),
                            degree: k,
                            weight: Some(w),
                            expected: p.get(k, w),
                            computed: got.get(k, w),
                        });
                    }
                }
                Ok(out)
            }
            Oracle::Space { space } => {
                let a = self.algebra()?;
                let m = self.module(&a, self.spec.module)?;
                let h = self.chains(space, &a, m.as_ref())?;
                Ok(degree_deltas("other model", &h.homology()?.by_degree(), &computed))
            }
            Oracle::Simplicial { space } => {
                let y = model(space, space.level().unwrap_or(DEFAULT_LEVEL))?;
                let s = simplicial_homology(&y, self.window.coefficients)?;
                let window: BTreeMap<i64, usize> = computed.keys().map(|&k| (k, 0)).collect();
                if let Some(k) = window.keys().find(|&&k| k <= -(y.top_level() as i64)) {
                    return usage(format!("simplicial oracle: degree {k} needs a model above level {}", y.top_level()));
                }
                Ok(degree_deltas("simplicial", &s, &computed))
            }
            Oracle::Gluing => {
                let cover = self.spec.cover.as_ref().ok_or_else(|| Failure::Usage("gluing needs a cover".into()))?;
                let g = cover.gluing.as_ref().ok_or_else(|| Failure::Usage("gluing oracle needs cover.gluing".into()))?;
                let f = self.prefactorization(cover)?;
                let p = f.poset();
                let c = cone_excision(&f, &indices(p, &g.x)?, &indices(p, &g.y)?, &indices(p, &g.z)?, cover.max_level)?;
                let glued = self.table(&c)?.by_degree();
                Ok(degree_deltas("gluing", &glued, &computed))
            }
        }
    }

    /// `c` with `mon(x) = c·x` for the generator `x`.
    fn twist_factor(&self, a: &DGAlgebra) -> Out<Scalar> {
        if self.spec.task != Task::TwistedHh {
            return Ok(Scalar::one());
        }
        let mon = self.monodromy(a)?;
        let x = a.index_of("x").ok_or_else(|| Failure::Usage("no generator named x".into()))?;
        match mon.image(x) {
            [(j, c)] if *j == x => Ok(c.clone()),
            [] => Ok(Scalar::zero()),
            _ => usage("the periodic oracle needs a monodromy x ↦ c·x"),
        }
    }
}

pub fn run(spec: &JobSpec) -> Out<Report> {
    let start = Instant::now();
    let job = Job::new(spec)?;
    let out = job.compute()?;
    let [lo, hi] = spec.window;
    let mut deltas = Vec::new();
    let expect = spec.expect.clone().unwrap_or_default();
    let mut oracles = expect.oracles.clone();
    if spec.task == Task::HkrCheck && !oracles.contains(&Oracle::Hkr) {
        oracles.push(Oracle::Hkr);
    }
    if let Some(b) = &expect.betti {
        if b.len() != (hi - lo + 1) as usize {
            return usage(format!("expect.betti has {} entries for a window of {}", b.len(), hi - lo + 1));
        }
        let want: BTreeMap<i64, usize> = (lo..=hi).rev().zip(b.iter().copied()).collect();
        deltas.extend(degree_deltas("expected", &want, &out.homology.by_degree()));
    }
    for (&w, b) in &expect.betti_by_weight {
        if b.len() != (hi - lo + 1) as usize {
            return usage(format!("expect.betti_by_weight[{w}] has the wrong length"));
        }
        for (k, &e) in (lo..=hi).rev().zip(b) {
            deltas.push(Delta {
                source: "expected".into(),
                degree: k,
                weight: Some(w),
                expected: e,
                computed: out.homology.get(k, w),
            });
        }
    }
    for o in &oracles {
        deltas.extend(job.oracle(o, &out.homology)?);
    }
    let betti = out
        .homology
        .entries()
        .map(|((degree, weight), dim)| BettiEntry { degree, weight, dim })
        .collect();
    let mut report = Report {
        job: spec.clone(),
        window: spec.window,
        coefficients: job.window.coefficients.to_string(),
        betti,
        deltas,
        checks: out.checks,
        table: out.table,
        max_block: out.complex.max_block(),
        wall_ms: start.elapsed().as_millis() as u64,
        verdict: Verdict::Fail,
    };
    report.decide();
    Ok(report)
}

fn cost(c: &ChainComplex) -> u128 {
    let mut total = 0u128;
    for (&(k, w), _) in c.blocks() {
        let (cols, rows) = (c.dim(k, w) as u128, c.dim(k + 1, w) as u128);
        total += rows * cols * rows.min(cols);
    }
    total
}

/// Builds the complex and reports its shape without computing homology.
pub fn explain(spec: &JobSpec) -> Out<Explanation> {
    let job = Job::new(spec)?;
    let (complex, truncation_level, level_dims) = match spec.task {
        Task::Homology | Task::HkrCheck | Task::ShuffleCheck => {
            let a = job.algebra()?;
            let m = job.module(&a, spec.module)?;
            let h = job.chains(job.space_spec()?, &a, m.as_ref())?;
            let dims = (0..h.level_count()).map(|n| h.level_dims(n).values().sum()).collect();
            (h.complex().clone(), Some(h.truncation().level), dims)
        }
        Task::Bar => {
            let a = job.algebra()?;
            let right = job.side(&a, spec.right, "right")?;
            let left = job.side(&a, spec.left, "left")?;
            (two_sided_bar(&right, &a, &left, &job.window)?, None, Vec::new())
        }
        Task::IteratedBar => {
            let a = job.algebra()?;
            let i = spec.i.ok_or_else(|| Failure::Usage("iterated-bar needs i".into()))?;
            (iterated_bar(&a, i, &job.window)?, None, Vec::new())
        }
        Task::TwistedHh => {
            let a = job.algebra()?;
            (twisted_hochschild(&a, &job.monodromy(&a)?, &job.window)?, None, Vec::new())
        }
        Task::ExcisionCheck => (hh_via_enveloping(&job.algebra()?, &job.window)?, None, Vec::new()),
        Task::CupTable => {
            let a = job.algebra()?;
            let m = job.module(&a, spec.module)?.unwrap_or_else(|| regular_bimodule(&a));
            (classical_cochains(&a, &m, &job.window)?.complex().clone(), None, Vec::new())
        }
        Task::Cech => {
            let cover = spec.cover.as_ref().ok_or_else(|| Failure::Usage("cech needs a cover".into()))?;
            let f = job.prefactorization(cover)?;
            let p = f.poset();
            let u = match &cover.cover {
                Some(names) => indices(p, names)?,
                None => (0..p.len()).collect(),
            };
            let c = cech_complex(&f, &u, cover.max_level)?;
            (c.total().clone(), Some(c.top_level()), Vec::new())
        }
    };
    if complex.max_block() > job.window.cap {
        return Err(Failure::Infeasible { estimate: complex.max_block(), cap: job.window.cap });
    }
    Ok(Explanation {
        job: spec.clone(),
        truncation_level,
        level_dims,
        blocks: complex.blocks().iter().map(|(&(k, w), &d)| (k, w, d)).collect(),
        max_block: complex.max_block(),
        elimination_cost: cost(&complex),
    })
}
