//! The acceptance criteria, one line each. Runs without the libtest
//! harness so the lines show up in `cargo test` output.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use hoch::cech::{
    cech_complex, circle_arc_algebra, cone_excision, constant, interval_stratified, trivial,
    validate_prefactorization, OpenPoset, Orientation, PrefactorizationData, Shape, StructureMaps,
};
use hoch::dga::{
    augmentation_module, exterior, multiop, polynomial, regular_bimodule, tensor_algebra, truncated_polynomial,
    AlgebraAutomorphism, AlgebraPresentation, DGAlgebra, Tensor, Vector,
};
use hoch::hochschild::{
    classical_cochains, classical_hochschild, cup_laws, hh_via_enveloping,
    hkr_prediction, hochschild_chain, hochschild_chain_with_coeff, hochschild_cochain, iterated_bar,
    shuffle_product, twisted_hochschild, two_sided_bar, Chain, HochschildComplex, SpaceDescriptor, Window,
};
use hoch::homalg::field::Scalar;
use hoch::homalg::{check_differential, cone, homology_dims, ChainComplex, ChainMap, WeightRequest};
use hoch::simp::{
    circle, interval, point, product, sphere_small, sphere_standard, surface, torus, wedge, SimplicialSet,
};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

fn q(n: i64) -> Scalar {
    Scalar::from_integer(n.into())
}

fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(n.into(), d.into())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

/// Hochschild chains over `model(level)`, raising the level until the window
/// is certified.
fn chains(
    model: impl Fn(usize) -> SimplicialSet,
    a: &DGAlgebra,
    m: Option<&hoch::dga::DGModule>,
    w: &Window,
) -> Result<HochschildComplex, String> {
    let mut level = 6;
    loop {
        let y = model(level);
        let r = match m {
            None => hochschild_chain(&y, a, w),
            Some(m) => hochschild_chain_with_coeff(&y, a, m, w),
        };
        match r {
            Err(hoch::Error::InsufficientLevels { needed, .. }) if needed > level => level = needed,
            other => return other.map_err(e),
        }
    }
}

fn descending(c: &ChainComplex, lo: i64, hi: i64) -> Result<Vec<usize>, String> {
    Ok(homology_dims(c, lo, hi, &WeightRequest::Present).map_err(e)?.descending())
}

/// Rank of a dense rational matrix by Gaussian elimination.
fn dense_rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for j in c..ncols {
                    let sub = &f * &rows[r][j];
                    rows[i][j] -= sub;
                }
            }
        }
        r += 1;
    }
    r
}

/// Matrix of a linear map on `k^n`, given on basis vectors.
fn matrix(n: usize, f: impl Fn(usize) -> Vector) -> Vec<Vec<Scalar>> {
    let mut m = vec![vec![Scalar::zero(); n]; n];
    for j in 0..n {
        for (i, x) in f(j) {
            m[i][j] += x;
        }
    }
    m
}

/// `dim HH_i(k[x]/xⁿ, A^σ)` for `0 ≤ i ≤ top` from the 2-periodic resolution,
/// with the operators assembled from the structure constants of `a`.
fn periodic_oracle(a: &DGAlgebra, sigma_x: &Vector, top: usize) -> Vec<usize> {
    let n = a.dim();
    let x = vec![(a.index_of("x").unwrap(), Scalar::one())];
    let unit = |j: usize| vec![(j, Scalar::one())];
    let left = |v: &Vector| a.mul_vec(&x, v);
    let right = |v: &Vector| a.mul_vec(v, sigma_x);
    let u = matrix(n, |j| {
        let mut out = left(&unit(j));
        out.extend(right(&unit(j)).into_iter().map(|(i, c)| (i, -c)));
        out
    });
    let v = matrix(n, |j| {
        let mut out = Vec::new();
        for p in 0..n {
            let mut m = unit(j);
            for _ in 0..p {
                m = left(&m);
            }
            for _ in 0..n - 1 - p {
                m = right(&m);
            }
            out.extend(m);
        }
        out
    });
    let (ru, rv) = (dense_rank(u), dense_rank(v));
    let rank_of = |i: usize| match i {
        0 => 0,
        i if i % 2 == 1 => ru,
        _ => rv,
    };
    (0..=top).map(|i| n - rank_of(i) - rank_of(i + 1)).collect()
}

/// Monomials in generators `(degree, weight, odd)`, odd ones at most once,
/// counted by `(degree, weight)` up to weight `max_w`.
fn monomials(gens: &[(i64, i64, bool)], max_w: i64) -> BTreeMap<(i64, i64), usize> {
    fn go(gens: &[(i64, i64, bool)], d: i64, w: i64, max_w: i64, out: &mut BTreeMap<(i64, i64), usize>) {
        let Some((&(gd, gw, odd), rest)) = gens.split_first() else {
            *out.entry((d, w)).or_insert(0) += 1;
            return;
        };
        let mut k = 0;
        while w + k * gw <= max_w && (!odd || k <= 1) {
            go(rest, d + k * gd, w + k * gw, max_w, out);
            k += 1;
            if gw == 0 {
                break;
            }
        }
    }
    let mut out = BTreeMap::new();
    go(gens, 0, 0, max_w, &mut out);
    out
}

/// Homology of the unnormalized simplicial chains of `y` below its top level.
fn simplicial_oracle(y: &SimplicialSet) -> Vec<usize> {
    let top = y.top_level();
    let rank = |n: usize| {
        if n == 0 || n > top {
            return 0;
        }
        let mut m = vec![vec![Scalar::zero(); y.size(n)]; y.size(n - 1)];
        for s in 0..y.size(n) {
            for i in 0..=n {
                m[y.face(n, i, s)][s] += if i % 2 == 0 { q(1) } else { q(-1) };
            }
        }
        dense_rank(m)
    };
    (0..top).map(|n| y.size(n) - rank(n) - rank(n + 1)).collect()
}

fn three_arcs() -> OpenPoset {
    OpenPoset::arcs(vec![
        ("A".into(), Shape::arc(frac(0, 1), frac(5, 12))),
        ("B".into(), Shape::arc(frac(1, 3), frac(5, 12))),
        ("C".into(), Shape::arc(frac(2, 3), frac(5, 12))),
        ("AB".into(), Shape::arc(frac(1, 3), frac(1, 12))),
        ("BC".into(), Shape::arc(frac(2, 3), frac(1, 12))),
        ("CA".into(), Shape::arc(frac(0, 1), frac(1, 12))),
    ])
    .unwrap()
}

fn ids(p: &OpenPoset, names: &[&str]) -> Vec<usize> {
    names.iter().map(|n| p.index_of(n).unwrap()).collect()
}

fn exterior_pair() -> DGAlgebra {
    tensor_algebra(&exterior(-1).unwrap(), &exterior(-1).unwrap()).unwrap()
}

fn upper_triangular() -> DGAlgebra {
    let json = r#"{
        "name": "T2",
        "basis": [{"name": "1", "degree": 0, "weight": 0},
                  {"name": "e", "degree": 0, "weight": 0},
                  {"name": "n", "degree": 0, "weight": 1}],
        "unit": "1",
        "products": [{"left": "e", "right": "e", "result": {"e": "1"}},
                     {"left": "e", "right": "n", "result": {"n": "1"}}],
        "weight_graded": true
    }"#;
    serde_json::from_str::<AlgebraPresentation>(json).unwrap().build().unwrap()
}

fn c1() -> Outcome {
    let a = exterior(-1).map_err(e)?;
    let h = hochschild_chain(&point(8), &a, &Window::new(-6, 0)).map_err(e)?;
    let got = descending(h.complex(), -6, 0)?;
    ensure(got == [1, 1, 0, 0, 0, 0, 0], || format!("{got:?}"))?;
    Ok(format!("{got:?}"))
}

fn c2() -> Outcome {
    let a = truncated_polynomial(3, 0).map_err(e)?;
    let m = regular_bimodule(&a);
    let h = chains(interval, &a, Some(&m), &Window::new(-6, 0))?;
    let got = descending(h.complex(), -6, 0)?;
    let mut dims = vec![0; 7];
    for i in 0..m.dim() {
        dims[(-m.degree(i)) as usize] += 1;
    }
    ensure(got == dims, || format!("{got:?} vs module {dims:?}"))?;
    Ok(format!("{got:?}"))
}

fn c3() -> Outcome {
    let a = truncated_polynomial(2, 0).map_err(e)?;
    let w = Window::new(-6, 0);
    let got = descending(chains(circle, &a, None, &w)?.complex(), -6, 0)?;
    let classical = descending(&classical_hochschild(&a, &regular_bimodule(&a), &w).map_err(e)?, -6, 0)?;
    let periodic = periodic_oracle(&a, &vec![(a.index_of("x").unwrap(), q(1))], 6);
    ensure(got == classical && got == periodic && got == [2, 1, 1, 1, 1, 1, 1], || {
        format!("{got:?} classical {classical:?} periodic {periodic:?}")
    })?;
    Ok(format!("{got:?}"))
}

fn c4() -> Outcome {
    let w = Window::new(-5, 0);
    let a = truncated_polynomial(2, 0).map_err(e)?;
    let env = descending(&hh_via_enveloping(&a, &w).map_err(e)?, -5, 0)?;
    let circ = descending(chains(circle, &a, None, &w)?.complex(), -5, 0)?;
    ensure(env == circ && env == [2, 1, 1, 1, 1, 1], || format!("k[x]/x²: {env:?} vs {circ:?}"))?;
    let l = exterior(-1).map_err(e)?;
    let env_l = descending(&hh_via_enveloping(&l, &w).map_err(e)?, -5, 0)?;
    let circ_l = descending(chains(circle, &l, None, &w)?.complex(), -5, 0)?;
    ensure(env_l == circ_l, || format!("Λ(x): {env_l:?} vs {circ_l:?}"))?;
    Ok(format!("{env:?}, {env_l:?}"))
}

fn c5() -> Outcome {
    let a = polynomial(3).map_err(e)?;
    let w = Window::new(-6, 0).with_weights(vec![1, 2, 3]);
    let mut summary = Vec::new();
    for d in [2usize, 3] {
        let h = hochschild_chain(&sphere_small(d, 12).map_err(e)?, &a, &w).map_err(e)?;
        let got = h.homology().map_err(e)?;
        let p = hkr_prediction(&a, SpaceDescriptor::Sphere(d), &w).map_err(e)?;
        ensure(p.mismatches(&got).is_empty(), || format!("S^{d}: {:?}", p.mismatches(&got)))?;
        let sym = monomials(&[(0, 1, false), (-(d as i64), 1, d % 2 == 1)], 3);
        for wt in 1..=3 {
            for k in -6..=0 {
                let want = sym.get(&(k, wt)).copied().unwrap_or(0);
                ensure(got.get(k, wt) == want, || format!("S^{d} ({k}, {wt}): {} vs {want}", got.get(k, wt)))?;
            }
        }
        if d == 2 {
            for wt in 1..=3 {
                let want: Vec<usize> = (-6..=0).rev().map(|k| usize::from(k % 2 == 0 && k >= -2 * wt)).collect();
                ensure(got.descending_weight(wt) == want, || format!("weight {wt}"))?;
            }
        }
        summary.push(format!("S^{d} level {}", h.truncation().level));
    }
    Ok(summary.join(", "))
}

fn c6() -> Outcome {
    let a = polynomial(2).map_err(e)?;
    let w = Window::new(-4, 0).with_weights(vec![0, 1, 2]);
    let h = hochschild_chain(&torus(10), &a, &w).map_err(e)?;
    let got = h.homology().map_err(e)?;
    let p = hkr_prediction(&a, SpaceDescriptor::Surface(1), &w).map_err(e)?;
    ensure(p.mismatches(&got).is_empty(), || format!("{:?}", p.mismatches(&got)))?;
    let sym = monomials(&[(0, 1, false), (-1, 1, true), (-1, 1, true), (-2, 1, false)], 2);
    for wt in 0..=2 {
        for k in -4..=0 {
            let want = sym.get(&(k, wt)).copied().unwrap_or(0);
            ensure(got.get(k, wt) == want, || format!("({k}, {wt}): {} vs {want}", got.get(k, wt)))?;
        }
    }
    Ok(format!("{:?}, max block {}", got.descending(), h.complex().max_block()))
}

fn c7() -> Outcome {
    let a = exterior(-1).map_err(e)?;
    let w = Window::new(-4, 0);
    let s = descending(chains(|l| sphere_standard(2, l).unwrap(), &a, None, &w)?.complex(), -4, 0)?;
    let small = descending(chains(|l| sphere_small(2, l).unwrap(), &a, None, &w)?.complex(), -4, 0)?;
    ensure(s == small, || format!("{s:?} vs {small:?}"))?;
    Ok(format!("{s:?}"))
}

fn c8() -> Outcome {
    let b = truncated_polynomial(2, 0).map_err(e)?;
    let x = b.index_of("x").unwrap();
    let mut images: Vec<Vector> = (0..b.dim()).map(|i| vec![(i, q(1))]).collect();
    images[x] = vec![(x, q(-1))];
    let mon = AlgebraAutomorphism::new(&b, images).map_err(e)?;
    let w = Window::new(-6, 0);
    let got = descending(&twisted_hochschild(&b, &mon, &w).map_err(e)?, -6, 0)?;
    let oracle = periodic_oracle(&b, &vec![(x, q(-1))], 6);
    ensure(got == oracle, || format!("{got:?} vs periodic {oracle:?}"))?;
    let id = descending(&twisted_hochschild(&b, &AlgebraAutomorphism::identity(&b), &w).map_err(e)?, -6, 0)?;
    ensure(id == [2, 1, 1, 1, 1, 1, 1], || format!("identity: {id:?}"))?;
    Ok(format!("{got:?}, identity {id:?}"))
}

fn c9() -> Outcome {
    let w = Window::new(-5, 0);
    let mut out = Vec::new();
    for a in [exterior(-1).map_err(e)?, truncated_polynomial(2, 0).map_err(e)?] {
        let k = augmentation_module(&a).map_err(e)?;
        let it = descending(&iterated_bar(&a, 1, &w).map_err(e)?, -5, 0)?;
        let bar = descending(&two_sided_bar(&k, &a, &k, &w).map_err(e)?, -5, 0)?;
        ensure(it == bar, || format!("{}: {it:?} vs {bar:?}", a.name()))?;
        out.push(format!("{it:?}"));
    }
    let two = descending(&iterated_bar(&exterior(-1).map_err(e)?, 2, &w).map_err(e)?, -5, 0)?;
    ensure(two == [1, 0, 0, 1, 0, 0], || format!("i = 2: {two:?}"))?;
    out.push(format!("i = 2 {two:?}"));
    Ok(out.join(", "))
}

fn c10() -> Outcome {
    let p = three_arcs();
    let f = constant(&p);
    let all: Vec<usize> = (0..p.len()).collect();
    let c = cech_complex(&f, &all, None).map_err(e)?;
    let got = descending(c.total(), -2, 0)?;
    let simplicial = simplicial_oracle(&circle(4));
    ensure(got[..] == simplicial[..3], || format!("{got:?} vs simplicial {simplicial:?}"))?;
    let x = ids(&p, &["A", "AB", "CA"]);
    let y = ids(&p, &["B", "C", "BC", "AB", "CA"]);
    let z = ids(&p, &["AB", "CA"]);
    let glued = descending(&cone_excision(&f, &x, &y, &z, None).map_err(e)?, -2, 0)?;
    ensure(glued == got && got == [1, 1, 0], || format!("gluing {glued:?} vs {got:?}"))?;
    Ok(format!("{got:?}"))
}

// ---- property suites ----

const CASES: u32 = 500;

fn runner() -> TestRunner {
    TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() })
}

fn suite<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<String, String> {
    let mut r = runner();
    r.run(&strategy, test).map_err(|err| format!("{name}: {err}"))?;
    Ok(format!("{name} {CASES}"))
}

fn algebras() -> &'static [DGAlgebra] {
    static A: OnceLock<Vec<DGAlgebra>> = OnceLock::new();
    A.get_or_init(|| {
        vec![
            exterior(-1).unwrap(),
            truncated_polynomial(2, 0).unwrap(),
            truncated_polynomial(3, 0).unwrap(),
            exterior_pair(),
            tensor_algebra(&exterior(-1).unwrap(), &truncated_polynomial(2, -2).unwrap()).unwrap(),
            upper_triangular(),
        ]
    })
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

/// Builds one of the complexes; `None` for unsupported combinations.
fn construct(ctor: usize, a: &DGAlgebra, lo: i64) -> Option<ChainComplex> {
    let w = Window::new(lo, 0);
    let wc = Window::new(0, -lo);
    let r: hoch::Result<ChainComplex> = match ctor {
        0 => hochschild_chain(&circle(8), a, &w).map(|h| h.complex().clone()),
        1 => hochschild_chain(&sphere_small(2, 8).unwrap(), a, &w).map(|h| h.complex().clone()),
        2 => hochschild_chain(&torus(6), a, &Window::new(lo.max(-2), 0)).map(|h| h.complex().clone()),
        3 => hochschild_chain_with_coeff(&interval(8), a, &regular_bimodule(a), &w).map(|h| h.complex().clone()),
        4 => classical_hochschild(a, &regular_bimodule(a), &w),
        5 => twisted_hochschild(a, &AlgebraAutomorphism::identity(a), &w),
        6 => augmentation_module(a).and_then(|k| two_sided_bar(&k, a, &k, &w)),
        7 => hh_via_enveloping(a, &Window::new(lo.max(-3), 0)),
        8 => iterated_bar(a, 1 + (-lo as usize) % 2, &w),
        9 => classical_cochains(a, &regular_bimodule(a), &wc).map(|c| c.complex().clone()),
        10 => hochschild_cochain(&circle(8), a, &regular_bimodule(a), &Window::new(0, 3)).map(|c| c.complex().clone()),
        11 => circle_arc_algebra(a, &three_arcs(), Orientation::Positive)
            .and_then(|f| cech_complex(&f, &(0..6).collect::<Vec<_>>(), Some(2)))
            .map(|c| c.total().clone()),
        12 => hochschild_chain(&circle(8), a, &w).and_then(|h| cone(&ChainMap::identity(h.complex()))),
        _ => hochschild_chain(&product(&circle(4), &interval(4)), a, &Window::new(lo.max(-2), 0))
            .map(|h| h.complex().clone()),
    };
    r.ok()
}

fn differentials_square_to_zero() -> Outcome {
    static CACHE: OnceLock<std::sync::Mutex<BTreeMap<(usize, usize, i64), bool>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let built = std::sync::atomic::AtomicUsize::new(0);
    let out = suite("d² = 0", (0usize..14, 0usize..6, -4i64..=0), |(ctor, ai, lo)| {
        let key = (ctor, ai, lo);
        if let Some(&ok) = cache.lock().unwrap().get(&key) {
            prop_assert!(ok, "{key:?}");
            return Ok(());
        }
        let ok = match construct(ctor, &algebras()[ai], lo) {
            Some(c) => {
                built.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                check_differential(&c).is_ok()
            }
            None => true,
        };
        cache.lock().unwrap().insert(key, ok);
        prop_assert!(ok, "constructor {ctor} on {} from {lo}", algebras()[ai].name());
        Ok(())
    })?;
    let n = built.into_inner();
    ensure(n >= 100, || format!("only {n} complexes were built"))?;
    Ok(format!("{out} ({n} distinct complexes)"))
}

fn models(i: usize, l: usize) -> SimplicialSet {
    match i {
        0 => point(l),
        1 => interval(l),
        2 => circle(l),
        3 => sphere_standard(2, l).unwrap(),
        4 => sphere_standard(3, l).unwrap(),
        5 => sphere_small(2, l).unwrap(),
        6 => sphere_small(3, l).unwrap(),
        7 => sphere_small(4, l).unwrap(),
        8 => torus(l),
        9 => surface(2, l).unwrap(),
        10 => product(&circle(l), &interval(l)),
        _ => wedge(&circle(l), &sphere_small(2, l).unwrap()).unwrap(),
    }
}

fn simplicial_identities() -> Outcome {
    suite("simplicial identities", (0usize..12, 0usize..=8), |(i, l)| {
        let y = models(i, l);
        let v = y.validate();
        prop_assert!(v.is_ok(), "{} at level {l}: {:?}", y.name(), v.err());
        Ok(())
    })?;
    // and a corrupted face is caught
    let y = circle(4).with_face(2, 0, 2, 0);
    ensure(y.validate().is_err(), || "corrupted circle passed".into())?;
    Ok(format!("simplicial identities {CASES}"))
}

type Lin = BTreeMap<Tensor, Scalar>;

fn apply(a: &DGAlgebra, m: Option<&hoch::dga::DGModule>, f: &[usize], v: &Lin) -> Lin {
    let mut out = Lin::new();
    for (t, c) in v {
        for (s, x) in multiop(a, m, f, t) {
            *out.entry(s).or_insert_with(Scalar::zero) += c * x;
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}

fn multiop_functoriality() -> Outcome {
    let strategy = (
        0usize..6,
        any::<bool>(),
        (1usize..6).prop_flat_map(|n| (Just(n), 1usize..5, 1usize..5)),
        proptest::collection::vec(any::<u32>(), 16),
    );
    suite("multiop functoriality", strategy, |(ai, with_module, (n, m, p), seeds)| {
        let a = &algebras()[ai];
        let commutative = a.is_commutative();
        let module = regular_bimodule(a);
        let md = with_module && commutative;
        let mut f: Vec<usize> = (0..n).map(|s| seeds[s] as usize % m).collect();
        let mut g: Vec<usize> = (0..m).map(|s| seeds[8 + s] as usize % p).collect();
        if !commutative {
            // only order-preserving maps act on a noncommutative algebra
            f.sort();
            g.sort();
        }
        if md {
            f[0] = 0;
            g[0] = 0;
        }
        let nonunit: Vec<usize> = a.nonunit().collect();
        let factors: Vec<(usize, usize)> = (0..n)
            .filter(|s| !(md && *s == 0) && seeds[s + 4] % 3 != 0)
            .map(|s| (s, nonunit[seeds[(s + 2) % 16] as usize % nonunit.len()]))
            .collect();
        let t = Tensor { module: md.then(|| seeds[15] as usize % module.dim()), factors };
        let ma = md.then_some(&module);
        let gf: Vec<usize> = f.iter().map(|&i| g[i]).collect();
        let one: Lin = [(t.clone(), Scalar::one())].into_iter().collect();
        let lhs = apply(a, ma, &gf, &one);
        let rhs = apply(a, ma, &g, &apply(a, ma, &f, &one));
        prop_assert_eq!(lhs, rhs, "{} f={:?} g={:?} t={:?}", a.name(), f, g, t);
        Ok(())
    })
}

struct ShuffleFixture {
    h: HochschildComplex,
    gens: Vec<(i64, Chain)>,
    small: usize,
}

fn shuffle_fixtures() -> &'static [ShuffleFixture] {
    static F: OnceLock<Vec<ShuffleFixture>> = OnceLock::new();
    F.get_or_init(|| {
        let cases: Vec<(DGAlgebra, SimplicialSet, i64)> = vec![
            (exterior(-1).unwrap(), circle(6), -4),
            (truncated_polynomial(2, 0).unwrap(), circle(6), -3),
            (exterior_pair(), circle(6), -3),
            (exterior(-1).unwrap(), sphere_small(2, 6).unwrap(), -4),
            (truncated_polynomial(2, 0).unwrap(), torus(4), -2),
        ];
        cases
            .into_iter()
            .map(|(a, y, lo)| {
                let h = hochschild_chain(&y, &a, &Window::new(lo, 0)).unwrap();
                let top = h.level_count() - 1;
                let gens = hoch::hochschild::laws::basis_chains(&h, top / 2);
                let small = hoch::hochschild::laws::basis_chains(&h, top / 3).len();
                ShuffleFixture { h, gens, small }
            })
            .collect()
    })
}

fn lin_add(a: &Chain, b: &Chain, s: &Scalar) -> Chain {
    let mut out = a.clone();
    for (k, x) in b {
        *out.entry(k.clone()).or_insert_with(Scalar::zero) += s * x;
    }
    out.retain(|_, x| !x.is_zero());
    out
}

fn shuffle_suite() -> Outcome {
    let strategy = (0usize..5, any::<u32>(), any::<u32>(), any::<u32>());
    suite("shuffle laws", strategy, |(fi, i, j, k)| {
        let fx = &shuffle_fixtures()[fi];
        let h = &fx.h;
        let n = fx.gens.len();
        let (du, u) = &fx.gens[i as usize % n];
        let (dv, v) = &fx.gens[j as usize % n];
        let sp = |x: &Chain, y: &Chain| shuffle_product(h, x, y).map_err(|err| fail(err.to_string()));
        prop_assert_eq!(&sp(&h.unit(), u)?, u, "unit");
        let uv = sp(u, v)?;
        let sign = if (du * dv) % 2 != 0 { q(-1) } else { q(1) };
        prop_assert_eq!(&uv, &lin_add(&Chain::new(), &sp(v, u)?, &sign), "commutativity");
        let du_sign = if du % 2 != 0 { q(-1) } else { q(1) };
        let leibniz = lin_add(&sp(&h.boundary(u), v)?, &sp(u, &h.boundary(v))?, &du_sign);
        prop_assert_eq!(h.boundary(&uv), leibniz, "Leibniz");
        if fx.small > 0 {
            let pick = |x: u32| &fx.gens[x as usize % fx.small].1;
            let (a, b, c) = (pick(i), pick(j), pick(k));
            prop_assert_eq!(sp(&sp(a, b)?, c)?, sp(a, &sp(b, c)?)?, "associativity");
        }
        Ok(())
    })
}

fn cup_suite() -> Outcome {
    let mut checks = 0;
    let algs = [exterior(-1).unwrap(), truncated_polynomial(2, 0).unwrap(), truncated_polynomial(3, 0).unwrap()];
    let fixtures: Vec<_> = algs
        .iter()
        .map(|a| classical_cochains(a, &regular_bimodule(a), &Window::new(0, 9)).unwrap())
        .collect();
    for c in &fixtures {
        let r = cup_laws(c, 3).map_err(e)?;
        ensure(r.passed(), || format!("{}: {:?}", c.algebra().name(), r.failures.first()))?;
        checks += r.checks;
    }
    let gens: Vec<_> = fixtures.iter().map(|c| hoch::hochschild::laws::basis_cochains(c, 3)).collect();
    let strategy = (0usize..3, any::<u32>(), any::<u32>(), any::<u32>(), -3i64..=3);
    suite("cup associativity", strategy, |(fi, i, j, k, s)| {
        let c = &fixtures[fi];
        let g = &gens[fi];
        let pick = |x: u32| &g[x as usize % g.len()].1;
        let cup = |f: &_, g: &_| hoch::hochschild::cup_product_s1(c, f, g).map_err(|err| fail(err.to_string()));
        // a combination of two basis cochains of possibly different degree
        let mut f = pick(i).clone();
        for (key, x) in pick(k) {
            *f.entry(key.clone()).or_insert_with(Scalar::zero) += q(s) * x;
        }
        f.retain(|_, x| !x.is_zero());
        let (a, b) = (pick(j), pick(k));
        prop_assert_eq!(cup(&cup(&f, a)?, b)?, cup(&f, &cup(a, b)?)?);
        Ok(())
    })?;
    Ok(format!("cup associativity {CASES} (+{checks} exhaustive)"))
}

// random posets on a grid of 24ths of the circle, closed under intersection

fn arc_cells(start: usize, len: usize) -> Vec<bool> {
    let mut v = vec![false; 24];
    for i in 0..len {
        v[(start + i) % 24] = true;
    }
    v
}

fn cells_to_arc(c: &[bool]) -> Option<(usize, usize)> {
    let len = c.iter().filter(|&&b| b).count();
    if len == 0 {
        return None;
    }
    let start = (0..24).find(|&i| c[i] && !c[(i + 23) % 24]).unwrap_or(0);
    Some((start, len))
}

fn closed_family<T: Clone + PartialEq>(seed: Vec<T>, meet: impl Fn(&T, &T) -> Option<T>) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for s in seed {
        if !out.contains(&s) {
            out.push(s);
        }
    }
    loop {
        let mut added = false;
        for i in 0..out.len() {
            for j in 0..out.len() {
                if let Some(m) = meet(&out[i], &out[j]) {
                    if !out.contains(&m) {
                        out.push(m);
                        added = true;
                    }
                }
            }
        }
        if !added {
            return out;
        }
    }
}

fn arc_poset(arcs: &[(usize, usize)]) -> OpenPoset {
    let cells: Vec<Vec<bool>> = arcs.iter().map(|&(s, l)| arc_cells(s, l)).collect();
    let fam = closed_family(cells, |a, b| {
        let c: Vec<bool> = a.iter().zip(b).map(|(x, y)| *x && *y).collect();
        c.contains(&true).then_some(c)
    });
    OpenPoset::arcs(
        fam.iter()
            .enumerate()
            .map(|(i, c)| {
                let (s, l) = cells_to_arc(c).unwrap();
                (format!("U{i}"), Shape::arc(frac(s as i64, 24), frac(l as i64, 24)))
            })
            .collect(),
    )
    .unwrap()
}

/// Intervals of `[0, 1]` on a grid of 12ths as sets of half-steps: even
/// entries are grid points, odd entries the open cells between them.
fn interval_poset(ivs: &[(usize, usize)]) -> OpenPoset {
    let sets: Vec<Vec<bool>> = ivs
        .iter()
        .map(|&(lo, hi)| (0..=24).map(|k| (k > 2 * lo && k < 2 * hi) || (k == 0 && lo == 0) || (k == 24 && hi == 12)).collect())
        .collect();
    let fam = closed_family(sets, |a, b| {
        let c: Vec<bool> = a.iter().zip(b).map(|(x, y)| *x && *y).collect();
        c.contains(&true).then_some(c)
    });
    OpenPoset::intervals(
        fam.iter()
            .enumerate()
            .map(|(i, s)| {
                let min = s.iter().position(|&b| b).unwrap();
                let max = s.iter().rposition(|&b| b).unwrap();
                let shape = Shape::Interval {
                    lo: frac(min as i64 / 2, 12),
                    hi: frac((max as i64 + 1) / 2, 12),
                    lo_closed: min % 2 == 0,
                    hi_closed: max % 2 == 0,
                };
                (format!("I{i}"), shape)
            })
            .collect(),
    )
    .unwrap()
}

fn arcs_strategy() -> impl Strategy<Value = Vec<(usize, usize)>> {
    (0usize..24, 2usize..12, 2usize..12, proptest::option::of((0usize..24, 2usize..12))).prop_flat_map(
        |(s, l, l2, third)| {
            (1..l).prop_map(move |k| {
                let mut v = vec![(s, l), ((s + k) % 24, l2)];
                v.extend(third);
                v
            })
        },
    )
}

fn intervals_strategy() -> impl Strategy<Value = Vec<(usize, usize)>> {
    proptest::collection::vec((0usize..12, 1usize..12), 2..4).prop_map(|v| {
        v.into_iter()
            .map(|(lo, len)| {
                let hi = (lo + len).min(12);
                if lo == 0 && hi == 12 {
                    (0, 11)
                } else {
                    (lo, hi)
                }
            })
            .collect()
    })
}

#[derive(Debug)]
struct Negated {
    inner: PrefactorizationData,
    u: usize,
    w: usize,
}

impl StructureMaps for Negated {
    fn apply(&self, family: &[usize], target: usize, inputs: &[usize]) -> Vector {
        let v = self.inner.rho(family, target, inputs);
        if family == [self.u] && target == self.w {
            v.into_iter().map(|(i, x)| (i, -x)).collect()
        } else {
            v
        }
    }
}

#[derive(Debug)]
struct DroppedKoszul(PrefactorizationData);

impl StructureMaps for DroppedKoszul {
    fn apply(&self, family: &[usize], target: usize, inputs: &[usize]) -> Vector {
        // the product in orientation order, with the reordering sign dropped
        let f = &self.0;
        let start = |u: usize| match f.poset().shape(u) {
            Some(Shape::Arc { start, .. }) => start.clone(),
            _ => unreachable!(),
        };
        let s0 = start(target);
        let mut order: Vec<usize> = (0..family.len()).collect();
        order.sort_by_key(|&i| {
            let x = start(family[i]) - &s0;
            if x.is_negative() {
                x + Scalar::one()
            } else {
                x
            }
        });
        let fam: Vec<usize> = order.iter().map(|&i| family[i]).collect();
        let xs: Vec<usize> = order.iter().map(|&i| inputs[i]).collect();
        f.rho(&fam, target, &xs)
    }
}

fn instances(p: &OpenPoset, ai: usize, ring: bool) -> Vec<PrefactorizationData> {
    let a = &algebras()[ai];
    let mut out = vec![constant(p), trivial(p)];
    if ring {
        for o in [Orientation::Positive, Orientation::Negative] {
            out.push(circle_arc_algebra(a, p, o).unwrap());
        }
    } else {
        let m = regular_bimodule(a);
        out.push(interval_stratified(&m, a, &m, p).unwrap());
    }
    out
}

fn strict_inclusion(p: &OpenPoset, pick: u32) -> Option<(usize, usize)> {
    let pairs: Vec<(usize, usize)> = (0..p.len())
        .flat_map(|w| p.below(w).into_iter().filter(move |&u| u != w).map(move |u| (u, w)))
        .collect();
    (!pairs.is_empty()).then(|| pairs[pick as usize % pairs.len()])
}

fn prefactorization_suite() -> Outcome {
    let ring = (arcs_strategy().prop_map(|v| (v, true)), intervals_strategy().prop_map(|v| (v, false)));
    let strategy = (prop_oneof![ring.0, ring.1], 0usize..5, any::<u32>());
    let mutants = std::sync::atomic::AtomicUsize::new(0);
    suite("prefactorization audits", strategy, |((shapes, ring), ai, pick)| {
        let p = if ring { arc_poset(&shapes) } else { interval_poset(&shapes) };
        for f in instances(&p, ai, ring) {
            let r = validate_prefactorization(&f);
            prop_assert!(r.passed, "{} on {:?}: {:?}", f.name(), shapes, r.witness);
            if f.mode() == hoch::cech::MonoidalMode::Tensor {
                if let Some((u, w)) = strict_inclusion(&p, pick) {
                    let bad = f.with_structure(Arc::new(Negated { inner: f.clone(), u, w }));
                    prop_assert!(!validate_prefactorization(&bad).passed, "negated {u} ⊆ {w} passed");
                    mutants.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                }
            }
        }
        Ok(())
    })?;
    // dropping the Koszul sign is seen exactly when odd inputs can swap
    let p = three_arcs();
    for (a, odd) in [(exterior_pair(), true), (truncated_polynomial(2, 0).unwrap(), false)] {
        let f = circle_arc_algebra(&a, &p, Orientation::Positive).map_err(e)?;
        let r = validate_prefactorization(&f.with_structure(Arc::new(DroppedKoszul(f.clone()))));
        ensure(r.passed != odd, || format!("dropped sign on {}: {:?}", a.name(), r.witness))?;
    }
    Ok(format!("prefactorization audits {CASES} ({} mutants caught)", mutants.into_inner()))
}

fn c11() -> Outcome {
    let suites: Vec<fn() -> Outcome> = vec![
        differentials_square_to_zero,
        simplicial_identities,
        multiop_functoriality,
        shuffle_suite,
        cup_suite,
        prefactorization_suite,
    ];
    let results: Vec<Outcome> = std::thread::scope(|s| {
        let hs: Vec<_> = suites.into_iter().map(|f| s.spawn(move || guarded(f))).collect();
        hs.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut ok = Vec::new();
    let mut bad = Vec::new();
    for r in results {
        match r {
            Ok(m) => ok.push(m),
            Err(m) => bad.push(m),
        }
    }
    if bad.is_empty() {
        Ok(ok.join("; "))
    } else {
        Err(bad.join("; "))
    }
}

fn guarded(f: fn() -> Outcome) -> Outcome {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panic: {msg}"))
    })
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome, u64)> = vec![
        ("point retract", c1, 1),
        ("bar acyclicity", c2, 5),
        ("circle = classical HH", c3, 10),
        ("excision identity", c4, 30),
        ("HKR spheres", c5, 60),
        ("HKR torus", c6, 120),
        ("sphere model independence", c7, 60),
        ("twisted Hochschild", c8, 60),
        ("iterated Bar", c9, 60),
        ("cosheaf regime", c10, 60),
        ("property suites", c11, 1200),
    ];
    let results: Vec<(Outcome, Duration)> = std::thread::scope(|s| {
        let hs: Vec<_> = criteria
            .iter()
            .map(|&(_, f, _)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let r = guarded(f);
                    (r, t.elapsed())
                })
            })
            .collect();
        hs.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut failed = 0;
    for (i, ((name, _, limit), (r, dt))) in criteria.iter().zip(results).enumerate() {
        let r = r.and_then(|m| {
            if dt.as_secs() >= *limit {
                Err(format!("{m}; took {dt:?}, limit {limit} s"))
            } else {
                Ok(m)
            }
        });
        match r {
            Ok(m) => println!("criterion {:>2} PASS  {name} [{} ms]: {m}", i + 1, dt.as_millis()),
            Err(m) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [{} ms]: {m}", i + 1, dt.as_millis());
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all {} acceptance criteria pass", criteria.len());
}
