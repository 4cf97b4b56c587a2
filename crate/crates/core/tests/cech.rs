use std::sync::Arc;
use std::time::Instant;

use hoch::cech::{
    cech_complex, cech_map, circle_arc_algebra, cone_excision, constant, excision_report, interval_stratified,
    trivial, validate_prefactorization, Axiom, OpenPoset, Orientation, PrefactorizationData, Shape, StructureMaps,
};
use hoch::dga::{exterior, ground_field, opposite, regular_bimodule, truncated_polynomial, DGAlgebra, Vector};
use hoch::hochschild::{two_sided_bar, Window};
use hoch::homalg::field::Scalar;
use hoch::homalg::{check_differential, cone, homology_dims, ChainComplex, WeightRequest};
use num_traits::{One, Zero};

fn q(n: i64, d: i64) -> Scalar {
    Scalar::new(n.into(), d.into())
}

/// Three arcs covering the circle, each pair overlapping once, with their
/// overlaps.
fn three_arcs() -> OpenPoset {
    OpenPoset::arcs(vec![
        ("A".into(), Shape::arc(q(0, 1), q(5, 12))),
        ("B".into(), Shape::arc(q(1, 3), q(5, 12))),
        ("C".into(), Shape::arc(q(2, 3), q(5, 12))),
        ("AB".into(), Shape::arc(q(1, 3), q(1, 12))),
        ("BC".into(), Shape::arc(q(2, 3), q(1, 12))),
        ("CA".into(), Shape::arc(q(0, 1), q(1, 12))),
    ])
    .unwrap()
}

/// A big arc covered by two arcs, plus small disjoint arcs inside them.
fn nested_arcs() -> OpenPoset {
    OpenPoset::arcs(vec![
        ("W".into(), Shape::arc(q(0, 1), q(2, 5))),
        ("X".into(), Shape::arc(q(0, 1), q(1, 4))),
        ("Y".into(), Shape::arc(q(1, 5), q(1, 5))),
        ("XY".into(), Shape::arc(q(1, 5), q(1, 20))),
        ("x".into(), Shape::arc(q(1, 50), q(1, 50))),
        ("y".into(), Shape::arc(q(3, 10), q(1, 50))),
    ])
    .unwrap()
}

fn all(p: &OpenPoset) -> Vec<usize> {
    (0..p.len()).collect()
}

fn ids(p: &OpenPoset, names: &[&str]) -> Vec<usize> {
    names.iter().map(|n| p.index_of(n).unwrap()).collect()
}

fn dims(c: &ChainComplex, lo: i64, hi: i64) -> Vec<usize> {
    homology_dims(c, lo, hi, &WeightRequest::Present).unwrap().descending()
}

#[test]
fn constant_cosheaf_on_the_circle() {
    let p = three_arcs();
    let f = constant(&p);
    let t = Instant::now();
    let c = cech_complex(&f, &all(&p), None).unwrap();
    assert!(c.is_full());
    assert_eq!(c.families().len(), 13);
    check_differential(c.total()).unwrap();
    let lo = -(c.top_level() as i64) - 1;
    let h = homology_dims(c.total(), lo, 0, &WeightRequest::Present).unwrap();
    assert_eq!(h.get(0, 0), 1);
    assert_eq!(h.get(-1, 0), 1);
    assert_eq!(h.by_degree().values().sum::<usize>(), 2);
    assert!(t.elapsed().as_secs() < 30, "took {:?}", t.elapsed());
}

#[test]
fn mayer_vietoris_agrees_on_the_circle() {
    let p = three_arcs();
    let f = constant(&p);
    let x = ids(&p, &["A", "AB", "CA"]);
    let y = ids(&p, &["B", "C", "BC", "AB", "CA"]);
    let z = ids(&p, &["AB", "CA"]);
    let cz = cech_complex(&f, &z, None).unwrap();
    assert_eq!(dims(cz.total(), -2, 0), vec![2, 0, 0]);
    let mv = cone_excision(&f, &x, &y, &z, None).unwrap();
    check_differential(&mv).unwrap();
    assert_eq!(dims(&mv, -4, 0), vec![1, 1, 0, 0, 0]);
}

#[test]
fn two_intervals_are_contractible() {
    let s = |lo, hi| Shape::open(q(lo, 1), q(hi, 1));
    let p = OpenPoset::intervals(vec![
        ("I".into(), s(0, 3)),
        ("L".into(), s(0, 2)),
        ("R".into(), s(1, 3)),
        ("M".into(), s(1, 2)),
    ])
    .unwrap();
    let f = constant(&p);
    let c = cech_complex(&f, &ids(&p, &["L", "R", "M"]), None).unwrap();
    assert_eq!(dims(c.total(), -3, 0), vec![1, 0, 0, 0]);
    let aug = c.augmentation(&f, p.index_of("I").unwrap()).unwrap();
    aug.check().unwrap();
    assert_eq!(dims(&cone(&aug).unwrap(), -4, 0), vec![0; 5]);
}

#[test]
fn single_open_cover_is_the_value() {
    let p = three_arcs();
    let a = truncated_polynomial(2, 0).unwrap();
    let f = circle_arc_algebra(&a, &p, Orientation::Positive).unwrap();
    let v = p.index_of("B").unwrap();
    let c = cech_complex(&f, &[v], None).unwrap();
    assert_eq!(c.total().blocks(), f.value(v).complex(c.total().coefficients()).unwrap().blocks());
    let aug = c.augmentation(&f, v).unwrap();
    aug.check().unwrap();
    assert_eq!(dims(&cone(&aug).unwrap(), -2, 1), vec![0; 4]);
}

#[test]
fn tensor_cech_complex_and_augmentation() {
    let p = nested_arcs();
    for a in [truncated_polynomial(2, 0).unwrap(), exterior(-1).unwrap()] {
        let f = circle_arc_algebra(&a, &p, Orientation::Positive).unwrap();
        let cover = ids(&p, &["X", "Y", "XY", "x", "y"]);
        let c = cech_complex(&f, &cover, None).unwrap();
        check_differential(c.total()).unwrap();
        let aug = c.augmentation(&f, p.index_of("W").unwrap()).unwrap();
        aug.check().unwrap();
        let sub = cech_complex(&f, &ids(&p, &["X", "Y", "XY"]), None).unwrap();
        cech_map(&sub, &c).unwrap().check().unwrap();
    }
}

#[test]
fn validator_accepts_the_instances() {
    let p = three_arcs();
    assert!(validate_prefactorization(&trivial(&p)).passed);
    assert!(validate_prefactorization(&constant(&p)).passed);
    for a in [truncated_polynomial(2, 0).unwrap(), exterior(-1).unwrap(), truncated_polynomial(3, -2).unwrap()] {
        for o in [Orientation::Positive, Orientation::Negative] {
            for poset in [&p, &nested_arcs()] {
                let r = validate_prefactorization(&circle_arc_algebra(&a, poset, o).unwrap());
                assert!(r.passed, "{}: {:?}", a.name(), r.witness);
                assert!(r.checks > 0);
            }
        }
    }
}

#[derive(Debug)]
struct DroppedSign(PrefactorizationData);

impl StructureMaps for DroppedSign {
    fn apply(&self, family: &[usize], target: usize, inputs: &[usize]) -> Vector {
        // the positive-orientation product, without the Koszul sign of
        // reordering the inputs
        let f = &self.0;
        let mut order: Vec<usize> = (0..family.len()).collect();
        order.sort_by_key(|&i| {
            let Some(Shape::Arc { start, .. }) = f.poset().shape(family[i]) else { unreachable!() };
            let Some(Shape::Arc { start: s0, .. }) = f.poset().shape(target) else { unreachable!() };
            let mut x = start - s0;
            if x < Scalar::zero() {
                x += Scalar::one();
            }
            x
        });
        let fam: Vec<usize> = order.iter().map(|&i| family[i]).collect();
        let xs: Vec<usize> = order.iter().map(|&i| inputs[i]).collect();
        f.rho(&fam, target, &xs)
    }
}

#[test]
fn validator_catches_a_dropped_sign() {
    let p = nested_arcs();
    let a = hoch::dga::tensor_algebra(&exterior(-1).unwrap(), &exterior(-1).unwrap()).unwrap();
    let f = circle_arc_algebra(&a, &p, Orientation::Positive).unwrap();
    let bad = f.with_structure(Arc::new(DroppedSign(f.clone())));
    let r = validate_prefactorization(&bad);
    assert!(!r.passed);
    let w = r.witness.unwrap();
    assert_eq!(w.axiom, Axiom::Symmetry, "{w}");
    assert!(w.input.contains('⊗'), "{w}");
    // even algebras do not see the sign
    let even = circle_arc_algebra(&truncated_polynomial(2, 0).unwrap(), &p, Orientation::Positive).unwrap();
    assert!(validate_prefactorization(&even.with_structure(Arc::new(DroppedSign(even.clone())))).passed);
}

fn upper_triangular() -> DGAlgebra {
    let json = r#"{
        "name": "T2",
        "basis": [{"name": "1", "degree": 0, "weight": 0},
                  {"name": "e", "degree": 0, "weight": 0},
                  {"name": "n", "degree": 0, "weight": 1}],
        "unit": "1",
        "products": [{"left": "e", "right": "e", "result": {"e": "1"}},
                     {"left": "e", "right": "n", "result": {"n": "1"}}]
    }"#;
    serde_json::from_str::<hoch::dga::AlgebraPresentation>(json).unwrap().build().unwrap()
}

#[test]
fn arc_products_follow_the_orientation() {
    let p = nested_arcs();
    let a = upper_triangular();
    let pos = circle_arc_algebra(&a, &p, Orientation::Positive).unwrap();
    let neg = circle_arc_algebra(&a, &p, Orientation::Negative).unwrap();
    let op = circle_arc_algebra(&opposite(&a), &p, Orientation::Positive).unwrap();
    let (w, x, y) = (p.index_of("W").unwrap(), p.index_of("x").unwrap(), p.index_of("y").unwrap());
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let ab = a.mul_vec(&[(i, Scalar::one())], &[(j, Scalar::one())]);
            assert_eq!(pos.rho(&[x, y], w, &[i, j]), ab);
        }
    }
    for fam in p.disjoint_families(&p.below(w)) {
        let tuples: Vec<Vec<usize>> = if fam.is_empty() {
            vec![Vec::new()]
        } else {
            itertools::Itertools::multi_cartesian_product(fam.iter().map(|_| 0..a.dim())).collect()
        };
        for xs in tuples {
            assert_eq!(neg.rho(&fam, w, &xs), op.rho(&fam, w, &xs), "{fam:?} {xs:?}");
        }
    }
    assert_eq!(pos.rho(&[], w, &[]), vec![(a.unit(), Scalar::one())]);
}

#[test]
fn overlong_arcs_are_rejected() {
    let p = OpenPoset::arcs(vec![("U".into(), Shape::arc(q(0, 1), q(1, 2)))]).unwrap();
    assert!(matches!(
        circle_arc_algebra(&ground_field(), &p, Orientation::Positive),
        Err(hoch::Error::NonClosedCover(_)) | Err(hoch::Error::OverlongArc(_))
    ));
}

fn stratified_intervals() -> OpenPoset {
    let iv = |lo: Scalar, hi: Scalar, lc, hc| Shape::Interval { lo, hi, lo_closed: lc, hi_closed: hc };
    OpenPoset::intervals(vec![
        ("R".into(), iv(q(0, 1), q(1, 2), true, false)),
        ("M".into(), iv(q(1, 4), q(3, 4), false, false)),
        ("L".into(), iv(q(1, 2), q(1, 1), false, true)),
        ("RM".into(), iv(q(1, 4), q(1, 2), false, false)),
        ("ML".into(), iv(q(1, 2), q(3, 4), false, false)),
        ("r".into(), iv(q(0, 1), q(1, 8), true, false)),
        ("b".into(), iv(q(1, 8), q(1, 4), false, false)),
        ("l".into(), iv(q(7, 8), q(1, 1), false, true)),
    ])
    .unwrap()
}

#[test]
fn stratified_interval() {
    let p = stratified_intervals();
    for a in [truncated_polynomial(2, 0).unwrap(), exterior(-1).unwrap(), upper_triangular()] {
        let m = regular_bimodule(&a).with_pointed(vec![(a.unit(), Scalar::one())]);
        let f = interval_stratified(&m, &a, &m, &p).unwrap();
        let r = validate_prefactorization(&f);
        assert!(r.passed, "{}: {:?}", a.name(), r.witness);
        let mid = p.index_of("M").unwrap();
        assert_eq!(f.rho(&[], mid, &[]), vec![(a.unit(), Scalar::one())]);
    }
    // a distinguished element must be a degree-0 cycle
    let a = exterior(-1).unwrap();
    let x = a.index_of("x").unwrap();
    let bad = regular_bimodule(&a).with_pointed(vec![(x, Scalar::one())]);
    assert!(matches!(interval_stratified(&bad, &a, &bad, &p), Err(hoch::Error::UnpointedModule(_))));
}

#[test]
fn stratified_interval_global_sections() {
    // M^r ⊗^L_A M^ℓ with both modules free of rank one is A itself
    let a = truncated_polynomial(2, 0).unwrap();
    let m = regular_bimodule(&a);
    let bar = two_sided_bar(&m, &a, &m, &Window::new(-4, 0)).unwrap();
    assert_eq!(dims(&bar, -3, 0), vec![2, 0, 0, 0]);
}

#[test]
fn excision_on_the_circle() {
    let k = excision_report(&ground_field(), &Window::new(-3, 0)).unwrap();
    assert!(k.agree);
    assert_eq!(k.circle.get(&0), Some(&1));
    let dual = excision_report(&truncated_polynomial(2, 0).unwrap(), &Window::new(-5, 0)).unwrap();
    assert!(dual.agree, "{dual:?}");
    let v: Vec<usize> = (-5..=0).rev().map(|d| dual.circle.get(&d).copied().unwrap_or(0)).collect();
    assert_eq!(v, vec![2, 1, 1, 1, 1, 1]);
    let ext = excision_report(&exterior(-1).unwrap(), &Window::new(-5, 0)).unwrap();
    assert!(ext.agree, "{ext:?}");
}
