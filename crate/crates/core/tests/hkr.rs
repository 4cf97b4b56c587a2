use std::time::Instant;

use hoch::dga::{exterior, polynomial};
use hoch::hochschild::{hkr_prediction, hochschild_chain, SpaceDescriptor, Window};
use hoch::simp::{sphere_small, sphere_standard, torus};

#[test]
fn polynomial_spheres() {
    let a = polynomial(3).unwrap();
    for d in [2usize, 3] {
        let t = Instant::now();
        let w = Window::new(-6, 0).with_weights(vec![1, 2, 3]);
        let h = hochschild_chain(&sphere_small(d, 12).unwrap(), &a, &w).unwrap();
        let p = hkr_prediction(&a, SpaceDescriptor::Sphere(d), &w).unwrap();
        let got = h.homology().unwrap();
        eprintln!("S^{d}: {:?} level {} in {:?}", p.mismatches(&got), h.truncation().level, t.elapsed());
        assert!(p.mismatches(&got).is_empty());
    }
}

#[test]
fn polynomial_torus() {
    let a = polynomial(2).unwrap();
    let t = Instant::now();
    let w = Window::new(-4, 0).with_weights(vec![0, 1, 2]);
    let h = hochschild_chain(&torus(10), &a, &w).unwrap();
    let p = hkr_prediction(&a, SpaceDescriptor::Surface(1), &w).unwrap();
    let got = h.homology().unwrap();
    eprintln!("T: {:?} level {} in {:?}", p.mismatches(&got), h.truncation().level, t.elapsed());
    assert!(p.mismatches(&got).is_empty());
}

#[test]
fn exterior_spheres() {
    let a = exterior(-1).unwrap();
    for d in [1usize, 2, 3] {
        let t = Instant::now();
        let w = Window::new(-5, 0);
        let h = hochschild_chain(&sphere_small(d, 12).unwrap(), &a, &w).unwrap();
        let p = hkr_prediction(&a, SpaceDescriptor::Sphere(d), &w).unwrap();
        let got = h.homology().unwrap();
        eprintln!("Λ S^{d}: {:?} level {} in {:?}", p.mismatches(&got), h.truncation().level, t.elapsed());
        assert!(p.mismatches(&got).is_empty());
        if d == 2 {
            let s = hochschild_chain(&sphere_standard(2, 12).unwrap(), &a, &Window::new(-4, 0)).unwrap();
            let small = hochschild_chain(&sphere_small(2, 12).unwrap(), &a, &Window::new(-4, 0)).unwrap();
            assert_eq!(s.homology().unwrap().by_degree(), small.homology().unwrap().by_degree());
        }
    }
}
