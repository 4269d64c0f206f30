mod common;

use common::*;
use trider::amalgam::{complete_morphism, resolution_replacement};
use trider::{
    amalgamate_triangles, homotopic, inert_retraction_probe, injective_resolution, is_qis, triangle_closure_check,
    Certificate, ChainMap, Complex, Mat, Property, Sample, TriError, Triangle, TriangleMorphism,
};

fn free_complexes() -> Vec<(&'static str, Complex)> {
    let fx = load("z4");
    ["times_two", "chain_two", "block"].into_iter().map(|n| (n, fx.complex(n).unwrap())).collect()
}

fn menu(i: &Complex) -> Vec<Sample> {
    let fx = load("z4");
    // a second qis out of i: the inclusion into i ⊕ Cone(id) of a shifted copy
    let w = fx.complex("times_two").unwrap().shift(i.lo);
    let padded = i.direct_sum(&Triangle::build(&w, &w, &ChainMap::identity(&w)).unwrap().z);
    let incl = ChainMap::from_fn(i, |p| {
        let mut m = Mat::zero(padded.rank(p), i.rank(p));
        m.put(0, 0, &Mat::identity(i.rank(p)));
        m
    });
    vec![
        Sample::Identity,
        Sample::Padding(fx.complex("z2").unwrap()),
        Sample::Padding(fx.complex("times_two").unwrap()),
        Sample::Cylinder { target: i.clone(), map: ChainMap::identity(i) },
        Sample::Cylinder { target: padded, map: incl },
    ]
}

#[test]
fn retraction_probe_on_free_complexes() {
    for (name, i) in free_complexes() {
        let r = inert_retraction_probe(&i, &menu(&i)).unwrap();
        assert!(r.ok, "{name}");
        assert_eq!(r.samples.len(), 5);
        assert!(r.samples.iter().all(|s| s.retraction_found));
        for s in &r.samples {
            if s.sample == "padding" {
                assert_eq!(s.is_projection, Some(true), "{name}");
            }
        }
    }
}

#[test]
fn retraction_probe_preconditions() {
    let fx = load("z4");
    let z2 = fx.complex("z2").unwrap();
    assert!(matches!(inert_retraction_probe(&z2, &[Sample::Identity]), Err(TriError::Precondition(_))));
    // the zero map out of times_two is not a quasi-isomorphism
    let t = fx.complex("times_two").unwrap();
    let bad = Sample::Custom { name: "zero".into(), z: Complex::zero(t.ring), s: ChainMap::zero() };
    assert!(matches!(inert_retraction_probe(&t, &[bad]), Err(TriError::Precondition(_))));
}

#[test]
fn retraction_into_a_resolution() {
    // a qis out of a free complex into its own resolution of a quotient
    let fx = load("z4");
    let t = fx.complex("times_two").unwrap();
    let res = injective_resolution(&t, 4).unwrap();
    let s = Sample::Custom { name: "resolution".into(), z: res.complex, s: res.qis };
    assert!(inert_retraction_probe(&t, &[s]).unwrap().ok);
}

fn same_triangle(a: &Triangle, b: &Triangle) -> bool {
    (&a.x, &a.y, &a.z) == (&b.x, &b.y, &b.z)
        && a.f.equals(&b.f, &a.x, &a.y)
        && a.g.equals(&b.g, &a.y, &a.z)
        && a.h.equals(&b.h, &a.z, &a.x.shift(1))
}

fn probes() -> Vec<(String, Complex)> {
    let fx = load("z4");
    ["z2", "z4", "times_two"].iter().map(|n| (n.to_string(), fx.complex(n).unwrap())).collect()
}

#[test]
fn closure_on_identity_triangle() {
    let x = load("z4").complex("times_two").unwrap();
    let t = Triangle::build(&x, &x, &ChainMap::identity(&x)).unwrap();
    let r = triangle_closure_check(&t, Property::Inert, &probes(), -2..=2, None).unwrap();
    assert!(r.inputs_certified && r.certified, "{r:?}");
    assert_eq!(r.witness, None);
    assert_eq!(r.checks.len(), 15);
}

#[test]
fn closure_on_cone_of_doubling() {
    let (f, x, y) = load("z4").map("double").unwrap();
    let t = Triangle::build(&x, &y, &f).unwrap();
    assert!(t.z.is_degreewise_free());
    for property in [Property::Inert, Property::Localizable] {
        let r = triangle_closure_check(&t, property, &probes(), -2..=2, None).unwrap();
        assert!(r.certified, "{property:?}");
        // Hom_K(Z/4, Z/4) = Z/4 at the middle slot
        let c = r.checks.iter().find(|c| c.probe == "z4" && c.n == 0).unwrap();
        assert_eq!(c.sizes[1], 2);
        assert!(r.checks.iter().all(|c| c.exact));
    }
}

#[test]
fn closure_negative_control() {
    let (f, x, y) = load("z4").map("double").unwrap();
    let t = Triangle::build(&x, &y, &f).unwrap();
    let bogus = Certificate { target: Complex::zero(y.ring), map: ChainMap::zero() };
    let r = triangle_closure_check(&t, Property::Inert, &probes(), -2..=2, Some(bogus)).unwrap();
    assert!(!r.certified);
    assert!(!r.certificates_qis[1]);
    let (probe, n) = r.witness.clone().expect("a failing slot");
    let fx = load("z4");
    let w = fx.complex(&probe).unwrap();
    // the witness slot has a nonzero Hom into Y[n]
    assert!(brute_classes(&w, &y.shift(n)) > 1, "{probe} {n}");
}

#[test]
fn amalgamate_identities() {
    let fx = load("z4");
    for m in ["double", "id_times_two", "zero_times_two"] {
        let (f, x, y) = fx.map(m).unwrap();
        let t = Triangle::build(&x, &y, &f).unwrap();
        let id = TriangleMorphism::identity(&t);
        let a = amalgamate_triangles(&t, &t, &id, &t, &id).unwrap();
        assert!(a.ok && a.assertions.iter().all(|s| s.holds));
        assert!(same_triangle(&a.triangle, &t), "{m}");
        for mm in [&a.m1, &a.m2] {
            assert!(mm.x.equals(&id.x, &t.x, &t.x) && mm.y.equals(&id.y, &t.y, &t.y) && mm.z.equals(&id.z, &t.z, &t.z), "{m}");
        }
    }
}

#[test]
fn amalgamate_with_padding() {
    let fx = load("z4");
    let (f, x, y) = fx.map("double").unwrap();
    let t = Triangle::build(&x, &y, &f).unwrap();
    let w = fx.complex("times_two").unwrap();
    let c = Triangle::build(&w, &w, &ChainMap::identity(&w)).unwrap().z;
    let (xp, yp) = (x.direct_sum(&c), y.direct_sum(&c));
    let fp = f.dsum(&ChainMap::identity(&c), (&x, &c), (&y, &c));
    let tp = Triangle::build(&xp, &yp, &fp).unwrap();
    let incl = |a: &Complex, b: &Complex| {
        ChainMap::from_fn(a, |p| {
            let mut m = Mat::zero(b.rank(p), a.rank(p));
            m.put(0, 0, &Mat::identity(a.rank(p)));
            m
        })
    };
    let s2 = complete_morphism(&t, &tp, &incl(&x, &xp), &incl(&y, &yp)).unwrap();
    assert!(is_qis(&s2.z, &t.z, &tp.z));
    let id = TriangleMorphism::identity(&t);
    let a = amalgamate_triangles(&t, &t, &id, &tp, &s2).unwrap();
    assert!(a.ok);
    // free inputs: the amalgam is the original triangle, the padding is projected away
    assert!(same_triangle(&a.triangle, &t));
    let proj = ChainMap::from_fn(&xp, |p| incl(&x, &xp).at(p, &x, &xp).transpose());
    assert!(homotopic(&xp, &x, &a.m2.x, &proj));
}

#[test]
fn amalgamate_resolution_replacements() {
    let fx = load("z4");
    let (f, x, y) = fx.map("proj").unwrap();
    let t = Triangle::build(&x, &y, &f).unwrap();
    let (t1, s1) = resolution_replacement(&t, 2).unwrap();
    let (t2, s2) = resolution_replacement(&t, 4).unwrap();
    assert_ne!(t1, t2);
    for (tt, s) in [(&t1, &s1), (&t2, &s2)] {
        assert!(s.assertions(&t, tt, "input").iter().all(|a| a.holds));
    }
    let a = amalgamate_triangles(&t, &t1, &s1, &t2, &s2).unwrap();
    assert!(a.ok);
    assert!(a.assertions.len() >= 20);
    assert!(a.assertions.iter().all(|s| s.holds));
    // both legs are componentwise quasi-isomorphisms
    for (tt, m) in [(&t1, &a.m1), (&t2, &a.m2)] {
        assert!(is_qis(&m.x, &tt.x, &a.triangle.x));
        assert!(is_qis(&m.y, &tt.y, &a.triangle.y));
        assert!(is_qis(&m.z, &tt.z, &a.triangle.z));
    }
}

#[test]
fn amalgamate_rejects_non_qis_input() {
    let fx = load("z4");
    let (f, x, y) = fx.map("double").unwrap();
    let t = Triangle::build(&x, &y, &f).unwrap();
    let zero = TriangleMorphism { x: ChainMap::zero(), y: ChainMap::zero(), z: ChainMap::zero() };
    let id = TriangleMorphism::identity(&t);
    assert!(matches!(amalgamate_triangles(&t, &t, &id, &t, &zero), Err(TriError::Precondition(_))));
}
