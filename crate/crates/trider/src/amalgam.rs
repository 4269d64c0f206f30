//! Completing two quasi-isomorphisms out of a triangle to a commutative square.

use serde::Serialize;

use crate::complex::{ChainMap, Triangle};
use crate::homotopy::{extend_along, homotopic, is_qis, null_homotopy, Family, HomComplex, Unsolvable};
use crate::matrix::Mat;
use crate::module::solve_mod;
use crate::resolve::injective_resolution;
use crate::TriError;

/// Components on the three vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleMorphism {
    pub x: ChainMap,
    pub y: ChainMap,
    pub z: ChainMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub what: String,
    pub holds: bool,
}

impl TriangleMorphism {
    pub fn identity(t: &Triangle) -> Self {
        TriangleMorphism {
            x: ChainMap::identity(&t.x),
            y: ChainMap::identity(&t.y),
            z: ChainMap::identity(&t.z),
        }
    }

    /// Chain maps, the three squares up to homotopy, and componentwise qis.
    pub fn assertions(&self, a: &Triangle, b: &Triangle, label: &str) -> Vec<Assertion> {
        let mut out = Vec::new();
        let mut push = |what: &str, holds: bool| out.push(Assertion { what: format!("{label}: {what}"), holds });
        let comps = [(&self.x, &a.x, &b.x), (&self.y, &a.y, &b.y), (&self.z, &a.z, &b.z)];
        for (name, (m, s, t)) in ["x", "y", "z"].iter().zip(comps) {
            push(&format!("{name} is a chain map"), m.check(s, t).is_ok());
            push(&format!("{name} is a qis"), is_qis(m, s, t));
        }
        push(
            "f-square",
            homotopic(&a.x, &b.y, &b.f.after(&self.x, &a.x, &b.x, &b.y), &self.y.after(&a.f, &a.x, &a.y, &b.y)),
        );
        push(
            "g-square",
            homotopic(&a.y, &b.z, &b.g.after(&self.y, &a.y, &b.y, &b.z), &self.z.after(&a.g, &a.y, &a.z, &b.z)),
        );
        let (ax1, bx1) = (a.x.shift(1), b.x.shift(1));
        push(
            "h-square",
            homotopic(&a.z, &bx1, &b.h.after(&self.z, &a.z, &b.z, &bx1), &self.x.shift(1).after(&a.h, &a.z, &ax1, &bx1)),
        );
        out
    }

    /// `self ∘ m` for `m: a -> b`, `self: b -> c`.
    pub fn after(&self, m: &TriangleMorphism, a: &Triangle, b: &Triangle, c: &Triangle) -> TriangleMorphism {
        TriangleMorphism {
            x: self.x.after(&m.x, &a.x, &b.x, &c.x),
            y: self.y.after(&m.y, &a.y, &b.y, &c.y),
            z: self.z.after(&m.z, &a.z, &b.z, &c.z),
        }
    }
}

/// The map of cones `(x, y) ↦ (u_x x, u_y y + h x)` induced by a square
/// `u_y f ≃ f' u_x` with homotopy `h`.
pub fn cone_map(a: &Triangle, b: &Triangle, ux: &ChainMap, uy: &ChainMap, h: &Family) -> ChainMap {
    ChainMap::from_fn(&a.z, |p| {
        let mut m = Mat::zero(b.z.rank(p), a.z.rank(p));
        let (ax, bx) = (a.x.rank(p + 1), b.x.rank(p + 1));
        m.put(0, 0, &ux.at(p + 1, &a.x, &b.x));
        if let Some(hp) = h.get(&(p + 1)) {
            if (hp.rows, hp.cols) == (b.y.rank(p), ax) {
                m.put(bx, 0, hp);
            }
        }
        m.put(bx, ax, &uy.at(p, &a.y, &b.y));
        m
    })
}

/// Extend `(u_x, u_y)` to a morphism of cone triangles.
pub fn complete_morphism(a: &Triangle, b: &Triangle, ux: &ChainMap, uy: &ChainMap) -> Result<TriangleMorphism, TriError> {
    let diff = uy.after(&a.f, &a.x, &a.y, &b.y).add(&b.f.after(ux, &a.x, &b.x, &b.y).neg(&a.x, &b.y), &a.x, &b.y);
    let h = null_homotopy(&a.x, &b.y, &diff)
        .ok_or_else(|| TriError::Precondition("the square on the base does not commute up to homotopy".into()))?;
    Ok(TriangleMorphism { x: ux.clone(), y: uy.clone(), z: cone_map(a, b, ux, uy, &h) })
}

/// Replace the first two vertices by injective resolutions cut at `window`.
pub fn resolution_replacement(t: &Triangle, window: i32) -> Result<(Triangle, TriangleMorphism), TriError> {
    let ix = injective_resolution(&t.x, window)?;
    let iy = injective_resolution(&t.y, window)?;
    let target = iy.qis.after(&t.f, &t.x, &t.y, &iy.complex);
    let f = extend_along(&ix.qis, &target, &t.x, &ix.complex, &iy.complex, "base of the replacement")
        .map_err(TriError::ConstructionFailed)?;
    let t2 = Triangle::build(&ix.complex, &iy.complex, &f)?;
    let m = complete_morphism(t, &t2, &ix.qis, &iy.qis)?;
    Ok((t2, m))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Amalgam {
    pub triangle: Triangle,
    pub m1: TriangleMorphism,
    pub m2: TriangleMorphism,
    pub assertions: Vec<Assertion>,
    pub ok: bool,
}

/// Given `s1: t -> t1` and `s2: t -> t2` with qis components, build `t3` and
/// qis morphisms `t1 -> t3 <- t2` whose composites with `s1`, `s2` agree up
/// to homotopy. Steps: complete the squares on `X` and `Y` through injective
/// resolutions of `t`, extend the base map, pick the homotopies of the two
/// base squares so the third squares agree, then take cones.
pub fn amalgamate_triangles(
    t: &Triangle,
    t1: &Triangle,
    s1: &TriangleMorphism,
    t2: &Triangle,
    s2: &TriangleMorphism,
) -> Result<Amalgam, TriError> {
    let mut assertions = Vec::new();
    let mut check = |what: String, holds: bool| -> Result<(), TriError> {
        assertions.push(Assertion { what: what.clone(), holds });
        if holds {
            Ok(())
        } else {
            Err(TriError::Internal(format!("assertion failed: {what}")))
        }
    };
    for (s, tt, l) in [(s1, t1, "s1"), (s2, t2, "s2")] {
        for a in s.assertions(t, tt, l) {
            if !a.holds {
                return Err(TriError::Precondition(format!("input {}", a.what)));
            }
        }
    }
    let all = [t, t1, t2];
    let w = all.iter().flat_map(|q| [q.x.hi(), q.y.hi(), q.z.hi()]).max().unwrap_or(0) + 2;
    let ix = injective_resolution(&t.x, w)?;
    let iy = injective_resolution(&t.y, w)?;
    let (ixc, iyc) = (&ix.complex, &iy.complex);

    // squares on objects
    let fail = TriError::ConstructionFailed;
    let u1x = extend_along(&s1.x, &ix.qis, &t.x, &t1.x, ixc, "square on X through t1").map_err(fail)?;
    let u2x = extend_along(&s2.x, &ix.qis, &t.x, &t2.x, ixc, "square on X through t2").map_err(fail)?;
    let u1y = extend_along(&s1.y, &iy.qis, &t.y, &t1.y, iyc, "square on Y through t1").map_err(fail)?;
    let u2y = extend_along(&s2.y, &iy.qis, &t.y, &t2.y, iyc, "square on Y through t2").map_err(fail)?;
    check(
        "X-square commutes".into(),
        homotopic(&t.x, ixc, &u1x.after(&s1.x, &t.x, &t1.x, ixc), &u2x.after(&s2.x, &t.x, &t2.x, ixc)),
    )?;
    check(
        "Y-square commutes".into(),
        homotopic(&t.y, iyc, &u1y.after(&s1.y, &t.y, &t1.y, iyc), &u2y.after(&s2.y, &t.y, &t2.y, iyc)),
    )?;

    // cocone on the base
    let base = iy.qis.after(&t.f, &t.x, &t.y, iyc);
    let f3 = extend_along(&ix.qis, &base, &t.x, ixc, iyc, "base map").map_err(fail)?;
    check("base square commutes".into(), homotopic(&t.x, iyc, &f3.after(&ix.qis, &t.x, ixc, iyc), &base))?;
    let t3 = Triangle::build(ixc, iyc, &f3)?;

    // homotopies h1, h2 of the base squares, and K, solved together so that
    // the third squares agree
    let r = &t.x.ring;
    let d_of = |tt: &Triangle, ux: &ChainMap, uy: &ChainMap| {
        uy.after(&tt.f, &tt.x, &tt.y, iyc).add(&f3.after(ux, &tt.x, ixc, iyc).neg(&tt.x, iyc), &tt.x, iyc)
    };
    let c1 = d_of(t1, &u1x, &u1y);
    let c2 = d_of(t2, &u2x, &u2y);
    let h1c = HomComplex::new(&t1.x, iyc);
    let h2c = HomComplex::new(&t2.x, iyc);
    let hz = HomComplex::new(&t.z, &t3.z);
    let zero = Family::new();
    let w1 = cone_map(t1, &t3, &u1x, &u1y, &zero).after(&s1.z, &t.z, &t1.z, &t3.z);
    let w2 = cone_map(t2, &t3, &u2x, &u2y, &zero).after(&s2.z, &t.z, &t2.z, &t3.z);
    let rhs0 = w2.add(&w1.neg(&t.z, &t3.z), &t.z, &t3.z);
    let l1 = h1c.matrix_of(-1, &hz, 0, |h| via_cone(t, t1, &t3, &s1.z, h, false));
    let l2 = h2c.matrix_of(-1, &hz, 0, |h| via_cone(t, t2, &t3, &s2.z, h, true));
    let (n1, n2, nk) = (h1c.hom_module(-1).len(), h2c.hom_module(-1).len(), hz.hom_module(-1).len());
    let (m1, m2, m3) = (h1c.hom_module(0).len(), h2c.hom_module(0).len(), hz.hom_module(0).len());
    let mut a = Mat::zero(m1 + m2 + m3, n1 + n2 + nk);
    a.put(0, 0, &h1c.d(-1));
    a.put(m1, n1, &h2c.d(-1));
    a.put(m1 + m2, 0, &l1);
    a.put(m1 + m2, n1, &l2);
    a.put(m1 + m2, n1 + n2, &hz.d(-1).neg(r));
    let tgt = h1c.hom_module(0).sum(&h2c.hom_module(0)).sum(&hz.hom_module(0));
    let mut b = h1c.coords(0, &c1.maps);
    b.extend(h2c.coords(0, &c2.maps));
    b.extend(hz.coords(0, &rhs0.maps));
    let sol = solve_mod(r, &a, &tgt, &b).ok_or_else(|| {
        let nf = crate::matrix::normal_form(r, &a.hcat(&tgt.relations(r)));
        let aug = crate::matrix::normal_form(r, &a.hcat(&tgt.relations(r)).hcat(&Mat::from_cols(b.len(), &[b.clone()])));
        fail(Unsolvable {
            what: "equalizing the third squares".into(),
            unknowns: a.cols,
            equations: a.rows,
            rank: nf.rank,
            augmented_rank: aug.rank,
        })
    })?;
    let h1 = h1c.family(-1, &sol[..n1]);
    let h2 = h2c.family(-1, &sol[n1..n1 + n2]);

    // cone completion
    let z1 = cone_map(t1, &t3, &u1x, &u1y, &h1);
    let z2 = cone_map(t2, &t3, &u2x, &u2y, &h2);
    let m1 = TriangleMorphism { x: u1x, y: u1y, z: z1 };
    let m2 = TriangleMorphism { x: u2x, y: u2y, z: z2 };
    for a in m1.assertions(t1, &t3, "t1 -> t3").into_iter().chain(m2.assertions(t2, &t3, "t2 -> t3")) {
        check(a.what, a.holds)?;
    }
    let c1 = m1.after(s1, t, t1, &t3);
    let c2 = m2.after(s2, t, t2, &t3);
    check("outer square on X".into(), homotopic(&t.x, &t3.x, &c1.x, &c2.x))?;
    check("outer square on Y".into(), homotopic(&t.y, &t3.y, &c1.y, &c2.y))?;
    check("outer square on Z".into(), homotopic(&t.z, &t3.z, &c1.z, &c2.z))?;
    Ok(Amalgam { triangle: t3, m1, m2, assertions, ok: true })
}

/// `±(0, h)∘s_z`, the part of the third component that depends on `h`.
fn via_cone(t: &Triangle, tt: &Triangle, t3: &Triangle, sz: &ChainMap, h: &Family, negate: bool) -> Family {
    let only_h = cone_map(tt, t3, &ChainMap::zero(), &ChainMap::zero(), h);
    let m = only_h.after(sz, &t.z, &tt.z, &t3.z);
    if negate {
        m.neg(&t.z, &t3.z).maps
    } else {
        m.maps
    }
}
