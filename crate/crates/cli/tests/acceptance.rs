//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
//! if any fails. Counts are checked against brute-force oracles that share no
//! code with the library.

#[path = "../../deligne/tests/common/mod.rs"]
mod cat_oracle;
#[path = "../../trider/tests/common/mod.rs"]
mod tri_oracle;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;

use cat_oracle::{chain3_sub, coslice_terminal, count_natural, roof_classes, slice_initial};
use deligne::{
    adjunction_transport_check, hom_bifunctor_check, ind_adjointness_check, localize_morphism,
    universal_property_probe, Hand, ProbeMode, ProbeTarget,
};
use fincat::{Budget, Category, Functor, TieBreak, MAIN};
use multsys::{
    cross_check_formulas, localized_hom, materialize_localization, validate_mult_system,
    MorphismClass, Side, DEFAULT_BOUND,
};
use trider::amalgam::resolution_replacement;
use trider::{
    amalgamate_triangles, complex_parallelize, derived_hom, derived_hom_window, ext, hp_probe,
    inert_retraction_probe, injective_resolution, triangle_closure_check, Certificate, ChainMap,
    CoeffRing, Complex, FModule, IndChainMorphism, IndComplex, IndDegree, Mat, ParallelComplex,
    Property, Route, Sample, Triangle,
};

const TB: TieBreak = TieBreak::Normal;
const CATEGORIES: &[&str] = cat_oracle::FIXTURES;

type Verdict = Result<String, String>;

/// `(fixture, class, category, members, side it validates on)`.
type System = (String, String, Category, Vec<usize>, Option<Side>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn budget() -> Budget {
    Budget::new(5_000_000)
}

/// Every class of every fixture, plus the identities, with the side it
/// validates on (`None` when it is no system at all).
fn systems() -> Vec<System> {
    let mut out = Vec::new();
    for name in CATEGORIES {
        let fx = cat_oracle::load(name);
        let c = fx.category(MAIN).unwrap();
        let mut classes: Vec<(String, Vec<usize>)> = fx
            .classes
            .keys()
            .map(|k| (k.clone(), fx.class(&c, k).unwrap()))
            .collect();
        classes.push(("identities".into(), c.objects().map(|x| c.id(x)).collect()));
        for (cl, ids) in classes {
            let rep = validate_mult_system(&c, &MorphismClass::new(&c, &ids, Side::Bilateral));
            let side = match (rep.right_ok(), rep.left_ok()) {
                (true, true) => Some(Side::Bilateral),
                (true, false) => Some(Side::Right),
                (false, true) => Some(Side::Left),
                _ => None,
            };
            out.push((name.to_string(), cl, c.clone(), ids, side));
        }
    }
    out
}

fn ac1() -> Verdict {
    let (mut pairs, mut bilateral) = (0, 0);
    for (name, cl, c, ids, side) in systems() {
        let Some(side) = side else { continue };
        if !side.has_right() {
            continue;
        }
        let s = MorphismClass::new(&c, &ids, side);
        for x in c.objects() {
            for y in c.objects() {
                let got = localized_hom(&c, &s, x, y, Side::Right)
                    .map_err(|e| e.to_string())?
                    .len();
                let want = roof_classes(&c, &ids, x, y);
                ensure!(
                    got == want,
                    "{name}/{cl} ({x},{y}): {got} fractions, oracle {want}"
                );
                pairs += 1;
            }
        }
        if side == Side::Bilateral {
            let r = cross_check_formulas(&c, &s).map_err(|e| e.to_string())?;
            ensure!(r.agree, "{name}/{cl}: formulas disagree {:?}", r.witnesses);
            bilateral += 1;
        }
    }
    Ok(format!("{pairs} object pairs match the roof oracle; {bilateral} bilateral systems agree across formulas"))
}

fn ac2() -> Verdict {
    let mut n = 0;
    for (name, cl, c, ids, side) in systems() {
        let Some(side) = side else { continue };
        let s = MorphismClass::new(&c, &ids, side);
        for (hand, ok) in [
            (Hand::Right, side.has_right()),
            (Hand::Left, side.has_left()),
        ] {
            if !ok {
                continue;
            }
            for &f in &ids {
                let m = localize_morphism(&c, &s, f, hand, TB).map_err(|e| e.to_string())?;
                ensure!(
                    m.inverse.is_some() && m.inverse_verified,
                    "{name}/{cl} {}: no verified inverse",
                    c.mor_name(f)
                );
                if hand == Hand::Right {
                    // an invertible image makes source and target indistinguishable to every Hom
                    let (a, b) = (c.src(f), c.tgt(f));
                    for w in c.objects() {
                        ensure!(
                            roof_classes(&c, &ids, w, a) == roof_classes(&c, &ids, w, b)
                                && roof_classes(&c, &ids, a, w) == roof_classes(&c, &ids, b, w),
                            "{name}/{cl} {}: Hom sizes differ at {w}",
                            c.mor_name(f)
                        );
                    }
                }
                n += 1;
            }
        }
    }
    Ok(format!(
        "{n} morphisms of S have verified two-sided inverses"
    ))
}

fn ac3() -> Verdict {
    let mut grids = 0;
    for (name, cl, c, ids, side) in systems() {
        let Some(side) = side else { continue };
        let s = MorphismClass::new(&c, &ids, side);
        let pairs: Vec<(usize, usize)> = c
            .objects()
            .flat_map(|x| c.objects().map(move |y| (x, y)))
            .collect();
        for (hand, ok) in [
            (Hand::Right, side.has_right()),
            (Hand::Left, side.has_left()),
        ] {
            if !ok {
                continue;
            }
            let r = ind_adjointness_check(&c, &s, hand, &pairs, TB, &budget())
                .map_err(|e| e.to_string())?;
            ensure!(r.ok && r.natural, "{name}/{cl} {hand:?}: {:?}", r.witnesses);
            if hand == Hand::Right {
                for (p, &(x, y)) in r.pairs.iter().zip(&pairs) {
                    let want = roof_classes(&c, &ids, x, y);
                    ensure!(
                        p.localized == want && p.ind == want,
                        "{name}/{cl} ({x},{y}): {p:?}, oracle {want}"
                    );
                }
            }
            grids += 1;
        }
    }
    Ok(format!("{grids} full grids pass with naturality"))
}

fn ac4() -> Verdict {
    let (c, sub, refl, incl) = chain3_sub();
    let fx = cat_oracle::load("chain3");
    let u = fx.class(&c, "u_class").unwrap();
    let s = MorphismClass::new(&c, &u, Side::Bilateral);
    let s2 = MorphismClass::identities(&sub);
    let r = adjunction_transport_check(&c, &s, &sub, &s2, &refl, &incl, TB, &budget())
        .map_err(|e| e.to_string())?;
    ensure!(
        r.ok && r.witnesses.is_empty(),
        "positive case failed: {:?}",
        r.witnesses
    );
    // Hom_{sub}(F x, x') against roofs Hom_{C_S}(x, G x')
    for p in &r.pairs {
        let (x, x2) = (c.obj(&p.x).unwrap(), sub.obj(&p.x2).unwrap());
        let direct = sub.hom(refl.obj[x], x2).len();
        let roofs = roof_classes(&c, &u, x, incl.obj[x2]);
        ensure!(
            direct == roofs,
            "({},{}): {direct} vs {roofs} roofs",
            p.x,
            p.x2
        );
    }
    let mut bad = u.clone();
    bad.push(c.mor("w").unwrap());
    let sb = MorphismClass::new(&c, &bad, Side::Bilateral);
    let n = adjunction_transport_check(&c, &sb, &sub, &s2, &refl, &incl, TB, &budget())
        .map_err(|e| e.to_string())?;
    ensure!(!n.ok && !n.witnesses.is_empty(), "negative control passed");
    let w = &n.witnesses[0];
    Ok(format!(
        "{} pairs pass; control fails with {} {:?}",
        r.pairs.len(),
        w.law,
        w.witnesses
    ))
}

fn ac5() -> Verdict {
    let mut distinct = Vec::new();
    for name in ["chain3", "walking_arrow"] {
        let fx = cat_oracle::load(name);
        let c = fx.category(MAIN).unwrap();
        let s = MorphismClass::new(&c, &fx.class(&c, "u_class").unwrap(), Side::Bilateral);
        let l = materialize_localization(&c, &s, TB, DEFAULT_BOUND).map_err(|e| e.to_string())?;
        let id = Functor::identity(&c);
        let mut gs = 0;
        for y in c.objects() {
            let r = universal_property_probe(
                &c,
                &s,
                &l,
                ProbeMode::Localizing,
                &ProbeTarget::Constant(y),
                TB,
                &budget(),
            )
            .map_err(|e| e.to_string())?;
            let gq = Functor {
                obj: vec![y; c.num_objects()],
                mor: vec![c.id(y); c.num_morphisms()],
            };
            let want = count_natural(&c, &c, &id, &gq);
            ensure!(
                r.bijective && r.lhs == r.rhs && r.rhs == want,
                "{name} const {y}: {r:?}, oracle {want}"
            );
            gs += 1;
        }
        let r = universal_property_probe(
            &c,
            &s,
            &l,
            ProbeMode::Deligne { f: &id, target: &l },
            &ProbeTarget::Identity,
            TB,
            &budget(),
        )
        .map_err(|e| e.to_string())?;
        let want = count_natural(&l.cat, &c, &l.q, &l.q);
        ensure!(
            r.bijective && r.rhs == want,
            "{name} identity: {r:?}, oracle {want}"
        );
        gs += 1;
        distinct.push(format!("{name}: {gs}"));
    }
    Ok(format!(
        "bijections verified for G per category ({})",
        distinct.join(", ")
    ))
}

fn ac6() -> Verdict {
    let fx = cat_oracle::load("chain3");
    let c = fx.category(MAIN).unwrap();
    let u = fx.class(&c, "u_class").unwrap();
    let s = MorphismClass::new(&c, &u, Side::Bilateral);
    let mut n = 0;
    for x in c.objects() {
        for y in c.objects() {
            let r = hom_bifunctor_check(&c, &s, x, y, TB, &budget()).map_err(|e| e.to_string())?;
            let want = roof_classes(&c, &u, x, y);
            ensure!(
                r.ok && r.colimit == want && r.localized == want,
                "({x},{y}): {r:?}, oracle {want}"
            );
            if let (Some(rx), Some(ly)) = (coslice_terminal(&c, &s, x), slice_initial(&c, &s, y)) {
                let want = c.hom(rx, ly).len();
                ensure!(
                    r.representative_hom == Some(want) && r.limit == want,
                    "({x},{y}): {r:?}, Hom(R x, L y) = {want}"
                );
            }
            n += 1;
        }
    }
    Ok(format!("{n} object pairs"))
}

/// `Ext^n(M, N)` for both routes and the enlarged windows, all normalized.
fn ext_all(r: CoeffRing, m: &FModule, nm: &FModule, n: i32) -> Result<FModule, String> {
    let a = ext(r, m, nm, n, Route::Injective)
        .map_err(|e| e.to_string())?
        .module
        .normalized();
    let b = ext(r, m, nm, n, Route::Projective)
        .map_err(|e| e.to_string())?
        .module
        .normalized();
    ensure!(a == b, "routes disagree at n={n}: {a:?} vs {b:?}");
    let (x, y) = (
        Complex::single(r, m.clone(), 0),
        Complex::single(r, nm.clone(), 0),
    );
    for extra in 1..=3 {
        for route in [Route::Injective, Route::Projective] {
            let w = derived_hom_window(&x, &y, n, route, extra)
                .map_err(|e| e.to_string())?
                .module
                .normalized();
            ensure!(w == a, "window +{extra} {route:?} changes n={n}: {w:?}");
        }
    }
    Ok(a)
}

fn ac7() -> Verdict {
    // Z/4: the resolution ... -> Z/4 -2-> Z/4 -> Z/2 is periodic, and Hom(-, Z/2)
    // kills multiplication by 2, so every Ext^n is Z/2. The same argument with
    // ε in place of 2 gives k in every degree over F_2[ε]. F_2 is a field.
    let z4 = CoeffRing::cyclic(2, 2);
    let z2 = FModule::cyclic(1);
    for n in 0..=4 {
        let e = ext_all(z4, &z2, &z2, n)?;
        ensure!(e.cardinality(&z4) == 2, "Z/4 n={n}: {e:?}");
    }
    let d = CoeffRing::dual(2);
    let k = FModule::cyclic(1);
    for n in 0..=4 {
        let e = ext_all(d, &k, &k, n)?;
        ensure!(e.cardinality(&d) == 2, "F_2[e] n={n}: {e:?}");
    }
    let f2 = CoeffRing::field(2);
    for n in 0..=4 {
        let e = ext_all(f2, &k, &k, n)?;
        let want = if n == 0 { 2 } else { 1 };
        ensure!(e.cardinality(&f2) == want, "F_2 n={n}: {e:?}");
    }
    // Ext^0 is Hom: compare with the enumerated count
    let homs = tri_oracle::brute_hom_count(&z4, &[1], &[1]) as u128;
    ensure!(
        derived_hom(
            &Complex::single(z4, z2.clone(), 0),
            &Complex::single(z4, z2, 0),
            0,
            Route::Injective
        )
        .map_err(|e| e.to_string())?
        .cardinality(&z4)
            == homs,
        "Ext^0 is not Hom"
    );
    Ok(
        "Z/4 and F_2[e] give 2 in degrees 0..4, F_2 vanishes above 0; routes and windows agree"
            .into(),
    )
}

fn retraction_menu(i: &Complex) -> Vec<Sample> {
    let fx = tri_oracle::load("z4");
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
        Sample::Cylinder {
            target: i.clone(),
            map: ChainMap::identity(i),
        },
        Sample::Cylinder {
            target: padded,
            map: incl,
        },
    ]
}

fn ac8() -> Verdict {
    let fx = tri_oracle::load("z4");
    for name in ["times_two", "chain_two", "block"] {
        let i = fx.complex(name).unwrap();
        let r = inert_retraction_probe(&i, &retraction_menu(&i)).map_err(|e| e.to_string())?;
        ensure!(
            r.ok && r.samples.len() == 5 && r.samples.iter().all(|s| s.retraction_found),
            "{name}: {r:?}"
        );
    }
    let probes: Vec<(String, Complex)> = ["z2", "z4", "times_two"]
        .iter()
        .map(|n| (n.to_string(), fx.complex(n).unwrap()))
        .collect();
    let x = fx.complex("times_two").unwrap();
    let t = Triangle::build(&x, &x, &ChainMap::identity(&x)).unwrap();
    let r = triangle_closure_check(&t, Property::Inert, &probes, -2..=2, None)
        .map_err(|e| e.to_string())?;
    ensure!(r.certified, "identity triangle not certified");
    let (f, x, y) = fx.map("double").unwrap();
    let t = Triangle::build(&x, &y, &f).unwrap();
    let r = triangle_closure_check(&t, Property::Localizable, &probes, -2..=2, None)
        .map_err(|e| e.to_string())?;
    ensure!(r.certified, "cone of doubling not certified");
    // Hom_K(Z/4, Z/4) has 4 elements: log_2 = 2, by enumeration too
    let slot = r
        .checks
        .iter()
        .find(|c| c.probe == "z4" && c.n == 0)
        .unwrap();
    let z4c = fx.complex("z4").unwrap();
    ensure!(
        1u128 << slot.sizes[1] == tri_oracle::brute_classes(&z4c, &y),
        "middle slot size"
    );
    let bogus = Certificate {
        target: Complex::zero(y.ring),
        map: ChainMap::zero(),
    };
    let r = triangle_closure_check(&t, Property::Inert, &probes, -2..=2, Some(bogus))
        .map_err(|e| e.to_string())?;
    ensure!(!r.certified, "negative control certified");
    let (probe, n) = r.witness.clone().ok_or("no witness for the control")?;
    ensure!(
        tri_oracle::brute_classes(&fx.complex(&probe).unwrap(), &y.shift(n)) > 1,
        "witness slot is trivial"
    );
    Ok(format!("3 free complexes pass 5 samples each; 2 triangles certified; control rejected at ({probe}, {n})"))
}

fn ac9() -> Verdict {
    let fx = tri_oracle::load("z4");
    let (f, x, y) = fx.map("proj").unwrap();
    let t = Triangle::build(&x, &y, &f).unwrap();
    let (t1, s1) = resolution_replacement(&t, 2).map_err(|e| e.to_string())?;
    let (t2, s2) = resolution_replacement(&t, 4).map_err(|e| e.to_string())?;
    let a = amalgamate_triangles(&t, &t1, &s1, &t2, &s2).map_err(|e| e.to_string())?;
    let failed: Vec<&str> = a
        .assertions
        .iter()
        .filter(|s| !s.holds)
        .map(|s| s.what.as_str())
        .collect();
    ensure!(a.ok && failed.is_empty(), "failed assertions: {failed:?}");
    // the amalgam has the cohomology of the original triangle, by enumeration
    for (orig, amal) in [
        (&t.x, &a.triangle.x),
        (&t.y, &a.triangle.y),
        (&t.z, &a.triangle.z),
    ] {
        for p in orig.lo.min(amal.lo)..=orig.hi().max(amal.hi()) {
            let mut h0 = tri_oracle::brute_cohomology(orig, p);
            let mut h1 = tri_oracle::brute_cohomology(amal, p);
            h0.sort_unstable();
            h1.sort_unstable();
            ensure!(h0 == h1, "H^{p} differs: {h0:?} vs {h1:?}");
        }
    }
    Ok(format!(
        "{} commutativity and qis assertions hold",
        a.assertions.len()
    ))
}

fn preorder(names: &[&str]) -> Category {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    Category::preorder(&names, |x, y| x <= y).unwrap()
}

fn ind_complex(
    index: &Category,
    lo: i32,
    hi: i32,
    stages: &[Complex],
    trans: impl Fn(usize) -> ChainMap,
) -> IndComplex {
    let maps: Vec<ChainMap> = index.morphisms().map(&trans).collect();
    IndComplex {
        ring: stages[0].ring,
        index: index.clone(),
        lo,
        degrees: (lo..=hi)
            .map(|p| IndDegree {
                modules: stages.iter().map(|s| s.module(p)).collect(),
                transitions: index
                    .morphisms()
                    .map(|m| maps[m].at(p, &stages[index.src(m)], &stages[index.tgt(m)]))
                    .collect(),
                differential: stages
                    .iter()
                    .map(|s| {
                        if p < hi {
                            s.d(p)
                        } else {
                            Mat::zero(0, s.rank(p))
                        }
                    })
                    .collect(),
            })
            .collect(),
    }
}

fn one(a: u64) -> Mat {
    Mat::from_rows(&[vec![a]], 1)
}

/// a ↦ [Z/2 -2-> Z/4], b ↦ [Z/4 -1-> Z/4]; and a ↦ Z/2 in degree 2,
/// b ↦ [R -2-> R -2-> R] in degrees 0..2.
fn arrow_systems() -> Vec<(IndComplex, Vec<Complex>)> {
    let fx = tri_oracle::load("z4");
    let c = preorder(&["a", "b"]);
    let mut out = Vec::new();
    for (stages, lo, hi, t) in [
        (
            vec![
                fx.complex("z2_to_z4").unwrap(),
                fx.complex("times_one").unwrap(),
            ],
            0,
            1,
            ChainMap {
                maps: [(0, one(2)), (1, one(1))].into(),
            },
        ),
        (
            vec![
                Complex::single(tri_oracle::z4(), FModule::cyclic(1), 2),
                fx.complex("chain_two").unwrap().shift(-1),
            ],
            0,
            2,
            ChainMap {
                maps: [(2, one(2))].into(),
            },
        ),
    ] {
        let x = ind_complex(&c, lo, hi, &stages, |m| {
            if c.is_identity(m) {
                ChainMap::identity(&stages[c.src(m)])
            } else {
                t.clone()
            }
        });
        out.push((x, stages));
    }
    out
}

fn constant(c: &Category, x: &Complex) -> Result<ParallelComplex, String> {
    complex_parallelize(&IndComplex::constant(c, x)).map_err(|e| e.to_string())
}

fn ac10() -> Verdict {
    let fx = tri_oracle::load("z4");
    let idem = cat_oracle::load("idempotent").category(MAIN).unwrap();
    let (pt, arrow) = (preorder(&["pt"]), preorder(&["a", "b"]));
    let mut cases = Vec::new();
    for name in fx.complexes.keys() {
        let x = fx.complex(name).unwrap();
        for c in [&pt, &arrow, &idem] {
            cases.push((
                IndComplex::constant(c, &x),
                vec![x.clone(); c.num_objects()],
            ));
        }
    }
    cases.extend(arrow_systems());
    let trips = cases.len();
    for (x, stages) in &cases {
        let j = complex_parallelize(x).map_err(|e| e.to_string())?;
        ensure!(
            &j.stages == stages && &j.reassemble() == x,
            "round trip differs"
        );
    }
    // widths by hand: lowest and highest nonzero degree over all stages
    let sys = arrow_systems();
    let bounds = [
        (constant(&pt, &fx.complex("times_two").unwrap())?, (0, 1, 2)),
        (
            constant(&arrow, &fx.complex("chain_two").unwrap())?,
            (-1, 1, 3),
        ),
        (
            complex_parallelize(&sys[0].0).map_err(|e| e.to_string())?,
            (0, 1, 2),
        ),
        (
            complex_parallelize(&sys[1].0).map_err(|e| e.to_string())?,
            (0, 2, 3),
        ),
    ];
    for (j, want) in &bounds {
        let b = j.uniform_bound();
        ensure!(
            (b.lo, b.hi, b.width) == *want,
            "uniform bound {:?}, expected {want:?}",
            (b.lo, b.hi, b.width)
        );
    }
    let mut instances = Vec::new();
    let z2 = fx.complex("z2").unwrap();
    let res = injective_resolution(&z2, 3).map_err(|e| e.to_string())?;
    instances.push((
        constant(&pt, &z2)?,
        constant(&pt, &res.complex)?,
        IndChainMorphism {
            comps: vec![(0, res.qis)],
        },
    ));
    for m in ["proj", "incl", "double", "id_times_two", "zero_times_two"] {
        let (f, x, y) = fx.map(m).unwrap();
        instances.push((
            constant(&pt, &x)?,
            constant(&pt, &y)?,
            IndChainMorphism {
                comps: vec![(0, f)],
            },
        ));
    }
    let (x, stages) = &sys[0];
    let a = complex_parallelize(x).map_err(|e| e.to_string())?;
    let u = arrow.hom(0, 1)[0];
    instances.push((
        a.clone(),
        constant(&pt, &stages[1])?,
        IndChainMorphism {
            comps: vec![
                (0, a.transitions[u].clone()),
                (0, ChainMap::identity(&stages[1])),
            ],
        },
    ));
    instances.push((
        a.clone(),
        a.clone(),
        IndChainMorphism {
            comps: vec![
                (0, ChainMap::identity(&stages[0])),
                (1, ChainMap::identity(&stages[1])),
            ],
        },
    ));
    let s = complex_parallelize(&sys[1].0).map_err(|e| e.to_string())?;
    instances.push((
        s.clone(),
        s,
        IndChainMorphism {
            comps: vec![(0, ChainMap::zero()), (1, ChainMap::zero())],
        },
    ));
    let (mut isos, mut non) = (0, 0);
    for (a, b, phi) in &instances {
        let r = hp_probe(a, b, phi).map_err(|e| e.to_string())?;
        ensure!(
            r.applicable && r.agree && r.iso == r.all_hp_iso,
            "hp probe: {r:?}"
        );
        // on a terminal index the answer is read at the last stage: compare cohomology by enumeration
        let (ta, tb) = (&a.stages[a.stages.len() - 1], &b.stages[b.stages.len() - 1]);
        let same = (ta.lo.min(tb.lo)..=ta.hi().max(tb.hi())).all(|p| {
            let (mut h0, mut h1) = (
                tri_oracle::brute_cohomology(ta, p),
                tri_oracle::brute_cohomology(tb, p),
            );
            h0.sort_unstable();
            h1.sort_unstable();
            h0 == h1
        });
        ensure!(
            !r.iso || same,
            "iso claimed between stages with different cohomology"
        );
        if r.iso {
            isos += 1;
        } else {
            non += 1;
        }
    }
    Ok(format!(
        "{trips} round trips, 4 widths, {} hp instances ({isos} iso, {non} not)",
        instances.len()
    ))
}

fn corpus_run(bin: &str, root: &Path, extra: &[&str]) -> Result<(Vec<u8>, i32), String> {
    let out = Command::new(bin)
        .current_dir(root)
        .args(["run-corpus", "corpus"])
        .args(extra)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code().unwrap_or(-1)))
}

fn verdicts(stdout: &[u8]) -> Result<Vec<(String, String)>, String> {
    let v: serde_json::Value = serde_json::from_slice(stdout).map_err(|e| e.to_string())?;
    Ok(v["result"]["details"]
        .as_array()
        .ok_or("no details")?
        .iter()
        .map(|d| {
            (
                d["check"].as_str().unwrap_or("").to_string(),
                d["status"].as_str().unwrap_or("").to_string(),
            )
        })
        .collect())
}

fn ac11() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_locfrac");
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
    let (a, ca) = corpus_run(bin, &root, &[])?;
    let (b, cb) = corpus_run(bin, &root, &[])?;
    let (r, cr) = corpus_run(bin, &root, &["--tie-break", "reversed"])?;
    ensure!(
        ca == 0 && cb == 0 && cr == 0,
        "corpus exit codes {ca} {cb} {cr}"
    );
    ensure!(a == b, "two runs differ byte-wise");
    let (va, vr) = (verdicts(&a)?, verdicts(&r)?);
    ensure!(!va.is_empty() && va == vr, "tie-break changes verdicts");
    Ok(format!(
        "{} checks, {} bytes identical across runs, same verdicts reversed",
        va.len(),
        a.len()
    ))
}

fn main() {
    type Criterion = (&'static str, &'static str, fn() -> Verdict);
    let criteria: [Criterion; 11] = [
        ("AC1", "localized Hom against roof oracle", ac1),
        ("AC2", "S becomes invertible in Ind", ac2),
        ("AC3", "ind adjointness on full grids", ac3),
        ("AC4", "adjunction transport", ac4),
        ("AC5", "universal property probes", ac5),
        ("AC6", "Hom bifunctor on chain3", ac6),
        ("AC7", "Ext tables", ac7),
        ("AC8", "inertness and triangle closure", ac8),
        ("AC9", "triangle amalgamation", ac9),
        ("AC10", "parallel complexes", ac10),
        ("AC11", "corpus determinism", ac11),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, what, f) in criteria {
        let v = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match v {
            Ok(detail) => println!("{id} {what} ... PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("{id} {what} ... FAIL ({why})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
