//! One function per verb. Each returns its laws and a JSON result, or the
//! failure that stopped it.

use std::path::Path;

use serde_json::{json, Value};

use deligne::{
    adjunction_transport_check, deligne_localize, gv_functor, hom_bifunctor_check,
    universal_property_probe, Hand, ProbeMode, ProbeTarget,
};
use fincat::{
    validate_structure, Budget, Category, CategoryData, Fixture, FunctorData, FunctorInput,
    TieBreak, Violation, MAIN,
};
use indpro::{ind_hom, IndObject};
use multsys::{
    cross_check_formulas, localized_hom, materialize_localization, validate_mult_system,
    LocalizedCategory, MorphismClass, Side, DEFAULT_BOUND,
};
use trider::amalgam::resolution_replacement;
use trider::{
    amalgamate_triangles, derived_hom, derived_hom_window, CoeffRing, Complex, FModule, Route,
    Triangle,
};

use crate::load::{parse_range, read_any, read_category_fixture, read_complex_fixture, AnyFixture};
use crate::report::{Failure, Law};

pub struct Ctx {
    pub budget: Budget,
    pub tb: TieBreak,
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub laws: Vec<Law>,
    pub result: Value,
    pub warnings: Vec<String>,
}

pub type Res = Result<Outcome, Failure>;

fn outcome(laws: Vec<Law>, result: Value) -> Res {
    Ok(Outcome {
        laws,
        result,
        warnings: Vec::new(),
    })
}

/// Reserved class name for the identities of whichever category is in play.
pub const IDENTITIES: &str = "identities";

fn category(fx: &Fixture, name: &str) -> Result<Category, Failure> {
    fx.category(name).map_err(|w| Failure::Axiom {
        message: format!("category '{name}' is invalid"),
        witnesses: w,
    })
}

fn object(c: &Category, name: &str) -> Result<usize, Failure> {
    c.obj(name)
        .ok_or_else(|| Failure::parse(format!("unknown object '{name}'"), None))
}

/// Resolve a class by name. Without an explicit side, the side is read off
/// the axioms: bilateral if both hold, else whichever holds.
fn class(fx: &Fixture, c: &Category, name: &str, side: Option<Side>) -> Result<MorphismClass, Failure> {
    let mut s = named_class(fx, c, name)?;
    s.side = match side {
        Some(side) => side,
        None => {
            let rep = validate_mult_system(c, &s);
            match (rep.right_ok(), rep.left_ok()) {
                (true, false) => Side::Right,
                (false, true) => Side::Left,
                _ => Side::Bilateral,
            }
        }
    };
    Ok(s)
}

fn named_class(fx: &Fixture, c: &Category, name: &str) -> Result<MorphismClass, Failure> {
    if name == IDENTITIES && !fx.classes.contains_key(name) {
        return Ok(MorphismClass::identities(c));
    }
    if !fx.classes.contains_key(name) {
        return Err(Failure::parse(
            format!("unknown class '{name}'"),
            Some(format!("classes.{name}")),
        ));
    }
    let ids = fx.class(c, name).map_err(|w| Failure::Axiom {
        message: format!("class '{name}' names morphisms outside the category"),
        witnesses: w,
    })?;
    Ok(MorphismClass::new(c, &ids, Side::Bilateral))
}

fn functor(fx: &Fixture, name: &str) -> Result<(fincat::Functor, Category, Category), Failure> {
    if !fx.functors.contains_key(name) {
        return Err(Failure::parse(
            format!("unknown functor '{name}'"),
            Some(format!("functors.{name}")),
        ));
    }
    fx.functor(name).map_err(|w| Failure::Axiom {
        message: format!("functor '{name}' is invalid"),
        witnesses: w,
    })
}

fn names(c: &Category, ms: impl IntoIterator<Item = usize>) -> Vec<String> {
    ms.into_iter().map(|m| c.mor_name(m).to_string()).collect()
}

fn witnesses_for(w: &[Violation], law: &str) -> Vec<Violation> {
    w.iter().filter(|v| v.law == law).cloned().collect()
}

pub fn validate(path: &Path) -> Res {
    match read_any(path)? {
        AnyFixture::Category(fx) => {
            let mut laws = Vec::new();
            let datas: Vec<(String, CategoryData)> =
                std::iter::once((MAIN.to_string(), fx.main_data()))
                    .chain(fx.categories.iter().map(|(k, v)| (k.clone(), v.clone())))
                    .collect();
            let data_of = |n: &str| datas.iter().find(|(k, _)| k == n).map(|(_, d)| d);
            for (name, d) in &datas {
                let inputs: Vec<FunctorInput<'_>> = fx
                    .functors
                    .iter()
                    .filter(|(_, f)| f.source == *name)
                    .map(|(fname, f)| FunctorInput {
                        name: fname,
                        data: f,
                        source: d,
                        target: data_of(&f.target).expect("targets checked on load"),
                    })
                    .collect();
                let rep = validate_structure(d, &inputs);
                laws.push(Law::axiom(
                    format!("category:{name}"),
                    rep.category.is_empty(),
                    rep.category,
                ));
                for (fname, w) in rep.functors {
                    laws.push(Law::axiom(format!("functor:{fname}"), w.is_empty(), w));
                }
            }
            let main = fx.category(MAIN).ok();
            if let Some(c) = &main {
                for cl in fx.classes.keys() {
                    let w = fx.class(c, cl).err().unwrap_or_default();
                    laws.push(Law::axiom(format!("class:{cl}"), w.is_empty(), w));
                }
            }
            for (dname, d) in &fx.diagrams {
                let w = match fx.category(&d.body.target) {
                    Ok(t) => IndObject::from_data(&t, d).err().unwrap_or_default(),
                    Err(w) => w,
                };
                laws.push(Law::axiom(format!("diagram:{dname}"), w.is_empty(), w));
            }
            laws.sort_by(|a, b| a.law.cmp(&b.law));
            let result = json!({
                "kind": "category",
                "objects": fx.objects.len(),
                "morphisms": fx.morphisms.len(),
                "categories": fx.categories.keys().collect::<Vec<_>>(),
                "classes": fx.classes.keys().collect::<Vec<_>>(),
                "functors": fx.functors.keys().collect::<Vec<_>>(),
                "diagrams": fx.diagrams.keys().collect::<Vec<_>>(),
            });
            outcome(laws, result)
        }
        AnyFixture::Complexes(fx) => {
            let mut laws = Vec::new();
            let mut cohomology = serde_json::Map::new();
            for name in fx.complexes.keys() {
                match fx.complex(name) {
                    Ok(x) => {
                        laws.push(Law::axiom(format!("complex:{name}"), true, vec![]));
                        let h: serde_json::Map<String, Value> = x
                            .cohomology()
                            .iter()
                            .map(|(p, m)| (p.to_string(), json!(m.orders(&x.ring))))
                            .collect();
                        cohomology.insert(name.clone(), Value::Object(h));
                    }
                    Err(e) => laws.push(Law::axiom(
                        format!("complex:{name}"),
                        false,
                        vec![Violation::new("complex", vec![e.to_string()])],
                    )),
                }
            }
            for name in fx.maps.keys() {
                let w = match fx.map(name) {
                    Ok(_) => vec![],
                    Err(e) => vec![Violation::new("chain-map", vec![e.to_string()])],
                };
                laws.push(Law::axiom(format!("map:{name}"), w.is_empty(), w));
            }
            outcome(
                laws,
                json!({ "kind": "complexes", "cohomology": cohomology }),
            )
        }
    }
}

pub fn check_system(path: &Path, class_name: &str, side: Option<Side>) -> Res {
    let fx = read_category_fixture(path)?;
    let c = category(&fx, MAIN)?;
    let s = class(&fx, &c, class_name, side)?;
    let side = s.side;
    let rep = validate_mult_system(&c, &s);
    let mut laws = vec![
        Law::axiom("S1", rep.s1, witnesses_for(&rep.witnesses, "S1")),
        Law::axiom("S2", rep.s2, witnesses_for(&rep.witnesses, "S2")),
    ];
    if side.has_right() {
        laws.push(Law::axiom(
            "right-S3",
            rep.right_s3,
            witnesses_for(&rep.witnesses, "right-S3"),
        ));
        laws.push(Law::axiom(
            "right-S4",
            rep.right_s4,
            witnesses_for(&rep.witnesses, "right-S4"),
        ));
        laws.push(Law::axiom(
            "right-quasi-saturation",
            rep.right_quasi_saturated,
            witnesses_for(&rep.witnesses, "right-quasi-saturation"),
        ));
    }
    if side.has_left() {
        laws.push(Law::axiom(
            "left-S3",
            rep.left_s3,
            witnesses_for(&rep.witnesses, "left-S3"),
        ));
        laws.push(Law::axiom(
            "left-S4",
            rep.left_s4,
            witnesses_for(&rep.witnesses, "left-S4"),
        ));
        laws.push(Law::axiom(
            "left-quasi-saturation",
            rep.left_quasi_saturated,
            witnesses_for(&rep.witnesses, "left-quasi-saturation"),
        ));
    }
    let result = json!({
        "class": class_name,
        "side": side,
        "members": names(&c, s.list()),
        "right_system": rep.right_ok(),
        "left_system": rep.left_ok(),
        "saturated": rep.saturated,
    });
    outcome(laws, result)
}

pub fn hom(path: &Path, class_name: &str, x: &str, y: &str, formula: Side, side: Option<Side>) -> Res {
    let fx = read_category_fixture(path)?;
    let c = category(&fx, MAIN)?;
    let s = class(&fx, &c, class_name, side)?;
    let (xi, yi) = (object(&c, x)?, object(&c, y)?);
    let h = localized_hom(&c, &s, xi, yi, formula)?;
    let result = json!({
        "x": x,
        "y": y,
        "formula": formula,
        "size": h.len(),
        "classes": h.tokens(&c),
    });
    outcome(vec![], result)
}

fn localized_json(c: &Category, l: &LocalizedCategory) -> Value {
    let cat = &l.cat;
    let homs: Vec<Value> = cat
        .objects()
        .flat_map(|a| cat.objects().map(move |b| (a, b)))
        .map(|(a, b)| json!([cat.obj_name(a), cat.obj_name(b), cat.hom(a, b).len()]))
        .collect();
    json!({
        "side": l.side,
        "objects": cat.obj_names(),
        "morphisms": cat.num_morphisms(),
        "hom_sizes": homs,
        "q_objects": c.objects().map(|x| cat.obj_name(l.q.obj[x]).to_string()).collect::<Vec<_>>(),
        "q_morphisms": c.morphisms().map(|m| cat.mor_name(l.q.mor[m]).to_string()).collect::<Vec<_>>(),
    })
}

pub fn localize(path: &Path, class_name: &str, side: Option<Side>, out: Option<&Path>, ctx: &Ctx) -> Res {
    let fx = read_category_fixture(path)?;
    let c = category(&fx, MAIN)?;
    let s = class(&fx, &c, class_name, side)?;
    let side = s.side;
    let l = materialize_localization(&c, &s, ctx.tb, DEFAULT_BOUND)?;
    let mut laws = Vec::new();
    let rep = validate_mult_system(&c, &s);
    if side == Side::Bilateral && rep.right_ok() && rep.left_ok() {
        let cross = cross_check_formulas(&c, &s)?;
        laws.push(Law::check("formulas-agree", cross.agree, cross.witnesses));
    }
    let inverted: Vec<usize> = s
        .list()
        .into_iter()
        .filter(|&m| l.cat.inverse(l.q.mor[m]).is_none())
        .collect();
    laws.push(Law::check(
        "class-inverted",
        inverted.is_empty(),
        inverted
            .iter()
            .map(|&m| Violation::new("not-inverted", vec![c.mor_name(m).to_string()]))
            .collect(),
    ));
    if let Some(out) = out {
        let d = CategoryData::from_category(&l.cat);
        let mut categories = std::collections::BTreeMap::new();
        categories.insert("source".to_string(), CategoryData::from_category(&c));
        let mut functors = std::collections::BTreeMap::new();
        functors.insert(
            "q".to_string(),
            FunctorData::from_functor(&l.q, &c, &l.cat, ("source", MAIN)),
        );
        let written = Fixture {
            schema_version: fincat::SCHEMA_VERSION,
            objects: d.objects,
            morphisms: d.morphisms,
            compose: d.compose,
            identities: d.identities,
            classes: Default::default(),
            categories,
            functors,
            diagrams: Default::default(),
        };
        let text = serde_json::to_string_pretty(&written).expect("fixture serializes") + "\n";
        std::fs::write(out, text)
            .map_err(|e| Failure::parse(format!("cannot write {}: {e}", out.display()), None))?;
    }
    outcome(laws, localized_json(&c, &l))
}

pub fn ind_hom_cmd(path: &Path, x: &str, y: &str, ctx: &Ctx) -> Res {
    let fx = read_category_fixture(path)?;
    let get = |n: &str| {
        fx.diagrams.get(n).ok_or_else(|| {
            Failure::parse(
                format!("unknown diagram '{n}'"),
                Some(format!("diagrams.{n}")),
            )
        })
    };
    let (dx, dy) = (get(x)?, get(y)?);
    if dx.body.target != dy.body.target {
        return Err(Failure::axiom("diagrams land in different categories"));
    }
    if dx.variance != dy.variance {
        return Err(Failure::axiom("diagrams have different variances"));
    }
    let c = category(&fx, &dx.body.target)?;
    let fo = IndObject::from_data(&c, dx)?;
    let go = IndObject::from_data(&c, dy)?;
    let h = ind_hom(&c, &fo, &go, &ctx.budget)?;
    let elements: Vec<Vec<(String, String)>> = h
        .elements
        .iter()
        .map(|m| {
            m.comps
                .iter()
                .map(|&(j, mor)| (dy.index.objects[j].clone(), c.mor_name(mor).to_string()))
                .collect()
        })
        .collect();
    outcome(
        vec![],
        json!({ "x": x, "y": y, "variance": dx.variance, "size": h.len(), "elements": elements }),
    )
}

#[allow(clippy::too_many_arguments)]
pub fn deligne_cmd(
    path: &Path,
    fname: &str,
    system: &str,
    system_target: &str,
    obj: Option<&str>,
    hand: Hand,
    ctx: &Ctx,
) -> Res {
    let fx = read_category_fixture(path)?;
    let (f, c, c2) = functor(&fx, fname)?;
    let s = class(&fx, &c, system, None)?;
    let s2 = class(&fx, &c2, system_target, None)?;
    let target = materialize_localization(&c2, &s2, ctx.tb, DEFAULT_BOUND)?;
    let xs: Vec<usize> = match obj {
        Some(o) => vec![object(&c, o)?],
        None => c.objects().collect(),
    };
    let t = &target.cat;
    let mut rows = Vec::new();
    let mut results = Vec::new();
    for &x in &xs {
        let d = deligne_localize(&c, &s, &f, &target, x, hand, ctx.tb, &ctx.budget)?;
        rows.push(json!({
            "object": c.obj_name(x),
            "diagram": d.ind.index.objects().map(|i| t.obj_name(d.ind.value(i)).to_string()).collect::<Vec<_>>(),
            "inert_for_f": d.inert_for_f,
            "gv": d.gv.as_ref().map(|g| t.obj_name(g.object).to_string()),
        }));
        results.push(d);
    }
    let mut result = json!({ "functor": fname, "hand": hand, "objects": rows });
    if obj.is_none() {
        let source = materialize_localization(&c, &s, ctx.tb, DEFAULT_BOUND)?;
        let gv = gv_functor(&c, &s, &f, &source, &target, &results, hand, ctx.tb)?;
        result["gv_functor"] = match gv {
            Some(g) => json!(source
                .cat
                .objects()
                .map(|x| t.obj_name(g.obj[x]).to_string())
                .collect::<Vec<_>>()),
            None => Value::Null,
        };
    }
    outcome(vec![], result)
}

#[allow(clippy::too_many_arguments)]
pub fn probe_universal(
    path: &Path,
    system: &str,
    mode: crate::args::ModeArg,
    fname: Option<&str>,
    system_target: Option<&str>,
    target_spec: &str,
    ctx: &Ctx,
) -> Res {
    use crate::args::ModeArg;
    let fx = read_category_fixture(path)?;
    let c = category(&fx, MAIN)?;
    let s = class(&fx, &c, system, None)?;
    let source = materialize_localization(&c, &s, ctx.tb, DEFAULT_BOUND)?;
    let needs = |what: &str| Failure::parse(format!("--{what} is required in this mode"), None);
    let loaded = match mode {
        ModeArg::Localizing => None,
        _ => {
            let (f, fc, c2) = functor(&fx, fname.ok_or_else(|| needs("functor"))?)?;
            if fc != c {
                return Err(Failure::axiom(
                    "the functor must start at the main category",
                ));
            }
            let s2 = class(
                &fx,
                &c2,
                system_target.ok_or_else(|| needs("system-target"))?,
                None,
            )?;
            let target = materialize_localization(&c2, &s2, ctx.tb, DEFAULT_BOUND)?;
            Some((f, target))
        }
    };
    let pm = match (&mode, &loaded) {
        (ModeArg::Localizing, _) => ProbeMode::Localizing,
        (ModeArg::Deligne, Some((f, t))) => ProbeMode::Deligne { f, target: t },
        (ModeArg::Gv, Some((f, t))) => ProbeMode::Gv { f, target: t },
        _ => unreachable!("functor loaded for the non-localizing modes"),
    };
    let tcat = loaded.as_ref().map(|(_, t)| &t.cat).unwrap_or(&c);
    let g = if target_spec == "identity" {
        ProbeTarget::Identity
    } else if let Some(o) = target_spec.strip_prefix("const:") {
        ProbeTarget::Constant(object(tcat, o)?)
    } else {
        return Err(Failure::parse(
            format!("--target must be 'identity' or 'const:<object>', got '{target_spec}'"),
            None,
        ));
    };
    let r = universal_property_probe(&c, &s, &source, pm, &g, ctx.tb, &ctx.budget)?;
    let pass = if r.applicable {
        r.bijective
    } else {
        r.witnesses.is_empty()
    };
    let laws = vec![Law::check("universal-bijection", pass, r.witnesses.clone())];
    outcome(laws, serde_json::to_value(&r).expect("serializes"))
}

pub fn check_adjunction(
    path: &Path,
    left: &str,
    right: &str,
    system: &str,
    system_target: &str,
    ctx: &Ctx,
) -> Res {
    let fx = read_category_fixture(path)?;
    let (f, c, c2) = functor(&fx, left)?;
    let (g, gs, gt) = functor(&fx, right)?;
    if gs != c2 || gt != c {
        return Err(Failure::axiom(format!(
            "'{right}' does not run opposite to '{left}'"
        )));
    }
    let s = class(&fx, &c, system, None)?;
    let s2 = class(&fx, &c2, system_target, None)?;
    let r = adjunction_transport_check(&c, &s, &c2, &s2, &f, &g, ctx.tb, &ctx.budget)?;
    let laws = vec![Law::check(
        "adjunction-transport",
        r.ok,
        r.witnesses.clone(),
    )];
    outcome(laws, serde_json::to_value(&r).expect("serializes"))
}

pub fn hom_bifunctor(
    path: &Path,
    system: &str,
    x: Option<&str>,
    y: Option<&str>,
    ctx: &Ctx,
) -> Res {
    let fx = read_category_fixture(path)?;
    let c = category(&fx, MAIN)?;
    let s = class(&fx, &c, system, None)?;
    let pick = |o: Option<&str>| -> Result<Vec<usize>, Failure> {
        match o {
            Some(n) => Ok(vec![object(&c, n)?]),
            None => Ok(c.objects().collect()),
        }
    };
    let (xs, ys) = (pick(x)?, pick(y)?);
    let mut laws = Vec::new();
    let mut rows = Vec::new();
    for &a in &xs {
        for &b in &ys {
            let r = hom_bifunctor_check(&c, &s, a, b, ctx.tb, &ctx.budget)?;
            laws.push(Law::check(
                format!("hom-bifunctor({},{})", c.obj_name(a), c.obj_name(b)),
                r.ok,
                if r.ok {
                    vec![]
                } else {
                    vec![Violation::new(
                        "hom-mismatch",
                        vec![r.colimit.to_string(), r.localized.to_string()],
                    )]
                },
            ));
            rows.push(serde_json::to_value(&r).expect("serializes"));
        }
    }
    outcome(laws, json!({ "pairs": rows }))
}

/// Both routes at each degree, with route agreement and window independence as laws.
fn derived_table(x: &Complex, y: &Complex, ns: &[i32], ctx: &Ctx) -> Res {
    let r = x.ring;
    let mut laws = Vec::new();
    let mut rows = Vec::new();
    for &n in ns {
        ctx.budget.tick()?;
        let inj = derived_hom(x, y, n, Route::Injective)?;
        let proj = derived_hom(x, y, n, Route::Projective)?;
        let (a, b) = (inj.module.normalized(), proj.module.normalized());
        laws.push(Law::check(
            format!("routes-agree n={n}"),
            a == b,
            if a == b {
                vec![]
            } else {
                vec![Violation::new(
                    "route-mismatch",
                    vec![format!("{:?}", a.orders(&r)), format!("{:?}", b.orders(&r))],
                )]
            },
        ));
        let mut drift = Vec::new();
        for extra in 1..=3 {
            for (route, base) in [(Route::Injective, &a), (Route::Projective, &b)] {
                ctx.budget.tick()?;
                let m = derived_hom_window(x, y, n, route, extra)?
                    .module
                    .normalized();
                if &m != base {
                    drift.push(Violation::new(
                        "window-drift",
                        vec![
                            format!("{route:?}"),
                            format!("+{extra}"),
                            format!("{:?}", m.orders(&r)),
                        ],
                    ));
                }
            }
        }
        laws.push(Law::check(
            format!("window-independent n={n}"),
            drift.is_empty(),
            drift,
        ));
        rows.push(json!({
            "n": n,
            "orders": a.orders(&r),
            "cardinality": a.cardinality(&r).to_string(),
            "projective_orders": b.orders(&r),
        }));
    }
    outcome(laws, json!({ "ring": r.name(), "table": rows }))
}

pub fn ext(ring: &str, src: &str, tgt: &str, n: &str, ctx: &Ctx) -> Res {
    let r =
        CoeffRing::parse(ring).map_err(|e| Failure::parse(e.to_string(), Some("--ring".into())))?;
    let m = FModule::parse(&r, src).map_err(|e| Failure::parse(e, Some("--src".into())))?;
    let nm = FModule::parse(&r, tgt).map_err(|e| Failure::parse(e, Some("--tgt".into())))?;
    let ns = parse_range(n).map_err(|e| Failure::parse(e, Some("--n".into())))?;
    let mut out = derived_table(
        &Complex::single(r, m, 0),
        &Complex::single(r, nm, 0),
        &ns,
        ctx,
    )?;
    out.result["src"] = json!(src);
    out.result["tgt"] = json!(tgt);
    Ok(out)
}

pub fn derived_hom_cmd(path: &Path, x: &str, y: &str, n: &str, ctx: &Ctx) -> Res {
    let fx = read_complex_fixture(path)?;
    let ns = parse_range(n).map_err(|e| Failure::parse(e, Some("--n".into())))?;
    let (cx, cy) = (fx.complex(x)?, fx.complex(y)?);
    if cx.ring != cy.ring {
        return Err(Failure::axiom("complexes over different rings"));
    }
    let mut out = derived_table(&cx, &cy, &ns, ctx)?;
    out.result["x"] = json!(x);
    out.result["y"] = json!(y);
    Ok(out)
}

pub fn amalgamate(path: &Path, map: &str, windows: &[i32]) -> Res {
    let fx = read_complex_fixture(path)?;
    let [w1, w2] = windows else {
        return Err(Failure::parse(
            "--windows takes exactly two values",
            Some("--windows".into()),
        ));
    };
    let (f, x, y) = fx.map(map)?;
    let t = Triangle::build(&x, &y, &f)?;
    let (t1, s1) = resolution_replacement(&t, *w1)?;
    let (t2, s2) = resolution_replacement(&t, *w2)?;
    let a = amalgamate_triangles(&t, &t1, &s1, &t2, &s2)?;
    let laws: Vec<Law> = a
        .assertions
        .iter()
        .map(|s| Law::check(s.what.clone(), s.holds, vec![]))
        .collect();
    let degrees = |c: &Complex| json!([c.lo, c.hi()]);
    let result = json!({
        "map": map,
        "windows": [w1, w2],
        "ok": a.ok,
        "assertions": a.assertions.len(),
        "amalgam_degrees": { "x": degrees(&a.triangle.x), "y": degrees(&a.triangle.y), "z": degrees(&a.triangle.z) },
    });
    outcome(laws, result)
}
