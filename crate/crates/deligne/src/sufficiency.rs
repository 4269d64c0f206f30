//! Existence conditions for localized functors relative to a subset of objects.

use serde::Serialize;

use fincat::{Budget, Builder, Category, Functor, TieBreak, Violation};
use indpro::is_cofinal;
use multsys::{materialize_localization, validate_mult_system, MorphismClass, DEFAULT_BOUND};

use crate::functor::deligne_localize;
use crate::localize::{localize_object, localizing_object};
use crate::{require_side, DeligneError, Hand};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub holds: bool,
    /// First counterexample, as object or morphism names.
    pub witnesses: Vec<String>,
}

impl Condition {
    fn from(w: Option<Vec<String>>) -> Self {
        match w {
            None => Condition {
                holds: true,
                witnesses: vec![],
            },
            Some(w) => Condition {
                holds: false,
                witnesses: w,
            },
        }
    }
}

/// What the conditions predict for one object, next to what the engine finds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObjectConsequence {
    pub x: String,
    /// `None` when no condition makes a prediction.
    pub predicted_inert: Option<bool>,
    pub predicted_localizable: Option<bool>,
    /// Some `X'` in B with an S-arrow to or from `x`.
    pub predicted_value: Option<String>,
    pub inert: bool,
    pub localizable: bool,
    pub value: Option<String>,
    /// Under (i), the diagram restricted to B-objects is cofinal.
    pub restriction_cofinal: Option<bool>,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuffReport {
    pub hand: Hand,
    pub b: Vec<String>,
    pub saturated: Option<bool>,
    pub i: Condition,
    pub ii: Condition,
    pub iii: Condition,
    pub ii_f: Option<Condition>,
    pub iii_f: Option<Condition>,
    /// (ii) ⇒ (iii), and (ii(F)) ⇒ (iii(F)).
    pub implications_hold: bool,
    pub consequences: Vec<ObjectConsequence>,
    /// The same for the functor, with values in the target localization.
    pub functor_consequences: Vec<ObjectConsequence>,
    pub ok: bool,
}

/// Functor data for the relative conditions.
pub struct Relative<'a> {
    pub f: &'a Functor,
    pub target: &'a Category,
    pub s2: &'a MorphismClass,
}

fn full_subcategory(c: &Category, keep: &[bool]) -> Result<(Category, Functor), DeligneError> {
    let mut b = Builder::new();
    let objs: Vec<usize> = c.objects().filter(|&x| keep[x]).collect();
    let mut bid = vec![usize::MAX; c.num_objects()];
    for &x in &objs {
        bid[x] = b.object(c.obj_name(x).to_string());
    }
    let mut mid = vec![usize::MAX; c.num_morphisms()];
    for m in c.morphisms().filter(|&m| keep[c.src(m)] && keep[c.tgt(m)]) {
        mid[m] = b.morphism(c.mor_name(m).to_string(), bid[c.src(m)], bid[c.tgt(m)]);
    }
    for &x in &objs {
        b.identity(bid[x], mid[c.id(x)]);
    }
    for (g, f, gf) in c.table() {
        if mid[g] != usize::MAX && mid[f] != usize::MAX {
            b.compose(mid[g], mid[f], mid[gf]);
        }
    }
    let sub = b.build().map_err(DeligneError::Invalid)?;
    let incl = Functor {
        obj: sub.objects().map(|x| c.obj(sub.obj_name(x)).unwrap()).collect(),
        mor: sub.morphisms().map(|m| c.mor(sub.mor_name(m)).unwrap()).collect(),
    };
    Ok((sub, incl))
}

/// Evaluate (i), (ii), (iii) for `b`, and (ii(F)), (iii(F)) when a functor is
/// given, then compare their consequences with the computed localizations.
pub fn sufficiency_analysis(
    c: &Category,
    s: &MorphismClass,
    b: &[usize],
    rel: Option<Relative<'_>>,
    hand: Hand,
    tb: TieBreak,
    budget: &Budget,
) -> Result<SuffReport, DeligneError> {
    require_side(c, s, hand)?;
    let mut in_b = vec![false; c.num_objects()];
    for &x in b {
        if x >= c.num_objects() {
            return Err(DeligneError::Invalid(vec![Violation::new("unknown-object", vec![x.to_string()])]));
        }
        in_b[x] = true;
    }
    let name = |m: usize| c.mor_name(m).to_string();
    let sm: Vec<usize> = s.list();
    // (near, far): right S-arrows go x -> x', left ones x' -> x
    let ends = |m: usize| match hand {
        Hand::Right => (c.src(m), c.tgt(m)),
        Hand::Left => (c.tgt(m), c.src(m)),
    };
    let i = Condition::from(
        c.objects()
            .find(|&x| !sm.iter().any(|&m| ends(m).0 == x && in_b[ends(m).1]))
            .map(|x| vec![c.obj_name(x).to_string()]),
    );
    let ii = Condition::from(
        sm.iter()
            .find(|&&m| in_b[other_end(c, m, hand)] && !c.is_iso(m))
            .map(|&m| vec![name(m)]),
    );
    let iii = Condition::from(
        sm.iter()
            .find(|&&m| in_b[c.src(m)] && in_b[c.tgt(m)] && !c.is_iso(m))
            .map(|&m| vec![name(m)]),
    );
    let (ii_f, iii_f) = match &rel {
        Some(r) => (
            Some(Condition::from(
                sm.iter().find(|&&m| in_b[other_end(c, m, hand)] && !r.s2.contains(r.f.mor[m])).map(|&m| vec![name(m)]),
            )),
            Some(Condition::from(
                sm.iter()
                    .find(|&&m| in_b[c.src(m)] && in_b[c.tgt(m)] && !r.s2.contains(r.f.mor[m]))
                    .map(|&m| vec![name(m)]),
            )),
        ),
        None => (None, None),
    };
    let implications_hold = (!ii.holds || iii.holds)
        && match (&ii_f, &iii_f) {
            (Some(a), Some(b2)) => !a.holds || b2.holds,
            _ => true,
        };

    // an S-arrow from x to a B-object (right) or into x from one (left)
    let to_b = |x: usize| sm.iter().copied().find(|&m| ends(m).0 == x && in_b[ends(m).1]);

    let mut consequences = Vec::new();
    for x in c.objects() {
        let lr = localize_object(c, s, x, hand, tb, budget)?;
        let cl = &lr.classification;
        let predicted_inert = if in_b[x] && iii.holds {
            Some(true)
        } else if i.holds && iii.holds {
            Some(b.iter().any(|&y| c.isomorphic(x, y)))
        } else {
            None
        };
        let predicted_localizable = (i.holds && iii.holds).then_some(true);
        let predicted = if i.holds && iii.holds { to_b(x).map(|m| ends(m).1) } else { None };
        let restriction_cofinal = if i.holds {
            let (slice, _) = localizing_object(c, s, x, hand)?;
            let keep: Vec<bool> = slice.member.iter().map(|&m| in_b[ends(m).1]).collect();
            let (sub, incl) = full_subcategory(&slice.cat, &keep)?;
            Some(match hand {
                Hand::Right => is_cofinal(&sub, &slice.cat, &incl),
                Hand::Left => is_cofinal(&sub.opposite(), &slice.cat.opposite(), &incl),
            })
        } else {
            None
        };
        let value_ok = match (predicted, cl.representative) {
            (Some(p), Some(r)) => c.isomorphic(p, r),
            (Some(_), None) => false,
            _ => true,
        };
        let agrees = predicted_inert.is_none_or(|p| p == cl.inert)
            && predicted_localizable.is_none_or(|p| p == cl.localizable)
            && value_ok
            && restriction_cofinal != Some(false);
        consequences.push(ObjectConsequence {
            x: c.obj_name(x).to_string(),
            predicted_inert,
            predicted_localizable,
            predicted_value: predicted.map(|p| c.obj_name(p).to_string()),
            inert: cl.inert,
            localizable: cl.localizable,
            value: cl.representative.map(|r| c.obj_name(r).to_string()),
            restriction_cofinal,
            agrees,
        });
    }

    let mut functor_consequences = Vec::new();
    if let (Some(r), Some(iii_f)) = (&rel, &iii_f) {
        let l2 = materialize_localization(r.target, r.s2, tb, DEFAULT_BOUND)?;
        let t = &l2.cat;
        for x in c.objects() {
            let d = deligne_localize(c, s, r.f, &l2, x, hand, tb, budget)?;
            let predicted_inert = (in_b[x] && iii_f.holds).then_some(true);
            let sufficient = i.holds && iii_f.holds;
            let predicted_localizable = sufficient.then_some(true);
            let predicted = if sufficient { to_b(x).map(|m| l2.q.obj[r.f.obj[ends(m).1]]) } else { None };
            let got = d.gv.as_ref().map(|g| g.object);
            let value_ok = match (predicted, got) {
                (Some(p), Some(g)) => t.isomorphic(p, g),
                (Some(_), None) => false,
                _ => true,
            };
            let agrees = predicted_inert.is_none_or(|p| p == d.inert_for_f)
                && predicted_localizable.is_none_or(|p| p == got.is_some())
                && value_ok;
            functor_consequences.push(ObjectConsequence {
                x: c.obj_name(x).to_string(),
                predicted_inert,
                predicted_localizable,
                predicted_value: predicted.map(|p| t.obj_name(p).to_string()),
                inert: d.inert_for_f,
                localizable: got.is_some(),
                value: got.map(|g| t.obj_name(g).to_string()),
                restriction_cofinal: None,
                agrees,
            });
        }
    }

    let ok = implications_hold
        && consequences.iter().all(|o| o.agrees)
        && functor_consequences.iter().all(|o| o.agrees);
    Ok(SuffReport {
        hand,
        b: b.iter().map(|&x| c.obj_name(x).to_string()).collect(),
        saturated: validate_mult_system(c, s).saturated,
        i,
        ii,
        iii,
        ii_f,
        iii_f,
        implications_hold,
        consequences,
        functor_consequences,
        ok,
    })
}

/// The end of an S-arrow that (ii) requires to lie in B: the source on the
/// right, the target on the left.
fn other_end(c: &Category, m: usize, hand: Hand) -> usize {
    match hand {
        Hand::Right => c.src(m),
        Hand::Left => c.tgt(m),
    }
}
