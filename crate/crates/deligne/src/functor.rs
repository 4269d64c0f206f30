use fincat::{Budget, Category, Functor, TieBreak, Violation};
use indpro::{canonicalize, compose, essentially_constant, inverse, EssConst, IndMorphism, IndObject};
use multsys::{Fraction, LocalizedCategory, MorphismClass};

use crate::localize::{fraction_action, localizing_object};
use crate::{require_side, DeligneError, Hand};

/// A Grothendieck–Verdier value: the representative and the isomorphism
/// `ρ(X)` (or `λ(X)`) from the diagram to the constant object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gv {
    pub object: usize,
    pub rho: IndMorphism,
    pub rho_inv: IndMorphism,
}

/// `r_{S,S'}(F)(X)` (or `l_{S,S'}(F)(X)`) in the materialized target localization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeligneResult {
    pub x: usize,
    pub hand: Hand,
    pub ind: IndObject,
    /// `δ_{S,S'}(F)(X): i'Q'F(X) -> ind`, or `σ_{S,S'}(F)(X): ind -> i'Q'F(X)`.
    pub delta: IndMorphism,
    pub inert_for_f: bool,
    pub gv: Option<Gv>,
}

/// Image of a morphism of diagrams under a functor of the ambient category.
pub fn push_morphism(t: &Category, src: &IndObject, tgt: &IndObject, m: &IndMorphism, p: &Functor) -> Option<IndMorphism> {
    let comps: Vec<(usize, usize)> = m.comps.iter().map(|&(j, g)| (j, p.mor[g])).collect();
    canonicalize(t, src, tgt, &comps)
}

fn constant_map(m: usize) -> IndMorphism {
    IndMorphism { comps: vec![(0, m)] }
}

/// Move the representative to the least-named object of its isomorphism class.
pub(crate) fn least_representative(t: &Category, ind: &IndObject, e: EssConst) -> Gv {
    let l = e.representative;
    let best = t
        .objects()
        .filter(|&y| t.isomorphic(l, y))
        .min_by(|&a, &b| t.obj_name(a).cmp(t.obj_name(b)))
        .unwrap_or(l);
    if best == l {
        return Gv {
            object: l,
            rho: e.to_const,
            rho_inv: e.from_const,
        };
    }
    let i = *t.hom(l, best).iter().find(|&&m| t.is_iso(m)).expect("isomorphic objects");
    let j = t.inverse(i).unwrap();
    let cb = IndObject::constant(t, best, ind.variance);
    Gv {
        object: best,
        rho: compose(t, ind, &cb, &e.to_const, &constant_map(i)),
        rho_inv: compose(t, &cb, ind, &constant_map(j), &e.from_const),
    }
}

/// Push the localizing object at `x` through `Q'∘F` into `target`, decide
/// inertness for `F`, and extract the Grothendieck–Verdier value when the
/// result is essentially constant.
#[allow(clippy::too_many_arguments)]
pub fn deligne_localize(
    c: &Category,
    s: &MorphismClass,
    f: &Functor,
    target: &LocalizedCategory,
    x: usize,
    hand: Hand,
    tb: TieBreak,
    budget: &Budget,
) -> Result<DeligneResult, DeligneError> {
    require_side(c, s, hand)?;
    let (slice, loc) = localizing_object(c, s, x, hand)?;
    let p = f.then(&target.q);
    let t = &target.cat;
    let ind = loc.push(&p);
    let px = p.obj[x];
    let cst = IndObject::constant(t, px, ind.variance);
    let i0 = slice.object_of(c.id(x)).unwrap();
    let delta = match hand {
        Hand::Right => canonicalize(t, &cst, &ind, &[(i0, t.id(px))]),
        Hand::Left => canonicalize(t, &ind, &cst, &[(i0, t.id(px))]),
    }
    .expect("identity is an element of the colimit");
    let inert_for_f = match hand {
        Hand::Right => inverse(t, &cst, &ind, &delta, budget)?,
        Hand::Left => inverse(t, &ind, &cst, &delta, budget)?,
    }
    .is_some();
    let gv = essentially_constant(t, &ind, tb, budget)?.map(|e| least_representative(t, &ind, e));
    Ok(DeligneResult {
        x,
        hand,
        ind,
        delta,
        inert_for_f,
        gv,
    })
}

/// The Deligne localized functor on a morphism of `C_S`, as a morphism of
/// pushed diagrams.
#[allow(clippy::too_many_arguments)]
pub(crate) fn deligne_morphism(
    c: &Category,
    s: &MorphismClass,
    p: &Functor,
    t: &Category,
    hand: Hand,
    fr: &Fraction,
    dx: &IndObject,
    dy: &IndObject,
    tb: TieBreak,
) -> Result<IndMorphism, DeligneError> {
    let m = fraction_action(c, s, hand, fr, tb)?;
    push_morphism(t, dx, dy, &m, p)
        .ok_or_else(|| DeligneError::Invalid(vec![Violation::new("push-outside-colimit", vec![fr.token(c)])]))
}

/// `R_{S,S'}(F)` (or `L_{S,S'}(F)`) as a functor `C_S -> C'_{S'}`, when every
/// object has a Grothendieck–Verdier value: `R(m) = ρ_Y ∘ r(F)(m) ∘ ρ_X⁻¹`.
#[allow(clippy::too_many_arguments)]
pub fn gv_functor(
    c: &Category,
    s: &MorphismClass,
    f: &Functor,
    source: &LocalizedCategory,
    target: &LocalizedCategory,
    results: &[DeligneResult],
    hand: Hand,
    tb: TieBreak,
) -> Result<Option<Functor>, DeligneError> {
    let Some(gvs) = results.iter().map(|r| r.gv.as_ref()).collect::<Option<Vec<&Gv>>>() else {
        return Ok(None);
    };
    let t = &target.cat;
    let p = f.then(&target.q);
    let cs = &source.cat;
    let mut mor = Vec::with_capacity(cs.num_morphisms());
    for m in cs.morphisms() {
        let (x, y) = (cs.src(m), cs.tgt(m));
        let d = deligne_morphism(c, s, &p, t, hand, &source.fraction[m], &results[x].ind, &results[y].ind, tb)?;
        let variance = results[x].ind.variance;
        let cx = IndObject::constant(t, gvs[x].object, variance);
        let cy = IndObject::constant(t, gvs[y].object, variance);
        let a = compose(t, &cx, &results[y].ind, &gvs[x].rho_inv, &d);
        let b = compose(t, &cx, &cy, &a, &gvs[y].rho);
        mor.push(b.comps[0].1);
    }
    let g = Functor {
        obj: gvs.iter().map(|v| v.object).collect(),
        mor,
    };
    let v = g.violations(cs, t);
    if v.is_empty() {
        Ok(Some(g))
    } else {
        Err(DeligneError::Invalid(v))
    }
}
