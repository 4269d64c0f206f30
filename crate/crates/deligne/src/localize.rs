use std::collections::BTreeMap;

use serde::Serialize;

use fincat::{coslice_category, slice_category, Budget, Category, Slice, TieBreak, Variance, Violation};
use indpro::{canonicalize, compose, essentially_constant, identity, ind_hom, inverse, EssConst, IndHomSet, IndMorphism, IndObject};
use multsys::{complete_left, complete_right, localized_hom, Fraction, HomSet, MorphismClass, Side};

use crate::{require_side, DeligneError, Hand};

/// `r'_S(X)` over `X/S`, or `l'_S(X)` over `S/X`, with its canonical morphism
/// to or from the constant object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizeResult {
    pub x: usize,
    pub hand: Hand,
    pub slice: Slice,
    pub ind: IndObject,
    /// `δ_S(X): i(X) -> r'_S(X)` on the right, `σ_S(X): l'_S(X) -> i(X)` on the left.
    pub delta: IndMorphism,
    pub ess: Option<EssConst>,
    pub classification: Classification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub inert: bool,
    pub localizable: bool,
    pub representative: Option<usize>,
    /// `X -> R_S(X)` (or `L_S(X) -> X`) is an isomorphism of C.
    pub canonical_iso: Option<bool>,
    /// inert exactly when localizable with `canonical_iso`.
    pub criterion_agrees: bool,
}

/// The diagram of `r'_S(X)` or `l'_S(X)`, unclassified.
pub fn localizing_object(
    c: &Category,
    s: &MorphismClass,
    x: usize,
    hand: Hand,
) -> Result<(Slice, IndObject), DeligneError> {
    let in_s = |m: usize| s.contains(m);
    let (slice, variance) = match hand {
        Hand::Right => (coslice_category(c, in_s, x), Variance::Ind),
        Hand::Left => (slice_category(c, in_s, x), Variance::Pro),
    };
    let ind = IndObject::new(c, slice.cat.clone(), slice.proj.clone(), variance).map_err(DeligneError::Invalid)?;
    Ok((slice, ind))
}

pub(crate) fn delta_of(c: &Category, slice: &Slice, ind: &IndObject, x: usize, hand: Hand) -> IndMorphism {
    let i = slice.object_of(c.id(x)).expect("identities lie in S");
    let cst = IndObject::constant(c, x, ind.variance);
    match hand {
        Hand::Right => canonicalize(c, &cst, ind, &[(i, c.id(x))]),
        Hand::Left => canonicalize(c, ind, &cst, &[(i, c.id(x))]),
    }
    .expect("identity is an element of the colimit")
}

/// Build the localizing object at `x` and decide inertness and localizability.
pub fn localize_object(
    c: &Category,
    s: &MorphismClass,
    x: usize,
    hand: Hand,
    tb: TieBreak,
    budget: &Budget,
) -> Result<LocalizeResult, DeligneError> {
    require_side(c, s, hand)?;
    let (slice, ind) = localizing_object(c, s, x, hand)?;
    let delta = delta_of(c, &slice, &ind, x, hand);
    let cst = IndObject::constant(c, x, ind.variance);
    let inert = match hand {
        Hand::Right => inverse(c, &cst, &ind, &delta, budget)?,
        Hand::Left => inverse(c, &ind, &cst, &delta, budget)?,
    }
    .is_some();
    let ess = essentially_constant(c, &ind, tb, budget)?;
    let at_id = slice.object_of(c.id(x)).unwrap();
    let canonical_iso = ess.as_ref().map(|e| c.is_iso(e.iota[at_id]));
    let localizable = ess.is_some();
    let classification = Classification {
        inert,
        localizable,
        representative: ess.as_ref().map(|e| e.representative),
        canonical_iso,
        criterion_agrees: inert == (localizable && canonical_iso == Some(true)),
    };
    Ok(LocalizeResult {
        x,
        hand,
        slice,
        ind,
        delta,
        ess,
        classification,
    })
}

/// `r'_S(f)` or `l'_S(f)`, and for `f` in S the inverse built by precomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismLocalization {
    pub f: usize,
    pub hand: Hand,
    pub morphism: IndMorphism,
    pub inverse: Option<IndMorphism>,
    /// Both composites with `inverse` are identities.
    pub inverse_verified: bool,
    /// The reversed tie-break picks other squares but yields the same morphism.
    pub choice_independent: bool,
}

type Loc = (Slice, IndObject);

fn action(c: &Category, s: &MorphismClass, f: usize, hand: Hand, tb: TieBreak, lx: &Loc, ly: &Loc) -> Result<IndMorphism, DeligneError> {
    let fail = |m: usize| DeligneError::CompletionNotFound(vec![c.mor_name(m).to_string(), c.mor_name(f).to_string()]);
    let comps = match hand {
        Hand::Right => lx
            .0
            .member
            .iter()
            .map(|&sa| {
                let (t, fp) = complete_right(c, s, sa, f, tb).ok_or_else(|| fail(sa))?;
                Ok((ly.0.object_of(t).unwrap(), fp))
            })
            .collect::<Result<Vec<_>, DeligneError>>()?,
        Hand::Left => ly
            .0
            .member
            .iter()
            .map(|&t| {
                let (sm, fp) = complete_left(c, s, t, f, tb).ok_or_else(|| fail(t))?;
                Ok((lx.0.object_of(sm).unwrap(), fp))
            })
            .collect::<Result<Vec<_>, DeligneError>>()?,
    };
    canonicalize(c, &lx.1, &ly.1, &comps).ok_or_else(|| fail(f))
}

fn inverse_of(c: &Category, f: usize, hand: Hand, lx: &Loc, ly: &Loc) -> Option<IndMorphism> {
    let comps = match hand {
        // component at t: Y -> Y' is t∘f
        Hand::Right => ly
            .0
            .member
            .iter()
            .map(|&t| Some((lx.0.object_of(c.comp(t, f))?, c.id(c.tgt(t)))))
            .collect::<Option<Vec<_>>>()?,
        Hand::Left => lx
            .0
            .member
            .iter()
            .map(|&sa| Some((ly.0.object_of(c.comp(f, sa))?, c.id(c.src(sa)))))
            .collect::<Option<Vec<_>>>()?,
    };
    canonicalize(c, &ly.1, &lx.1, &comps)
}

pub(crate) fn morphism_pieces(
    c: &Category,
    s: &MorphismClass,
    f: usize,
    hand: Hand,
    tb: TieBreak,
) -> Result<(Loc, Loc, IndMorphism, Option<IndMorphism>), DeligneError> {
    let lx = localizing_object(c, s, c.src(f), hand)?;
    let ly = localizing_object(c, s, c.tgt(f), hand)?;
    let m = action(c, s, f, hand, tb, &lx, &ly)?;
    let inv = if s.contains(f) { inverse_of(c, f, hand, &lx, &ly) } else { None };
    Ok((lx, ly, m, inv))
}

pub fn localize_morphism(
    c: &Category,
    s: &MorphismClass,
    f: usize,
    hand: Hand,
    tb: TieBreak,
) -> Result<MorphismLocalization, DeligneError> {
    require_side(c, s, hand)?;
    let (lx, ly, morphism, inv) = morphism_pieces(c, s, f, hand, tb)?;
    let other = action(c, s, f, hand, flip(tb), &lx, &ly)?;
    let inverse_verified = match &inv {
        Some(i) => {
            compose(c, &lx.1, &lx.1, &morphism, i) == identity(c, &lx.1)
                && compose(c, &ly.1, &ly.1, i, &morphism) == identity(c, &ly.1)
        }
        None => false,
    };
    Ok(MorphismLocalization {
        f,
        hand,
        choice_independent: other == morphism,
        morphism,
        inverse: inv,
        inverse_verified,
    })
}

pub(crate) fn flip(tb: TieBreak) -> TieBreak {
    match tb {
        TieBreak::Normal => TieBreak::Reversed,
        TieBreak::Reversed => TieBreak::Normal,
    }
}

/// The localizing functor on a morphism of `C_S` given by a fraction
/// `X <-s- X' -g-> Y' <-t- Y`: `r'(t)⁻¹ r'(g) r'(s)⁻¹`, or the same with `l'`.
pub fn fraction_action(
    c: &Category,
    s: &MorphismClass,
    hand: Hand,
    fr: &Fraction,
    tb: TieBreak,
) -> Result<IndMorphism, DeligneError> {
    let not_inv = |m: usize| DeligneError::Invalid(vec![Violation::new("fraction-leg-not-in-S", vec![c.mor_name(m).to_string()])]);
    let (_, ls_tgt, _, inv_s) = morphism_pieces(c, s, fr.s, hand, tb)?;
    let inv_s = inv_s.ok_or_else(|| not_inv(fr.s))?;
    let (_, _, mg, _) = morphism_pieces(c, s, fr.g, hand, tb)?;
    let (lt_src, lt_tgt, _, inv_t) = morphism_pieces(c, s, fr.t, hand, tb)?;
    let inv_t = inv_t.ok_or_else(|| not_inv(fr.t))?;
    // loc(X) -> loc(X') -> loc(Y') -> loc(Y)
    let a = compose(c, &ls_tgt.1, &lt_tgt.1, &inv_s, &mg);
    Ok(compose(c, &ls_tgt.1, &lt_src.1, &a, &inv_t))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndAdjPair {
    pub x: String,
    pub y: String,
    pub localized: usize,
    pub ind: usize,
    pub bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndAdjReport {
    pub hand: Hand,
    pub pairs: Vec<IndAdjPair>,
    pub natural: bool,
    pub ok: bool,
    pub witnesses: Vec<Violation>,
}

struct PairData {
    h: HomSet,
    i: IndHomSet,
    image: Vec<usize>,
}

/// `Hom_{C_S}(QX, Y) ≅ Hom_{Ind C}(iX, r_S Y)` on the sampled pairs `(X, Y)`, with
/// the bijection sending a fraction `(g, t)` to the class of `g` at `t`, and its
/// naturality in both variables. On the left, a pair `(X, Y)` stands for
/// `Hom_{C_S}(Y, QX) ≅ Hom_{Pro C}(l_S Y, iX)`.
pub fn ind_adjointness_check(
    c: &Category,
    s: &MorphismClass,
    hand: Hand,
    pairs: &[(usize, usize)],
    tb: TieBreak,
    budget: &Budget,
) -> Result<IndAdjReport, DeligneError> {
    require_side(c, s, hand)?;
    let mut r = match hand {
        Hand::Right => right_adjointness(c, s, pairs, tb, budget)?,
        Hand::Left => right_adjointness(&c.opposite(), &s.with_side(Side::Right), pairs, tb, budget)?,
    };
    r.hand = hand;
    Ok(r)
}

fn right_adjointness(
    c: &Category,
    s: &MorphismClass,
    pairs: &[(usize, usize)],
    tb: TieBreak,
    budget: &Budget,
) -> Result<IndAdjReport, DeligneError> {
    let mut witnesses = Vec::new();
    let locs: Vec<Loc> = c
        .objects()
        .map(|y| localizing_object(c, s, y, Hand::Right))
        .collect::<Result<_, _>>()?;
    let consts: Vec<IndObject> = c.objects().map(|x| IndObject::constant(c, x, Variance::Ind)).collect();
    let pair_name = |x: usize, y: usize| vec![c.obj_name(x).to_string(), c.obj_name(y).to_string()];

    let mut data: BTreeMap<(usize, usize), PairData> = BTreeMap::new();
    let mut out = Vec::new();
    for &(x, y) in pairs {
        let h = localized_hom(c, s, x, y, Side::Right)?;
        let i = ind_hom(c, &consts[x], &locs[y].1, budget)?;
        let mut image = Vec::new();
        let mut well_defined = true;
        for members in &h.members {
            let imgs: Vec<Option<usize>> = members
                .iter()
                .map(|fr| {
                    let j = locs[y].0.object_of(fr.t)?;
                    i.position(&canonicalize(c, &consts[x], &locs[y].1, &[(j, fr.g)])?)
                })
                .collect();
            well_defined &= imgs.iter().all(|e| e.is_some() && *e == imgs[0]);
            image.push(imgs[0].unwrap_or(usize::MAX));
        }
        let mut sorted = image.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let bijective = well_defined && sorted.len() == image.len() && image.len() == i.len();
        if !bijective {
            witnesses.push(Violation::new("ind-adjoint-bijection", pair_name(x, y)));
        }
        out.push(IndAdjPair {
            x: c.obj_name(x).to_string(),
            y: c.obj_name(y).to_string(),
            localized: h.len(),
            ind: i.len(),
            bijective,
        });
        data.insert((x, y), PairData { h, i, image });
    }

    let mut natural = witnesses.is_empty();
    if natural {
        'outer: for (&(x, y), d) in &data {
            // precomposition with u: x2 -> x
            for x2 in c.objects() {
                let Some(d2) = data.get(&(x2, y)) else { continue };
                for &u in c.hom(x2, x) {
                    budget.tick()?;
                    for (k, fr) in d.h.reps.iter().enumerate() {
                        let moved = Fraction {
                            s: c.id(x2),
                            g: c.comp(fr.g, u),
                            t: fr.t,
                        };
                        let lhs = d2.h.class_of(&moved).map(|k2| d2.image[k2]);
                        let (j, g) = d.i.elements[d.image[k]].comps[0];
                        let rhs = canonicalize(c, &consts[x2], &locs[y].1, &[(j, c.comp(g, u))]).and_then(|e| d2.i.position(&e));
                        if lhs.is_none() || lhs != rhs {
                            witnesses.push(Violation::new("ind-adjoint-naturality", vec![c.mor_name(u).to_string()]));
                            natural = false;
                            break 'outer;
                        }
                    }
                }
            }
            // postcomposition with f: y -> y2
            for y2 in c.objects() {
                let Some(d2) = data.get(&(x, y2)) else { continue };
                for &f in c.hom(y, y2) {
                    budget.tick()?;
                    let rf = action(c, s, f, Hand::Right, tb, &locs[y], &locs[y2])?;
                    for (k, fr) in d.h.reps.iter().enumerate() {
                        let (t2, fp) = complete_right(c, s, fr.t, f, tb)
                            .ok_or_else(|| DeligneError::CompletionNotFound(vec![c.mor_name(fr.t).to_string(), c.mor_name(f).to_string()]))?;
                        let moved = Fraction {
                            s: c.id(x),
                            g: c.comp(fp, fr.g),
                            t: t2,
                        };
                        let lhs = d2.h.class_of(&moved).map(|k2| d2.image[k2]);
                        let e = compose(c, &consts[x], &locs[y2].1, &d.i.elements[d.image[k]], &rf);
                        let rhs = d2.i.position(&e);
                        if lhs.is_none() || lhs != rhs {
                            witnesses.push(Violation::new("ind-adjoint-naturality", vec![c.mor_name(f).to_string()]));
                            natural = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    let ok = natural && out.iter().all(|p| p.bijective);
    Ok(IndAdjReport {
        hand: Hand::Right,
        pairs: out,
        natural,
        ok,
        witnesses,
    })
}
