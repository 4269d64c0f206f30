//! Adjunctions `F ⊣ G` carried to Deligne and Grothendieck–Verdier localized functors.

use serde::Serialize;

use fincat::{colimit_raw, coslice_category, slice_category, Budget, Category, Colimit, Functor, TieBreak, Variance, Violation};
use indpro::{generalized_adjunction_check, ind_hom, AdjReport, IndObject, IndValuedFunctor, ObjectFunctor};
use multsys::{materialize_localization, LocalizedCategory, MorphismClass, DEFAULT_BOUND};

use crate::functor::{deligne_localize, deligne_morphism, gv_functor, DeligneResult};
use crate::probe::natural_families;
use crate::{require_side, DeligneError, Hand};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransportPair {
    pub x: String,
    pub x2: String,
    /// `lim→_{Y->X} Hom_{C'_{S'}}(FY, X')`.
    pub lhs: usize,
    /// `lim→_{X'->Y'} Hom_{C_S}(X, GY')`.
    pub rhs: usize,
    /// `lim→ lim→ Hom_{C'}(FY, Y')` and `lim→ lim→ Hom_C(Y, GY')`.
    pub mid_f: usize,
    pub mid_g: usize,
    /// The adjunction induces a bijection between the two double colimits.
    pub exchange_bijective: bool,
    /// `Hom_{Pro}(l(F)X, X')` and `Hom_{Ind}(X, r(G)X')` when the sides allow them.
    pub pro_hom: Option<usize>,
    pub ind_hom: Option<usize>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransportReport {
    /// Components of the unit `X -> GFX` found for the adjunction.
    pub unit: Vec<String>,
    pub pairs: Vec<TransportPair>,
    /// Generalized adjunction between `l(F)` and `r(G)`.
    pub generalized: Option<AdjReport>,
    /// Ordinary adjunction between `L(F)` and `R(G)`, when both exist.
    pub gv: Option<AdjReport>,
    pub ok: bool,
    pub witnesses: Vec<Violation>,
}

/// A unit `η: id -> GF` for which `φ ↦ G(φ)∘η_X` is bijective on every pair.
fn find_unit(c: &Category, c2: &Category, f: &Functor, g: &Functor, budget: &Budget) -> Result<Option<Vec<usize>>, DeligneError> {
    let gf = f.then(g);
    let cands: Vec<Vec<usize>> = c.objects().map(|x| c.hom(x, gf.obj[x]).to_vec()).collect();
    let edges: Vec<(usize, usize, usize)> = c.morphisms().map(|m| (c.src(m), c.tgt(m), m)).collect();
    let units = natural_families(&cands, &edges, |m, &a, &b| c.comp(b, m) == c.comp(gf.mor[m], a), budget)?;
    Ok(units.into_iter().find(|eta| {
        c.objects().all(|x| {
            c2.objects().all(|x2| {
                let mut img: Vec<usize> = c2.hom(f.obj[x], x2).iter().map(|&p| c.comp(g.mor[p], eta[x])).collect();
                img.sort_unstable();
                img.dedup();
                img.len() == c2.hom(f.obj[x], x2).len() && img.len() == c.hom(x, g.obj[x2]).len()
            })
        })
    }))
}

fn position(hom: &[usize], m: usize) -> usize {
    hom.iter().position(|&h| h == m).expect("morphism in its hom set")
}

/// Check `Hom_{Pro(C'_{S'})}(l_{S,S'}(F)X, X') ≅ Hom_{Ind(C_S)}(X, r_{S',S}(G)X')`
/// over every pair, by recomputing each colimit in the exchange, and the
/// adjunction of the Grothendieck–Verdier functors when they exist.
#[allow(clippy::too_many_arguments)]
pub fn adjunction_transport_check(
    c: &Category,
    s: &MorphismClass,
    c2: &Category,
    s2: &MorphismClass,
    f: &Functor,
    g: &Functor,
    tb: TieBreak,
    budget: &Budget,
) -> Result<TransportReport, DeligneError> {
    let mut v = f.violations(c, c2);
    v.extend(g.violations(c2, c));
    if !v.is_empty() {
        return Err(DeligneError::Invalid(v));
    }
    let eta = find_unit(c, c2, f, g, budget)?
        .ok_or_else(|| DeligneError::Invalid(vec![Violation::new("not-an-adjunction", vec![])]))?;
    let l = materialize_localization(c, s, tb, DEFAULT_BOUND)?;
    let l2 = materialize_localization(c2, s2, tb, DEFAULT_BOUND)?;
    let left_ok = require_side(c, s, Hand::Left).is_ok();
    let right_ok = require_side(c2, s2, Hand::Right).is_ok();

    let lres: Option<Vec<DeligneResult>> = if left_ok {
        Some(
            c.objects()
                .map(|x| deligne_localize(c, s, f, &l2, x, Hand::Left, tb, budget))
                .collect::<Result<_, _>>()?,
        )
    } else {
        None
    };
    let rres: Option<Vec<DeligneResult>> = if right_ok {
        Some(
            c2.objects()
                .map(|x2| deligne_localize(c2, s2, g, &l, x2, Hand::Right, tb, budget))
                .collect::<Result<_, _>>()?,
        )
    } else {
        None
    };

    let qf = f.then(&l2.q);
    let qg = g.then(&l.q);
    let (t, t2) = (&l.cat, &l2.cat);
    let mut pairs = Vec::new();
    let mut witnesses = Vec::new();
    for x in c.objects() {
        let over = slice_category(c, |m| s.contains(m), x);
        let ys: Vec<usize> = over.member.iter().map(|&m| c.src(m)).collect();
        for x2 in c2.objects() {
            let (lx, lx2) = (l.q.obj[x], l2.q.obj[x2]);
            let under = coslice_category(c2, |m| s2.contains(m), x2);
            let ys2: Vec<usize> = under.member.iter().map(|&m| c2.tgt(m)).collect();

            // Hom_{C'_{S'}}(Q'F Y_a, X'), contravariant in a
            let sizes: Vec<usize> = ys.iter().map(|&y| t2.hom(qf.obj[y], lx2).len()).collect();
            let arrows: Vec<(usize, usize, Vec<usize>)> = over
                .cat
                .morphisms()
                .map(|h| {
                    let (a, b) = (over.cat.src(h), over.cat.tgt(h));
                    let fh = qf.mor[over.arrow[h]];
                    let hb = t2.hom(qf.obj[ys[b]], lx2);
                    let ha = t2.hom(qf.obj[ys[a]], lx2);
                    (b, a, hb.iter().map(|&p| position(ha, t2.comp(p, fh))).collect())
                })
                .collect();
            let lhs = colimit_raw(&sizes, &arrows).len();

            // Hom_{C_S}(X, QG Y'_t), covariant in t
            let sizes: Vec<usize> = ys2.iter().map(|&y| t.hom(lx, qg.obj[y]).len()).collect();
            let arrows: Vec<(usize, usize, Vec<usize>)> = under
                .cat
                .morphisms()
                .map(|k| {
                    let (a, b) = (under.cat.src(k), under.cat.tgt(k));
                    let gk = qg.mor[under.arrow[k]];
                    let (ha, hb) = (t.hom(lx, qg.obj[ys2[a]]), t.hom(lx, qg.obj[ys2[b]]));
                    (a, b, ha.iter().map(|&p| position(hb, t.comp(gk, p))).collect())
                })
                .collect();
            let rhs = colimit_raw(&sizes, &arrows).len();

            // the double colimits, over slice object a and coslice object t
            let cell = |a: usize, tt: usize| a * ys2.len() + tt;
            let homf = |a: usize, tt: usize| c2.hom(f.obj[ys[a]], ys2[tt]).to_vec();
            let homg = |a: usize, tt: usize| c.hom(ys[a], g.obj[ys2[tt]]).to_vec();
            let double = |hom: &dyn Fn(usize, usize) -> Vec<usize>, pre: &dyn Fn(usize, usize) -> usize, post: &dyn Fn(usize, usize) -> usize| -> Colimit {
                let mut sizes = Vec::new();
                for a in 0..ys.len() {
                    for tt in 0..ys2.len() {
                        sizes.push(hom(a, tt).len());
                    }
                }
                let mut arrows = Vec::new();
                for h in over.cat.morphisms() {
                    let (a, b) = (over.cat.src(h), over.cat.tgt(h));
                    for tt in 0..ys2.len() {
                        let tab = hom(b, tt).iter().map(|&p| position(&hom(a, tt), pre(p, over.arrow[h]))).collect();
                        arrows.push((cell(b, tt), cell(a, tt), tab));
                    }
                }
                for k in under.cat.morphisms() {
                    let (t1, t2_) = (under.cat.src(k), under.cat.tgt(k));
                    for a in 0..ys.len() {
                        let tab = hom(a, t1).iter().map(|&p| position(&hom(a, t2_), post(p, under.arrow[k]))).collect();
                        arrows.push((cell(a, t1), cell(a, t2_), tab));
                    }
                }
                colimit_raw(&sizes, &arrows)
            };
            let cf = double(&homf, &|p, h| c2.comp(p, f.mor[h]), &|p, k| c2.comp(k, p));
            let cg = double(&homg, &|p, h| c.comp(p, h), &|p, k| c.comp(g.mor[k], p));

            // φ ↦ G(φ)∘η_Y must descend to a bijection of classes
            let mut class_map = vec![None; cf.len()];
            let mut well_defined = true;
            for a in 0..ys.len() {
                for tt in 0..ys2.len() {
                    for (e, &p) in homf(a, tt).iter().enumerate() {
                        let img = c.comp(g.mor[p], eta[ys[a]]);
                        let k = cg.cocone[cell(a, tt)][position(&homg(a, tt), img)];
                        let src = cf.cocone[cell(a, tt)][e];
                        match class_map[src] {
                            None => class_map[src] = Some(k),
                            Some(k0) => well_defined &= k0 == k,
                        }
                    }
                }
            }
            let mut hit: Vec<usize> = class_map.iter().flatten().copied().collect();
            hit.sort_unstable();
            hit.dedup();
            let exchange_bijective = well_defined && hit.len() == cf.len() && cf.len() == cg.len();

            let pro_hom = match &lres {
                Some(r) => Some(ind_hom(t2, &r[x].ind, &IndObject::constant(t2, lx2, Variance::Pro), budget)?.len()),
                None => None,
            };
            let ind_hom_ = match &rres {
                Some(r) => Some(ind_hom(t, &IndObject::constant(t, lx, Variance::Ind), &r[x2].ind, budget)?.len()),
                None => None,
            };
            let agree = lhs == rhs
                && lhs == cf.len()
                && rhs == cg.len()
                && exchange_bijective
                && pro_hom.is_none_or(|n| n == lhs)
                && ind_hom_.is_none_or(|n| n == rhs);
            if !agree {
                witnesses.push(Violation::new(
                    "hom-mismatch",
                    vec![c.obj_name(x).to_string(), c2.obj_name(x2).to_string()],
                ));
            }
            pairs.push(TransportPair {
                x: c.obj_name(x).to_string(),
                x2: c2.obj_name(x2).to_string(),
                lhs,
                rhs,
                mid_f: cf.len(),
                mid_g: cg.len(),
                exchange_bijective,
                pro_hom,
                ind_hom: ind_hom_,
                agree,
            });
        }
    }

    let all: Vec<(usize, usize)> = t.objects().flat_map(|x| t2.objects().map(move |x2| (x, x2))).collect();
    let (mut generalized, mut gv) = (None, None);
    if let (Some(lr), Some(rr)) = (&lres, &rres) {
        let lf = object_functor(c, s, &qf, &l, t2, lr, Hand::Left, tb)?;
        let rg = object_functor(c2, s2, &qg, &l2, t, rr, Hand::Right, tb)?;
        generalized = Some(generalized_adjunction_check(t, t2, &lf, &rg, &all, budget)?);
        let lgv = gv_functor(c, s, f, &l, &l2, lr, Hand::Left, tb)?;
        let rgv = gv_functor(c2, s2, g, &l2, &l, rr, Hand::Right, tb)?;
        if let (Some(a), Some(b)) = (lgv, rgv) {
            let fa = IndValuedFunctor::constant(t, t2, &a, Variance::Pro).to_object_functor(t, t2);
            let fb = IndValuedFunctor::constant(t2, t, &b, Variance::Ind).to_object_functor(t2, t);
            gv = Some(generalized_adjunction_check(t, t2, &fa, &fb, &all, budget)?);
        }
    }
    for r in generalized.iter().chain(gv.iter()) {
        witnesses.extend(r.witnesses.iter().cloned());
    }
    let ok = witnesses.is_empty()
        && pairs.iter().all(|p| p.agree)
        && generalized.as_ref().is_none_or(|r| r.ok)
        && gv.as_ref().is_none_or(|r| r.ok);
    Ok(TransportReport {
        unit: eta.iter().map(|&m| c.mor_name(m).to_string()).collect(),
        pairs,
        generalized,
        gv,
        ok,
        witnesses,
    })
}

/// The Deligne localized functor on the materialized source localization.
#[allow(clippy::too_many_arguments)]
fn object_functor(
    c: &Category,
    s: &MorphismClass,
    p: &Functor,
    source: &LocalizedCategory,
    t: &Category,
    results: &[DeligneResult],
    hand: Hand,
    tb: TieBreak,
) -> Result<ObjectFunctor, DeligneError> {
    let cs = &source.cat;
    let morphisms = cs
        .morphisms()
        .map(|m| {
            let (x, y) = (cs.src(m), cs.tgt(m));
            deligne_morphism(c, s, p, t, hand, &source.fraction[m], &results[x].ind, &results[y].ind, tb)
        })
        .collect::<Result<_, _>>()?;
    Ok(ObjectFunctor {
        objects: results.iter().map(|r| r.ind.clone()).collect(),
        morphisms,
    })
}
