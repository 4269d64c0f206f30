//! Universal properties of localizing, Deligne and Grothendieck–Verdier
//! localized functors, checked against finite families of test functors.

use std::collections::BTreeSet;

use serde::Serialize;

use fincat::{Budget, Category, Exhausted, Functor, TieBreak, Variance, Violation};
use indpro::{compose, ind_hom, IndMorphism, IndObject};
use multsys::{LocalizedCategory, MorphismClass};

use crate::functor::{deligne_localize, deligne_morphism, gv_functor, DeligneResult};
use crate::localize::{delta_of, localizing_object};
use crate::{require_side, DeligneError, Hand};

/// Which bijection to test.
#[derive(Clone, Copy, Debug)]
pub enum ProbeMode<'a> {
    /// `Nat(r_S, iG) -> Nat(i, GQ)` for `G: C_S -> C`.
    Localizing,
    /// `Nat(r_{S,S'}(F), i'G) -> Nat(Q'F, GQ)` for `G: C_S -> C'_{S'}`.
    Deligne { f: &'a Functor, target: &'a LocalizedCategory },
    /// `Nat(R_{S,S'}(F), G) -> Nat(Q'F, GQ)` through `Δ_{S,S'}(F)`.
    Gv { f: &'a Functor, target: &'a LocalizedCategory },
}

/// The test functor `G`, defined on the localization of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeTarget {
    Identity,
    Constant(usize),
    Functor(Functor),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub mode: String,
    /// Size of the set of transformations out of the localized functor.
    pub lhs: usize,
    /// Size of the set of transformations on `C`.
    pub rhs: usize,
    pub injective: bool,
    pub surjective: bool,
    pub bijective: bool,
    /// False when the Grothendieck–Verdier functor does not exist.
    pub applicable: bool,
    pub witnesses: Vec<Violation>,
}

/// Enumerate families `e_x ∈ cands[x]` satisfying `natural(m, e_src, e_tgt)` on every edge.
pub(crate) fn natural_families<E: Clone>(
    cands: &[Vec<E>],
    edges: &[(usize, usize, usize)],
    natural: impl Fn(usize, &E, &E) -> bool,
    budget: &Budget,
) -> Result<Vec<Vec<E>>, Exhausted> {
    let n = cands.len();
    // edges checked once both ends are assigned
    let mut due: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n];
    for &(x, y, m) in edges {
        due[x.max(y)].push((x, y, m));
    }
    let mut out = Vec::new();
    let mut cur: Vec<E> = Vec::with_capacity(n);
    fn go<E: Clone>(
        k: usize,
        cands: &[Vec<E>],
        due: &[Vec<(usize, usize, usize)>],
        natural: &dyn Fn(usize, &E, &E) -> bool,
        cur: &mut Vec<E>,
        out: &mut Vec<Vec<E>>,
        budget: &Budget,
    ) -> Result<(), Exhausted> {
        if k == cands.len() {
            out.push(cur.clone());
            return Ok(());
        }
        for e in &cands[k] {
            budget.tick()?;
            cur.push(e.clone());
            if due[k].iter().all(|&(x, y, m)| natural(m, &cur[x], &cur[y])) {
                go(k + 1, cands, due, natural, cur, out, budget)?;
            }
            cur.pop();
        }
        Ok(())
    }
    go(0, cands, &due, &natural, &mut cur, &mut out, budget)?;
    Ok(out)
}

/// Check that `β ↦ (β•Q)∘δ` (or `α ↦ (α•Q)∘Δ` in GV mode) is a bijection for
/// the given `G`, enumerating both sets of natural transformations.
#[allow(clippy::too_many_arguments)]
pub fn universal_property_probe(
    c: &Category,
    s: &MorphismClass,
    source: &LocalizedCategory,
    mode: ProbeMode<'_>,
    g: &ProbeTarget,
    tb: TieBreak,
    budget: &Budget,
) -> Result<ProbeReport, DeligneError> {
    require_side(c, s, Hand::Right)?;
    let idc = Functor::identity(c);
    let (t, p, label): (&Category, Functor, &str) = match mode {
        ProbeMode::Localizing => (c, idc, "localizing"),
        ProbeMode::Deligne { f, target } => (&target.cat, f.then(&target.q), "deligne"),
        ProbeMode::Gv { f, target } => (&target.cat, f.then(&target.q), "gv"),
    };
    let cs = &source.cat;
    let g = match g {
        ProbeTarget::Identity => Functor::identity(cs),
        ProbeTarget::Constant(y) => Functor {
            obj: vec![*y; cs.num_objects()],
            mor: vec![t.id(*y); cs.num_morphisms()],
        },
        ProbeTarget::Functor(f) => f.clone(),
    };
    let v = g.violations(cs, t);
    if !v.is_empty() {
        return Err(DeligneError::Invalid(v));
    }
    let q = &source.q;
    let bad = |law: &str, w: Vec<String>| Violation::new(law, w);

    // right-hand side: α_X: P X -> G Q X natural over C
    let rcands: Vec<Vec<usize>> = c.objects().map(|x| t.hom(p.obj[x], g.obj[q.obj[x]]).to_vec()).collect();
    let redges: Vec<(usize, usize, usize)> = c.morphisms().map(|m| (c.src(m), c.tgt(m), m)).collect();
    let rhs = natural_families(
        &rcands,
        &redges,
        |m, &a, &b| t.comp(b, p.mor[m]) == t.comp(g.mor[q.mor[m]], a),
        budget,
    )?;
    let rset: BTreeSet<Vec<usize>> = rhs.iter().cloned().collect();

    let ledges: Vec<(usize, usize, usize)> = cs.morphisms().map(|m| (cs.src(m), cs.tgt(m), m)).collect();
    let images: Vec<Vec<usize>>;
    let lhs_len;
    let mut applicable = true;
    match mode {
        ProbeMode::Gv { f, target } => {
            let rs: Vec<DeligneResult> = c
                .objects()
                .map(|x| deligne_localize(c, s, f, target, x, Hand::Right, tb, budget))
                .collect::<Result<_, _>>()?;
            match gv_functor(c, s, f, source, target, &rs, Hand::Right, tb)? {
                None => {
                    applicable = false;
                    images = Vec::new();
                    lhs_len = 0;
                }
                Some(r) => {
                    // Δ_X = ρ_X ∘ δ_X
                    let big_delta: Vec<usize> = rs
                        .iter()
                        .map(|d| {
                            let gv = d.gv.as_ref().unwrap();
                            let px = IndObject::constant(t, p.obj[d.x], Variance::Ind);
                            let cx = IndObject::constant(t, gv.object, Variance::Ind);
                            compose(t, &px, &cx, &d.delta, &gv.rho).comps[0].1
                        })
                        .collect();
                    let lcands: Vec<Vec<usize>> = cs.objects().map(|x| t.hom(r.obj[x], g.obj[x]).to_vec()).collect();
                    let lhs = natural_families(
                        &lcands,
                        &ledges,
                        |m, &a, &b| t.comp(b, r.mor[m]) == t.comp(g.mor[m], a),
                        budget,
                    )?;
                    lhs_len = lhs.len();
                    images = lhs
                        .iter()
                        .map(|al| c.objects().map(|x| t.comp(al[q.obj[x]], big_delta[x])).collect())
                        .collect();
                }
            }
        }
        _ => {
            let mut diag = Vec::with_capacity(c.num_objects());
            let mut deltas = Vec::with_capacity(c.num_objects());
            for x in c.objects() {
                let (slice, loc) = localizing_object(c, s, x, Hand::Right)?;
                let d = loc.push(&p);
                let d0 = delta_of(c, &slice, &loc, x, Hand::Right);
                deltas.push(IndMorphism {
                    comps: d0.comps.iter().map(|&(j, m)| (j, p.mor[m])).collect(),
                });
                diag.push(d);
            }
            let consts: Vec<IndObject> = cs.objects().map(|x| IndObject::constant(t, g.obj[x], Variance::Ind)).collect();
            let mut lcands = Vec::with_capacity(cs.num_objects());
            for x in cs.objects() {
                lcands.push(ind_hom(t, &diag[x], &consts[x], budget)?.elements);
            }
            let mut acts = Vec::with_capacity(cs.num_morphisms());
            for m in cs.morphisms() {
                let (x, y) = (cs.src(m), cs.tgt(m));
                acts.push(deligne_morphism(c, s, &p, t, Hand::Right, &source.fraction[m], &diag[x], &diag[y], tb)?);
            }
            let cm = |g_m: usize| IndMorphism { comps: vec![(0, g_m)] };
            let lhs = natural_families(
                &lcands,
                &ledges,
                |m, a, b| {
                    let (x, y) = (cs.src(m), cs.tgt(m));
                    compose(t, &diag[x], &consts[y], &acts[m], b) == compose(t, &diag[x], &consts[y], a, &cm(g.mor[m]))
                },
                budget,
            )?;
            lhs_len = lhs.len();
            images = lhs
                .iter()
                .map(|be| {
                    c.objects()
                        .map(|x| {
                            let px = IndObject::constant(t, p.obj[x], Variance::Ind);
                            compose(t, &px, &consts[q.obj[x]], &deltas[x], &be[q.obj[x]]).comps[0].1
                        })
                        .collect()
                })
                .collect();
        }
    }

    let mut witnesses = Vec::new();
    let mut hit = BTreeSet::new();
    let mut injective = true;
    for im in &images {
        if !rset.contains(im) {
            witnesses.push(bad("image-not-natural", im.iter().map(|&m| t.mor_name(m).to_string()).collect()));
        }
        if !hit.insert(im.clone()) {
            injective = false;
            witnesses.push(bad("not-injective", im.iter().map(|&m| t.mor_name(m).to_string()).collect()));
        }
    }
    let missed: Vec<&Vec<usize>> = rhs.iter().filter(|a| !hit.contains(*a)).collect();
    let surjective = applicable && missed.is_empty();
    if let Some(a) = missed.first() {
        witnesses.push(bad("not-surjective", a.iter().map(|&m| t.mor_name(m).to_string()).collect()));
    }
    Ok(ProbeReport {
        mode: label.to_string(),
        lhs: lhs_len,
        rhs: rhs.len(),
        injective,
        surjective,
        bijective: applicable && injective && surjective && witnesses.is_empty(),
        applicable,
        witnesses,
    })
}
