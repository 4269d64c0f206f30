//! Composites of Deligne localized functors along a chain of functors.
//!
//! `r̄_{S_k}(F_k)…r_{S_0}(F_1)(X)` is flattened to a single ind-object: an
//! index object is a tuple `(t_1, …, t_k)` with `t_1: X -> Y_1` in `S_0` and
//! each later `t_m` in `S_{p_m}` out of the image of `Y_{m-1}`; a morphism is
//! a tuple `(β_1, …, β_k)` with `β_1 t_1 = t'_1` and `β_m t_m = t'_m F(β_{m-1})`.

use std::collections::HashMap;

use serde::Serialize;

use fincat::{Budget, Builder, Category, Functor, TieBreak, Variance, Violation};
use indpro::{canonicalize, compose, essentially_constant, find_iso, ind_hom, inverse, IndMorphism, IndObject};
use multsys::{materialize_localization, LocalizedCategory, MorphismClass, DEFAULT_BOUND};

use crate::functor::{deligne_localize, least_representative};
use crate::localize::{fraction_action, localizing_object};
use crate::{require_side, DeligneError, Hand};

/// `C_0 -F_1-> C_1 -> … -> C_n` with systems on `C_0 … C_{n-1}` and the
/// localization of `C_n`.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub cats: Vec<Category>,
    pub classes: Vec<MorphismClass>,
    /// `functors[k]: C_k -> C_{k+1}`.
    pub functors: Vec<Functor>,
    pub target: LocalizedCategory,
}

struct Tower {
    ind: IndObject,
    index_of: HashMap<Vec<usize>, usize>,
    tuples: Vec<(Vec<usize>, Vec<usize>)>,
}

impl Pipeline {
    fn stages(&self) -> usize {
        self.functors.len()
    }

    /// `F_b ∘ … ∘ F_{a+1}: C_a -> C_b`.
    fn composite(&self, a: usize, b: usize) -> Functor {
        let mut f = Functor::identity(&self.cats[a]);
        for g in &self.functors[a..b] {
            f = f.then(g);
        }
        f
    }

    fn check(&self) -> Result<(), DeligneError> {
        let n = self.stages();
        let mut v = Vec::new();
        if self.cats.len() != n + 1 || self.classes.len() != n {
            v.push(Violation::new("pipeline-shape", vec![]));
        } else {
            for (k, f) in self.functors.iter().enumerate() {
                for w in f.violations(&self.cats[k], &self.cats[k + 1]) {
                    v.push(Violation::new(&w.law, vec![format!("F{}", k + 1)]));
                }
            }
        }
        if !v.is_empty() {
            return Err(DeligneError::Invalid(v));
        }
        for k in 0..n {
            require_side(&self.cats[k], &self.classes[k], Hand::Right)?;
        }
        Ok(())
    }

    /// Flattened tower for the stages `ps` (increasing, starting at 0, below `n`).
    fn tower(&self, ps: &[usize], x: usize) -> Result<Tower, DeligneError> {
        let n = self.stages();
        let t = &self.target.cat;
        // objects: (t-tuple, free ends)
        let mut objs: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        let mut stack = vec![(Vec::new(), Vec::new())];
        while let Some((ts, ys)) = stack.pop() {
            let m = ts.len();
            if m == ps.len() {
                objs.push((ts, ys));
                continue;
            }
            let c = &self.cats[ps[m]];
            let base = if m == 0 { x } else { self.composite(ps[m - 1], ps[m]).obj[ys[m - 1]] };
            for tm in c.out_of(base).filter(|&s| self.classes[ps[m]].contains(s)) {
                let (mut ts2, mut ys2) = (ts.clone(), ys.clone());
                ts2.push(tm);
                ys2.push(c.tgt(tm));
                stack.push((ts2, ys2));
            }
        }
        objs.sort();
        let between: Vec<Functor> = (1..ps.len()).map(|m| self.composite(ps[m - 1], ps[m])).collect();
        let to_end = self.composite(ps[ps.len() - 1], n).then(&self.target.q);

        let oname = |ts: &[usize]| {
            let parts: Vec<&str> = ts.iter().enumerate().map(|(m, &tm)| self.cats[ps[m]].mor_name(tm)).collect();
            format!("({})", parts.join(","))
        };
        let mut b = Builder::new();
        let oid: Vec<usize> = objs.iter().map(|(ts, _)| b.object(oname(ts))).collect();
        // morphisms between each ordered pair of objects
        let mut mors: Vec<(usize, usize, Vec<usize>, usize)> = Vec::new();
        let mut names: Vec<(String, Vec<usize>)> = Vec::new();
        for (ia, (ta, ya)) in objs.iter().enumerate() {
            for (ib, (tb_, yb)) in objs.iter().enumerate() {
                let mut partial: Vec<Vec<usize>> = vec![Vec::new()];
                for m in 0..ps.len() {
                    let c = &self.cats[ps[m]];
                    let mut next = Vec::new();
                    for beta in &partial {
                        for &bm in c.hom(ya[m], yb[m]) {
                            let lhs = c.comp(bm, ta[m]);
                            let rhs = if m == 0 { tb_[0] } else { c.comp(tb_[m], between[m - 1].mor[beta[m - 1]]) };
                            if lhs == rhs {
                                let mut nb = beta.clone();
                                nb.push(bm);
                                next.push(nb);
                            }
                        }
                    }
                    partial = next;
                }
                for beta in partial {
                    let parts: Vec<&str> = beta.iter().enumerate().map(|(m, &bm)| self.cats[ps[m]].mor_name(bm)).collect();
                    let name = format!("({}):{}->{}", parts.join(","), oname(ta), oname(tb_));
                    let id = b.morphism(name.clone(), oid[ia], oid[ib]);
                    names.push((name, beta.clone()));
                    mors.push((ia, ib, beta, id));
                }
            }
        }
        let mut key: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
        for (ia, ib, beta, id) in &mors {
            key.insert((*ia, *ib, beta.clone()), *id);
        }
        for (ia, (_, ya)) in objs.iter().enumerate() {
            let ids: Vec<usize> = ya.iter().enumerate().map(|(m, &y)| self.cats[ps[m]].id(y)).collect();
            b.identity(oid[ia], key[&(ia, ia, ids)]);
        }
        for (ia, ib, beta, id) in &mors {
            for (ib2, ic, gamma, id2) in &mors {
                if ib2 != ib {
                    continue;
                }
                let comp: Vec<usize> = (0..ps.len()).map(|m| self.cats[ps[m]].comp(gamma[m], beta[m])).collect();
                b.compose(*id2, *id, key[&(*ia, *ic, comp)]);
            }
        }
        let index = b.build().map_err(DeligneError::Invalid)?;

        let last = ps.len() - 1;
        let mut body_obj = vec![0; index.num_objects()];
        let mut index_of = HashMap::new();
        let mut tuples = vec![(Vec::new(), Vec::new()); index.num_objects()];
        for (ts, ys) in &objs {
            let i = index.obj(&oname(ts)).unwrap();
            body_obj[i] = to_end.obj[ys[last]];
            index_of.insert(ts.clone(), i);
            tuples[i] = (ts.clone(), ys.clone());
        }
        let mut body_mor = vec![0; index.num_morphisms()];
        for (name, beta) in &names {
            body_mor[index.mor(name).unwrap()] = to_end.mor[beta[last]];
        }
        let body = Functor {
            obj: body_obj,
            mor: body_mor,
        };
        let ind = IndObject::new(t, index, body, Variance::Ind).map_err(DeligneError::Invalid)?;
        Ok(Tower { ind, index_of, tuples })
    }

    /// The canonical morphism from the tower on `ps` to the tower on `qs ⊇ ps`:
    /// identities inserted at the new stages.
    fn insertion(&self, ps: &[usize], a: &Tower, qs: &[usize], b: &Tower) -> Option<IndMorphism> {
        let t = &self.target.cat;
        let mut comps = Vec::with_capacity(a.tuples.len());
        for (i, (ts, ys)) in a.tuples.iter().enumerate() {
            let mut out = Vec::new();
            let (mut stage, mut obj) = (0, 0);
            let mut m = 0;
            for &q in qs {
                if m < ps.len() && ps[m] == q {
                    out.push(ts[m]);
                    stage = q;
                    obj = ys[m];
                    m += 1;
                } else {
                    let y = self.composite(stage, q).obj[obj];
                    out.push(self.cats[q].id(y));
                    stage = q;
                    obj = y;
                }
            }
            let j = *b.index_of.get(&out)?;
            comps.push((j, t.id(a.ind.value(i))));
        }
        canonicalize(t, &a.ind, &b.ind, &comps)
    }

    /// `δ` for a tower: the constant object at `Q F(X)` into it, through the all-identity tuple.
    fn delta(&self, ps: &[usize], tw: &Tower, x: usize) -> Option<IndMorphism> {
        let t = &self.target.cat;
        let mut ids = Vec::new();
        let (mut stage, mut obj) = (0, x);
        for &q in ps {
            let y = self.composite(stage, q).obj[obj];
            ids.push(self.cats[q].id(y));
            stage = q;
            obj = y;
        }
        let i = *tw.index_of.get(&ids)?;
        let px = tw.ind.value(i);
        canonicalize(t, &IndObject::constant(t, px, Variance::Ind), &tw.ind, &[(i, t.id(px))])
    }
}

/// The Grothendieck–Verdier side of a composition constraint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GvComparison {
    /// `R_{S,S'}(F)(X)` in `C'` and `R_{S',S''}(F')` of it in `C''`.
    pub first: usize,
    pub second: usize,
    /// `R_{S,S''}(F'F)(X)`, when it exists.
    pub composite: Option<usize>,
    /// `Δ_{S,S',S''}(F',F)(X)`, a morphism of `C''_{S''}`.
    pub delta: Option<usize>,
    pub delta_iso: Option<bool>,
    pub square_commutes: Option<bool>,
    /// The constraint is an isomorphism exactly when the composite exists and `Δ` is one.
    pub criterion_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionConstraint {
    pub x: usize,
    /// `r_{S,S''}(F'F)(X)`.
    pub source: IndObject,
    /// `r̄_{S',S''}(F') r_{S,S'}(F)(X)`, flattened.
    pub target: IndObject,
    pub constraint: IndMorphism,
    /// The constraint is an element of the Hom set, not just a family of components.
    pub is_morphism: bool,
    pub iso: bool,
    /// Constraint after `δ_{S,S''}(F'F)(X)` equals `δ̄_{S',S''}(F') • δ_{S,S'}(F)` at X.
    pub precomposition_ok: bool,
    /// Some isomorphism exists between source and target.
    pub direct_iso: bool,
    pub gv: Option<GvComparison>,
}

/// `δ_{S,S',S''}(F',F)(X)` for a two-functor pipeline.
pub fn composition_constraint(p: &Pipeline, x: usize, tb: TieBreak, budget: &Budget) -> Result<CompositionConstraint, DeligneError> {
    p.check()?;
    if p.stages() != 2 {
        return Err(DeligneError::Invalid(vec![Violation::new("pipeline-needs-two-functors", vec![])]));
    }
    let t = &p.target.cat;
    let a = p.tower(&[0], x)?;
    let b = p.tower(&[0, 1], x)?;
    let bad = |law: &str| DeligneError::Invalid(vec![Violation::new(law, vec![p.cats[0].obj_name(x).to_string()])]);
    let constraint = p.insertion(&[0], &a, &[0, 1], &b).ok_or_else(|| bad("constraint-outside-colimit"))?;
    let is_morphism = ind_hom(t, &a.ind, &b.ind, budget)?.position(&constraint).is_some();
    let iso = inverse(t, &a.ind, &b.ind, &constraint, budget)?.is_some();
    let da = p.delta(&[0], &a, x).ok_or_else(|| bad("delta-outside-colimit"))?;
    let db = p.delta(&[0, 1], &b, x).ok_or_else(|| bad("delta-outside-colimit"))?;
    let px = IndObject::constant(t, a.ind.value(a.index_of[&vec![p.cats[0].id(x)]]), Variance::Ind);
    let precomposition_ok = compose(t, &px, &b.ind, &da, &constraint) == db;
    let direct_iso = find_iso(t, &a.ind, &b.ind, budget)?.is_some();
    let gv = gv_comparison(p, x, &a, &b, &constraint, iso, tb, budget)?;
    Ok(CompositionConstraint {
        x,
        source: a.ind,
        target: b.ind,
        constraint,
        is_morphism,
        iso,
        precomposition_ok,
        direct_iso,
        gv,
    })
}

#[allow(clippy::too_many_arguments)]
fn gv_comparison(
    p: &Pipeline,
    x: usize,
    a: &Tower,
    b: &Tower,
    constraint: &IndMorphism,
    iso: bool,
    tb: TieBreak,
    budget: &Budget,
) -> Result<Option<GvComparison>, DeligneError> {
    let t = &p.target.cat;
    let (c0, c1) = (&p.cats[0], &p.cats[1]);
    let (f, f2) = (&p.functors[0], &p.functors[1]);
    let l1 = materialize_localization(c1, &p.classes[1], tb, DEFAULT_BOUND)?;
    let d1 = deligne_localize(c0, &p.classes[0], f, &l1, x, Hand::Right, tb, budget)?;
    let Some(g1) = d1.gv else { return Ok(None) };
    let d2 = deligne_localize(c1, &p.classes[1], f2, &p.target, g1.object, Hand::Right, tb, budget)?;
    let Some(g2) = d2.gv else { return Ok(None) };

    // r̄(F')(ρ(F)) then ρ(F') at R(F)(X): B -> i''R(F')R(F)(X)
    let q2f2 = f2.then(&p.target.q);
    let mut comps = Vec::with_capacity(b.tuples.len());
    for (ts, _) in &b.tuples {
        let i = a.index_of[&vec![ts[0]]];
        let mi = g1.rho.comps[i].1;
        let act = fraction_action(c1, &p.classes[1], Hand::Right, &l1.fraction[mi], tb)?;
        let (sl, _) = localizing_object(c1, &p.classes[1], l1.cat.src(mi), Hand::Right)?;
        let (j, g) = act.comps[sl.object_of(ts[1]).unwrap()];
        comps.push((j, q2f2.mor[g]));
    }
    let bottom1 = canonicalize(t, &b.ind, &d2.ind, &comps)
        .ok_or_else(|| DeligneError::Invalid(vec![Violation::new("bottom-outside-colimit", vec![])]))?;
    let c2 = IndObject::constant(t, g2.object, Variance::Ind);
    let bottom = compose(t, &b.ind, &c2, &bottom1, &g2.rho);

    let ra = essentially_constant(t, &a.ind, tb, budget)?.map(|e| least_representative(t, &a.ind, e));
    let (composite, delta, delta_iso, square_commutes) = match &ra {
        Some(r) => {
            let cr = IndObject::constant(t, r.object, Variance::Ind);
            let via = compose(t, &cr, &b.ind, &r.rho_inv, constraint);
            let big = compose(t, &cr, &c2, &via, &bottom);
            let d = big.comps[0].1;
            let left = compose(t, &a.ind, &c2, &r.rho, &IndMorphism { comps: vec![(0, d)] });
            let right = compose(t, &a.ind, &c2, constraint, &bottom);
            (Some(r.object), Some(d), Some(t.is_iso(d)), Some(left == right))
        }
        None => (None, None, None, None),
    };
    let criterion_holds = iso == (composite.is_some() && delta_iso == Some(true));
    Ok(Some(GvComparison {
        first: g1.object,
        second: g2.object,
        composite,
        delta,
        delta_iso,
        square_commutes,
        criterion_holds,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssocReport {
    /// Every constraint is an element of its Hom set.
    pub all_morphisms: bool,
    /// `(r̄(F'') • c_{F',F}) ∘ c_{F'',F'F} = (c_{F'',F'} • r̄(F)) ∘ c_{F''F',F}` at X.
    pub associative: bool,
}

/// Associativity of the composition constraints on a three-functor pipeline at `x`.
pub fn associativity_check(p: &Pipeline, x: usize, budget: &Budget) -> Result<AssocReport, DeligneError> {
    p.check()?;
    if p.stages() != 3 {
        return Err(DeligneError::Invalid(vec![Violation::new("pipeline-needs-three-functors", vec![])]));
    }
    let t = &p.target.cat;
    let sets: [&[usize]; 4] = [&[0], &[0, 1], &[0, 2], &[0, 1, 2]];
    let towers: Vec<Tower> = sets.iter().map(|ps| p.tower(ps, x)).collect::<Result<_, _>>()?;
    let bad = || DeligneError::Invalid(vec![Violation::new("constraint-outside-colimit", vec![])]);
    let ins = |a: usize, b: usize| p.insertion(sets[a], &towers[a], sets[b], &towers[b]).ok_or_else(bad);
    let edges = [(0, 1), (0, 2), (1, 3), (2, 3)];
    let mut ms = Vec::new();
    let mut all_morphisms = true;
    for &(a, b) in &edges {
        let m = ins(a, b)?;
        all_morphisms &= ind_hom(t, &towers[a].ind, &towers[b].ind, budget)?.position(&m).is_some();
        ms.push(m);
    }
    let via_first = compose(t, &towers[0].ind, &towers[3].ind, &ms[0], &ms[2]);
    let via_second = compose(t, &towers[0].ind, &towers[3].ind, &ms[1], &ms[3]);
    Ok(AssocReport {
        all_morphisms,
        associative: via_first == via_second,
    })
}
