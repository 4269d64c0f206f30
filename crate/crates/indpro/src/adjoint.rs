use serde::Serialize;

use fincat::{Budget, Category, Exhausted, Variance, Violation};

use crate::extend::ObjectFunctor;
use crate::hom::{canonicalize, compose, ind_hom, IndMorphism};
use crate::object::IndObject;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairSizes {
    pub x: String,
    pub x2: String,
    pub pro_side: usize,
    pub ind_side: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjReport {
    pub pairs: Vec<PairSizes>,
    /// A family of bijections natural in both variables was found.
    pub natural: bool,
    pub ok: bool,
    pub witnesses: Vec<Violation>,
}

struct Side {
    objs: Vec<IndObject>,
    elems: Vec<IndMorphism>,
}

/// Check that `Hom_{Pro C'}(F X, X')` and `Hom_{Ind C}(X, G X')` are in bijection,
/// naturally in `X` and `X'`, over the sampled pairs.
///
/// `f: C -> Pro(C')` and `g: C' -> Ind(C)` must carry pro and ind variance.
pub fn generalized_adjunction_check(
    c: &Category,
    c2: &Category,
    f: &ObjectFunctor,
    g: &ObjectFunctor,
    pairs: &[(usize, usize)],
    budget: &Budget,
) -> Result<AdjReport, Exhausted> {
    let mut witnesses = Vec::new();
    let mut sizes = Vec::new();
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for &(x, x2) in pairs {
        let cx2 = IndObject::constant(c2, x2, Variance::Pro);
        let cx = IndObject::constant(c, x, Variance::Ind);
        let a = ind_hom(c2, &f.objects[x], &cx2, budget)?.elements;
        let b = ind_hom(c, &cx, &g.objects[x2], budget)?.elements;
        if a.len() != b.len() {
            witnesses.push(Violation::new(
                "cardinality",
                vec![c.obj_name(x).to_string(), c2.obj_name(x2).to_string()],
            ));
        }
        sizes.push(PairSizes {
            x: c.obj_name(x).to_string(),
            x2: c2.obj_name(x2).to_string(),
            pro_side: a.len(),
            ind_side: b.len(),
        });
        lhs.push(Side {
            objs: vec![f.objects[x].clone(), cx2],
            elems: a,
        });
        rhs.push(Side {
            objs: vec![cx, g.objects[x2].clone()],
            elems: b,
        });
    }
    if !witnesses.is_empty() {
        return Ok(AdjReport {
            pairs: sizes,
            natural: false,
            ok: false,
            witnesses,
        });
    }

    // Transport data: for pair indices p -> q and (u: Y -> X, v: X' -> Y'),
    // the action on each side as index tables.
    let mut actions: Vec<(usize, usize, Vec<usize>, Vec<usize>, String)> = Vec::new();
    for (p, &(x, x2)) in pairs.iter().enumerate() {
        for (q, &(y, y2)) in pairs.iter().enumerate() {
            for &u in c.hom(y, x) {
                for &v in c2.hom(x2, y2) {
                    budget.tick()?;
                    let (lp, lq) = (&lhs[p], &lhs[q]);
                    let cv = canonicalize(c2, &lp.objs[1], &lq.objs[1], &[(0, v)]).unwrap();
                    let la: Vec<usize> = lp
                        .elems
                        .iter()
                        .map(|al| {
                            let t = compose(c2, &lq.objs[0], &lp.objs[1], &f.morphisms[u], al);
                            let t = compose(c2, &lq.objs[0], &lq.objs[1], &t, &cv);
                            lq.elems.iter().position(|e| *e == t).unwrap()
                        })
                        .collect();
                    let (rp, rq) = (&rhs[p], &rhs[q]);
                    let cu = canonicalize(c, &rq.objs[0], &rp.objs[0], &[(0, u)]).unwrap();
                    let ra: Vec<usize> = rp
                        .elems
                        .iter()
                        .map(|be| {
                            let t = compose(c, &rq.objs[0], &rp.objs[1], &cu, be);
                            let t = compose(c, &rq.objs[0], &rq.objs[1], &t, &g.morphisms[v]);
                            rq.elems.iter().position(|e| *e == t).unwrap()
                        })
                        .collect();
                    let w = format!("{}/{}", c.mor_name(u), c2.mor_name(v));
                    actions.push((p, q, la, ra, w));
                }
            }
        }
    }
    // Backtrack over one bijection per pair, checking every square whose ends are assigned.
    let n = pairs.len();
    let mut chosen: Vec<Option<Vec<usize>>> = vec![None; n];
    let natural = search(0, n, &lhs, &actions, &mut chosen, budget)?;
    if !natural {
        witnesses.push(Violation::new("naturality", first_square(&actions)));
    }
    Ok(AdjReport {
        pairs: sizes,
        natural,
        ok: natural,
        witnesses,
    })
}

fn first_square(actions: &[(usize, usize, Vec<usize>, Vec<usize>, String)]) -> Vec<String> {
    actions.first().map(|a| vec![a.4.clone()]).unwrap_or_default()
}

fn consistent(
    actions: &[(usize, usize, Vec<usize>, Vec<usize>, String)],
    chosen: &[Option<Vec<usize>>],
) -> bool {
    actions.iter().all(|(p, q, la, ra, _)| match (&chosen[*p], &chosen[*q]) {
        (Some(tp), Some(tq)) => (0..la.len()).all(|a| tq[la[a]] == ra[tp[a]]),
        _ => true,
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn search(
    k: usize,
    n: usize,
    lhs: &[Side],
    actions: &[(usize, usize, Vec<usize>, Vec<usize>, String)],
    chosen: &mut Vec<Option<Vec<usize>>>,
    budget: &Budget,
) -> Result<bool, Exhausted> {
    if k == n {
        return Ok(true);
    }
    for perm in permutations(lhs[k].elems.len()) {
        budget.tick()?;
        chosen[k] = Some(perm);
        if consistent(actions, chosen) && search(k + 1, n, lhs, actions, chosen, budget)? {
            return Ok(true);
        }
    }
    chosen[k] = None;
    Ok(false)
}
