use fincat::{Budget, Category, Exhausted, TieBreak, Variance};

use crate::hom::{canonicalize, IndMorphism};
use crate::object::IndObject;

/// A representative `L` with the data of the representability criterion:
/// a cocone `iota_i: F_i -> L` and `f: L -> F_{i0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssConst {
    pub representative: usize,
    pub i0: usize,
    pub f: usize,
    pub iota: Vec<usize>,
    /// Isomorphism from the object to the constant object at `L`, and its inverse.
    pub to_const: IndMorphism,
    pub from_const: IndMorphism,
}

/// Search for `L`, `i0`, `f` satisfying (a), (b), (c). Candidates are the
/// values of the diagram first, then every object, in id order.
pub fn essentially_constant(
    c: &Category,
    x: &IndObject,
    tb: TieBreak,
    budget: &Budget,
) -> Result<Option<EssConst>, Exhausted> {
    match x.variance {
        Variance::Ind => search(c, x, tb, budget),
        Variance::Pro => {
            let op = c.opposite();
            let r = search(&op, &x.op(), tb, budget)?;
            Ok(r.map(|e| EssConst {
                to_const: e.from_const,
                from_const: e.to_const,
                ..e
            }))
        }
    }
}

fn cocones(c: &Category, x: &IndObject, l: usize, budget: &Budget) -> Result<Vec<Vec<usize>>, Exhausted> {
    let k = &x.index;
    let n = k.num_objects();
    let mut out = Vec::new();
    let mut pick = vec![usize::MAX; n];
    fn go(
        i: usize,
        c: &Category,
        x: &IndObject,
        l: usize,
        pick: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        budget: &Budget,
    ) -> Result<(), Exhausted> {
        let k = &x.index;
        if i == k.num_objects() {
            out.push(pick.clone());
            return Ok(());
        }
        for &a in c.hom(x.value(i), l) {
            budget.tick()?;
            pick[i] = a;
            // (c): iota_s = iota_t ∘ F(m) for every m: s -> t among assigned objects
            let ok = k.morphisms().all(|m| {
                let (s, t) = (k.src(m), k.tgt(m));
                s.max(t) != i || pick[s] == c.comp(pick[t], x.body.mor[m])
            });
            if ok {
                go(i + 1, c, x, l, pick, out, budget)?;
            }
        }
        pick[i] = usize::MAX;
        Ok(())
    }
    go(0, c, x, l, &mut pick, &mut out, budget)?;
    Ok(out)
}

fn search(c: &Category, x: &IndObject, tb: TieBreak, budget: &Budget) -> Result<Option<EssConst>, Exhausted> {
    let k = &x.index;
    let mut cands: Vec<usize> = Vec::new();
    let mut vals: Vec<usize> = k.objects().map(|i| x.value(i)).collect();
    vals.sort_unstable();
    vals.dedup();
    cands.extend(tb.order(vals.clone()));
    cands.extend(tb.order(c.objects().filter(|o| !vals.contains(o)).collect()));

    for l in cands {
        for iota in tb.order(cocones(c, x, l, budget)?) {
            for i0 in tb.order(k.objects().collect()) {
                for &f in tb.order(c.hom(l, x.value(i0)).to_vec()).iter() {
                    budget.tick()?;
                    // (b)
                    if c.comp(iota[i0], f) != c.id(l) {
                        continue;
                    }
                    // (a)
                    let a_holds = k.objects().all(|i| {
                        let lhs = c.comp_all(&[f, iota[i]]);
                        k.objects().any(|kk| {
                            k.hom(i0, kk).iter().any(|&s0| {
                                let left = c.comp(x.body.mor[s0], lhs);
                                k.hom(i, kk).iter().any(|&s| x.body.mor[s] == left)
                            })
                        })
                    });
                    if !a_holds {
                        continue;
                    }
                    let cst = IndObject::constant(c, l, Variance::Ind);
                    let to_const = canonicalize(c, x, &cst, &iota.iter().map(|&a| (0, a)).collect::<Vec<_>>())
                        .expect("cocone components are colimit elements");
                    let from_const = canonicalize(c, &cst, x, &[(i0, f)]).expect("f is a colimit element");
                    return Ok(Some(EssConst {
                        representative: l,
                        i0,
                        f,
                        iota,
                        to_const,
                        from_const,
                    }));
                }
            }
        }
    }
    Ok(None)
}
