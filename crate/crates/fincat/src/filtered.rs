use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::category::{Category, Violation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilteredReport {
    pub nonempty: bool,
    pub connected: bool,
    pub pf1: bool,
    pub pf2: bool,
    /// Any two objects map to a common third.
    pub c_prime: bool,
    pub filtrant: bool,
    /// nonempty ∧ PF2 ∧ C'; must agree with `filtrant`.
    pub filtrant_via_c_prime: bool,
    pub witnesses: Vec<Violation>,
}

fn components(c: &Category) -> UnionFind<usize> {
    let mut uf = UnionFind::<usize>::new(c.num_objects());
    for m in c.morphisms() {
        uf.union(c.src(m), c.tgt(m));
    }
    uf
}

/// Does the span `j <-f- i -g-> j'` complete to a commuting square?
pub fn span_completes(c: &Category, f: usize, g: usize) -> bool {
    let (j, j2) = (c.tgt(f), c.tgt(g));
    c.objects().any(|k| {
        c.hom(j, k).iter().any(|&a| {
            let af = c.comp(a, f);
            c.hom(j2, k).iter().any(|&b| c.comp(b, g) == af)
        })
    })
}

/// Is the parallel pair `f, g` equalized by some further arrow?
pub fn pair_equalized(c: &Category, f: usize, g: usize) -> bool {
    c.out_of(c.tgt(f)).any(|h| c.comp(h, f) == c.comp(h, g))
}

pub fn classify_filtered(c: &Category) -> FilteredReport {
    let mut witnesses = Vec::new();
    let nonempty = c.num_objects() > 0;
    if !nonempty {
        witnesses.push(Violation::new("nonempty", vec![]));
    }
    let uf = components(c);
    let far = c.objects().find(|&y| !uf.equiv(0, y));
    let connected = nonempty && far.is_none();
    if let Some(far) = far {
        witnesses.push(Violation::new(
            "connected",
            vec![c.obj_name(0).to_string(), c.obj_name(far).to_string()],
        ));
    }

    let mut pf1 = true;
    'pf1: for f in c.morphisms() {
        for g in c.out_of(c.src(f)) {
            if g > f {
                continue;
            }
            if !span_completes(c, f, g) {
                pf1 = false;
                witnesses.push(Violation::new(
                    "PF1",
                    vec![c.mor_name(f).to_string(), c.mor_name(g).to_string()],
                ));
                break 'pf1;
            }
        }
    }

    let mut pf2 = true;
    'pf2: for x in c.objects() {
        for y in c.objects() {
            let hs = c.hom(x, y);
            for (a, &f) in hs.iter().enumerate() {
                for &g in &hs[a + 1..] {
                    if !pair_equalized(c, f, g) {
                        pf2 = false;
                        witnesses.push(Violation::new(
                            "PF2",
                            vec![c.mor_name(f).to_string(), c.mor_name(g).to_string()],
                        ));
                        break 'pf2;
                    }
                }
            }
        }
    }

    let mut c_prime = true;
    'cp: for i in c.objects() {
        for j in c.objects() {
            if j < i {
                continue;
            }
            let ok = c
                .objects()
                .any(|k| !c.hom(i, k).is_empty() && !c.hom(j, k).is_empty());
            if !ok {
                c_prime = false;
                witnesses.push(Violation::new(
                    "C'",
                    vec![c.obj_name(i).to_string(), c.obj_name(j).to_string()],
                ));
                break 'cp;
            }
        }
    }

    FilteredReport {
        nonempty,
        connected,
        pf1,
        pf2,
        c_prime,
        filtrant: nonempty && connected && pf1 && pf2,
        filtrant_via_c_prime: nonempty && pf2 && c_prime,
        witnesses,
    }
}
