#![allow(dead_code)]

use fincat::{Budget, Category, Fixture, Functor, MAIN};
use multsys::{MorphismClass, Side};

pub const FIXTURES: &[&str] = &[
    "walking_arrow",
    "chain3",
    "pair_cat",
    "square",
    "idempotent",
    "walking_iso",
    "coequalizer",
];

pub fn load(name: &str) -> Fixture {
    let path = format!("{}/../../fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn setup(name: &str, class: &str, side: Side) -> (Category, MorphismClass) {
    let fx = load(name);
    let c = fx.category(MAIN).unwrap();
    let ids = fx.class(&c, class).unwrap();
    (c.clone(), MorphismClass::new(&c, &ids, side))
}

pub fn budget() -> Budget {
    Budget::new(5_000_000)
}

/// `(chain3, sub, refl, incl)`.
pub fn chain3_sub() -> (Category, Category, Functor, Functor) {
    let fx = load("chain3");
    let (refl, c, sub) = fx.functor("refl").unwrap();
    let (incl, _, _) = fx.functor("incl").unwrap();
    (c, sub, refl, incl)
}

/// Target of the terminal object of `x/S`, found by scanning for an S-arrow
/// through which every other S-arrow out of `x` factors uniquely.
pub fn coslice_terminal(c: &Category, s: &MorphismClass, x: usize) -> Option<usize> {
    let out: Vec<usize> = c.out_of(x).filter(|&m| s.contains(m)).collect();
    out.iter()
        .copied()
        .find(|&t| {
            out.iter().all(|&t2| {
                c.hom(c.tgt(t2), c.tgt(t))
                    .iter()
                    .filter(|&&h| c.compose(h, t2) == Some(t))
                    .count()
                    == 1
            })
        })
        .map(|t| c.tgt(t))
}

/// Source of the initial object of `S/x`.
pub fn slice_initial(c: &Category, s: &MorphismClass, x: usize) -> Option<usize> {
    let into: Vec<usize> = c.into_(x).filter(|&m| s.contains(m)).collect();
    into.iter()
        .copied()
        .find(|&t| {
            into.iter().all(|&t2| {
                c.hom(c.src(t), c.src(t2))
                    .iter()
                    .filter(|&&h| c.compose(t2, h) == Some(t))
                    .count()
                    == 1
            })
        })
        .map(|t| c.src(t))
}

/// Number of roof classes `(t: y -> y' in S, g: x -> y')` under the zig-zag
/// relation generated by common refinements in S.
pub fn roof_classes(c: &Category, s: &[usize], x: usize, y: usize) -> usize {
    let mut roofs = Vec::new();
    for &t in s {
        if c.src(t) != y {
            continue;
        }
        for &g in c.hom(x, c.tgt(t)) {
            roofs.push((t, g));
        }
    }
    let n = roofs.len();
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            let ((t1, g1), (t2, g2)) = (roofs[i], roofs[j]);
            rel[i][j] = i == j
                || c.out_of(c.tgt(t1)).any(|u1| {
                    c.out_of(c.tgt(t2)).any(|u2| {
                        c.tgt(u1) == c.tgt(u2)
                            && c.comp(u1, t1) == c.comp(u2, t2)
                            && s.contains(&c.comp(u1, t1))
                            && c.comp(u1, g1) == c.comp(u2, g2)
                    })
                });
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if (rel[i][k] || rel[k][i]) && (rel[k][j] || rel[j][k]) {
                    rel[i][j] = true;
                }
            }
        }
    }
    let mut seen = vec![false; n];
    let mut count = 0;
    for i in 0..n {
        if !seen[i] {
            count += 1;
            for j in 0..n {
                if rel[i][j] || rel[j][i] {
                    seen[j] = true;
                }
            }
        }
    }
    count
}

/// Count families `a_x ∈ hom(p x, g x)` with `a_y p(m) = g(m) a_x`, by
/// running through the full product of hom sets.
pub fn count_natural(t: &Category, src: &Category, p: &Functor, g: &Functor) -> usize {
    let sets: Vec<Vec<usize>> = src
        .objects()
        .map(|x| t.hom(p.obj[x], g.obj[x]).to_vec())
        .collect();
    let total: usize = sets.iter().map(Vec::len).product();
    let mut count = 0;
    for mut k in 0..total {
        let mut pick = Vec::with_capacity(sets.len());
        for set in &sets {
            pick.push(set[k % set.len()]);
            k /= set.len();
        }
        if src
            .morphisms()
            .all(|m| t.comp(pick[src.tgt(m)], p.mor[m]) == t.comp(g.mor[m], pick[src.src(m)]))
        {
            count += 1;
        }
    }
    count
}
