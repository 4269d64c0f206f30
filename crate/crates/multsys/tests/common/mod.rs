#![allow(dead_code)]

use fincat::{Category, Fixture, MAIN};
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
    let s = MorphismClass::new(&c, &ids, side);
    (c, s)
}

/// Every (fixture, class) pair shipped in the corpus.
pub fn all_classes() -> Vec<(String, String, Category, Vec<usize>)> {
    let mut out = Vec::new();
    for name in FIXTURES {
        let fx = load(name);
        let c = fx.category(MAIN).unwrap();
        for cl in fx.classes.keys() {
            if let Ok(ids) = fx.class(&c, cl) {
                out.push((name.to_string(), cl.clone(), c.clone(), ids));
            }
        }
    }
    out
}

/// Naive right (S3): scan all morphisms for a completing square.
pub fn naive_right_s3(c: &Category, s: &[usize]) -> bool {
    let all: Vec<usize> = c.morphisms().collect();
    s.iter().all(|&sm| {
        all.iter().filter(|&&f| c.src(f) == c.src(sm)).all(|&f| {
            s.iter().any(|&t| {
                c.src(t) == c.tgt(f)
                    && all.iter().any(|&fp| {
                        c.src(fp) == c.tgt(sm)
                            && c.tgt(fp) == c.tgt(t)
                            && c.compose(fp, sm) == c.compose(t, f)
                    })
            })
        })
    })
}

/// Naive right (S4).
pub fn naive_right_s4(c: &Category, s: &[usize]) -> bool {
    let all: Vec<usize> = c.morphisms().collect();
    for &f in &all {
        for &g in &all {
            if c.src(f) != c.src(g) || c.tgt(f) != c.tgt(g) {
                continue;
            }
            let pre = s.iter().any(|&w| c.tgt(w) == c.src(f) && c.compose(f, w) == c.compose(g, w));
            let post = s.iter().any(|&t| c.src(t) == c.tgt(f) && c.compose(t, f) == c.compose(t, g));
            if pre && !post {
                return false;
            }
        }
    }
    true
}

/// Number of roof classes `(t: y -> y' in S, g: x -> y')`, where two roofs are
/// related when some `u1, u2` give `u1 t1 = u2 t2 ∈ S` and `u1 g1 = u2 g2`,
/// closed under transitivity.
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
                if rel[i][k] && rel[k][j] {
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
