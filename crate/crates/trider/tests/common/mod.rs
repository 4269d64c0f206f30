#![allow(dead_code)]

use std::collections::HashSet;

use trider::{ChainMap, CoeffRing, Complex, ComplexFixture, Mat, RingKind};

pub fn load(name: &str) -> ComplexFixture {
    let path = format!(
        "{}/../../fixtures/complexes/{name}.json",
        env!("CARGO_MANIFEST_DIR")
    );
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn z4() -> CoeffRing {
    CoeffRing::cyclic(2, 2)
}

/// Ring arithmetic written out separately from the library: integers mod
/// `p^k`, or pairs `(a, b) = a + bε` packed as `a + p·b`.
#[derive(Clone, Copy)]
pub struct Arith {
    pub p: u64,
    pub k: u32,
    pub dual: bool,
}

impl Arith {
    pub fn of(r: &CoeffRing) -> Self {
        Arith {
            p: r.p,
            k: r.k,
            dual: r.kind == RingKind::Dual,
        }
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.k)
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        if self.dual {
            let p = self.p;
            (x % p + y % p) % p + (x / p + y / p) % p * p
        } else {
            (x + y) % self.size()
        }
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        if self.dual {
            let p = self.p;
            let (a, b, c, d) = (x % p, x / p, y % p, y / p);
            a * c % p + (a * d + b * c) % p * p
        } else {
            x * y % self.size()
        }
    }

    pub fn neg(&self, x: u64) -> u64 {
        (0..self.size()).find(|&y| self.add(x, y) == 0).unwrap()
    }

    /// The uniformizer.
    pub fn pi(&self) -> u64 {
        self.p
    }

    pub fn pi_pow(&self, e: u32) -> u64 {
        (0..e).fold(1, |acc, _| self.mul(acc, self.pi()))
    }

    /// Reduce modulo `π^e`.
    pub fn red(&self, x: u64, e: u32) -> u64 {
        if e >= self.k {
            x
        } else if self.dual {
            if e == 0 {
                0
            } else {
                x % self.p
            }
        } else {
            x % self.p.pow(e)
        }
    }
}

/// All vectors with coordinate `i` ranging over `R/π^{e_i}`.
pub fn all_vectors(a: &Arith, exps: &[u32]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &e in exps {
        let reps: Vec<u64> = (0..a.size()).filter(|&x| a.red(x, e) == x).collect();
        out = out
            .iter()
            .flat_map(|v| reps.iter().map(move |&x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

pub fn apply(a: &Arith, m: &[Vec<u64>], x: &[u64], exps: &[u32]) -> Vec<u64> {
    m.iter()
        .enumerate()
        .map(|(i, row)| {
            a.red(
                row.iter()
                    .zip(x)
                    .fold(0, |s, (&c, &v)| a.add(s, a.mul(c, v))),
                exps[i],
            )
        })
        .collect()
}

/// Exponents of a finite module from the sizes of its `π^j`-torsion:
/// `|M[π^j]| = p^{Σ min(e_i, j)}`. `torsion(j)` returns `|M[π^j]|`.
pub fn structure(a: &Arith, torsion: impl Fn(u32) -> usize) -> Vec<u32> {
    let logs: Vec<u32> = (0..=a.k)
        .map(|j| {
            let n = torsion(j);
            let mut l = 0;
            let mut m = 1;
            while m < n {
                m *= a.p as usize;
                l += 1;
            }
            assert_eq!(m, n, "torsion count is not a power of p");
            l
        })
        .collect();
    let mut exps = Vec::new();
    for j in 1..=a.k {
        let at_least_j = logs[j as usize] - logs[j as usize - 1];
        let more = if j < a.k {
            logs[j as usize + 1] - logs[j as usize]
        } else {
            0
        };
        for _ in 0..at_least_j - more {
            exps.push(j);
        }
    }
    exps.sort_unstable_by(|x, y| y.cmp(x));
    exps
}

fn scale(a: &Arith, c: u64, v: &[u64], exps: &[u32]) -> Vec<u64> {
    v.iter()
        .zip(exps)
        .map(|(&x, &e)| a.red(a.mul(c, x), e))
        .collect()
}

/// Structure of `sub / quo`, both given as explicit sets inside `⊕ R/π^{exps}`.
pub fn quotient_structure(
    a: &Arith,
    sub: &HashSet<Vec<u64>>,
    quo: &HashSet<Vec<u64>>,
    exps: &[u32],
) -> Vec<u32> {
    structure(a, |j| {
        let pj = a.pi_pow(j);
        sub.iter()
            .filter(|x| quo.contains(&scale(a, pj, x, exps)))
            .count()
            / quo.len()
    })
}

/// The span of some vectors in `⊕ R/π^{exps}`.
pub fn span(a: &Arith, gens: &[Vec<u64>], exps: &[u32]) -> HashSet<Vec<u64>> {
    let mut set: HashSet<Vec<u64>> = HashSet::new();
    set.insert(vec![0; exps.len()]);
    for g in gens {
        let mut next = HashSet::new();
        for v in &set {
            for c in 0..a.size() {
                let w: Vec<u64> = v
                    .iter()
                    .zip(g)
                    .zip(exps)
                    .map(|((&x, &y), &e)| a.red(a.add(x, a.mul(c, y)), e))
                    .collect();
                next.insert(w);
            }
        }
        set = next;
    }
    set
}

/// `(kernel, cokernel)` of `m: ⊕R/π^{src} -> ⊕R/π^{tgt}` by enumeration.
pub fn brute_ker_coker(
    a: &Arith,
    m: &[Vec<u64>],
    src: &[u32],
    tgt: &[u32],
) -> (Vec<u32>, Vec<u32>) {
    let zero: HashSet<Vec<u64>> = [vec![0; src.len()]].into_iter().collect();
    let ker: HashSet<Vec<u64>> = all_vectors(a, src)
        .into_iter()
        .filter(|x| apply(a, m, x, tgt).iter().all(|&c| c == 0))
        .collect();
    let cols: Vec<Vec<u64>> = (0..src.len())
        .map(|j| {
            m.iter()
                .enumerate()
                .map(|(i, r)| a.red(r[j], tgt[i]))
                .collect()
        })
        .collect();
    let im = span(a, &cols, tgt);
    let all: HashSet<Vec<u64>> = all_vectors(a, tgt).into_iter().collect();
    (
        quotient_structure(a, &ker, &zero, src),
        quotient_structure(a, &all, &im, tgt),
    )
}

/// `H^p` by enumerating cycles and boundaries.
pub fn brute_cohomology(x: &Complex, p: i32) -> Vec<u32> {
    let a = Arith::of(&x.ring);
    let (e0, e1) = (x.module(p).exps, x.module(p + 1).exps);
    let d = x.d(p).to_rows();
    let z: HashSet<Vec<u64>> = all_vectors(&a, &e0)
        .into_iter()
        .filter(|v| apply(&a, &d, v, &e1).iter().all(|&c| c == 0))
        .collect();
    let dm = x.d(p - 1);
    let cols: Vec<Vec<u64>> = (0..dm.cols)
        .map(|j| (0..dm.rows).map(|i| a.red(dm.get(i, j), e0[i])).collect())
        .collect();
    let b = span(&a, &cols, &e0);
    quotient_structure(&a, &z, &b, &e0)
}

/// Every well-defined matrix `⊕R/π^{src} -> ⊕R/π^{tgt}`, entries reduced.
fn all_homs(a: &Arith, src: &[u32], tgt: &[u32]) -> Vec<Vec<Vec<u64>>> {
    let mut out = vec![vec![vec![0; src.len()]; tgt.len()]];
    for (i, &f) in tgt.iter().enumerate() {
        for (j, &e) in src.iter().enumerate() {
            let ok: Vec<u64> = (0..a.size())
                .filter(|&c| a.red(c, f) == c && a.red(a.mul(a.pi_pow(e), c), f) == 0)
                .collect();
            out = out
                .iter()
                .flat_map(|m| {
                    ok.iter().map(move |&c| {
                        let mut m = m.clone();
                        m[i][j] = c;
                        m
                    })
                })
                .collect();
        }
    }
    out
}

fn matmul(a: &Arith, x: &[Vec<u64>], y: &[Vec<u64>], inner: usize, cols: usize) -> Vec<Vec<u64>> {
    x.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(0, |s, l| a.add(s, a.mul(row[l], y[l][j]))))
                .collect()
        })
        .collect()
}

fn rows(m: &Mat) -> Vec<Vec<u64>> {
    m.to_rows()
}

/// Families `φ^p: x^p -> y^{p+n}` by brute force: each entry runs over the
/// well-defined values.
fn families(a: &Arith, x: &Complex, y: &Complex, n: i32) -> Vec<Vec<(i32, Vec<Vec<u64>>)>> {
    let mut out: Vec<Vec<(i32, Vec<Vec<u64>>)>> = vec![Vec::new()];
    for p in x.degrees() {
        let homs = all_homs(a, &x.module(p).exps, &y.module(p + n).exps);
        out = out
            .iter()
            .flat_map(|f| {
                homs.iter()
                    .map(move |h| [f.clone(), vec![(p, h.clone())]].concat())
            })
            .collect();
    }
    out
}

fn get(f: &[(i32, Vec<Vec<u64>>)], p: i32, r: usize, c: usize) -> Vec<Vec<u64>> {
    f.iter()
        .find(|(q, _)| *q == p)
        .map_or(vec![vec![0; c]; r], |(_, m)| m.clone())
}

/// `|Hom_K(x, y)|`: chain maps counted directly, boundaries `dh + hd`
/// collected as a set.
pub fn brute_classes(x: &Complex, y: &Complex) -> u128 {
    let a = Arith::of(&x.ring);
    let reduce = |m: Vec<Vec<u64>>, exps: &[u32]| -> Vec<Vec<u64>> {
        m.into_iter()
            .enumerate()
            .map(|(i, r)| r.into_iter().map(|c| a.red(c, exps[i])).collect())
            .collect()
    };
    let mut cycles = 0u128;
    for f in families(&a, x, y, 0) {
        let ok = (x.lo - 1..=x.hi()).all(|p| {
            let fy = reduce(
                matmul(
                    &a,
                    &rows(&y.d(p)),
                    &get(&f, p, y.rank(p), x.rank(p)),
                    y.rank(p),
                    x.rank(p),
                ),
                &y.module(p + 1).exps,
            );
            let fx = reduce(
                matmul(
                    &a,
                    &get(&f, p + 1, y.rank(p + 1), x.rank(p + 1)),
                    &rows(&x.d(p)),
                    x.rank(p + 1),
                    x.rank(p),
                ),
                &y.module(p + 1).exps,
            );
            fy == fx
        });
        if ok {
            cycles += 1;
        }
    }
    let mut bounds = HashSet::new();
    for h in families(&a, x, y, -1) {
        let b: Vec<Vec<Vec<u64>>> = x
            .degrees()
            .map(|p| {
                let dh = matmul(
                    &a,
                    &rows(&y.d(p - 1)),
                    &get(&h, p, y.rank(p - 1), x.rank(p)),
                    y.rank(p - 1),
                    x.rank(p),
                );
                let hd = matmul(
                    &a,
                    &get(&h, p + 1, y.rank(p), x.rank(p + 1)),
                    &rows(&x.d(p)),
                    x.rank(p + 1),
                    x.rank(p),
                );
                let s: Vec<Vec<u64>> = (0..y.rank(p))
                    .map(|i| (0..x.rank(p)).map(|j| a.add(dh[i][j], hd[i][j])).collect())
                    .collect();
                reduce(s, &y.module(p).exps)
            })
            .collect();
        bounds.insert(b);
    }
    cycles / bounds.len() as u128
}

/// `|Hom_R(M, N)|` by enumerating matrices.
pub fn brute_hom_count(r: &CoeffRing, src: &[u32], tgt: &[u32]) -> usize {
    all_homs(&Arith::of(r), src, tgt).len()
}

pub fn identity(x: &Complex) -> ChainMap {
    ChainMap::identity(x)
}
