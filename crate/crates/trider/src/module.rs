//! Finite modules `⊕ R/π^e` and subquotients of free modules.

use serde::{Deserialize, Serialize};

use crate::matrix::{normal_form, Mat, NormalForm};
use crate::ring::CoeffRing;

/// `⊕ R/π^{exps[i]}`. Exponents lie in `1..=k`; `k` means a free summand.
/// Complexes keep factors in whatever order their construction produced;
/// [`FModule::normalized`] sorts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FModule {
    pub exps: Vec<u32>,
}

impl FModule {
    pub fn zero() -> Self {
        FModule { exps: Vec::new() }
    }

    pub fn free(r: &CoeffRing, n: usize) -> Self {
        FModule { exps: vec![r.k; n] }
    }

    pub fn cyclic(e: u32) -> Self {
        FModule { exps: vec![e] }
    }

    /// From factor orders such as `[4, 2]`.
    pub fn from_orders(r: &CoeffRing, orders: &[u64]) -> Result<Self, String> {
        let mut exps = Vec::with_capacity(orders.len());
        for &q in orders {
            let e = (1..=r.k).find(|&e| r.cyclic_order(e) == q);
            match e {
                Some(e) => exps.push(e),
                None => return Err(format!("factor order {q} is not p^e with 1 <= e <= {}", r.k)),
            }
        }
        Ok(FModule { exps })
    }

    /// Parse `z4+z2` (factor orders) or `k` (residue field) or `0`.
    pub fn parse(r: &CoeffRing, s: &str) -> Result<Self, String> {
        if s == "0" {
            return Ok(FModule::zero());
        }
        let mut orders = Vec::new();
        for part in s.split('+') {
            match part {
                "k" => orders.push(r.p),
                "r" | "R" => orders.push(r.order()),
                _ => {
                    let q = part.strip_prefix('z').unwrap_or(part);
                    orders.push(q.parse::<u64>().map_err(|_| format!("bad module factor '{part}'"))?);
                }
            }
        }
        FModule::from_orders(r, &orders)
    }

    pub fn orders(&self, r: &CoeffRing) -> Vec<u64> {
        self.exps.iter().map(|&e| r.cyclic_order(e)).collect()
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_free(&self, r: &CoeffRing) -> bool {
        self.exps.iter().all(|&e| e == r.k)
    }

    /// Number of elements, as a power of `p`.
    pub fn log_order(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn cardinality(&self, r: &CoeffRing) -> u128 {
        (r.p as u128).pow(self.log_order())
    }

    pub fn normalized(&self) -> FModule {
        let mut exps = self.exps.clone();
        exps.sort_unstable_by(|a, b| b.cmp(a));
        FModule { exps }
    }

    pub fn is_normal(&self) -> bool {
        self.exps.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn sum(&self, other: &FModule) -> FModule {
        let mut exps = self.exps.clone();
        exps.extend_from_slice(&other.exps);
        FModule { exps }
    }

    /// `diag(π^{e_i})`, the relations of the presentation.
    pub fn relations(&self, r: &CoeffRing) -> Mat {
        Mat::diag(&self.exps.iter().map(|&e| r.pi_pow(e)).collect::<Vec<_>>())
    }

    pub fn reduce(&self, r: &CoeffRing, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.exps).map(|(&a, &e)| r.reduce(a, e)).collect()
    }

    /// Every element, coordinates in lexicographic order. Codes below
    /// `|R/π^e|` are exactly the canonical representatives modulo `π^e`.
    pub fn elements(&self, r: &CoeffRing) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &e in &self.exps {
            let q = r.cyclic_order(e);
            let mut next = Vec::with_capacity(out.len() * q as usize);
            for v in &out {
                for a in 0..q {
                    let mut w = v.clone();
                    w.push(a);
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }
}

/// Reduce matrix entries modulo the target's factor orders.
pub fn reduce_mat(r: &CoeffRing, a: &Mat, tgt: &FModule) -> Mat {
    let mut m = a.clone();
    for i in 0..a.rows {
        for j in 0..a.cols {
            m.set(i, j, r.reduce(a.get(i, j), tgt.exps[i]));
        }
    }
    m
}

/// Does the matrix define a homomorphism `src -> tgt`?
pub fn is_hom(r: &CoeffRing, a: &Mat, src: &FModule, tgt: &FModule) -> bool {
    if a.rows != tgt.len() || a.cols != src.len() {
        return false;
    }
    (0..a.rows).all(|i| (0..a.cols).all(|j| r.reduce(r.mul(r.pi_pow(src.exps[j]), a.get(i, j)), tgt.exps[i]) == 0))
}

pub fn mat_eq(r: &CoeffRing, a: &Mat, b: &Mat, tgt: &FModule) -> bool {
    (a.rows, a.cols) == (b.rows, b.cols) && reduce_mat(r, a, tgt) == reduce_mat(r, b, tgt)
}

/// `span(gens) / span(rels)` inside a free module `R^n`, put in normal form.
#[derive(Clone, Debug)]
pub struct Sub {
    pub module: FModule,
    /// Ambient vectors of the normal generators, one column each.
    pub lifts: Mat,
    gsolve: NormalForm,
    coord: Mat,
}

impl Sub {
    pub fn new(r: &CoeffRing, gens: &Mat, rels: &Mat) -> Sub {
        let n = gens.rows;
        assert_eq!(rels.rows, n);
        let g = gens.hcat(rels);
        let a = g.cols;
        let pre = normal_form(r, &g.hcat(rels)).kernel(r);
        let k = pre.block(0, 0, a, pre.cols);
        let nf = normal_form(r, &k);
        let mut keep: Vec<(u32, usize)> = (0..a)
            .map(|t| (if t < nf.rank { nf.vals[t] } else { r.k }, t))
            .filter(|&(e, _)| e > 0)
            .collect();
        keep.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        let exps = keep.iter().map(|&(e, _)| e).collect();
        let lifts = Mat::from_cols(n, &keep.iter().map(|&(_, t)| g.apply(r, &nf.u_inv.col(t))).collect::<Vec<_>>());
        let coord = Mat::from_rows(&keep.iter().map(|&(_, t)| nf.u.row(t).to_vec()).collect::<Vec<_>>(), a);
        Sub {
            module: FModule { exps },
            lifts,
            gsolve: normal_form(r, &g),
            coord,
        }
    }

    /// A module presented on its own generators.
    pub fn whole(r: &CoeffRing, m: &FModule) -> Sub {
        Sub::new(r, &Mat::identity(m.len()), &m.relations(r))
    }

    pub fn ambient(&self) -> usize {
        self.lifts.rows
    }

    pub fn contains(&self, r: &CoeffRing, x: &[u64]) -> bool {
        self.gsolve.solve(r, x).is_some()
    }

    /// Normal-form coordinates of an ambient vector lying in `span(gens)`.
    pub fn coords(&self, r: &CoeffRing, x: &[u64]) -> Option<Vec<u64>> {
        let y = self.gsolve.solve(r, x)?;
        Some(self.module.reduce(r, &self.coord.apply(r, &y)))
    }

    pub fn lift(&self, r: &CoeffRing, c: &[u64]) -> Vec<u64> {
        self.lifts.apply(r, c)
    }

    /// Coordinates of every column of `a`; panics when a column is outside.
    pub fn coords_of(&self, r: &CoeffRing, a: &Mat) -> Option<Mat> {
        let cols: Option<Vec<Vec<u64>>> = (0..a.cols).map(|j| self.coords(r, &a.col(j))).collect();
        Some(Mat::from_cols(self.module.len(), &cols?))
    }
}

/// `ker(a: src -> tgt)`, inside the ambient of `src`.
pub fn kernel(r: &CoeffRing, a: &Mat, src: &FModule, tgt: &FModule) -> Sub {
    let n = src.len();
    let k = normal_form(r, &a.hcat(&tgt.relations(r))).kernel(r);
    Sub::new(r, &k.block(0, 0, n, k.cols), &src.relations(r))
}

pub fn image(r: &CoeffRing, a: &Mat, tgt: &FModule) -> Sub {
    Sub::new(r, a, &tgt.relations(r))
}

pub fn cokernel(r: &CoeffRing, a: &Mat, tgt: &FModule) -> Sub {
    Sub::new(r, &Mat::identity(tgt.len()), &a.hcat(&tgt.relations(r)))
}

/// Kernel, image and cokernel of a homomorphism, in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentations {
    pub kernel: FModule,
    pub image: FModule,
    pub cokernel: FModule,
}

pub fn presentations(r: &CoeffRing, a: &Mat, src: &FModule, tgt: &FModule) -> Presentations {
    Presentations {
        kernel: kernel(r, a, src, tgt).module,
        image: image(r, a, tgt).module,
        cokernel: cokernel(r, a, tgt).module,
    }
}

/// Is the map between two normal-form modules bijective?
pub fn is_iso_map(r: &CoeffRing, a: &Mat, src: &FModule, tgt: &FModule) -> bool {
    kernel(r, a, src, tgt).module.is_empty() && cokernel(r, a, tgt).module.is_empty()
}

/// Some `y` with `a y ≡ b` modulo the relations of `tgt`.
pub fn solve_mod(r: &CoeffRing, a: &Mat, tgt: &FModule, b: &[u64]) -> Option<Vec<u64>> {
    let nf = normal_form(r, &a.hcat(&tgt.relations(r)));
    nf.solve(r, b).map(|y| y[..a.cols].to_vec())
}
