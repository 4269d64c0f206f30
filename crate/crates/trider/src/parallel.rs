//! Complexes of ind-modules on a common finite filtered index, their
//! parallelization into an inductive system of complexes, and comparisons.

use std::collections::HashMap;

use serde::Serialize;

use fincat::{classify_filtered, colimit_raw, Budget, Category};

use crate::complex::{ChainMap, Complex};
use crate::homotopy::{extend_along, homotopy_classes, is_qis};
use crate::matrix::Mat;
use crate::module::{is_hom, mat_eq, FModule, Sub};
use crate::resolve::injective_resolution;
use crate::ring::CoeffRing;
use crate::TriError;

/// One degree: a module per index object, a transition matrix per index
/// morphism, and the differential to the next degree per index object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndDegree {
    pub modules: Vec<FModule>,
    pub transitions: Vec<Mat>,
    pub differential: Vec<Mat>,
}

/// A bounded complex whose terms are ind-modules over `index`, degrees
/// `lo..lo + degrees.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndComplex {
    pub ring: CoeffRing,
    #[serde(skip)]
    pub index: Category,
    pub lo: i32,
    pub degrees: Vec<IndDegree>,
}

/// The inductive system of complexes `i ↦ X_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParallelComplex {
    pub ring: CoeffRing,
    #[serde(skip)]
    pub index: Category,
    pub lo: i32,
    pub hi: i32,
    pub stages: Vec<Complex>,
    pub transitions: Vec<ChainMap>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UniformBound {
    pub lo: i32,
    pub hi: i32,
    /// Every stage is supported in `[lo, lo + width - 1]`.
    pub width: u32,
}

impl IndComplex {
    /// The same complex at every object, identity transitions.
    pub fn constant(index: &Category, x: &Complex) -> IndComplex {
        IndComplex {
            ring: x.ring,
            index: index.clone(),
            lo: x.lo,
            degrees: x
                .degrees()
                .map(|p| IndDegree {
                    modules: vec![x.module(p); index.num_objects()],
                    transitions: vec![Mat::identity(x.rank(p)); index.num_morphisms()],
                    differential: vec![x.d(p); index.num_objects()],
                })
                .collect(),
        }
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.degrees.len() as i32 - 1
    }

    fn rank(&self, p: i32, i: usize) -> usize {
        self.degree(p).map_or(0, |d| d.modules[i].len())
    }

    fn degree(&self, p: i32) -> Option<&IndDegree> {
        (p >= self.lo && p <= self.hi()).then(|| &self.degrees[(p - self.lo) as usize])
    }
}

fn malformed(s: String) -> TriError {
    TriError::Malformed(s)
}

/// `J`: read the degreewise data as one complex per index object.
pub fn complex_parallelize(x: &IndComplex) -> Result<ParallelComplex, TriError> {
    let c = &x.index;
    let r = x.ring;
    if !classify_filtered(c).filtrant {
        return Err(TriError::Precondition("index category is not filtered".into()));
    }
    for (k, d) in x.degrees.iter().enumerate() {
        let p = x.lo + k as i32;
        if d.modules.len() != c.num_objects() || d.transitions.len() != c.num_morphisms() || d.differential.len() != c.num_objects() {
            return Err(malformed(format!("degree {p}: one entry per index object or morphism")));
        }
        for m in c.morphisms() {
            let (s, t) = (c.src(m), c.tgt(m));
            if !is_hom(&r, &d.transitions[m], &d.modules[s], &d.modules[t]) {
                return Err(malformed(format!("degree {p}: transition {} is not a homomorphism", c.mor_name(m))));
            }
            if c.is_identity(m) && !mat_eq(&r, &d.transitions[m], &Mat::identity(d.modules[s].len()), &d.modules[s]) {
                return Err(malformed(format!("degree {p}: identity {} acts nontrivially", c.mor_name(m))));
            }
        }
        for (g, f, gf) in c.table() {
            let comp = d.transitions[g].mul(&r, &d.transitions[f]);
            if !mat_eq(&r, &comp, &d.transitions[gf], &d.modules[c.tgt(g)]) {
                return Err(malformed(format!(
                    "degree {p}: transitions do not compose at {}∘{}",
                    c.mor_name(g),
                    c.mor_name(f)
                )));
            }
        }
        for m in c.morphisms() {
            let (s, t) = (c.src(m), c.tgt(m));
            let ds = &d.differential[s];
            let dt = &d.differential[t];
            let next = x.degree(p + 1);
            let (ns, nt) = (x.rank(p + 1, s), x.rank(p + 1, t));
            if (ds.rows, ds.cols) != (ns, d.modules[s].len()) {
                return Err(malformed(format!("degree {p}: differential at {} has the wrong shape", c.obj_name(s))));
            }
            let tm1 = next.map_or(Mat::zero(nt, ns), |n| n.transitions[m].clone());
            let a = tm1.mul(&r, ds);
            let b = dt.mul(&r, &d.transitions[m]);
            let tgt = next.map_or(FModule::zero(), |n| n.modules[t].clone());
            if !mat_eq(&r, &a, &b, &tgt) {
                return Err(malformed(format!("degree {p}: differential does not commute with {}", c.mor_name(m))));
            }
        }
    }
    let (lo, hi) = (x.lo, x.hi());
    let mut stages = Vec::with_capacity(c.num_objects());
    for i in c.objects() {
        let modules = x.degrees.iter().map(|d| d.modules[i].clone()).collect();
        let diffs = x.degrees.iter().take(x.degrees.len().saturating_sub(1)).map(|d| d.differential[i].clone()).collect();
        stages.push(Complex::new(r, lo, modules, diffs).map_err(|e| malformed(format!("stage {}: {e}", c.obj_name(i))))?);
    }
    let transitions = c
        .morphisms()
        .map(|m| ChainMap {
            maps: x.degrees.iter().enumerate().map(|(k, d)| (lo + k as i32, d.transitions[m].clone())).collect(),
        })
        .collect();
    Ok(ParallelComplex { ring: r, index: c.clone(), lo, hi, stages, transitions })
}

impl ParallelComplex {
    /// Back to degreewise ind-modules over the original window.
    pub fn reassemble(&self) -> IndComplex {
        let c = &self.index;
        IndComplex {
            ring: self.ring,
            index: c.clone(),
            lo: self.lo,
            degrees: (self.lo..=self.hi)
                .map(|p| IndDegree {
                    modules: self.stages.iter().map(|s| s.module(p)).collect(),
                    transitions: c
                        .morphisms()
                        .map(|m| self.transitions[m].at(p, &self.stages[c.src(m)], &self.stages[c.tgt(m)]))
                        .collect(),
                    differential: self
                        .stages
                        .iter()
                        .map(|s| if p < self.hi { s.d(p) } else { Mat::zero(0, s.rank(p)) })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn uniform_bound(&self) -> UniformBound {
        let live: Vec<&Complex> = self.stages.iter().filter(|s| !s.is_zero()).collect();
        match (live.iter().map(|s| s.lo).min(), live.iter().map(|s| s.hi()).max()) {
            (Some(lo), Some(hi)) => UniformBound { lo, hi, width: (hi - lo + 1) as u32 },
            _ => UniformBound { lo: 0, hi: -1, width: 0 },
        }
    }

    /// The unique morphism `i -> t`, when `t` is terminal.
    fn to_terminal(&self, i: usize, t: usize) -> usize {
        self.index.hom(i, t)[0]
    }

    /// Degreewise colimit `lim→ X_i` with its insertions.
    pub fn colimit(&self) -> (Complex, Vec<ChainMap>) {
        let c = &self.index;
        let r = self.ring;
        let mut subs: Vec<Sub> = Vec::new();
        let mut offsets: Vec<Vec<usize>> = Vec::new();
        for p in self.lo..=self.hi + 1 {
            let mut off = Vec::new();
            let mut n = 0;
            for s in &self.stages {
                off.push(n);
                n += s.rank(p);
            }
            let mut rels = Vec::new();
            for (i, s) in self.stages.iter().enumerate() {
                for (e, &x) in s.module(p).exps.iter().enumerate() {
                    let mut v = vec![0; n];
                    v[off[i] + e] = r.pi_pow(x);
                    rels.push(v);
                }
            }
            for m in c.morphisms().filter(|&m| !c.is_identity(m)) {
                let (i, j) = (c.src(m), c.tgt(m));
                let t = self.transitions[m].at(p, &self.stages[i], &self.stages[j]);
                for e in 0..self.stages[i].rank(p) {
                    let mut v = vec![0; n];
                    v[off[i] + e] = 1;
                    for (l, a) in t.col(e).into_iter().enumerate() {
                        v[off[j] + l] = r.sub(v[off[j] + l], a);
                    }
                    rels.push(v);
                }
            }
            subs.push(Sub::new(&r, &Mat::identity(n), &Mat::from_cols(n, &rels)));
            offsets.push(off);
        }
        let at = |p: i32| (p - self.lo) as usize;
        let complex = Complex::from_fn(r, self.lo, self.hi, |p| {
            let (s, t) = (&subs[at(p)], &subs[at(p + 1)]);
            let mut d = Mat::zero(t.ambient(), s.ambient());
            for (i, st) in self.stages.iter().enumerate() {
                d.put(offsets[at(p + 1)][i], offsets[at(p)][i], &st.d(p));
            }
            let img = d.mul(&r, &s.lifts);
            (s.module.clone(), Some(t.coords_of(&r, &img).expect("differential descends")))
        });
        let ins = self
            .stages
            .iter()
            .enumerate()
            .map(|(i, st)| {
                ChainMap::from_fn(st, |p| {
                    let s = &subs[at(p)];
                    let mut e = Mat::zero(s.ambient(), st.rank(p));
                    e.put(offsets[at(p)][i], 0, &Mat::identity(st.rank(p)));
                    s.coords_of(&r, &e).expect("insertion")
                })
            })
            .collect();
        (complex, ins)
    }
}

/// An ind-morphism of systems: for each source object, a target object and a
/// chain map between the stages.
#[derive(Clone, Debug)]
pub struct IndChainMorphism {
    pub comps: Vec<(usize, ChainMap)>,
}

pub fn terminal_object(c: &Category) -> Option<usize> {
    c.objects().find(|&t| c.objects().all(|x| c.hom(x, t).len() == 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HpReport {
    pub applicable: bool,
    /// Components agree after pushing to the terminal stage.
    pub natural: bool,
    /// Cone of the terminal component is acyclic.
    pub iso: bool,
    pub all_hp_iso: bool,
    pub agree: bool,
    /// A map `g: Y_t -> I(X_t)` with `g∘φ_t ≃ ι`, i.e. the inverse as a fraction.
    pub inverse_exhibited: bool,
}

/// Decide whether `phi: a -> b` is an isomorphism in ind(D^b) when both
/// indices have terminal objects.
pub fn hp_probe(a: &ParallelComplex, b: &ParallelComplex, phi: &IndChainMorphism) -> Result<HpReport, TriError> {
    let (Some(ta), Some(tb)) = (terminal_object(&a.index), terminal_object(&b.index)) else {
        return Ok(HpReport { applicable: false, natural: false, iso: false, all_hp_iso: false, agree: false, inverse_exhibited: false });
    };
    if phi.comps.len() != a.index.num_objects() {
        return Err(TriError::Malformed("one component per source object".into()));
    }
    let push = |i: usize| -> Result<ChainMap, TriError> {
        let (j, f) = &phi.comps[i];
        f.check(&a.stages[i], &b.stages[*j])?;
        let m = b.to_terminal(*j, tb);
        Ok(b.transitions[m].after(f, &a.stages[i], &b.stages[*j], &b.stages[tb]))
    };
    let ft = push(ta)?;
    let (xt, yt) = (&a.stages[ta], &b.stages[tb]);
    let mut natural = true;
    for m in a.index.morphisms() {
        let (i, i2) = (a.index.src(m), a.index.tgt(m));
        let lhs = push(i2)?.after(&a.transitions[m], &a.stages[i], &a.stages[i2], yt);
        natural &= lhs.equals(&push(i)?, &a.stages[i], yt);
    }
    let iso = is_qis(&ft, xt, yt);
    let all_hp_iso = ft.is_cohomology_iso(xt, yt);
    let mut inverse_exhibited = false;
    if iso {
        let w = xt.hi().max(yt.hi()) + 2;
        let res = injective_resolution(xt, w)?;
        inverse_exhibited = extend_along(&ft, &res.qis, xt, yt, &res.complex, "inverse").is_ok();
    }
    Ok(HpReport {
        applicable: true,
        natural,
        iso,
        all_hp_iso,
        agree: iso == all_hp_iso,
        inverse_exhibited,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomComparison {
    /// `|lim→_i Hom_K(X, Z_i)|`.
    pub colimit: usize,
    /// `|Hom_K(X, lim→ Z)|`.
    pub direct: usize,
    pub well_defined: bool,
    pub bijective: bool,
}

/// `Hom_{K^b(Ind)}(X, Z) ≅ Hom_{ind K^b}(X, JZ)` for a constant `X`.
pub fn hom_comparison(x: &Complex, z: &ParallelComplex, budget: &Budget) -> Result<HomComparison, TriError> {
    let r = z.ring;
    let c = &z.index;
    let (colim, ins) = z.colimit();
    let direct = homotopy_classes(x, &colim);
    let classes: Vec<_> = z.stages.iter().map(|s| homotopy_classes(x, s)).collect();
    let elems: Vec<Vec<Vec<u64>>> = classes.iter().map(|h| h.module().elements(&r)).collect();
    let pos: Vec<HashMap<Vec<u64>, usize>> =
        elems.iter().map(|es| es.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect()).collect();
    let mut arrows = Vec::new();
    for m in c.morphisms().filter(|&m| !c.is_identity(m)) {
        let (i, j) = (c.src(m), c.tgt(m));
        let mut tab = Vec::with_capacity(elems[i].len());
        for e in &elems[i] {
            budget.tick()?;
            let f = classes[i].representative(e);
            let g = z.transitions[m].after(&f, x, &z.stages[i], &z.stages[j]);
            tab.push(pos[j][&classes[j].class_of(&g)]);
        }
        arrows.push((i, j, tab));
    }
    let sizes: Vec<usize> = elems.iter().map(Vec::len).collect();
    let col = colimit_raw(&sizes, &arrows);
    let mut image: Vec<Option<Vec<u64>>> = vec![None; col.len()];
    let mut well_defined = true;
    for i in c.objects() {
        for (k, e) in elems[i].iter().enumerate() {
            budget.tick()?;
            let f = classes[i].representative(e);
            let g = ins[i].after(&f, x, &z.stages[i], &colim);
            let cls = direct.class_of(&g);
            let slot = &mut image[col.cocone[i][k]];
            match slot {
                None => *slot = Some(cls),
                Some(prev) => well_defined &= *prev == cls,
            }
        }
    }
    let mut hit: Vec<Vec<u64>> = image.into_iter().flatten().collect();
    hit.sort();
    hit.dedup();
    let total = direct.module().elements(&r).len();
    Ok(HomComparison {
        colimit: col.len(),
        direct: total,
        well_defined,
        bijective: well_defined && hit.len() == col.len() && col.len() == total,
    })
}
