//! The Hom complex, homotopy classes and linear solves for maps up to homotopy.

use std::collections::BTreeMap;

use crate::complex::{cone, ChainMap, Complex};
use crate::matrix::Mat;
use crate::module::{solve_mod, FModule, Sub};

/// `Hom^n(X, Y) = ∏_p Hom(X^p, Y^{p+n})`. Coordinates of a block are
/// row-major over `(i, j)`, the factor being `R/π^{min(e_j, f_i)}` with
/// generator entry `π^{max(0, f_i - e_j)}`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub x: Complex,
    pub y: Complex,
    pub complex: Complex,
}

/// A family of matrices `X^p -> Y^{p+n}` keyed by `p`.
pub type Family = BTreeMap<i32, Mat>;

impl HomComplex {
    pub fn new(x: &Complex, y: &Complex) -> HomComplex {
        let r = x.ring;
        let (lo, hi) = if x.is_zero() || y.is_zero() { (0, -1) } else { (y.lo - x.hi(), y.hi() - x.lo) };
        let mut h = HomComplex {
            x: x.clone(),
            y: y.clone(),
            complex: Complex::zero(r),
        };
        if lo > hi {
            return h;
        }
        let modules: Vec<FModule> = (lo..=hi).map(|n| h.block_module(n)).collect();
        let diffs: Vec<Mat> = (lo..hi).map(|n| h.diff(n)).collect();
        h.complex = Complex { ring: r, lo, modules, diffs };
        h
    }

    fn blocks(&self, n: i32) -> impl Iterator<Item = i32> + '_ {
        self.x.degrees().filter(move |&p| self.x.rank(p) > 0 && self.y.rank(p + n) > 0)
    }

    fn block_module(&self, n: i32) -> FModule {
        let mut exps = Vec::new();
        for p in self.blocks(n) {
            let (ex, ey) = (self.x.module(p), self.y.module(p + n));
            for &f in &ey.exps {
                for &e in &ex.exps {
                    exps.push(e.min(f));
                }
            }
        }
        FModule { exps }
    }

    pub fn coords(&self, n: i32, fam: &Family) -> Vec<u64> {
        let r = &self.x.ring;
        let mut out = Vec::new();
        for p in self.blocks(n) {
            let (ex, ey) = (self.x.module(p), self.y.module(p + n));
            let a = fam.get(&p);
            for (i, &f) in ey.exps.iter().enumerate() {
                for (j, &e) in ex.exps.iter().enumerate() {
                    let v = a.map_or(0, |a| r.reduce(a.get(i, j), f));
                    let s = f.saturating_sub(e);
                    out.push(r.reduce(r.div_pi(v, s), e.min(f)));
                }
            }
        }
        out
    }

    pub fn family(&self, n: i32, c: &[u64]) -> Family {
        let r = &self.x.ring;
        let mut out = Family::new();
        let mut k = 0;
        for p in self.blocks(n) {
            let (ex, ey) = (self.x.module(p), self.y.module(p + n));
            let mut a = Mat::zero(ey.len(), ex.len());
            for (i, &f) in ey.exps.iter().enumerate() {
                for (j, &e) in ex.exps.iter().enumerate() {
                    a.set(i, j, r.reduce(r.mul(c[k], r.pi_pow(f.saturating_sub(e))), f));
                    k += 1;
                }
            }
            out.insert(p, a);
        }
        out
    }

    fn get(&self, fam: &Family, p: i32, n: i32) -> Mat {
        match fam.get(&p) {
            Some(m) => m.clone(),
            None => Mat::zero(self.y.rank(p + n), self.x.rank(p)),
        }
    }

    /// `D φ = d_Y φ - (-1)^n φ d_X`.
    pub fn apply_d(&self, n: i32, fam: &Family) -> Family {
        let r = &self.x.ring;
        let sign = if n % 2 == 0 { r.neg(1) } else { 1 };
        let mut out = Family::new();
        for p in self.blocks(n + 1) {
            let a = self.y.d(p + n).mul(r, &self.get(fam, p, n));
            let b = self.get(fam, p + 1, n).mul(r, &self.x.d(p));
            out.insert(p, a.add(r, &b.scale(r, sign)));
        }
        out
    }

    /// Matrix of a linear map `Hom^a(X,Y) -> Hom^b(X',Y')` given on families.
    pub fn matrix_of(&self, a: i32, target: &HomComplex, b: i32, f: impl Fn(&Family) -> Family) -> Mat {
        let src = self.block_module(a);
        let tgt = target.block_module(b);
        let cols: Vec<Vec<u64>> = (0..src.len())
            .map(|j| {
                let mut e = vec![0; src.len()];
                e[j] = 1;
                target.coords(b, &f(&self.family(a, &e)))
            })
            .collect();
        Mat::from_cols(tgt.len(), &cols)
    }

    fn diff(&self, n: i32) -> Mat {
        self.matrix_of(n, self, n + 1, |fam| self.apply_d(n, fam))
    }

    pub fn d(&self, n: i32) -> Mat {
        self.complex.d(n)
    }

    pub fn hom_module(&self, n: i32) -> FModule {
        self.complex.module(n)
    }

    pub fn to_family(f: &ChainMap) -> Family {
        f.maps.clone()
    }

    /// `H^0`, the homotopy classes of chain maps.
    pub fn classes(&self) -> Sub {
        let r = &self.x.ring;
        let c = &self.complex;
        let z = crate::module::kernel(r, &c.d(0), &c.module(0), &c.module(1));
        let b = c.d(-1).hcat(&c.module(0).relations(r));
        Sub::new(r, &z.lifts.hcat(&c.module(0).relations(r)), &b)
    }
}

/// `Hom_{K}(x, y)` in normal form together with the means to name classes.
#[derive(Clone, Debug)]
pub struct HomotopyClasses {
    pub hom: HomComplex,
    pub sub: Sub,
}

impl HomotopyClasses {
    pub fn module(&self) -> &FModule {
        &self.sub.module
    }

    /// The class of a chain map, in normal-form coordinates.
    pub fn class_of(&self, f: &ChainMap) -> Vec<u64> {
        let r = &self.hom.x.ring;
        let c = self.hom.coords(0, &f.maps);
        self.sub.coords(r, &c).expect("chain maps are cycles of the Hom complex")
    }

    /// A chain map representing the class with the given coordinates.
    pub fn representative(&self, c: &[u64]) -> ChainMap {
        let r = &self.hom.x.ring;
        let v = self.sub.lift(r, c);
        ChainMap { maps: self.hom.family(0, &v) }
    }
}

pub fn homotopy_classes(x: &Complex, y: &Complex) -> HomotopyClasses {
    let hom = HomComplex::new(x, y);
    let sub = hom.classes();
    HomotopyClasses { hom, sub }
}

/// Some `h` of degree `-1` with `f = d h + h d`.
pub fn null_homotopy(x: &Complex, y: &Complex, f: &ChainMap) -> Option<Family> {
    let hom = HomComplex::new(x, y);
    let r = &x.ring;
    let target = hom.coords(0, &f.maps);
    if target.is_empty() {
        return Some(Family::new());
    }
    let sol = solve_mod(r, &hom.d(-1), &hom.hom_module(0), &target)?;
    Some(hom.family(-1, &sol))
}

pub fn is_nullhomotopic(x: &Complex, y: &Complex, f: &ChainMap) -> bool {
    null_homotopy(x, y, f).is_some()
}

pub fn homotopic(x: &Complex, y: &Complex, f: &ChainMap, g: &ChainMap) -> bool {
    is_nullhomotopic(x, y, &f.add(&g.neg(x, y), x, y))
}

/// `f` is a quasi-isomorphism iff its cone is acyclic.
pub fn is_qis(f: &ChainMap, x: &Complex, y: &Complex) -> bool {
    cone(f, x, y).is_acyclic()
}

/// Membership in the null system of acyclic complexes.
pub fn in_null_system(x: &Complex) -> bool {
    x.is_acyclic()
}

/// Rank data of a linear system with no solution.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Unsolvable {
    pub what: String,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub augmented_rank: usize,
}

/// Solve for `g: z -> t` with `g∘s ≃ h`, where `s: x -> z`, `h: x -> t`.
pub fn extend_along(
    s: &ChainMap,
    h: &ChainMap,
    x: &Complex,
    z: &Complex,
    t: &Complex,
    what: &str,
) -> Result<ChainMap, Unsolvable> {
    let r = &x.ring;
    let hz = HomComplex::new(z, t);
    let hx = HomComplex::new(x, t);
    // unknowns: g ∈ Hom^0(z,t), k ∈ Hom^{-1}(x,t)
    // equations: D g = 0 in Hom^1(z,t);  g∘s - D k = h in Hom^0(x,t)
    let dz = hz.d(0);
    let comp = hz.matrix_of(0, &hx, 0, |g| {
        let gm = ChainMap { maps: g.clone() };
        gm.after(s, x, z, t).maps
    });
    let dk = hx.d(-1).neg(r);
    let (n0, n1) = (hz.hom_module(0).len(), hx.hom_module(-1).len());
    let (m0, m1) = (hz.hom_module(1).len(), hx.hom_module(0).len());
    let mut a = Mat::zero(m0 + m1, n0 + n1);
    a.put(0, 0, &dz);
    a.put(m0, 0, &comp);
    a.put(m0, n0, &dk);
    let tgt = hz.hom_module(1).sum(&hx.hom_module(0));
    let mut b = vec![0; m0];
    b.extend(hx.coords(0, &h.maps));
    match solve_mod(r, &a, &tgt, &b) {
        Some(sol) => {
            let g = ChainMap { maps: hz.family(0, &sol[..n0]) };
            debug_assert!(g.check(z, t).is_ok());
            Ok(g)
        }
        None => {
            let rank = crate::matrix::normal_form(r, &a.hcat(&tgt.relations(r))).rank;
            let mut aug = a.hcat(&tgt.relations(r));
            aug = aug.hcat(&Mat::from_cols(m0 + m1, &[b]));
            Err(Unsolvable {
                what: what.to_string(),
                unknowns: n0 + n1,
                equations: m0 + m1,
                rank,
                augmented_rank: crate::matrix::normal_form(r, &aug).rank,
            })
        }
    }
}

/// Precomposition `[g] ↦ [g∘s]` on classes, as a matrix between the normal forms.
pub fn precompose_classes(s: &ChainMap, x: &Complex, z: &Complex, t: &Complex) -> (Mat, FModule, FModule) {
    let from = homotopy_classes(z, t);
    let to = homotopy_classes(x, t);
    let cols: Vec<Vec<u64>> = (0..from.module().len())
        .map(|j| {
            let mut e = vec![0; from.module().len()];
            e[j] = 1;
            let g = from.representative(&e);
            to.class_of(&g.after(s, x, z, t))
        })
        .collect();
    (Mat::from_cols(to.module().len(), &cols), from.module().clone(), to.module().clone())
}

/// Postcomposition `[g] ↦ [s∘g]` for `g: w -> x`, `s: x -> z`.
pub fn postcompose_classes(s: &ChainMap, w: &Complex, x: &Complex, z: &Complex) -> (Mat, FModule, FModule) {
    let from = homotopy_classes(w, x);
    let to = homotopy_classes(w, z);
    let cols: Vec<Vec<u64>> = (0..from.module().len())
        .map(|j| {
            let mut e = vec![0; from.module().len()];
            e[j] = 1;
            let g = from.representative(&e);
            to.class_of(&s.after(&g, w, x, z))
        })
        .collect();
    (Mat::from_cols(to.module().len(), &cols), from.module().clone(), to.module().clone())
}
