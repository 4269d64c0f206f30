//! Bounded cochain complexes, chain maps, shifts, cones and triangles.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::matrix::Mat;
use crate::module::{image, is_hom, is_iso_map, kernel, mat_eq, FModule, Sub};
use crate::ring::CoeffRing;
use crate::TriError;

/// Modules in degrees `lo..lo + modules.len()`; `diffs[i]` goes from degree
/// `lo + i` to `lo + i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Complex {
    pub ring: CoeffRing,
    pub lo: i32,
    pub modules: Vec<FModule>,
    pub diffs: Vec<Mat>,
}

/// One matrix per degree; missing degrees are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ChainMap {
    pub maps: BTreeMap<i32, Mat>,
}

impl Complex {
    pub fn new(ring: CoeffRing, lo: i32, modules: Vec<FModule>, diffs: Vec<Mat>) -> Result<Self, TriError> {
        let c = Complex { ring, lo, modules, diffs };
        c.check()?;
        Ok(c.trimmed())
    }

    pub fn zero(ring: CoeffRing) -> Self {
        Complex { ring, lo: 0, modules: Vec::new(), diffs: Vec::new() }
    }

    /// `m` placed in degree `p`.
    pub fn single(ring: CoeffRing, m: FModule, p: i32) -> Self {
        Complex { ring, lo: p, modules: vec![m], diffs: Vec::new() }.trimmed()
    }

    /// Build from a closure giving the module and outgoing differential per degree.
    pub fn from_fn(ring: CoeffRing, lo: i32, hi: i32, mut f: impl FnMut(i32) -> (FModule, Option<Mat>)) -> Self {
        let mut modules = Vec::new();
        let mut diffs = Vec::new();
        for p in lo..=hi {
            let (m, d) = f(p);
            modules.push(m);
            if p < hi {
                diffs.push(d.expect("differential below the top degree"));
            }
        }
        let mut c = Complex { ring, lo, modules, diffs };
        for i in 0..c.diffs.len() {
            let (s, t) = (c.modules[i].len(), c.modules[i + 1].len());
            if (c.diffs[i].rows, c.diffs[i].cols) != (t, s) {
                c.diffs[i] = Mat::zero(t, s);
            }
        }
        c.trimmed()
    }

    /// Drop zero modules at both ends.
    fn trimmed(mut self) -> Self {
        while self.modules.last().is_some_and(FModule::is_empty) {
            self.modules.pop();
            self.diffs.pop();
        }
        while self.modules.first().is_some_and(FModule::is_empty) {
            self.modules.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        if self.modules.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.modules.is_empty()
    }

    /// Highest degree (`lo - 1` when empty).
    pub fn hi(&self) -> i32 {
        self.lo + self.modules.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    pub fn module(&self, p: i32) -> FModule {
        self.idx(p).map(|i| self.modules[i].clone()).unwrap_or_default()
    }

    pub fn rank(&self, p: i32) -> usize {
        self.idx(p).map_or(0, |i| self.modules[i].len())
    }

    fn idx(&self, p: i32) -> Option<usize> {
        (p >= self.lo && p <= self.hi()).then(|| (p - self.lo) as usize)
    }

    /// `d^p: X^p -> X^{p+1}`.
    pub fn d(&self, p: i32) -> Mat {
        match self.idx(p) {
            Some(i) if i < self.diffs.len() => self.diffs[i].clone(),
            _ => Mat::zero(self.rank(p + 1), self.rank(p)),
        }
    }

    pub fn is_degreewise_free(&self) -> bool {
        self.modules.iter().all(|m| m.is_free(&self.ring))
    }

    /// Shapes, well-defined differentials and `d∘d = 0`.
    pub fn check(&self) -> Result<(), TriError> {
        let r = &self.ring;
        if self.diffs.len() + 1 != self.modules.len().max(1) {
            return Err(TriError::Malformed("one differential per consecutive pair of degrees".into()));
        }
        for m in &self.modules {
            if m.exps.iter().any(|&e| e == 0 || e > r.k) {
                return Err(TriError::Malformed(format!("factor exponent outside 1..={}", r.k)));
            }
        }
        for p in self.degrees() {
            let d = self.d(p);
            if !is_hom(r, &d, &self.module(p), &self.module(p + 1)) {
                return Err(TriError::Malformed(format!("differential in degree {p} is not well defined")));
            }
            let dd = self.d(p + 1).mul(r, &d);
            if !mat_eq(r, &dd, &Mat::zero(dd.rows, dd.cols), &self.module(p + 2)) {
                return Err(TriError::Malformed(format!("d∘d is not zero in degree {p}")));
            }
        }
        Ok(())
    }

    /// `X[n]`: `X[n]^p = X^{p+n}`, differential multiplied by `(-1)^n`.
    pub fn shift(&self, n: i32) -> Complex {
        let r = &self.ring;
        let diffs = if n % 2 == 0 { self.diffs.clone() } else { self.diffs.iter().map(|d| d.neg(r)).collect() };
        Complex { ring: self.ring, lo: self.lo - n, modules: self.modules.clone(), diffs }
    }

    pub fn direct_sum(&self, y: &Complex) -> Complex {
        if self.is_zero() {
            return y.clone();
        }
        if y.is_zero() {
            return self.clone();
        }
        let (lo, hi) = (self.lo.min(y.lo), self.hi().max(y.hi()));
        Complex::from_fn(self.ring, lo, hi, |p| (self.module(p).sum(&y.module(p)), Some(self.d(p).dsum(&y.d(p)))))
    }

    /// `H^p` for every degree of the support, as subquotients of `X^p`.
    pub fn cohomology_subs(&self) -> BTreeMap<i32, Sub> {
        let r = &self.ring;
        self.degrees()
            .map(|p| {
                let z = kernel(r, &self.d(p), &self.module(p), &self.module(p + 1));
                let b = self.d(p - 1).hcat(&self.module(p).relations(r));
                (p, Sub::new(r, &z.lifts.hcat(&self.module(p).relations(r)), &b))
            })
            .collect()
    }

    /// Nonzero cohomology modules in normal form.
    pub fn cohomology(&self) -> BTreeMap<i32, FModule> {
        self.cohomology_subs()
            .into_iter()
            .filter(|(_, s)| !s.module.is_empty())
            .map(|(p, s)| (p, s.module))
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.cohomology().is_empty()
    }
}

impl ChainMap {
    pub fn zero() -> Self {
        ChainMap::default()
    }

    pub fn identity(x: &Complex) -> Self {
        ChainMap {
            maps: x.degrees().map(|p| (p, Mat::identity(x.rank(p)))).collect(),
        }
    }

    pub fn from_fn(x: &Complex, mut f: impl FnMut(i32) -> Mat) -> Self {
        ChainMap { maps: x.degrees().map(|p| (p, f(p))).collect() }
    }

    /// The matrix in degree `p`, shaped `y^p × x^p`.
    pub fn at(&self, p: i32, x: &Complex, y: &Complex) -> Mat {
        match self.maps.get(&p) {
            Some(m) if (m.rows, m.cols) == (y.rank(p), x.rank(p)) => m.clone(),
            _ => Mat::zero(y.rank(p), x.rank(p)),
        }
    }

    fn degrees(x: &Complex, y: &Complex) -> std::ops::RangeInclusive<i32> {
        x.lo.min(y.lo)..=x.hi().max(y.hi())
    }

    /// Every degree well defined and commuting with the differentials.
    pub fn check(&self, x: &Complex, y: &Complex) -> Result<(), TriError> {
        let r = &x.ring;
        for (&p, m) in &self.maps {
            if (m.rows, m.cols) != (y.rank(p), x.rank(p)) && !m.is_zero() {
                return Err(TriError::Malformed(format!("chain map has the wrong shape in degree {p}")));
            }
        }
        for p in Self::degrees(x, y) {
            if !is_hom(r, &self.at(p, x, y), &x.module(p), &y.module(p)) {
                return Err(TriError::Malformed(format!("chain map is not well defined in degree {p}")));
            }
            let a = y.d(p).mul(r, &self.at(p, x, y));
            let b = self.at(p + 1, x, y).mul(r, &x.d(p));
            if !mat_eq(r, &a, &b, &y.module(p + 1)) {
                return Err(TriError::Malformed(format!("chain map does not commute with d in degree {p}")));
            }
        }
        Ok(())
    }

    /// `self ∘ f` for `f: x -> y`, `self: y -> z`.
    pub fn after(&self, f: &ChainMap, x: &Complex, y: &Complex, z: &Complex) -> ChainMap {
        let r = &x.ring;
        ChainMap {
            maps: x.degrees().map(|p| (p, self.at(p, y, z).mul(r, &f.at(p, x, y)))).collect(),
        }
    }

    pub fn add(&self, g: &ChainMap, x: &Complex, y: &Complex) -> ChainMap {
        let r = &x.ring;
        ChainMap {
            maps: x.degrees().map(|p| (p, self.at(p, x, y).add(r, &g.at(p, x, y)))).collect(),
        }
    }

    pub fn neg(&self, x: &Complex, y: &Complex) -> ChainMap {
        let r = &x.ring;
        ChainMap {
            maps: x.degrees().map(|p| (p, self.at(p, x, y).neg(r))).collect(),
        }
    }

    /// `f[n]: x[n] -> y[n]`, with no sign.
    pub fn shift(&self, n: i32) -> ChainMap {
        ChainMap {
            maps: self.maps.iter().map(|(&p, m)| (p - n, m.clone())).collect(),
        }
    }

    pub fn dsum(&self, g: &ChainMap, x: (&Complex, &Complex), y: (&Complex, &Complex)) -> ChainMap {
        let src = x.0.direct_sum(x.1);
        ChainMap {
            maps: src.degrees().map(|p| (p, self.at(p, x.0, y.0).dsum(&g.at(p, x.1, y.1)))).collect(),
        }
    }

    pub fn equals(&self, g: &ChainMap, x: &Complex, y: &Complex) -> bool {
        Self::degrees(x, y).all(|p| mat_eq(&x.ring, &self.at(p, x, y), &g.at(p, x, y), &y.module(p)))
    }

    /// `H^p(f)` as a matrix between the normal forms of `H^p(x)` and `H^p(y)`.
    pub fn on_cohomology(&self, x: &Complex, y: &Complex) -> BTreeMap<i32, (Mat, FModule, FModule)> {
        let r = &x.ring;
        let hx = x.cohomology_subs();
        let hy = y.cohomology_subs();
        let mut out = BTreeMap::new();
        for p in Self::degrees(x, y) {
            let empty = Sub::whole(r, &FModule::zero());
            let sx = hx.get(&p).unwrap_or(&empty);
            let sy = hy.get(&p).unwrap_or(&empty);
            let img = if sx.module.is_empty() || sy.ambient() == 0 {
                Mat::zero(sy.module.len(), sx.module.len())
            } else {
                let m = self.at(p, x, y).mul(r, &sx.lifts);
                sy.coords_of(r, &m).expect("cycles go to cycles")
            };
            out.insert(p, (img, sx.module.clone(), sy.module.clone()));
        }
        out
    }

    /// Every `H^p(f)` bijective.
    pub fn is_cohomology_iso(&self, x: &Complex, y: &Complex) -> bool {
        let r = &x.ring;
        self.on_cohomology(x, y).values().all(|(m, s, t)| is_iso_map(r, m, s, t))
    }
}

/// `Cone(f)^p = X^{p+1} ⊕ Y^p`, `d = [[-d_X, 0], [f, d_Y]]`.
pub fn cone(f: &ChainMap, x: &Complex, y: &Complex) -> Complex {
    let r = &x.ring;
    let (lo, hi) = ((x.lo - 1).min(y.lo), (x.hi() - 1).max(y.hi()));
    if x.is_zero() && y.is_zero() {
        return Complex::zero(x.ring);
    }
    Complex::from_fn(x.ring, lo, hi, |p| {
        let m = x.module(p + 1).sum(&y.module(p));
        let (a, b) = (x.rank(p + 1), y.rank(p));
        let (a2, b2) = (x.rank(p + 2), y.rank(p + 1));
        let mut d = Mat::zero(a2 + b2, a + b);
        d.put(0, 0, &x.d(p + 1).neg(r));
        d.put(a2, 0, &f.at(p + 1, x, y));
        d.put(a2, a, &y.d(p));
        (m, Some(d))
    })
}

/// `X -f-> Y -i-> Cone(f) -π-> X[1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triangle {
    pub x: Complex,
    pub y: Complex,
    pub z: Complex,
    pub f: ChainMap,
    pub g: ChainMap,
    pub h: ChainMap,
}

impl Triangle {
    pub fn build(x: &Complex, y: &Complex, f: &ChainMap) -> Result<Triangle, TriError> {
        f.check(x, y)?;
        let z = cone(f, x, y);
        let g = ChainMap::from_fn(&z, |p| {
            let mut m = Mat::zero(z.rank(p), y.rank(p));
            m.put(x.rank(p + 1), 0, &Mat::identity(y.rank(p)));
            m
        });
        let x1 = x.shift(1);
        let h = ChainMap::from_fn(&z, |p| {
            let mut m = Mat::zero(x1.rank(p), z.rank(p));
            m.put(0, 0, &Mat::identity(x.rank(p + 1)));
            m
        });
        let t = Triangle { x: x.clone(), y: y.clone(), z, f: f.clone(), g, h };
        t.check()?;
        Ok(t)
    }

    /// All three maps are chain maps and the shapes line up.
    pub fn check(&self) -> Result<(), TriError> {
        self.f.check(&self.x, &self.y)?;
        self.g.check(&self.y, &self.z)?;
        self.h.check(&self.z, &self.x.shift(1))
    }

    /// `Y -g-> Z -h-> X[1] -(-f[1])-> Y[1]`.
    pub fn rotate(&self) -> Triangle {
        let x1 = self.x.shift(1);
        let y1 = self.y.shift(1);
        Triangle {
            x: self.y.clone(),
            y: self.z.clone(),
            z: x1.clone(),
            f: self.g.clone(),
            g: self.h.clone(),
            h: self.f.shift(1).neg(&x1, &y1),
        }
    }
}

/// The image of `f` in degree `p` as a normal-form module, used in reports.
pub fn image_module(f: &ChainMap, p: i32, x: &Complex, y: &Complex) -> FModule {
    image(&x.ring, &f.at(p, x, y), &y.module(p)).module
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4() -> CoeffRing {
        CoeffRing::cyclic(2, 2)
    }

    fn times(a: u64) -> Complex {
        let r = z4();
        Complex::new(r, 0, vec![FModule::free(&r, 1); 2], vec![Mat::diag(&[a])]).unwrap()
    }

    #[test]
    fn cohomology_of_times_two() {
        let h = times(2).cohomology();
        assert_eq!(h.get(&0), Some(&FModule::cyclic(1)));
        assert_eq!(h.get(&1), Some(&FModule::cyclic(1)));
        assert!(times(1).is_acyclic());
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let x = times(2);
        let t = Triangle::build(&x, &x, &ChainMap::identity(&x)).unwrap();
        assert!(t.z.is_acyclic());
        let r = t.rotate();
        r.check().unwrap();
        r.rotate().check().unwrap();
    }

    #[test]
    fn shift_inverts() {
        let x = times(2);
        assert_eq!(x.shift(3).shift(-3), x);
    }
}
