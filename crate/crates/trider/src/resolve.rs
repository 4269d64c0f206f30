//! Free resolutions and `Hom_{D^b}(x, y[n])` computed two ways.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::{ChainMap, Complex};
use crate::homotopy::{homotopy_classes, is_qis};
use crate::matrix::Mat;
use crate::module::{cokernel, kernel, FModule};
use crate::ring::CoeffRing;
use crate::TriError;

/// A free complex with a verified quasi-isomorphism to or from the input.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub complex: Complex,
    /// `y -> I` for injective resolutions, `P -> x` for projective ones.
    pub qis: ChainMap,
    /// Degree of the truncation.
    pub window: i32,
}

fn get(m: &BTreeMap<i32, Mat>, p: i32, rows: usize, cols: usize) -> Mat {
    m.get(&p).cloned().unwrap_or_else(|| Mat::zero(rows, cols))
}

/// Free complex `I` with a qis `y -> I`, cut above `window_hi` by replacing
/// `I^w` with `ker d^w`. Built degree by degree so that the cone of `y -> I`
/// is exact: each new `I^p` is a free module containing the cokernel of the
/// previous cone differential.
pub fn injective_resolution(y: &Complex, window_hi: i32) -> Result<Resolution, TriError> {
    let r = y.ring;
    if window_hi < y.hi() {
        return Err(TriError::Precondition(format!("window {window_hi} below the top degree {}", y.hi())));
    }
    if y.is_degreewise_free() {
        return Ok(Resolution {
            complex: y.clone(),
            qis: ChainMap::identity(y),
            window: window_hi,
        });
    }
    let w = window_hi;
    let mut im: BTreeMap<i32, FModule> = BTreeMap::new();
    let mut di: BTreeMap<i32, Mat> = BTreeMap::new();
    let mut f: BTreeMap<i32, Mat> = BTreeMap::new();
    let ir = |im: &BTreeMap<i32, FModule>, p: i32| im.get(&p).cloned().unwrap_or_default();
    for p in y.lo..=w + 1 {
        let (yp, ip) = (y.module(p), ir(&im, p - 1));
        let c = yp.sum(&ip);
        let (ny, ni) = (yp.len(), ip.len());
        let (ny0, ni0) = (y.rank(p - 1), ir(&im, p - 2).len());
        let mut d = Mat::zero(ny + ni, ny0 + ni0);
        d.put(0, 0, &y.d(p - 1).neg(&r));
        d.put(ny, 0, &get(&f, p - 1, ni, ny0));
        d.put(ny, ny0, &get(&di, p - 2, ni, ni0));
        let m = cokernel(&r, &d, &c);
        let g = m.module.len();
        let mut jq = Mat::zero(g, ny + ni);
        for l in 0..ny + ni {
            let mut b = vec![0; ny + ni];
            b[l] = 1;
            let co = m.coords(&r, &b).expect("cokernel of the whole module");
            for (t, &e) in m.module.exps.iter().enumerate() {
                jq.set(t, l, r.mul(r.pi_pow(r.k - e), co[t]));
            }
        }
        im.insert(p, FModule::free(&r, g));
        f.insert(p, jq.block(0, 0, g, ny));
        di.insert(p - 1, jq.block(0, ny, g, ni));
    }
    // kernel-preserving cut at w
    let k = kernel(&r, &di[&w], &im[&w], &im[&(w + 1)]);
    let to_k = |a: &Mat| k.coords_of(&r, a).expect("lands in the kernel");
    let dw1 = to_k(&get(&di, w - 1, im[&w].len(), ir(&im, w - 1).len()));
    let fw = to_k(&get(&f, w, im[&w].len(), y.rank(w)));
    let lo = y.lo;
    let complex = Complex::from_fn(r, lo, w, |p| {
        if p == w {
            (k.module.clone(), None)
        } else if p == w - 1 {
            (ir(&im, p), Some(dw1.clone()))
        } else {
            (ir(&im, p), Some(get(&di, p, ir(&im, p + 1).len(), ir(&im, p).len())))
        }
    });
    let qis = ChainMap {
        maps: (lo..=w).map(|p| (p, if p == w { fw.clone() } else { get(&f, p, ir(&im, p).len(), y.rank(p)) })).collect(),
    };
    complex.check()?;
    qis.check(y, &complex)?;
    if !is_qis(&qis, y, &complex) {
        return Err(TriError::Internal("injective resolution is not a quasi-isomorphism".into()));
    }
    Ok(Resolution { complex, qis, window: w })
}

/// Free complex `P` with a qis `P -> x`, cut below `window_lo` by replacing
/// `P^w` with `coker d^{w-1}`.
pub fn projective_resolution(x: &Complex, window_lo: i32) -> Result<Resolution, TriError> {
    let r = x.ring;
    if window_lo > x.lo {
        return Err(TriError::Precondition(format!("window {window_lo} above the bottom degree {}", x.lo)));
    }
    if x.is_degreewise_free() {
        return Ok(Resolution {
            complex: x.clone(),
            qis: ChainMap::identity(x),
            window: window_lo,
        });
    }
    let w = window_lo;
    let mut pm: BTreeMap<i32, FModule> = BTreeMap::new();
    let mut dp: BTreeMap<i32, Mat> = BTreeMap::new();
    let mut g: BTreeMap<i32, Mat> = BTreeMap::new();
    let pr = |pm: &BTreeMap<i32, FModule>, p: i32| pm.get(&p).cloned().unwrap_or_default();
    let mut p = x.hi();
    while p >= w - 1 {
        let (pp, xp) = (pr(&pm, p + 1), x.module(p));
        let c = pp.sum(&xp);
        let (np, nx) = (pp.len(), xp.len());
        let (np2, nx2) = (pr(&pm, p + 2).len(), x.rank(p + 1));
        let next = pr(&pm, p + 2).sum(&x.module(p + 1));
        let mut d = Mat::zero(np2 + nx2, np + nx);
        d.put(0, 0, &get(&dp, p + 1, np2, np).neg(&r));
        d.put(np2, 0, &get(&g, p + 1, nx2, np));
        d.put(np2, np, &x.d(p));
        let k = kernel(&r, &d, &c, &next);
        let m = k.module.len();
        pm.insert(p, FModule::free(&r, m));
        dp.insert(p, k.lifts.block(0, 0, np, m).neg(&r));
        g.insert(p, k.lifts.block(np, 0, nx, m));
        p -= 1;
    }
    let q = cokernel(&r, &dp[&(w - 1)], &pm[&w]);
    let dw = get(&dp, w, pr(&pm, w + 1).len(), pm[&w].len()).mul(&r, &q.lifts);
    let gw = get(&g, w, x.rank(w), pm[&w].len()).mul(&r, &q.lifts);
    let hi = x.hi();
    let complex = Complex::from_fn(r, w, hi, |p| {
        if p == w {
            (q.module.clone(), Some(dw.clone()))
        } else {
            (pr(&pm, p), Some(get(&dp, p, pr(&pm, p + 1).len(), pr(&pm, p).len())))
        }
    });
    let qis = ChainMap {
        maps: (w..=hi).map(|p| (p, if p == w { gw.clone() } else { get(&g, p, x.rank(p), pr(&pm, p).len()) })).collect(),
    };
    complex.check()?;
    qis.check(&complex, x)?;
    if !is_qis(&qis, &complex, x) {
        return Err(TriError::Internal("projective resolution is not a quasi-isomorphism".into()));
    }
    Ok(Resolution { complex, qis, window: w })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Homotopy classes `x -> I(y)[n]`.
    Injective,
    /// Homotopy classes `P(x) -> y[n]`.
    Projective,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedHom {
    pub route: Route,
    pub n: i32,
    pub window: i32,
    pub module: FModule,
}

impl DerivedHom {
    pub fn cardinality(&self, r: &CoeffRing) -> u128 {
        self.module.cardinality(r)
    }
}

/// `Hom_{D^b}(x, y[n])` with the default window.
pub fn derived_hom(x: &Complex, y: &Complex, n: i32, route: Route) -> Result<DerivedHom, TriError> {
    derived_hom_window(x, y, n, route, 0)
}

/// As [`derived_hom`], with the truncation pushed `extra` degrees further out.
pub fn derived_hom_window(x: &Complex, y: &Complex, n: i32, route: Route, extra: i32) -> Result<DerivedHom, TriError> {
    if x.ring != y.ring {
        return Err(TriError::Precondition("complexes over different rings".into()));
    }
    if x.is_zero() || y.is_zero() {
        return Ok(DerivedHom { route, n, window: 0, module: FModule::zero() });
    }
    match route {
        Route::Injective => {
            let w = (x.hi() + n + 2).max(y.hi()) + extra;
            let res = injective_resolution(y, w)?;
            let c = homotopy_classes(x, &res.complex.shift(n));
            Ok(DerivedHom { route, n, window: w, module: c.module().clone() })
        }
        Route::Projective => {
            let w = (y.lo - n - 2).min(x.lo) - extra;
            let res = projective_resolution(x, w)?;
            let c = homotopy_classes(&res.complex, &y.shift(n));
            Ok(DerivedHom { route, n, window: w, module: c.module().clone() })
        }
    }
}

/// `Ext^n(M, N)`: both modules in degree 0.
pub fn ext(r: CoeffRing, m: &FModule, nm: &FModule, n: i32, route: Route) -> Result<DerivedHom, TriError> {
    derived_hom(&Complex::single(r, m.clone(), 0), &Complex::single(r, nm.clone(), 0), n, route)
}
