//! JSON form of complexes: `{ring: {kind, p, k}, degrees: {"0": {factors: [4, 2]}}, differentials: {"0": [[..]]}}`.
//!
//! Factors are given as orders. The differential keyed `p` leaves degree `p`;
//! rows index the generators of degree `p + 1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{ChainMap, Complex};
use crate::matrix::Mat;
use crate::module::FModule;
use crate::ring::CoeffRing;
use crate::TriError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeData {
    pub factors: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexData {
    pub ring: CoeffRing,
    pub degrees: BTreeMap<String, DegreeData>,
    #[serde(default)]
    pub differentials: BTreeMap<String, Vec<Vec<u64>>>,
}

fn degree(s: &str) -> Result<i32, TriError> {
    s.parse().map_err(|_| TriError::Malformed(format!("degree key '{s}' is not an integer")))
}

fn matrix(rows: &[Vec<u64>], nrows: usize, ncols: usize, what: &str) -> Result<Mat, TriError> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(TriError::Malformed(format!("{what} must be {nrows}×{ncols}")));
    }
    Ok(Mat::from_rows(rows, ncols))
}

impl ComplexData {
    pub fn to_complex(&self) -> Result<Complex, TriError> {
        let r = self.ring;
        r.check()?;
        let mut mods = BTreeMap::new();
        for (k, d) in &self.degrees {
            let m = FModule::from_orders(&r, &d.factors).map_err(|e| TriError::Malformed(format!("degree {k}: {e}")))?;
            mods.insert(degree(k)?, m);
        }
        let (Some(&lo), Some(&hi)) = (mods.keys().next(), mods.keys().last()) else {
            return Ok(Complex::zero(r));
        };
        let modules: Vec<FModule> = (lo..=hi).map(|p| mods.get(&p).cloned().unwrap_or_default()).collect();
        let mut diffs: Vec<Mat> = (lo..hi).map(|p| Mat::zero(modules[(p - lo + 1) as usize].len(), modules[(p - lo) as usize].len())).collect();
        for (k, rows) in &self.differentials {
            let p = degree(k)?;
            if p < lo || p >= hi {
                if rows.iter().flatten().any(|&a| a != 0) {
                    return Err(TriError::Malformed(format!("differential {k} leaves the support")));
                }
                continue;
            }
            let i = (p - lo) as usize;
            diffs[i] = matrix(rows, modules[i + 1].len(), modules[i].len(), &format!("differential {k}"))?;
        }
        Complex::new(r, lo, modules, diffs)
    }

    pub fn from_complex(x: &Complex) -> Self {
        let r = &x.ring;
        ComplexData {
            ring: x.ring,
            degrees: x
                .degrees()
                .map(|p| (p.to_string(), DegreeData { factors: x.module(p).orders(r) }))
                .collect(),
            differentials: x.degrees().filter(|&p| p < x.hi()).map(|p| (p.to_string(), x.d(p).to_rows())).collect(),
        }
    }
}

/// A chain map given by matrices keyed by degree.
pub fn chain_map(data: &BTreeMap<String, Vec<Vec<u64>>>, x: &Complex, y: &Complex) -> Result<ChainMap, TriError> {
    let mut f = ChainMap::zero();
    for (k, rows) in data {
        let p = degree(k)?;
        f.maps.insert(p, matrix(rows, y.rank(p), x.rank(p), &format!("map in degree {k}"))?);
    }
    f.check(x, y)?;
    Ok(f)
}

/// A chain map between two named complexes of a fixture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapData {
    pub src: String,
    pub tgt: String,
    #[serde(default)]
    pub degrees: BTreeMap<String, Vec<Vec<u64>>>,
}

/// A file of named complexes and chain maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFixture {
    pub schema_version: u32,
    #[serde(default)]
    pub description: String,
    pub complexes: BTreeMap<String, ComplexData>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapData>,
}

impl ComplexFixture {
    pub fn complex(&self, name: &str) -> Result<Complex, TriError> {
        self.complexes
            .get(name)
            .ok_or_else(|| TriError::Malformed(format!("no complex named '{name}'")))?
            .to_complex()
            .map_err(|e| TriError::Malformed(format!("complex '{name}': {e}")))
    }

    /// `(f, source, target)`.
    pub fn map(&self, name: &str) -> Result<(ChainMap, Complex, Complex), TriError> {
        let m = self.maps.get(name).ok_or_else(|| TriError::Malformed(format!("no map named '{name}'")))?;
        let (x, y) = (self.complex(&m.src)?, self.complex(&m.tgt)?);
        let f = chain_map(&m.degrees, &x, &y).map_err(|e| TriError::Malformed(format!("map '{name}': {e}")))?;
        Ok((f, x, y))
    }
}
