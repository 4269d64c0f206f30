//! Inertness via retractions, and closure of properties under triangles.

use serde::Serialize;

use crate::complex::{ChainMap, Complex, Triangle};
use crate::homotopy::{extend_along, homotopic, is_qis, postcompose_classes};
use crate::matrix::Mat;
use crate::module::{image, is_iso_map, kernel, mat_eq, FModule};
use crate::resolve::injective_resolution;
use crate::TriError;

/// The menu of quasi-isomorphisms out of a free complex `i`.
#[derive(Clone, Debug)]
pub enum Sample {
    Identity,
    /// `i -> i ⊕ Cone(id_W)`.
    Padding(Complex),
    /// `i -> Cyl(g)` for a qis `g: i -> target`.
    Cylinder { target: Complex, map: ChainMap },
    /// Any verified qis `i -> z`.
    Custom { name: String, z: Complex, s: ChainMap },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleResult {
    pub sample: String,
    pub degrees: (i32, i32),
    pub retraction_found: bool,
    /// `r` is the projection onto the first summand (padding samples only).
    pub is_projection: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RetractionReport {
    pub samples: Vec<SampleResult>,
    pub ok: bool,
}

fn inclusion(z: &Complex, i: &Complex) -> ChainMap {
    ChainMap::from_fn(i, |p| {
        let mut m = Mat::zero(z.rank(p), i.rank(p));
        m.put(0, 0, &Mat::identity(i.rank(p)));
        m
    })
}

/// Build the sample complex and the qis `s: i -> z`.
pub fn sample_qis(i: &Complex, sample: &Sample) -> Result<(String, Complex, ChainMap), TriError> {
    let (name, z, s) = match sample {
        Sample::Identity => ("identity".to_string(), i.clone(), ChainMap::identity(i)),
        Sample::Padding(w) => {
            let c = Triangle::build(w, w, &ChainMap::identity(w))?.z;
            let z = if i.is_zero() { c } else { i.direct_sum(&c) };
            let s = inclusion(&z, i);
            ("padding".to_string(), z, s)
        }
        Sample::Cylinder { target, map } => {
            map.check(i, target)?;
            // Cyl(g) = Cone(Cone(g)[-1] -> i)
            let c = Triangle::build(i, target, map)?.z.shift(-1);
            let alpha = ChainMap::from_fn(&c, |p| {
                let mut m = Mat::zero(i.rank(p), c.rank(p));
                m.put(0, 0, &Mat::identity(i.rank(p)));
                m
            });
            let t = Triangle::build(&c, i, &alpha)?;
            ("cylinder".to_string(), t.z.clone(), t.g.clone())
        }
        Sample::Custom { name, z, s } => (name.clone(), z.clone(), s.clone()),
    };
    s.check(i, &z)?;
    if !is_qis(&s, i, &z) {
        return Err(TriError::Precondition(format!("sample '{name}' is not a quasi-isomorphism")));
    }
    Ok((name, z, s))
}

/// For each sample `s: i -> z`, solve for `r: z -> i` with `r∘s ≃ id`.
pub fn inert_retraction_probe(i: &Complex, samples: &[Sample]) -> Result<RetractionReport, TriError> {
    if !i.is_degreewise_free() {
        return Err(TriError::Precondition("complex is not degreewise free".into()));
    }
    let mut out = Vec::new();
    for sample in samples {
        let (name, z, s) = sample_qis(i, sample)?;
        let id = ChainMap::identity(i);
        let r = extend_along(&s, &id, i, &z, i, &format!("retraction for {name}")).map_err(TriError::NoRetraction)?;
        debug_assert!(homotopic(i, i, &r.after(&s, i, &z, i), &id));
        let is_projection = matches!(sample, Sample::Padding(_)).then(|| {
            let proj = ChainMap::from_fn(&z, |p| {
                let mut m = Mat::zero(i.rank(p), z.rank(p));
                m.put(0, 0, &Mat::identity(i.rank(p)));
                m
            });
            homotopic(&z, i, &r, &proj)
        });
        out.push(SampleResult {
            sample: name,
            degrees: (z.lo, z.hi()),
            retraction_found: true,
            is_projection,
        });
    }
    Ok(RetractionReport { ok: true, samples: out })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Inert,
    Localizable,
}

/// A qis `X_k -> target` standing for `X_k` in the derived category.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub target: Complex,
    pub map: ChainMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlotCheck {
    pub probe: String,
    pub n: i32,
    /// `log_p |Hom_K(W, X_k[n])|` for the three vertices.
    pub sizes: [u32; 3],
    /// Is `Hom_K(W, X_k[n]) -> Hom_K(W, I_k[n])` bijective?
    pub comparison: [bool; 3],
    /// `Hom_K(W, X_1[n]) -> Hom_K(W, X_2[n]) -> Hom_K(W, X_3[n])` exact.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub property: Property,
    /// `X_1`, `X_3` hold the property and every certificate is a qis into a free complex.
    pub inputs_certified: bool,
    /// Every certificate map is a qis.
    pub certificates_qis: [bool; 3],
    pub certified: bool,
    /// First `(probe, n)` where the comparison at `X_2` fails.
    pub witness: Option<(String, i32)>,
    pub checks: Vec<SlotCheck>,
}

fn exact(r: &crate::CoeffRing, a: &Mat, b: &Mat, m2: &FModule, m3: &FModule) -> bool {
    let ba = b.mul(r, a);
    if !mat_eq(r, &ba, &Mat::zero(ba.rows, ba.cols), m3) {
        return false;
    }
    image(r, a, m2).module.log_order() == kernel(r, b, m2, m3).module.log_order()
}

/// Compare `Hom_K(W, X_k[n])` with `Hom_K(W, I_k[n])` along the certificates,
/// reading the answer at `X_2` off the long exact sequences.
pub fn triangle_closure_check(
    t: &Triangle,
    property: Property,
    probes: &[(String, Complex)],
    degrees: std::ops::RangeInclusive<i32>,
    x2_certificate: Option<Certificate>,
) -> Result<ClosureReport, TriError> {
    t.check()?;
    let verts = [&t.x, &t.y, &t.z];
    let top = degrees.clone().max().unwrap_or(0);
    let w = probes.iter().map(|(_, p)| p.hi()).max().unwrap_or(0) + top + 2;
    let mut certs = Vec::with_capacity(3);
    for (k, v) in verts.iter().enumerate() {
        let c = match (&x2_certificate, k) {
            (Some(c), 1) => c.clone(),
            _ => {
                let res = injective_resolution(v, w.max(v.hi()))?;
                Certificate { target: res.complex, map: res.qis }
            }
        };
        c.map.check(v, &c.target)?;
        certs.push(c);
    }
    let certificates_qis = [0, 1, 2].map(|k| is_qis(&certs[k].map, verts[k], &certs[k].target));
    let free_target = [0, 2].iter().all(|&k| certs[k].target.is_degreewise_free());
    let inputs_hold = match property {
        Property::Inert => [0, 2].iter().all(|&k| verts[k].is_degreewise_free()),
        Property::Localizable => free_target,
    };
    let inputs_certified = inputs_hold && certificates_qis[0] && certificates_qis[2];

    let r = &t.x.ring;
    let mut checks = Vec::new();
    let mut witness = None;
    for (name, wc) in probes {
        for n in degrees.clone() {
            let xs: Vec<Complex> = verts.iter().map(|v| v.shift(n)).collect();
            let mut sizes = [0; 3];
            let mut comparison = [false; 3];
            for k in 0..3 {
                let (m, s, tg) = postcompose_classes(&certs[k].map.shift(n), wc, &xs[k], &certs[k].target.shift(n));
                sizes[k] = s.log_order();
                comparison[k] = is_iso_map(r, &m, &s, &tg);
            }
            let (a, _, m2) = postcompose_classes(&t.f.shift(n), wc, &xs[0], &xs[1]);
            let (b, _, m3) = postcompose_classes(&t.g.shift(n), wc, &xs[1], &xs[2]);
            let ex = exact(r, &a, &b, &m2, &m3);
            if !comparison[1] && witness.is_none() {
                witness = Some((name.clone(), n));
            }
            checks.push(SlotCheck {
                probe: name.clone(),
                n,
                sizes,
                comparison,
                exact: ex,
            });
        }
    }
    let outer = checks.iter().all(|c| c.comparison[0] && c.comparison[2] && c.exact);
    let middle = checks.iter().all(|c| c.comparison[1]);
    let x2_ok = match property {
        Property::Inert => true,
        Property::Localizable => certs[1].target.is_degreewise_free(),
    };
    Ok(ClosureReport {
        property,
        inputs_certified,
        certificates_qis,
        certified: inputs_certified && outer && middle && certificates_qis[1] && x2_ok,
        witness,
        checks,
    })
}
