//! The localized Hom bifunctor.

use serde::Serialize;

use fincat::{colimit_raw, coslice_category, limit_raw, slice_category, Budget, Category, TieBreak};
use multsys::{localized_hom, Fraction, MorphismClass, Side};

use crate::localize::localize_object;
use crate::{require_side, DeligneError, Hand};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomBifReport {
    pub x: String,
    pub y: String,
    /// Classes of `lim→_{S/X × Y/S} Hom_C(X', Y')`.
    pub colimit: usize,
    pub localized: usize,
    /// `(s, φ, t) ↦ [s|φ|t]` is well defined and bijective on classes.
    pub bijective: bool,
    /// `lim←_{X/S × S/Y} Hom_C(X', Y')`.
    pub limit: usize,
    /// `Hom_C(R_S X, L_S Y)` when both representatives exist.
    pub representative_hom: Option<usize>,
    pub ok: bool,
}

fn position(hom: &[usize], m: usize) -> usize {
    hom.iter().position(|&h| h == m).expect("morphism in its hom set")
}

/// Collapse `r_S Hom_C(X, Y)` and compare it with `Hom_{C_S}(X, Y)`; do the
/// same for `l_S Hom_C` against the representatives of `r_S X` and `l_S Y`.
pub fn hom_bifunctor_check(
    c: &Category,
    s: &MorphismClass,
    x: usize,
    y: usize,
    tb: TieBreak,
    budget: &Budget,
) -> Result<HomBifReport, DeligneError> {
    require_side(c, s, Hand::Right)?;
    require_side(c, s, Hand::Left)?;
    let in_s = |m: usize| s.contains(m);
    let loc = localized_hom(c, s, x, y, Side::Bilateral)?;

    // colimit over (S/X)^op × Y/S
    let over = slice_category(c, in_s, x);
    let under = coslice_category(c, in_s, y);
    let (na, nb) = (over.member.len(), under.member.len());
    let src_of = |a: usize| c.src(over.member[a]);
    let tgt_of = |b: usize| c.tgt(under.member[b]);
    let cell = |a: usize, b: usize| a * nb + b;
    let hom = |a: usize, b: usize| c.hom(src_of(a), tgt_of(b));
    let mut sizes = Vec::with_capacity(na * nb);
    for a in 0..na {
        for b in 0..nb {
            sizes.push(hom(a, b).len());
        }
    }
    let mut arrows = Vec::new();
    for h in over.cat.morphisms() {
        let (a1, a2) = (over.cat.src(h), over.cat.tgt(h));
        for b in 0..nb {
            let tab = hom(a2, b).iter().map(|&p| position(hom(a1, b), c.comp(p, over.arrow[h]))).collect();
            arrows.push((cell(a2, b), cell(a1, b), tab));
        }
    }
    for k in under.cat.morphisms() {
        let (b1, b2) = (under.cat.src(k), under.cat.tgt(k));
        for a in 0..na {
            let tab = hom(a, b1).iter().map(|&p| position(hom(a, b2), c.comp(under.arrow[k], p))).collect();
            arrows.push((cell(a, b1), cell(a, b2), tab));
        }
    }
    let col = colimit_raw(&sizes, &arrows);
    let mut class_map = vec![None; col.len()];
    let mut well_defined = true;
    for a in 0..na {
        for b in 0..nb {
            for (e, &p) in hom(a, b).iter().enumerate() {
                let fr = Fraction {
                    s: over.member[a],
                    g: p,
                    t: under.member[b],
                };
                let k = loc.class_of(&fr);
                let slot = &mut class_map[col.cocone[cell(a, b)][e]];
                match (*slot, k) {
                    (_, None) => well_defined = false,
                    (None, k) => *slot = k,
                    (Some(k0), Some(k)) => well_defined &= k0 == k,
                }
            }
        }
    }
    let mut hit: Vec<usize> = class_map.iter().flatten().copied().collect();
    hit.sort_unstable();
    hit.dedup();
    let bijective = well_defined && hit.len() == col.len() && col.len() == loc.len();

    // limit over (X/S)^op × S/Y
    let from_x = coslice_category(c, in_s, x);
    let into_y = slice_category(c, in_s, y);
    let (ma, mb) = (from_x.member.len(), into_y.member.len());
    let lcell = |a: usize, b: usize| a * mb + b;
    let lhom = |a: usize, b: usize| c.hom(c.tgt(from_x.member[a]), c.src(into_y.member[b]));
    let mut sizes = Vec::with_capacity(ma * mb);
    for a in 0..ma {
        for b in 0..mb {
            sizes.push(lhom(a, b).len());
        }
    }
    let mut arrows = Vec::new();
    for h in from_x.cat.morphisms().filter(|&h| !from_x.cat.is_identity(h)) {
        let (a1, a2) = (from_x.cat.src(h), from_x.cat.tgt(h));
        for b in 0..mb {
            let tab = lhom(a2, b).iter().map(|&p| position(lhom(a1, b), c.comp(p, from_x.arrow[h]))).collect();
            arrows.push((lcell(a2, b), lcell(a1, b), tab));
        }
    }
    for k in into_y.cat.morphisms().filter(|&k| !into_y.cat.is_identity(k)) {
        let (b1, b2) = (into_y.cat.src(k), into_y.cat.tgt(k));
        for a in 0..ma {
            let tab = lhom(a, b1).iter().map(|&p| position(lhom(a, b2), c.comp(into_y.arrow[k], p))).collect();
            arrows.push((lcell(a, b1), lcell(a, b2), tab));
        }
    }
    let limit = limit_raw(&sizes, &arrows, budget)?.len();
    let rx = localize_object(c, s, x, Hand::Right, tb, budget)?.classification.representative;
    let ly = localize_object(c, s, y, Hand::Left, tb, budget)?.classification.representative;
    let representative_hom = match (rx, ly) {
        (Some(r), Some(l)) => Some(c.hom(r, l).len()),
        _ => None,
    };
    let ok = bijective && representative_hom.is_none_or(|n| n == limit);
    Ok(HomBifReport {
        x: c.obj_name(x).to_string(),
        y: c.obj_name(y).to_string(),
        colimit: col.len(),
        localized: loc.len(),
        bijective,
        limit,
        representative_hom,
        ok,
    })
}
