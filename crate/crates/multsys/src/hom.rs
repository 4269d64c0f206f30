use std::collections::HashMap;

use serde::Serialize;

use fincat::{colimit_raw, coslice_category, slice_category, Category, Violation};

use crate::system::{validate_mult_system, MorphismClass, Side, SystemReport};
use crate::LocError;

/// `X <-s- X' -g-> Y' <-t- Y`, standing for `Q(t)⁻¹ Q(g) Q(s)⁻¹`.
/// Right fractions have `s = id_X`, left fractions have `t = id_Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fraction {
    pub s: usize,
    pub g: usize,
    pub t: usize,
}

impl Fraction {
    pub fn token(&self, c: &Category) -> String {
        format!("[{}|{}|{}]", c.mor_name(self.s), c.mor_name(self.g), c.mor_name(self.t))
    }
}

/// One localized Hom set: its classes, their canonical representatives, and
/// the class of every element of the defining colimit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSet {
    pub x: usize,
    pub y: usize,
    pub formula: Side,
    pub reps: Vec<Fraction>,
    pub members: Vec<Vec<Fraction>>,
    class: HashMap<Fraction, usize>,
}

impl HomSet {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn class_of(&self, f: &Fraction) -> Option<usize> {
        self.class.get(f).copied()
    }

    pub fn tokens(&self, c: &Category) -> Vec<String> {
        self.reps.iter().map(|f| f.token(c)).collect()
    }
}

/// `Hom_{C_S}(x, y)` by the chosen colimit formula, without checking axioms.
pub fn hom_unchecked(c: &Category, s: &MorphismClass, x: usize, y: usize, formula: Side) -> HomSet {
    let in_s = |m: usize| s.contains(m);
    // index objects of the two slices; a trivial slice stands in for the unused side
    let (left, right) = (
        matches!(formula, Side::Left | Side::Bilateral).then(|| slice_category(c, in_s, x)),
        matches!(formula, Side::Right | Side::Bilateral).then(|| coslice_category(c, in_s, y)),
    );
    let ls: Vec<usize> = left.as_ref().map_or(vec![c.id(x)], |l| l.member.clone());
    let rs: Vec<usize> = right.as_ref().map_or(vec![c.id(y)], |r| r.member.clone());
    let (n1, n2) = (ls.len(), rs.len());
    let node = |a: usize, b: usize| a * n2 + b;

    let mut elems: Vec<Vec<Fraction>> = Vec::with_capacity(n1 * n2);
    for &sm in &ls {
        for &t in &rs {
            elems.push(
                c.hom(c.src(sm), c.tgt(t))
                    .iter()
                    .map(|&g| Fraction { s: sm, g, t })
                    .collect(),
            );
        }
    }
    let pos = |set: &[Fraction], g: usize| set.iter().position(|f| f.g == g).unwrap();

    let mut arrows = Vec::new();
    if let Some(l) = &left {
        // h: s1 -> s2 in S/X acts contravariantly, g ↦ g∘h
        for m in l.cat.morphisms().filter(|&m| !l.cat.is_identity(m)) {
            let (a, b, h) = (l.cat.src(m), l.cat.tgt(m), l.arrow[m]);
            for k in 0..n2 {
                let from = &elems[node(b, k)];
                let to = &elems[node(a, k)];
                let table = from.iter().map(|f| pos(to, c.comp(f.g, h))).collect();
                arrows.push((node(b, k), node(a, k), table));
            }
        }
    }
    if let Some(r) = &right {
        // h: t1 -> t2 in Y/S acts covariantly, g ↦ h∘g
        for m in r.cat.morphisms().filter(|&m| !r.cat.is_identity(m)) {
            let (a, b, h) = (r.cat.src(m), r.cat.tgt(m), r.arrow[m]);
            for k in 0..n1 {
                let from = &elems[node(k, a)];
                let to = &elems[node(k, b)];
                let table = from.iter().map(|f| pos(to, c.comp(h, f.g))).collect();
                arrows.push((node(k, a), node(k, b), table));
            }
        }
    }
    let sizes: Vec<usize> = elems.iter().map(Vec::len).collect();
    let col = colimit_raw(&sizes, &arrows);
    let reps: Vec<Fraction> = col.reps.iter().map(|&(k, e)| elems[k][e]).collect();
    let mut members = vec![Vec::new(); reps.len()];
    let mut class = HashMap::new();
    for (k, set) in elems.iter().enumerate() {
        for (e, f) in set.iter().enumerate() {
            let cl = col.cocone[k][e];
            members[cl].push(*f);
            class.insert(*f, cl);
        }
    }
    HomSet {
        x,
        y,
        formula,
        reps,
        members,
        class,
    }
}

/// Check that the declared side and the axioms admit `formula`.
pub fn formula_allowed(s: &MorphismClass, report: &SystemReport, formula: Side) -> Result<(), LocError> {
    let mut missing = report.missing(formula);
    if formula.has_right() && !s.side.has_right() {
        missing.push("declared-right".into());
    }
    if formula.has_left() && !s.side.has_left() {
        missing.push("declared-left".into());
    }
    if missing.is_empty() {
        Ok(())
    } else {
        Err(LocError::FormulaUnsupported { formula, missing })
    }
}

pub fn localized_hom(c: &Category, s: &MorphismClass, x: usize, y: usize, formula: Side) -> Result<HomSet, LocError> {
    let report = validate_mult_system(c, s);
    formula_allowed(s, &report, formula)?;
    Ok(hom_unchecked(c, s, x, y, formula))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairAgreement {
    pub x: String,
    pub y: String,
    pub right: usize,
    pub left: usize,
    pub bilateral: usize,
    /// Right and left classes each map bijectively onto the bilateral classes.
    pub bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossReport {
    pub agree: bool,
    pub pairs: Vec<PairAgreement>,
    pub witnesses: Vec<Violation>,
}

/// Image of every class of `one` in `bi`, if well defined and bijective.
fn induced_bijection(one: &HomSet, bi: &HomSet) -> bool {
    let mut image = Vec::new();
    for ms in &one.members {
        let mut cls: Vec<usize> = ms.iter().filter_map(|f| bi.class_of(f)).collect();
        cls.sort_unstable();
        cls.dedup();
        if cls.len() != 1 || ms.iter().any(|f| bi.class_of(f).is_none()) {
            return false;
        }
        image.push(cls[0]);
    }
    let mut sorted = image.clone();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len() == image.len() && image.len() == bi.len()
}

/// Compare the right, left and two-sided formulas on every object pair.
pub fn cross_check_formulas(c: &Category, s: &MorphismClass) -> Result<CrossReport, LocError> {
    let report = validate_mult_system(c, s);
    formula_allowed(s, &report, Side::Bilateral)?;
    let mut pairs = Vec::new();
    let mut witnesses = Vec::new();
    for x in c.objects() {
        for y in c.objects() {
            let r = hom_unchecked(c, s, x, y, Side::Right);
            let l = hom_unchecked(c, s, x, y, Side::Left);
            let b = hom_unchecked(c, s, x, y, Side::Bilateral);
            let bijective = induced_bijection(&r, &b) && induced_bijection(&l, &b);
            if !bijective {
                witnesses.push(Violation::new(
                    "formula-agreement",
                    vec![c.obj_name(x).to_string(), c.obj_name(y).to_string()],
                ));
            }
            pairs.push(PairAgreement {
                x: c.obj_name(x).to_string(),
                y: c.obj_name(y).to_string(),
                right: r.len(),
                left: l.len(),
                bilateral: b.len(),
                bijective,
            });
        }
    }
    Ok(CrossReport {
        agree: witnesses.is_empty(),
        pairs,
        witnesses,
    })
}
