use serde::{Deserialize, Serialize};

use fincat::{Category, TieBreak, Violation};

/// Which calculus of fractions a class is declared to support.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Left,
    Bilateral,
}

impl Side {
    pub fn has_right(self) -> bool {
        matches!(self, Side::Right | Side::Bilateral)
    }

    pub fn has_left(self) -> bool {
        matches!(self, Side::Left | Side::Bilateral)
    }
}

/// A class of morphisms of a fixed category, as a membership table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorphismClass {
    members: Vec<bool>,
    pub side: Side,
}

impl MorphismClass {
    pub fn new(c: &Category, ids: &[usize], side: Side) -> Self {
        let mut members = vec![false; c.num_morphisms()];
        for &m in ids {
            members[m] = true;
        }
        Self { members, side }
    }

    pub fn identities(c: &Category) -> Self {
        let ids: Vec<usize> = c.objects().map(|x| c.id(x)).collect();
        Self::new(c, &ids, Side::Bilateral)
    }

    pub fn isomorphisms(c: &Category) -> Self {
        let ids: Vec<usize> = c.morphisms().filter(|&m| c.is_iso(m)).collect();
        Self::new(c, &ids, Side::Bilateral)
    }

    pub fn contains(&self, m: usize) -> bool {
        self.members[m]
    }

    pub fn list(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&m| self.members[m]).collect()
    }

    pub fn with_side(&self, side: Side) -> Self {
        Self {
            members: self.members.clone(),
            side,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn names(&self, c: &Category) -> Vec<String> {
        self.list().into_iter().map(|m| c.mor_name(m).to_string()).collect()
    }
}

/// Given `s: X -> X'` in S and `f: X -> Y`, find `t: Y -> Y'` in S and
/// `f': X' -> Y'` with `f'∘s = t∘f`. Least pair `(t, f')` in id order.
pub fn complete_right(
    c: &Category,
    s: &MorphismClass,
    sm: usize,
    f: usize,
    tb: TieBreak,
) -> Option<(usize, usize)> {
    let y = c.tgt(f);
    let xp = c.tgt(sm);
    let cands: Vec<(usize, usize)> = c
        .out_of(y)
        .filter(|&t| s.contains(t))
        .flat_map(|t| c.hom(xp, c.tgt(t)).iter().map(move |&fp| (t, fp)))
        .collect();
    tb.find(cands.into_iter(), |&(t, fp)| {
        c.comp(fp, sm) == c.comp(t, f)
    })
}

/// Given `s: X' -> X` in S and `f: Y -> X`, find `t: Y' -> Y` in S and
/// `f': Y' -> X'` with `s∘f' = f∘t`.
pub fn complete_left(
    c: &Category,
    s: &MorphismClass,
    sm: usize,
    f: usize,
    tb: TieBreak,
) -> Option<(usize, usize)> {
    let y = c.src(f);
    let xp = c.src(sm);
    let cands: Vec<(usize, usize)> = c
        .into_(y)
        .filter(|&t| s.contains(t))
        .flat_map(|t| c.hom(c.src(t), xp).iter().map(move |&fp| (t, fp)))
        .collect();
    tb.find(cands.into_iter(), |&(t, fp)| {
        c.comp(sm, fp) == c.comp(f, t)
    })
}

/// `t` in S out of the common target with `t∘f = t∘g`.
pub fn equalize_right(c: &Category, s: &MorphismClass, f: usize, g: usize, tb: TieBreak) -> Option<usize> {
    tb.find(c.out_of(c.tgt(f)).filter(|&t| s.contains(t)).collect::<Vec<_>>().into_iter(), |&t| {
        c.comp(t, f) == c.comp(t, g)
    })
}

/// `t` in S into the common source with `f∘t = g∘t`.
pub fn equalize_left(c: &Category, s: &MorphismClass, f: usize, g: usize, tb: TieBreak) -> Option<usize> {
    tb.find(c.into_(c.src(f)).filter(|&t| s.contains(t)).collect::<Vec<_>>().into_iter(), |&t| {
        c.comp(f, t) == c.comp(g, t)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemReport {
    pub s1: bool,
    pub s2: bool,
    pub right_s3: bool,
    pub left_s3: bool,
    pub right_s4: bool,
    pub left_s4: bool,
    pub right_quasi_saturated: bool,
    pub left_quasi_saturated: bool,
    /// Every morphism inverted by the localization lies in S. Only reported,
    /// never required; `None` when no localization could be built.
    pub saturated: Option<bool>,
    pub witnesses: Vec<Violation>,
}

impl SystemReport {
    pub fn right_system(&self) -> bool {
        self.s1 && self.s2 && self.right_s3 && self.right_s4
    }

    pub fn left_system(&self) -> bool {
        self.s1 && self.s2 && self.left_s3 && self.left_s4
    }

    pub fn right_ok(&self) -> bool {
        self.right_system() && self.right_quasi_saturated
    }

    pub fn left_ok(&self) -> bool {
        self.left_system() && self.left_quasi_saturated
    }

    /// Axioms needed by a side, as law names that fail.
    pub fn missing(&self, side: Side) -> Vec<String> {
        let mut out = Vec::new();
        let mut need = |ok: bool, name: &str| {
            if !ok {
                out.push(name.to_string());
            }
        };
        need(self.s1, "S1");
        need(self.s2, "S2");
        if side.has_right() {
            need(self.right_s3, "right-S3");
            need(self.right_s4, "right-S4");
        }
        if side.has_left() {
            need(self.left_s3, "left-S3");
            need(self.left_s4, "left-S4");
        }
        out
    }
}

fn names(c: &Category, ms: &[usize]) -> Vec<String> {
    ms.iter().map(|&m| c.mor_name(m).to_string()).collect()
}

/// Check S1–S4 on both sides and quasi-saturation, with the first counterexample of each.
pub fn validate_mult_system(c: &Category, s: &MorphismClass) -> SystemReport {
    let tb = TieBreak::Normal;
    let mut w = Vec::new();

    let s1 = match c.objects().find(|&x| !s.contains(c.id(x))) {
        None => true,
        Some(x) => {
            w.push(Violation::new("S1", vec![c.mor_name(c.id(x)).to_string()]));
            false
        }
    };

    let members = s.list();
    let mut s2 = true;
    'a: for &f in &members {
        for &g in &members {
            if let Some(gf) = c.compose(g, f) {
                if !s.contains(gf) {
                    w.push(Violation::new("S2", names(c, &[g, f])));
                    s2 = false;
                    break 'a;
                }
            }
        }
    }

    let mut right_s3 = true;
    'b: for &sm in &members {
        for f in c.out_of(c.src(sm)) {
            if complete_right(c, s, sm, f, tb).is_none() {
                w.push(Violation::new("right-S3", names(c, &[sm, f])));
                right_s3 = false;
                break 'b;
            }
        }
    }

    let mut left_s3 = true;
    'c: for &sm in &members {
        for f in c.into_(c.tgt(sm)) {
            if complete_left(c, s, sm, f, tb).is_none() {
                w.push(Violation::new("left-S3", names(c, &[sm, f])));
                left_s3 = false;
                break 'c;
            }
        }
    }

    let mut right_s4 = true;
    let mut left_s4 = true;
    for x in c.objects() {
        for y in c.objects() {
            let hs = c.hom(x, y);
            for (i, &f) in hs.iter().enumerate() {
                // f = g included: without S1 even that can fail
                for &g in &hs[i..] {
                    let pre = equalize_left(c, s, f, g, tb);
                    let post = equalize_right(c, s, f, g, tb);
                    if right_s4 && pre.is_some() && post.is_none() {
                        w.push(Violation::new("right-S4", names(c, &[f, g, pre.unwrap()])));
                        right_s4 = false;
                    }
                    if left_s4 && post.is_some() && pre.is_none() {
                        w.push(Violation::new("left-S4", names(c, &[f, g, post.unwrap()])));
                        left_s4 = false;
                    }
                }
            }
        }
    }

    let mut right_qs = true;
    let mut left_qs = true;
    for (g, f, gf) in c.table() {
        if !s.contains(gf) {
            continue;
        }
        if right_qs && s.contains(f) && !s.contains(g) {
            w.push(Violation::new("right-quasi-saturation", names(c, &[g, f])));
            right_qs = false;
        }
        if left_qs && s.contains(g) && !s.contains(f) {
            w.push(Violation::new("left-quasi-saturation", names(c, &[g, f])));
            left_qs = false;
        }
    }

    let mut r = SystemReport {
        s1,
        s2,
        right_s3,
        left_s3,
        right_s4,
        left_s4,
        right_quasi_saturated: right_qs,
        left_quasi_saturated: left_qs,
        saturated: None,
        witnesses: w,
    };
    if r.right_system() || r.left_system() {
        let side = if r.right_system() { Side::Right } else { Side::Left };
        if let Ok(l) = crate::materialize::materialize_unchecked(c, &s.with_side(side), side, TieBreak::Normal, crate::DEFAULT_BOUND) {
            let bad = c.morphisms().find(|&m| !s.contains(m) && l.cat.is_iso(l.q.mor[m]));
            r.saturated = Some(bad.is_none());
            if let Some(m) = bad {
                r.witnesses.push(Violation::new("saturation", vec![c.mor_name(m).to_string()]));
            }
        }
    }
    r
}
