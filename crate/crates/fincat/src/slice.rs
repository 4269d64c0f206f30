use crate::category::{Builder, Category};
use crate::functor::Functor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SliceSide {
    /// `X/S`: arrows of S out of `x`.
    Under,
    /// `S/X`: arrows of S into `x`.
    Over,
}

/// A slice category together with its projection to the ambient category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub cat: Category,
    pub proj: Functor,
    /// Ambient morphism of S behind each slice object.
    pub member: Vec<usize>,
    /// Ambient morphism behind each slice morphism.
    pub arrow: Vec<usize>,
    pub side: SliceSide,
}

impl Slice {
    /// Slice object whose underlying S-morphism is `s`.
    pub fn object_of(&self, s: usize) -> Option<usize> {
        self.member.iter().position(|&m| m == s)
    }
}

/// `X/S`: objects are `s: x -> X'` in S, a morphism `s1 -> s2` is `h` with `h∘s1 = s2`.
pub fn coslice_category(c: &Category, in_s: impl Fn(usize) -> bool, x: usize) -> Slice {
    build(c, &in_s, x, SliceSide::Under)
}

/// `S/X`: objects are `s: X' -> x` in S, a morphism `s1 -> s2` is `h` with `s2∘h = s1`.
pub fn slice_category(c: &Category, in_s: impl Fn(usize) -> bool, x: usize) -> Slice {
    build(c, &in_s, x, SliceSide::Over)
}

fn build(c: &Category, in_s: &dyn Fn(usize) -> bool, x: usize, side: SliceSide) -> Slice {
    let members: Vec<usize> = match side {
        SliceSide::Under => c.out_of(x).filter(|&s| in_s(s)).collect(),
        SliceSide::Over => c.into_(x).filter(|&s| in_s(s)).collect(),
    };
    // the free end of a member
    let end = |s: usize| match side {
        SliceSide::Under => c.tgt(s),
        SliceSide::Over => c.src(s),
    };
    let commutes = |h: usize, s1: usize, s2: usize| match side {
        SliceSide::Under => c.comp(h, s1) == s2,
        SliceSide::Over => c.comp(s2, h) == s1,
    };

    let mut b = Builder::new();
    let obj: Vec<usize> = members
        .iter()
        .map(|&s| b.object(c.mor_name(s).to_string()))
        .collect();
    let mut mors = Vec::new();
    for (i, &s1) in members.iter().enumerate() {
        for (j, &s2) in members.iter().enumerate() {
            for &h in c.hom(end(s1), end(s2)) {
                if commutes(h, s1, s2) {
                    let name = format!("{}:{}->{}", c.mor_name(h), c.mor_name(s1), c.mor_name(s2));
                    let id = b.morphism(name, obj[i], obj[j]);
                    mors.push((id, i, j, h));
                }
            }
        }
    }
    for &(id, i, j, h) in &mors {
        if i == j && h == c.id(end(members[i])) {
            b.identity(obj[i], id);
        }
    }
    let mut by_key = std::collections::HashMap::new();
    for &(id, i, j, h) in &mors {
        by_key.insert((i, j, h), id);
    }
    for &(g, j, k, hg) in &mors {
        for &(f, i, j2, hf) in &mors {
            if j2 == j {
                let gf = by_key[&(i, k, c.comp(hg, hf))];
                b.compose(g, f, gf);
            }
        }
    }
    // Builder ids are insertion order; translate through names after sorting.
    let cat = b.build().expect("slice of a category is a category");
    let mut member = vec![0; cat.num_objects()];
    for &s in &members {
        member[cat.obj(c.mor_name(s)).unwrap()] = s;
    }
    let mut arrow = vec![0; cat.num_morphisms()];
    for &(_, i, j, h) in &mors {
        let name = format!(
            "{}:{}->{}",
            c.mor_name(h),
            c.mor_name(members[i]),
            c.mor_name(members[j])
        );
        arrow[cat.mor(&name).unwrap()] = h;
    }
    let proj = Functor {
        obj: member.iter().map(|&s| end(s)).collect(),
        mor: arrow.clone(),
    };
    Slice {
        cat,
        proj,
        member,
        arrow,
        side,
    }
}
