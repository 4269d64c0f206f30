use crate::category::{Category, Violation};

/// A functor between two finite categories, as index tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Functor {
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
}

impl Functor {
    pub fn identity(c: &Category) -> Self {
        Self {
            obj: c.objects().collect(),
            mor: c.morphisms().collect(),
        }
    }

    /// The functor from a one-object, one-morphism category picking `x`.
    pub fn constant_at(c: &Category, x: usize) -> Self {
        Self {
            obj: vec![x],
            mor: vec![c.id(x)],
        }
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &Functor) -> Functor {
        Functor {
            obj: self.obj.iter().map(|&x| g.obj[x]).collect(),
            mor: self.mor.iter().map(|&m| g.mor[m]).collect(),
        }
    }

    /// Every violated functor equation between `src` and `tgt`.
    pub fn violations(&self, src: &Category, tgt: &Category) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.obj.len() != src.num_objects() || self.mor.len() != src.num_morphisms() {
            out.push(Violation::new("functor-arity", vec![]));
            return out;
        }
        if self.obj.iter().any(|&x| x >= tgt.num_objects())
            || self.mor.iter().any(|&m| m >= tgt.num_morphisms())
        {
            out.push(Violation::new("functor-dangling", vec![]));
            return out;
        }
        for m in src.morphisms() {
            let fm = self.mor[m];
            if tgt.src(fm) != self.obj[src.src(m)] || tgt.tgt(fm) != self.obj[src.tgt(m)] {
                out.push(Violation::new(
                    "functor-endpoints",
                    vec![src.mor_name(m).to_string(), tgt.mor_name(fm).to_string()],
                ));
            }
        }
        for x in src.objects() {
            if self.mor[src.id(x)] != tgt.id(self.obj[x]) {
                out.push(Violation::new(
                    "functor-identity",
                    vec![src.obj_name(x).to_string()],
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (g, f, gf) in src.table() {
            if tgt.compose(self.mor[g], self.mor[f]) != Some(self.mor[gf]) {
                out.push(Violation::new(
                    "functor-composition",
                    vec![src.mor_name(g).to_string(), src.mor_name(f).to_string()],
                ));
            }
        }
        out
    }

    pub fn is_valid(&self, src: &Category, tgt: &Category) -> bool {
        self.violations(src, tgt).is_empty()
    }
}
