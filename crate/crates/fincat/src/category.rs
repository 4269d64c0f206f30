use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

/// One failed equation or structural defect, with the ids that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub witnesses: Vec<String>,
}

impl Violation {
    pub fn new(law: &str, witnesses: Vec<String>) -> Self {
        Self {
            law: law.to_string(),
            witnesses,
        }
    }
}

/// A finite category with string ids.
///
/// Objects and morphisms are stored sorted by id, so index order is
/// lexicographic id order and every "first match" search is reproducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Category {
    objects: Vec<String>,
    morphisms: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    identity: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    hom: Vec<Vec<Vec<usize>>>,
    obj_ix: HashMap<String, usize>,
    mor_ix: HashMap<String, usize>,
}

impl Category {
    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> std::ops::Range<usize> {
        0..self.objects.len()
    }

    pub fn morphisms(&self) -> std::ops::Range<usize> {
        0..self.morphisms.len()
    }

    pub fn obj_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn mor_name(&self, m: usize) -> &str {
        &self.morphisms[m]
    }

    pub fn obj_names(&self) -> &[String] {
        &self.objects
    }

    pub fn mor_names(&self) -> &[String] {
        &self.morphisms
    }

    pub fn obj(&self, name: &str) -> Option<usize> {
        self.obj_ix.get(name).copied()
    }

    pub fn mor(&self, name: &str) -> Option<usize> {
        self.mor_ix.get(name).copied()
    }

    pub fn src(&self, m: usize) -> usize {
        self.src[m]
    }

    pub fn tgt(&self, m: usize) -> usize {
        self.tgt[m]
    }

    pub fn id(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.src[m] == self.tgt[m] && self.identity[self.src[m]] == m
    }

    /// `g ∘ f`, defined exactly when `tgt f = src g`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }

    /// `g ∘ f` for a pair known to be composable.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        match self.compose.get(&(g, f)) {
            Some(&gf) => gf,
            None => panic!(
                "composite {} ∘ {} is undefined",
                self.morphisms[g], self.morphisms[f]
            ),
        }
    }

    /// Composite of a path given in diagrammatic order reversed: `comp_all(&[h, g, f]) = h∘g∘f`.
    pub fn comp_all(&self, path: &[usize]) -> usize {
        let mut it = path.iter().rev();
        let mut acc = *it.next().expect("empty path");
        for &m in it {
            acc = self.comp(m, acc);
        }
        acc
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.hom[x][y]
    }

    /// Morphisms with source `x`, in id order.
    pub fn out_of(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.morphisms().filter(move |&m| self.src[m] == x)
    }

    /// Morphisms with target `y`, in id order.
    pub fn into_(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.morphisms().filter(move |&m| self.tgt[m] == y)
    }

    /// A two-sided inverse of `m`, if one exists.
    pub fn inverse(&self, m: usize) -> Option<usize> {
        let (x, y) = (self.src[m], self.tgt[m]);
        self.hom(y, x).iter().copied().find(|&n| {
            self.comp(n, m) == self.identity[x] && self.comp(m, n) == self.identity[y]
        })
    }

    pub fn is_iso(&self, m: usize) -> bool {
        self.inverse(m).is_some()
    }

    /// Left cancellable: `m∘a = m∘b` forces `a = b`.
    pub fn is_mono(&self, m: usize) -> bool {
        let x = self.src[m];
        for w in self.objects() {
            let hs = self.hom(w, x);
            for (i, &a) in hs.iter().enumerate() {
                for &b in &hs[i + 1..] {
                    if self.comp(m, a) == self.comp(m, b) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Objects joined by an isomorphism.
    pub fn isomorphic(&self, x: usize, y: usize) -> bool {
        self.hom(x, y).iter().any(|&m| self.is_iso(m))
    }

    pub fn opposite(&self) -> Category {
        let compose = self
            .compose
            .iter()
            .map(|(&(g, f), &gf)| ((f, g), gf))
            .collect();
        let n = self.objects.len();
        let mut hom = vec![vec![Vec::new(); n]; n];
        for x in 0..n {
            for y in 0..n {
                hom[x][y] = self.hom[y][x].clone();
            }
        }
        Category {
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            identity: self.identity.clone(),
            compose,
            hom,
            obj_ix: self.obj_ix.clone(),
            mor_ix: self.mor_ix.clone(),
        }
    }

    /// Product category, ids `(a,b)`.
    pub fn product(a: &Category, b: &Category) -> Category {
        let mut bl = Builder::new();
        let pair = |x: &str, y: &str| format!("({x},{y})");
        let mut oix = vec![vec![0; b.num_objects()]; a.num_objects()];
        for x in a.objects() {
            for y in b.objects() {
                oix[x][y] = bl.object(pair(a.obj_name(x), b.obj_name(y)));
            }
        }
        let mut mix = vec![vec![0; b.num_morphisms()]; a.num_morphisms()];
        for f in a.morphisms() {
            for g in b.morphisms() {
                mix[f][g] = bl.morphism(
                    pair(a.mor_name(f), b.mor_name(g)),
                    oix[a.src(f)][b.src(g)],
                    oix[a.tgt(f)][b.tgt(g)],
                );
            }
        }
        for x in a.objects() {
            for y in b.objects() {
                bl.identity(oix[x][y], mix[a.id(x)][b.id(y)]);
            }
        }
        for (&(f2, f1), &f) in &a.compose {
            for (&(g2, g1), &g) in &b.compose {
                bl.compose(mix[f2][g2], mix[f1][g1], mix[f][g]);
            }
        }
        bl.build().expect("product of categories is a category")
    }

    /// The preorder on `objects` given by `leq`, one arrow `x<=y` per related pair.
    /// `leq` must be reflexive and transitive.
    pub fn preorder(objects: &[String], leq: impl Fn(usize, usize) -> bool) -> Result<Category, Vec<Violation>> {
        let mut b = Builder::new();
        let n = objects.len();
        let ox: Vec<usize> = objects.iter().map(|o| b.object(o.clone())).collect();
        let mut arrow = vec![vec![None; n]; n];
        for x in 0..n {
            for y in 0..n {
                if leq(x, y) {
                    let name = if x == y {
                        format!("id_{}", objects[x])
                    } else {
                        format!("{}<={}", objects[x], objects[y])
                    };
                    arrow[x][y] = Some(b.morphism(name, ox[x], ox[y]));
                }
            }
            if let Some(i) = arrow[x][x] {
                b.identity(ox[x], i);
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if let (Some(f), Some(g)) = (arrow[x][y], arrow[y][z]) {
                        match arrow[x][z] {
                            Some(gf) => b.compose(g, f, gf),
                            None => b.defect(Violation::new(
                                "preorder-not-transitive",
                                vec![objects[x].clone(), objects[y].clone(), objects[z].clone()],
                            )),
                        }
                    }
                }
            }
        }
        b.build()
    }

    /// Every composable pair `(g, f)` with its composite.
    pub fn table(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let mut v: Vec<_> = self.compose.iter().map(|(&(g, f), &gf)| (g, f, gf)).collect();
        v.sort_unstable();
        v.into_iter()
    }
}

/// Incremental construction of a [`Category`]; `build` sorts ids and checks every law.
#[derive(Clone, Debug, Default)]
pub struct Builder {
    objects: Vec<String>,
    morphisms: Vec<(String, usize, usize)>,
    identity: BTreeMap<usize, usize>,
    table: Vec<(usize, usize, usize)>,
    defects: Vec<Violation>,
}

impl Builder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: impl Into<String>) -> usize {
        self.objects.push(name.into());
        self.objects.len() - 1
    }

    pub fn morphism(&mut self, name: impl Into<String>, src: usize, tgt: usize) -> usize {
        self.morphisms.push((name.into(), src, tgt));
        self.morphisms.len() - 1
    }

    pub fn identity(&mut self, obj: usize, mor: usize) {
        if let Some(prev) = self.identity.insert(obj, mor) {
            if prev != mor {
                self.defects.push(Violation::new(
                    "duplicate-identity",
                    vec![self.objects[obj].clone()],
                ));
            }
        }
    }

    pub fn compose(&mut self, g: usize, f: usize, gf: usize) {
        self.table.push((g, f, gf));
    }

    /// Record a defect found while resolving external data (dangling ids and the like).
    pub fn defect(&mut self, v: Violation) {
        self.defects.push(v);
    }

    pub fn build(self) -> Result<Category, Vec<Violation>> {
        let Builder {
            objects,
            morphisms,
            identity,
            table,
            mut defects,
        } = self;

        let mut oorder: Vec<usize> = (0..objects.len()).collect();
        oorder.sort_by(|&a, &b| objects[a].cmp(&objects[b]));
        let mut onew = vec![0; objects.len()];
        for (new, &old) in oorder.iter().enumerate() {
            onew[old] = new;
        }
        let mut morder: Vec<usize> = (0..morphisms.len()).collect();
        morder.sort_by(|&a, &b| morphisms[a].0.cmp(&morphisms[b].0));
        let mut mnew = vec![0; morphisms.len()];
        for (new, &old) in morder.iter().enumerate() {
            mnew[old] = new;
        }

        let onames: Vec<String> = oorder.iter().map(|&o| objects[o].clone()).collect();
        let mnames: Vec<String> = morder.iter().map(|&m| morphisms[m].0.clone()).collect();
        for w in onames.windows(2) {
            if w[0] == w[1] {
                defects.push(Violation::new("duplicate-object", vec![w[0].clone()]));
            }
        }
        for w in mnames.windows(2) {
            if w[0] == w[1] {
                defects.push(Violation::new("duplicate-morphism", vec![w[0].clone()]));
            }
        }
        let src: Vec<usize> = morder.iter().map(|&m| onew[morphisms[m].1]).collect();
        let tgt: Vec<usize> = morder.iter().map(|&m| onew[morphisms[m].2]).collect();

        let n = onames.len();
        let mut ident = vec![usize::MAX; n];
        for (&o, &m) in &identity {
            ident[onew[o]] = mnew[m];
        }
        for x in 0..n {
            let m = ident[x];
            if m == usize::MAX {
                defects.push(Violation::new("missing-identity", vec![onames[x].clone()]));
            } else if src[m] != x || tgt[m] != x {
                defects.push(Violation::new(
                    "identity-endpoints",
                    vec![onames[x].clone(), mnames[m].clone()],
                ));
            }
        }

        let mut compose = HashMap::new();
        for &(g, f, gf) in &table {
            let (g, f, gf) = (mnew[g], mnew[f], mnew[gf]);
            if tgt[f] != src[g] {
                defects.push(Violation::new(
                    "composite-of-non-composable",
                    vec![mnames[g].clone(), mnames[f].clone()],
                ));
                continue;
            }
            if src[gf] != src[f] || tgt[gf] != tgt[g] {
                defects.push(Violation::new(
                    "composite-endpoints",
                    vec![mnames[g].clone(), mnames[f].clone(), mnames[gf].clone()],
                ));
            }
            if let Some(prev) = compose.insert((g, f), gf) {
                if prev != gf {
                    defects.push(Violation::new(
                        "conflicting-composite",
                        vec![mnames[g].clone(), mnames[f].clone()],
                    ));
                }
            }
        }

        let mut hom = vec![vec![Vec::new(); n]; n];
        for m in 0..mnames.len() {
            hom[src[m]][tgt[m]].push(m);
        }
        if ident.contains(&usize::MAX) {
            return Err(defects);
        }

        for f in 0..mnames.len() {
            for g in 0..mnames.len() {
                if tgt[f] == src[g] && !compose.contains_key(&(g, f)) {
                    defects.push(Violation::new(
                        "missing-composite",
                        vec![mnames[g].clone(), mnames[f].clone()],
                    ));
                }
            }
        }
        let c = |g: usize, f: usize| compose.get(&(g, f)).copied();
        for f in 0..mnames.len() {
            if let Some(left) = c(ident[tgt[f]], f) {
                if left != f {
                    defects.push(Violation::new(
                        "left-identity",
                        vec![mnames[ident[tgt[f]]].clone(), mnames[f].clone()],
                    ));
                }
            }
            if let Some(right) = c(f, ident[src[f]]) {
                if right != f {
                    defects.push(Violation::new(
                        "right-identity",
                        vec![mnames[f].clone(), mnames[ident[src[f]]].clone()],
                    ));
                }
            }
        }
        for f in 0..mnames.len() {
            for &g in hom[tgt[f]].iter().flatten() {
                let Some(gf) = c(g, f) else { continue };
                for &h in hom[tgt[g]].iter().flatten() {
                    let a = c(h, gf);
                    let b = c(h, g).and_then(|hg| c(hg, f));
                    if let (Some(a), Some(b)) = (a, b) {
                        if a != b {
                            defects.push(Violation::new(
                                "associativity",
                                vec![mnames[h].clone(), mnames[g].clone(), mnames[f].clone()],
                            ));
                        }
                    }
                }
            }
        }
        if !defects.is_empty() {
            return Err(defects);
        }

        let obj_ix = onames.iter().cloned().zip(0..).collect();
        let mor_ix = mnames.iter().cloned().zip(0..).collect();
        Ok(Category {
            objects: onames,
            morphisms: mnames,
            src,
            tgt,
            identity: ident,
            compose,
            hom,
            obj_ix,
            mor_ix,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn arrow() -> Category {
        let mut b = Builder::new();
        let a = b.object("a");
        let bb = b.object("b");
        let ia = b.morphism("id_a", a, a);
        let ib = b.morphism("id_b", bb, bb);
        let u = b.morphism("u", a, bb);
        b.identity(a, ia);
        b.identity(bb, ib);
        b.compose(ia, ia, ia);
        b.compose(ib, ib, ib);
        b.compose(u, ia, u);
        b.compose(ib, u, u);
        b.build().unwrap()
    }

    #[test]
    fn arrow_builds_sorted() {
        let c = arrow();
        assert_eq!(c.obj_names(), ["a", "b"]);
        assert_eq!(c.mor_names(), ["id_a", "id_b", "u"]);
        let u = c.mor("u").unwrap();
        assert_eq!(c.hom(0, 1), [u]);
        assert!(!c.is_iso(u));
        assert!(c.is_mono(u));
    }

    #[test]
    fn broken_identity_is_reported() {
        let mut b = Builder::new();
        let a = b.object("a");
        let bb = b.object("b");
        let ia = b.morphism("id_a", a, a);
        let ib = b.morphism("id_b", bb, bb);
        let u = b.morphism("u", a, bb);
        b.identity(a, ia);
        b.identity(bb, ib);
        b.compose(ia, ia, ia);
        b.compose(ib, ib, ib);
        b.compose(u, ia, ia);
        b.compose(ib, u, u);
        let err = b.build().unwrap_err();
        assert!(err
            .iter()
            .any(|v| v.witnesses.contains(&"u".to_string()) && v.witnesses.contains(&"id_a".to_string())));
    }

    #[test]
    fn opposite_is_involutive() {
        let c = arrow();
        assert_eq!(c.opposite().opposite(), c);
        let op = c.opposite();
        let u = op.mor("u").unwrap();
        assert_eq!(op.src(u), op.obj("b").unwrap());
    }

    #[test]
    fn product_counts() {
        let c = arrow();
        let p = Category::product(&c, &c);
        assert_eq!(p.num_objects(), 4);
        assert_eq!(p.num_morphisms(), 9);
    }
}
