use std::collections::HashMap;

use fincat::{colimit_raw, Builder, Category, Functor, Variance, Violation};

use crate::hom::{canonicalize, colim_hom, compose, identity, IndMorphism};
use crate::object::IndObject;

/// How a functor `C -> Ind(D)` acts on one morphism `u: x -> y`: an index
/// functor `K_x -> K_y` and maps `theta_a: F(x)_a -> F(y)_{index(a)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub index: Functor,
    pub theta: Vec<usize>,
}

/// A strict functor `C -> Ind(D)` given on diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndValuedFunctor {
    pub objects: Vec<IndObject>,
    pub transitions: Vec<Transition>,
}

impl IndValuedFunctor {
    /// `i ∘ f` for an ordinary functor `f: C -> D`.
    pub fn constant(c: &Category, d: &Category, f: &Functor, variance: Variance) -> Self {
        let objects = c
            .objects()
            .map(|x| IndObject::constant(d, f.obj[x], variance))
            .collect();
        let pt = crate::object::point();
        let transitions = c
            .morphisms()
            .map(|u| Transition {
                index: Functor::identity(&pt),
                theta: vec![f.mor[u]],
            })
            .collect();
        IndValuedFunctor { objects, transitions }
    }

    pub fn violations(&self, c: &Category, d: &Category) -> Vec<Violation> {
        let mut out = Vec::new();
        for (x, o) in self.objects.iter().enumerate() {
            for v in o.violations(d) {
                out.push(Violation::new(&v.law, vec![c.obj_name(x).to_string()]));
            }
        }
        for u in c.morphisms() {
            let (x, y) = (c.src(u), c.tgt(u));
            let (fx, fy) = (&self.objects[x], &self.objects[y]);
            let t = &self.transitions[u];
            let w = || vec![c.mor_name(u).to_string()];
            if !t.index.is_valid(&fx.index, &fy.index) || t.theta.len() != fx.index.num_objects() {
                out.push(Violation::new("transition-index", w()));
                continue;
            }
            for a in fx.index.objects() {
                let th = t.theta[a];
                if d.src(th) != fx.value(a) || d.tgt(th) != fy.value(t.index.obj[a]) {
                    out.push(Violation::new("transition-endpoints", w()));
                }
            }
            if !out.is_empty() {
                continue;
            }
            for b in fx.index.morphisms() {
                let (a, a2) = (fx.index.src(b), fx.index.tgt(b));
                let lhs = d.comp(fy.body.mor[t.index.mor[b]], t.theta[a]);
                let rhs = d.comp(t.theta[a2], fx.body.mor[b]);
                if lhs != rhs {
                    out.push(Violation::new("transition-naturality", w()));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for x in c.objects() {
            let t = &self.transitions[c.id(x)];
            let fx = &self.objects[x];
            if t.index != Functor::identity(&fx.index)
                || fx.index.objects().any(|a| t.theta[a] != d.id(fx.value(a)))
            {
                out.push(Violation::new("transition-identity", vec![c.obj_name(x).to_string()]));
            }
        }
        for (v, u, vu) in c.table() {
            let (tu, tv, tvu) = (&self.transitions[u], &self.transitions[v], &self.transitions[vu]);
            let idx_ok = tu.index.then(&tv.index) == tvu.index;
            let th_ok = idx_ok
                && self.objects[c.src(u)]
                    .index
                    .objects()
                    .all(|a| tvu.theta[a] == d.comp(tv.theta[tu.index.obj[a]], tu.theta[a]));
            if !th_ok {
                out.push(Violation::new(
                    "transition-composition",
                    vec![c.mor_name(v).to_string(), c.mor_name(u).to_string()],
                ));
            }
        }
        out
    }

    /// The ind-morphism `F(u)`.
    pub fn morphism(&self, c: &Category, d: &Category, u: usize) -> IndMorphism {
        let (fx, fy) = (&self.objects[c.src(u)], &self.objects[c.tgt(u)]);
        let t = &self.transitions[u];
        let comps: Vec<(usize, usize)> = fx.index.objects().map(|a| (t.index.obj[a], t.theta[a])).collect();
        canonicalize(d, fx, fy, &comps).expect("transition maps are colimit elements")
    }

    /// The functor as objects and ind-morphisms.
    pub fn to_object_functor(&self, c: &Category, d: &Category) -> ObjectFunctor {
        ObjectFunctor {
            objects: self.objects.clone(),
            morphisms: c.morphisms().map(|u| self.morphism(c, d, u)).collect(),
        }
    }
}

/// A functor into Ind or Pro given by its values, with no strictness assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectFunctor {
    pub objects: Vec<IndObject>,
    pub morphisms: Vec<IndMorphism>,
}

impl ObjectFunctor {
    /// Identities and composites are preserved in Ind/Pro.
    pub fn violations(&self, c: &Category, d: &Category) -> Vec<Violation> {
        let mut out = Vec::new();
        for x in c.objects() {
            if self.morphisms[c.id(x)] != identity(d, &self.objects[x]) {
                out.push(Violation::new("functor-identity", vec![c.obj_name(x).to_string()]));
            }
        }
        for (g, f, gf) in c.table() {
            let (a, b) = (&self.objects[c.src(f)], &self.objects[c.tgt(g)]);
            if compose(d, a, b, &self.morphisms[f], &self.morphisms[g]) != self.morphisms[gf] {
                out.push(Violation::new(
                    "functor-composition",
                    vec![c.mor_name(g).to_string(), c.mor_name(f).to_string()],
                ));
            }
        }
        out
    }
}

/// Flatten `F ∘ X` for `X` an ind-object of `C` into one ind-object of `D`,
/// indexed by pairs `(i, a)` with `a` an index of `F(X_i)`.
pub fn extend_to_ind(
    c: &Category,
    d: &Category,
    f: &IndValuedFunctor,
    x: &IndObject,
) -> Result<IndObject, Vec<Violation>> {
    let bad = f.violations(c, d);
    if !bad.is_empty() {
        return Err(bad);
    }
    let ki = &x.index;
    let fib = |i: usize| &f.objects[x.value(i)];
    let tr = |m: usize| &f.transitions[x.body.mor[m]];
    let oname = |i: usize, a: usize| format!("({},{})", ki.obj_name(i), fib(i).index.obj_name(a));

    let mut b = Builder::new();
    let mut objs = Vec::new();
    let mut oid = HashMap::new();
    for i in ki.objects() {
        for a in fib(i).index.objects() {
            oid.insert((i, a), b.object(oname(i, a)));
            objs.push((i, a));
        }
    }
    // (m, beta): (i, a) -> (i2, a2) with beta: index_m(a) -> a2
    let mut mors = Vec::new();
    for &(i, a) in &objs {
        for m in ki.out_of(i) {
            let i2 = ki.tgt(m);
            let k2 = &fib(i2).index;
            let start = tr(m).index.obj[a];
            for beta in k2.out_of(start) {
                let a2 = k2.tgt(beta);
                let name = format!("({},{}):{}->{}", ki.mor_name(m), k2.mor_name(beta), oname(i, a), oname(i2, a2));
                let id = b.morphism(name.clone(), oid[&(i, a)], oid[&(i2, a2)]);
                mors.push((id, (i, a), (i2, a2), m, beta, name));
            }
        }
    }
    let mut key = HashMap::new();
    for &(id, s, _, m, beta, _) in &mors {
        key.insert((s, m, beta), id);
        if ki.is_identity(m) && fib(s.0).index.is_identity(beta) {
            b.identity(oid[&s], id);
        }
    }
    for &(g, s2, _, m2, b2, _) in &mors {
        for &(h, s1, t1, m1, b1, _) in &mors {
            if t1 == s2 {
                let k3 = &fib(ki.tgt(m2)).index;
                let beta = k3.comp(b2, tr(m2).index.mor[b1]);
                b.compose(g, h, key[&(s1, ki.comp(m2, m1), beta)]);
            }
        }
    }
    let index = b.build()?;
    let mut body_obj = vec![0; index.num_objects()];
    for &(i, a) in &objs {
        body_obj[index.obj(&oname(i, a)).unwrap()] = fib(i).value(a);
    }
    let mut body_mor = vec![0; index.num_morphisms()];
    for (_, (_, a), (i2, _), m, beta, name) in &mors {
        let v = d.comp(fib(*i2).body.mor[*beta], tr(*m).theta[*a]);
        body_mor[index.mor(name).unwrap()] = v;
    }
    IndObject::new(
        d,
        index,
        Functor {
            obj: body_obj,
            mor: body_mor,
        },
        Variance::Ind,
    )
}

/// Compare `colim Hom(w, -)` on the flattened object with the nested
/// `colim_i colim_a Hom(w, F(X_i)_a)`. Returns both sizes and whether the
/// canonical map between them is a bijection.
pub fn nested_hom_check(
    d: &Category,
    f: &IndValuedFunctor,
    x: &IndObject,
    flat: &IndObject,
    w: usize,
) -> (usize, usize, bool) {
    let ki = &x.index;
    let fib = |i: usize| &f.objects[x.value(i)];
    let inner: Vec<_> = ki.objects().map(|i| colim_hom(d, w, fib(i))).collect();
    let sizes: Vec<usize> = inner.iter().map(|h| h.len()).collect();
    let mut arrows = Vec::new();
    for m in ki.morphisms().filter(|&m| !ki.is_identity(m)) {
        let (i, i2) = (ki.src(m), ki.tgt(m));
        let t = &f.transitions[x.body.mor[m]];
        let table = inner[i]
            .reps
            .iter()
            .map(|&(a, g)| inner[i2].class_of(t.index.obj[a], d.comp(t.theta[a], g)).unwrap())
            .collect();
        arrows.push((i, i2, table));
    }
    let nested = colimit_raw(&sizes, &arrows);
    let fl = colim_hom(d, w, flat);
    // flat index object names are "(i,a)"; recover the pair by name
    let mut pair = HashMap::new();
    for i in ki.objects() {
        for a in fib(i).index.objects() {
            let n = format!("({},{})", ki.obj_name(i), fib(i).index.obj_name(a));
            pair.insert(flat.index.obj(&n).unwrap(), (i, a));
        }
    }
    let mut image: Vec<Option<usize>> = vec![None; fl.len()];
    let mut ok = true;
    for o in flat.index.objects() {
        let (i, a) = pair[&o];
        for &g in d.hom(w, flat.value(o)) {
            let cl = fl.class_of(o, g).unwrap();
            let inner_cl = inner[i].class_of(a, g).unwrap();
            let n = nested.cocone[i][inner_cl];
            match image[cl] {
                None => image[cl] = Some(n),
                Some(prev) if prev != n => ok = false,
                _ => {}
            }
        }
    }
    let mut seen: Vec<usize> = image.iter().flatten().copied().collect();
    seen.sort_unstable();
    seen.dedup();
    ok &= seen.len() == nested.len() && fl.len() == nested.len();
    (fl.len(), nested.len(), ok)
}
