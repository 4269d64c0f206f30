use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use fincat::{classify_filtered, colimit_raw, Builder, Category, FilteredReport, Functor, Violation};

use crate::hom::{colim_hom, IndMorphism};
use crate::object::IndObject;

/// The category of components of an ind-morphism, with its two projections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelizationResult {
    pub phi: Category,
    /// `(i, j, g: F_i -> G_j)` behind each object of `phi`.
    pub components: Vec<(usize, usize, usize)>,
    pub p1: Functor,
    pub p2: Functor,
    pub report: ParallelReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParallelReport {
    pub filtered: FilteredReport,
    pub projections_functorial: bool,
    pub p1_cofinal: bool,
    pub p2_cofinal: bool,
    pub colimits_preserved: bool,
    pub round_trip: bool,
    /// Anything that contradicts the expected shape, reported as found.
    pub findings: Vec<Violation>,
}

impl ParallelReport {
    pub fn ok(&self) -> bool {
        self.findings.is_empty()
    }
}

/// `p: phi -> k` is cofinal when every comma category `x/p` is nonempty and connected.
pub fn is_cofinal(phi: &Category, k: &Category, p: &Functor) -> bool {
    k.objects().all(|x| {
        let objs: Vec<(usize, usize)> = phi
            .objects()
            .flat_map(|o| k.hom(x, p.obj[o]).iter().map(move |&a| (o, a)))
            .collect();
        if objs.is_empty() {
            return false;
        }
        let ix: HashMap<(usize, usize), usize> = objs.iter().enumerate().map(|(n, &e)| (e, n)).collect();
        let mut uf = UnionFind::<usize>::new(objs.len());
        for m in phi.morphisms() {
            let (o, o2) = (phi.src(m), phi.tgt(m));
            for &a in k.hom(x, p.obj[o]) {
                let a2 = k.comp(p.mor[m], a);
                uf.union(ix[&(o, a)], ix[&(o2, a2)]);
            }
        }
        (1..objs.len()).all(|n| uf.equiv(0, n))
    })
}

/// Whether restricting `Hom(w, D_-)` along `p` leaves every colimit unchanged.
fn preserves_hom_colimits(c: &Category, phi: &Category, p: &Functor, d: &IndObject) -> bool {
    c.objects().all(|w| {
        let direct = colim_hom(c, w, d);
        // the same diagram pulled back to phi
        let sets: Vec<&[usize]> = phi.objects().map(|o| c.hom(w, d.value(p.obj[o]))).collect();
        let sizes: Vec<usize> = sets.iter().map(|s| s.len()).collect();
        let mut arrows = Vec::new();
        for m in phi.morphisms().filter(|&m| !phi.is_identity(m)) {
            let (o, o2) = (phi.src(m), phi.tgt(m));
            let dm = d.body.mor[p.mor[m]];
            let t = sets[o]
                .iter()
                .map(|&x| sets[o2].iter().position(|&y| y == c.comp(dm, x)).unwrap())
                .collect();
            arrows.push((o, o2, t));
        }
        let col = colimit_raw(&sizes, &arrows);
        if col.len() != direct.len() {
            return false;
        }
        // induced map must be a well-defined bijection
        let mut image = vec![None; col.len()];
        for o in phi.objects() {
            for (e, &x) in sets[o].iter().enumerate() {
                let tgt = direct.class_of(p.obj[o], x).unwrap();
                let k = col.cocone[o][e];
                match image[k] {
                    None => image[k] = Some(tgt),
                    Some(t) if t != tgt => return false,
                    _ => {}
                }
            }
        }
        let mut seen: Vec<usize> = image.into_iter().flatten().collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == direct.len()
    })
}

/// Build the category of components of `m: F -> G` (ind variance).
pub fn parallelize(c: &Category, f: &IndObject, g: &IndObject, m: &IndMorphism) -> ParallelizationResult {
    let (kf, kg) = (&f.index, &g.index);
    let mut comps = Vec::new();
    for i in kf.objects() {
        let col = colim_hom(c, f.value(i), g);
        for j in kg.objects() {
            for &x in c.hom(f.value(i), g.value(j)) {
                if col.canonical(j, x) == Some(m.comps[i]) {
                    comps.push((i, j, x));
                }
            }
        }
    }
    let oname = |&(i, j, x): &(usize, usize, usize)| {
        format!("({},{},{})", kf.obj_name(i), kg.obj_name(j), c.mor_name(x))
    };
    let mut b = Builder::new();
    let obj: Vec<usize> = comps.iter().map(|e| b.object(oname(e))).collect();
    // (a, b) : (i, j, x) -> (i2, j2, x2) with G(b) x = x2 F(a)
    let mut mors = Vec::new();
    for (n1, &(i, j, x)) in comps.iter().enumerate() {
        for (n2, &(i2, j2, x2)) in comps.iter().enumerate() {
            for &a in kf.hom(i, i2) {
                for &bb in kg.hom(j, j2) {
                    if c.comp(g.body.mor[bb], x) == c.comp(x2, f.body.mor[a]) {
                        let name = format!(
                            "({},{}):{}->{}",
                            kf.mor_name(a),
                            kg.mor_name(bb),
                            oname(&comps[n1]),
                            oname(&comps[n2])
                        );
                        let id = b.morphism(name.clone(), obj[n1], obj[n2]);
                        mors.push((id, n1, n2, a, bb, name));
                    }
                }
            }
        }
    }
    let mut key = HashMap::new();
    for &(id, n1, n2, a, bb, _) in &mors {
        key.insert((n1, n2, a, bb), id);
        if n1 == n2 && kf.is_identity(a) && kg.is_identity(bb) {
            b.identity(obj[n1], id);
        }
    }
    for &(g2, m, n, a2, b2, _) in &mors {
        for &(g1, l, m1, a1, b1, _) in &mors {
            if m1 == m {
                let gf = key[&(l, n, kf.comp(a2, a1), kg.comp(b2, b1))];
                b.compose(g2, g1, gf);
            }
        }
    }
    let phi = b.build().expect("component category is a category");

    let mut components = vec![(0, 0, 0); phi.num_objects()];
    for e in &comps {
        components[phi.obj(&oname(e)).unwrap()] = *e;
    }
    let mut p1m = vec![0; phi.num_morphisms()];
    let mut p2m = vec![0; phi.num_morphisms()];
    for (_, _, _, a, bb, name) in &mors {
        let id = phi.mor(name).unwrap();
        p1m[id] = *a;
        p2m[id] = *bb;
    }
    let p1 = Functor {
        obj: components.iter().map(|e| e.0).collect(),
        mor: p1m,
    };
    let p2 = Functor {
        obj: components.iter().map(|e| e.1).collect(),
        mor: p2m,
    };

    let mut findings = Vec::new();
    let filtered = classify_filtered(&phi);
    if !filtered.filtrant {
        findings.push(Violation::new("components-not-filtrant", vec![]));
    }
    let projections_functorial = p1.is_valid(&phi, kf) && p2.is_valid(&phi, kg);
    if !projections_functorial {
        findings.push(Violation::new("projection-not-functor", vec![]));
    }
    let p1_cofinal = projections_functorial && is_cofinal(&phi, kf, &p1);
    let p2_cofinal = projections_functorial && is_cofinal(&phi, kg, &p2);
    if !p1_cofinal {
        findings.push(Violation::new("p1-not-cofinal", vec![]));
    }
    if !p2_cofinal {
        findings.push(Violation::new("p2-not-cofinal", vec![]));
    }
    let colimits_preserved =
        projections_functorial && preserves_hom_colimits(c, &phi, &p1, f) && preserves_hom_colimits(c, &phi, &p2, g);
    if !colimits_preserved {
        findings.push(Violation::new("colimit-not-preserved", vec![]));
    }
    // reassemble: every index of F is covered and each component lands in its class
    let round_trip = kf.objects().all(|i| {
        let col = colim_hom(c, f.value(i), g);
        let over: Vec<_> = components.iter().filter(|e| e.0 == i).collect();
        !over.is_empty() && over.iter().all(|&&(_, j, x)| col.canonical(j, x) == Some(m.comps[i]))
    });
    if !round_trip {
        findings.push(Violation::new("round-trip", vec![]));
    }
    ParallelizationResult {
        phi,
        components,
        p1,
        p2,
        report: ParallelReport {
            filtered,
            projections_functorial,
            p1_cofinal,
            p2_cofinal,
            colimits_preserved,
            round_trip,
            findings,
        },
    }
}
