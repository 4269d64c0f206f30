use std::collections::HashMap;

use fincat::{colimit_raw, limit_raw, Budget, Category, Exhausted, Variance};

use crate::object::IndObject;

/// `colim_j Hom(a, G_j)`, classes named by their least `(j, g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColimHom {
    pub reps: Vec<(usize, usize)>,
    class: HashMap<(usize, usize), usize>,
}

impl ColimHom {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn class_of(&self, j: usize, g: usize) -> Option<usize> {
        self.class.get(&(j, g)).copied()
    }

    pub fn canonical(&self, j: usize, g: usize) -> Option<(usize, usize)> {
        self.class_of(j, g).map(|k| self.reps[k])
    }
}

/// Colimit over the index of `g` of `Hom_C(a, G_j)`, always read covariantly.
pub fn colim_hom(c: &Category, a: usize, g: &IndObject) -> ColimHom {
    let k = &g.index;
    let elems: Vec<&[usize]> = k.objects().map(|j| c.hom(a, g.value(j))).collect();
    let sizes: Vec<usize> = elems.iter().map(|e| e.len()).collect();
    let mut arrows = Vec::new();
    for n in k.morphisms().filter(|&n| !k.is_identity(n)) {
        let (j, j2) = (k.src(n), k.tgt(n));
        let gn = g.body.mor[n];
        let table = elems[j]
            .iter()
            .map(|&x| elems[j2].iter().position(|&y| y == c.comp(gn, x)).unwrap())
            .collect();
        arrows.push((j, j2, table));
    }
    let col = colimit_raw(&sizes, &arrows);
    let reps = col.reps.iter().map(|&(j, e)| (j, elems[j][e])).collect();
    let mut class = HashMap::new();
    for j in k.objects() {
        for (e, &x) in elems[j].iter().enumerate() {
            class.insert((j, x), col.cocone[j][e]);
        }
    }
    ColimHom { reps, class }
}

/// A morphism of ind-objects `F -> G`: for each index `i` of `F`, the least
/// representative `(j, g: F_i -> G_j)` of its component class.
///
/// For pro-objects the roles flip: components are indexed by the target's
/// index `j` and hold `(i, g: F_i -> G_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndMorphism {
    pub comps: Vec<(usize, usize)>,
}

/// `Hom(F, G)` in Ind or Pro, with the colimits used to name components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndHomSet {
    pub cols: Vec<ColimHom>,
    pub elements: Vec<IndMorphism>,
}

impl IndHomSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, m: &IndMorphism) -> Option<usize> {
        self.elements.iter().position(|e| e == m)
    }
}

fn ind_hom_raw(c: &Category, f: &IndObject, g: &IndObject, budget: &Budget) -> Result<IndHomSet, Exhausted> {
    let k = &f.index;
    let cols: Vec<ColimHom> = k.objects().map(|i| colim_hom(c, f.value(i), g)).collect();
    let sizes: Vec<usize> = cols.iter().map(ColimHom::len).collect();
    let mut arrows = Vec::new();
    for m in k.morphisms().filter(|&m| !k.is_identity(m)) {
        let (i, i2) = (k.src(m), k.tgt(m));
        let fm = f.body.mor[m];
        // restriction along m: class at i2 to class at i
        let table = cols[i2]
            .reps
            .iter()
            .map(|&(j, x)| cols[i].class_of(j, c.comp(x, fm)).unwrap())
            .collect();
        arrows.push((i2, i, table));
    }
    let lim = limit_raw(&sizes, &arrows, budget)?;
    let elements = lim
        .elements
        .iter()
        .map(|fam| IndMorphism {
            comps: fam.iter().enumerate().map(|(i, &cl)| cols[i].reps[cl]).collect(),
        })
        .collect();
    Ok(IndHomSet { cols, elements })
}

/// `Hom_{Ind C}(F, G) = lim_i colim_j Hom(F_i, G_j)`, or the dual for pro-objects.
pub fn ind_hom(c: &Category, f: &IndObject, g: &IndObject, budget: &Budget) -> Result<IndHomSet, Exhausted> {
    assert_eq!(f.variance, g.variance, "mixed variance");
    match f.variance {
        Variance::Ind => ind_hom_raw(c, f, g, budget),
        Variance::Pro => ind_hom_raw(&c.opposite(), &g.op(), &f.op(), budget),
    }
}

fn compose_raw(c: &Category, f: &IndObject, h: &IndObject, phi: &IndMorphism, psi: &IndMorphism) -> IndMorphism {
    IndMorphism {
        comps: f
            .index
            .objects()
            .map(|i| {
                let (j, g) = phi.comps[i];
                let (k, x) = psi.comps[j];
                colim_hom(c, f.value(i), h).canonical(k, c.comp(x, g)).unwrap()
            })
            .collect(),
    }
}

/// `psi ∘ phi` for `phi: F -> G`, `psi: G -> H`; only the ends `F`, `H` are needed.
pub fn compose(c: &Category, f: &IndObject, h: &IndObject, phi: &IndMorphism, psi: &IndMorphism) -> IndMorphism {
    match f.variance {
        Variance::Ind => compose_raw(c, f, h, phi, psi),
        Variance::Pro => compose_raw(&c.opposite(), &h.op(), &f.op(), psi, phi),
    }
}

pub fn identity(c: &Category, f: &IndObject) -> IndMorphism {
    let (cc, ff) = match f.variance {
        Variance::Ind => (c.clone(), f.clone()),
        Variance::Pro => (c.opposite(), f.op()),
    };
    IndMorphism {
        comps: ff
            .index
            .objects()
            .map(|i| colim_hom(&cc, ff.value(i), &ff).canonical(i, cc.id(ff.value(i))).unwrap())
            .collect(),
    }
}

/// Put arbitrary representatives into canonical form; `None` if some
/// representative is not an element of the component colimit.
pub fn canonicalize(c: &Category, f: &IndObject, g: &IndObject, comps: &[(usize, usize)]) -> Option<IndMorphism> {
    let (cc, src, tgt) = match f.variance {
        Variance::Ind => (c.clone(), f.clone(), g.clone()),
        Variance::Pro => (c.opposite(), g.op(), f.op()),
    };
    let comps = src
        .index
        .objects()
        .map(|i| colim_hom(&cc, src.value(i), &tgt).canonical(comps[i].0, comps[i].1))
        .collect::<Option<Vec<_>>>()?;
    Some(IndMorphism { comps })
}

/// A two-sided inverse of `phi: F -> G`, if any.
pub fn inverse(
    c: &Category,
    f: &IndObject,
    g: &IndObject,
    phi: &IndMorphism,
    budget: &Budget,
) -> Result<Option<IndMorphism>, Exhausted> {
    let back = ind_hom(c, g, f, budget)?;
    let (idf, idg) = (identity(c, f), identity(c, g));
    for psi in back.elements {
        budget.tick()?;
        if compose(c, f, f, phi, &psi) == idf && compose(c, g, g, &psi, phi) == idg {
            return Ok(Some(psi));
        }
    }
    Ok(None)
}

/// Some isomorphism `F -> G`, if the objects are isomorphic.
pub fn find_iso(
    c: &Category,
    f: &IndObject,
    g: &IndObject,
    budget: &Budget,
) -> Result<Option<(IndMorphism, IndMorphism)>, Exhausted> {
    for phi in ind_hom(c, f, g, budget)?.elements {
        if let Some(psi) = inverse(c, f, g, &phi, budget)? {
            return Ok(Some((phi, psi)));
        }
    }
    Ok(None)
}
