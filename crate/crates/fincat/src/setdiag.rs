//! Set-valued diagrams over finite index categories and their (co)limits.

use petgraph::unionfind::UnionFind;

use crate::category::{Category, Violation};
use crate::{Budget, Exhausted};

/// `sets[x]` lists the tokens over object `x`; `maps[m][e]` is the image of element `e` under `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetDiagram {
    pub index: Category,
    pub sets: Vec<Vec<String>>,
    pub maps: Vec<Vec<usize>>,
}

/// Colimit classes. Each class is named by its least member `(object, element)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colimit {
    pub reps: Vec<(usize, usize)>,
    /// `cocone[x][e]` is the class of element `e` over `x`.
    pub cocone: Vec<Vec<usize>>,
}

impl Colimit {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// Compatible families, one element per object, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limit {
    pub elements: Vec<Vec<usize>>,
}

impl Limit {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Colimit of sets of the given sizes along the listed maps `(from, to, table)`.
pub fn colimit_raw(sizes: &[usize], arrows: &[(usize, usize, Vec<usize>)]) -> Colimit {
    let mut offset = Vec::with_capacity(sizes.len());
    let mut total = 0;
    for &n in sizes {
        offset.push(total);
        total += n;
    }
    let mut uf = UnionFind::<usize>::new(total);
    for (a, b, t) in arrows {
        for (e, &img) in t.iter().enumerate() {
            uf.union(offset[*a] + e, offset[*b] + img);
        }
    }
    // flat order is (object, element) order, so the first member seen is the least
    let mut class_of_root = std::collections::HashMap::new();
    let mut reps = Vec::new();
    let mut cocone = vec![Vec::new(); sizes.len()];
    for (x, &n) in sizes.iter().enumerate() {
        for e in 0..n {
            let r = uf.find(offset[x] + e);
            let k = *class_of_root.entry(r).or_insert_with(|| {
                reps.push((x, e));
                reps.len() - 1
            });
            cocone[x].push(k);
        }
    }
    Colimit { reps, cocone }
}

/// Limit of sets of the given sizes along the listed maps, by backtracking.
pub fn limit_raw(
    sizes: &[usize],
    arrows: &[(usize, usize, Vec<usize>)],
    budget: &Budget,
) -> Result<Limit, Exhausted> {
    let n = sizes.len();
    let mut pick = vec![usize::MAX; n];
    let mut out = Vec::new();
    fn go(
        x: usize,
        sizes: &[usize],
        arrows: &[(usize, usize, Vec<usize>)],
        pick: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        budget: &Budget,
    ) -> Result<(), Exhausted> {
        if x == sizes.len() {
            out.push(pick.clone());
            return Ok(());
        }
        for e in 0..sizes[x] {
            budget.tick()?;
            pick[x] = e;
            let ok = arrows.iter().all(|(a, b, t)| {
                let (a, b) = (*a, *b);
                if a.max(b) != x {
                    return true;
                }
                t[pick[a]] == pick[b]
            });
            if ok {
                go(x + 1, sizes, arrows, pick, out, budget)?;
            }
        }
        pick[x] = usize::MAX;
        Ok(())
    }
    go(0, sizes, arrows, &mut pick, &mut out, budget)?;
    Ok(Limit { elements: out })
}

impl SetDiagram {
    fn arrows(&self) -> Vec<(usize, usize, Vec<usize>)> {
        self.index
            .morphisms()
            .filter(|&m| !self.index.is_identity(m))
            .map(|m| (self.index.src(m), self.index.tgt(m), self.maps[m].clone()))
            .collect()
    }

    fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }

    /// Every map that is ill-typed or breaks the composition table.
    pub fn violations(&self) -> Vec<Violation> {
        let c = &self.index;
        let mut out = Vec::new();
        if self.sets.len() != c.num_objects() || self.maps.len() != c.num_morphisms() {
            out.push(Violation::new("diagram-arity", vec![]));
            return out;
        }
        for m in c.morphisms() {
            let (a, b) = (c.src(m), c.tgt(m));
            if self.maps[m].len() != self.sets[a].len()
                || self.maps[m].iter().any(|&e| e >= self.sets[b].len())
            {
                out.push(Violation::new("map-shape", vec![c.mor_name(m).to_string()]));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for x in c.objects() {
            if self.maps[c.id(x)].iter().enumerate().any(|(e, &i)| e != i) {
                out.push(Violation::new("map-identity", vec![c.obj_name(x).to_string()]));
            }
        }
        for (g, f, gf) in c.table() {
            let ok = self.maps[f]
                .iter()
                .zip(&self.maps[gf])
                .all(|(&y, &z)| self.maps[g][y] == z);
            if !ok {
                out.push(Violation::new(
                    "map-composition",
                    vec![c.mor_name(g).to_string(), c.mor_name(f).to_string()],
                ));
            }
        }
        out
    }

    pub fn colimit(&self) -> Colimit {
        colimit_raw(&self.sizes(), &self.arrows())
    }

    pub fn limit(&self, budget: &Budget) -> Result<Limit, Exhausted> {
        limit_raw(&self.sizes(), &self.arrows(), budget)
    }

    /// Token of a colimit class, `object:element` of its least member.
    pub fn class_token(&self, col: &Colimit, k: usize) -> String {
        let (x, e) = col.reps[k];
        format!("{}:{}", self.index.obj_name(x), self.sets[x][e])
    }
}
