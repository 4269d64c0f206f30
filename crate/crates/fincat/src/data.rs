//! Serializable descriptions of categories and functors, as they appear in fixture files.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::category::{Builder, Category, Violation};
use crate::functor::Functor;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismData {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeData {
    pub g: String,
    pub f: String,
    pub gf: String,
}

/// A category as a composition table. Composites with an identity may be
/// omitted; they are filled in by the identity law.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryData {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismData>,
    #[serde(default)]
    pub compose: Vec<ComposeData>,
    pub identities: BTreeMap<String, String>,
}

/// Object and morphism maps; identities may be omitted from `morphisms`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorData {
    pub source: String,
    pub target: String,
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, String>,
}

impl CategoryData {
    pub fn to_category(&self) -> Result<Category, Vec<Violation>> {
        let mut b = Builder::new();
        let mut oix = BTreeMap::new();
        for o in &self.objects {
            oix.insert(o.as_str(), b.object(o.clone()));
        }
        let mut mix = BTreeMap::new();
        let mut ends = BTreeMap::new();
        for m in &self.morphisms {
            match (oix.get(m.src.as_str()), oix.get(m.tgt.as_str())) {
                (Some(&s), Some(&t)) => {
                    mix.insert(m.id.as_str(), b.morphism(m.id.clone(), s, t));
                    ends.insert(m.id.as_str(), (s, t));
                }
                _ => b.defect(Violation::new("dangling-object", vec![m.id.clone()])),
            }
        }
        let mut ident = BTreeMap::new();
        for (o, m) in &self.identities {
            match (oix.get(o.as_str()), mix.get(m.as_str())) {
                (Some(&x), Some(&i)) => {
                    b.identity(x, i);
                    ident.insert(x, i);
                }
                _ => b.defect(Violation::new("dangling-identity", vec![o.clone(), m.clone()])),
            }
        }
        let mut given = std::collections::BTreeSet::new();
        for c in &self.compose {
            match (
                mix.get(c.g.as_str()),
                mix.get(c.f.as_str()),
                mix.get(c.gf.as_str()),
            ) {
                (Some(&g), Some(&f), Some(&gf)) => {
                    b.compose(g, f, gf);
                    given.insert((g, f));
                }
                _ => b.defect(Violation::new(
                    "dangling-composite",
                    vec![c.g.clone(), c.f.clone(), c.gf.clone()],
                )),
            }
        }
        for (&name, &m) in &mix {
            let (s, t) = ends[name];
            if let Some(&i) = ident.get(&t) {
                if !given.contains(&(i, m)) {
                    b.compose(i, m, m);
                }
            }
            if let Some(&i) = ident.get(&s) {
                if !given.contains(&(m, i)) && !(s == t && ident.get(&t) == Some(&m)) {
                    b.compose(m, i, m);
                }
            }
        }
        b.build()
    }

    pub fn from_category(c: &Category) -> Self {
        CategoryData {
            objects: c.obj_names().to_vec(),
            morphisms: c
                .morphisms()
                .map(|m| MorphismData {
                    id: c.mor_name(m).to_string(),
                    src: c.obj_name(c.src(m)).to_string(),
                    tgt: c.obj_name(c.tgt(m)).to_string(),
                })
                .collect(),
            compose: c
                .table()
                .filter(|&(g, f, _)| !c.is_identity(g) && !c.is_identity(f))
                .map(|(g, f, gf)| ComposeData {
                    g: c.mor_name(g).to_string(),
                    f: c.mor_name(f).to_string(),
                    gf: c.mor_name(gf).to_string(),
                })
                .collect(),
            identities: c
                .objects()
                .map(|x| (c.obj_name(x).to_string(), c.mor_name(c.id(x)).to_string()))
                .collect(),
        }
    }
}

impl FunctorData {
    pub fn to_functor(&self, src: &Category, tgt: &Category) -> Result<Functor, Vec<Violation>> {
        let mut bad = Vec::new();
        let mut obj = vec![usize::MAX; src.num_objects()];
        for x in src.objects() {
            match self
                .objects
                .get(src.obj_name(x))
                .and_then(|y| tgt.obj(y))
            {
                Some(y) => obj[x] = y,
                None => bad.push(Violation::new(
                    "functor-object-unmapped",
                    vec![src.obj_name(x).to_string()],
                )),
            }
        }
        for k in self.objects.keys() {
            if src.obj(k).is_none() {
                bad.push(Violation::new("functor-dangling", vec![k.clone()]));
            }
        }
        for k in self.morphisms.keys() {
            if src.mor(k).is_none() {
                bad.push(Violation::new("functor-dangling", vec![k.clone()]));
            }
        }
        if !bad.is_empty() {
            return Err(bad);
        }
        let mut mor = vec![usize::MAX; src.num_morphisms()];
        for m in src.morphisms() {
            match self.morphisms.get(src.mor_name(m)) {
                Some(n) => match tgt.mor(n) {
                    Some(n) => mor[m] = n,
                    None => bad.push(Violation::new("functor-dangling", vec![n.clone()])),
                },
                None if src.is_identity(m) => mor[m] = tgt.id(obj[src.src(m)]),
                None => bad.push(Violation::new(
                    "functor-morphism-unmapped",
                    vec![src.mor_name(m).to_string()],
                )),
            }
        }
        if !bad.is_empty() {
            return Err(bad);
        }
        let f = Functor { obj, mor };
        let v = f.violations(src, tgt);
        if v.is_empty() {
            Ok(f)
        } else {
            Err(v)
        }
    }

    pub fn from_functor(f: &Functor, src: &Category, tgt: &Category, names: (&str, &str)) -> Self {
        FunctorData {
            source: names.0.to_string(),
            target: names.1.to_string(),
            objects: src
                .objects()
                .map(|x| (src.obj_name(x).to_string(), tgt.obj_name(f.obj[x]).to_string()))
                .collect(),
            morphisms: src
                .morphisms()
                .filter(|&m| !src.is_identity(m))
                .map(|m| (src.mor_name(m).to_string(), tgt.mor_name(f.mor[m]).to_string()))
                .collect(),
        }
    }
}

/// A functor to be checked alongside its category.
pub struct FunctorInput<'a> {
    pub name: &'a str,
    pub data: &'a FunctorData,
    pub source: &'a CategoryData,
    pub target: &'a CategoryData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub category: Vec<Violation>,
    pub functors: Vec<(String, Vec<Violation>)>,
}

/// Scan the composition table and every supplied functor for violated equations.
pub fn validate_structure(c: &CategoryData, fs: &[FunctorInput<'_>]) -> ValidationReport {
    let category = c.to_category().err().unwrap_or_default();
    let mut functors = Vec::new();
    for f in fs {
        let v = match (f.source.to_category(), f.target.to_category()) {
            (Ok(s), Ok(t)) => f.data.to_functor(&s, &t).err().unwrap_or_default(),
            _ => vec![Violation::new("functor-endpoint-category-invalid", vec![])],
        };
        functors.push((f.name.to_string(), v));
    }
    let valid = category.is_empty() && functors.iter().all(|(_, v)| v.is_empty());
    ValidationReport {
        valid,
        category,
        functors,
    }
}
