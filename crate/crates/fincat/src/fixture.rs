//! The on-disk fixture format: one main category plus named extras.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::category::{Category, Violation};
use crate::data::{CategoryData, ComposeData, FunctorData, MorphismData};
use crate::functor::Functor;

pub const SCHEMA_VERSION: u32 = 1;

/// Reading direction of a diagram.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    #[default]
    Ind,
    Pro,
}

/// A diagram `index -> target`, read as an ind- or pro-object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramData {
    pub index: CategoryData,
    pub body: FunctorData,
    #[serde(default)]
    pub variance: Variance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub schema_version: u32,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismData>,
    #[serde(default)]
    pub compose: Vec<ComposeData>,
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub classes: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub categories: BTreeMap<String, CategoryData>,
    #[serde(default)]
    pub functors: BTreeMap<String, FunctorData>,
    #[serde(default)]
    pub diagrams: BTreeMap<String, DiagramData>,
}

/// Name under which the top-level category is referenced.
pub const MAIN: &str = "main";

impl Fixture {
    pub fn main_data(&self) -> CategoryData {
        CategoryData {
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            compose: self.compose.clone(),
            identities: self.identities.clone(),
        }
    }

    pub fn category_data(&self, name: &str) -> Option<CategoryData> {
        if name == MAIN {
            Some(self.main_data())
        } else {
            self.categories.get(name).cloned()
        }
    }

    pub fn category(&self, name: &str) -> Result<Category, Vec<Violation>> {
        match self.category_data(name) {
            Some(d) => d.to_category(),
            None => Err(vec![Violation::new("unknown-category", vec![name.to_string()])]),
        }
    }

    /// A named functor with its resolved source and target.
    pub fn functor(&self, name: &str) -> Result<(Functor, Category, Category), Vec<Violation>> {
        let d = self
            .functors
            .get(name)
            .ok_or_else(|| vec![Violation::new("unknown-functor", vec![name.to_string()])])?;
        let s = self.category(&d.source)?;
        let t = self.category(&d.target)?;
        let f = d.to_functor(&s, &t)?;
        Ok((f, s, t))
    }

    /// Member indices of a named class in the main category.
    pub fn class(&self, c: &Category, name: &str) -> Result<Vec<usize>, Vec<Violation>> {
        let ids = self
            .classes
            .get(name)
            .ok_or_else(|| vec![Violation::new("unknown-class", vec![name.to_string()])])?;
        self.class_in(c, ids)
    }

    pub fn class_in(&self, c: &Category, ids: &[String]) -> Result<Vec<usize>, Vec<Violation>> {
        let mut out = Vec::new();
        let mut bad = Vec::new();
        for m in ids {
            match c.mor(m) {
                Some(i) => out.push(i),
                None => bad.push(Violation::new("class-dangling", vec![m.clone()])),
            }
        }
        if bad.is_empty() {
            out.sort_unstable();
            out.dedup();
            Ok(out)
        } else {
            Err(bad)
        }
    }
}
