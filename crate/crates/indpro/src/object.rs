use fincat::{classify_filtered, Builder, Category, DiagramData, Functor, Variance, Violation};

/// A diagram `index -> C` read as a formal colimit (ind) or formal limit (pro).
/// For pro variance the index is stored as given; it must be cofiltrant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndObject {
    pub index: Category,
    pub body: Functor,
    pub variance: Variance,
}

/// The one-object, one-morphism index.
pub fn point() -> Category {
    let mut b = Builder::new();
    let x = b.object("*");
    let i = b.morphism("id_*", x, x);
    b.identity(x, i);
    b.compose(i, i, i);
    b.build().expect("point category")
}

impl IndObject {
    pub fn new(c: &Category, index: Category, body: Functor, variance: Variance) -> Result<Self, Vec<Violation>> {
        let x = IndObject {
            index,
            body,
            variance,
        };
        let v = x.violations(c);
        if v.is_empty() {
            Ok(x)
        } else {
            Err(v)
        }
    }

    pub fn from_data(c: &Category, d: &DiagramData) -> Result<Self, Vec<Violation>> {
        let index = d.index.to_category()?;
        let body = d.body.to_functor(&index, c)?;
        Self::new(c, index, body, d.variance)
    }

    /// The constant object at `x`.
    pub fn constant(c: &Category, x: usize, variance: Variance) -> Self {
        IndObject {
            index: point(),
            body: Functor::constant_at(c, x),
            variance,
        }
    }

    pub fn violations(&self, c: &Category) -> Vec<Violation> {
        let mut v = self.body.violations(&self.index, c);
        let r = match self.variance {
            Variance::Ind => classify_filtered(&self.index),
            Variance::Pro => classify_filtered(&self.index.opposite()),
        };
        if !r.filtrant {
            v.push(Violation::new(
                "index-not-filtrant",
                r.witnesses.iter().flat_map(|w| w.witnesses.clone()).collect(),
            ));
        }
        v
    }

    /// The same diagram seen in the opposite category, variance flipped.
    pub fn op(&self) -> IndObject {
        IndObject {
            index: self.index.opposite(),
            body: self.body.clone(),
            variance: match self.variance {
                Variance::Ind => Variance::Pro,
                Variance::Pro => Variance::Ind,
            },
        }
    }

    /// Image under a functor of the ambient category.
    pub fn push(&self, f: &Functor) -> IndObject {
        IndObject {
            index: self.index.clone(),
            body: self.body.then(f),
            variance: self.variance,
        }
    }

    pub fn value(&self, i: usize) -> usize {
        self.body.obj[i]
    }

    pub fn is_constant(&self) -> bool {
        self.index.num_objects() == 1 && self.index.num_morphisms() == 1
    }

    /// Index is an ordered set and every transition morphism is a monomorphism.
    pub fn is_strict(&self, c: &Category) -> bool {
        let k = &self.index;
        let thin = k.objects().all(|x| {
            k.objects()
                .all(|y| k.hom(x, y).len() <= 1 && (x == y || k.hom(x, y).is_empty() || k.hom(y, x).is_empty()))
        });
        let cc = match self.variance {
            Variance::Ind => c.clone(),
            Variance::Pro => c.opposite(),
        };
        thin && k.morphisms().all(|m| cc.is_mono(self.body.mor[m]))
    }
}
