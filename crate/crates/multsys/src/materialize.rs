use std::collections::HashMap;

use fincat::{Builder, Category, Functor, TieBreak, Violation};

use crate::hom::{formula_allowed, hom_unchecked, Fraction, HomSet};
use crate::system::{complete_right, validate_mult_system, MorphismClass, Side};
use crate::LocError;

/// `C_S` as a finite category, with `Q: C -> C_S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedCategory {
    pub cat: Category,
    pub q: Functor,
    /// Canonical fraction behind each morphism of `cat`.
    pub fraction: Vec<Fraction>,
    pub side: Side,
}

impl LocalizedCategory {
    /// The morphism of `C_S` represented by a fraction, if the fraction is well formed.
    pub fn morphism_of(&self, f: &Fraction) -> Option<usize> {
        self.fraction.iter().position(|g| g == f)
    }
}

/// Build `C_S` from the right (or, failing that, left) calculus of fractions.
pub fn materialize_localization(
    c: &Category,
    s: &MorphismClass,
    tb: TieBreak,
    bound: usize,
) -> Result<LocalizedCategory, LocError> {
    let report = validate_mult_system(c, s);
    let mut tried = Vec::new();
    for side in [Side::Right, Side::Left] {
        let ok = match side {
            Side::Right => report.right_quasi_saturated,
            _ => report.left_quasi_saturated,
        };
        match formula_allowed(s, &report, side) {
            Ok(()) if ok => return materialize_unchecked(c, s, side, tb, bound),
            Ok(()) => tried.push(format!("{side:?}-quasi-saturation").to_lowercase()),
            Err(LocError::FormulaUnsupported { missing, .. }) => tried.extend(missing),
            Err(e) => return Err(e),
        }
    }
    tried.sort();
    tried.dedup();
    Err(LocError::FormulaUnsupported {
        formula: s.side,
        missing: tried,
    })
}

/// Materialize assuming the axioms of `side` hold.
pub fn materialize_unchecked(
    c: &Category,
    s: &MorphismClass,
    side: Side,
    tb: TieBreak,
    bound: usize,
) -> Result<LocalizedCategory, LocError> {
    match side {
        Side::Left => {
            let op = c.opposite();
            let l = materialize_unchecked(&op, s, Side::Right, tb, bound)?;
            // an op right fraction (t, g) is the left fraction (s = t, g)
            let fraction = l
                .fraction
                .iter()
                .map(|f| Fraction {
                    s: f.t,
                    g: f.g,
                    t: c.id(c.src(f.s)),
                })
                .collect();
            Ok(LocalizedCategory {
                cat: l.cat.opposite(),
                q: l.q,
                fraction,
                side: Side::Left,
            })
        }
        _ => right(c, s, tb, bound),
    }
}

fn right(c: &Category, s: &MorphismClass, tb: TieBreak, bound: usize) -> Result<LocalizedCategory, LocError> {
    let n = c.num_objects();
    let mut homs: Vec<Vec<HomSet>> = Vec::with_capacity(n);
    let mut total = 0;
    for x in c.objects() {
        let mut row = Vec::with_capacity(n);
        for y in c.objects() {
            let h = hom_unchecked(c, s, x, y, Side::Right);
            total += h.len();
            if total > bound {
                return Err(LocError::TooLarge { bound });
            }
            row.push(h);
        }
        homs.push(row);
    }

    let name = |f: &Fraction| format!("[{}|{}]", c.mor_name(f.t), c.mor_name(f.g));
    let mut b = Builder::new();
    for x in c.objects() {
        b.object(c.obj_name(x).to_string());
    }
    // builder id of class k in Hom(x, y)
    let mut bid: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; n];
    for x in c.objects() {
        for y in c.objects() {
            for f in &homs[x][y].reps {
                bid[x][y].push(b.morphism(name(f), x, y));
            }
        }
    }
    let class_of = |x: usize, z: usize, f: &Fraction| -> Result<usize, LocError> {
        homs[x][z].class_of(f).ok_or_else(|| {
            LocError::Inconsistent(vec![Violation::new("fraction-outside-colimit", vec![f.token(c)])])
        })
    };
    for x in c.objects() {
        let idf = Fraction {
            s: c.id(x),
            g: c.id(x),
            t: c.id(x),
        };
        b.identity(x, bid[x][x][class_of(x, x, &idf)?]);
    }

    // (u, h) ∘ (t, g): complete h against t, giving h'∘t = t2∘h
    let compose = |a: &Fraction, bb: &Fraction| -> Result<Fraction, LocError> {
        let (t2, hp) = complete_right(c, s, a.t, bb.g, tb).ok_or_else(|| {
            LocError::Inconsistent(vec![Violation::new(
                "right-S3",
                vec![c.mor_name(a.t).to_string(), c.mor_name(bb.g).to_string()],
            )])
        })?;
        Ok(Fraction {
            s: a.s,
            g: c.comp(hp, a.g),
            t: c.comp(t2, bb.t),
        })
    };

    for x in c.objects() {
        for y in c.objects() {
            for z in c.objects() {
                let (hxy, hyz) = (&homs[x][y], &homs[y][z]);
                for (i, ra) in hxy.reps.iter().enumerate() {
                    for (j, rb) in hyz.reps.iter().enumerate() {
                        let k = class_of(x, z, &compose(ra, rb)?)?;
                        // every representative pair must land in the same class
                        for ma in &hxy.members[i] {
                            for mb in &hyz.members[j] {
                                let k2 = class_of(x, z, &compose(ma, mb)?)?;
                                if k2 != k {
                                    return Err(LocError::Inconsistent(vec![Violation::new(
                                        "ambiguous-composition",
                                        vec![ma.token(c), mb.token(c)],
                                    )]));
                                }
                            }
                        }
                        b.compose(bid[y][z][j], bid[x][y][i], bid[x][z][k]);
                    }
                }
            }
        }
    }
    let cat = b.build().map_err(LocError::Inconsistent)?;

    let mut fraction = vec![
        Fraction {
            s: 0,
            g: 0,
            t: 0
        };
        cat.num_morphisms()
    ];
    let mut by_name = HashMap::new();
    for x in c.objects() {
        for y in c.objects() {
            for f in &homs[x][y].reps {
                let m = cat.mor(&name(f)).expect("class was added");
                fraction[m] = *f;
                by_name.insert((x, y, homs[x][y].class_of(f).unwrap()), m);
            }
        }
    }
    let mut qm = Vec::with_capacity(c.num_morphisms());
    for f in c.morphisms() {
        let (x, y) = (c.src(f), c.tgt(f));
        let fr = Fraction {
            s: c.id(x),
            g: f,
            t: c.id(y),
        };
        qm.push(by_name[&(x, y, class_of(x, y, &fr)?)]);
    }
    let q = Functor {
        obj: c.objects().map(|x| cat.obj(c.obj_name(x)).unwrap()).collect(),
        mor: qm,
    };
    let v = q.violations(c, &cat);
    if !v.is_empty() {
        return Err(LocError::Inconsistent(v));
    }
    Ok(LocalizedCategory {
        cat,
        q,
        fraction,
        side: Side::Right,
    })
}
