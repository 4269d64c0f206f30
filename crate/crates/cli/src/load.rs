//! Reading fixture files, with key paths on every parse error.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::Value;

use fincat::{CategoryData, Fixture, FunctorData, MAIN, SCHEMA_VERSION};
use trider::ComplexFixture;

use crate::report::Failure;

#[derive(Clone, Debug)]
pub enum AnyFixture {
    Category(Box<Fixture>),
    Complexes(ComplexFixture),
}

fn read_value(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display()), None))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::parse(format!("{}: invalid JSON: {e}", path.display()), None))?;
    match v.get("schema_version") {
        None => {
            return Err(Failure::parse(
                "missing schema_version",
                Some("schema_version".into()),
            ))
        }
        Some(s) if s.as_u64() != Some(SCHEMA_VERSION as u64) => {
            return Err(Failure::parse(
                format!("unsupported schema_version {s}, expected {SCHEMA_VERSION}"),
                Some("schema_version".into()),
            ))
        }
        _ => {}
    }
    Ok(v)
}

fn typed<T: DeserializeOwned>(v: Value) -> Result<T, Failure> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let path = e.path().to_string();
        Failure::parse(e.into_inner().to_string(), Some(path))
    })
}

pub fn read_any(path: &Path) -> Result<AnyFixture, Failure> {
    let v = read_value(path)?;
    if v.get("complexes").is_some() {
        let fx: ComplexFixture = typed(v)?;
        check_complexes(&fx)?;
        Ok(AnyFixture::Complexes(fx))
    } else {
        let fx: Fixture = typed(v)?;
        check_references(&fx)?;
        Ok(AnyFixture::Category(Box::new(fx)))
    }
}

pub fn read_category_fixture(path: &Path) -> Result<Fixture, Failure> {
    match read_any(path)? {
        AnyFixture::Category(f) => Ok(*f),
        AnyFixture::Complexes(_) => Err(Failure::parse(
            "expected a category fixture, found complexes",
            Some("complexes".into()),
        )),
    }
}

pub fn read_complex_fixture(path: &Path) -> Result<ComplexFixture, Failure> {
    match read_any(path)? {
        AnyFixture::Complexes(f) => Ok(f),
        AnyFixture::Category(_) => Err(Failure::parse(
            "expected a complex fixture",
            Some("complexes".into()),
        )),
    }
}

fn dangling(path: String, what: &str, name: &str) -> Failure {
    Failure::parse(format!("unknown {what} '{name}'"), Some(path))
}

/// Every name a category table mentions must be declared, and composable
/// entries must have matching ends.
fn check_category(prefix: &str, d: &CategoryData) -> Result<(), Failure> {
    let at = |s: String| {
        if prefix.is_empty() {
            s
        } else {
            format!("{prefix}.{s}")
        }
    };
    let objects: BTreeSet<&str> = d.objects.iter().map(String::as_str).collect();
    let mut ends: BTreeMap<&str, (&str, &str)> = BTreeMap::new();
    for (i, m) in d.morphisms.iter().enumerate() {
        for (key, o) in [("src", &m.src), ("tgt", &m.tgt)] {
            if !objects.contains(o.as_str()) {
                return Err(dangling(at(format!("morphisms[{i}].{key}")), "object", o));
            }
        }
        ends.insert(&m.id, (&m.src, &m.tgt));
    }
    for (i, e) in d.compose.iter().enumerate() {
        for (key, m) in [("g", &e.g), ("f", &e.f), ("gf", &e.gf)] {
            if !ends.contains_key(m.as_str()) {
                return Err(dangling(at(format!("compose[{i}].{key}")), "morphism", m));
            }
        }
        let (g, f, gf) = (ends[e.g.as_str()], ends[e.f.as_str()], ends[e.gf.as_str()]);
        if f.1 != g.0 {
            return Err(Failure::parse(
                format!("'{}' does not start where '{}' ends", e.g, e.f),
                Some(at(format!("compose[{i}].g"))),
            ));
        }
        if gf != (f.0, g.1) {
            return Err(Failure::parse(
                format!("'{}' does not run from {} to {}", e.gf, f.0, g.1),
                Some(at(format!("compose[{i}].gf"))),
            ));
        }
    }
    for (o, m) in &d.identities {
        if !objects.contains(o.as_str()) {
            return Err(dangling(at(format!("identities.{o}")), "object", o));
        }
        if !ends.contains_key(m.as_str()) {
            return Err(dangling(at(format!("identities.{o}")), "morphism", m));
        }
    }
    Ok(())
}

fn check_functor(
    prefix: &str,
    d: &FunctorData,
    src: &CategoryData,
    tgt: &CategoryData,
) -> Result<(), Failure> {
    let has_obj = |c: &CategoryData, o: &str| c.objects.iter().any(|x| x == o);
    let has_mor = |c: &CategoryData, m: &str| c.morphisms.iter().any(|x| x.id == m);
    for (a, b) in &d.objects {
        if !has_obj(src, a) {
            return Err(dangling(
                format!("{prefix}.objects.{a}"),
                "source object",
                a,
            ));
        }
        if !has_obj(tgt, b) {
            return Err(dangling(
                format!("{prefix}.objects.{a}"),
                "target object",
                b,
            ));
        }
    }
    for (a, b) in &d.morphisms {
        if !has_mor(src, a) {
            return Err(dangling(
                format!("{prefix}.morphisms.{a}"),
                "source morphism",
                a,
            ));
        }
        if !has_mor(tgt, b) {
            return Err(dangling(
                format!("{prefix}.morphisms.{a}"),
                "target morphism",
                b,
            ));
        }
    }
    Ok(())
}

fn check_references(fx: &Fixture) -> Result<(), Failure> {
    let main = fx.main_data();
    check_category("", &main)?;
    for (name, d) in &fx.categories {
        if name == MAIN {
            return Err(Failure::parse(
                "'main' is reserved for the top-level category",
                Some(format!("categories.{name}")),
            ));
        }
        check_category(&format!("categories.{name}"), d)?;
    }
    for (name, ids) in &fx.classes {
        for (i, m) in ids.iter().enumerate() {
            if !main.morphisms.iter().any(|x| &x.id == m) {
                return Err(dangling(format!("classes.{name}[{i}]"), "morphism", m));
            }
        }
    }
    for (name, f) in &fx.functors {
        let p = format!("functors.{name}");
        let src = fx
            .category_data(&f.source)
            .ok_or_else(|| dangling(format!("{p}.source"), "category", &f.source))?;
        let tgt = fx
            .category_data(&f.target)
            .ok_or_else(|| dangling(format!("{p}.target"), "category", &f.target))?;
        check_functor(&p, f, &src, &tgt)?;
    }
    for (name, d) in &fx.diagrams {
        let p = format!("diagrams.{name}");
        check_category(&format!("{p}.index"), &d.index)?;
        let tgt = fx
            .category_data(&d.body.target)
            .ok_or_else(|| dangling(format!("{p}.body.target"), "category", &d.body.target))?;
        check_functor(&format!("{p}.body"), &d.body, &d.index, &tgt)?;
    }
    Ok(())
}

fn check_complexes(fx: &ComplexFixture) -> Result<(), Failure> {
    for (name, m) in &fx.maps {
        for (key, c) in [("src", &m.src), ("tgt", &m.tgt)] {
            if !fx.complexes.contains_key(c) {
                return Err(dangling(format!("maps.{name}.{key}"), "complex", c));
            }
        }
    }
    for (name, c) in &fx.complexes {
        for key in c.degrees.keys().chain(c.differentials.keys()) {
            if key.parse::<i32>().is_err() {
                return Err(Failure::parse(
                    format!("degree '{key}' is not an integer"),
                    Some(format!("complexes.{name}")),
                ));
            }
        }
    }
    Ok(())
}

/// Parse `a..b` (inclusive) or a single integer.
pub fn parse_range(s: &str) -> Result<Vec<i32>, String> {
    let bad = || format!("'{s}' is not an integer or a range a..b");
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b): (i32, i32) = (
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            );
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![s.trim().parse().map_err(|_| bad())?]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0..4").unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(parse_range("-2..-1").unwrap(), vec![-2, -1]);
        assert_eq!(parse_range("3").unwrap(), vec![3]);
        assert!(parse_range("4..0").is_err());
        assert!(parse_range("a..b").is_err());
    }
}
