//! JSON file formats. Loaders validate every record and name the offending
//! one in the error.
//!
//! - class: `{"domain_size": n, "hypotheses": [[y, ...], ...]}`
//! - sample: `[[x, y], ...]`
//! - distribution: `{"atoms": [{"x": x, "y": y, "p": p}, ...]}`
//! - menu: `{"p": p, "entries": {"x": [y, ...], ...}}`
//! - complex: `{"vertices": n, "maximal_faces": [[v, ...], ...], "coloring": [c, ...]}`
//! - group: `{"degree": n, "generators": [[cycle, ...], ...], "subgroups": [{"generators": [...]}]}`
//!   with 1-based cycles.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::class::{ConceptClass, FiniteDistribution, Label, LabeledExample, Menu, Sample};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::group::{from_cycles, FiniteGroup, Perm};

fn parse<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn label(v: i64, record: &str) -> Result<Label> {
    Label::try_from(v).map_err(|_| Error::Parse(format!("{record}: label {v} is not a non-negative 32-bit integer")))
}

fn index(v: i64, bound: usize, record: &str) -> Result<usize> {
    usize::try_from(v)
        .ok()
        .filter(|&i| i < bound)
        .ok_or_else(|| Error::Parse(format!("{record}: index {v} outside 0..{bound}")))
}

#[derive(Serialize, Deserialize)]
struct ClassFile {
    domain_size: usize,
    hypotheses: Vec<Vec<i64>>,
}

pub fn parse_class(text: &str) -> Result<ConceptClass> {
    let f: ClassFile = parse(text, "class")?;
    let mut words = Vec::with_capacity(f.hypotheses.len());
    for (i, h) in f.hypotheses.iter().enumerate() {
        let record = format!("hypothesis #{i}");
        if h.len() != f.domain_size {
            return Err(Error::Parse(format!("{record} has length {}, expected {}", h.len(), f.domain_size)));
        }
        words.push(h.iter().map(|&y| label(y, &record)).collect::<Result<Vec<_>>>()?);
    }
    ConceptClass::new(f.domain_size, words)
}

pub fn class_json(class: &ConceptClass) -> serde_json::Value {
    serde_json::json!({
        "domain_size": class.domain_size(),
        "hypotheses": class.words(),
    })
}

/// Parses a sample and checks its points against `domain_size`.
pub fn parse_sample(text: &str, domain_size: usize) -> Result<Sample> {
    let rows: Vec<Vec<i64>> = parse(text, "sample")?;
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            let record = format!("sample record #{i}");
            match r.as_slice() {
                &[x, y] => Ok(LabeledExample::new(index(x, domain_size, &record)?, label(y, &record)?)),
                _ => Err(Error::Parse(format!("{record} must be a pair [x, y]"))),
            }
        })
        .collect()
}

pub fn sample_json(sample: &Sample) -> serde_json::Value {
    serde_json::Value::from(sample.iter().map(|e| vec![e.x as u64, e.y as u64]).collect::<Vec<_>>())
}

#[derive(Deserialize)]
struct AtomRecord {
    x: i64,
    y: i64,
    p: f64,
}

#[derive(Deserialize)]
struct DistributionFile {
    atoms: Vec<AtomRecord>,
}

pub fn parse_distribution(text: &str, domain_size: usize) -> Result<FiniteDistribution> {
    let f: DistributionFile = parse(text, "distribution")?;
    let mut atoms = Vec::with_capacity(f.atoms.len());
    for (i, a) in f.atoms.iter().enumerate() {
        let record = format!("atom #{i}");
        if !a.p.is_finite() || a.p < 0.0 {
            return Err(Error::Parse(format!("{record}: probability {} is invalid", a.p)));
        }
        atoms.push((LabeledExample::new(index(a.x, domain_size, &record)?, label(a.y, &record)?), a.p));
    }
    FiniteDistribution::new(atoms).map_err(|e| Error::Parse(format!("distribution: {e}")))
}

#[derive(Deserialize)]
struct MenuFile {
    p: usize,
    entries: BTreeMap<String, Vec<i64>>,
}

pub fn parse_menu(text: &str, domain_size: usize) -> Result<Menu> {
    let f: MenuFile = parse(text, "menu")?;
    let mut menu = Menu::new(f.p);
    for (key, ys) in &f.entries {
        let record = format!("menu entry \"{key}\"");
        let x: i64 = key.parse().map_err(|_| Error::Parse(format!("{record}: key is not an integer")))?;
        let x = index(x, domain_size, &record)?;
        let labels: BTreeSet<Label> = ys.iter().map(|&y| label(y, &record)).collect::<Result<_>>()?;
        menu.set(x, labels).map_err(|e| Error::Parse(format!("{record}: {e}")))?;
    }
    Ok(menu)
}

pub fn menu_json(menu: &Menu) -> serde_json::Value {
    let entries: BTreeMap<String, &BTreeSet<Label>> =
        menu.entries().iter().map(|(x, ys)| (x.to_string(), ys)).collect();
    serde_json::json!({ "p": menu.size_bound(), "entries": entries })
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    vertices: usize,
    maximal_faces: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coloring: Option<Vec<i64>>,
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let f: ComplexFile = parse(text, "complex")?;
    let mut faces = Vec::with_capacity(f.maximal_faces.len());
    for (i, face) in f.maximal_faces.iter().enumerate() {
        let record = format!("face #{i}");
        if face.is_empty() {
            return Err(Error::Parse(format!("{record} is empty")));
        }
        faces.push(face.iter().map(|&v| index(v, f.vertices, &record)).collect::<Result<Vec<_>>>()?);
    }
    let c = SimplicialComplex::new(f.vertices, faces)?;
    match f.coloring {
        None => Ok(c),
        Some(r) => {
            if r.len() != f.vertices {
                return Err(Error::Parse(format!("coloring has {} entries for {} vertices", r.len(), f.vertices)));
            }
            let colors = r
                .iter()
                .enumerate()
                .map(|(v, &col)| {
                    usize::try_from(col).map_err(|_| Error::Parse(format!("coloring of vertex {v}: {col} is negative")))
                })
                .collect::<Result<_>>()?;
            c.with_coloring(colors)
        }
    }
}

pub fn complex_json(c: &SimplicialComplex) -> serde_json::Value {
    let mut v = serde_json::json!({
        "vertices": c.vertex_count(),
        "maximal_faces": c.maximal_faces(),
    });
    if let Some(r) = c.coloring() {
        v["coloring"] = serde_json::json!(r);
    }
    v
}

#[derive(Deserialize)]
struct SubgroupRecord {
    generators: Vec<Vec<Vec<u32>>>,
}

#[derive(Deserialize)]
struct GroupFile {
    degree: usize,
    generators: Vec<Vec<Vec<u32>>>,
    subgroups: Vec<SubgroupRecord>,
}

fn perms(degree: usize, gens: &[Vec<Vec<u32>>], record: &str) -> Result<Vec<Perm>> {
    gens.iter()
        .enumerate()
        .map(|(k, cycles)| {
            from_cycles(degree, cycles).map_err(|e| Error::Parse(format!("{record}, generator #{k}: {e}")))
        })
        .collect()
}

/// Parses and enumerates a group with its subgroup generators.
pub fn parse_group(text: &str, budget: &Budget) -> Result<(FiniteGroup, Vec<Vec<Perm>>)> {
    let f: GroupFile = parse(text, "group")?;
    let gens = perms(f.degree, &f.generators, "group")?;
    let subs = f
        .subgroups
        .iter()
        .enumerate()
        .map(|(i, s)| perms(f.degree, &s.generators, &format!("subgroup #{i}")))
        .collect::<Result<Vec<_>>>()?;
    Ok((FiniteGroup::generate(f.degree, gens, budget)?, subs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn class_round_trip() {
        let hex = catalog::hexagon();
        let text = class_json(&hex).to_string();
        assert_eq!(parse_class(&text).unwrap(), hex);
    }

    #[test]
    fn class_errors_name_the_record() {
        let e = parse_class(r#"{"domain_size": 2, "hypotheses": [[1, 2], [3]]}"#).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("hypothesis #1"), "{e}");
        let e = parse_class(r#"{"domain_size": 1, "hypotheses": [[-4]]}"#).unwrap_err();
        assert!(e.to_string().contains("hypothesis #0"), "{e}");
        assert!(parse_class("{").is_err());
    }

    #[test]
    fn samples_and_distributions() {
        let s = parse_sample("[[0, 1], [1, 2]]", 2).unwrap();
        assert_eq!(s, Sample::from_pairs(&[(0, 1), (1, 2)]));
        assert_eq!(parse_sample(&sample_json(&s).to_string(), 2).unwrap(), s);
        let e = parse_sample("[[0, 1], [5, 2]]", 2).unwrap_err();
        assert!(e.to_string().contains("sample record #1"), "{e}");
        assert!(parse_sample("[[0, 1, 2]]", 2).is_err());

        let d = parse_distribution(r#"{"atoms": [{"x": 0, "y": 1, "p": 0.25}, {"x": 1, "y": 2, "p": 0.75}]}"#, 2).unwrap();
        assert_eq!(d.atoms().len(), 2);
        let e = parse_distribution(r#"{"atoms": [{"x": 0, "y": 1, "p": -0.5}]}"#, 2).unwrap_err();
        assert!(e.to_string().contains("atom #0"), "{e}");
        assert!(parse_distribution(r#"{"atoms": [{"x": 0, "y": 1, "p": 0.5}]}"#, 2).is_err());
    }

    #[test]
    fn menus() {
        let m = parse_menu(r#"{"p": 2, "entries": {"0": [1, 3], "1": [2]}}"#, 2).unwrap();
        assert!(m.allows(0, 3) && !m.allows(1, 4));
        assert_eq!(parse_menu(&menu_json(&m).to_string(), 2).unwrap(), m);
        let e = parse_menu(r#"{"p": 1, "entries": {"0": [1, 3]}}"#, 2).unwrap_err();
        assert!(e.to_string().contains("\"0\""), "{e}");
        assert!(parse_menu(r#"{"p": 1, "entries": {"a": [1]}}"#, 2).is_err());
    }

    #[test]
    fn complexes_and_groups() {
        let c = parse_complex(r#"{"vertices": 4, "maximal_faces": [[0,1],[1,2],[2,3],[3,0]], "coloring": [0,1,0,1]}"#)
            .unwrap();
        assert_eq!(c.maximal_faces().len(), 4);
        assert_eq!(parse_complex(&complex_json(&c).to_string()).unwrap(), c);
        let e = parse_complex(r#"{"vertices": 2, "maximal_faces": [[0,1],[1,7]]}"#).unwrap_err();
        assert!(e.to_string().contains("face #1"), "{e}");

        let b = Budget::default();
        let (g, subs) =
            parse_group(r#"{"degree": 3, "generators": [[[1,2]],[[1,3]]], "subgroups": [{"generators": [[[1,2]]]}, {"generators": [[[1,3]]]}]}"#, &b)
                .unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(subs.len(), 2);
        let e = parse_group(r#"{"degree": 3, "generators": [[[1,4]]], "subgroups": []}"#, &b).unwrap_err();
        assert!(e.to_string().contains("generator #0"), "{e}");
    }
}
