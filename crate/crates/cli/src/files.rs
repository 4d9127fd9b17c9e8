//! Bundle and presheaf file handling. A bundle carries a category with its
//! Reedy structure and, when applicable, a crossed group:
//!
//! ```json
//! {"category": {...}, "reedy": {...}, "crossed": {...}}
//! ```
//!
//! Presheaf files list values per object and the restriction map per
//! morphism of the base category (from values at its codomain to values at
//! its domain):
//!
//! ```json
//! {"shape": "d2.json", "values": {"0": ["a","b"]}, "actions": {"3": [0,1]}}
//! ```

use reedykit::crossed::{crossed_from_json, crossed_to_json, total_category, CrossedGroup, CrossedJson};
use reedykit::diagram::{DiagramMap, SetDiagram};
use reedykit::ez::EzStructure;
use reedykit::fincat::{category_from_json, category_to_json, Cat, CategoryJson};
use reedykit::generators;
use reedykit::group::Group;
use reedykit::reedy::{
    structure_from_json, structure_to_json, GeneralizedReedyStructure, ReedyJson,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Bundle {
    pub category: CategoryJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reedy: Option<ReedyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crossed: Option<CrossedJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresheafJson {
    pub shape: String,
    pub values: BTreeMap<String, Vec<String>>,
    pub actions: BTreeMap<String, Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapJson {
    pub components: BTreeMap<String, Vec<usize>>,
}

pub fn load_bundle(path: &Path) -> Result<Bundle, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("malformed bundle {}: {e}", path.display()))
}

pub fn save_bundle(bundle: &Bundle, path: &Path) -> Result<(), String> {
    std::fs::write(path, serde_json::to_string_pretty(bundle).unwrap())
        .map_err(|e| format!("cannot write {}: {e}", path.display()))
}

pub fn save_json<T: Serialize>(value: &T, path: &Path) -> Result<(), String> {
    std::fs::write(path, serde_json::to_string_pretty(value).unwrap())
        .map_err(|e| format!("cannot write {}: {e}", path.display()))
}

pub fn bundle_category(bundle: &Bundle) -> Result<Cat, String> {
    category_from_json(&bundle.category)
        .map(Arc::new)
        .map_err(|e| e.to_string())
}

pub fn bundle_structure(bundle: &Bundle) -> Result<GeneralizedReedyStructure, String> {
    let cat = bundle_category(bundle)?;
    let reedy = bundle
        .reedy
        .as_ref()
        .ok_or("bundle has no reedy structure")?;
    structure_from_json(&cat, reedy).map_err(|e| e.to_string())
}

pub fn bundle_ez(bundle: &Bundle) -> Result<EzStructure, String> {
    let s = bundle_structure(bundle)?;
    EzStructure::new(s.category.clone(), s.degree.clone()).map_err(|e| e.to_string())
}

pub fn bundle_crossed(bundle: &Bundle) -> Result<CrossedGroup, String> {
    let cat = bundle_category(bundle)?;
    let crossed = bundle.crossed.as_ref().ok_or("bundle has no crossed group")?;
    crossed_from_json(&cat, crossed).map_err(|e| e.to_string())
}

/// Loads a presheaf over the bundle's category: a diagram on the opposite
/// shape of the bundle's reversed structure.
pub fn load_presheaf(
    bundle: &Bundle,
    path: &Path,
) -> Result<(GeneralizedReedyStructure, SetDiagram), String> {
    let s = bundle_structure(bundle)?;
    let sop = s.opposite();
    let shape = sop.category.clone();
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let json: PresheafJson =
        serde_json::from_str(&text).map_err(|e| format!("malformed presheaf: {e}"))?;
    let mut values: Vec<Vec<String>> = vec![Vec::new(); shape.n_objects()];
    for (key, elems) in &json.values {
        let o: usize = key.parse().map_err(|_| format!("bad object key {key}"))?;
        if o >= shape.n_objects() {
            return Err(format!("object {o} out of range"));
        }
        values[o] = elems.clone();
    }
    let mut actions: Vec<Vec<usize>> = vec![Vec::new(); shape.n_morphisms()];
    for (key, table) in &json.actions {
        let m: usize = key.parse().map_err(|_| format!("bad morphism key {key}"))?;
        if m >= shape.n_morphisms() {
            return Err(format!("morphism {m} out of range"));
        }
        actions[m] = table.clone();
    }
    let diagram = SetDiagram {
        shape,
        values,
        actions,
    };
    diagram.validate().map_err(|e| e.to_string())?;
    Ok((sop, diagram))
}

pub fn presheaf_to_json(x: &SetDiagram, shape_ref: &Path) -> PresheafJson {
    PresheafJson {
        shape: shape_ref.display().to_string(),
        values: x
            .values
            .iter()
            .enumerate()
            .map(|(o, v)| (o.to_string(), v.clone()))
            .collect(),
        actions: x
            .actions
            .iter()
            .enumerate()
            .map(|(m, a)| (m.to_string(), a.clone()))
            .collect(),
    }
}

pub fn load_map(path: &Path, source: &SetDiagram, target: &SetDiagram) -> Result<DiagramMap, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let json: MapJson = serde_json::from_str(&text).map_err(|e| format!("malformed map: {e}"))?;
    let mut components = vec![Vec::new(); source.shape.n_objects()];
    for (key, comp) in &json.components {
        let o: usize = key.parse().map_err(|_| format!("bad object key {key}"))?;
        if o >= components.len() {
            return Err(format!("object {o} out of range"));
        }
        components[o] = comp.clone();
    }
    DiagramMap::new(source.clone(), target.clone(), components).map_err(|e| e.to_string())
}

fn group_by_name(name: &str) -> Result<Group, String> {
    Ok(match name {
        "trivial" => Group::trivial(),
        "z2" => Group::cyclic(2),
        "z3" => Group::cyclic(3),
        "z4" => Group::cyclic(4),
        "z5" => Group::cyclic(5),
        "z6" => Group::cyclic(6),
        "s3" => Group::symmetric(3),
        other => return Err(format!("unknown group {other}")),
    })
}

fn make_bundle(
    s: &GeneralizedReedyStructure,
    dualizable: bool,
    crossed: Option<&CrossedGroup>,
) -> Bundle {
    Bundle {
        category: category_to_json(&s.category),
        reedy: Some(structure_to_json(s, dualizable)),
        crossed: crossed.map(crossed_to_json),
    }
}

fn part_structure(spec: &str) -> Result<GeneralizedReedyStructure, String> {
    let (kind, param) = spec
        .split_once(':')
        .ok_or_else(|| format!("part {spec} must be kind:param"))?;
    Ok(match kind {
        "simplex" => generators::simplex_trunc(param.parse().map_err(|_| "bad degree")?).1,
        "cyclic" => generators::cyclic_trunc(param.parse().map_err(|_| "bad degree")?).1,
        "fin" => generators::fin_trunc(param.parse().map_err(|_| "bad degree")?).1,
        "gamma" => generators::gamma_trunc(param.parse().map_err(|_| "bad degree")?).1,
        "group" => generators::group_category(&group_by_name(param)?, 1).1,
        other => return Err(format!("unknown part kind {other}")),
    })
}

pub fn generate(
    kind: &str,
    max_degree: usize,
    group: &str,
    objects: usize,
    variant: &str,
    parts: Option<&str>,
) -> Result<Bundle, String> {
    match kind {
        "simplex" => {
            let (_, s) = generators::simplex_trunc(max_degree);
            Ok(make_bundle(&s, true, None))
        }
        "cyclic" => {
            let (_, s, crossed) = generators::cyclic_trunc_with_crossed(max_degree);
            let _ = &crossed;
            // the crossed group lives on the simplex base; ship it with the
            // base bundle via `gen crossed-base`, while the cyclic bundle
            // carries the total category
            Ok(make_bundle(&s, true, None))
        }
        "crossed-base" => {
            let crossed = generators::simplicial_crossed_group(
                max_degree,
                generators::SimplicialCrossedKind::Cyclic,
            );
            let (_, s) = generators::simplex_trunc(max_degree);
            Ok(make_bundle(&s, true, Some(&crossed)))
        }
        "symmetric" => {
            let (_, s) = generators::sym_trunc(max_degree);
            Ok(make_bundle(&s, true, None))
        }
        "fin" => {
            let (_, s) = generators::fin_trunc(max_degree);
            Ok(make_bundle(&s, true, None))
        }
        "gamma" => {
            let (_, s) = generators::gamma_trunc(max_degree);
            Ok(make_bundle(&s, true, None))
        }
        "orbit" => {
            let g = group_by_name(group)?;
            let v = match variant {
                "minus" => generators::OrbitVariant::Minus,
                "plus" => generators::OrbitVariant::Plus,
                other => return Err(format!("unknown variant {other}")),
            };
            let (_, s) = generators::orbit_category(&g, v);
            Ok(make_bundle(&s, matches!(v, generators::OrbitVariant::Minus), None))
        }
        "cog" => {
            let (_, s) = generators::cog_edge_z2();
            Ok(make_bundle(&s, true, None))
        }
        "group" => {
            let g = group_by_name(group)?;
            let (_, s) = generators::group_category(&g, objects);
            Ok(make_bundle(&s, true, None))
        }
        "product" | "coproduct" => {
            let spec = parts.ok_or("product/coproduct need --parts")?;
            let mut structures = Vec::new();
            for part in spec.split(',') {
                structures.push(part_structure(part)?);
            }
            if structures.len() < 2 {
                return Err("need at least two parts".into());
            }
            let mut acc = structures[0].clone();
            for next in &structures[1..] {
                acc = if kind == "product" {
                    generators::product_structure(&acc, next).0
                } else {
                    generators::coproduct_structure(&acc, next)
                };
            }
            Ok(make_bundle(&acc, true, None))
        }
        other => Err(format!("unknown generator kind {other}")),
    }
}

pub fn total_bundle(bundle: &Bundle) -> Result<Bundle, String> {
    let crossed = bundle_crossed(bundle)?;
    let s = bundle_structure(bundle)?;
    let total = total_category(&crossed).map_err(|e| e.to_string())?;
    let induced = reedykit::crossed::compatibility_and_induced(&crossed, &s, &total)
        .map_err(|e| e.to_string())?;
    Ok(make_bundle(&induced, true, None))
}
