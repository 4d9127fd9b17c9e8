//! Category file format.
//!
//! ```json
//! {"objects": ["[0]", "[1]"],
//!  "morphisms": [{"id":0,"name":"id0","dom":0,"cod":0}, ...],
//!  "identities": [0, 1],
//!  "comp": [[g, f, gf], ...]}
//! ```
//!
//! Names are decorative; ids are authoritative.

use super::{FinCategory, MorData};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismJson {
    pub id: usize,
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismJson>,
    pub identities: Vec<usize>,
    pub comp: Vec<[usize; 3]>,
}

pub fn category_to_json(cat: &FinCategory) -> CategoryJson {
    let mut comp = Vec::new();
    for g in cat.morphism_ids() {
        for f in cat.morphism_ids() {
            if let Some(gf) = cat.compose(g, f) {
                comp.push([g, f, gf]);
            }
        }
    }
    CategoryJson {
        objects: cat.object_names.clone(),
        morphisms: cat
            .morphisms
            .iter()
            .enumerate()
            .map(|(id, m)| MorphismJson {
                id,
                name: m.name.clone(),
                dom: m.dom,
                cod: m.cod,
            })
            .collect(),
        identities: cat.identity.clone(),
        comp,
    }
}

pub fn category_from_json(json: &CategoryJson) -> Result<FinCategory> {
    let n = json.morphisms.len();
    let mut morphisms = vec![
        MorData {
            name: String::new(),
            dom: 0,
            cod: 0
        };
        n
    ];
    for m in &json.morphisms {
        if m.id >= n {
            return Err(Error::MalformedCategory(format!(
                "morphism id {} out of range",
                m.id
            )));
        }
        morphisms[m.id] = MorData {
            name: m.name.clone(),
            dom: m.dom,
            cod: m.cod,
        };
    }
    let pairs: Vec<(usize, usize, usize)> =
        json.comp.iter().map(|&[g, f, gf]| (g, f, gf)).collect();
    FinCategory::from_tables(
        json.objects.clone(),
        morphisms,
        json.identities.clone(),
        &pairs,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn category_json_round_trip() {
        let (cat, _) = generators::simplex_trunc(2);
        let json = category_to_json(&cat);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: CategoryJson = serde_json::from_str(&text).unwrap();
        let back = category_from_json(&parsed).unwrap();
        assert!(back.same_shape(&cat));
        assert_eq!(back.object_names, cat.object_names);
    }
}
