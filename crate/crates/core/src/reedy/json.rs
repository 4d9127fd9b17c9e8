//! Reedy-structure file format, attached to a category file:
//!
//! ```json
//! {"degree": {"0": 0, "1": 1}, "plus": [ids], "minus": [ids],
//!  "dualizable": true}
//! ```

use super::GeneralizedReedyStructure;
use crate::error::{Error, Result};
use crate::fincat::{Cat, WideSubcategory};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReedyJson {
    pub degree: BTreeMap<String, u32>,
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
    pub dualizable: bool,
}

pub fn structure_to_json(s: &GeneralizedReedyStructure, dualizable: bool) -> ReedyJson {
    ReedyJson {
        degree: s
            .degree
            .iter()
            .enumerate()
            .map(|(o, &d)| (o.to_string(), d))
            .collect(),
        plus: s
            .category
            .morphism_ids()
            .filter(|&m| s.plus.contains(m))
            .collect(),
        minus: s
            .category
            .morphism_ids()
            .filter(|&m| s.minus.contains(m))
            .collect(),
        dualizable,
    }
}

pub fn structure_from_json(cat: &Cat, json: &ReedyJson) -> Result<GeneralizedReedyStructure> {
    let mut degree = vec![0u32; cat.n_objects()];
    for (key, &d) in &json.degree {
        let o: usize = key
            .parse()
            .map_err(|_| Error::MalformedReedy(format!("bad object key {key}")))?;
        if o >= cat.n_objects() {
            return Err(Error::MalformedReedy(format!("object {o} out of range")));
        }
        degree[o] = d;
    }
    if json.degree.len() != cat.n_objects() {
        return Err(Error::MalformedReedy(
            "degree function must be defined on every object".into(),
        ));
    }
    let mut plus = vec![false; cat.n_morphisms()];
    for &m in &json.plus {
        if m >= cat.n_morphisms() {
            return Err(Error::MalformedReedy(format!("plus morphism {m} out of range")));
        }
        plus[m] = true;
    }
    let mut minus = vec![false; cat.n_morphisms()];
    for &m in &json.minus {
        if m >= cat.n_morphisms() {
            return Err(Error::MalformedReedy(format!("minus morphism {m} out of range")));
        }
        minus[m] = true;
    }
    GeneralizedReedyStructure::new(
        cat.clone(),
        degree,
        WideSubcategory { member: plus },
        WideSubcategory { member: minus },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn reedy_json_round_trip() {
        let (cat, s) = generators::simplex_trunc(2);
        let json = structure_to_json(&s, true);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: ReedyJson = serde_json::from_str(&text).unwrap();
        let back = structure_from_json(&cat, &parsed).unwrap();
        assert_eq!(back.degree, s.degree);
        assert_eq!(back.plus, s.plus);
        assert_eq!(back.minus, s.minus);
    }
}
