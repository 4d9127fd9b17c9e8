//! Finite Set-valued diagrams (covariant functors) on a finite category,
//! natural transformations, and their (co)limit calculus. Presheaves on R
//! are diagrams on the opposite category.

mod colimit;
mod kan;
mod ops;

pub use colimit::{
    colimit, compatible_families, limit, naive_colimit_components, naive_limit_families,
    verify_colimit_universal, CoconeResult, ConeResult,
};
pub use kan::{
    lan, lan_counit, lan_on_map, projection_formula_check, projection_formula_witness, ran,
    ran_on_map, ran_unit, IsoWitness, LanResult, RanResult, Variance,
};
pub use ops::{
    coproduct, diagram_image, diagram_pullback, diagram_pushout, equalize_quotient,
    subdiagram_closure, PushoutResult,
};

use crate::error::{Error, Result};
use crate::fincat::{Cat, MorId, ObjId};
use serde::{Deserialize, Serialize};

/// A finite Set-valued diagram: one finite set per object (elements are dense
/// indices), one action table per morphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetDiagram {
    #[serde(skip, default = "empty_shape")]
    pub shape: Cat,
    /// element names per object; sizes are authoritative, names decorative
    pub values: Vec<Vec<String>>,
    /// `action[m][x]` for x in values at dom m, landing in values at cod m
    pub actions: Vec<Vec<usize>>,
}

fn empty_shape() -> Cat {
    std::sync::Arc::new(crate::fincat::FinCategory::terminal())
}

impl SetDiagram {
    pub fn new(shape: Cat, sizes: &[usize], actions: Vec<Vec<usize>>) -> Result<Self> {
        let values = sizes
            .iter()
            .map(|&n| (0..n).map(|i| i.to_string()).collect())
            .collect();
        let d = SetDiagram {
            shape,
            values,
            actions,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn empty(shape: Cat) -> Self {
        let n_obj = shape.n_objects();
        let n_mor = shape.n_morphisms();
        SetDiagram {
            shape,
            values: vec![Vec::new(); n_obj],
            actions: vec![Vec::new(); n_mor],
        }
    }

    pub fn terminal_diagram(shape: Cat) -> Self {
        let n_obj = shape.n_objects();
        let n_mor = shape.n_morphisms();
        SetDiagram {
            shape,
            values: vec![vec!["*".to_string()]; n_obj],
            actions: vec![vec![0]; n_mor],
        }
    }

    /// The covariant hom-diagram Hom(r, −). On the opposite shape this is the
    /// Yoneda presheaf of r.
    pub fn corepresentable(shape: &Cat, r: ObjId) -> Self {
        let values: Vec<Vec<String>> = shape
            .object_ids()
            .map(|a| {
                shape
                    .hom(r, a)
                    .iter()
                    .map(|&u| shape.mor_name(u).to_string())
                    .collect()
            })
            .collect();
        let actions = shape
            .morphism_ids()
            .map(|m| {
                let (a, b) = (shape.dom(m), shape.cod(m));
                shape
                    .hom(r, a)
                    .iter()
                    .map(|&u| {
                        let mu = shape.compose(m, u).expect("composable");
                        shape.hom(r, b).iter().position(|&v| v == mu).unwrap()
                    })
                    .collect()
            })
            .collect();
        SetDiagram {
            shape: shape.clone(),
            values,
            actions,
        }
    }

    pub fn size(&self, o: ObjId) -> usize {
        self.values[o].len()
    }

    pub fn total_elements(&self) -> usize {
        self.values.iter().map(|v| v.len()).sum()
    }

    pub fn apply(&self, m: MorId, x: usize) -> usize {
        self.actions[m][x]
    }

    /// Functoriality: identities act as identities, composites compose.
    pub fn validate(&self) -> Result<()> {
        let shape = &self.shape;
        if self.values.len() != shape.n_objects() || self.actions.len() != shape.n_morphisms() {
            return Err(Error::MalformedDiagram(
                "value/action tables have wrong length".into(),
            ));
        }
        for m in shape.morphism_ids() {
            let (a, b) = (shape.dom(m), shape.cod(m));
            if self.actions[m].len() != self.size(a) {
                return Err(Error::MalformedDiagram(format!(
                    "action of {} has wrong domain size",
                    shape.mor_name(m)
                )));
            }
            if self.actions[m].iter().any(|&y| y >= self.size(b)) {
                return Err(Error::MalformedDiagram(format!(
                    "action of {} lands out of range",
                    shape.mor_name(m)
                )));
            }
        }
        for o in shape.object_ids() {
            let id = shape.id(o);
            for x in 0..self.size(o) {
                if self.apply(id, x) != x {
                    return Err(Error::MalformedDiagram(format!(
                        "identity of {} acts nontrivially on element {x}",
                        shape.object_names[o]
                    )));
                }
            }
        }
        for (g, f) in shape.composable_pairs() {
            if let Some(gf) = shape.compose(g, f) {
                for x in 0..self.size(shape.dom(f)) {
                    if self.apply(gf, x) != self.apply(g, self.apply(f, x)) {
                        return Err(Error::MalformedDiagram(format!(
                            "functoriality fails at ({}, {}) on element {x}",
                            shape.mor_name(g),
                            shape.mor_name(f)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Restriction along a functor into this diagram's shape.
    pub fn restrict(&self, phi: &crate::fincat::FunctorData) -> SetDiagram {
        debug_assert!(phi.target.same_shape(&self.shape));
        SetDiagram {
            shape: phi.source.clone(),
            values: phi
                .source
                .object_ids()
                .map(|o| self.values[phi.on_obj(o)].clone())
                .collect(),
            actions: phi
                .source
                .morphism_ids()
                .map(|m| self.actions[phi.on_mor(m)].clone())
                .collect(),
        }
    }
}

/// A natural transformation between diagrams on the same shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramMap {
    pub source: SetDiagram,
    pub target: SetDiagram,
    pub components: Vec<Vec<usize>>,
}

impl DiagramMap {
    pub fn new(source: SetDiagram, target: SetDiagram, components: Vec<Vec<usize>>) -> Result<Self> {
        let m = DiagramMap {
            source,
            target,
            components,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn identity(d: &SetDiagram) -> Self {
        DiagramMap {
            source: d.clone(),
            target: d.clone(),
            components: d.values.iter().map(|v| (0..v.len()).collect()).collect(),
        }
    }

    pub fn apply(&self, o: ObjId, x: usize) -> usize {
        self.components[o][x]
    }

    pub fn validate(&self) -> Result<()> {
        if !self.source.shape.same_shape(&self.target.shape) {
            return Err(Error::MalformedDiagram(
                "map between diagrams on different shapes".into(),
            ));
        }
        let shape = &self.source.shape;
        if self.components.len() != shape.n_objects() {
            return Err(Error::MalformedDiagram("component table wrong length".into()));
        }
        for o in shape.object_ids() {
            if self.components[o].len() != self.source.size(o)
                || self.components[o].iter().any(|&y| y >= self.target.size(o))
            {
                return Err(Error::MalformedDiagram(format!(
                    "component at {} malformed",
                    shape.object_names[o]
                )));
            }
        }
        for m in shape.morphism_ids() {
            let (a, b) = (shape.dom(m), shape.cod(m));
            for x in 0..self.source.size(a) {
                let via_target = self.target.apply(m, self.apply(a, x));
                let via_source = self.apply(b, self.source.apply(m, x));
                if via_target != via_source {
                    return Err(Error::MalformedDiagram(format!(
                        "naturality fails at {} on element {x}",
                        shape.mor_name(m)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_mono(&self) -> bool {
        self.components.iter().enumerate().all(|(o, comp)| {
            let mut seen = vec![false; self.target.size(o)];
            comp.iter().all(|&y| {
                if seen[y] {
                    false
                } else {
                    seen[y] = true;
                    true
                }
            })
        })
    }

    pub fn is_epi(&self) -> bool {
        self.components.iter().enumerate().all(|(o, comp)| {
            let mut hit = vec![false; self.target.size(o)];
            for &y in comp {
                hit[y] = true;
            }
            hit.iter().all(|&b| b)
        })
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono()
            && self
                .components
                .iter()
                .enumerate()
                .all(|(o, c)| c.len() == self.target.size(o))
    }

    /// self after other.
    pub fn after(&self, other: &DiagramMap) -> DiagramMap {
        DiagramMap {
            source: other.source.clone(),
            target: self.target.clone(),
            components: other
                .components
                .iter()
                .enumerate()
                .map(|(o, c)| c.iter().map(|&x| self.apply(o, x)).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCategory;
    use std::sync::Arc;

    #[test]
    fn corepresentable_is_functorial() {
        let (cat, _) = crate::generators::simplex_trunc(2);
        let cat = Arc::new(cat);
        for r in cat.object_ids() {
            let d = SetDiagram::corepresentable(&cat, r);
            d.validate().unwrap();
        }
    }

    #[test]
    fn bad_action_is_rejected() {
        let shape = Arc::new(FinCategory::terminal());
        let d = SetDiagram::new(shape, &[2], vec![vec![0, 0]]);
        assert!(d.is_err()); // identity must act as identity
    }
}
