//! Generalized Reedy structures: a degree function and wide subcategories of
//! degree-raising and degree-lowering morphisms, with axiom validation and
//! the plus/minus factorization calculus.

mod compare;
mod json;
mod latch;
mod skel;
mod slice;

pub use compare::{
    restriction_comparison, truncated_structure, validate_reedy_morphism, ComparisonOutcome,
    ComparisonSide,
};
pub use json::{structure_from_json, structure_to_json, ReedyJson};
pub use latch::{
    automorphism_group, latching, latching_global, matching, matching_global, relative_latching,
    relative_matching, EquivariantMapResult, GlobalObjects, LatchingResult, MatchingResult,
};
pub use skel::{
    coskeleton, skeleton, skeleton_lemma_checks, skeleton_map, truncation_functor,
    SkeletonLemmaReport, SkeletonResult,
};
pub use slice::{degree_slice, minus_slice_structure, plus_slice_structure, DegreeSlice};

use crate::error::{Error, Result};
use crate::fincat::{Cat, FunctorData, MorId, WideSubcategory};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// A generalized Reedy structure on a finite category.
#[derive(Debug, Clone)]
pub struct GeneralizedReedyStructure {
    pub category: Cat,
    pub degree: Vec<u32>,
    pub plus: WideSubcategory,
    pub minus: WideSubcategory,
}

/// Outcome of one axiom, with a witness when it fails.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxiomResult {
    pub holds: bool,
    pub witnesses: Vec<String>,
}

impl AxiomResult {
    fn ok() -> Self {
        AxiomResult {
            holds: true,
            witnesses: Vec::new(),
        }
    }
    fn add(&mut self, w: String) {
        self.holds = false;
        if self.witnesses.len() < 16 {
            self.witnesses.push(w);
        }
    }
}

/// Per-axiom validation report. `strict` means every isomorphism is an
/// identity; `dual` is present when the dual rigidity axiom was requested.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReedyReport {
    pub degree_raising: AxiomResult,
    pub intersection_is_iso: AxiomResult,
    pub factorization: AxiomResult,
    pub rigidity: AxiomResult,
    pub dual_rigidity: Option<AxiomResult>,
    pub strict: bool,
    pub has_nontrivial_automorphisms: bool,
}

impl ReedyReport {
    pub fn passes(&self) -> bool {
        self.degree_raising.holds
            && self.intersection_is_iso.holds
            && self.factorization.holds
            && self.rigidity.holds
            && self.dual_rigidity.as_ref().is_none_or(|a| a.holds)
    }
}

/// All plus/minus factorizations of one morphism, with the connecting
/// isomorphisms linking each pair of factorizations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorizationWitness {
    pub morphism: MorId,
    /// pairs (h in minus, g in plus) with g∘h = f
    pub factorizations: Vec<(MorId, MorId)>,
    /// connecting[(i,j)] = isomorphisms θ with θ∘h_i = h_j and g_j∘θ = g_i
    pub connecting: Vec<Vec<Vec<MorId>>>,
}

impl FactorizationWitness {
    /// Every pair of factorizations must be linked by exactly one iso.
    pub fn essentially_unique(&self) -> bool {
        !self.factorizations.is_empty()
            && self
                .connecting
                .iter()
                .all(|row| row.iter().all(|thetas| thetas.len() == 1))
    }
}

impl GeneralizedReedyStructure {
    pub fn new(
        category: Cat,
        degree: Vec<u32>,
        plus: WideSubcategory,
        minus: WideSubcategory,
    ) -> Result<Self> {
        if degree.len() != category.n_objects() {
            return Err(Error::MalformedReedy(
                "degree function must be defined on every object".into(),
            ));
        }
        plus.validate(&category)?;
        minus.validate(&category)?;
        Ok(GeneralizedReedyStructure {
            category,
            degree,
            plus,
            minus,
        })
    }

    pub fn deg(&self, o: usize) -> u32 {
        self.degree[o]
    }

    pub fn max_degree(&self) -> u32 {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    /// The reversed structure on the opposite category: plus and minus swap.
    /// For presheaves on an EZ-category this is the structure the latching,
    /// matching and skeletal machinery runs on.
    pub fn opposite(&self) -> GeneralizedReedyStructure {
        GeneralizedReedyStructure {
            category: Arc::new(self.category.opposite()),
            degree: self.degree.clone(),
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }

    /// Checks Def-style axioms:
    /// (i) non-invertible plus raises, non-invertible minus lowers, isos
    ///     preserve the degree;
    /// (ii) plus ∩ minus = isomorphisms;
    /// (iii) every morphism factors plus∘minus, uniquely up to isomorphism;
    /// (iv) θf = f with θ iso, f in minus forces θ = id;
    /// (iv)' dual, when `check_dual` is set.
    pub fn validate_reedy(&self, check_dual: bool) -> ReedyReport {
        let cat = &self.category;
        let iso: Vec<bool> = cat.morphism_ids().map(|f| cat.is_iso(f)).collect();

        let mut degree_raising = AxiomResult::ok();
        for f in cat.morphism_ids() {
            let (d_dom, d_cod) = (self.deg(cat.dom(f)), self.deg(cat.cod(f)));
            if iso[f] {
                if d_dom != d_cod {
                    degree_raising.add(format!(
                        "isomorphism {} does not preserve degree",
                        cat.mor_name(f)
                    ));
                }
                continue;
            }
            if self.plus.contains(f) && d_cod <= d_dom {
                degree_raising.add(format!(
                    "non-invertible {} in plus does not raise degree",
                    cat.mor_name(f)
                ));
            }
            if self.minus.contains(f) && d_cod >= d_dom {
                degree_raising.add(format!(
                    "non-invertible {} in minus does not lower degree",
                    cat.mor_name(f)
                ));
            }
        }

        let mut intersection_is_iso = AxiomResult::ok();
        for f in cat.morphism_ids() {
            let both = self.plus.contains(f) && self.minus.contains(f);
            if both != iso[f] {
                intersection_is_iso.add(format!(
                    "{}: plus∩minus membership ({both}) differs from invertibility ({})",
                    cat.mor_name(f),
                    iso[f]
                ));
            }
        }

        let mut factorization = AxiomResult::ok();
        for f in cat.morphism_ids() {
            let w = self.factorize(f);
            if w.factorizations.is_empty() {
                factorization.add(format!(
                    "{} admits no plus∘minus factorization",
                    cat.mor_name(f)
                ));
            } else if w
                .connecting
                .iter()
                .any(|row| row.iter().any(|thetas| thetas.is_empty()))
            {
                factorization.add(format!(
                    "factorizations of {} are not linked by an isomorphism",
                    cat.mor_name(f)
                ));
            }
        }

        let mut rigidity = AxiomResult::ok();
        for f in cat.morphism_ids() {
            if !self.minus.contains(f) {
                continue;
            }
            let c = cat.cod(f);
            for &theta in cat.hom(c, c) {
                if iso[theta]
                    && cat.compose(theta, f) == Some(f)
                    && theta != cat.id(c)
                {
                    rigidity.add(format!(
                        "θ={} fixes {} in minus but is not the identity",
                        cat.mor_name(theta),
                        cat.mor_name(f)
                    ));
                }
            }
        }

        let dual_rigidity = if check_dual {
            let mut dual = AxiomResult::ok();
            for f in cat.morphism_ids() {
                if !self.plus.contains(f) {
                    continue;
                }
                let a = cat.dom(f);
                for &theta in cat.hom(a, a) {
                    if iso[theta]
                        && cat.compose(f, theta) == Some(f)
                        && theta != cat.id(a)
                    {
                        dual.add(format!(
                            "θ={} fixes {} in plus but is not the identity",
                            cat.mor_name(theta),
                            cat.mor_name(f)
                        ));
                    }
                }
            }
            Some(dual)
        } else {
            None
        };

        let strict = cat
            .morphism_ids()
            .all(|f| !iso[f] || cat.is_identity(f));
        let has_nontrivial_automorphisms = cat.object_ids().any(|o| {
            cat.hom(o, o)
                .iter()
                .any(|&f| iso[f] && f != cat.id(o))
        });

        ReedyReport {
            degree_raising,
            intersection_is_iso,
            factorization,
            rigidity,
            dual_rigidity,
            strict,
            has_nontrivial_automorphisms,
        }
    }

    /// Enumerates every factorization f = g∘h with h in minus and g in plus,
    /// plus the connecting isomorphisms between each pair.
    pub fn factorize(&self, f: MorId) -> FactorizationWitness {
        let cat = &self.category;
        let (a, b) = (cat.dom(f), cat.cod(f));
        let mut factorizations = Vec::new();
        for s in cat.object_ids() {
            for &h in cat.hom(a, s) {
                if !self.minus.contains(h) {
                    continue;
                }
                for &g in cat.hom(s, b) {
                    if self.plus.contains(g) && cat.compose(g, h) == Some(f) {
                        factorizations.push((h, g));
                    }
                }
            }
        }
        let connecting = factorizations
            .iter()
            .map(|&(h1, g1)| {
                factorizations
                    .iter()
                    .map(|&(h2, g2)| {
                        let s1 = cat.cod(h1);
                        let s2 = cat.cod(h2);
                        cat.hom(s1, s2)
                            .iter()
                            .copied()
                            .filter(|&theta| {
                                cat.is_iso(theta)
                                    && cat.compose(theta, h1) == Some(h2)
                                    && cat.compose(g2, theta) == Some(g1)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        FactorizationWitness {
            morphism: f,
            factorizations,
            connecting,
        }
    }

    /// The category ℝ⁺(r): non-invertible plus morphisms into r, morphisms
    /// all w with u = u'∘w. Returns the category, its objects (as morphism
    /// ids of the parent), and the forgetful functor to the parent sending
    /// u: s→r to s.
    pub fn plus_over(&self, r: usize) -> SliceAtObject {
        let cat = &self.category;
        let objects: Vec<MorId> = cat
            .morphism_ids()
            .filter(|&u| self.plus.contains(u) && cat.cod(u) == r && !cat.is_iso(u))
            .collect();
        slice_from_objects(cat, &objects, true)
    }

    /// The category ℝ⁻(r): non-invertible minus morphisms out of r,
    /// morphisms all w with u' = w∘u.
    pub fn minus_under(&self, r: usize) -> SliceAtObject {
        let cat = &self.category;
        let objects: Vec<MorId> = cat
            .morphism_ids()
            .filter(|&u| self.minus.contains(u) && cat.dom(u) == r && !cat.is_iso(u))
            .collect();
        slice_from_objects(cat, &objects, false)
    }
}

/// ℝ⁺(r) or ℝ⁻(r) as a finite category, with the projection to the ambient
/// category (domain functor for plus, codomain functor for minus).
#[derive(Debug, Clone)]
pub struct SliceAtObject {
    pub cat: Cat,
    /// objects, as morphism ids of the parent
    pub objects: Vec<MorId>,
    pub projection: FunctorData,
}

fn slice_from_objects(parent: &Cat, objects: &[MorId], over: bool) -> SliceAtObject {
    use crate::fincat::{FinCategory, MorData};
    let mut morphisms: Vec<MorData> = Vec::new();
    let mut underlying: Vec<MorId> = Vec::new();
    let mut identity = vec![usize::MAX; objects.len()];
    for (i, &u) in objects.iter().enumerate() {
        for (j, &u2) in objects.iter().enumerate() {
            let (from, to) = if over {
                (parent.dom(u), parent.dom(u2))
            } else {
                (parent.cod(u), parent.cod(u2))
            };
            for &w in parent.hom(from, to) {
                let commutes = if over {
                    parent.compose(u2, w) == Some(u)
                } else {
                    parent.compose(w, u) == Some(u2)
                };
                if commutes {
                    let k = morphisms.len();
                    morphisms.push(MorData {
                        name: format!("{}[{}→{}]", parent.mor_name(w), i, j),
                        dom: i,
                        cod: j,
                    });
                    underlying.push(w);
                    if i == j && parent.is_identity(w) {
                        identity[i] = k;
                    }
                }
            }
        }
    }
    let names: Vec<String> = objects
        .iter()
        .map(|&u| parent.mor_name(u).to_string())
        .collect();
    let index: std::collections::BTreeMap<(usize, usize, MorId), MorId> = morphisms
        .iter()
        .enumerate()
        .map(|(k, m)| ((m.dom, m.cod, underlying[k]), k))
        .collect();
    let ul = underlying.clone();
    let ms = morphisms.clone();
    let parent2 = parent.clone();
    let cat = Arc::new(FinCategory::from_compose_fn(
        names,
        morphisms,
        identity,
        |g, f| {
            let w = parent2.compose(ul[g], ul[f]).expect("composable");
            *index
                .get(&(ms[f].dom, ms[g].cod, w))
                .expect("slice closed under composition")
        },
    ));
    let projection = FunctorData {
        source: cat.clone(),
        target: parent.clone(),
        obj_map: objects
            .iter()
            .map(|&u| if over { parent.dom(u) } else { parent.cod(u) })
            .collect(),
        mor_map: underlying,
    };
    SliceAtObject {
        cat,
        objects: objects.to_vec(),
        projection,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn simplex_structures_pass_and_are_strict() {
        for n in 0..=3 {
            let (cat, s) = generators::simplex_trunc(n);
            let _ = cat;
            let report = s.validate_reedy(true);
            assert!(report.passes(), "Δ≤{n}: {report:?}");
            assert!(report.strict);
            assert!(!report.has_nontrivial_automorphisms);
        }
    }

    #[test]
    fn cyclic_structure_passes_and_is_not_strict() {
        let (cat, s) = generators::cyclic_trunc(2);
        let report = s.validate_reedy(true);
        assert!(report.passes(), "{report:?}");
        assert!(!report.strict);
        assert!(report.has_nontrivial_automorphisms);
        // Aut([1]) in Λ has order 2
        let auts = cat
            .hom(1, 1)
            .iter()
            .filter(|&&f| cat.is_iso(f))
            .count();
        assert_eq!(auts, 2);
    }

    #[test]
    fn swapped_plus_minus_fails_axiom_one_citing_coface() {
        let (cat, s) = generators::simplex_trunc(2);
        let swapped = GeneralizedReedyStructure::new(
            cat,
            s.degree.clone(),
            s.minus.clone(),
            s.plus.clone(),
        )
        .unwrap();
        let report = swapped.validate_reedy(false);
        assert!(!report.degree_raising.holds);
        assert!(
            report
                .degree_raising
                .witnesses
                .iter()
                .any(|w| w.contains("d0:0->1")),
            "violation must cite δ0: {:?}",
            report.degree_raising.witnesses
        );
    }

    #[test]
    fn factorize_identity_and_collapse_map() {
        let (cat, s) = generators::simplex_trunc(2);
        // identity factorizations contain (id, id)
        let id1 = cat.id(1);
        let w = s.factorize(id1);
        assert!(w.factorizations.contains(&(id1, id1)));
        assert!(w.essentially_unique());
        // f = δ0∘σ0 : [1]→[1], the constant map at 1: unique factorization
        let d0 = generators::simplex_mor(&cat, &[1], 1).unwrap();
        let s0 = generators::simplex_mor(&cat, &[0, 0], 0).unwrap();
        let f = cat.compose(d0, s0).unwrap();
        let w = s.factorize(f);
        assert_eq!(w.factorizations, vec![(s0, d0)]);
        assert!(w.essentially_unique());
    }

    #[test]
    fn cyclic_factorizations_connected_by_unique_special_automorphism() {
        let (cat, s) = generators::cyclic_trunc(2);
        for f in cat.morphism_ids() {
            let w = s.factorize(f);
            assert!(!w.factorizations.is_empty(), "{}", cat.mor_name(f));
            assert!(w.essentially_unique(), "{}", cat.mor_name(f));
        }
    }

    #[test]
    fn plus_over_morphisms_stay_in_plus() {
        // axiom (iii) forces connecting maps in ℝ⁺(r) to lie in plus
        for (cat, s) in [generators::simplex_trunc(2), generators::cyclic_trunc(2)] {
            for r in cat.object_ids() {
                let slice = s.plus_over(r);
                for m in slice.cat.morphism_ids() {
                    let w = slice.projection.on_mor(m);
                    assert!(s.plus.contains(w), "{} escapes plus", cat.mor_name(w));
                }
                for m in slice.cat.morphism_ids() {
                    let _ = m;
                }
            }
            for r in cat.object_ids() {
                let slice = s.minus_under(r);
                for m in slice.cat.morphism_ids() {
                    let w = slice.projection.on_mor(m);
                    assert!(s.minus.contains(w), "{} escapes minus", cat.mor_name(w));
                }
            }
        }
    }
}
