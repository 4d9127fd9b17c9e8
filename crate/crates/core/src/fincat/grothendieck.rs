//! The (fibered) Grothendieck construction with an optional coherence-twist
//! table. Fibers are indexed contravariantly: each base morphism α: r→s has a
//! transition functor Φ(α): fiber(s) → fiber(r), strictly functorial unless a
//! twist is supplied.
//!
//! Morphisms (r,x) → (s,y) are pairs (α: r→s, ξ: x → Φ(α)(y)); composition of
//! (β,ζ): s→t after (α,ξ): r→s is (βα, twist(α,β)_z ∘ Φ(α)(ζ) ∘ ξ), where the
//! twist components are natural isomorphisms Φ(α)Φ(β) ⇒ Φ(βα). With trivial
//! twists this is the strict fibered construction.

use super::{Cat, FinCategory, FunctorData, MorData, MorId, ObjId};
use crate::error::{Error, Result};

pub struct GrothendieckData {
    pub base: Cat,
    /// one fiber category per base object
    pub fibers: Vec<Cat>,
    /// `transition[α]`: fiber(cod α) → fiber(dom α)
    pub transition: Vec<FunctorData>,
    /// `twist[(β,α)][z]`: component at fiber-object z of cod(β), a morphism
    /// Φ(α)(Φ(β)(z)) → Φ(βα)(z) in fiber(dom α); empty map means strict.
    pub twist: std::collections::BTreeMap<(MorId, MorId), Vec<MorId>>,
}

impl GrothendieckData {
    fn twist_component(&self, beta: MorId, alpha: MorId, z: ObjId) -> Option<MorId> {
        match self.twist.get(&(beta, alpha)) {
            Some(tw) => Some(tw[z]),
            None => {
                // strict: identity at the common value
                let r = self.base.dom(alpha);
                let via = self.transition[alpha].on_obj(self.transition[beta].on_obj(z));
                let direct = self.base.compose(beta, alpha).map(|ba| self.transition[ba].on_obj(z));
                if direct == Some(via) {
                    Some(self.fibers[r].id(via))
                } else {
                    None
                }
            }
        }
    }

    /// Verifies that transitions compose up to the supplied twists: twist
    /// components must be isomorphisms natural in the fiber, identities must
    /// be strict, and the twists must satisfy the pentagon-style coherence
    /// that makes the total composition associative.
    pub fn validate(&self) -> Result<()> {
        let base = &self.base;
        if self.fibers.len() != base.n_objects() || self.transition.len() != base.n_morphisms() {
            return Err(Error::IncoherentGrothendieck(
                "fiber or transition tables have wrong length".into(),
            ));
        }
        for alpha in base.morphism_ids() {
            let t = &self.transition[alpha];
            if !t.source.same_shape(&self.fibers[base.cod(alpha)])
                || !t.target.same_shape(&self.fibers[base.dom(alpha)])
            {
                return Err(Error::IncoherentGrothendieck(format!(
                    "transition of {} has wrong endpoints",
                    base.mor_name(alpha)
                )));
            }
            t.validate()?;
        }
        for o in base.object_ids() {
            let t = &self.transition[base.id(o)];
            let idf = FunctorData::identity(&self.fibers[o]);
            if t.obj_map != idf.obj_map || t.mor_map != idf.mor_map {
                return Err(Error::IncoherentGrothendieck(format!(
                    "transition of identity at {} is not the identity functor",
                    base.object_names[o]
                )));
            }
        }
        // twists: isomorphism + naturality + correct endpoints
        for beta in base.morphism_ids() {
            for alpha in base.morphism_ids() {
                let ba = match base.compose(beta, alpha) {
                    Some(x) => x,
                    None => continue,
                };
                let fib = &self.fibers[base.dom(alpha)];
                let codfib = &self.fibers[base.cod(beta)];
                for z in codfib.object_ids() {
                    let t = self.twist_component(beta, alpha, z).ok_or_else(|| {
                        Error::IncoherentGrothendieck(format!(
                            "triangle ({}, {}) at fiber object {} has no twist and is not strict",
                            base.mor_name(beta),
                            base.mor_name(alpha),
                            z
                        ))
                    })?;
                    let via = self.transition[alpha].on_obj(self.transition[beta].on_obj(z));
                    let direct = self.transition[ba].on_obj(z);
                    if fib.dom(t) != via || fib.cod(t) != direct || !fib.is_iso(t) {
                        return Err(Error::IncoherentGrothendieck(format!(
                            "twist of ({}, {}) at {} is not an isomorphism {}→{}",
                            base.mor_name(beta),
                            base.mor_name(alpha),
                            z,
                            via,
                            direct
                        )));
                    }
                }
                // naturality in z
                for zeta in codfib.morphism_ids() {
                    let (z0, z1) = (codfib.dom(zeta), codfib.cod(zeta));
                    let t0 = self.twist_component(beta, alpha, z0).unwrap();
                    let t1 = self.twist_component(beta, alpha, z1).unwrap();
                    let via_mor =
                        self.transition[alpha].on_mor(self.transition[beta].on_mor(zeta));
                    let direct_mor = self.transition[ba].on_mor(zeta);
                    let lhs = fib.compose(t1, via_mor);
                    let rhs = fib.compose(direct_mor, t0);
                    if lhs != rhs || lhs.is_none() {
                        return Err(Error::IncoherentGrothendieck(format!(
                            "twist of ({}, {}) is not natural at fiber morphism {}",
                            base.mor_name(beta),
                            base.mor_name(alpha),
                            codfib.mor_name(zeta)
                        )));
                    }
                }
            }
        }
        // coherence: for composable γ, β, α the two reduction orders agree
        for gamma in base.morphism_ids() {
            for beta in base.morphism_ids() {
                let gb = match base.compose(gamma, beta) {
                    Some(x) => x,
                    None => continue,
                };
                for alpha in base.morphism_ids() {
                    let ba = match base.compose(beta, alpha) {
                        Some(x) => x,
                        None => continue,
                    };
                    let fib = &self.fibers[base.dom(alpha)];
                    for z in self.fibers[base.cod(gamma)].object_ids() {
                        // route 1: twist (γ,β) first, then (γβ, α)
                        let t_gb = self.twist_component(gamma, beta, z).unwrap();
                        let r1 = fib
                            .compose(
                                self.twist_component(gb, alpha, z).unwrap(),
                                self.transition[alpha].on_mor(t_gb),
                            )
                            .unwrap();
                        // route 2: twist (β,α) at Φ(γ)(z), then (γ, βα)
                        let t_ba = self
                            .twist_component(beta, alpha, self.transition[gamma].on_obj(z))
                            .unwrap();
                        let r2 = fib
                            .compose(self.twist_component(gamma, ba, z).unwrap(), t_ba)
                            .unwrap();
                        if r1 != r2 {
                            return Err(Error::IncoherentGrothendieck(format!(
                                "coherence fails on the triangle ({}, {}, {}) at fiber object {}",
                                base.mor_name(gamma),
                                base.mor_name(beta),
                                base.mor_name(alpha),
                                z
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The assembled total category with its object and morphism bookkeeping.
#[derive(Debug)]
pub struct GrothendieckResult {
    pub cat: FinCategory,
    /// per object of the total category: (base object, fiber object)
    pub object_pairs: Vec<(ObjId, ObjId)>,
    /// per morphism: (base morphism, fiber morphism at the domain)
    pub mor_pairs: Vec<(MorId, MorId)>,
}

/// Builds the total category. Objects are pairs (r, x ∈ fiber(r)); the result
/// passes `validate` of `FinCategory` whenever the data is coherent.
pub fn grothendieck(data: &GrothendieckData) -> Result<GrothendieckResult> {
    data.validate()?;
    let base = &data.base;
    let mut objects: Vec<(ObjId, ObjId)> = Vec::new();
    for r in base.object_ids() {
        for x in data.fibers[r].object_ids() {
            objects.push((r, x));
        }
    }
    // morphisms (r,x) → (s,y): pairs (α: r→s, ξ: x → Φ(α)(y))
    let mut morphisms: Vec<MorData> = Vec::new();
    let mut pairs: Vec<(MorId, MorId)> = Vec::new();
    let mut identity = vec![usize::MAX; objects.len()];
    for (i, &(r, x)) in objects.iter().enumerate() {
        for (j, &(s, y)) in objects.iter().enumerate() {
            for &alpha in base.hom(r, s) {
                let target = data.transition[alpha].on_obj(y);
                for &xi in data.fibers[r].hom(x, target) {
                    let k = morphisms.len();
                    morphisms.push(MorData {
                        name: format!(
                            "({},{})",
                            base.mor_name(alpha),
                            data.fibers[r].mor_name(xi)
                        ),
                        dom: i,
                        cod: j,
                    });
                    pairs.push((alpha, xi));
                    if i == j && base.is_identity(alpha) && data.fibers[r].is_identity(xi) {
                        identity[i] = k;
                    }
                }
            }
        }
    }
    let object_names: Vec<String> = objects
        .iter()
        .map(|&(r, x)| {
            format!(
                "({},{})",
                base.object_names[r], data.fibers[r].object_names[x]
            )
        })
        .collect();
    let find_mor = |dom: usize, cod: usize, alpha: MorId, xi: MorId| -> MorId {
        morphisms
            .iter()
            .enumerate()
            .position(|(k, m)| m.dom == dom && m.cod == cod && pairs[k] == (alpha, xi))
            .expect("total category closed under composition")
    };
    let mut comp_entries: Vec<(MorId, MorId, MorId)> = Vec::new();
    for (g, gm) in morphisms.iter().enumerate() {
        for (f, fm) in morphisms.iter().enumerate() {
            if fm.cod != gm.dom {
                continue;
            }
            let (beta, zeta) = pairs[g];
            let (alpha, xi) = pairs[f];
            let ba = base.compose(beta, alpha).unwrap();
            let r = objects[fm.dom].1;
            let _ = r;
            let fib = &data.fibers[base.dom(alpha)];
            let (_, z) = objects[gm.cod];
            let tw = data
                .twist_component(beta, alpha, z)
                .expect("validated twist");
            let mid = fib
                .compose(data.transition[alpha].on_mor(zeta), xi)
                .expect("fiber composable");
            let total = fib.compose(tw, mid).expect("fiber composable");
            comp_entries.push((g, f, find_mor(fm.dom, gm.cod, ba, total)));
        }
    }
    let cat = FinCategory::from_tables(object_names, morphisms, identity, &comp_entries)?;
    Ok(GrothendieckResult {
        cat,
        object_pairs: objects,
        mor_pairs: pairs,
    })
}

/// Convenience: strict constant-fiber data (a product-like construction).
pub fn constant_fiber(base: &Cat, fiber: &Cat) -> GrothendieckData {
    let idf = FunctorData::identity(fiber);
    GrothendieckData {
        base: base.clone(),
        fibers: vec![fiber.clone(); base.n_objects()],
        transition: vec![idf; base.n_morphisms()],
        twist: std::collections::BTreeMap::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::find_isomorphism;
    use crate::generators;
    use crate::group::Group;

    #[test]
    fn constant_terminal_fiber_gives_base() {
        let (base, _) = generators::simplex_trunc(1);
        let term = std::sync::Arc::new(FinCategory::terminal());
        let data = constant_fiber(&base, &term);
        let total = grothendieck(&data).unwrap();
        assert!(total.cat.validate().is_valid());
        assert!(find_isomorphism(&total.cat, &base).is_some());
    }

    #[test]
    fn incoherent_twist_is_rejected_naming_the_triangle() {
        // a twist that is not natural: the nontrivial element of Z/3 cannot
        // commute the identity transitions of a constant Z/3 fiber over Δ≤1
        let (base, _) = generators::simplex_trunc(1);
        let (z3, _) = generators::group_category(&Group::cyclic(3), 1);
        let mut data = constant_fiber(&base, &z3);
        let (g, f) = base
            .composable_pairs()
            .find(|&(g, f)| !base.is_identity(g) && !base.is_identity(f))
            .unwrap();
        data.twist.insert((g, f), vec![1]);
        let err = grothendieck(&data).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("not natural") || msg.contains("coherence"), "{msg}");
    }

    #[test]
    fn constant_group_fiber_over_group_is_product() {
        // base = Z/2 one-object category, fiber = Z/3 with trivial action:
        // the total category is the product group Z/2 × Z/3 ≅ Z/6
        let (z2, _) = generators::group_category(&Group::cyclic(2), 1);
        let (z3, _) = generators::group_category(&Group::cyclic(3), 1);
        let (z6, _) = generators::group_category(&Group::cyclic(6), 1);
        let data = constant_fiber(&z2, &z3);
        let total = grothendieck(&data).unwrap();
        assert!(total.cat.validate().is_valid());
        assert_eq!(total.cat.n_morphisms(), 6);
        assert!(find_isomorphism(&total.cat, &z6).is_some());
    }
}
