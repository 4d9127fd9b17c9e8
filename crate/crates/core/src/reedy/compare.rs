//! Restriction comparisons: for a morphism of generalized Reedy categories
//! φ: S → R, the natural comparison L_k(φ*X) → φ_k*(L_k(X)) (and its
//! matching dual) is an isomorphism whenever the induced square of slice
//! categories is a pullback. The pullback hypothesis is checked, never
//! assumed.

use super::latch::{automorphism_group, latching, matching};
use super::slice::degree_slice;
use super::GeneralizedReedyStructure;
use crate::diagram::SetDiagram;
use crate::error::{Error, Result};
use crate::fincat::{is_pullback_square, FunctorData, MorId};
use crate::group::{is_equivariant_map, EquivariantSet};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComparisonSide {
    Latching,
    Matching,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum ComparisonOutcome {
    /// pullback hypothesis verified and the comparison is an equivariant iso
    Isomorphism { per_object: Vec<(usize, usize)> },
    /// pullback hypothesis verified but some comparison failed (would
    /// contradict the lemma; witnesses carried for diagnostics)
    Failed { object: usize, reason: String },
    /// pullback hypothesis does not hold; nothing is asserted
    PullbackHypothesisFails { reason: String },
}

impl ComparisonOutcome {
    pub fn is_isomorphism(&self) -> bool {
        matches!(self, ComparisonOutcome::Isomorphism { .. })
    }
}

/// Checks that φ is a morphism of generalized Reedy categories: degree,
/// plus, and minus are preserved.
pub fn validate_reedy_morphism(
    s_src: &GeneralizedReedyStructure,
    s_tgt: &GeneralizedReedyStructure,
    phi: &FunctorData,
) -> Result<()> {
    phi.validate()?;
    if !phi.source.same_shape(&s_src.category) || !phi.target.same_shape(&s_tgt.category) {
        return Err(Error::Precondition(
            "functor endpoints do not match the structures".into(),
        ));
    }
    for o in phi.source.object_ids() {
        if s_src.deg(o) != s_tgt.deg(phi.on_obj(o)) {
            return Err(Error::Precondition(format!(
                "degree not preserved at object {}",
                phi.source.object_names[o]
            )));
        }
    }
    for m in phi.source.morphism_ids() {
        if s_src.plus.contains(m) && !s_tgt.plus.contains(phi.on_mor(m)) {
            return Err(Error::Precondition(format!(
                "plus not preserved at {}",
                phi.source.mor_name(m)
            )));
        }
        if s_src.minus.contains(m) && !s_tgt.minus.contains(phi.on_mor(m)) {
            return Err(Error::Precondition(format!(
                "minus not preserved at {}",
                phi.source.mor_name(m)
            )));
        }
    }
    Ok(())
}

/// Builds the comparison of latching (or matching) objects at degree k and
/// decides it, after verifying the pullback hypothesis on the induced square
/// of slice categories.
pub fn restriction_comparison(
    s_src: &GeneralizedReedyStructure,
    s_tgt: &GeneralizedReedyStructure,
    phi: &FunctorData,
    x: &SetDiagram,
    k: u32,
    side: ComparisonSide,
) -> Result<ComparisonOutcome> {
    validate_reedy_morphism(s_src, s_tgt, phi)?;
    if !x.shape.same_shape(&s_tgt.category) {
        return Err(Error::Precondition("diagram lives on the wrong shape".into()));
    }
    let src_slice = degree_slice(s_src, k)?;
    let tgt_slice = degree_slice(s_tgt, k)?;

    // induced functor on the degree-k groupoids
    let phi_k = {
        let obj_map: Vec<usize> = src_slice
            .degree_n_objects
            .iter()
            .map(|&o| {
                tgt_slice
                    .degree_n_objects
                    .iter()
                    .position(|&p| p == phi.on_obj(o))
                    .expect("degree preserved")
            })
            .collect();
        let mor_map: Vec<MorId> = src_slice
            .groupoid
            .morphism_ids()
            .map(|m| {
                let parent = src_slice.groupoid_inclusion.on_mor(m);
                let image = phi.on_mor(parent);
                tgt_slice
                    .groupoid
                    .morphism_ids()
                    .find(|&m2| {
                        tgt_slice.groupoid_inclusion.on_mor(m2) == image
                            && tgt_slice.groupoid.dom(m2)
                                == obj_map[src_slice.groupoid.dom(m)]
                            && tgt_slice.groupoid.cod(m2)
                                == obj_map[src_slice.groupoid.cod(m)]
                    })
                    .expect("functors preserve isomorphisms")
            })
            .collect();
        FunctorData {
            source: src_slice.groupoid.clone(),
            target: tgt_slice.groupoid.clone(),
            obj_map,
            mor_map,
        }
    };
    phi_k.validate()?;

    let (src_wide, src_objects, src_squares, src_proj, tgt_wide, tgt_objects, tgt_squares, tgt_proj) =
        match side {
            ComparisonSide::Latching => (
                &src_slice.plus_wide,
                &src_slice.plus_wide_objects,
                &src_slice.plus_wide_squares,
                &src_slice.codomain_plus,
                &tgt_slice.plus_wide,
                &tgt_slice.plus_wide_objects,
                &tgt_slice.plus_wide_squares,
                &tgt_slice.codomain_plus,
            ),
            ComparisonSide::Matching => (
                &src_slice.minus_wide,
                &src_slice.minus_wide_objects,
                &src_slice.minus_wide_squares,
                &src_slice.domain_minus,
                &tgt_slice.minus_wide,
                &tgt_slice.minus_wide_objects,
                &tgt_slice.minus_wide_squares,
                &tgt_slice.domain_minus,
            ),
        };

    // induced functor φ_k^± on the wide slice categories
    let phi_slice = {
        let obj_map: Vec<usize> = src_objects
            .iter()
            .map(|&u| {
                let image = phi.on_mor(u);
                tgt_objects
                    .iter()
                    .position(|&v| v == image)
                    .expect("image of a slice object is a slice object")
            })
            .collect();
        let mor_map: Vec<MorId> = src_wide
            .morphism_ids()
            .map(|m| {
                let (f, g) = src_squares[m];
                let (fi, gi) = (phi.on_mor(f), phi.on_mor(g));
                (0..tgt_squares.len())
                    .find(|&m2| {
                        tgt_squares[m2] == (fi, gi)
                            && tgt_wide.dom(m2) == obj_map[src_wide.dom(m)]
                            && tgt_wide.cod(m2) == obj_map[src_wide.cod(m)]
                    })
                    .expect("image square exists")
            })
            .collect();
        FunctorData {
            source: src_wide.clone(),
            target: tgt_wide.clone(),
            obj_map,
            mor_map,
        }
    };
    phi_slice.validate()?;

    // pullback hypothesis on the induced square
    if !is_pullback_square(&phi_slice, src_proj, &phi_k, tgt_proj) {
        return Ok(ComparisonOutcome::PullbackHypothesisFails {
            reason: "induced square of slice categories is not a pullback".into(),
        });
    }

    let restricted = x.restrict(phi);
    for (gi, &t_obj) in src_slice.degree_n_objects.iter().enumerate() {
        let _ = gi;
        let r_obj = phi.on_obj(t_obj);
        match side {
            ComparisonSide::Latching => {
                let l_src = latching(s_src, &restricted, t_obj);
                let l_tgt = latching(s_tgt, x, r_obj);
                // comparison: [w: t'→t, x] ↦ [φ(w), x]
                let mut map = vec![usize::MAX; l_src.object.size];
                let mut well = true;
                for (i, &w) in l_src.slice_objects.iter().enumerate() {
                    let j = l_tgt
                        .slice_objects
                        .iter()
                        .position(|&v| v == phi.on_mor(w))
                        .expect("image object in target slice");
                    let dom = s_src.category.dom(w);
                    for xv in 0..restricted.size(dom) {
                        let dst = l_tgt.classes[j][xv];
                        let srcc = l_src.classes[i][xv];
                        if map[srcc] != usize::MAX && map[srcc] != dst {
                            well = false;
                        }
                        map[srcc] = dst;
                    }
                }
                if !(well && is_bijection(&map, l_tgt.object.size)) {
                    return Ok(ComparisonOutcome::Failed {
                        object: t_obj,
                        reason: "latching comparison is not bijective".into(),
                    });
                }
                // equivariance over Aut_S(t): the target carries the action
                // through φ
                let (aut_s, aut_mors_s) = automorphism_group(&s_src.category, t_obj);
                let twisted: Vec<Vec<usize>> = aut_mors_s
                    .iter()
                    .map(|&g| {
                        let gi_t = phi.on_mor(g);
                        let pos = l_tgt
                            .aut_mors
                            .iter()
                            .position(|&h| h == gi_t)
                            .expect("image automorphism");
                        (0..l_tgt.object.size)
                            .map(|c| l_tgt.object.apply(pos, c))
                            .collect()
                    })
                    .collect();
                let target_set = EquivariantSet::new(aut_s, l_tgt.object.size, twisted);
                if !is_equivariant_map(&l_src.object, &target_set, &map) {
                    return Ok(ComparisonOutcome::Failed {
                        object: t_obj,
                        reason: "latching comparison is not equivariant".into(),
                    });
                }
            }
            ComparisonSide::Matching => {
                let m_src = matching(s_src, &restricted, t_obj);
                let m_tgt = matching(s_tgt, x, r_obj);
                // comparison φ_k^*(M_k(X)) → M_k(φ^*(X)): restrict a family
                let mut map = Vec::with_capacity(m_tgt.object.size);
                let mut ok = true;
                for kf in 0..m_tgt.object.size {
                    let fam: Vec<usize> = m_src
                        .slice_objects
                        .iter()
                        .map(|&w| {
                            let j = m_tgt
                                .slice_objects
                                .iter()
                                .position(|&v| v == phi.on_mor(w))
                                .expect("image object in target slice");
                            m_tgt.families[kf][j]
                        })
                        .collect();
                    match m_src.families.iter().position(|f| *f == fam) {
                        Some(p) => map.push(p),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !(ok && is_bijection(&map, m_src.object.size)) {
                    return Ok(ComparisonOutcome::Failed {
                        object: t_obj,
                        reason: "matching comparison is not bijective".into(),
                    });
                }
                let (aut_s, aut_mors_s) = automorphism_group(&s_src.category, t_obj);
                let twisted: Vec<Vec<usize>> = aut_mors_s
                    .iter()
                    .map(|&g| {
                        let gi_t = phi.on_mor(g);
                        let pos = m_tgt
                            .aut_mors
                            .iter()
                            .position(|&h| h == gi_t)
                            .expect("image automorphism");
                        (0..m_tgt.object.size)
                            .map(|c| m_tgt.object.apply(pos, c))
                            .collect()
                    })
                    .collect();
                let source_set = EquivariantSet::new(aut_s, m_tgt.object.size, twisted);
                if !is_equivariant_map(&source_set, &m_src.object, &map) {
                    return Ok(ComparisonOutcome::Failed {
                        object: t_obj,
                        reason: "matching comparison is not equivariant".into(),
                    });
                }
            }
        }
    }
    let per_object = src_slice
        .degree_n_objects
        .iter()
        .map(|&t| (t, phi.on_obj(t)))
        .collect();
    Ok(ComparisonOutcome::Isomorphism { per_object })
}

fn is_bijection(map: &[usize], target_size: usize) -> bool {
    if map.len() != target_size {
        return false;
    }
    let mut seen = vec![false; target_size];
    for &v in map {
        if v >= target_size || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// The full subcategory of objects of degree <= n with the restricted
/// structure; its embedding is a morphism of generalized Reedy categories.
pub fn truncated_structure(
    s: &GeneralizedReedyStructure,
    n: u32,
) -> Result<(GeneralizedReedyStructure, FunctorData)> {
    let t = super::skel::truncation_functor(s, n as i64);
    let cat = t.source.clone();
    let degree = cat.object_ids().map(|o| s.deg(t.on_obj(o))).collect();
    let plus = crate::fincat::WideSubcategory::from_predicate(&cat, |m| {
        s.plus.contains(t.on_mor(m))
    });
    let minus = crate::fincat::WideSubcategory::from_predicate(&cat, |m| {
        s.minus.contains(t.on_mor(m))
    });
    let structure = GeneralizedReedyStructure::new(cat, degree, plus, minus)?;
    Ok((structure, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn identity_comparison_is_identity() {
        let (_, s) = generators::simplex_trunc(2);
        let sop = s.opposite();
        let shape = sop.category.clone();
        let x = SetDiagram::corepresentable(&shape, 2);
        let id = FunctorData::identity(&shape);
        for k in 0..=2 {
            for side in [ComparisonSide::Latching, ComparisonSide::Matching] {
                let out = restriction_comparison(&sop, &sop, &id, &x, k, side).unwrap();
                assert!(out.is_isomorphism(), "{k} {side:?}: {out:?}");
            }
        }
    }

    #[test]
    fn truncation_embedding_comparison() {
        // case (ii): S = R_{<=2} ↪ R = Δ≤3 (covariant side), k = 1
        let (_, s3) = generators::simplex_trunc(3);
        let (s2, t) = truncated_structure(&s3, 2).unwrap();
        let x = SetDiagram::corepresentable(&s3.category, 0); // covariant diagram
        for k in 0..=1 {
            for side in [ComparisonSide::Latching, ComparisonSide::Matching] {
                let out = restriction_comparison(&s2, &s3, &t, &x, k, side).unwrap();
                assert!(out.is_isomorphism(), "k={k} {side:?}: {out:?}");
            }
        }
    }
}
