//! Skeleta and coskeleta: Kan extensions along the degree-truncation
//! embeddings, their (co)unit maps, and the lemma-level facts tying them to
//! latching/matching objects and to each other.

use super::latch::{automorphism_group, latching, matching};
use super::slice::full_subcategory;
use super::GeneralizedReedyStructure;
use crate::diagram::{
    lan, lan_counit, lan_on_map, ran, ran_on_map, ran_unit, DiagramMap, SetDiagram,
};
use crate::fincat::FunctorData;
use crate::group::{is_equivariant_map, EquivariantSet};
use serde::{Deserialize, Serialize};

/// The full embedding of the subcategory of objects of degree <= n.
pub fn truncation_functor(s: &GeneralizedReedyStructure, n: i64) -> FunctorData {
    let objects: Vec<usize> = s
        .category
        .object_ids()
        .filter(|&o| (s.deg(o) as i64) <= n)
        .collect();
    let (_, _, embedding) = full_subcategory(&s.category, &objects, |_| true);
    embedding
}

#[derive(Debug, Clone)]
pub struct SkeletonResult {
    pub diagram: SetDiagram,
    /// counit sk_n(X) → X for skeleta, unit X → cosk_n(X) for coskeleta
    pub map: DiagramMap,
}

/// sk_n(X): left Kan extension along the degree-(<= n) embedding of the
/// restriction, with the counit into X. n = -1 gives the initial diagram.
pub fn skeleton(s: &GeneralizedReedyStructure, x: &SetDiagram, n: i64) -> SkeletonResult {
    if n < 0 {
        let empty = SetDiagram::empty(x.shape.clone());
        let map = DiagramMap {
            source: empty.clone(),
            target: x.clone(),
            components: vec![Vec::new(); x.shape.n_objects()],
        };
        return SkeletonResult {
            diagram: empty,
            map,
        };
    }
    let t = truncation_functor(s, n);
    let restricted = x.restrict(&t);
    let l = lan(&t, &restricted);
    let counit = lan_counit(&t, x, &l);
    SkeletonResult {
        diagram: l.diagram,
        map: counit,
    }
}

/// cosk_n(X): right Kan extension along the same embedding, with the unit
/// from X. n = -1 gives the terminal diagram.
pub fn coskeleton(s: &GeneralizedReedyStructure, x: &SetDiagram, n: i64) -> SkeletonResult {
    if n < 0 {
        let terminal = SetDiagram::terminal_diagram(x.shape.clone());
        let map = DiagramMap {
            source: x.clone(),
            target: terminal.clone(),
            components: x.values.iter().map(|v| vec![0; v.len()]).collect(),
        };
        return SkeletonResult {
            diagram: terminal,
            map,
        };
    }
    let t = truncation_functor(s, n);
    let restricted = x.restrict(&t);
    let r = ran(&t, &restricted);
    let unit = ran_unit(&t, x, &r);
    SkeletonResult {
        diagram: r.diagram,
        map: unit,
    }
}

/// sk_n applied to a map.
pub fn skeleton_map(s: &GeneralizedReedyStructure, f: &DiagramMap, n: i64) -> DiagramMap {
    if n < 0 {
        let empty_src = SetDiagram::empty(f.source.shape.clone());
        let empty_tgt = SetDiagram::empty(f.source.shape.clone());
        return DiagramMap {
            source: empty_src,
            target: empty_tgt,
            components: vec![Vec::new(); f.source.shape.n_objects()],
        };
    }
    let t = truncation_functor(s, n);
    let rf = DiagramMap {
        source: f.source.restrict(&t),
        target: f.target.restrict(&t),
        components: t
            .source
            .object_ids()
            .map(|o| f.components[t.on_obj(o)].clone())
            .collect(),
    };
    let lx = lan(&t, &rf.source);
    let ly = lan(&t, &rf.target);
    lan_on_map(&t, &rf, &lx, &ly)
}

/// Per-degree verdicts for the skeletal calculus on one diagram:
/// L_n(X) ≅ sk_{n-1}(X)_n and M_n(X) ≅ cosk_{n-1}(X)_n equivariantly, and
/// sk_n sk_m ≅ sk_min / cosk_n cosk_m ≅ cosk_min.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SkeletonLemmaReport {
    pub latching_iso: Vec<(usize, bool)>,
    pub matching_iso: Vec<(usize, bool)>,
    pub idempotent_sk: bool,
    pub idempotent_cosk: bool,
}

impl SkeletonLemmaReport {
    pub fn passes(&self) -> bool {
        self.latching_iso.iter().all(|&(_, b)| b)
            && self.matching_iso.iter().all(|&(_, b)| b)
            && self.idempotent_sk
            && self.idempotent_cosk
    }
}

pub fn skeleton_lemma_checks(
    s: &GeneralizedReedyStructure,
    x: &SetDiagram,
) -> SkeletonLemmaReport {
    let cat = &s.category;
    let max_deg = s.max_degree() as i64;
    // one truncation + Kan extension per degree, shared across the objects
    let mut lan_cache: std::collections::BTreeMap<i64, (FunctorData, crate::diagram::LanResult)> =
        Default::default();
    let mut ran_cache: std::collections::BTreeMap<i64, (FunctorData, crate::diagram::RanResult)> =
        Default::default();
    let mut latching_iso = Vec::new();
    let mut matching_iso = Vec::new();
    for r in cat.object_ids() {
        let n = s.deg(r) as i64;
        // the canonical map L_r(X) → sk_{n-1}(X)_r: [u: s→r, x] ↦ [(s, u), x]
        let ok_latch = {
            let l = latching(s, x, r);
            if n == 0 {
                l.object.size == 0 && skeleton(s, x, -1).diagram.size(r) == 0
            } else {
                let (t, lk) = lan_cache.entry(n - 1).or_insert_with(|| {
                    let t = truncation_functor(s, n - 1);
                    let restricted = x.restrict(&t);
                    let lk = lan(&t, &restricted);
                    (t, lk)
                });
                let (t, lk) = (&*t, &*lk);
                let mut map = vec![usize::MAX; l.object.size];
                let mut well_defined = true;
                for (i, &u) in l.slice_objects.iter().enumerate() {
                    let sdom = cat.dom(u);
                    let d = t
                        .obj_map
                        .iter()
                        .position(|&o| o == sdom)
                        .expect("domain has lower degree");
                    for xv in 0..x.size(sdom) {
                        let dst = lk.class_of(r, d, u, xv);
                        let src = l.classes[i][xv];
                        if map[src] != usize::MAX && map[src] != dst {
                            well_defined = false;
                        }
                        map[src] = dst;
                    }
                }
                let bij = well_defined
                    && map.len() == lk.diagram.size(r)
                    && is_bijection(&map, lk.diagram.size(r));
                // equivariance against the action on sk_{n-1}(X)_r
                let equiv = if bij {
                    let (aut, aut_mors) = automorphism_group(cat, r);
                    let action: Vec<Vec<usize>> = aut_mors
                        .iter()
                        .map(|&g| {
                            (0..lk.diagram.size(r))
                                .map(|c| lk.diagram.apply(g, c))
                                .collect()
                        })
                        .collect();
                    let sk_set = EquivariantSet::new(aut, lk.diagram.size(r), action);
                    is_equivariant_map(&l.object, &sk_set, &map)
                } else {
                    false
                };
                bij && equiv
            }
        };
        latching_iso.push((r, ok_latch));

        let ok_match = {
            let m = matching(s, x, r);
            if n == 0 {
                m.object.size == 1
            } else {
                let (t, rk) = ran_cache.entry(n - 1).or_insert_with(|| {
                    let t = truncation_functor(s, n - 1);
                    let restricted = x.restrict(&t);
                    let rk = ran(&t, &restricted);
                    (t, rk)
                });
                let (t, rk) = (&*t, &*rk);
                // canonical map cosk_{n-1}(X)_r → M_r(X): restrict a family
                // over (r → t(d)) to the non-invertible minus maps out of r
                let mut map = Vec::with_capacity(rk.diagram.size(r));
                let mut ok = true;
                for k in 0..rk.diagram.size(r) {
                    let fam: Vec<usize> = m
                        .slice_objects
                        .iter()
                        .map(|&u| {
                            let d = t
                                .obj_map
                                .iter()
                                .position(|&o| o == cat.cod(u))
                                .expect("codomain has lower degree");
                            rk.component(r, k, d, u)
                        })
                        .collect();
                    match m.families.iter().position(|f| *f == fam) {
                        Some(j) => map.push(j),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                let bij = ok && is_bijection(&map, m.object.size);
                let equiv = if bij {
                    let (aut, aut_mors) = automorphism_group(cat, r);
                    let action: Vec<Vec<usize>> = aut_mors
                        .iter()
                        .map(|&g| {
                            (0..rk.diagram.size(r))
                                .map(|c| rk.diagram.apply(g, c))
                                .collect()
                        })
                        .collect();
                    let cosk_set = EquivariantSet::new(aut, rk.diagram.size(r), action);
                    is_equivariant_map(&cosk_set, &m.object, &map)
                } else {
                    false
                };
                bij && equiv
            }
        };
        matching_iso.push((r, ok_match));
    }

    // idempotency via the canonical counit/unit comparisons
    let mut idempotent_sk = true;
    for m in -1..=max_deg {
        let skm = skeleton(s, x, m);
        for n in -1..=max_deg {
            if n >= m {
                let outer = skeleton(s, &skm.diagram, n);
                idempotent_sk &= outer.map.is_iso();
            } else {
                let mapped = skeleton_map(s, &skm.map, n);
                idempotent_sk &= mapped.is_iso();
            }
        }
    }
    let mut idempotent_cosk = true;
    for m in -1..=max_deg {
        let cm = coskeleton(s, x, m);
        for n in -1..=max_deg {
            if n >= m {
                let outer = coskeleton(s, &cm.diagram, n);
                idempotent_cosk &= outer.map.is_iso();
            } else {
                // cosk_n of the unit X → cosk_m(X) must be an iso
                let t = truncation_functor(s, n);
                let ra = ran(&t, &cm.map.source.restrict(&t));
                let rb = ran(&t, &cm.map.target.restrict(&t));
                let rf = DiagramMap {
                    source: cm.map.source.restrict(&t),
                    target: cm.map.target.restrict(&t),
                    components: t
                        .source
                        .object_ids()
                        .map(|o| cm.map.components[t.on_obj(o)].clone())
                        .collect(),
                };
                let mapped = ran_on_map(&t, &rf, &ra, &rb);
                idempotent_cosk &= mapped.is_iso();
            }
        }
    }

    SkeletonLemmaReport {
        latching_iso,
        matching_iso,
        idempotent_sk,
        idempotent_cosk,
    }
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn presheaf_setup(n: usize) -> (GeneralizedReedyStructure, crate::fincat::Cat) {
        let (_, s) = generators::simplex_trunc(n);
        let sop = s.opposite();
        let shape = sop.category.clone();
        (sop, shape)
    }

    #[test]
    fn skeleton_of_edge_at_level_zero() {
        // sk0(Δ[1]) over Δ≤2 is the discrete presheaf on the two vertices:
        // value 2 at every level
        let (sop, shape) = presheaf_setup(2);
        let edge = SetDiagram::corepresentable(&shape, 1);
        let sk0 = skeleton(&sop, &edge, 0);
        assert_eq!(sk0.diagram.size(0), 2);
        assert_eq!(sk0.diagram.size(1), 2);
        assert_eq!(sk0.diagram.size(2), 2);
        assert!(sk0.map.is_mono());
        // cosk0(Δ[1]) at level 1 = pairs of vertices = 4
        let c0 = coskeleton(&sop, &edge, 0);
        assert_eq!(c0.diagram.size(1), 4);
    }

    #[test]
    fn skeleton_at_or_beyond_max_degree_is_identity() {
        let (sop, shape) = presheaf_setup(2);
        let x = SetDiagram::corepresentable(&shape, 2);
        let sk = skeleton(&sop, &x, 2);
        assert!(sk.map.is_iso());
        let sk5 = skeleton(&sop, &x, 5);
        assert!(sk5.map.is_iso());
        let c = coskeleton(&sop, &x, 2);
        assert!(c.map.is_iso());
    }

    #[test]
    fn lemma_checks_pass_for_representables_and_empty() {
        let (sop, shape) = presheaf_setup(2);
        let empty = SetDiagram::empty(shape.clone());
        assert!(skeleton_lemma_checks(&sop, &empty).passes());
        for r in shape.object_ids() {
            let x = SetDiagram::corepresentable(&shape, r);
            let report = skeleton_lemma_checks(&sop, &x);
            assert!(report.passes(), "Δ[{r}]: {report:?}");
        }
    }

    #[test]
    fn lemma_checks_pass_on_cyclic_representable() {
        let (_, s) = generators::cyclic_trunc(2);
        let sop = s.opposite();
        let shape = sop.category.clone();
        let x = SetDiagram::corepresentable(&shape, 1); // Λ[1]
        let report = skeleton_lemma_checks(&sop, &x);
        assert!(report.passes(), "{report:?}");
    }
}
