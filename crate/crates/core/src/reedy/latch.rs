//! Latching and matching objects: the colimit over the non-invertible plus
//! maps into an object (resp. limit over the non-invertible minus maps out
//! of it), carrying the automorphism action, together with the global
//! degree-indexed forms and the agreement checks between the comma, fiber,
//! pointwise, and projection-formula routes.

use super::slice::DegreeSlice;
use super::GeneralizedReedyStructure;
use crate::diagram::{
    colimit, lan, limit, projection_formula_witness, DiagramMap, SetDiagram, Variance,
};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, MorId};
use crate::group::{is_equivariant_map, EquivariantSet, Group};
use serde::{Deserialize, Serialize};

/// The automorphism group of an object, with the list of iso endomorphisms
/// realizing each group element. Multiplication is composition.
pub fn automorphism_group(cat: &FinCategory, r: usize) -> (Group, Vec<MorId>) {
    let mors: Vec<MorId> = cat
        .hom(r, r)
        .iter()
        .copied()
        .filter(|&f| cat.is_iso(f))
        .collect();
    let unit = mors
        .iter()
        .position(|&f| cat.is_identity(f))
        .expect("identity is an automorphism");
    let mult = mors
        .iter()
        .map(|&a| {
            mors.iter()
                .map(|&b| {
                    let ab = cat.compose(a, b).expect("endos compose");
                    mors.iter().position(|&c| c == ab).expect("isos closed")
                })
                .collect()
        })
        .collect();
    (
        Group {
            elements: mors.iter().map(|&f| cat.mor_name(f).to_string()).collect(),
            mult,
            unit,
        },
        mors,
    )
}

/// An equivariant map between two sets with the same group action.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquivariantMapResult {
    pub source: EquivariantSet,
    pub target: EquivariantSet,
    pub map: Vec<usize>,
}

impl EquivariantMapResult {
    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.size];
        self.map.iter().all(|&y| {
            if seen[y] {
                false
            } else {
                seen[y] = true;
                true
            }
        })
    }

    pub fn is_bijective(&self) -> bool {
        self.source.size == self.target.size && self.is_injective()
    }

    pub fn validate(&self) -> Result<()> {
        if !is_equivariant_map(&self.source, &self.target, &self.map) {
            return Err(Error::Precondition("map is not equivariant".into()));
        }
        Ok(())
    }
}

/// Pointwise latching data at one object.
#[derive(Debug, Clone)]
pub struct LatchingResult {
    /// the automorphism morphisms realizing the group elements
    pub aut_mors: Vec<MorId>,
    /// L_r(X) with its automorphism action
    pub object: EquivariantSet,
    /// the latching map L_r(X) → X_r
    pub map: Vec<usize>,
    /// X_r with its automorphism action
    pub value: EquivariantSet,
    /// objects of the indexing category, as parent morphism ids
    pub slice_objects: Vec<MorId>,
    /// per slice object, per element of X at its domain: the colimit class
    pub classes: Vec<Vec<usize>>,
}

/// L_r(X): colimit of X over the non-invertible plus maps into r, with the
/// automorphism action by postcomposition and the canonical map to X_r.
pub fn latching(s: &GeneralizedReedyStructure, x: &SetDiagram, r: usize) -> LatchingResult {
    debug_assert!(x.shape.same_shape(&s.category));
    let cat = &s.category;
    let slice = s.plus_over(r);
    let restricted = x.restrict(&slice.projection);
    let cocone = colimit(&restricted);
    let (aut, aut_mors) = automorphism_group(cat, r);
    // action: g.[u, x] = [g∘u, x]
    let action: Vec<Vec<usize>> = aut_mors
        .iter()
        .map(|&g| {
            let mut per_class = vec![usize::MAX; cocone.apex_size];
            for (i, &u) in slice.objects.iter().enumerate() {
                let gu = cat.compose(g, u).expect("composable");
                let j = slice
                    .objects
                    .iter()
                    .position(|&v| v == gu)
                    .expect("postcomposition stays in the slice");
                for xv in 0..restricted.size(i) {
                    per_class[cocone.legs[i][xv]] = cocone.legs[j][xv];
                }
            }
            debug_assert!(per_class.iter().all(|&v| v != usize::MAX));
            per_class
        })
        .collect();
    let object = EquivariantSet::new(aut.clone(), cocone.apex_size, action);
    // latching map: [u, x] ↦ X(u)(x)
    let mut map = vec![usize::MAX; cocone.apex_size];
    for (i, &u) in slice.objects.iter().enumerate() {
        for xv in 0..restricted.size(i) {
            map[cocone.legs[i][xv]] = x.apply(u, xv);
        }
    }
    debug_assert!(map.iter().all(|&v| v != usize::MAX));
    let value_action: Vec<Vec<usize>> = aut_mors
        .iter()
        .map(|&g| (0..x.size(r)).map(|xv| x.apply(g, xv)).collect())
        .collect();
    let value = EquivariantSet::new(aut, x.size(r), value_action);
    debug_assert!(is_equivariant_map(&object, &value, &map));
    LatchingResult {
        aut_mors,
        object,
        map,
        value,
        slice_objects: slice.objects,
        classes: cocone.legs,
    }
}

/// Pointwise matching data at one object.
#[derive(Debug, Clone)]
pub struct MatchingResult {
    pub aut_mors: Vec<MorId>,
    /// M_r(X) with its automorphism action
    pub object: EquivariantSet,
    /// the matching map X_r → M_r(X)
    pub map: Vec<usize>,
    /// X_r with its automorphism action
    pub value: EquivariantSet,
    pub slice_objects: Vec<MorId>,
    /// compatible families, indexed by slice objects
    pub families: Vec<Vec<usize>>,
}

/// M_r(X): limit of X over the non-invertible minus maps out of r, with the
/// automorphism action by precomposition and the canonical map from X_r.
pub fn matching(s: &GeneralizedReedyStructure, x: &SetDiagram, r: usize) -> MatchingResult {
    debug_assert!(x.shape.same_shape(&s.category));
    let cat = &s.category;
    let slice = s.minus_under(r);
    let restricted = x.restrict(&slice.projection);
    let cone = limit(&restricted);
    let (aut, aut_mors) = automorphism_group(cat, r);
    // action: (g.F)_u = F_{u∘g}
    let action: Vec<Vec<usize>> = aut_mors
        .iter()
        .map(|&g| {
            (0..cone.families.len())
                .map(|k| {
                    let fam: Vec<usize> = slice
                        .objects
                        .iter()
                        .map(|&u| {
                            let ug = cat.compose(u, g).expect("composable");
                            let i = slice
                                .objects
                                .iter()
                                .position(|&v| v == ug)
                                .expect("precomposition stays in the slice");
                            cone.families[k][i]
                        })
                        .collect();
                    cone.families
                        .iter()
                        .position(|f| *f == fam)
                        .expect("action image is compatible")
                })
                .collect()
        })
        .collect();
    let object = EquivariantSet::new(aut.clone(), cone.families.len(), action);
    // matching map: x ↦ (X(u)(x))_u
    let map: Vec<usize> = (0..x.size(r))
        .map(|xv| {
            let fam: Vec<usize> = slice.objects.iter().map(|&u| x.apply(u, xv)).collect();
            cone.families
                .iter()
                .position(|f| *f == fam)
                .expect("matching family is compatible")
        })
        .collect();
    let value_action: Vec<Vec<usize>> = aut_mors
        .iter()
        .map(|&g| (0..x.size(r)).map(|xv| x.apply(g, xv)).collect())
        .collect();
    let value = EquivariantSet::new(aut, x.size(r), value_action);
    debug_assert!(is_equivariant_map(&value, &object, &map));
    MatchingResult {
        aut_mors,
        object,
        map,
        value,
        slice_objects: slice.objects,
        families: cone.families,
    }
}

/// The relative latching map X_r ∪_{L_r(X)} L_r(Y) → Y_r of a diagram map,
/// as an equivariant map.
pub fn relative_latching(
    s: &GeneralizedReedyStructure,
    f: &DiagramMap,
    r: usize,
) -> EquivariantMapResult {
    let lx = latching(s, &f.source, r);
    let ly = latching(s, &f.target, r);
    // induced L_r(f): [u, x] ↦ [u, f(x)]
    let mut lf = vec![usize::MAX; lx.object.size];
    for (i, &u) in lx.slice_objects.iter().enumerate() {
        let dom = s.category.dom(u);
        for xv in 0..f.source.size(dom) {
            lf[lx.classes[i][xv]] = ly.classes[i][f.apply(dom, xv)];
        }
    }
    // pushout of X_r ← L_r(X) → L_r(Y) with the induced action
    let xn = f.source.size(r);
    let total = xn + ly.object.size;
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut Vec<usize>, a: usize) -> usize {
        if parent[a] != a {
            let r = find(parent, parent[a]);
            parent[a] = r;
        }
        parent[a]
    }
    for z in 0..lx.object.size {
        let a = find(&mut parent, lx.map[z]);
        let b = find(&mut parent, xn + lf[z]);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        parent[hi] = lo;
    }
    let mut roots: Vec<usize> = (0..total).map(|i| find(&mut parent, i)).collect();
    let mut sorted = roots.clone();
    sorted.sort();
    sorted.dedup();
    for v in roots.iter_mut() {
        *v = sorted.iter().position(|s| s == v).unwrap();
    }
    let apex = sorted.len();
    let group = lx.value.group.clone();
    let action: Vec<Vec<usize>> = (0..group.order())
        .map(|g| {
            let mut act = vec![usize::MAX; apex];
            for xv in 0..xn {
                act[roots[xv]] = roots[lx.value.apply(g, xv)];
            }
            for w in 0..ly.object.size {
                act[roots[xn + w]] = roots[xn + ly.object.apply(g, w)];
            }
            debug_assert!(act.iter().all(|&v| v != usize::MAX));
            act
        })
        .collect();
    let source = EquivariantSet::new(group, apex, action);
    // map to Y_r
    let mut map = vec![usize::MAX; apex];
    for xv in 0..xn {
        map[roots[xv]] = f.apply(r, xv);
    }
    for w in 0..ly.object.size {
        map[roots[xn + w]] = ly.map[w];
    }
    let out = EquivariantMapResult {
        source,
        target: ly.value.clone(),
        map,
    };
    debug_assert!(out.validate().is_ok());
    out
}

/// The relative matching map X_r → M_r(X) ×_{M_r(Y)} Y_r.
pub fn relative_matching(
    s: &GeneralizedReedyStructure,
    f: &DiagramMap,
    r: usize,
) -> EquivariantMapResult {
    let mx = matching(s, &f.source, r);
    let my = matching(s, &f.target, r);
    // induced M_r(f): family over X ↦ family over Y, componentwise
    let mf: Vec<usize> = (0..mx.object.size)
        .map(|k| {
            let fam: Vec<usize> = mx
                .slice_objects
                .iter()
                .enumerate()
                .map(|(i, &u)| f.apply(s.category.cod(u), mx.families[k][i]))
                .collect();
            my.families
                .iter()
                .position(|g| *g == fam)
                .expect("mapped family compatible")
        })
        .collect();
    // pullback M_r(X) ×_{M_r(Y)} Y_r
    let yn = f.target.size(r);
    let mut pairs = Vec::new();
    for k in 0..mx.object.size {
        for yv in 0..yn {
            if mf[k] == my.map[yv] {
                pairs.push((k, yv));
            }
        }
    }
    let group = mx.value.group.clone();
    let action: Vec<Vec<usize>> = (0..group.order())
        .map(|g| {
            pairs
                .iter()
                .map(|&(k, yv)| {
                    let img = (mx.object.apply(g, k), my.value.apply(g, yv));
                    pairs.iter().position(|&p| p == img).expect("closed")
                })
                .collect()
        })
        .collect();
    let target = EquivariantSet::new(group, pairs.len(), action);
    let map: Vec<usize> = (0..f.source.size(r))
        .map(|xv| {
            let img = (mx.map[xv], f.apply(r, xv));
            pairs.iter().position(|&p| p == img).expect("present")
        })
        .collect();
    let out = EquivariantMapResult {
        source: mx.value.clone(),
        target,
        map,
    };
    debug_assert!(out.validate().is_ok());
    out
}

/// Agreement report for the four computations of a global latching or
/// matching object at one degree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GlobalObjects {
    pub degree: u32,
    /// per degree-n object: (comma route, fiber route, pointwise route) sizes
    pub sizes: Vec<(usize, usize, usize)>,
    pub all_routes_agree: bool,
    pub projection_formula_iso: bool,
}

/// Global latching at degree n: computes L_n(X) as the left Kan extension of
/// the restricted diagram along the codomain functor, then checks that for
/// every degree-n object the comma route, the fiber route, and the pointwise
/// definition give the same equivariant set, and that the projection formula
/// holds.
pub fn latching_global(
    s: &GeneralizedReedyStructure,
    slice: &DegreeSlice,
    x: &SetDiagram,
) -> Result<GlobalObjects> {
    let cat = &s.category;
    let restricted_wide = x.restrict(&slice.domain_plus);
    let global = lan(&slice.codomain_plus, &restricted_wide);
    let narrow_proj = slice.domain_plus.after(&slice.plus_inclusion);
    let restricted_narrow = x.restrict(&narrow_proj);
    let fiberwise = lan(&slice.codomain_narrow_plus, &restricted_narrow);
    // the pullback and cofibered preconditions were verified when the slice
    // was built
    let pf = projection_formula_witness(
        &slice.plus_inclusion,
        &slice.codomain_narrow_plus,
        &slice.discrete_inclusion,
        &slice.codomain_plus,
        &restricted_wide,
        Variance::Cofibered,
    );
    let mut sizes = Vec::new();
    let mut all_agree = true;
    for (gi, &r) in slice.degree_n_objects.iter().enumerate() {
        let pointwise = latching(s, x, r);
        let comma_size = global.diagram.size(gi);
        let fiber_size = fiberwise.diagram.size(gi);
        // canonical map pointwise → fiber: same objects, classes compared
        let fiber_ok = {
            let mut map = vec![usize::MAX; pointwise.object.size];
            let mut ok = true;
            for (i, &u) in pointwise.slice_objects.iter().enumerate() {
                // index of u among the narrow slice objects
                let ni = slice
                    .plus_wide_objects
                    .iter()
                    .position(|&v| v == u)
                    .expect("slice object present");
                for xv in 0..x.size(cat.dom(u)) {
                    let target = fiberwise.classes[gi][fiber_comma_index(
                        &fiberwise.comma_objects[gi],
                        ni,
                        slice.discrete.id(gi),
                    )][xv];
                    let src = pointwise.classes[i][xv];
                    if map[src] != usize::MAX && map[src] != target {
                        ok = false;
                    }
                    map[src] = target;
                }
            }
            ok && is_bijection(&map, fiber_size)
        };
        // canonical map fiber → comma: narrow object ↦ (wide object, id iso)
        let comma_ok = {
            let mut map = vec![usize::MAX; fiber_size];
            let mut ok = true;
            for (ni, &u) in slice.plus_wide_objects.iter().enumerate() {
                if cat.cod(u) != r {
                    continue;
                }
                let id_iso = slice.groupoid.id(gi);
                let fi = fiber_comma_index(&fiberwise.comma_objects[gi], ni, slice.discrete.id(gi));
                let ci = global.comma_objects[gi]
                    .iter()
                    .position(|&(o, h)| o == ni && h == id_iso)
                    .expect("comma object");
                for xv in 0..x.size(cat.dom(u)) {
                    let src = fiberwise.classes[gi][fi][xv];
                    let dst = global.classes[gi][ci][xv];
                    if map[src] != usize::MAX && map[src] != dst {
                        ok = false;
                    }
                    map[src] = dst;
                }
            }
            ok && is_bijection(&map, comma_size)
        };
        // equivariance of the comma-route value against the pointwise action
        let equiv_ok = {
            let (aut, aut_mors) = automorphism_group(cat, r);
            let action: Vec<Vec<usize>> = aut_mors
                .iter()
                .map(|&g| {
                    let g_id = slice
                        .groupoid
                        .morphism_ids()
                        .find(|&m| {
                            slice.groupoid_inclusion.on_mor(m) == g
                                && slice.groupoid.dom(m) == gi
                                && slice.groupoid.cod(m) == gi
                        })
                        .expect("automorphism in groupoid");
                    (0..comma_size)
                        .map(|c| global.diagram.apply(g_id, c))
                        .collect()
                })
                .collect();
            let comma_set = EquivariantSet::new(aut, comma_size, action);
            // composed canonical map pointwise → comma must be equivariant
            let mut composed = vec![usize::MAX; pointwise.object.size];
            for (i, &u) in pointwise.slice_objects.iter().enumerate() {
                let ni = slice
                    .plus_wide_objects
                    .iter()
                    .position(|&v| v == u)
                    .unwrap();
                let id_iso = slice.groupoid.id(gi);
                let ci = global.comma_objects[gi]
                    .iter()
                    .position(|&(o, h)| o == ni && h == id_iso)
                    .unwrap();
                for xv in 0..x.size(cat.dom(u)) {
                    composed[pointwise.classes[i][xv]] = global.classes[gi][ci][xv];
                }
            }
            is_equivariant_map(&pointwise.object, &comma_set, &composed)
                && is_bijection(&composed, comma_size)
        };
        all_agree &= fiber_ok && comma_ok && equiv_ok;
        sizes.push((comma_size, fiber_size, pointwise.object.size));
    }
    Ok(GlobalObjects {
        degree: slice.n,
        sizes,
        all_routes_agree: all_agree,
        projection_formula_iso: pf.is_iso(),
    })
}

fn fiber_comma_index(
    comma_objects: &[(usize, MorId)],
    narrow_obj: usize,
    discrete_id: MorId,
) -> usize {
    comma_objects
        .iter()
        .position(|&(o, h)| o == narrow_obj && h == discrete_id)
        .expect("fiber object in comma category")
}

fn is_bijection(map: &[usize], target_size: usize) -> bool {
    if map.len() != target_size || map.contains(&usize::MAX) {
        return false;
    }
    let mut seen = vec![false; target_size];
    for &v in map {
        if seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Global matching at degree n, dual to `latching_global`.
pub fn matching_global(
    s: &GeneralizedReedyStructure,
    slice: &DegreeSlice,
    x: &SetDiagram,
) -> Result<GlobalObjects> {
    use crate::diagram::ran;
    let cat = &s.category;
    let restricted_wide = x.restrict(&slice.codomain_minus);
    let global = ran(&slice.domain_minus, &restricted_wide);
    let narrow_proj = slice.codomain_minus.after(&slice.minus_inclusion);
    let restricted_narrow = x.restrict(&narrow_proj);
    let fiberwise = ran(&slice.domain_narrow_minus, &restricted_narrow);
    let pf = projection_formula_witness(
        &slice.minus_inclusion,
        &slice.domain_narrow_minus,
        &slice.discrete_inclusion,
        &slice.domain_minus,
        &restricted_wide,
        Variance::Fibered,
    );
    let mut sizes = Vec::new();
    let mut all_agree = true;
    for (gi, &r) in slice.degree_n_objects.iter().enumerate() {
        let pointwise = matching(s, x, r);
        let comma_size = global.diagram.size(gi);
        let fiber_size = fiberwise.diagram.size(gi);
        // canonical map comma → fiber: restrict a family to the fiber objects
        let fiber_from_comma: Vec<Option<usize>> = (0..comma_size)
            .map(|k| {
                let fam: Vec<usize> = fiberwise.comma_objects[gi]
                    .iter()
                    .map(|&(ni, _)| {
                        global.component(gi, k, ni, slice.groupoid.id(gi))
                    })
                    .collect();
                fiberwise.find_family(gi, &fam)
            })
            .collect();
        // canonical map fiber → pointwise: reindex family by slice objects
        let pointwise_from_fiber: Vec<Option<usize>> = (0..fiber_size)
            .map(|k| {
                let fam: Vec<usize> = pointwise
                    .slice_objects
                    .iter()
                    .map(|&u| {
                        let ni = slice
                            .minus_wide_objects
                            .iter()
                            .position(|&v| v == u)
                            .expect("slice object present");
                        fiberwise.component(gi, k, ni, slice.discrete.id(gi))
                    })
                    .collect();
                pointwise.families.iter().position(|f| *f == fam)
            })
            .collect();
        let f1: Vec<usize> = fiber_from_comma.iter().flatten().copied().collect();
        let f2: Vec<usize> = pointwise_from_fiber.iter().flatten().copied().collect();
        let routes_ok = f1.len() == comma_size
            && f2.len() == fiber_size
            && is_bijection(&f1, fiber_size)
            && is_bijection(&f2, pointwise.object.size);
        // equivariance of comma route against pointwise
        let equiv_ok = {
            let (aut, aut_mors) = automorphism_group(cat, r);
            let action: Vec<Vec<usize>> = aut_mors
                .iter()
                .map(|&g| {
                    let g_id = slice
                        .groupoid
                        .morphism_ids()
                        .find(|&m| {
                            slice.groupoid_inclusion.on_mor(m) == g
                                && slice.groupoid.dom(m) == gi
                                && slice.groupoid.cod(m) == gi
                        })
                        .expect("automorphism in groupoid");
                    (0..comma_size)
                        .map(|c| global.diagram.apply(g_id, c))
                        .collect()
                })
                .collect();
            let comma_set = EquivariantSet::new(aut, comma_size, action);
            let composed: Vec<usize> = (0..comma_size)
                .map(|k| f2[f1[k]])
                .collect();
            is_equivariant_map(&comma_set, &pointwise.object, &composed)
                && is_bijection(&composed, pointwise.object.size)
        };
        all_agree &= routes_ok && equiv_ok;
        sizes.push((comma_size, fiber_size, pointwise.object.size));
    }
    Ok(GlobalObjects {
        degree: slice.n,
        sizes,
        all_routes_agree: all_agree,
        projection_formula_iso: pf.is_iso(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::Cat;
    use crate::generators;

    /// Δ≤n reversed for presheaves: the opposite structure.
    fn presheaf_setup(n: usize) -> (GeneralizedReedyStructure, Cat) {
        let (_, s) = generators::simplex_trunc(n);
        let sop = s.opposite();
        let shape = sop.category.clone();
        (sop, shape)
    }

    #[test]
    fn latching_at_degree_zero_is_empty_and_matching_terminal() {
        let (sop, shape) = presheaf_setup(2);
        let x = SetDiagram::corepresentable(&shape, 2); // presheaf Δ[2]
        let l = latching(&sop, &x, 0);
        assert_eq!(l.object.size, 0);
        let m = matching(&sop, &x, 0);
        assert_eq!(m.object.size, 1);
        // matching map to the terminal is onto the single family
        assert!(m.map.iter().all(|&k| k == 0));
    }

    #[test]
    fn latching_of_standard_two_simplex() {
        // L_[1](Δ[2]) = degenerate 1-simplices = 3; map injective into the 6
        // edges. L_[2](Δ[2]) = 9 of the 10 elements at level 2.
        let (sop, shape) = presheaf_setup(2);
        let x = SetDiagram::corepresentable(&shape, 2);
        let l1 = latching(&sop, &x, 1);
        assert_eq!(l1.object.size, 3);
        assert_eq!(x.size(1), 6);
        let mut seen = vec![false; 6];
        for &v in &l1.map {
            assert!(!seen[v], "latching map must be injective here");
            seen[v] = true;
        }
        let l2 = latching(&sop, &x, 2);
        assert_eq!(l2.object.size, 9);
        assert_eq!(x.size(2), 10);
    }

    #[test]
    fn matching_of_standard_two_simplex_at_one() {
        // M_[1](Δ[2]) = pairs of vertices = 9; matching map sends an edge to
        // its endpoints.
        let (sop, shape) = presheaf_setup(2);
        let x = SetDiagram::corepresentable(&shape, 2);
        let m = matching(&sop, &x, 1);
        assert_eq!(m.object.size, 9);
        // terminal presheaf: matching map bijective
        let t = SetDiagram::terminal_diagram(shape);
        let mt = matching(&sop, &t, 1);
        assert_eq!(mt.object.size, 1);
        assert!(mt.map.iter().all(|&k| k == 0));
    }

    #[test]
    fn relative_matching_of_iso_and_to_terminal() {
        let (sop, shape) = presheaf_setup(2);
        let x = SetDiagram::corepresentable(&shape, 2);
        let id = DiagramMap::identity(&x);
        for r in 0..=2 {
            let rel = relative_matching(&sop, &id, r);
            assert!(rel.is_bijective(), "relative matching of an iso is an iso");
        }
        // f: X → 1: the pullback M_r(X) ×_{M_r(1)} 1 is M_r(X), so the
        // relative matching map is the matching map of X
        let terminal = SetDiagram::terminal_diagram(shape.clone());
        let to_terminal = DiagramMap {
            source: x.clone(),
            target: terminal,
            components: shape
                .object_ids()
                .map(|o| vec![0; x.size(o)])
                .collect(),
        };
        for r in 0..=2 {
            let rel = relative_matching(&sop, &to_terminal, r);
            let m = matching(&sop, &x, r);
            assert_eq!(rel.target.size, m.object.size);
        }
    }

    #[test]
    fn relative_latching_of_iso_is_iso_and_of_empty_is_latching() {
        let (sop, shape) = presheaf_setup(2);
        let x = SetDiagram::corepresentable(&shape, 2);
        let id = DiagramMap::identity(&x);
        for r in 0..=2 {
            let rel = relative_latching(&sop, &id, r);
            assert!(rel.is_bijective());
        }
        let empty = SetDiagram::empty(shape.clone());
        let from_empty = DiagramMap {
            source: empty,
            target: x.clone(),
            components: vec![vec![]; shape.n_objects()],
        };
        for r in 0..=2 {
            let rel = relative_latching(&sop, &from_empty, r);
            let l = latching(&sop, &x, r);
            assert_eq!(rel.source.size, l.object.size);
            assert_eq!(rel.map, l.map);
        }
    }

    #[test]
    fn boundary_inclusion_relative_latching_misses_only_identity() {
        use crate::diagram::subdiagram_closure;
        let (sop, shape) = presheaf_setup(2);
        let x = SetDiagram::corepresentable(&shape, 2);
        // ∂Δ[2] as a subpresheaf: everything reachable from the 6 edges
        let seeds: Vec<(usize, usize)> = (0..x.size(1)).map(|e| (1, e)).collect();
        let (boundary, incl) = subdiagram_closure(&x, &seeds);
        assert_eq!(boundary.size(2), 9);
        let rel = relative_latching(&sop, &incl, 2);
        // ∂Δ[2]_2 ∪_{L(∂Δ[2])} L(Δ[2]) has 9 elements; the map into the 10
        // two-simplices is injective and misses exactly the identity
        assert_eq!(rel.source.size, 9);
        assert!(rel.is_injective());
        let missed: Vec<usize> = (0..rel.target.size)
            .filter(|y| !rel.map.contains(y))
            .collect();
        assert_eq!(missed.len(), 1);
        let name = &x.values[2][missed[0]];
        assert!(name.contains("id"), "missed element must be the identity, got {name}");
    }

    #[test]
    fn global_routes_agree_on_simplex_and_cyclic() {
        for (sop, shape) in [
            presheaf_setup(2),
            {
                let (_, s) = generators::cyclic_trunc(2);
                let sop = s.opposite();
                let c = sop.category.clone();
                (sop, c)
            },
        ] {
            let x = SetDiagram::corepresentable(&shape, shape.n_objects() - 1);
            for n in 0..=sop.max_degree() {
                let slice = crate::reedy::degree_slice(&sop, n).unwrap();
                let gl = latching_global(&sop, &slice, &x).unwrap();
                assert!(gl.all_routes_agree, "latching degree {n}: {gl:?}");
                assert!(gl.projection_formula_iso);
                let gm = matching_global(&sop, &slice, &x).unwrap();
                assert!(gm.all_routes_agree, "matching degree {n}: {gm:?}");
                assert!(gm.projection_formula_iso);
            }
        }
    }
}
