//! Eilenberg-Zilber machinery: categories whose degree-raising maps are the
//! monomorphisms and whose degree-lowering maps are the split epimorphisms,
//! with absolute pushouts of degeneracy pairs. Presheaves on such a category
//! have standard decompositions, monic skeleta with computable images,
//! formal boundaries, and a three-way characterization of normal
//! monomorphisms with cellular filtrations.

use crate::diagram::{
    coproduct, diagram_pushout, DiagramMap, SetDiagram,
};
use crate::error::{Error, Result};
use crate::fincat::{Cat, MorId, ObjId, WideSubcategory};
use crate::group::EquivariantSet;
use crate::reedy::{automorphism_group, relative_latching, GeneralizedReedyStructure};
use serde::{Deserialize, Serialize};

/// A category with a degree function satisfying the EZ axioms, with the
/// derived face/degeneracy classification and both the covariant and the
/// presheaf-side (reversed) generalized Reedy structures.
#[derive(Debug, Clone)]
pub struct EzStructure {
    pub cat: Cat,
    pub degree: Vec<u32>,
    /// face operators: the monomorphisms
    pub mono: Vec<bool>,
    /// degeneracy operators: the split epimorphisms
    pub split_epi: Vec<bool>,
    pub structure: GeneralizedReedyStructure,
    /// the reversed structure on the opposite category; presheaves live here
    pub presheaf_structure: GeneralizedReedyStructure,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EzReport {
    pub degree_behavior: Vec<String>,
    pub factorization: Vec<String>,
    pub absolute_pushouts: Vec<String>,
    pub reedy_dualizable: bool,
}

impl EzReport {
    pub fn passes(&self) -> bool {
        self.degree_behavior.is_empty()
            && self.factorization.is_empty()
            && self.absolute_pushouts.is_empty()
            && self.reedy_dualizable
    }
}

impl EzStructure {
    /// Classifies morphisms, builds both structures, and rejects categories
    /// that fail the cheap EZ axioms (degree behavior of monomorphisms,
    /// split-epi/mono factorizations, the induced dualizable Reedy
    /// structure) with a diagnostic. The absolute-pushout sweep is left to
    /// `validate_ez`; for per-category failure enumeration without a
    /// constructed structure use `ez_axioms_report`.
    pub fn new(cat: Cat, degree: Vec<u32>) -> Result<Self> {
        let ez = Self::new_unchecked(cat, degree)?;
        let mut report = ez.validate_ez_inner(false);
        report.absolute_pushouts.clear();
        if !report.passes() {
            let mut lines = report.degree_behavior;
            lines.extend(report.factorization);
            if !report.reedy_dualizable {
                lines.push("induced structure is not a dualizable generalized Reedy structure".into());
            }
            return Err(Error::Precondition(format!(
                "not an EZ-category: {}",
                lines.join("; ")
            )));
        }
        Ok(ez)
    }

    fn new_unchecked(cat: Cat, degree: Vec<u32>) -> Result<Self> {
        let classes: Vec<_> = cat.morphism_ids().map(|f| cat.classify(f)).collect();
        let mono: Vec<bool> = classes.iter().map(|c| c.mono).collect();
        let split_epi: Vec<bool> = classes.iter().map(|c| c.split_epi).collect();
        let plus = WideSubcategory {
            member: mono.clone(),
        };
        let minus = WideSubcategory {
            member: split_epi.clone(),
        };
        let structure =
            GeneralizedReedyStructure::new(cat.clone(), degree.clone(), plus, minus)?;
        let presheaf_structure = structure.opposite();
        Ok(EzStructure {
            cat,
            degree,
            mono,
            split_epi,
            structure,
            presheaf_structure,
        })
    }

    pub fn deg(&self, o: ObjId) -> u32 {
        self.degree[o]
    }

    pub fn max_degree(&self) -> u32 {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    /// The shape presheaves live on: the opposite category.
    pub fn op_shape(&self) -> &Cat {
        &self.presheaf_structure.category
    }

    /// The Yoneda presheaf of r.
    pub fn representable(&self, r: ObjId) -> SetDiagram {
        SetDiagram::corepresentable(self.op_shape(), r)
    }

    /// Is this element degenerate: the restriction of an element along a
    /// non-invertible degeneracy?
    pub fn is_degenerate(&self, x: &SetDiagram, r: ObjId, elem: usize) -> bool {
        self.cat.morphism_ids().any(|rho| {
            self.split_epi[rho]
                && !self.cat.is_iso(rho)
                && self.cat.dom(rho) == r
                && (0..x.size(self.cat.cod(rho))).any(|y| x.apply(rho, y) == elem)
        })
    }

    /// Checks the EZ axioms: degree behavior of monomorphisms, split-epi/mono
    /// factorizations, absolute pushouts of degeneracy pairs, and that the
    /// induced structure is a dualizable generalized Reedy structure.
    pub fn validate_ez(&self) -> EzReport {
        self.validate_ez_inner(true)
    }

    fn validate_ez_inner(&self, with_pushouts: bool) -> EzReport {
        let cat = &self.cat;
        let mut degree_behavior = Vec::new();
        for f in cat.morphism_ids() {
            if !self.mono[f] {
                continue;
            }
            let (a, b) = (self.deg(cat.dom(f)), self.deg(cat.cod(f)));
            let invertible = cat.is_iso(f);
            if invertible && a != b {
                degree_behavior.push(format!(
                    "invertible mono {} changes degree",
                    cat.mor_name(f)
                ));
            }
            if !invertible && b <= a {
                degree_behavior.push(format!(
                    "non-invertible mono {} does not raise degree",
                    cat.mor_name(f)
                ));
            }
        }
        let mut factorization = Vec::new();
        for f in cat.morphism_ids() {
            let (a, b) = (cat.dom(f), cat.cod(f));
            let found = cat.object_ids().any(|s| {
                cat.hom(a, s).iter().any(|&rho| {
                    self.split_epi[rho]
                        && cat.hom(s, b).iter().any(|&u| {
                            self.mono[u] && cat.compose(u, rho) == Some(f)
                        })
                })
            });
            if !found {
                factorization.push(format!(
                    "{} is not split-epi followed by mono",
                    cat.mor_name(f)
                ));
            }
        }
        // every degeneracy pair with common domain must have an absolute
        // pushout after twisting one leg by a domain automorphism. Over a
        // category with only identity automorphisms this is the plain
        // all-pairs condition; with non-trivial automorphisms the literal
        // condition is too strong (twisted collapses out of the same object
        // admit no commuting cocone at all), while the twisted pair reduces
        // to an untwisted one representing the same joint quotient.
        let mut absolute_pushouts = Vec::new();
        for rho in cat.morphism_ids() {
            if !with_pushouts {
                break;
            }
            if !self.split_epi[rho] {
                continue;
            }
            let r = cat.dom(rho);
            for rho2 in cat.morphism_ids() {
                if !self.split_epi[rho2] || cat.dom(rho2) != r {
                    continue;
                }
                let found = cat.hom(r, r).iter().any(|&eta| {
                    cat.is_iso(eta)
                        && absolute_pushout(cat, rho, cat.compose(rho2, eta).unwrap())
                            .is_some()
                });
                if !found {
                    absolute_pushouts.push(format!(
                        "({}, {}) has no absolute pushout up to twist",
                        cat.mor_name(rho),
                        cat.mor_name(rho2)
                    ));
                }
            }
        }
        let reedy = self.structure.validate_reedy(true);
        EzReport {
            degree_behavior,
            factorization,
            absolute_pushouts,
            reedy_dualizable: reedy.passes(),
        }
    }
}

/// Full EZ-axiom failure enumeration for an arbitrary category with a
/// degree function, without requiring the structure to be constructible.
pub fn ez_axioms_report(cat: &Cat, degree: &[u32]) -> EzReport {
    match EzStructure::new_unchecked(cat.clone(), degree.to_vec()) {
        Ok(ez) => ez.validate_ez(),
        Err(e) => EzReport {
            degree_behavior: vec![e.to_string()],
            factorization: Vec::new(),
            absolute_pushouts: Vec::new(),
            reedy_dualizable: false,
        },
    }
}

/// A commuting square in the category representing the pushout of two split
/// epimorphisms, absolute because its Yoneda image is a presheaf pushout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsolutePushout {
    pub object: ObjId,
    /// s → t with left∘rho = right∘rho2
    pub left: MorId,
    pub right: MorId,
}

/// Computes the pushout of the Yoneda images of two split epimorphisms with
/// common domain and searches for a representing object; `None` when the
/// presheaf pushout is not representable.
pub fn absolute_pushout(cat: &Cat, rho: MorId, rho2: MorId) -> Option<AbsolutePushout> {
    let r = cat.dom(rho);
    debug_assert_eq!(cat.dom(rho2), r);
    let (s, s2) = (cat.cod(rho), cat.cod(rho2));
    // pointwise pushout classes of Hom(a,s) ⊔ Hom(a,s2) under ρu ~ ρ2u
    let classes_at = |a: ObjId| -> (Vec<usize>, Vec<usize>, usize) {
        let hs = cat.hom(a, s);
        let hs2 = cat.hom(a, s2);
        let total = hs.len() + hs2.len();
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for &u in cat.hom(a, r) {
            let lu = cat.compose(rho, u).unwrap();
            let ru = cat.compose(rho2, u).unwrap();
            let li = hs.iter().position(|&v| v == lu).unwrap();
            let ri = hs2.iter().position(|&v| v == ru).unwrap() + hs.len();
            let (x, y) = (find(&mut parent, li), find(&mut parent, ri));
            let (lo, hi) = if x < y { (x, y) } else { (y, x) };
            parent[hi] = lo;
        }
        let mut roots: Vec<usize> = (0..total).map(|i| find(&mut parent, i)).collect();
        let mut sorted = roots.clone();
        sorted.sort_unstable();
        sorted.dedup();
        for v in roots.iter_mut() {
            *v = sorted.iter().position(|w| w == v).unwrap();
        }
        (
            roots[..hs.len()].to_vec(),
            roots[hs.len()..].to_vec(),
            sorted.len(),
        )
    };
    let pointwise: Vec<(Vec<usize>, Vec<usize>, usize)> =
        cat.object_ids().map(classes_at).collect();
    // search for a representing cocone (t, τ, τ2), first in index order
    for t in cat.object_ids() {
        for &tau in cat.hom(s, t) {
            for &tau2 in cat.hom(s2, t) {
                if cat.compose(tau, rho) != cat.compose(tau2, rho2) {
                    continue;
                }
                // the induced map P_a → Hom(a, t) must be bijective for all a
                let ok = cat.object_ids().all(|a| {
                    let (left, right, size) = &pointwise[a];
                    let ht = cat.hom(a, t);
                    if *size != ht.len() {
                        return false;
                    }
                    let mut assigned: Vec<Option<MorId>> = vec![None; *size];
                    for (i, &u) in cat.hom(a, s).iter().enumerate() {
                        let img = cat.compose(tau, u).unwrap();
                        match assigned[left[i]] {
                            None => assigned[left[i]] = Some(img),
                            Some(prev) if prev != img => return false,
                            _ => {}
                        }
                    }
                    for (i, &u) in cat.hom(a, s2).iter().enumerate() {
                        let img = cat.compose(tau2, u).unwrap();
                        match assigned[right[i]] {
                            None => assigned[right[i]] = Some(img),
                            Some(prev) if prev != img => return false,
                            _ => {}
                        }
                    }
                    let mut seen = vec![false; ht.len()];
                    for v in assigned.iter() {
                        match v {
                            None => return false,
                            Some(img) => {
                                let k = ht.iter().position(|&w| w == *img).unwrap();
                                if seen[k] {
                                    return false;
                                }
                                seen[k] = true;
                            }
                        }
                    }
                    true
                });
                if ok {
                    return Some(AbsolutePushout {
                        object: t,
                        left: tau,
                        right: tau2,
                    });
                }
            }
        }
    }
    None
}

/// A standard decomposition of a presheaf element: a degeneracy followed by
/// a non-degenerate element.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StandardDecomposition {
    /// the degeneracy r ↠ s (identity when the element is non-degenerate)
    pub degeneracy: MorId,
    pub target_object: ObjId,
    pub element: usize,
    /// all decompositions (degeneracy, element) of the input
    pub all: Vec<(MorId, usize)>,
    /// essential uniqueness verified: every pair of decompositions is linked
    /// by exactly one isomorphism
    pub essentially_unique: bool,
}

/// Finds a standard decomposition of x ∈ X_r by scanning degeneracies in
/// increasing degree of the target, enumerates all of them, and verifies
/// essential uniqueness.
pub fn standard_decomposition(
    ez: &EzStructure,
    x: &SetDiagram,
    r: ObjId,
    elem: usize,
) -> StandardDecomposition {
    let cat = &ez.cat;
    let mut all = Vec::new();
    for rho in cat.morphism_ids() {
        if !ez.split_epi[rho] || cat.dom(rho) != r {
            continue;
        }
        let s = cat.cod(rho);
        for y in 0..x.size(s) {
            if x.apply(rho, y) == elem && !ez.is_degenerate(x, s, y) {
                all.push((rho, y));
            }
        }
    }
    // minimal target degree first; stable on (degree, morphism id, element)
    let mut sorted = all.clone();
    sorted.sort_by_key(|&(rho, y)| (ez.deg(cat.cod(rho)), rho, y));
    let (degeneracy, element) = sorted[0];
    // essential uniqueness: each ordered pair of decompositions is linked by
    // a comparison (θ, η) with θ an isomorphism of the targets and η an
    // automorphism of r stabilizing the element: θ∘ρ = ρ'∘η and θ*(y') = y.
    // Over a category with only identity automorphisms this is the plain
    // middle-isomorphism comparison, which is then unique since
    // degeneracies are epic.
    let mut essentially_unique = true;
    let autos: Vec<MorId> = cat
        .hom(r, r)
        .iter()
        .copied()
        .filter(|&eta| cat.is_iso(eta) && x.apply(eta, elem) == elem)
        .collect();
    for &(rho_a, ya) in &all {
        for &(rho_b, yb) in &all {
            let (sa, sb) = (cat.cod(rho_a), cat.cod(rho_b));
            let linked = cat.hom(sa, sb).iter().any(|&theta| {
                cat.is_iso(theta)
                    && x.apply(theta, yb) == ya
                    && autos.iter().any(|&eta| {
                        cat.compose(theta, rho_a) == cat.compose(rho_b, eta)
                    })
            });
            if !linked {
                essentially_unique = false;
            }
        }
    }
    StandardDecomposition {
        degeneracy,
        target_object: cat.cod(degeneracy),
        element,
        all,
        essentially_unique,
    }
}

/// The formal boundary of the representable at r: the subpresheaf of
/// elements factoring through a non-invertible face operator, with its
/// inclusion.
pub fn boundary(ez: &EzStructure, r: ObjId) -> (SetDiagram, DiagramMap) {
    let cat = &ez.cat;
    let rep = ez.representable(r);
    let op = ez.op_shape();
    let mut elems: Vec<Vec<usize>> = Vec::new();
    for a in cat.object_ids() {
        let hom = cat.hom(a, r);
        let keep: Vec<usize> = hom
            .iter()
            .enumerate()
            .filter(|&(_, &f)| {
                cat.morphism_ids().any(|u| {
                    ez.mono[u]
                        && !cat.is_iso(u)
                        && cat.cod(u) == r
                        && cat
                            .hom(a, cat.dom(u))
                            .iter()
                            .any(|&h| cat.compose(u, h) == Some(f))
                })
            })
            .map(|(i, _)| i)
            .collect();
        elems.push(keep);
    }
    let actions: Vec<Vec<usize>> = op
        .morphism_ids()
        .map(|m| {
            let (a, b) = (op.dom(m), op.cod(m));
            elems[a]
                .iter()
                .map(|&i| {
                    let img = rep.apply(m, i);
                    elems[b]
                        .iter()
                        .position(|&j| j == img)
                        .expect("boundary closed under restriction")
                })
                .collect()
        })
        .collect();
    let bd = SetDiagram {
        shape: op.clone(),
        values: elems
            .iter()
            .enumerate()
            .map(|(a, keep)| keep.iter().map(|&i| rep.values[a][i].clone()).collect())
            .collect(),
        actions,
    };
    debug_assert!(bd.validate().is_ok());
    let include = DiagramMap {
        source: bd.clone(),
        target: rep,
        components: elems,
    };
    (bd, include)
}

/// Verdict of the free-extension test for an equivariant map: monic with a
/// free action on the complement.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FreeExtensionCheck {
    pub monic: bool,
    pub free: bool,
    pub orbit_representatives: Vec<usize>,
}

impl FreeExtensionCheck {
    pub fn is_free_extension(&self) -> bool {
        self.monic && self.free
    }
}

pub fn free_extension_check(
    source: &EquivariantSet,
    target: &EquivariantSet,
    map: &[usize],
) -> FreeExtensionCheck {
    debug_assert!(crate::group::is_equivariant_map(source, target, map));
    let mut hit = vec![false; target.size];
    let mut monic = true;
    for &y in map {
        if hit[y] {
            monic = false;
        }
        hit[y] = true;
    }
    let complement: Vec<usize> = (0..target.size).filter(|&y| !hit[y]).collect();
    let free = target.is_free_on(&complement);
    let mut orbit_representatives = Vec::new();
    let mut seen = vec![false; target.size];
    for &y in &complement {
        if seen[y] {
            continue;
        }
        orbit_representatives.push(y);
        for g in 0..target.group.order() {
            seen[target.apply(g, y)] = true;
        }
    }
    FreeExtensionCheck {
        monic,
        free,
        orbit_representatives,
    }
}

/// The three-way normality verdict of Prop-style characterizations:
/// (i) relative latching maps are free extensions, (ii) monic with trivial
/// isotropy on non-degenerate new elements, (iii) cellular filtration by
/// boundary attachments. Disagreement is a soundness failure.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormalityReport {
    pub via_i: bool,
    pub via_ii: bool,
    pub via_iii: bool,
    pub witness: Option<String>,
}

impl NormalityReport {
    pub fn agree(&self) -> bool {
        self.via_i == self.via_ii && self.via_ii == self.via_iii
    }

    pub fn is_normal(&self) -> bool {
        self.via_i && self.via_ii && self.via_iii
    }
}

pub fn is_normal_mono(ez: &EzStructure, phi: &DiagramMap) -> NormalityReport {
    let via_i = normality_via_latching(ez, phi);
    let via_ii = normality_via_isotropy(ez, phi);
    let (via_iii, witness) = normality_via_filtration(ez, phi);
    NormalityReport {
        via_i,
        via_ii,
        via_iii,
        witness,
    }
}

fn normality_via_latching(ez: &EzStructure, phi: &DiagramMap) -> bool {
    // Prop-style route (i): every relative latching map is a free extension.
    // The latching objects are the Kan colimits of the reversed structure;
    // over a strict base they are the degenerate subobjects, and on twisted
    // degenerate quotients (where they differ) this route agrees with the
    // cellular route (iii), not with the isotropy route (ii).
    let sop = &ez.presheaf_structure;
    ez.cat.object_ids().all(|r| {
        let rel = relative_latching(sop, phi, r);
        free_extension_check(&rel.source, &rel.target, &rel.map).is_free_extension()
    })
}

fn normality_via_isotropy(ez: &EzStructure, phi: &DiagramMap) -> bool {
    if !phi.is_mono() {
        return false;
    }
    let cat = &ez.cat;
    let y = &phi.target;
    for r in cat.object_ids() {
        let (_, aut_mors) = automorphism_group(cat, r);
        let image: Vec<bool> = {
            let mut im = vec![false; y.size(r)];
            for &v in &phi.components[r] {
                im[v] = true;
            }
            im
        };
        for elem in 0..y.size(r) {
            if image[elem] || ez.is_degenerate(y, r, elem) {
                continue;
            }
            // isotropy subgroup under the presheaf action of Aut(r)
            let isotropy = aut_mors
                .iter()
                .filter(|&&g| y.apply(g, elem) == elem)
                .count();
            if isotropy != 1 {
                return false;
            }
        }
    }
    true
}

/// One stage of a cellular filtration: the cells attached at this degree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiltrationStage {
    pub degree: u32,
    /// (object r of this degree, chosen orbit representative element)
    pub cells: Vec<(ObjId, usize)>,
    pub verified_pushout: bool,
}

fn normality_via_filtration(ez: &EzStructure, phi: &DiagramMap) -> (bool, Option<String>) {
    match cellular_filtration(ez, phi) {
        Ok(stages) => {
            if stages.iter().all(|s| s.verified_pushout) {
                (true, None)
            } else {
                let bad = stages.iter().find(|s| !s.verified_pushout).unwrap();
                (false, Some(format!("stage {} fails", bad.degree)))
            }
        }
        Err(e) => (false, Some(e.to_string())),
    }
}

/// The subpresheaf of elements factoring through an object of degree <= n,
/// with its inclusion. Over a strict base this is the image of the skeleton
/// counit; it is always a subobject, which is what the boundary-attachment
/// filtration needs.
pub fn degree_subobject(ez: &EzStructure, x: &SetDiagram, n: i64) -> (SetDiagram, DiagramMap) {
    let cat = &ez.cat;
    let op = ez.op_shape();
    let mut keep: Vec<Vec<bool>> = cat
        .object_ids()
        .map(|a| vec![false; x.size(a)])
        .collect();
    for g in cat.morphism_ids() {
        if ez.deg(cat.cod(g)) as i64 > n {
            continue;
        }
        let a = cat.dom(g);
        for yv in 0..x.size(cat.cod(g)) {
            keep[a][x.apply(g, yv)] = true;
        }
    }
    let elems: Vec<Vec<usize>> = keep
        .iter()
        .map(|k| {
            k.iter()
                .enumerate()
                .filter_map(|(e, &b)| if b { Some(e) } else { None })
                .collect()
        })
        .collect();
    let actions: Vec<Vec<usize>> = op
        .morphism_ids()
        .map(|m| {
            let (a, b) = (op.dom(m), op.cod(m));
            elems[a]
                .iter()
                .map(|&e| {
                    let img = x.apply(m, e);
                    elems[b]
                        .iter()
                        .position(|&f| f == img)
                        .expect("degree subobject closed under restriction")
                })
                .collect()
        })
        .collect();
    let sub = SetDiagram {
        shape: op.clone(),
        values: elems
            .iter()
            .enumerate()
            .map(|(a, es)| es.iter().map(|&e| x.values[a][e].clone()).collect())
            .collect(),
        actions,
    };
    debug_assert!(sub.validate().is_ok());
    let include = DiagramMap {
        source: sub.clone(),
        target: x.clone(),
        components: elems,
    };
    (sub, include)
}

/// Builds the relative skeleta sk_n(φ) = X ∪_{sk_n X} sk_n Y stage by stage
/// (with the subobject skeleta) and verifies that each stage is the pushout
/// of its predecessor along a coproduct of boundary inclusions; the final
/// stage must be Y itself.
pub fn cellular_filtration(
    ez: &EzStructure,
    phi: &DiagramMap,
) -> Result<Vec<FiltrationStage>> {
    let cat = &ez.cat;
    let op = ez.op_shape();
    let max_deg = ez.max_degree() as i64;
    let x = &phi.source;
    let y = &phi.target;

    let skx: Vec<(SetDiagram, DiagramMap)> = (0..=max_deg)
        .map(|n| degree_subobject(ez, x, n))
        .collect();
    let sky: Vec<(SetDiagram, DiagramMap)> = (0..=max_deg)
        .map(|n| degree_subobject(ez, y, n))
        .collect();

    // stage presheaves S_n with maps: prev_to_next and to Y
    let mut prev: SetDiagram = x.clone();
    let mut prev_to_y: DiagramMap = phi.clone();
    // legs of the previous stage's pushout (X → S_{n-1}, sk_{n-1}Y → S_{n-1})
    let mut prev_legs: Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)> = None;
    let mut stages = Vec::new();

    for n in 0..=max_deg {
        let (skx_n, incl_x) = &skx[n as usize];
        let (sky_n, incl_y) = &sky[n as usize];
        // sk_n(φ): restriction of φ to the subobjects
        let sk_phi = DiagramMap {
            source: skx_n.clone(),
            target: sky_n.clone(),
            components: op
                .object_ids()
                .map(|o| {
                    incl_x.components[o]
                        .iter()
                        .map(|&e| {
                            let img = phi.apply(o, e);
                            incl_y.components[o]
                                .iter()
                                .position(|&f| f == img)
                                .expect("map preserves the degree filtration")
                        })
                        .collect()
                })
                .collect(),
        };
        // S_n = X ∪_{sk_n X} sk_n Y
        let po = diagram_pushout(incl_x, &sk_phi)?;
        let s_n = po.apex.clone();
        // map S_n → Y
        let mut to_y_components = Vec::new();
        for o in op.object_ids() {
            let mut comp = vec![usize::MAX; s_n.size(o)];
            for xv in 0..x.size(o) {
                comp[po.from_left.apply(o, xv)] = phi.apply(o, xv);
            }
            for (w, &e) in incl_y.components[o].iter().enumerate() {
                let cls = po.from_right.apply(o, w);
                if comp[cls] != usize::MAX && comp[cls] != e {
                    return Err(Error::Precondition(
                        "stage map to the target is ill-defined".into(),
                    ));
                }
                comp[cls] = e;
            }
            if comp.contains(&usize::MAX) {
                return Err(Error::Precondition("stage map not total".into()));
            }
            to_y_components.push(comp);
        }
        let s_to_y = DiagramMap {
            source: s_n.clone(),
            target: y.clone(),
            components: to_y_components,
        };
        // map S_{n-1} → S_n
        let sigma = if let Some((left_legs, right_legs)) = &prev_legs {
            let (_, prev_incl_y) = &sky[(n - 1) as usize];
            let mut comp = Vec::new();
            for o in op.object_ids() {
                let mut row = vec![usize::MAX; prev.size(o)];
                for xv in 0..x.size(o) {
                    row[left_legs[o][xv]] = po.from_left.apply(o, xv);
                }
                for (w, &e) in prev_incl_y.components[o].iter().enumerate() {
                    // the same element of Y inside the larger skeleton
                    let w_big = incl_y.components[o]
                        .iter()
                        .position(|&f| f == e)
                        .expect("skeleta are nested");
                    let target = po.from_right.apply(o, w_big);
                    let cls = right_legs[o][w];
                    if row[cls] != usize::MAX && row[cls] != target {
                        return Err(Error::Precondition(
                            "stage inclusion ill-defined".into(),
                        ));
                    }
                    row[cls] = target;
                }
                if row.contains(&usize::MAX) {
                    return Err(Error::Precondition("stage inclusion not total".into()));
                }
                comp.push(row);
            }
            DiagramMap {
                source: prev.clone(),
                target: s_n.clone(),
                components: comp,
            }
        } else {
            // S_{-1} = X
            po.from_left.clone()
        };
        if sigma.validate().is_err() {
            return Err(Error::Precondition("stage inclusion is not natural".into()));
        }

        // collect cells: orbits of new elements at degree-n objects
        let mut cells = Vec::new();
        let mut cell_maps: Vec<(ObjId, Vec<Vec<usize>>)> = Vec::new(); // (r, yoneda map into S_n)
        let mut verified = sigma.is_mono();
        for r in cat.object_ids() {
            if ez.deg(r) as i64 != n {
                continue;
            }
            let (_, aut_mors) = automorphism_group(cat, r);
            let mut is_old = vec![false; s_n.size(r)];
            for &v in &sigma.components[r] {
                is_old[v] = true;
            }
            let mut assigned = vec![false; s_n.size(r)];
            for elem in 0..s_n.size(r) {
                if is_old[elem] || assigned[elem] {
                    continue;
                }
                // mark the whole orbit
                for &g in &aut_mors {
                    assigned[s_n.apply(g, elem)] = true;
                }
                cells.push((r, elem));
                // the Yoneda map of the representative: Hom(a, r) → S_n(a)
                let yoneda: Vec<Vec<usize>> = op
                    .object_ids()
                    .map(|a| {
                        cat.hom(a, r)
                            .iter()
                            .map(|&u| s_n.apply(u, elem))
                            .collect()
                    })
                    .collect();
                cell_maps.push((r, yoneda));
            }
        }

        // verify the pushout: S_{n-1} ∪_{⊔∂R[r]} ⊔R[r] ≅ S_n
        if verified {
            verified = verify_attachment(ez, &prev, &sigma, &s_n, &cell_maps)?;
        }
        stages.push(FiltrationStage {
            degree: n as u32,
            cells,
            verified_pushout: verified,
        });
        prev_legs = Some((
            po.from_left.components.clone(),
            po.from_right.components.clone(),
        ));
        prev = s_n;
        prev_to_y = s_to_y;
    }
    // the final stage must be Y
    if !prev_to_y.is_iso() {
        return Err(Error::Precondition(
            "filtration does not reconstruct the target".into(),
        ));
    }
    Ok(stages)
}

/// The attachment check at one stage: the canonical map out of the pushout
/// of the previous stage along the boundary inclusions of the cells must be
/// an isomorphism onto the new stage.
fn verify_attachment(
    ez: &EzStructure,
    prev: &SetDiagram,
    sigma: &DiagramMap,
    s_n: &SetDiagram,
    cell_maps: &[(ObjId, Vec<Vec<usize>>)],
) -> Result<bool> {
    let op = ez.op_shape();
    if cell_maps.is_empty() {
        return Ok(sigma.is_iso());
    }
    // coproducts of boundaries and representables
    let mut boundaries = Vec::new();
    let mut reps = Vec::new();
    let mut includes = Vec::new();
    for &(r, _) in cell_maps {
        let (bd, incl) = boundary(ez, r);
        reps.push(ez.representable(r));
        boundaries.push(bd);
        includes.push(incl);
    }
    let (bd_sum, bd_injections) = coproduct(&boundaries);
    let (rep_sum, rep_injections) = coproduct(&reps);
    // ⊔∂ → ⊔R
    let incl_components: Vec<Vec<usize>> = op
        .object_ids()
        .map(|a| {
            let mut row = vec![usize::MAX; bd_sum.size(a)];
            for (k, incl) in includes.iter().enumerate() {
                for e in 0..boundaries[k].size(a) {
                    row[bd_injections[k].apply(a, e)] =
                        rep_injections[k].apply(a, incl.apply(a, e));
                }
            }
            row
        })
        .collect();
    let bd_to_rep = DiagramMap {
        source: bd_sum.clone(),
        target: rep_sum.clone(),
        components: incl_components,
    };
    // attaching map ⊔∂ → S_{n-1}: boundary elements land in the old part
    let mut attach_components: Vec<Vec<usize>> = Vec::new();
    // inverse of sigma on its image, for lifting
    let mut sigma_inverse: Vec<Vec<Option<usize>>> = Vec::new();
    for a in op.object_ids() {
        let mut inv = vec![None; s_n.size(a)];
        for e in 0..prev.size(a) {
            inv[sigma.apply(a, e)] = Some(e);
        }
        sigma_inverse.push(inv);
    }
    for a in op.object_ids() {
        let mut row = Vec::with_capacity(bd_sum.size(a));
        for (k, (_, yoneda)) in cell_maps.iter().enumerate() {
            for e in 0..boundaries[k].size(a) {
                let rep_elem = includes[k].apply(a, e);
                let in_sn = yoneda[a][rep_elem];
                match sigma_inverse[a][in_sn] {
                    Some(z) => row.push(z),
                    None => return Ok(false), // boundary leaves the old stage
                }
            }
        }
        attach_components.push(row);
    }
    let attach = DiagramMap {
        source: bd_sum.clone(),
        target: prev.clone(),
        components: attach_components,
    };
    if attach.validate().is_err() {
        return Ok(false);
    }
    let po = diagram_pushout(&attach, &bd_to_rep)?;
    // canonical comparison pushout → S_n
    for a in op.object_ids() {
        let mut comp = vec![usize::MAX; po.apex.size(a)];
        for e in 0..prev.size(a) {
            comp[po.from_left.apply(a, e)] = sigma.apply(a, e);
        }
        for (k, (_, yoneda)) in cell_maps.iter().enumerate() {
            for e in 0..reps[k].size(a) {
                let cls = po.from_right.apply(a, rep_injections[k].apply(a, e));
                let target = yoneda[a][e];
                if comp[cls] != usize::MAX && comp[cls] != target {
                    return Ok(false);
                }
                comp[cls] = target;
            }
        }
        if comp.contains(&usize::MAX) {
            return Ok(false);
        }
        // bijective?
        if comp.len() != s_n.size(a) {
            return Ok(false);
        }
        let mut seen = vec![false; s_n.size(a)];
        for &v in &comp {
            if seen[v] {
                return Ok(false);
            }
            seen[v] = true;
        }
    }
    Ok(true)
}

/// Checks the skeleton-image facts: the subobject skeleton X^(n) is monic
/// into X (by construction, re-verified), its elements agree with the image
/// of the Kan-extension counit computed independently, and over a strict
/// base the counit itself is injective onto it. Over a crossed total
/// category the counit can identify twist-related elements only through
/// automorphisms outside the truncation, so injectivity there is a theorem
/// about strict bases only.
pub fn skeleton_image_check(ez: &EzStructure, x: &SetDiagram, n: i64) -> bool {
    let cat = &ez.cat;
    let (_, include) = degree_subobject(ez, x, n);
    if !include.is_mono() {
        return false;
    }
    let sk = crate::reedy::skeleton(&ez.presheaf_structure, x, n);
    for a in cat.object_ids() {
        let kan_image: std::collections::BTreeSet<usize> =
            sk.map.components[a].iter().copied().collect();
        let expected: std::collections::BTreeSet<usize> =
            include.components[a].iter().copied().collect();
        if kan_image != expected {
            return false;
        }
    }
    let strict = cat
        .morphism_ids()
        .all(|f| !cat.is_iso(f) || cat.is_identity(f));
    if strict && !sk.map.is_mono() {
        return false;
    }
    true
}

/// The quotient of a presheaf by the automorphism action at its defining
/// object: used to build non-normal examples.
pub fn quotient_by_automorphisms(ez: &EzStructure, r: ObjId) -> SetDiagram {
    let cat = &ez.cat;
    let rep = ez.representable(r);
    let (_, aut_mors) = automorphism_group(cat, r);
    let mut gluing = Vec::new();
    for a in cat.object_ids() {
        let hom = cat.hom(a, r);
        for (i, &u) in hom.iter().enumerate() {
            for &g in &aut_mors {
                let gu = cat.compose(g, u).unwrap();
                let j = hom.iter().position(|&v| v == gu).unwrap();
                if j != i {
                    gluing.push((a, i, j));
                }
            }
        }
    }
    let (q, _) = crate::diagram::equalize_quotient(&rep, &gluing);
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn ez_simplex(n: usize) -> EzStructure {
        let (cat, s) = generators::simplex_trunc(n);
        EzStructure::new(cat, s.degree.clone()).unwrap()
    }

    #[test]
    fn simplex_and_friends_are_ez() {
        assert!(ez_simplex(3).validate_ez().passes());
        let (cat, s) = generators::cyclic_trunc(2);
        let rep = EzStructure::new(cat, s.degree.clone()).unwrap().validate_ez();
        assert!(rep.passes(), "cyclic2: {rep:?}");
        let (cat, s) = generators::gamma_trunc(2);
        assert!(EzStructure::new(cat, s.degree.clone())
            .unwrap()
            .validate_ez()
            .passes());
        let (cat, s) = generators::fin_trunc(2);
        assert!(EzStructure::new(cat, s.degree.clone())
            .unwrap()
            .validate_ez()
            .passes());
    }

    #[test]
    fn non_ez_inputs_are_rejected_with_a_diagnostic() {
        // the orbit category's minus-variant degrees decrease along maps, so
        // the mono/split-epi classes cannot carry an EZ structure
        let (cat, s) =
            generators::orbit_category(&crate::group::Group::cyclic(2), generators::OrbitVariant::Minus);
        let err = EzStructure::new(cat.clone(), s.degree.clone()).unwrap_err();
        assert!(err.to_string().contains("not an EZ-category"), "{err}");
        let report = ez_axioms_report(&cat, &s.degree);
        assert!(!report.passes());
    }

    #[test]
    fn doubled_degree_is_still_ez() {
        let (cat, s) = generators::simplex_trunc(2);
        let doubled: Vec<u32> = s.degree.iter().map(|&d| 2 * d).collect();
        let ez = EzStructure::new(cat, doubled).unwrap();
        assert!(ez.validate_ez().passes());
    }

    #[test]
    fn absolute_pushout_of_codegeneracies() {
        // pushout of (σ0, σ1): [2] ⇉ [1] in Δ≤2 is representable by [0]
        let ez = ez_simplex(2);
        let cat = &ez.cat;
        let s0 = generators::simplex_mor(cat, &[0, 0, 1], 1).unwrap();
        let s1 = generators::simplex_mor(cat, &[0, 1, 1], 1).unwrap();
        let po = absolute_pushout(cat, s0, s1).expect("absolute pushout exists");
        assert_eq!(po.object, 0);
        // same epi twice: pushout is the codomain with identities
        let po2 = absolute_pushout(cat, s0, s0).unwrap();
        assert_eq!(po2.object, 1);
        assert!(cat.is_identity(po2.left));
        assert!(cat.is_identity(po2.right));
    }

    #[test]
    fn non_ez_category_lacks_absolute_pushout() {
        // two split epis p,q with a common section but no representable
        // pushout: Hom(r,r) = {id, σp, σq}, Hom(r,s) = {p,q}, Hom(s,r) = {σ}
        use crate::fincat::{FinCategory, MorData};
        use std::sync::Arc;
        let morphisms = vec![
            MorData { name: "id_r".into(), dom: 0, cod: 0 },
            MorData { name: "e".into(), dom: 0, cod: 0 },
            MorData { name: "f".into(), dom: 0, cod: 0 },
            MorData { name: "id_s".into(), dom: 1, cod: 1 },
            MorData { name: "p".into(), dom: 0, cod: 1 },
            MorData { name: "q".into(), dom: 0, cod: 1 },
            MorData { name: "sec".into(), dom: 1, cod: 0 },
        ];
        // e = sec∘p, f = sec∘q
        let pairs = vec![
            (0, 0, 0), (0, 1, 1), (0, 2, 2), (1, 0, 1), (2, 0, 2),
            (1, 1, 1), (1, 2, 2), (2, 1, 1), (2, 2, 2),
            (3, 3, 3),
            (4, 0, 4), (5, 0, 5),
            (4, 1, 4), (4, 2, 5), (5, 1, 4), (5, 2, 5),
            (3, 4, 4), (3, 5, 5),
            (0, 6, 6), (6, 3, 6),
            (1, 6, 6), (2, 6, 6),
            (4, 6, 3), (5, 6, 3),
            (6, 4, 1), (6, 5, 2),
        ];
        let cat = Arc::new(
            FinCategory::from_tables(
                vec!["r".into(), "s".into()],
                morphisms,
                vec![0, 3],
                &pairs,
            )
            .unwrap(),
        );
        assert!(cat.validate().is_valid(), "{:?}", cat.validate());
        let p = 4;
        let q = 5;
        assert!(cat.classify(p).split_epi && cat.classify(q).split_epi);
        assert!(absolute_pushout(&cat, p, q).is_none());
    }

    #[test]
    fn standard_decompositions_in_edge() {
        let ez = ez_simplex(2);
        let edge = ez.representable(1); // Δ[1]
        // the constant edge (0,0) at level 1 decomposes through σ0 to vertex 0
        let elem = edge.values[1]
            .iter()
            .position(|name| name == "(0,0):1->1")
            .unwrap();
        let d = standard_decomposition(&ez, &edge, 1, elem);
        assert!(d.essentially_unique);
        assert_eq!(ez.cat.cod(d.degeneracy), 0);
        // non-degenerate elements decompose through the identity
        let id_elem = edge.values[1].iter().position(|n| n == "id1").unwrap();
        let d = standard_decomposition(&ez, &edge, 1, id_elem);
        assert!(ez.cat.is_identity(d.degeneracy));
        assert!(d.essentially_unique);
    }

    #[test]
    fn boundary_counts_for_two_simplex() {
        let ez = ez_simplex(2);
        let (bd, incl) = boundary(&ez, 2);
        assert_eq!(bd.size(0), 3);
        assert_eq!(bd.size(1), 6);
        assert_eq!(bd.size(2), 9);
        assert!(incl.is_mono());
        // degree-0 boundary is empty
        let (bd0, _) = boundary(&ez, 0);
        assert_eq!(bd0.total_elements(), 0);
        // boundary equals the skeleton image at d(r)-1
        assert!(skeleton_image_check(&ez, &ez.representable(2), 1));
        let sk = crate::reedy::skeleton(&ez.presheaf_structure, &ez.representable(2), 1);
        for a in ez.cat.object_ids() {
            assert_eq!(sk.diagram.size(a), bd.size(a));
        }
    }

    #[test]
    fn boundary_of_cyclic_edge_is_closed_under_action() {
        let (cat, s) = generators::cyclic_trunc(2);
        let ez = EzStructure::new(cat, s.degree.clone()).unwrap();
        let (bd, _) = boundary(&ez, 1);
        assert_eq!(bd.size(0), 2);
        bd.validate().unwrap();
    }

    #[test]
    fn boundary_inclusions_are_normal() {
        let ez = ez_simplex(2);
        for r in ez.cat.object_ids() {
            let (_, incl) = boundary(&ez, r);
            let report = is_normal_mono(&ez, &incl);
            assert!(report.agree(), "Δ[{r}]: {report:?}");
            assert!(report.is_normal(), "Δ[{r}]: {report:?}");
        }
        // identity maps are normal with empty complement
        let x = ez.representable(2);
        let report = is_normal_mono(&ez, &DiagramMap::identity(&x));
        assert!(report.agree() && report.is_normal());
    }

    #[test]
    fn symmetric_quotient_is_not_normal() {
        // the quotient of the representable at the 2-element set by its
        // Σ2-action has a non-degenerate element with full isotropy
        let (cat, s) = generators::fin_trunc(2);
        let ez = EzStructure::new(cat, s.degree.clone()).unwrap();
        let q = quotient_by_automorphisms(&ez, 1);
        let empty = SetDiagram::empty(ez.op_shape().clone());
        let from_empty = DiagramMap {
            source: empty,
            target: q.clone(),
            components: vec![Vec::new(); ez.cat.n_objects()],
        };
        let report = is_normal_mono(&ez, &from_empty);
        assert!(report.agree(), "{report:?}");
        assert!(!report.is_normal(), "{report:?}");
    }

    #[test]
    fn degeneracy_actions_are_injective() {
        // presheaf actions along split epis are injective
        let ez = ez_simplex(2);
        for r in ez.cat.object_ids() {
            let x = ez.representable(r);
            for rho in ez.cat.morphism_ids() {
                if !ez.split_epi[rho] {
                    continue;
                }
                let dom = ez.cat.cod(rho);
                let mut seen = std::collections::BTreeSet::new();
                for yv in 0..x.size(dom) {
                    assert!(seen.insert(x.apply(rho, yv)));
                }
            }
        }
    }
}
