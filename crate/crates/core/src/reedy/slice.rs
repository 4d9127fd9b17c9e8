//! Degree-slice categories: for each degree n, the groupoid of degree-n
//! objects, the discrete category on them, the full subcategory of degree
//! <= n, the categories of non-invertible (co)slices over degree n, and the
//! functors connecting them. The square (k, b, i, c) is a pullback, the
//! codomain functor off the plus side is cofibered, and the domain functor
//! off the minus side is fibered; all three facts are validated.

use super::GeneralizedReedyStructure;
use crate::error::{Error, Result};
use crate::fincat::{
    is_cofibered, is_fibered, is_pullback_square, Cat, FinCategory, FunctorData, MorData, MorId,
    WideSubcategory,
};
use std::sync::Arc;

/// All slice data at one degree.
#[derive(Debug, Clone)]
pub struct DegreeSlice {
    pub n: u32,
    /// objects of degree n, as parent object ids
    pub degree_n_objects: Vec<usize>,
    /// the groupoid of degree-n objects and isomorphisms
    pub groupoid: Cat,
    /// the discrete category on the degree-n objects
    pub discrete: Cat,
    /// the full subcategory of objects of degree <= n, with its embedding
    pub truncation: Cat,
    pub truncation_objects: Vec<usize>,
    pub embedding: FunctorData,
    /// ℝ⁺((n)): non-invertible plus maps into degree n, squares as morphisms
    pub plus_wide: Cat,
    pub plus_wide_objects: Vec<MorId>,
    /// per morphism of ℝ⁺((n)): the underlying square (f, g)
    pub plus_wide_squares: Vec<(MorId, MorId)>,
    /// ℝ⁺(n): same objects, squares whose groupoid component is an identity
    pub plus_narrow: Cat,
    /// ℝ⁻((n)) and ℝ⁻(n), dually
    pub minus_wide: Cat,
    pub minus_wide_objects: Vec<MorId>,
    pub minus_wide_squares: Vec<(MorId, MorId)>,
    pub minus_narrow: Cat,
    /// domain functor ℝ⁺((n)) → ℝ
    pub domain_plus: FunctorData,
    /// codomain functor ℝ⁺((n)) → 𝔾_n
    pub codomain_plus: FunctorData,
    /// codomain functor ℝ⁺(n) → ℝ_n
    pub codomain_narrow_plus: FunctorData,
    /// inclusion ℝ_n → 𝔾_n
    pub discrete_inclusion: FunctorData,
    /// inclusion 𝔾_n → ℝ
    pub groupoid_inclusion: FunctorData,
    /// inclusion ℝ⁺(n) → ℝ⁺((n))
    pub plus_inclusion: FunctorData,
    /// codomain functor ℝ⁻((n)) → ℝ
    pub codomain_minus: FunctorData,
    /// domain functor ℝ⁻((n)) → 𝔾_n
    pub domain_minus: FunctorData,
    /// domain functor ℝ⁻(n) → ℝ_n
    pub domain_narrow_minus: FunctorData,
    /// inclusion ℝ⁻(n) → ℝ⁻((n))
    pub minus_inclusion: FunctorData,
}

pub(crate) fn full_subcategory(
    parent: &Cat,
    objects: &[usize],
    keep: impl Fn(MorId) -> bool,
) -> (Cat, Vec<MorId>, FunctorData) {
    let mut morphisms = Vec::new();
    let mut underlying = Vec::new();
    let mut identity = vec![usize::MAX; objects.len()];
    for (i, &a) in objects.iter().enumerate() {
        for (j, &b) in objects.iter().enumerate() {
            for &m in parent.hom(a, b) {
                if !keep(m) {
                    continue;
                }
                let k = morphisms.len();
                morphisms.push(MorData {
                    name: parent.mor_name(m).to_string(),
                    dom: i,
                    cod: j,
                });
                underlying.push(m);
                if i == j && parent.is_identity(m) {
                    identity[i] = k;
                }
            }
        }
    }
    let names = objects
        .iter()
        .map(|&o| parent.object_names[o].clone())
        .collect();
    let index: std::collections::BTreeMap<(usize, usize, MorId), MorId> = morphisms
        .iter()
        .enumerate()
        .map(|(k, m)| ((m.dom, m.cod, underlying[k]), k))
        .collect();
    let ul = underlying.clone();
    let ms = morphisms.clone();
    let p2 = parent.clone();
    let cat = Arc::new(FinCategory::from_compose_fn(
        names,
        morphisms,
        identity,
        |g, f| {
            let w = p2.compose(ul[g], ul[f]).expect("composable");
            *index
                .get(&(ms[f].dom, ms[g].cod, w))
                .expect("full subcategory closed")
        },
    ));
    let functor = FunctorData {
        source: cat.clone(),
        target: parent.clone(),
        obj_map: objects.to_vec(),
        mor_map: underlying.clone(),
    };
    (cat, underlying, functor)
}

/// The arrow categories ℝ±((n)) / ℝ±(n). Objects are parent morphisms;
/// morphisms are commuting squares (f, g) with f in the wide subcategory and
/// g an isomorphism between degree-n objects (an identity for the narrow
/// version).
struct ArrowCat {
    cat: Cat,
    objects: Vec<MorId>,
    /// per morphism: the pair (f, g) of parent morphisms
    squares: Vec<(MorId, MorId)>,
}

fn arrow_category(
    parent: &Cat,
    objects: &[MorId],
    plus_side: bool,
    side: &WideSubcategory,
    narrow: bool,
    iso: &[bool],
) -> ArrowCat {
    let mut morphisms = Vec::new();
    let mut squares = Vec::new();
    let mut identity = vec![usize::MAX; objects.len()];
    for (i, &u) in objects.iter().enumerate() {
        for (j, &u2) in objects.iter().enumerate() {
            // plus side: u: s→r, u2: s'→r', squares (f: s→s', g: r→r'), u2∘f = g∘u
            // minus side: u: r→s, u2: r'→s', squares (g: r→r', f: s→s'), u2∘g = f∘u
            let (f_from, f_to, g_from, g_to) = if plus_side {
                (parent.dom(u), parent.dom(u2), parent.cod(u), parent.cod(u2))
            } else {
                (parent.cod(u), parent.cod(u2), parent.dom(u), parent.dom(u2))
            };
            for &f in parent.hom(f_from, f_to) {
                if !side.contains(f) {
                    continue;
                }
                for &g in parent.hom(g_from, g_to) {
                    if narrow && !parent.is_identity(g) {
                        continue;
                    }
                    if !iso[g] {
                        continue;
                    }
                    let commutes = if plus_side {
                        parent.compose(u2, f) == parent.compose(g, u)
                    } else {
                        parent.compose(u2, g) == parent.compose(f, u)
                    };
                    if commutes {
                        let k = morphisms.len();
                        morphisms.push(MorData {
                            name: format!(
                                "({},{})[{}→{}]",
                                parent.mor_name(f),
                                parent.mor_name(g),
                                i,
                                j
                            ),
                            dom: i,
                            cod: j,
                        });
                        squares.push((f, g));
                        if i == j && parent.is_identity(f) && parent.is_identity(g) {
                            identity[i] = k;
                        }
                    }
                }
            }
        }
    }
    let names = objects
        .iter()
        .map(|&u| parent.mor_name(u).to_string())
        .collect();
    let index: std::collections::BTreeMap<(usize, usize, MorId, MorId), MorId> = morphisms
        .iter()
        .enumerate()
        .map(|(k, m)| ((m.dom, m.cod, squares[k].0, squares[k].1), k))
        .collect();
    let sq = squares.clone();
    let ms = morphisms.clone();
    let p2 = parent.clone();
    let cat = Arc::new(FinCategory::from_compose_fn(
        names,
        morphisms,
        identity,
        move |g, f| {
            let ff = p2.compose(sq[g].0, sq[f].0).expect("composable");
            let gg = p2.compose(sq[g].1, sq[f].1).expect("composable");
            *index
                .get(&(ms[f].dom, ms[g].cod, ff, gg))
                .expect("arrow category closed")
        },
    ));
    ArrowCat {
        cat,
        objects: objects.to_vec(),
        squares,
    }
}

/// Builds the full degree-slice package at degree n and validates the
/// pullback square, the (co)fibered properties, and the decomposition of
/// ℝ⁺(n) into the coproduct of the ℝ⁺(r).
pub fn degree_slice(s: &GeneralizedReedyStructure, n: u32) -> Result<DegreeSlice> {
    let parent = &s.category;
    let iso: Vec<bool> = parent.morphism_ids().map(|f| parent.is_iso(f)).collect();
    let degree_n_objects: Vec<usize> = parent
        .object_ids()
        .filter(|&o| s.deg(o) == n)
        .collect();
    let (groupoid, _, groupoid_inclusion) =
        full_subcategory(parent, &degree_n_objects, |m| iso[m]);
    let (discrete, _, _) = full_subcategory(parent, &degree_n_objects, |m| {
        parent.is_identity(m)
    });
    let discrete_inclusion = {
        // ℝ_n → 𝔾_n: identity on objects
        FunctorData {
            source: discrete.clone(),
            target: groupoid.clone(),
            obj_map: (0..degree_n_objects.len()).collect(),
            mor_map: discrete
                .morphism_ids()
                .map(|m| groupoid.id(discrete.dom(m)))
                .collect(),
        }
    };
    let truncation_objects: Vec<usize> = parent
        .object_ids()
        .filter(|&o| s.deg(o) <= n)
        .collect();
    let (truncation, _, embedding) = full_subcategory(parent, &truncation_objects, |_| true);

    let plus_objects: Vec<MorId> = parent
        .morphism_ids()
        .filter(|&u| s.plus.contains(u) && !iso[u] && s.deg(parent.cod(u)) == n)
        .collect();
    let plus_wide_arrow = arrow_category(parent, &plus_objects, true, &s.plus, false, &iso);
    let plus_narrow_arrow = arrow_category(parent, &plus_objects, true, &s.plus, true, &iso);
    let minus_objects: Vec<MorId> = parent
        .morphism_ids()
        .filter(|&u| s.minus.contains(u) && !iso[u] && s.deg(parent.dom(u)) == n)
        .collect();
    let minus_wide_arrow = arrow_category(parent, &minus_objects, false, &s.minus, false, &iso);
    let minus_narrow_arrow = arrow_category(parent, &minus_objects, false, &s.minus, true, &iso);

    let gobj = |o: usize| degree_n_objects.iter().position(|&p| p == o).unwrap();
    let giso = |m: MorId| -> MorId {
        groupoid
            .morphism_ids()
            .find(|&k| groupoid_inclusion.on_mor(k) == m)
            .expect("iso between degree-n objects lies in the groupoid")
    };

    let domain_plus = FunctorData {
        source: plus_wide_arrow.cat.clone(),
        target: parent.clone(),
        obj_map: plus_wide_arrow.objects.iter().map(|&u| parent.dom(u)).collect(),
        mor_map: plus_wide_arrow.squares.iter().map(|&(f, _)| f).collect(),
    };
    let codomain_plus = FunctorData {
        source: plus_wide_arrow.cat.clone(),
        target: groupoid.clone(),
        obj_map: plus_wide_arrow
            .objects
            .iter()
            .map(|&u| gobj(parent.cod(u)))
            .collect(),
        mor_map: plus_wide_arrow.squares.iter().map(|&(_, g)| giso(g)).collect(),
    };
    let codomain_narrow_plus = {
        let obj_map: Vec<usize> = plus_narrow_arrow
            .objects
            .iter()
            .map(|&u| gobj(parent.cod(u)))
            .collect();
        let mor_map = plus_narrow_arrow
            .cat
            .morphism_ids()
            .map(|m| discrete.id(obj_map[plus_narrow_arrow.cat.cod(m)]))
            .collect();
        FunctorData {
            source: plus_narrow_arrow.cat.clone(),
            target: discrete.clone(),
            obj_map,
            mor_map,
        }
    };
    let plus_inclusion = {
        let find = |f: MorId, g: MorId, dom: usize, cod: usize| -> MorId {
            (0..plus_wide_arrow.squares.len())
                .find(|&k| {
                    plus_wide_arrow.squares[k] == (f, g)
                        && plus_wide_arrow.cat.dom(k) == dom
                        && plus_wide_arrow.cat.cod(k) == cod
                })
                .expect("narrow square exists in wide category")
        };
        FunctorData {
            source: plus_narrow_arrow.cat.clone(),
            target: plus_wide_arrow.cat.clone(),
            obj_map: (0..plus_objects.len()).collect(),
            mor_map: plus_narrow_arrow
                .cat
                .morphism_ids()
                .map(|m| {
                    let (f, g) = plus_narrow_arrow.squares[m];
                    find(
                        f,
                        g,
                        plus_narrow_arrow.cat.dom(m),
                        plus_narrow_arrow.cat.cod(m),
                    )
                })
                .collect(),
        }
    };

    let codomain_minus = FunctorData {
        source: minus_wide_arrow.cat.clone(),
        target: parent.clone(),
        obj_map: minus_wide_arrow.objects.iter().map(|&u| parent.cod(u)).collect(),
        mor_map: minus_wide_arrow.squares.iter().map(|&(f, _)| f).collect(),
    };
    let domain_minus = FunctorData {
        source: minus_wide_arrow.cat.clone(),
        target: groupoid.clone(),
        obj_map: minus_wide_arrow
            .objects
            .iter()
            .map(|&u| gobj(parent.dom(u)))
            .collect(),
        mor_map: minus_wide_arrow.squares.iter().map(|&(_, g)| giso(g)).collect(),
    };
    let domain_narrow_minus = {
        let obj_map: Vec<usize> = minus_narrow_arrow
            .objects
            .iter()
            .map(|&u| gobj(parent.dom(u)))
            .collect();
        let mor_map = minus_narrow_arrow
            .cat
            .morphism_ids()
            .map(|m| discrete.id(obj_map[minus_narrow_arrow.cat.cod(m)]))
            .collect();
        FunctorData {
            source: minus_narrow_arrow.cat.clone(),
            target: discrete.clone(),
            obj_map,
            mor_map,
        }
    };
    let minus_inclusion = {
        let find = |f: MorId, g: MorId, dom: usize, cod: usize| -> MorId {
            (0..minus_wide_arrow.squares.len())
                .find(|&k| {
                    minus_wide_arrow.squares[k] == (f, g)
                        && minus_wide_arrow.cat.dom(k) == dom
                        && minus_wide_arrow.cat.cod(k) == cod
                })
                .expect("narrow square exists in wide category")
        };
        FunctorData {
            source: minus_narrow_arrow.cat.clone(),
            target: minus_wide_arrow.cat.clone(),
            obj_map: (0..minus_objects.len()).collect(),
            mor_map: minus_narrow_arrow
                .cat
                .morphism_ids()
                .map(|m| {
                    let (f, g) = minus_narrow_arrow.squares[m];
                    find(
                        f,
                        g,
                        minus_narrow_arrow.cat.dom(m),
                        minus_narrow_arrow.cat.cod(m),
                    )
                })
                .collect(),
        }
    };

    // validate everything
    for f in [
        &embedding,
        &groupoid_inclusion,
        &discrete_inclusion,
        &domain_plus,
        &codomain_plus,
        &plus_inclusion,
        &codomain_minus,
        &domain_minus,
        &minus_inclusion,
        &codomain_narrow_plus,
        &domain_narrow_minus,
    ] {
        f.validate()?;
    }
    for c in [
        &groupoid,
        &discrete,
        &truncation,
        &plus_wide_arrow.cat,
        &plus_narrow_arrow.cat,
        &minus_wide_arrow.cat,
        &minus_narrow_arrow.cat,
    ] {
        // full associativity sweeps are cubic; the big arrow categories are
        // correct by construction (composites are looked up in the parent,
        // with a panic on any closure failure), so cap the full check
        if c.n_morphisms() > 4000 {
            continue;
        }
        let report = c.validate();
        if !report.is_valid() {
            return Err(Error::MalformedReedy(format!(
                "degree-slice category failed validation: {report:?}"
            )));
        }
    }

    // pullback squares and (co)fibered properties
    let di_to_groupoid = discrete_inclusion.clone();
    if !is_pullback_square(&plus_inclusion, &codomain_narrow_plus, &di_to_groupoid, &codomain_plus)
    {
        return Err(Error::MalformedReedy(
            "plus slice square (k, b, i, c) is not a pullback".into(),
        ));
    }
    if !is_pullback_square(&minus_inclusion, &domain_narrow_minus, &di_to_groupoid, &domain_minus)
    {
        return Err(Error::MalformedReedy(
            "minus slice square (κ, β, i, δ) is not a pullback".into(),
        ));
    }
    if !is_cofibered(&codomain_plus) {
        return Err(Error::MalformedReedy(
            "codomain functor off the plus slice is not cofibered".into(),
        ));
    }
    if !is_fibered(&domain_minus) {
        return Err(Error::MalformedReedy(
            "domain functor off the minus slice is not fibered".into(),
        ));
    }
    // ℝ⁺(n) decomposes as the coproduct of the ℝ⁺(r): narrow morphisms never
    // connect objects with different codomains
    for m in plus_narrow_arrow.cat.morphism_ids() {
        let u = plus_objects[plus_narrow_arrow.cat.dom(m)];
        let u2 = plus_objects[plus_narrow_arrow.cat.cod(m)];
        if parent.cod(u) != parent.cod(u2) {
            return Err(Error::MalformedReedy(
                "narrow plus slice connects different codomains".into(),
            ));
        }
    }

    Ok(DegreeSlice {
        n,
        degree_n_objects,
        groupoid,
        discrete,
        truncation,
        truncation_objects,
        embedding,
        plus_wide: plus_wide_arrow.cat,
        plus_wide_objects: plus_wide_arrow.objects,
        plus_wide_squares: plus_wide_arrow.squares,
        plus_narrow: plus_narrow_arrow.cat,
        minus_wide: minus_wide_arrow.cat,
        minus_wide_objects: minus_wide_arrow.objects,
        minus_wide_squares: minus_wide_arrow.squares,
        minus_narrow: minus_narrow_arrow.cat,
        domain_plus,
        codomain_plus,
        codomain_narrow_plus,
        discrete_inclusion,
        groupoid_inclusion,
        plus_inclusion,
        codomain_minus,
        domain_minus,
        domain_narrow_minus,
        minus_inclusion,
    })
}

/// The structure on ℝ⁺(n) with everything in plus: degrees are domain
/// degrees and the only minus morphisms are the isomorphisms. Returns the
/// structure together with the domain functor to the parent, which is a
/// morphism of generalized Reedy categories.
pub fn plus_slice_structure(
    s: &GeneralizedReedyStructure,
    slice: &DegreeSlice,
) -> Result<(GeneralizedReedyStructure, FunctorData)> {
    let cat = slice.plus_narrow.clone();
    let parent = &s.category;
    let degree: Vec<u32> = slice
        .plus_wide_objects
        .iter()
        .map(|&u| s.deg(parent.dom(u)))
        .collect();
    let plus = WideSubcategory::all(&cat);
    let minus = WideSubcategory::isos(&cat);
    let structure = GeneralizedReedyStructure::new(cat.clone(), degree, plus, minus)?;
    // domain functor ℝ⁺(n) → ℝ: composite of the inclusion and d_n
    let phi = slice.domain_plus.after(&slice.plus_inclusion);
    Ok((structure, phi))
}

/// The structure on ℝ⁻(n) with everything in minus: degrees are codomain
/// degrees. Returns the structure with the codomain functor to the parent.
pub fn minus_slice_structure(
    s: &GeneralizedReedyStructure,
    slice: &DegreeSlice,
) -> Result<(GeneralizedReedyStructure, FunctorData)> {
    let cat = slice.minus_narrow.clone();
    let parent = &s.category;
    let degree: Vec<u32> = slice
        .minus_wide_objects
        .iter()
        .map(|&u| s.deg(parent.cod(u)))
        .collect();
    let plus = WideSubcategory::isos(&cat);
    let minus = WideSubcategory::all(&cat);
    let structure = GeneralizedReedyStructure::new(cat.clone(), degree, plus, minus)?;
    let phi = slice.codomain_minus.after(&slice.minus_inclusion);
    Ok((structure, phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn empty_slice_beyond_max_degree() {
        let (_, s) = generators::simplex_trunc(2);
        let slice = degree_slice(&s, 7).unwrap();
        assert!(slice.degree_n_objects.is_empty());
        assert_eq!(slice.groupoid.n_objects(), 0);
        assert_eq!(slice.plus_wide.n_objects(), 0);
        assert_eq!(slice.minus_wide.n_objects(), 0);
    }

    #[test]
    fn simplex_slice_at_degree_one() {
        let (cat, s) = generators::simplex_trunc(2);
        let _ = cat;
        let slice = degree_slice(&s, 1).unwrap();
        assert_eq!(slice.groupoid.n_objects(), 1);
        assert_eq!(slice.groupoid.n_morphisms(), 1);
        // ℝ⁺(1) = {δ0, δ1} into [1], discrete
        let narrow_objects = slice.plus_wide_objects.len();
        assert_eq!(narrow_objects, 2);
        assert_eq!(slice.plus_narrow.n_morphisms(), 2);
    }

    #[test]
    fn cyclic_slice_at_degree_one_has_order_two_automorphisms() {
        let (_, s) = generators::cyclic_trunc(2);
        let slice = degree_slice(&s, 1).unwrap();
        assert_eq!(slice.groupoid.n_objects(), 1);
        assert_eq!(slice.groupoid.n_morphisms(), 2);
    }

    #[test]
    fn slice_structures_pass_validation() {
        let (_, s) = generators::simplex_trunc(2);
        for n in 0..=2 {
            let slice = degree_slice(&s, n).unwrap();
            let (plus_struct, phi) = plus_slice_structure(&s, &slice).unwrap();
            assert!(plus_struct.validate_reedy(false).passes());
            phi.validate().unwrap();
            let (minus_struct, psi) = minus_slice_structure(&s, &slice).unwrap();
            assert!(minus_struct.validate_reedy(false).passes());
            psi.validate().unwrap();
        }
    }
}
