//! Cross-module Kan-extension checks: adjunction triangle identities, the
//! canned projection-formula squares, and the comma-versus-fiber agreement
//! on degree slices.

use reedykit::diagram::{
    lan, lan_counit, lan_on_map, projection_formula_check, ran, ran_on_map, ran_unit,
    DiagramMap, SetDiagram, Variance,
};
use reedykit::fincat::FunctorData;
use reedykit::generators;
use reedykit::reedy::degree_slice;
use reedykit::rng::SplitMix64;
use reedykit::suite::random_diagram;

/// The triangle identity for lan ⊣ restriction: the composite
/// lan(X) → lan(restrict(lan(X))) → lan(X) of lan(unit) and the counit is
/// the identity, elementwise.
#[test]
fn lan_triangle_identity() {
    let (d1, _) = generators::simplex_trunc(1);
    let (d2, _) = generators::simplex_trunc(2);
    let t1 = generators::truncation_embedding(&d1, &d2);
    for r in d1.object_ids() {
        let x = SetDiagram::corepresentable(&d1, r);
        let lx = lan(&t1, &x);
        // unit: X → restrict(lan X)
        let restricted = lx.diagram.restrict(&t1);
        let unit = DiagramMap {
            source: x.clone(),
            target: restricted.clone(),
            components: d1
                .object_ids()
                .map(|d| {
                    let c = t1.on_obj(d);
                    (0..x.size(d))
                        .map(|xv| lx.class_of(c, d, d2.id(c), xv))
                        .collect()
                })
                .collect(),
        };
        unit.validate().unwrap();
        let l_restricted = lan(&t1, &restricted);
        let lan_unit = lan_on_map(&t1, &unit, &lx, &l_restricted);
        let counit = lan_counit(&t1, &lx.diagram, &l_restricted);
        let composite = counit.after(&lan_unit);
        let identity = DiagramMap::identity(&lx.diagram);
        assert_eq!(composite.components, identity.components);
    }
}

/// The dual triangle for restriction ⊣ ran.
#[test]
fn ran_triangle_identity() {
    let (d1, _) = generators::simplex_trunc(1);
    let (d2, _) = generators::simplex_trunc(2);
    let t1 = generators::truncation_embedding(&d1, &d2);
    for r in d1.object_ids() {
        let x = SetDiagram::corepresentable(&d1, r);
        let rx = ran(&t1, &x);
        let restricted = rx.diagram.restrict(&t1);
        // counit: restrict(ran X) → X, reading off the identity component
        let counit = DiagramMap {
            source: restricted.clone(),
            target: x.clone(),
            components: d1
                .object_ids()
                .map(|d| {
                    let c = t1.on_obj(d);
                    (0..restricted.size(d))
                        .map(|k| rx.component(c, k, d, d2.id(c)))
                        .collect()
                })
                .collect(),
        };
        counit.validate().unwrap();
        let r_restricted = ran(&t1, &restricted);
        let ran_counit = ran_on_map(&t1, &counit, &r_restricted, &rx);
        let unit = ran_unit(&t1, &rx.diagram, &r_restricted);
        let composite = ran_counit.after(&unit);
        let identity = DiagramMap::identity(&rx.diagram);
        assert_eq!(composite.components, identity.components);
    }
}

/// Identity square: the projection formula witness is the identity.
#[test]
fn projection_formula_identity_square() {
    let (d1, _) = generators::simplex_trunc(1);
    let id = FunctorData::identity(&d1);
    let x = SetDiagram::corepresentable(&d1, 1);
    let w = projection_formula_check(&id, &id, &id, &id, &x, Variance::Cofibered).unwrap();
    assert!(w.is_iso());
    let w = projection_formula_check(&id, &id, &id, &id, &x, Variance::Fibered).unwrap();
    assert!(w.is_iso());
}

/// The canned degree-slice square: the codomain functor off the plus slice
/// of the simplex truncation at degree 1 is cofibered, its narrow square is
/// a pullback, and the projection formula holds for a random diagram.
#[test]
fn projection_formula_on_slice_square() {
    let (_, s) = generators::simplex_trunc(2);
    let slice = degree_slice(&s, 1).unwrap();
    let shape = s.category.clone();
    let objects: Vec<usize> = shape.object_ids().collect();
    let x = random_diagram(&mut SplitMix64::new(5), &shape, &objects);
    let restricted = x.restrict(&slice.domain_plus);
    let w = projection_formula_check(
        &slice.plus_inclusion,
        &slice.codomain_narrow_plus,
        &slice.discrete_inclusion,
        &slice.codomain_plus,
        &restricted,
        Variance::Cofibered,
    )
    .unwrap();
    assert!(w.is_iso());
    let restricted = x.restrict(&slice.codomain_minus);
    let w = projection_formula_check(
        &slice.minus_inclusion,
        &slice.domain_narrow_minus,
        &slice.discrete_inclusion,
        &slice.domain_minus,
        &restricted,
        Variance::Fibered,
    )
    .unwrap();
    assert!(w.is_iso());
}

/// Product projections are cofibered with constant fibers; the projection
/// formula holds along an object inclusion into the base.
#[test]
fn projection_formula_product_projection() {
    let (_, s1) = generators::simplex_trunc(1);
    let (_, sg) = generators::group_category(&reedykit::group::Group::cyclic(2), 1);
    let (prod, proj_a, _) = generators::product_structure(&s1, &sg);
    // α: the one-object inclusion of [0] into Δ≤1; ψ the projection of the
    // fiber over it
    let point = std::sync::Arc::new(generators::discrete_category(1));
    let alpha = FunctorData::new(
        point.clone(),
        s1.category.clone(),
        vec![0],
        vec![s1.category.id(0)],
    )
    .unwrap();
    // D' = the fiber over [0]: the full subcategory of the product on
    // objects mapping to [0]
    let fiber_objects: Vec<usize> = prod
        .category
        .object_ids()
        .filter(|&o| proj_a.on_obj(o) == 0)
        .collect();
    let mut mor_map = Vec::new();
    let mut fiber_mors = Vec::new();
    for m in prod.category.morphism_ids() {
        if fiber_objects.contains(&prod.category.dom(m))
            && fiber_objects.contains(&prod.category.cod(m))
            && s1.category.is_identity(proj_a.on_mor(m))
        {
            fiber_mors.push(m);
        }
    }
    let mut morphisms = Vec::new();
    let mut identity = vec![usize::MAX; fiber_objects.len()];
    for (k, &m) in fiber_mors.iter().enumerate() {
        let dom = fiber_objects
            .iter()
            .position(|&o| o == prod.category.dom(m))
            .unwrap();
        let cod = fiber_objects
            .iter()
            .position(|&o| o == prod.category.cod(m))
            .unwrap();
        morphisms.push(reedykit::fincat::MorData {
            name: prod.category.mor_name(m).to_string(),
            dom,
            cod,
        });
        if prod.category.is_identity(m) {
            identity[dom] = k;
        }
        mor_map.push(m);
    }
    let mm = mor_map.clone();
    let pc = prod.category.clone();
    let fiber_cat = std::sync::Arc::new(reedykit::fincat::FinCategory::from_compose_fn(
        fiber_objects
            .iter()
            .map(|&o| prod.category.object_names[o].clone())
            .collect(),
        morphisms,
        identity,
        |g, f| {
            let w = pc.compose(mm[g], mm[f]).unwrap();
            mm.iter().position(|&k| k == w).unwrap()
        },
    ));
    let beta = FunctorData::new(
        fiber_cat.clone(),
        prod.category.clone(),
        fiber_objects.clone(),
        mor_map,
    )
    .unwrap();
    let psi = FunctorData::new(
        fiber_cat.clone(),
        point,
        vec![0; fiber_cat.n_objects()],
        vec![0; fiber_cat.n_morphisms()],
    )
    .unwrap();
    let shape = prod.category.clone();
    let objects: Vec<usize> = shape.object_ids().collect();
    let x = random_diagram(&mut SplitMix64::new(11), &shape, &objects);
    let w = projection_formula_check(&beta, &psi, &alpha, &proj_a, &x, Variance::Cofibered)
        .unwrap();
    assert!(w.is_iso());
    let w = projection_formula_check(&beta, &psi, &alpha, &proj_a, &x, Variance::Fibered)
        .unwrap();
    assert!(w.is_iso());
}
