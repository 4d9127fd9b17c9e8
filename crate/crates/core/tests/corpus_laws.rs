//! Corpus-wide law checks: classification implications, factorization
//! witnesses, truncation unit/counit isomorphisms, special automorphisms of
//! total categories, and the boundary/skeleton identification.

use reedykit::diagram::{lan, ran, SetDiagram};
use reedykit::ez::{boundary, degree_subobject, EzStructure};
use reedykit::generators;
use reedykit::reedy::truncation_functor;

fn small_corpus() -> Vec<(String, reedykit::reedy::GeneralizedReedyStructure)> {
    generators::corpus()
        .into_iter()
        .filter(|item| item.structure.category.n_morphisms() <= 200)
        .map(|item| (item.name, item.structure))
        .collect()
}

#[test]
fn classification_implications_hold_corpus_wide() {
    for (name, s) in small_corpus() {
        let cat = &s.category;
        let op = cat.opposite();
        for f in cat.morphism_ids() {
            let c = cat.classify(f);
            assert!(!c.split_epi || c.epi, "{name}: split epi must be epi");
            assert!(!c.split_mono || c.mono, "{name}: split mono must be mono");
            assert_eq!(c.iso, c.split_epi && c.mono, "{name}");
            assert_eq!(c.iso, c.split_mono && c.epi, "{name}");
            let c_op = op.classify(f);
            assert_eq!(c.mono, c_op.epi, "{name}");
            assert_eq!(c.epi, c_op.mono, "{name}");
            assert_eq!(c.split_mono, c_op.split_epi, "{name}");
            assert_eq!(c.split_epi, c_op.split_mono, "{name}");
        }
    }
}

#[test]
fn factorizations_exist_and_are_essentially_unique_corpus_wide() {
    for (name, s) in small_corpus() {
        for f in s.category.morphism_ids() {
            let w = s.factorize(f);
            assert!(
                !w.factorizations.is_empty(),
                "{name}: {} has no factorization",
                s.category.mor_name(f)
            );
            assert!(
                w.essentially_unique(),
                "{name}: {} factorizations not linked by unique isos",
                s.category.mor_name(f)
            );
        }
    }
}

#[test]
fn truncation_units_and_counits_are_isos() {
    // for a full embedding, the unit X → t*lan(t,X) and the counit
    // t*ran(t,X) → X are isomorphisms
    for (name, s) in small_corpus() {
        if !matches!(name.as_str(), "simplex3" | "cyclic2" | "gamma2" | "cog_edge_z2") {
            continue;
        }
        let shape = s.category.clone();
        for n in 0..=s.max_degree() {
            let t = truncation_functor(&s, n as i64);
            for r in t.source.object_ids().take(2) {
                let x = SetDiagram::corepresentable(&t.source, r);
                let l = lan(&t, &x);
                let back = l.diagram.restrict(&t);
                for d in t.source.object_ids() {
                    assert_eq!(back.size(d), x.size(d), "{name} lan unit at degree {n}");
                }
                let rr = ran(&t, &x);
                let back = rr.diagram.restrict(&t);
                for d in t.source.object_ids() {
                    assert_eq!(back.size(d), x.size(d), "{name} ran counit at degree {n}");
                }
            }
        }
        let _ = shape;
    }
}

#[test]
fn total_category_automorphisms_are_special() {
    // over a strict base every automorphism of the total category is a pair
    // (identity, group element)
    let total = generators::cyclic_total(2);
    let cat = &total.cat;
    for o in cat.object_ids() {
        let autos: Vec<usize> = cat
            .hom(o, o)
            .iter()
            .copied()
            .filter(|&f| cat.is_iso(f))
            .collect();
        assert_eq!(autos.len(), total.special[o].len());
        for f in autos {
            let (alpha, _) = total.pairs[f];
            assert!(
                total.embedding.source.is_identity(alpha),
                "automorphism {} has a non-identity base component",
                cat.mor_name(f)
            );
            assert!(
                total.special[o].contains(&f),
                "automorphism {} is not special",
                cat.mor_name(f)
            );
        }
    }
}

#[test]
fn boundary_equals_skeleton_subobject() {
    for (name, (cat, s)) in [
        ("simplex2", generators::simplex_trunc(2)),
        ("cyclic2", generators::cyclic_trunc(2)),
        ("gamma2", generators::gamma_trunc(2)),
        ("fin2", generators::fin_trunc(2)),
    ] {
        let ez = EzStructure::new(cat, s.degree.clone()).unwrap();
        for r in ez.cat.object_ids() {
            let (bd, bd_incl) = boundary(&ez, r);
            let rep = ez.representable(r);
            let (sk, sk_incl) = degree_subobject(&ez, &rep, ez.deg(r) as i64 - 1);
            for a in ez.cat.object_ids() {
                assert_eq!(
                    bd_incl.components[a], sk_incl.components[a],
                    "{name}: boundary of {r} differs from the skeleton subobject at {a}"
                );
            }
            let _ = (bd, sk);
        }
    }
}
