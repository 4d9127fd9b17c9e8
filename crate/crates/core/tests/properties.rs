//! Property tests: algebraic laws checked on randomly generated instances
//! against independent oracles.

use proptest::prelude::*;
use reedykit::diagram::{
    colimit, diagram_image, limit, naive_colimit_components, naive_limit_families,
    verify_colimit_universal, SetDiagram,
};
use reedykit::generators::{self, cyclic_action, cyclic_perms, monotone_maps};
use reedykit::group::all_permutations;
use reedykit::rng::SplitMix64;
use reedykit::suite::random_diagram;

fn monotone_strategy(max_n: usize) -> impl Strategy<Value = (usize, usize, Vec<usize>)> {
    (0..=max_n, 0..=max_n).prop_flat_map(move |(m, n)| {
        let maps = monotone_maps(m, n);
        (0..maps.len()).prop_map(move |i| (m, n, maps[i].clone()))
    })
}

proptest! {
    /// g∘α = g_*(α)∘α*(g) with g_*(α) monotone and α*(g) order-preserving on
    /// the fibers, for arbitrary permutations (the crossed Σ-structure).
    #[test]
    fn cyclic_action_factorization((m, n, alpha) in monotone_strategy(4), seed in any::<u64>()) {
        let perms = all_permutations(n + 1);
        let g = perms[(seed as usize) % perms.len()].clone();
        let (sigma, beta) = cyclic_action(&alpha, &g);
        // β monotone
        prop_assert!(beta.windows(2).all(|w| w[0] <= w[1]));
        // g∘α = β∘σ
        for i in 0..=m {
            prop_assert_eq!(g[alpha[i]], beta[sigma[i]]);
        }
        // σ order-preserving on the fibers of α
        for i in 0..=m {
            for j in (i + 1)..=m {
                if alpha[i] == alpha[j] {
                    prop_assert!(sigma[i] < sigma[j]);
                }
            }
        }
        // uniqueness: any other permutation with both properties equals σ
        for tau in all_permutations(m + 1) {
            let factors = (0..=m).all(|i| beta[tau[i]] == g[alpha[i]]);
            let ordered = (0..=m).all(|i| {
                ((i + 1)..=m).all(|j| alpha[i] != alpha[j] || tau[i] < tau[j])
            });
            if factors && ordered {
                prop_assert_eq!(&tau, &sigma);
            }
        }
    }

    /// The composite crossed-group identity (αβ)*(g) = β*(α*(g)) holds for
    /// the full symmetric crossed structure on simplex truncations.
    #[test]
    fn cyclic_action_presheaf_identity(
        (m, n, beta) in monotone_strategy(3),
        k in 0usize..4,
        seed in any::<u64>(),
    ) {
        let n2 = n + k;
        let alphas = monotone_maps(n, n2);
        let alpha = alphas[(seed as usize) % alphas.len()].clone();
        let perms = all_permutations(n2 + 1);
        let g = perms[(seed as usize / 7) % perms.len()].clone();
        let composite: Vec<usize> = beta.iter().map(|&i| alpha[i]).collect();
        let (sigma_ab, _) = cyclic_action(&composite, &g);
        let (sigma_a, _) = cyclic_action(&alpha, &g);
        let (sigma_b, _) = cyclic_action(&beta, &sigma_a);
        prop_assert_eq!(sigma_ab, sigma_b);
        let _ = m;
    }

    /// Cyclic subgroups are closed under restriction.
    #[test]
    fn cyclic_restriction_closure((m, n, alpha) in monotone_strategy(4), k in 0usize..5) {
        let perms = cyclic_perms(n);
        let g = perms[k % perms.len()].clone();
        let (sigma, _) = cyclic_action(&alpha, &g);
        prop_assert!(cyclic_perms(m).contains(&sigma));
    }

    /// Colimits agree with the zig-zag component oracle and satisfy the
    /// universal property; limits agree with the full-product filter oracle.
    #[test]
    fn colimit_and_limit_oracles(seed in any::<u64>()) {
        let (cat, _) = generators::simplex_trunc(2);
        let op = std::sync::Arc::new(cat.opposite());
        let objects: Vec<usize> = op.object_ids().collect();
        let x = random_diagram(&mut SplitMix64::new(seed), &op, &objects);
        let c = colimit(&x);
        let oracle = naive_colimit_components(&x);
        prop_assert_eq!(c.apex_size, oracle.apex_size);
        prop_assert!(verify_colimit_universal(&x, &c));
        let l = limit(&x);
        let mut families = l.families.clone();
        families.sort();
        prop_assert_eq!(naive_limit_families(&x), families);
    }

    /// Image factorization: every diagram map factors as an epi onto its
    /// image followed by a mono, recomposing to the original.
    #[test]
    fn image_factorization(seed in any::<u64>()) {
        let (cat, _) = generators::simplex_trunc(2);
        let op = std::sync::Arc::new(cat.opposite());
        let objects: Vec<usize> = op.object_ids().collect();
        let mut rng = SplitMix64::new(seed);
        let x = random_diagram(&mut rng, &op, &objects);
        let (q, proj) = reedykit::diagram::equalize_quotient(
            &x,
            &[(0, 0, 0)], // trivial gluing keeps proj onto
        );
        let img = diagram_image(&proj);
        prop_assert!(img.onto.is_epi());
        prop_assert!(img.include.is_mono());
        prop_assert_eq!(img.include.after(&img.onto).components, proj.components);
        let _ = q;
    }

    /// Monotone-map classification oracle: in a simplex truncation, monos
    /// are the strictly increasing tuples and epis the surjective ones.
    #[test]
    fn simplex_classification_oracle((m, n, values) in monotone_strategy(3)) {
        let (cat, s) = generators::simplex_trunc(3);
        let f = generators::simplex_mor(&cat, &values, n).unwrap();
        let class = cat.classify(f);
        let strictly_increasing = values.windows(2).all(|w| w[0] < w[1]);
        let surjective = (0..=n).all(|v| values.contains(&v));
        prop_assert_eq!(class.mono, strictly_increasing);
        prop_assert_eq!(class.epi, surjective);
        prop_assert_eq!(class.split_epi, surjective);
        prop_assert_eq!(s.plus.contains(f), strictly_increasing);
        prop_assert_eq!(s.minus.contains(f), surjective);
        let _ = m;
    }

    /// Degeneracy actions of presheaves are injective (split epis have
    /// retractions), on random presheaves over the cyclic truncation.
    #[test]
    fn degeneracy_actions_injective(seed in any::<u64>()) {
        let (cat, s) = generators::cyclic_trunc(2);
        let ez = reedykit::ez::EzStructure::new(cat, s.degree.clone()).unwrap();
        let shape = ez.op_shape().clone();
        let objects: Vec<usize> = shape.object_ids().collect();
        let x = random_diagram(&mut SplitMix64::new(seed), &shape, &objects);
        for rho in ez.cat.morphism_ids() {
            if !ez.split_epi[rho] {
                continue;
            }
            let dom = ez.cat.cod(rho);
            let mut seen = std::collections::BTreeSet::new();
            for yv in 0..x.size(dom) {
                prop_assert!(seen.insert(x.apply(rho, yv)));
            }
        }
    }
}

#[test]
fn opposite_is_involutive_on_corpus() {
    for item in generators::corpus() {
        let cat = &item.structure.category;
        let op = cat.opposite();
        assert!(op.opposite().same_shape(cat), "{}", item.name);
        // opposite swaps the mono/epi flags
        let f = cat.morphism_ids().next().unwrap();
        let c = cat.classify(f);
        let c_op = op.classify(f);
        assert_eq!(c.mono, c_op.epi);
        assert_eq!(c.split_mono, c_op.split_epi);
    }
}

#[test]
fn group_action_colimit_counts() {
    // Z/2 acting on {0,1} by swap: one orbit, no fixed points
    let (z2cat, _) = generators::group_category(&reedykit::group::Group::cyclic(2), 1);
    let x = SetDiagram::new(z2cat, &[2], vec![vec![0, 1], vec![1, 0]]).unwrap();
    assert_eq!(colimit(&x).apex_size, 1);
    assert_eq!(limit(&x).apex_size, 0);
}

#[test]
fn pushout_and_pullback_require_matching_legs() {
    use reedykit::diagram::{diagram_pullback, diagram_pushout, DiagramMap};
    let (cat, _) = generators::simplex_trunc(1);
    let op = std::sync::Arc::new(cat.opposite());
    let a = SetDiagram::corepresentable(&op, 0);
    let b = SetDiagram::corepresentable(&op, 1);
    let ida = DiagramMap::identity(&a);
    let idb = DiagramMap::identity(&b);
    assert!(diagram_pushout(&ida, &idb).is_err(), "span must share its source");
    assert!(diagram_pullback(&ida, &idb).is_err(), "cospan must share its target");
}
