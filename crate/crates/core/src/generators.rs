//! Canned constructions of the example categories with their generalized
//! Reedy structures: truncated simplex, cyclic, symmetric-simplicial,
//! finite sets and pointed finite sets, orbit categories, complexes of
//! groups, groupoids, and product/coproduct closures.

use crate::crossed::{compatibility_and_induced, total_category, CrossedGroup, TotalCategory};
use crate::error::{Error, Result};
use crate::fincat::{
    grothendieck, Cat, FinCategory, FunctorData, GrothendieckData, MorData, MorId,
    WideSubcategory,
};
use crate::group::{all_permutations, Group};
use crate::reedy::GeneralizedReedyStructure;
use std::collections::BTreeMap;
use std::sync::Arc;

// ---------------------------------------------------------------------------
// simplex category
// ---------------------------------------------------------------------------

/// All monotone maps `[m] → [n]` as value tuples, in lexicographic order.
pub fn monotone_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn rec(cur: &mut Vec<usize>, m: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        for v in lo..=n {
            cur.push(v);
            rec(cur, m, n, out);
            cur.pop();
        }
    }
    rec(&mut cur, m, n, &mut out);
    out
}

fn monotone_name(values: &[usize], dom: usize, cod: usize) -> String {
    let m = dom;
    let n = cod;
    if m == n && values.iter().enumerate().all(|(i, &v)| v == i) {
        return format!("id{n}");
    }
    // coface d{i}: [n-1] → [n] skips i
    if m + 1 == n {
        for i in 0..=n {
            let mut skipped: Vec<usize> = (0..=n).collect();
            skipped.remove(i);
            if skipped == values {
                return format!("d{i}:{m}->{n}");
            }
        }
    }
    // codegeneracy s{i}: [n+1] → [n] repeats i
    if m == n + 1 {
        for i in 0..=n {
            let mut repeated: Vec<usize> = (0..=i).collect();
            repeated.extend(i..=n);
            if repeated == values {
                return format!("s{i}:{m}->{n}");
            }
        }
    }
    let body: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("({}):{m}->{n}", body.join(","))
}

/// The truncated simplex category Δ≤N with its strict Reedy structure:
/// plus = monomorphisms, minus = (split) epimorphisms, degree n at `[n]`.
pub fn simplex_trunc(n_max: usize) -> (Cat, GeneralizedReedyStructure) {
    let mut morphisms = Vec::new();
    let mut tuples: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let mut identity = vec![usize::MAX; n_max + 1];
    for m in 0..=n_max {
        for n in 0..=n_max {
            for t in monotone_maps(m, n) {
                let k = morphisms.len();
                morphisms.push(MorData {
                    name: monotone_name(&t, m, n),
                    dom: m,
                    cod: n,
                });
                if m == n && t.iter().enumerate().all(|(i, &v)| v == i) {
                    identity[m] = k;
                }
                tuples.push((m, n, t));
            }
        }
    }
    let index: BTreeMap<(usize, usize, Vec<usize>), MorId> = tuples
        .iter()
        .enumerate()
        .map(|(k, t)| (t.clone(), k))
        .collect();
    let tuples2 = tuples.clone();
    let cat = Arc::new(FinCategory::from_compose_fn(
        (0..=n_max).map(|n| format!("[{n}]")).collect(),
        morphisms,
        identity,
        |g, f| {
            let (fm, _, fv) = &tuples2[f];
            let (_, gn, gv) = &tuples2[g];
            let composed: Vec<usize> = fv.iter().map(|&i| gv[i]).collect();
            index[&(*fm, *gn, composed)]
        },
    ));
    let plus = WideSubcategory::from_predicate(&cat, |k| {
        let (_, _, v) = &tuples[k];
        v.windows(2).all(|w| w[0] < w[1])
    });
    let minus = WideSubcategory::from_predicate(&cat, |k| {
        let (_, n, v) = &tuples[k];
        (0..=*n).all(|t| v.contains(&t))
    });
    let degree = (0..=n_max as u32).collect();
    let s = GeneralizedReedyStructure::new(cat.clone(), degree, plus, minus).unwrap();
    (cat, s)
}

/// Looks up a morphism of a simplex truncation by its value tuple and
/// codomain.
pub fn simplex_mor(cat: &FinCategory, values: &[usize], cod: usize) -> Option<MorId> {
    let name = monotone_name(values, values.len() - 1, cod);
    cat.morphism_ids().find(|&m| cat.mor_name(m) == name)
}

/// The value tuple of a simplex-truncation morphism, recovered from its id.
pub fn simplex_values(cat: &FinCategory, m: MorId, n_max: usize) -> Vec<usize> {
    // morphisms were enumerated in a fixed order; rebuild that order
    let mut k = 0;
    for dm in 0..=n_max {
        for cn in 0..=n_max {
            for t in monotone_maps(dm, cn) {
                if k == m {
                    debug_assert_eq!((cat.dom(m), cat.cod(m)), (dm, cn));
                    return t;
                }
                k += 1;
            }
        }
    }
    panic!("morphism id out of range");
}

/// The full embedding of one simplex truncation into a larger one, matching
/// morphisms by name.
pub fn truncation_embedding(small: &Cat, big: &Cat) -> FunctorData {
    let mor_map = small
        .morphism_ids()
        .map(|m| {
            big.morphism_ids()
                .find(|&k| big.mor_name(k) == small.mor_name(m))
                .expect("embedding matches names")
        })
        .collect();
    FunctorData {
        source: small.clone(),
        target: big.clone(),
        obj_map: small.object_ids().collect(),
        mor_map,
    }
}

// ---------------------------------------------------------------------------
// crossed groups on the simplex category
// ---------------------------------------------------------------------------

/// Given a monotone `α: [m] → [n]` and a permutation g of 0..=n, returns the
/// pair (α*(g), g_*(α)): the unique permutation of {0..m} that is
/// order-preserving on the fibers of α, and the monotone rearrangement, with
/// g∘α = g_*(α)∘α*(g).
pub fn cyclic_action(alpha: &[usize], g: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = alpha.len();
    let g_alpha: Vec<usize> = alpha.iter().map(|&i| g[i]).collect();
    let mut beta = g_alpha.clone();
    beta.sort_unstable();
    let mut sigma = vec![usize::MAX; m];
    // β-fiber cursor: next free position per value
    let mut cursor: BTreeMap<usize, usize> = BTreeMap::new();
    for (p, &v) in beta.iter().enumerate() {
        cursor.entry(v).or_insert(p);
    }
    for i in 0..m {
        let v = g_alpha[i];
        let p = cursor.get_mut(&v).expect("value present");
        sigma[i] = *p;
        *p += 1;
    }
    debug_assert!({
        // g∘α = β∘σ and σ order-preserving on the fibers of α
        (0..m).all(|i| beta[sigma[i]] == g_alpha[i])
            && (0..m).all(|i| {
                (i + 1..m).all(|j| alpha[i] != alpha[j] || sigma[i] < sigma[j])
            })
    });
    (sigma, beta)
}

/// Which permutation group to put at each object of Δ≤N.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplicialCrossedKind {
    Cyclic,
    Symmetric,
}

/// The cyclic subgroup `C_[n] ⊂ Σ_[n]` generated by i ↦ i+1 (mod n+1), as
/// explicit permutations: element k is the k-th power of the cycle.
pub fn cyclic_perms(n: usize) -> Vec<Vec<usize>> {
    (0..=n)
        .map(|k| (0..=n).map(|i| (i + k) % (n + 1)).collect())
        .collect()
}

/// Builds the crossed group C (or Σ) on Δ≤N, computing restrictions and
/// hom-set actions from `cyclic_action`.
pub fn simplicial_crossed_group(n_max: usize, kind: SimplicialCrossedKind) -> CrossedGroup {
    let (cat, _) = simplex_trunc(n_max);
    let perms: Vec<Vec<Vec<usize>>> = (0..=n_max)
        .map(|n| match kind {
            SimplicialCrossedKind::Cyclic => cyclic_perms(n),
            SimplicialCrossedKind::Symmetric => all_permutations(n + 1),
        })
        .collect();
    let groups: Vec<Group> = (0..=n_max)
        .map(|n| match kind {
            SimplicialCrossedKind::Cyclic => Group::cyclic(n + 1),
            SimplicialCrossedKind::Symmetric => Group::symmetric(n + 1),
        })
        .collect();
    let perm_index = |n: usize, p: &[usize]| -> usize {
        perms[n]
            .iter()
            .position(|q| q.as_slice() == p)
            .expect("permutation stays in the chosen subgroup")
    };
    let mut restriction = Vec::new();
    let mut action = Vec::new();
    for mor in cat.morphism_ids() {
        let (m, n) = (cat.dom(mor), cat.cod(mor));
        let alpha = simplex_values(&cat, mor, n_max);
        let mut res_row = Vec::new();
        let mut act_row = Vec::new();
        for gp in &perms[n] {
            let (sigma, beta) = cyclic_action(&alpha, gp);
            res_row.push(perm_index(m, &sigma));
            act_row.push(simplex_mor(&cat, &beta, n).expect("monotone image exists"));
        }
        restriction.push(res_row);
        action.push(act_row);
    }
    CrossedGroup {
        base: cat,
        groups,
        restriction,
        action,
    }
}

fn simplicial_total(
    n_max: usize,
    kind: SimplicialCrossedKind,
) -> (Cat, GeneralizedReedyStructure, CrossedGroup, TotalCategory) {
    let crossed = simplicial_crossed_group(n_max, kind);
    let (_, base_structure) = simplex_trunc(n_max);
    let total = total_category(&crossed).expect("crossed identities hold");
    let induced = compatibility_and_induced(&crossed, &base_structure, &total)
        .expect("compatible with the strict structure");
    (total.cat.clone(), induced, crossed, total)
}

/// The truncated cyclic category Λ≤N = total category of C on Δ≤N, with the
/// induced dualizable generalized Reedy structure.
pub fn cyclic_trunc(n_max: usize) -> (Cat, GeneralizedReedyStructure) {
    let (cat, s, _, _) = simplicial_total(n_max, SimplicialCrossedKind::Cyclic);
    (cat, s)
}

pub fn cyclic_trunc_with_crossed(n_max: usize) -> (Cat, GeneralizedReedyStructure, CrossedGroup) {
    let (cat, s, crossed, _) = simplicial_total(n_max, SimplicialCrossedKind::Cyclic);
    (cat, s, crossed)
}

pub fn cyclic_total(n_max: usize) -> TotalCategory {
    simplicial_total(n_max, SimplicialCrossedKind::Cyclic).3
}

/// The truncated symmetric-crossed total category ΔΣ≤N.
pub fn sym_trunc(n_max: usize) -> (Cat, GeneralizedReedyStructure) {
    let (cat, s, _, _) = simplicial_total(n_max, SimplicialCrossedKind::Symmetric);
    (cat, s)
}

// ---------------------------------------------------------------------------
// finite sets, pointed finite sets
// ---------------------------------------------------------------------------

fn all_functions(dom_size: usize, cod_size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; dom_size];
    if dom_size == 0 {
        return vec![Vec::new()];
    }
    loop {
        out.push(cur.clone());
        let mut i = dom_size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < cod_size {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// The skeleton of finite nonempty sets on cardinalities <= N+1: object k is
/// the set {0..k}, of degree k; plus = injections, minus = surjections.
pub fn fin_trunc(n_max: usize) -> (Cat, GeneralizedReedyStructure) {
    let mut morphisms = Vec::new();
    let mut tables: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let mut identity = vec![usize::MAX; n_max + 1];
    for m in 0..=n_max {
        for n in 0..=n_max {
            for t in all_functions(m + 1, n + 1) {
                let k = morphisms.len();
                let body: Vec<String> = t.iter().map(|v| v.to_string()).collect();
                morphisms.push(MorData {
                    name: format!("f[{}]:{m}->{n}", body.join(",")),
                    dom: m,
                    cod: n,
                });
                if m == n && t.iter().enumerate().all(|(i, &v)| v == i) {
                    identity[m] = k;
                }
                tables.push((m, n, t));
            }
        }
    }
    let index: BTreeMap<(usize, usize, Vec<usize>), MorId> = tables
        .iter()
        .enumerate()
        .map(|(k, t)| (t.clone(), k))
        .collect();
    let tables2 = tables.clone();
    let cat = Arc::new(FinCategory::from_compose_fn(
        (0..=n_max).map(|n| format!("{{0..{n}}}")).collect(),
        morphisms,
        identity,
        |g, f| {
            let (fm, _, fv) = &tables2[f];
            let (_, gn, gv) = &tables2[g];
            let composed: Vec<usize> = fv.iter().map(|&i| gv[i]).collect();
            index[&(*fm, *gn, composed)]
        },
    ));
    let plus = WideSubcategory::from_predicate(&cat, |k| {
        let (_, _, v) = &tables[k];
        let mut seen = vec![false; v.len() + 8];
        v.iter().all(|&x| {
            if seen[x] {
                false
            } else {
                seen[x] = true;
                true
            }
        })
    });
    let minus = WideSubcategory::from_predicate(&cat, |k| {
        let (_, n, v) = &tables[k];
        (0..=*n).all(|t| v.contains(&t))
    });
    let degree = (0..=n_max as u32).collect();
    let s = GeneralizedReedyStructure::new(cat.clone(), degree, plus, minus).unwrap();
    (cat, s)
}

/// The skeleton of finite pointed sets on objects k₊ (k non-base elements),
/// k <= N; degree of k₊ is k; plus = monomorphisms, minus = epimorphisms.
/// A morphism j₊ → k₊ is the tuple of images of the non-base points, with 0
/// denoting the basepoint.
pub fn gamma_trunc(n_max: usize) -> (Cat, GeneralizedReedyStructure) {
    let mut morphisms = Vec::new();
    let mut tables: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let mut identity = vec![usize::MAX; n_max + 1];
    for j in 0..=n_max {
        for k in 0..=n_max {
            for t in all_functions(j, k + 1) {
                let id = morphisms.len();
                let body: Vec<String> = t.iter().map(|v| v.to_string()).collect();
                morphisms.push(MorData {
                    name: format!("p[{}]:{j}->{k}", body.join(",")),
                    dom: j,
                    cod: k,
                });
                if j == k && t.iter().enumerate().all(|(i, &v)| v == i + 1) {
                    identity[j] = id;
                }
                tables.push((j, k, t));
            }
        }
    }
    let index: BTreeMap<(usize, usize, Vec<usize>), MorId> = tables
        .iter()
        .enumerate()
        .map(|(k, t)| (t.clone(), k))
        .collect();
    let tables2 = tables.clone();
    let cat = Arc::new(FinCategory::from_compose_fn(
        (0..=n_max).map(|k| format!("{k}+")).collect(),
        morphisms,
        identity,
        |g, f| {
            let (fj, _, fv) = &tables2[f];
            let (_, gk, gv) = &tables2[g];
            // basepoint (0) is absorbing
            let composed: Vec<usize> = fv
                .iter()
                .map(|&x| if x == 0 { 0 } else { gv[x - 1] })
                .collect();
            index[&(*fj, *gk, composed)]
        },
    ));
    let plus = WideSubcategory::from_predicate(&cat, |k| {
        let (_, _, v) = &tables[k];
        // pointed mono: non-base images distinct and never the basepoint
        let mut seen = vec![false; v.len() + 8];
        v.iter().all(|&x| {
            if x == 0 || seen[x] {
                false
            } else {
                seen[x] = true;
                true
            }
        })
    });
    let minus = WideSubcategory::from_predicate(&cat, |k| {
        let (_, n, v) = &tables[k];
        (1..=*n).all(|t| v.contains(&t))
    });
    let degree = (0..=n_max as u32).collect();
    let s = GeneralizedReedyStructure::new(cat.clone(), degree, plus, minus).unwrap();
    (cat, s)
}

/// The simplicial-circle functor Δ≤N → Γ≤N (the opposite of the pointed-sets
/// truncation): `[n] ↦ n₊`, a monotone α acting by the circle presheaf.
pub fn circle_functor(n_max: usize) -> (FunctorData, GeneralizedReedyStructure, GeneralizedReedyStructure) {
    let (delta, delta_s) = simplex_trunc(n_max);
    let (gamma, gamma_s) = gamma_trunc(n_max);
    let gamma_op_s = gamma_s.opposite();
    let gamma_op = gamma_op_s.category.clone();
    let mor_map = delta
        .morphism_ids()
        .map(|mor| {
            let m = delta.dom(mor);
            let n = delta.cod(mor);
            let alpha = simplex_values(&delta, mor, n_max);
            // S¹(α): n₊ → m₊ in pointed sets: j ↦ min{i : α(i) ≥ j}, base
            // when the level set is empty or starts at 0
            let tuple: Vec<usize> = (1..=n)
                .map(|j| {
                    match (0..=m).find(|&i| alpha[i] >= j) {
                        None => 0,
                        Some(0) => 0,
                        Some(i) => i,
                    }
                })
                .collect();
            let body: Vec<String> = tuple.iter().map(|v| v.to_string()).collect();
            let name = format!("p[{}]:{n}->{m}", body.join(","));
            gamma
                .morphism_ids()
                .find(|&k| gamma.mor_name(k) == name)
                .expect("circle image exists")
        })
        .collect();
    let functor = FunctorData {
        source: delta.clone(),
        target: gamma_op,
        obj_map: delta.object_ids().collect(),
        mor_map,
    };
    (functor, delta_s, gamma_op_s)
}

// ---------------------------------------------------------------------------
// groupoids and orbit categories
// ---------------------------------------------------------------------------

/// The connected groupoid with `objects` objects and vertex group `g`
/// (one object gives the group as a category). Degree 0 everywhere, plus =
/// minus = everything.
pub fn group_category(g: &Group, objects: usize) -> (Cat, GeneralizedReedyStructure) {
    assert!(objects >= 1);
    let mut morphisms = Vec::new();
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    let mut identity = vec![usize::MAX; objects];
    for i in 0..objects {
        for j in 0..objects {
            for e in 0..g.order() {
                let k = morphisms.len();
                morphisms.push(MorData {
                    name: format!("{}:{i}->{j}", g.elements[e]),
                    dom: i,
                    cod: j,
                });
                if i == j && e == g.unit {
                    identity[i] = k;
                }
                pairs.push((i, j, e));
            }
        }
    }
    let index: BTreeMap<(usize, usize, usize), MorId> = pairs
        .iter()
        .enumerate()
        .map(|(k, &p)| (p, k))
        .collect();
    let pairs2 = pairs.clone();
    let g2 = g.clone();
    let cat = Arc::new(FinCategory::from_compose_fn(
        (0..objects).map(|i| format!("o{i}")).collect(),
        morphisms,
        identity,
        |gm, fm| {
            let (i, _, a) = pairs2[fm];
            let (_, l, b) = pairs2[gm];
            index[&(i, l, g2.mul(b, a))]
        },
    ));
    let s = GeneralizedReedyStructure::new(
        cat.clone(),
        vec![0; objects],
        WideSubcategory::all(&cat),
        WideSubcategory::all(&cat),
    )
    .unwrap();
    (cat, s)
}

pub fn group_reedy(cat: &FinCategory) -> GeneralizedReedyStructure {
    GeneralizedReedyStructure::new(
        Arc::new(cat.clone()),
        vec![0; cat.n_objects()],
        WideSubcategory::all(cat),
        WideSubcategory::all(cat),
    )
    .unwrap()
}

/// The discrete category on n objects.
pub fn discrete_category(n: usize) -> FinCategory {
    let morphisms = (0..n)
        .map(|o| MorData {
            name: format!("id{o}"),
            dom: o,
            cod: o,
        })
        .collect();
    let pairs: Vec<(usize, usize, usize)> = (0..n).map(|o| (o, o, o)).collect();
    FinCategory::from_tables(
        (0..n).map(|o| format!("o{o}")).collect(),
        morphisms,
        (0..n).collect(),
        &pairs,
    )
    .unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitVariant {
    /// everything in minus, degree = the index of H in G
    Minus,
    /// everything in plus, degree = order |H|
    Plus,
}

/// The orbit category of a finite group: objects are subgroups, morphisms
/// are the equivariant maps G/H → G/K, enumerated directly as cosets gK
/// with g⁻¹Hg ⊆ K.
pub fn orbit_category(g: &Group, variant: OrbitVariant) -> (Cat, GeneralizedReedyStructure) {
    let subgroups = g.subgroups();
    let coset = |rep: usize, k: &[usize]| -> Vec<usize> {
        let mut c: Vec<usize> = k.iter().map(|&x| g.mul(rep, x)).collect();
        c.sort_unstable();
        c
    };
    let mut morphisms = Vec::new();
    let mut data: Vec<(usize, usize, usize)> = Vec::new(); // (H idx, K idx, canonical rep)
    let mut identity = vec![usize::MAX; subgroups.len()];
    for (hi, h) in subgroups.iter().enumerate() {
        for (ki, k) in subgroups.iter().enumerate() {
            let mut seen: Vec<Vec<usize>> = Vec::new();
            for rep in 0..g.order() {
                let c = coset(rep, k);
                if seen.contains(&c) {
                    continue;
                }
                // equivariant map exists iff H·rep ⊆ rep·K
                let ok = h.iter().all(|&x| c.contains(&g.mul(x, rep)));
                if !ok {
                    continue;
                }
                seen.push(c.clone());
                let id = morphisms.len();
                morphisms.push(MorData {
                    name: format!("[{}]K{}:{hi}->{ki}", g.elements[c[0]], ki),
                    dom: hi,
                    cod: ki,
                });
                data.push((hi, ki, c[0]));
                if hi == ki && c.contains(&g.unit) {
                    identity[hi] = id;
                }
            }
        }
    }
    let find = |hi: usize, ki: usize, rep: usize| -> MorId {
        let target = coset(rep, &subgroups[ki]);
        (0..data.len())
            .find(|&m| {
                data[m].0 == hi && data[m].1 == ki && coset(data[m].2, &subgroups[ki]) == target
            })
            .expect("coset map present")
    };
    let data2 = data.clone();
    let g2 = g.clone();
    let cat = Arc::new(FinCategory::from_compose_fn(
        subgroups
            .iter()
            .enumerate()
            .map(|(i, h)| format!("H{i}(|{}|)", h.len()))
            .collect(),
        morphisms,
        identity,
        |gm, fm| {
            let (hi, _, r1) = data2[fm];
            let (_, li, r2) = data2[gm];
            find(hi, li, g2.mul(r1, r2))
        },
    ));
    let degree: Vec<u32> = subgroups
        .iter()
        .map(|h| match variant {
            OrbitVariant::Minus => (g.order() / h.len()) as u32,
            OrbitVariant::Plus => h.len() as u32,
        })
        .collect();
    let (plus, minus) = match variant {
        OrbitVariant::Minus => (WideSubcategory::isos(&cat), WideSubcategory::all(&cat)),
        OrbitVariant::Plus => (WideSubcategory::all(&cat), WideSubcategory::isos(&cat)),
    };
    let s = GeneralizedReedyStructure::new(cat.clone(), degree, plus, minus).unwrap();
    (cat, s)
}

// ---------------------------------------------------------------------------
// complexes of groups
// ---------------------------------------------------------------------------

/// A complex of groups over an abstract simplicial complex: one group per
/// simplex, injective homomorphisms toward faces, and twist elements for
/// composable face pairs (commuting the triangles up to conjugation).
pub struct ComplexOfGroups {
    /// simplices as sorted vertex lists; must be closed under nonempty faces
    pub simplices: Vec<Vec<usize>>,
    pub groups: Vec<Group>,
    /// hom (ρ ⊆ σ): map G_σ → G_ρ, keyed by (ρ index, σ index)
    pub injections: BTreeMap<(usize, usize), Vec<usize>>,
    /// twist elements g_{ρ,σ,τ} ∈ G_ρ for chains ρ ⊆ σ ⊆ τ
    pub twists: BTreeMap<(usize, usize, usize), usize>,
}

impl ComplexOfGroups {
    fn phi(&self, rho: usize, sigma: usize) -> Vec<usize> {
        if rho == sigma {
            return (0..self.groups[rho].order()).collect();
        }
        self.injections
            .get(&(rho, sigma))
            .cloned()
            .expect("injection present for every face pair")
    }

    fn twist(&self, rho: usize, sigma: usize, tau: usize) -> usize {
        if rho == sigma || sigma == tau {
            return self.groups[rho].unit;
        }
        self.twists
            .get(&(rho, sigma, tau))
            .copied()
            .unwrap_or(self.groups[rho].unit)
    }
}

/// Builds the twisted face-poset category Δ_X(G): objects are simplices, a
/// morphism ρ → τ for ρ ⊆ τ is an element of G_ρ, and composition twists by
/// the inverse coherence elements. Degree is simplex dimension and every
/// morphism raises (plus = all).
pub fn complex_of_groups(data: &ComplexOfGroups) -> Result<(Cat, GeneralizedReedyStructure)> {
    let n = data.simplices.len();
    for (i, s) in data.simplices.iter().enumerate() {
        if s.is_empty() {
            return Err(Error::Precondition(format!("simplex {i} is empty")));
        }
        let mut sorted = s.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if &sorted != s {
            return Err(Error::Precondition(format!(
                "simplex {i} is not a sorted vertex set"
            )));
        }
    }
    let is_face = |a: &[usize], b: &[usize]| a.iter().all(|v| b.contains(v));
    // face closure check
    for s in &data.simplices {
        for mask in 1..(1usize << s.len()) {
            let face: Vec<usize> = s
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask & (1 << i) != 0)
                .map(|(_, &v)| v)
                .collect();
            if !data.simplices.contains(&face) {
                return Err(Error::Precondition(format!(
                    "complex is not closed under faces: missing {face:?}"
                )));
            }
        }
    }
    // injections must be injective homomorphisms
    for (&(rho, sigma), table) in &data.injections {
        if !is_face(&data.simplices[rho], &data.simplices[sigma]) {
            return Err(Error::Precondition(format!(
                "injection given for a non-face pair ({rho},{sigma})"
            )));
        }
        let (gr, gs) = (&data.groups[rho], &data.groups[sigma]);
        if table.len() != gs.order() {
            return Err(Error::Precondition(format!(
                "injection ({rho},{sigma}) has wrong length"
            )));
        }
        let mut seen = vec![false; gr.order()];
        for &img in table {
            if img >= gr.order() || seen[img] {
                return Err(Error::Precondition(format!(
                    "map φ_({rho},{sigma}) is not injective"
                )));
            }
            seen[img] = true;
        }
        for a in 0..gs.order() {
            for b in 0..gs.order() {
                if table[gs.mul(a, b)] != gr.mul(table[a], table[b]) {
                    return Err(Error::Precondition(format!(
                        "map φ_({rho},{sigma}) is not a homomorphism at ({a},{b})"
                    )));
                }
            }
        }
    }
    // conjugation condition: g·φ_ρτ(x)·g⁻¹ = φ_ρσ(φ_στ(x))
    for rho in 0..n {
        for sigma in 0..n {
            for tau in 0..n {
                if rho == sigma || sigma == tau {
                    continue;
                }
                if !(is_face(&data.simplices[rho], &data.simplices[sigma])
                    && is_face(&data.simplices[sigma], &data.simplices[tau]))
                {
                    continue;
                }
                let g = data.twist(rho, sigma, tau);
                let gr = &data.groups[rho];
                let gi = gr.inverse(g);
                let prt = data.phi(rho, tau);
                let prs = data.phi(rho, sigma);
                let pst = data.phi(sigma, tau);
                for x in 0..data.groups[tau].order() {
                    let lhs = gr.mul(gr.mul(g, prt[x]), gi);
                    let rhs = prs[pst[x]];
                    if lhs != rhs {
                        return Err(Error::Precondition(format!(
                            "conjugation fails on ({rho},{sigma},{tau}) at element {x}"
                        )));
                    }
                }
            }
        }
    }
    // base poset category
    let mut morphisms = Vec::new();
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    let mut identity = vec![usize::MAX; n];
    for i in 0..n {
        for j in 0..n {
            if is_face(&data.simplices[i], &data.simplices[j]) {
                let k = morphisms.len();
                morphisms.push(MorData {
                    name: format!("{:?}⊆{:?}", data.simplices[i], data.simplices[j]),
                    dom: i,
                    cod: j,
                });
                arrows.push((i, j));
                if i == j {
                    identity[i] = k;
                }
            }
        }
    }
    let arrows2 = arrows.clone();
    let poset = Arc::new(FinCategory::from_compose_fn(
        data.simplices.iter().map(|s| format!("{s:?}")).collect(),
        morphisms,
        identity,
        |gm, fm| {
            let (i, _) = arrows2[fm];
            let (_, k) = arrows2[gm];
            arrows2
                .iter()
                .position(|&a| a == (i, k))
                .expect("poset closed")
        },
    ));
    // fibers and transitions
    let fibers: Vec<Cat> = data
        .groups
        .iter()
        .map(|g| {
            let (c, _) = group_category(g, 1);
            c
        })
        .collect();
    let transition: Vec<FunctorData> = poset
        .morphism_ids()
        .map(|m| {
            let (rho, sigma) = arrows[m];
            let table = data.phi(rho, sigma);
            FunctorData {
                source: fibers[sigma].clone(),
                target: fibers[rho].clone(),
                obj_map: vec![0],
                mor_map: table,
            }
        })
        .collect();
    // twists: component at the unique fiber object, inverse of the coherence
    // element, for every composable pair of poset arrows
    let mut twist = BTreeMap::new();
    for beta in poset.morphism_ids() {
        for alpha in poset.morphism_ids() {
            if poset.compose(beta, alpha).is_none() {
                continue;
            }
            let (rho, sigma) = arrows[alpha];
            let (_, tau) = arrows[beta];
            let g = data.twist(rho, sigma, tau);
            twist.insert((beta, alpha), vec![data.groups[rho].inverse(g)]);
        }
    }
    let gd = GrothendieckData {
        base: poset.clone(),
        fibers,
        transition,
        twist,
    };
    let result = grothendieck(&gd)?;
    let report = result.cat.validate();
    if !report.is_valid() {
        return Err(Error::IncoherentGrothendieck(format!(
            "twisted composition is not associative: {:?}",
            report.violations
        )));
    }
    let cat = Arc::new(result.cat);
    let degree: Vec<u32> = data.simplices.iter().map(|s| (s.len() - 1) as u32).collect();
    let s = GeneralizedReedyStructure::new(
        cat.clone(),
        degree,
        WideSubcategory::all(&cat),
        WideSubcategory::isos(&cat),
    )?;
    Ok((cat, s))
}

/// One edge with Z/2 at both vertices and a trivial edge group.
pub fn cog_edge_z2() -> (Cat, GeneralizedReedyStructure) {
    let simplices = vec![vec![0], vec![1], vec![0, 1]];
    let groups = vec![Group::cyclic(2), Group::cyclic(2), Group::trivial()];
    let mut injections = BTreeMap::new();
    injections.insert((0, 2), vec![0]); // G_edge → G_v0
    injections.insert((1, 2), vec![0]);
    let data = ComplexOfGroups {
        simplices,
        groups,
        injections,
        twists: BTreeMap::new(),
    };
    complex_of_groups(&data).expect("edge complex is coherent")
}

/// A full triangle with Z/2 everywhere, identity injections, and one
/// nontrivial twist element; coherence holds because the complex has no
/// chains of four distinct simplices.
pub fn cog_triangle_twisted() -> (Cat, GeneralizedReedyStructure) {
    let simplices = vec![
        vec![0],
        vec![1],
        vec![2],
        vec![0, 1],
        vec![0, 2],
        vec![1, 2],
        vec![0, 1, 2],
    ];
    let groups: Vec<Group> = (0..7).map(|_| Group::cyclic(2)).collect();
    let mut injections = BTreeMap::new();
    let id = vec![0usize, 1usize];
    for rho in 0..7usize {
        for sigma in 0..7usize {
            if rho != sigma
                && simplices[rho].iter().all(|v| simplices[sigma].contains(v))
            {
                injections.insert((rho, sigma), id.clone());
            }
        }
    }
    let mut twists = BTreeMap::new();
    twists.insert((0, 3, 6), 1); // g_{v0, e01, t} = the nontrivial element
    let data = ComplexOfGroups {
        simplices,
        groups,
        injections,
        twists,
    };
    complex_of_groups(&data).expect("twisted triangle is coherent")
}

// ---------------------------------------------------------------------------
// products and coproducts
// ---------------------------------------------------------------------------

/// Binary product with degree = sum of degrees and plus/minus componentwise.
/// Returns the structure plus the two projections.
pub fn product_structure(
    a: &GeneralizedReedyStructure,
    b: &GeneralizedReedyStructure,
) -> (GeneralizedReedyStructure, FunctorData, FunctorData) {
    let (ca, cb) = (&a.category, &b.category);
    let mut morphisms = Vec::new();
    let mut pairs: Vec<(MorId, MorId)> = Vec::new();
    let mut identity = vec![usize::MAX; ca.n_objects() * cb.n_objects()];
    let obj = |i: usize, j: usize| i * cb.n_objects() + j;
    for fi in ca.morphism_ids() {
        for fj in cb.morphism_ids() {
            let k = morphisms.len();
            morphisms.push(MorData {
                name: format!("({},{})", ca.mor_name(fi), cb.mor_name(fj)),
                dom: obj(ca.dom(fi), cb.dom(fj)),
                cod: obj(ca.cod(fi), cb.cod(fj)),
            });
            pairs.push((fi, fj));
            if ca.is_identity(fi) && cb.is_identity(fj) {
                identity[obj(ca.dom(fi), cb.dom(fj))] = k;
            }
        }
    }
    let index: BTreeMap<(MorId, MorId), MorId> = pairs
        .iter()
        .enumerate()
        .map(|(k, &p)| (p, k))
        .collect();
    let pairs2 = pairs.clone();
    let (ca2, cb2) = (ca.clone(), cb.clone());
    let mut names = Vec::new();
    for i in ca.object_ids() {
        for j in cb.object_ids() {
            names.push(format!(
                "({},{})",
                ca.object_names[i], cb.object_names[j]
            ));
        }
    }
    let cat = Arc::new(FinCategory::from_compose_fn(
        names,
        morphisms,
        identity,
        |gm, fm| {
            let (g1, g2) = pairs2[gm];
            let (f1, f2) = pairs2[fm];
            index[&(
                ca2.compose(g1, f1).expect("composable"),
                cb2.compose(g2, f2).expect("composable"),
            )]
        },
    ));
    let mut degree = Vec::new();
    for i in ca.object_ids() {
        for j in cb.object_ids() {
            degree.push(a.deg(i) + b.deg(j));
        }
    }
    let plus = WideSubcategory::from_predicate(&cat, |k| {
        let (f1, f2) = pairs[k];
        a.plus.contains(f1) && b.plus.contains(f2)
    });
    let minus = WideSubcategory::from_predicate(&cat, |k| {
        let (f1, f2) = pairs[k];
        a.minus.contains(f1) && b.minus.contains(f2)
    });
    let s = GeneralizedReedyStructure::new(cat.clone(), degree, plus, minus).unwrap();
    let proj_a = FunctorData {
        source: cat.clone(),
        target: ca.clone(),
        obj_map: (0..cat.n_objects()).map(|o| o / cb.n_objects()).collect(),
        mor_map: pairs.iter().map(|&(f1, _)| f1).collect(),
    };
    let proj_b = FunctorData {
        source: cat.clone(),
        target: cb.clone(),
        obj_map: (0..cat.n_objects()).map(|o| o % cb.n_objects()).collect(),
        mor_map: pairs.iter().map(|&(_, f2)| f2).collect(),
    };
    (s, proj_a, proj_b)
}

/// Binary coproduct: disjoint union of categories, degrees inherited.
pub fn coproduct_structure(
    a: &GeneralizedReedyStructure,
    b: &GeneralizedReedyStructure,
) -> GeneralizedReedyStructure {
    let (ca, cb) = (&a.category, &b.category);
    let no = ca.n_objects();
    let nm = ca.n_morphisms();
    let mut morphisms: Vec<MorData> = ca.morphisms.clone();
    morphisms.extend(cb.morphisms.iter().map(|m| MorData {
        name: m.name.clone(),
        dom: m.dom + no,
        cod: m.cod + no,
    }));
    let mut identity = ca.identity.clone();
    identity.extend(cb.identity.iter().map(|&i| i + nm));
    let mut pairs = Vec::new();
    for (g, f) in ca.composable_pairs() {
        pairs.push((g, f, ca.compose(g, f).unwrap()));
    }
    for (g, f) in cb.composable_pairs() {
        pairs.push((g + nm, f + nm, cb.compose(g, f).unwrap() + nm));
    }
    let mut names = ca.object_names.clone();
    names.extend(cb.object_names.iter().cloned());
    let cat = Arc::new(FinCategory::from_tables(names, morphisms, identity, &pairs).unwrap());
    let mut degree = a.degree.clone();
    degree.extend(b.degree.iter().copied());
    let plus = WideSubcategory {
        member: a
            .plus
            .member
            .iter()
            .chain(b.plus.member.iter())
            .copied()
            .collect(),
    };
    let minus = WideSubcategory {
        member: a
            .minus
            .member
            .iter()
            .chain(b.minus.member.iter())
            .copied()
            .collect(),
    };
    GeneralizedReedyStructure::new(cat, degree, plus, minus).unwrap()
}

// ---------------------------------------------------------------------------
// corpus
// ---------------------------------------------------------------------------

/// One entry of the default verification corpus.
pub struct CorpusItem {
    pub name: String,
    pub structure: GeneralizedReedyStructure,
    /// whether the dualizable axiom is claimed for this entry
    pub dualizable: bool,
    /// whether the entry is claimed to satisfy the EZ axioms
    pub ez: bool,
    /// coskeleta over this member grow combinatorially (hundreds of elements
    /// from a handful); bulk presheaf sweeps skip it and its truncation-2
    /// counterpart carries the coverage
    pub heavy: bool,
}

/// The default corpus: every in-scope example family at its documented
/// truncation bound.
pub fn corpus() -> Vec<CorpusItem> {
    let mut items = Vec::new();
    let mut push = |name: &str, s: GeneralizedReedyStructure, dualizable: bool, ez: bool| {
        let heavy = matches!(name, "cyclic3" | "fin3");
        items.push(CorpusItem {
            name: name.to_string(),
            structure: s,
            dualizable,
            ez,
            heavy,
        });
    };
    push("simplex3", simplex_trunc(3).1, true, true);
    push("cyclic3", cyclic_trunc(3).1, true, false);
    push("cyclic2", cyclic_trunc(2).1, true, true);
    push("sym2", sym_trunc(2).1, true, true);
    push("gamma3", gamma_trunc(3).1, true, false);
    push("gamma2", gamma_trunc(2).1, true, true);
    push("fin3", fin_trunc(3).1, true, false);
    push("fin2", fin_trunc(2).1, true, true);
    for (gname, g) in [
        ("z2", Group::cyclic(2)),
        ("z3", Group::cyclic(3)),
        ("s3", Group::symmetric(3)),
    ] {
        push(
            &format!("orbit_{gname}_minus"),
            orbit_category(&g, OrbitVariant::Minus).1,
            true,
            false,
        );
        push(
            &format!("orbit_{gname}_plus"),
            orbit_category(&g, OrbitVariant::Plus).1,
            false,
            false,
        );
    }
    push("cog_edge_z2", cog_edge_z2().1, true, false);
    push("cog_triangle_twisted", cog_triangle_twisted().1, true, false);
    push("groupoid_z2x2", group_category(&Group::cyclic(2), 2).1, true, false);
    let (d1a, sa) = simplex_trunc(1);
    let (_, sb) = simplex_trunc(1);
    let _ = d1a;
    let (prod, _, _) = product_structure(&sa, &sb);
    push("product_d1_d1", prod, true, false);
    let (_, gz2) = group_category(&Group::cyclic(2), 1);
    push("coproduct_d1_z2", coproduct_structure(&sa, &gz2), true, false);
    items
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_counts_and_validation() {
        let (cat, s) = simplex_trunc(0);
        assert_eq!(cat.n_objects(), 1);
        assert_eq!(cat.n_morphisms(), 1);
        assert!(s.validate_reedy(true).passes());
        let (cat3, s3) = simplex_trunc(3);
        // Σ C(n+m+1, m+1) over 0 ≤ m,n ≤ 3 = 121
        assert_eq!(cat3.n_morphisms(), 121);
        let report = s3.validate_reedy(true);
        assert!(report.passes());
        assert!(report.strict);
    }

    #[test]
    fn cyclic_automorphism_counts() {
        let (cat, s) = cyclic_trunc(2);
        for n in 0..=2 {
            let auts = cat.hom(n, n).iter().filter(|&&f| cat.is_iso(f)).count();
            assert_eq!(auts, n + 1, "|Aut([{n}])| in Λ must be {}", n + 1);
        }
        let report = s.validate_reedy(true);
        assert!(report.passes());
        assert!(!report.strict);
    }

    #[test]
    fn cyclic_action_worked_examples() {
        // α = δ0: [0]→[1] (0 ↦ 1), g = τ: α*(g) = id, g_*(α) = δ1
        let (sigma, beta) = cyclic_action(&[1], &[1, 0]);
        assert_eq!(sigma, vec![0]);
        assert_eq!(beta, vec![0]);
        // α = σ0: [2]→[1], g = τ: α*(g) = 3-cycle, g_*(α) = (0,1,1)
        let (sigma, beta) = cyclic_action(&[0, 0, 1], &[1, 0]);
        assert_eq!(sigma, vec![1, 2, 0]);
        assert_eq!(beta, vec![0, 1, 1]);
        // identity g
        let (sigma, beta) = cyclic_action(&[0, 0, 1], &[0, 1]);
        assert_eq!(sigma, vec![0, 1, 2]);
        assert_eq!(beta, vec![0, 0, 1]);
    }

    #[test]
    fn cyclic_closure_under_restriction() {
        // if g ∈ C_[n] then α*(g) ∈ C_[m]
        for n in 0..=3usize {
            for m in 0..=3usize {
                for alpha in monotone_maps(m, n) {
                    for g in cyclic_perms(n) {
                        let (sigma, _) = cyclic_action(&alpha, &g);
                        assert!(
                            cyclic_perms(m).contains(&sigma),
                            "restriction leaves the cyclic subgroup at α={alpha:?}, g={g:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn symmetric_truncation_aut_orders() {
        let (cat, s) = sym_trunc(2);
        for n in 0..=2usize {
            let auts = cat.hom(n, n).iter().filter(|&&f| cat.is_iso(f)).count();
            let expected: usize = (1..=n + 1).product();
            assert_eq!(auts, expected);
        }
        assert!(s.validate_reedy(true).passes());
    }

    #[test]
    fn gamma_and_fin_counts() {
        let (gamma, gs) = gamma_trunc(2);
        // |Hom(1₊, 1₊)| = 2
        assert_eq!(gamma.hom(1, 1).len(), 2);
        assert!(gs.validate_reedy(true).passes());
        // the dual also validates
        assert!(gs.opposite().validate_reedy(true).passes());
        let (fin, fs) = fin_trunc(1);
        assert_eq!(fin.hom(0, 1).len(), 2);
        let d0 = fin.hom(0, 1)[0];
        let c = fin.classify(d0);
        assert!(c.mono);
        assert!(fs.plus.contains(d0));
        assert!(fs.validate_reedy(true).passes());
    }

    #[test]
    fn delta_embeds_in_fin_as_reedy_morphism() {
        // the inclusion Δ≤2 ↪ Δ_sym≤2 preserves degree, plus and minus
        let (delta, ds) = simplex_trunc(2);
        let (fin, fs) = fin_trunc(2);
        let mor_map: Vec<MorId> = delta
            .morphism_ids()
            .map(|m| {
                let v = simplex_values(&delta, m, 2);
                let body: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                let name = format!(
                    "f[{}]:{}->{}",
                    body.join(","),
                    delta.dom(m),
                    delta.cod(m)
                );
                fin.morphism_ids()
                    .find(|&k| fin.mor_name(k) == name)
                    .unwrap()
            })
            .collect();
        let incl = FunctorData {
            source: delta.clone(),
            target: fin.clone(),
            obj_map: delta.object_ids().collect(),
            mor_map,
        };
        crate::reedy::validate_reedy_morphism(&ds, &fs, &incl).unwrap();
    }

    #[test]
    fn circle_functor_is_reedy_morphism() {
        for n in 0..=3 {
            let (functor, delta_s, gamma_op_s) = circle_functor(n);
            functor.validate().unwrap();
            crate::reedy::validate_reedy_morphism(&delta_s, &gamma_op_s, &functor).unwrap();
        }
    }

    #[test]
    fn orbit_z2_counts() {
        let (cat, s) = orbit_category(&Group::cyclic(2), OrbitVariant::Minus);
        assert_eq!(cat.n_objects(), 2);
        // objects sorted: [e] (trivial), [e,t] (full)
        assert_eq!(cat.hom(0, 0).len(), 2);
        assert_eq!(cat.hom(0, 1).len(), 1);
        assert_eq!(cat.hom(1, 0).len(), 0);
        assert_eq!(s.deg(0), 2);
        assert_eq!(s.deg(1), 1);
        assert!(s.validate_reedy(true).passes());
        let (_, sp) = orbit_category(&Group::cyclic(2), OrbitVariant::Plus);
        assert!(sp.validate_reedy(false).passes());
    }

    #[test]
    fn orbit_both_variants_validate_for_small_groups() {
        for g in [Group::cyclic(2), Group::cyclic(3), Group::symmetric(3)] {
            for variant in [OrbitVariant::Minus, OrbitVariant::Plus] {
                let (cat, s) = orbit_category(&g, variant);
                assert!(cat.validate().is_valid());
                assert!(s.validate_reedy(false).passes(), "{variant:?}");
            }
        }
    }

    #[test]
    fn trivial_group_orbit_is_terminal() {
        let (cat, _) = orbit_category(&Group::trivial(), OrbitVariant::Minus);
        assert_eq!(cat.n_objects(), 1);
        assert_eq!(cat.n_morphisms(), 1);
    }

    #[test]
    fn cog_edge_counts() {
        let (cat, s) = cog_edge_z2();
        assert_eq!(cat.n_objects(), 3);
        // morphisms from each vertex to the edge: |G_vertex| = 2
        // (objects: two vertices and the edge, in simplex order)
        let edge = 2;
        assert_eq!(cat.hom(0, edge).len(), 2);
        assert_eq!(cat.hom(1, edge).len(), 2);
        assert_eq!(cat.hom(edge, 0).len(), 0);
        assert!(s.validate_reedy(false).passes());
    }

    #[test]
    fn cog_trivial_groups_is_poset() {
        let simplices = vec![vec![0], vec![1], vec![0, 1]];
        let groups = vec![Group::trivial(), Group::trivial(), Group::trivial()];
        let mut injections = BTreeMap::new();
        injections.insert((0, 2), vec![0]);
        injections.insert((1, 2), vec![0]);
        let data = ComplexOfGroups {
            simplices,
            groups,
            injections,
            twists: BTreeMap::new(),
        };
        let (cat, _) = complex_of_groups(&data).unwrap();
        assert_eq!(cat.n_morphisms(), 5); // 3 identities + 2 inclusions
    }

    #[test]
    fn cog_twisted_triangle_is_associative() {
        let (cat, s) = cog_triangle_twisted();
        assert!(cat.validate().is_valid());
        assert!(s.validate_reedy(false).passes());
    }

    #[test]
    fn product_and_coproduct_validate() {
        let (_, s1) = simplex_trunc(1);
        let (prod, _, _) = product_structure(&s1, &s1);
        assert!(prod.validate_reedy(true).passes());
        // degree of ([1],[1]) is 2
        let top = prod
            .category
            .object_ids()
            .find(|&o| prod.category.object_names[o] == "([1],[1])")
            .unwrap();
        assert_eq!(prod.deg(top), 2);
        let (_, gz2) = group_category(&Group::cyclic(2), 1);
        let cop = coproduct_structure(&s1, &gz2);
        assert!(cop.validate_reedy(true).passes());
        // product with the terminal category is unchanged
        let term = group_reedy(&FinCategory::terminal());
        let (pt, _, _) = product_structure(&s1, &term);
        assert!(crate::fincat::find_isomorphism(&pt.category, &s1.category).is_some());
    }

    #[test]
    fn corpus_builds() {
        let items = corpus();
        assert!(items.len() >= 15);
        for item in &items {
            assert!(
                item.structure.category.validate().is_valid(),
                "{}",
                item.name
            );
        }
    }
}
