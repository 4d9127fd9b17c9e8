//! The verification suite: every acceptance property of the toolkit, run as
//! numbered criteria with one pass/fail verdict each. Deterministic given
//! the seed; every sampled object records it.

use crate::crossed::{crossed_from_wide, total_category, verify_total_reconstruction};
use crate::diagram::{DiagramMap, SetDiagram};
use crate::ez::{
    absolute_pushout, boundary, is_normal_mono, quotient_by_automorphisms, skeleton_image_check,
    standard_decomposition, EzStructure,
};
use crate::fincat::Cat;
use crate::generators::{self, CorpusItem, SimplicialCrossedKind};
use crate::monoidal::{pushout_product, quasi_monoidal_check, CartesianOracle};
use crate::reedy::{
    degree_slice, latching_global, matching_global, minus_slice_structure, plus_slice_structure,
    restriction_comparison, skeleton_lemma_checks, truncated_structure, ComparisonSide,
};
use crate::rng::SplitMix64;
use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub corpus: String,
    pub presheaves_per_category: usize,
    pub monos_per_category: usize,
    pub pushout_product_pairs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 42,
            corpus: "default".to_string(),
            presheaves_per_category: 50,
            monos_per_category: 200,
            pushout_product_pairs: 100,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub details: String,
    /// wall time; excluded from serialized reports so identical inputs and
    /// seed produce byte-identical output
    #[serde(skip)]
    pub millis: u128,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub corpus: String,
    pub criteria: Vec<CriterionResult>,
    #[serde(skip)]
    pub total_millis: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }
}

pub const CRITERION_NAMES: [&str; 12] = [
    "axiom-suite",
    "strictness",
    "crossed-identities",
    "crossed-round-trip",
    "kan-consistency",
    "skeletal-calculus",
    "ez-suite",
    "standard-decompositions",
    "skeleton-image",
    "normal-mono-three-way",
    "pushout-product",
    "restriction-comparisons",
];

pub fn run_all(config: &SuiteConfig) -> SuiteReport {
    let start = Instant::now();
    let criteria = (1..=12).map(|id| run_criterion(config, id)).collect();
    SuiteReport {
        seed: config.seed,
        corpus: config.corpus.clone(),
        criteria,
        total_millis: start.elapsed().as_millis(),
    }
}

pub fn run_criterion(config: &SuiteConfig, id: u32) -> CriterionResult {
    let start = Instant::now();
    let (passed, details) = match id {
        1 => criterion_axiom_suite(),
        2 => criterion_strictness(),
        3 => criterion_crossed_identities(),
        4 => criterion_round_trip(),
        5 => criterion_kan_consistency(config),
        6 => criterion_skeletal_calculus(config),
        7 => criterion_ez_suite(),
        8 => criterion_standard_decompositions(config),
        9 => criterion_skeleton_image(config),
        10 => criterion_three_way(config),
        11 => criterion_pushout_product(config),
        12 => criterion_restriction_comparisons(config),
        _ => (false, "unknown criterion".to_string()),
    };
    CriterionResult {
        id,
        name: CRITERION_NAMES[(id - 1) as usize].to_string(),
        passed,
        details,
        millis: start.elapsed().as_millis(),
    }
}

// ---------------------------------------------------------------------------
// sampling
// ---------------------------------------------------------------------------

/// A seeded random diagram on a shape: a coproduct of corepresentables glued
/// along a few random pairs. On an opposite shape this is a random presheaf.
pub fn random_diagram(rng: &mut SplitMix64, shape: &Cat, objects: &[usize]) -> SetDiagram {
    let n_gens = 1 + rng.below(2);
    let parts: Vec<SetDiagram> = (0..n_gens)
        .map(|_| SetDiagram::corepresentable(shape, objects[rng.below(objects.len())]))
        .collect();
    let (mut total, _) = crate::diagram::coproduct(&parts);
    let n_glue = rng.below(3);
    let mut gluings = Vec::new();
    for _ in 0..n_glue {
        let o = rng.below(shape.n_objects());
        if total.size(o) >= 2 {
            let a = rng.below(total.size(o));
            let b = rng.below(total.size(o));
            gluings.push((o, a, b));
        }
    }
    if !gluings.is_empty() {
        let (q, _) = crate::diagram::equalize_quotient(&total, &gluings);
        total = q;
    }
    total
}

/// A seeded random subpresheaf of a coproduct of corepresentables. Unlike
/// `random_diagram` there is no quotient step, so the result embeds in a
/// cellular ambient object.
pub fn random_subpresheaf_ambient(
    rng: &mut SplitMix64,
    shape: &Cat,
    objects: &[usize],
) -> SetDiagram {
    let n_gens = 1 + rng.below(2);
    let parts: Vec<SetDiagram> = (0..n_gens)
        .map(|_| SetDiagram::corepresentable(shape, objects[rng.below(objects.len())]))
        .collect();
    let (ambient, _) = crate::diagram::coproduct(&parts);
    let mut seeds = Vec::new();
    for o in shape.object_ids() {
        for e in 0..ambient.size(o) {
            if rng.chance(2, 3) {
                seeds.push((o, e));
            }
        }
    }
    let (sub, _) = crate::diagram::subdiagram_closure(&ambient, &seeds);
    sub
}

/// A seeded random subdiagram inclusion (a monomorphism).
pub fn random_mono(rng: &mut SplitMix64, target: &SetDiagram) -> DiagramMap {
    let shape = &target.shape;
    let mut seeds = Vec::new();
    for o in shape.object_ids() {
        for e in 0..target.size(o) {
            if rng.chance(1, 2) {
                seeds.push((o, e));
            }
        }
    }
    let (_, incl) = crate::diagram::subdiagram_closure(target, &seeds);
    incl
}

fn ez_corpus() -> Vec<(String, EzStructure)> {
    let mut out = Vec::new();
    for (name, (cat, s)) in [
        ("simplex3", generators::simplex_trunc(3)),
        ("cyclic2", generators::cyclic_trunc(2)),
        ("sym2", generators::sym_trunc(2)),
        ("gamma2", generators::gamma_trunc(2)),
        ("fin2", generators::fin_trunc(2)),
    ] {
        out.push((
            name.to_string(),
            EzStructure::new(cat, s.degree.clone()).expect("EZ corpus builds"),
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------------

fn criterion_axiom_suite() -> (bool, String) {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut ok = true;
    for item in generators::corpus() {
        let cat_ok = item.structure.category.validate().is_valid();
        let report = item.structure.validate_reedy(item.dualizable);
        let pass = cat_ok && report.passes();
        ok &= pass;
        lines.push(format!(
            "{}: category={} axioms={} strict={}",
            item.name,
            cat_ok,
            report.passes(),
            report.strict
        ));
    }
    let elapsed = start.elapsed().as_secs_f64();
    if elapsed >= 60.0 {
        ok = false;
        lines.push(format!("runtime {elapsed:.1}s exceeds the 60s budget"));
    } else {
        // keep the passing detail byte-stable across runs
        lines.push("runtime under the 60s budget".to_string());
    }
    (ok, lines.join("; "))
}

fn criterion_strictness() -> (bool, String) {
    let (_, s3) = generators::simplex_trunc(3);
    let r3 = s3.validate_reedy(true);
    let mut ok = r3.passes() && r3.strict;
    let mut details = vec![format!("simplex3 strict={}", r3.strict)];
    // a strict structure has only identity isomorphisms, checked exhaustively
    let cat3 = &s3.category;
    let iso_check = cat3
        .morphism_ids()
        .all(|f| !cat3.is_iso(f) || cat3.is_identity(f));
    ok &= iso_check;
    details.push(format!("simplex3 all isos are identities: {iso_check}"));
    let (cat1, s1) = generators::cyclic_trunc(1);
    let r1 = s1.validate_reedy(true);
    let auts = cat1.hom(1, 1).iter().filter(|&&f| cat1.is_iso(f)).count();
    ok &= r1.passes() && !r1.strict && auts == 2;
    details.push(format!("cyclic1 strict={} |Aut([1])|={}", r1.strict, auts));
    (ok, details.join("; "))
}

fn criterion_crossed_identities() -> (bool, String) {
    let mut ok = true;
    let mut details = Vec::new();
    for (name, kind) in [
        ("C", SimplicialCrossedKind::Cyclic),
        ("Sigma", SimplicialCrossedKind::Symmetric),
    ] {
        let crossed = generators::simplicial_crossed_group(2, kind);
        let report = crossed.validate().expect("tables well-formed");
        ok &= report.passes();
        details.push(format!(
            "{name} on simplex2: identities {}",
            if report.passes() { "hold" } else { "fail" }
        ));
    }
    let (cyc, _) = generators::cyclic_trunc(2);
    let (delta, _) = generators::simplex_trunc(2);
    for m in 0..=2 {
        for n in 0..=2 {
            let expected = (m + 1) * delta.hom(m, n).len();
            if cyc.hom(m, n).len() != expected {
                ok = false;
                details.push(format!("hom count fails at ({m},{n})"));
            }
        }
    }
    details.push(format!("hom(1,1) in cyclic2 = {}", cyc.hom(1, 1).len()));
    ok &= cyc.hom(1, 1).len() == 6;
    (ok, details.join("; "))
}

fn criterion_round_trip() -> (bool, String) {
    let crossed = generators::simplicial_crossed_group(2, SimplicialCrossedKind::Cyclic);
    let total = generators::cyclic_total(2);
    let recovered = match crossed_from_wide(&total.cat, &total.embedding, &total.special) {
        Ok(r) => r,
        Err(e) => return (false, format!("recovery failed: {e}")),
    };
    let tables_match = recovered.restriction == crossed.restriction
        && recovered.action == crossed.action
        && recovered
            .groups
            .iter()
            .zip(&crossed.groups)
            .all(|(a, b)| a.order() == b.order() && a.mult == b.mult);
    let rebuilt = match total_category(&recovered) {
        Ok(t) => t,
        Err(e) => return (false, format!("rebuild failed: {e}")),
    };
    let iso = verify_total_reconstruction(&total.cat, &rebuilt);
    (
        tables_match && iso,
        format!("tables_match={tables_match} total_isomorphic={iso}"),
    )
}

fn hash_name(name: &str) -> u64 {
    name.bytes().fold(0xcbf29ce484222325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100000001b3)
    })
}

fn corpus_diagrams(config: &SuiteConfig, item: &CorpusItem, count: usize) -> Vec<SetDiagram> {
    let shape = &item.structure.category;
    let mut rng = SplitMix64::new(config.seed ^ hash_name(&item.name));
    // generators of low degree keep the value sets small on the fat corpus
    // members (hom-sets out of the top of fin3 have hundreds of elements)
    let min_deg = item.structure.degree.iter().copied().min().unwrap_or(0);
    let objects: Vec<usize> = shape
        .object_ids()
        .filter(|&o| item.structure.deg(o) <= min_deg + 1)
        .collect();
    let mut out = vec![SetDiagram::corepresentable(shape, objects[0])];
    for _ in 0..count {
        out.push(random_diagram(&mut rng, shape, &objects));
    }
    out
}

fn criterion_kan_consistency(config: &SuiteConfig) -> (bool, String) {
    let mut ok = true;
    let mut details = Vec::new();
    for item in generators::corpus() {
        let s = &item.structure;
        let diagrams = corpus_diagrams(config, &item, 1);
        let mut item_ok = true;
        for n in 0..=s.max_degree() {
            let slice = match degree_slice(s, n) {
                Ok(sl) => sl,
                Err(e) => {
                    item_ok = false;
                    details.push(format!("{} slice {n}: {e}", item.name));
                    continue;
                }
            };
            for x in &diagrams {
                match latching_global(s, &slice, x) {
                    Ok(g) => item_ok &= g.all_routes_agree && g.projection_formula_iso,
                    Err(e) => {
                        item_ok = false;
                        details.push(format!("{} latching {n}: {e}", item.name));
                    }
                }
                match matching_global(s, &slice, x) {
                    Ok(g) => item_ok &= g.all_routes_agree && g.projection_formula_iso,
                    Err(e) => {
                        item_ok = false;
                        details.push(format!("{} matching {n}: {e}", item.name));
                    }
                }
            }
        }
        ok &= item_ok;
        details.push(format!(
            "{}: {}",
            item.name,
            if item_ok { "ok" } else { "FAIL" }
        ));
    }
    (ok, details.join("; "))
}

fn criterion_skeletal_calculus(config: &SuiteConfig) -> (bool, String) {
    let mut ok = true;
    let mut details = Vec::new();
    for item in generators::corpus() {
        if !item.dualizable {
            continue; // presheaf machinery needs the reversed structure
        }
        if item.heavy {
            details.push(format!("{}: skipped (coskeleta blow up; see truncation-2 member)", item.name));
            continue;
        }
        let sop = item.structure.opposite();
        let shape = sop.category.clone();
        // low-degree generators keep the sampled presheaves small on the
        // corpus members with fat hom-sets
        let min_deg = sop.degree.iter().copied().min().unwrap_or(0);
        let objects: Vec<usize> = shape
            .object_ids()
            .filter(|&o| sop.deg(o) <= min_deg + 1)
            .collect();
        let mut rng = SplitMix64::new(config.seed ^ hash_name(&item.name));
        let mut failures = 0usize;
        for _ in 0..config.presheaves_per_category {
            let x = random_diagram(&mut rng, &shape, &objects);
            let report = skeleton_lemma_checks(&sop, &x);
            if !report.passes() {
                failures += 1;
            }
        }
        ok &= failures == 0;
        details.push(format!(
            "{}: {} presheaves, {failures} failures",
            item.name, config.presheaves_per_category
        ));
    }
    (ok, details.join("; "))
}

fn criterion_ez_suite() -> (bool, String) {
    let mut ok = true;
    let mut details = Vec::new();
    for (name, ez) in ez_corpus() {
        let report = ez.validate_ez();
        ok &= report.passes();
        details.push(format!(
            "{name}: {}",
            if report.passes() { "EZ" } else { "FAIL" }
        ));
    }
    // the pushout of the two collapses [2] ⇉ [1] is representable by [0]
    let (cat, _) = generators::simplex_trunc(2);
    let s0 = generators::simplex_mor(&cat, &[0, 0, 1], 1).unwrap();
    let s1 = generators::simplex_mor(&cat, &[0, 1, 1], 1).unwrap();
    match absolute_pushout(&cat, s0, s1) {
        Some(sq) if sq.object == 0 => details.push("collapse pushout = [0]".into()),
        other => {
            ok = false;
            details.push(format!("collapse pushout wrong: {other:?}"));
        }
    }
    (ok, details.join("; "))
}

fn criterion_standard_decompositions(config: &SuiteConfig) -> (bool, String) {
    let mut ok = true;
    let mut details = Vec::new();
    for (name, ez) in ez_corpus() {
        let shape = ez.op_shape().clone();
        let objects: Vec<usize> = shape.object_ids().collect();
        let mut rng = SplitMix64::new(config.seed ^ hash_name(&name));
        let mut presheaves: Vec<SetDiagram> =
            ez.cat.object_ids().map(|r| ez.representable(r)).collect();
        for _ in 0..10 {
            presheaves.push(random_diagram(&mut rng, &shape, &objects));
        }
        let mut elements = 0usize;
        let mut failures = 0usize;
        for x in &presheaves {
            for r in ez.cat.object_ids() {
                for e in 0..x.size(r) {
                    elements += 1;
                    let d = standard_decomposition(&ez, x, r, e);
                    if !d.essentially_unique || d.all.is_empty() {
                        failures += 1;
                    }
                }
            }
        }
        ok &= failures == 0;
        details.push(format!("{name}: {elements} elements, {failures} failures"));
    }
    (ok, details.join("; "))
}

fn criterion_skeleton_image(config: &SuiteConfig) -> (bool, String) {
    let mut ok = true;
    let mut details = Vec::new();
    for (name, ez) in ez_corpus() {
        let shape = ez.op_shape().clone();
        let objects: Vec<usize> = shape.object_ids().collect();
        let mut rng = SplitMix64::new(config.seed ^ hash_name(&name) ^ 0x99);
        let mut presheaves: Vec<SetDiagram> =
            ez.cat.object_ids().map(|r| ez.representable(r)).collect();
        for _ in 0..10 {
            presheaves.push(random_diagram(&mut rng, &shape, &objects));
        }
        let mut failures = 0usize;
        for x in &presheaves {
            for n in 0..=(ez.max_degree() as i64 + 1) {
                if !skeleton_image_check(&ez, x, n) {
                    failures += 1;
                }
            }
        }
        ok &= failures == 0;
        details.push(format!("{name}: {failures} failures"));
    }
    (ok, details.join("; "))
}

fn criterion_three_way(config: &SuiteConfig) -> (bool, String) {
    let mut ok = true;
    let mut details = Vec::new();
    for (name, ez) in ez_corpus() {
        let shape = ez.op_shape().clone();
        let objects: Vec<usize> = shape.object_ids().collect();
        let mut rng = SplitMix64::new(config.seed ^ hash_name(&name) ^ 0xA5A5);
        let mut disagreements = 0usize;
        let mut boundary_failures = 0usize;
        for r in ez.cat.object_ids() {
            let (_, incl) = boundary(&ez, r);
            let report = is_normal_mono(&ez, &incl);
            if !report.agree() {
                disagreements += 1;
            }
            if !report.is_normal() {
                boundary_failures += 1;
            }
        }
        for _ in 0..config.monos_per_category {
            // the sampling scheme is random subpresheaf pairs: Y inside a
            // coproduct of representables, X inside Y
            let y = random_subpresheaf_ambient(&mut rng, &shape, &objects);
            let mono = random_mono(&mut rng, &y);
            let report = is_normal_mono(&ez, &mono);
            if !report.agree() {
                disagreements += 1;
            }
        }
        ok &= disagreements == 0 && boundary_failures == 0;
        details.push(format!(
            "{name}: {} monos, {disagreements} disagreements, {boundary_failures} non-normal boundaries",
            config.monos_per_category
        ));
    }
    // the symmetric quotient non-example: not normal, all three verdicts agree
    let (cat, s) = generators::fin_trunc(2);
    let ez = EzStructure::new(cat, s.degree.clone()).unwrap();
    let q = quotient_by_automorphisms(&ez, 1);
    let empty = SetDiagram::empty(ez.op_shape().clone());
    let from_empty = DiagramMap {
        source: empty,
        target: q,
        components: vec![Vec::new(); ez.cat.n_objects()],
    };
    let report = is_normal_mono(&ez, &from_empty);
    let non_example_ok = report.agree() && !report.is_normal();
    ok &= non_example_ok;
    details.push(format!(
        "symmetric quotient: agree={} normal={}",
        report.agree(),
        report.is_normal()
    ));
    (ok, details.join("; "))
}

fn criterion_pushout_product(config: &SuiteConfig) -> (bool, String) {
    let (cat, s) = generators::simplex_trunc(3);
    let ez = EzStructure::new(cat, s.degree.clone()).unwrap();
    let oracle = CartesianOracle;
    let shape = ez.op_shape().clone();
    let mut rng = SplitMix64::new(config.seed ^ 0xBEEF);
    // generators of degree <= 1 on one side and <= 2 on the other keep every
    // sampled pair truncation-adequate over degree 3
    let low: Vec<usize> = ez.cat.object_ids().filter(|&o| ez.deg(o) <= 1).collect();
    let mid: Vec<usize> = ez.cat.object_ids().filter(|&o| ez.deg(o) <= 2).collect();
    let mut normal = 0usize;
    let mut monic = 0usize;
    let mut failures = 0usize;
    let mut n_pairs = 0usize;
    while n_pairs < config.pushout_product_pairs {
        let yu = random_diagram(&mut rng, &shape, &low);
        let u = random_mono(&mut rng, &yu);
        let yv = random_diagram(&mut rng, &shape, &mid);
        let v = random_mono(&mut rng, &yv);
        n_pairs += 1;
        match pushout_product(&ez, &oracle, &u, &v) {
            Ok((map, verdict)) => {
                if map.is_mono() {
                    monic += 1;
                }
                if verdict.agree() && verdict.is_normal() {
                    normal += 1;
                } else {
                    failures += 1;
                }
            }
            Err(_) => {
                failures += 1;
            }
        }
    }
    let mut ok = failures == 0 && monic == n_pairs && normal == n_pairs;
    let mut details = vec![format!(
        "{n_pairs} pairs over simplex3: {normal} normal, {monic} monic, {failures} failures"
    )];
    // quasi-monoidal check over all adequate pairs (d(r)+d(s) <= 3)
    let pairs: Vec<(usize, usize)> = ez
        .cat
        .object_ids()
        .flat_map(|r| ez.cat.object_ids().map(move |s2| (r, s2)))
        .filter(|&(r, s2)| ez.deg(r) + ez.deg(s2) <= 3)
        .collect();
    match quasi_monoidal_check(&ez, &oracle, &pairs) {
        Ok(report) => {
            ok &= report.passes();
            details.push(format!(
                "quasi-monoidal: {} pairs, passes={}",
                report.pairs.len(),
                report.passes()
            ));
        }
        Err(e) => {
            ok = false;
            details.push(format!("quasi-monoidal refused: {e}"));
        }
    }
    (ok, details.join("; "))
}

fn criterion_restriction_comparisons(config: &SuiteConfig) -> (bool, String) {
    let mut ok = true;
    let mut details = Vec::new();
    for (name, s) in [
        ("simplex3", generators::simplex_trunc(3).1),
        ("cyclic2", generators::cyclic_trunc(2).1),
    ] {
        let shape = s.category.clone();
        let mut rng = SplitMix64::new(config.seed ^ hash_name(name) ^ 0x7171);
        let objects: Vec<usize> = shape.object_ids().collect();
        let diagrams = vec![
            SetDiagram::corepresentable(&shape, 0),
            random_diagram(&mut rng, &shape, &objects),
        ];
        let mut cases = 0usize;
        let mut failures = 0usize;
        // case (ii): the degree-(<= n) embedding, for all n and applicable k
        for n in 0..=s.max_degree() {
            let (trunc, phi) = match truncated_structure(&s, n) {
                Ok(t) => t,
                Err(e) => {
                    failures += 1;
                    details.push(format!("{name} truncation {n}: {e}"));
                    continue;
                }
            };
            for k in 0..=n {
                for x in &diagrams {
                    for side in [ComparisonSide::Latching, ComparisonSide::Matching] {
                        cases += 1;
                        match restriction_comparison(&trunc, &s, &phi, x, k, side) {
                            Ok(out) if out.is_isomorphism() => {}
                            other => {
                                failures += 1;
                                details
                                    .push(format!("{name} t{n} k={k} {side:?}: {other:?}"));
                            }
                        }
                    }
                }
            }
        }
        // case (i): the domain functor off the plus slice (latching side) and
        // the codomain functor off the minus slice (matching side)
        for n in 1..=s.max_degree() {
            let slice = match degree_slice(&s, n) {
                Ok(sl) => sl,
                Err(e) => {
                    failures += 1;
                    details.push(format!("{name} slice {n}: {e}"));
                    continue;
                }
            };
            match plus_slice_structure(&s, &slice) {
                Ok((plus_struct, phi)) => {
                    for k in 0..n {
                        for x in &diagrams {
                            cases += 1;
                            match restriction_comparison(
                                &plus_struct,
                                &s,
                                &phi,
                                x,
                                k,
                                ComparisonSide::Latching,
                            ) {
                                Ok(out) if out.is_isomorphism() => {}
                                other => {
                                    failures += 1;
                                    details.push(format!(
                                        "{name} plus({n}) k={k}: {other:?}"
                                    ));
                                }
                            }
                        }
                    }
                }
                Err(_) => failures += 1,
            }
            match minus_slice_structure(&s, &slice) {
                Ok((minus_struct, phi)) => {
                    for k in 0..n {
                        for x in &diagrams {
                            cases += 1;
                            match restriction_comparison(
                                &minus_struct,
                                &s,
                                &phi,
                                x,
                                k,
                                ComparisonSide::Matching,
                            ) {
                                Ok(out) if out.is_isomorphism() => {}
                                other => {
                                    failures += 1;
                                    details.push(format!(
                                        "{name} minus({n}) k={k}: {other:?}"
                                    ));
                                }
                            }
                        }
                    }
                }
                Err(_) => failures += 1,
            }
        }
        ok &= failures == 0;
        details.push(format!("{name}: {cases} cases, {failures} failures"));
    }
    (ok, details.join("; "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_criteria_pass() {
        // the cheap criteria run here; the full suite is the acceptance
        // target of the integration tests
        for id in [2, 3, 4, 7] {
            let r = run_criterion(&SuiteConfig::default(), id);
            assert!(r.passed, "criterion {id} ({}) failed: {}", r.name, r.details);
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let (cat, _) = generators::simplex_trunc(2);
        let op = std::sync::Arc::new(cat.opposite());
        let objects: Vec<usize> = op.object_ids().collect();
        let a = random_diagram(&mut SplitMix64::new(7), &op, &objects);
        let b = random_diagram(&mut SplitMix64::new(7), &op, &objects);
        assert_eq!(a, b);
    }
}
