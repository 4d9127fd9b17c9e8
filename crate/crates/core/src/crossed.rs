//! Crossed groups on a category: per-object groups acting on hom-sets with a
//! compatible presheaf structure, the twisted total category they generate,
//! recovery of a crossed group from a unique-factorization situation, and
//! the induced generalized Reedy structure on the total category.

use crate::error::{Error, Result};
use crate::fincat::{find_isomorphism, Cat, FinCategory, FunctorData, MorData, MorId, ObjId, WideSubcategory};
use crate::group::Group;
use crate::reedy::GeneralizedReedyStructure;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A crossed group on a finite category: groups G_r indexed by objects, a
/// presheaf structure α* : G_r → G_s for α: s → r, and left G_r-actions g_*
/// on the hom-sets into r.
#[derive(Debug, Clone)]
pub struct CrossedGroup {
    pub base: Cat,
    pub groups: Vec<Group>,
    /// `restriction[α][g]` = α*(g) in G_dom(α), for g in G_cod(α)
    pub restriction: Vec<Vec<usize>>,
    /// `action[α][g]` = g_*(α), for g in G_cod(α); same dom and cod as α
    pub action: Vec<Vec<MorId>>,
}

/// Which of the eight crossed-group identities failed, with the witness
/// tuple rendered readable.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossedReport {
    pub failures: Vec<String>,
}

impl CrossedReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

impl CrossedGroup {
    pub fn trivial(base: &Cat) -> Self {
        CrossedGroup {
            base: base.clone(),
            groups: base.object_ids().map(|_| Group::trivial()).collect(),
            restriction: base.morphism_ids().map(|_| vec![0]).collect(),
            action: base.morphism_ids().map(|m| vec![m]).collect(),
        }
    }

    pub fn group_at(&self, r: ObjId) -> &Group {
        &self.groups[r]
    }

    pub fn restrict(&self, alpha: MorId, g: usize) -> usize {
        self.restriction[alpha][g]
    }

    pub fn act(&self, g: usize, alpha: MorId) -> MorId {
        self.action[alpha][g]
    }

    fn check_tables(&self) -> Result<()> {
        let base = &self.base;
        if self.groups.len() != base.n_objects()
            || self.restriction.len() != base.n_morphisms()
            || self.action.len() != base.n_morphisms()
        {
            return Err(Error::MalformedCrossed("table lengths do not match the base".into()));
        }
        for (r, g) in self.groups.iter().enumerate() {
            g.validate()
                .map_err(|e| Error::MalformedCrossed(format!("group at object {r}: {e}")))?;
        }
        for alpha in base.morphism_ids() {
            let (s, r) = (base.dom(alpha), base.cod(alpha));
            if self.restriction[alpha].len() != self.groups[r].order()
                || self.restriction[alpha]
                    .iter()
                    .any(|&h| h >= self.groups[s].order())
            {
                return Err(Error::MalformedCrossed(format!(
                    "restriction along {} malformed",
                    base.mor_name(alpha)
                )));
            }
            if self.action[alpha].len() != self.groups[r].order() {
                return Err(Error::MalformedCrossed(format!(
                    "action on {} malformed",
                    base.mor_name(alpha)
                )));
            }
            for &img in &self.action[alpha] {
                if img >= base.n_morphisms()
                    || base.dom(img) != s
                    || base.cod(img) != r
                {
                    return Err(Error::MalformedCrossed(format!(
                        "action image of {} leaves its hom-set",
                        base.mor_name(alpha)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks all eight identities over every applicable tuple. Failures
    /// cite the tuple; the structural tables are validated first.
    pub fn validate(&self) -> Result<CrossedReport> {
        self.check_tables()?;
        let base = &self.base;
        let mut failures = Vec::new();
        let fail = |msg: String, failures: &mut Vec<String>| {
            if failures.len() < 32 {
                failures.push(msg);
            }
        };
        for alpha in base.morphism_ids() {
            let (s, r) = (base.dom(alpha), base.cod(alpha));
            let gr = &self.groups[r];
            let gs = &self.groups[s];
            // (2) g_*(1_r) = 1_r  — only when α is an identity
            // (4) α*(e_r) = e_s
            if self.restrict(alpha, gr.unit) != gs.unit {
                fail(
                    format!("(4) {}*(e) ≠ e", base.mor_name(alpha)),
                    &mut failures,
                );
            }
            // (8) e_* = id
            if self.act(gr.unit, alpha) != alpha {
                fail(
                    format!("(8) e_*({}) ≠ {0}", base.mor_name(alpha)),
                    &mut failures,
                );
            }
            for g in 0..gr.order() {
                // (7) (gh)_* = g_* h_*
                for h in 0..gr.order() {
                    let gh = gr.mul(g, h);
                    if self.act(gh, alpha) != self.act(g, self.act(h, alpha)) {
                        fail(
                            format!(
                                "(7) (g·h)_* ≠ g_*h_* at (g={}, h={}, α={})",
                                gr.elements[g],
                                gr.elements[h],
                                base.mor_name(alpha)
                            ),
                            &mut failures,
                        );
                    }
                    // (3) α*(g·h) = (h_*(α))*(g) · α*(h)
                    let lhs = self.restrict(alpha, gr.mul(g, h));
                    let rhs = gs.mul(
                        self.restrict(self.act(h, alpha), g),
                        self.restrict(alpha, h),
                    );
                    if lhs != rhs {
                        fail(
                            format!(
                                "(3) α*(g·h) mismatch at (g={}, h={}, α={})",
                                gr.elements[g],
                                gr.elements[h],
                                base.mor_name(alpha)
                            ),
                            &mut failures,
                        );
                    }
                }
            }
        }
        for o in base.object_ids() {
            let go = &self.groups[o];
            let id = base.id(o);
            for g in 0..go.order() {
                // (2) g_*(1_r) = 1_r
                if self.act(g, id) != id {
                    fail(
                        format!("(2) {}_*(1_{o}) ≠ 1_{o}", go.elements[g]),
                        &mut failures,
                    );
                }
                // (6) 1_r^*(g) = g
                if self.restrict(id, g) != g {
                    fail(
                        format!("(6) 1_{o}*({}) moves it", go.elements[g]),
                        &mut failures,
                    );
                }
            }
        }
        for (beta, alpha) in base
            .composable_pairs()
            .collect::<Vec<_>>()
        {
            // β: t→s, α: s→r; αβ: t→r
            let ab = match base.compose(alpha, beta) {
                Some(x) => x,
                None => continue,
            };
            let r = base.cod(alpha);
            for g in 0..self.groups[r].order() {
                // (5) (αβ)*(g) = β*(α*(g))
                if self.restrict(ab, g) != self.restrict(beta, self.restrict(alpha, g)) {
                    fail(
                        format!(
                            "(5) (αβ)* ≠ β*α* at (g={}, α={}, β={})",
                            self.groups[r].elements[g],
                            base.mor_name(alpha),
                            base.mor_name(beta)
                        ),
                        &mut failures,
                    );
                }
                // (1) g_*(α∘β) = g_*(α) ∘ α*(g)_*(β)
                let lhs = self.act(g, ab);
                let rhs = base
                    .compose(self.act(g, alpha), self.act(self.restrict(alpha, g), beta))
                    .expect("composable");
                if lhs != rhs {
                    fail(
                        format!(
                            "(1) g_*(α∘β) mismatch at (g={}, α={}, β={})",
                            self.groups[r].elements[g],
                            base.mor_name(alpha),
                            base.mor_name(beta)
                        ),
                        &mut failures,
                    );
                }
            }
        }
        Ok(CrossedReport { failures })
    }
}

/// The total category of a crossed group, the embedding of the base, and the
/// special automorphisms.
#[derive(Debug, Clone)]
pub struct TotalCategory {
    pub cat: Cat,
    /// per total morphism: the pair (base morphism, group element of G_dom)
    pub pairs: Vec<(MorId, usize)>,
    /// the wide embedding α ↦ (α, e)
    pub embedding: FunctorData,
    /// per object: total-morphism ids of the special automorphisms (1_r, g),
    /// indexed by the group elements of G_r
    pub special: Vec<Vec<MorId>>,
}

impl TotalCategory {
    pub fn pair_index(&self, cat: &FinCategory, alpha: MorId, g: usize) -> MorId {
        let _ = cat;
        self.pairs
            .iter()
            .position(|&p| p == (alpha, g))
            .expect("total morphism exists")
    }
}

/// Builds the total category: morphisms r → s are pairs (α: r→s, g ∈ G_r)
/// with composition (α,g)∘(β,h) = (α·g_*(β), β*(g)·h).
pub fn total_category(crossed: &CrossedGroup) -> Result<TotalCategory> {
    let report = crossed.validate()?;
    if !report.passes() {
        return Err(Error::MalformedCrossed(format!(
            "crossed-group identities fail: {:?}",
            report.failures
        )));
    }
    let base = &crossed.base;
    let mut morphisms = Vec::new();
    let mut pairs = Vec::new();
    let mut identity = vec![usize::MAX; base.n_objects()];
    let mut index: BTreeMap<(MorId, usize), MorId> = BTreeMap::new();
    for alpha in base.morphism_ids() {
        let r = base.dom(alpha);
        for g in 0..crossed.groups[r].order() {
            let k = morphisms.len();
            morphisms.push(MorData {
                name: format!(
                    "({}|{})",
                    base.mor_name(alpha),
                    crossed.groups[r].elements[g]
                ),
                dom: r,
                cod: base.cod(alpha),
            });
            pairs.push((alpha, g));
            index.insert((alpha, g), k);
            if base.is_identity(alpha) && g == crossed.groups[r].unit {
                identity[r] = k;
            }
        }
    }
    let pairs2 = pairs.clone();
    let crossed2 = crossed.clone();
    let base2 = base.clone();
    let cat = Arc::new(FinCategory::from_compose_fn(
        base.object_names.clone(),
        morphisms,
        identity,
        move |gm, fm| {
            // (α, g) ∘ (β, h) = (α ∘ g_*(β), β*(g) · h)
            let (alpha, g) = pairs2[gm];
            let (beta, h) = pairs2[fm];
            let r = base2.dom(beta);
            let gb = crossed2.act(g, beta);
            let comp = base2.compose(alpha, gb).expect("composable");
            let elt = crossed2.groups[r].mul(crossed2.restrict(beta, g), h);
            index[&(comp, elt)]
        },
    ));
    let valid = cat.validate();
    if !valid.is_valid() {
        return Err(Error::MalformedCrossed(format!(
            "total category fails category laws: {:?}",
            valid.violations
        )));
    }
    let embedding = FunctorData::new(
        base.clone(),
        cat.clone(),
        base.object_ids().collect(),
        base.morphism_ids()
            .map(|alpha| {
                let r = base.dom(alpha);
                pairs
                    .iter()
                    .position(|&p| p == (alpha, crossed.groups[r].unit))
                    .unwrap()
            })
            .collect(),
    )?;
    let special = base
        .object_ids()
        .map(|r| {
            (0..crossed.groups[r].order())
                .map(|g| {
                    pairs
                        .iter()
                        .position(|&p| p == (base.id(r), g))
                        .unwrap()
                })
                .collect()
        })
        .collect();
    Ok(TotalCategory {
        cat,
        pairs,
        embedding,
        special,
    })
}

/// Recovers a crossed group from a wide subcategory with chosen subgroups of
/// special automorphisms, provided every morphism factors uniquely as a
/// special automorphism followed by a morphism of the subcategory. Returns
/// the crossed group on the subcategory together with the factorization data.
pub fn crossed_from_wide(
    total: &Cat,
    wide: &FunctorData,
    special: &[Vec<MorId>],
) -> Result<CrossedGroup> {
    let base = &wide.source;
    wide.validate()?;
    if special.len() != total.n_objects() {
        return Err(Error::Precondition(
            "special automorphisms must be given per object".into(),
        ));
    }
    for (o, sp) in special.iter().enumerate() {
        for &g in sp {
            if total.dom(g) != o || total.cod(g) != o || !total.is_iso(g) {
                return Err(Error::Precondition(format!(
                    "special element {} is not an automorphism of object {o}",
                    total.mor_name(g)
                )));
            }
        }
        if !sp.contains(&total.id(o)) {
            return Err(Error::Precondition(format!(
                "special subgroup at object {o} misses the identity"
            )));
        }
    }
    // unique factorization: every morphism f of the total category is
    // (wide image of α) ∘ (special g) for exactly one pair
    let factor = |f: MorId| -> Result<(MorId, usize)> {
        let mut found = Vec::new();
        for alpha in base.morphism_ids() {
            if wide.on_obj(base.dom(alpha)) != total.dom(f)
                || wide.on_obj(base.cod(alpha)) != total.cod(f)
            {
                continue;
            }
            for (gi, &g) in special[total.dom(f)].iter().enumerate() {
                if total.compose(wide.on_mor(alpha), g) == Some(f) {
                    found.push((alpha, gi));
                }
            }
        }
        match found.len() {
            1 => Ok(found[0]),
            0 => Err(Error::Precondition(format!(
                "{} admits no special-then-wide factorization",
                total.mor_name(f)
            ))),
            _ => Err(Error::Precondition(format!(
                "{} factors non-uniquely as special-then-wide",
                total.mor_name(f)
            ))),
        }
    };
    // groups: the special automorphisms under composition
    let groups: Vec<Group> = (0..total.n_objects())
        .map(|o| {
            let sp = &special[o];
            let unit = sp.iter().position(|&g| total.is_identity(g)).unwrap();
            let mult = sp
                .iter()
                .map(|&a| {
                    sp.iter()
                        .map(|&b| {
                            let ab = total.compose(a, b).expect("endos compose");
                            sp.iter()
                                .position(|&c| c == ab)
                                .expect("special subgroup closed under composition")
                        })
                        .collect()
                })
                .collect();
            Group {
                elements: sp.iter().map(|&g| total.mor_name(g).to_string()).collect(),
                mult,
                unit,
            }
        })
        .collect();
    // α*(g) and g_*(α) by factoring g∘(wide α) uniquely
    let mut restriction = Vec::new();
    let mut action = Vec::new();
    for alpha in base.morphism_ids() {
        let r = base.cod(alpha);
        let mut res_row = Vec::new();
        let mut act_row = Vec::new();
        for &g in &special[wide.on_obj(r)] {
            let composite = total
                .compose(g, wide.on_mor(alpha))
                .expect("composable");
            let (beta, h) = factor(composite)?;
            res_row.push(h);
            act_row.push(beta);
        }
        restriction.push(res_row);
        action.push(act_row);
    }
    let crossed = CrossedGroup {
        base: base.clone(),
        groups,
        restriction,
        action,
    };
    let report = crossed.validate()?;
    if !report.passes() {
        return Err(Error::MalformedCrossed(format!(
            "recovered data violates the crossed identities: {:?}",
            report.failures
        )));
    }
    Ok(crossed)
}

/// The canonical comparison: total_category(crossed_from_wide(...)) must be
/// isomorphic to the original category under the base. Returns the explicit
/// isomorphism data.
pub fn verify_total_reconstruction(total: &Cat, rebuilt: &TotalCategory) -> bool {
    find_isomorphism(total, &rebuilt.cat).is_some()
}

/// Compatibility of a crossed group with a generalized Reedy structure on
/// its base, and the induced structure on the total category. The base must
/// be strict.
pub fn compatibility_and_induced(
    crossed: &CrossedGroup,
    s: &GeneralizedReedyStructure,
    total: &TotalCategory,
) -> Result<GeneralizedReedyStructure> {
    if !s.category.same_shape(&crossed.base) {
        return Err(Error::Precondition("structure lives on another base".into()));
    }
    let base_report = s.validate_reedy(true);
    if !base_report.passes() || !base_report.strict {
        return Err(Error::Precondition(
            "induced structure requires a strict base".into(),
        ));
    }
    let base = &crossed.base;
    // compatibility (i): the action respects plus and minus
    for alpha in base.morphism_ids() {
        let r = base.cod(alpha);
        for g in 0..crossed.groups[r].order() {
            let image = crossed.act(g, alpha);
            if s.plus.contains(alpha) && !s.plus.contains(image) {
                return Err(Error::Precondition(format!(
                    "compatibility (i) fails: {}_*({}) leaves plus",
                    crossed.groups[r].elements[g],
                    base.mor_name(alpha)
                )));
            }
            if s.minus.contains(alpha) && !s.minus.contains(image) {
                return Err(Error::Precondition(format!(
                    "compatibility (i) fails: {}_*({}) leaves minus",
                    crossed.groups[r].elements[g],
                    base.mor_name(alpha)
                )));
            }
        }
    }
    // compatibility (ii): α ∈ minus with α*(g) = e and g_*(α) = α forces g = e
    for alpha in base.morphism_ids() {
        if !s.minus.contains(alpha) {
            continue;
        }
        let (sdom, r) = (base.dom(alpha), base.cod(alpha));
        for g in 0..crossed.groups[r].order() {
            if crossed.restrict(alpha, g) == crossed.groups[sdom].unit
                && crossed.act(g, alpha) == alpha
                && g != crossed.groups[r].unit
            {
                return Err(Error::Precondition(format!(
                    "compatibility (ii) fails at (g={}, α={})",
                    crossed.groups[r].elements[g],
                    base.mor_name(alpha)
                )));
            }
        }
    }
    // induced structure: (α, g) is in plus/minus exactly when α is
    let plus = WideSubcategory::from_predicate(&total.cat, |m| s.plus.contains(total.pairs[m].0));
    let minus =
        WideSubcategory::from_predicate(&total.cat, |m| s.minus.contains(total.pairs[m].0));
    let induced = GeneralizedReedyStructure::new(
        total.cat.clone(),
        s.degree.clone(),
        plus,
        minus,
    )?;
    let report = induced.validate_reedy(true);
    if !report.passes() {
        return Err(Error::MalformedReedy(format!(
            "induced structure fails the axioms: {report:?}"
        )));
    }
    Ok(induced)
}

/// Crossed-group file format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossedJson {
    pub groups: BTreeMap<String, GroupJson>,
    pub restrictions: BTreeMap<String, Vec<usize>>,
    pub actions: BTreeMap<String, BTreeMap<String, Vec<usize>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupJson {
    pub elements: Vec<String>,
    pub mult: Vec<Vec<usize>>,
    pub unit: usize,
}

pub fn crossed_to_json(c: &CrossedGroup) -> CrossedJson {
    let base = &c.base;
    let groups = c
        .groups
        .iter()
        .enumerate()
        .map(|(o, g)| {
            (
                o.to_string(),
                GroupJson {
                    elements: g.elements.clone(),
                    mult: g.mult.clone(),
                    unit: g.unit,
                },
            )
        })
        .collect();
    let restrictions = base
        .morphism_ids()
        .map(|m| (m.to_string(), c.restriction[m].clone()))
        .collect();
    // per object: per group element, the permutation of the hom-set lists
    // with codomain at that object, in morphism-id order
    let mut actions: BTreeMap<String, BTreeMap<String, Vec<usize>>> = BTreeMap::new();
    for r in base.object_ids() {
        let into: Vec<MorId> = base
            .morphism_ids()
            .filter(|&m| base.cod(m) == r)
            .collect();
        let mut per_elt = BTreeMap::new();
        for g in 0..c.groups[r].order() {
            per_elt.insert(
                c.groups[r].elements[g].clone(),
                into.iter().map(|&m| c.act(g, m)).collect(),
            );
        }
        actions.insert(r.to_string(), per_elt);
    }
    CrossedJson {
        groups,
        restrictions,
        actions,
    }
}

pub fn crossed_from_json(base: &Cat, json: &CrossedJson) -> Result<CrossedGroup> {
    let mut groups = Vec::new();
    for o in base.object_ids() {
        let gj = json
            .groups
            .get(&o.to_string())
            .ok_or_else(|| Error::MalformedCrossed(format!("missing group at object {o}")))?;
        groups.push(Group {
            elements: gj.elements.clone(),
            mult: gj.mult.clone(),
            unit: gj.unit,
        });
    }
    let mut restriction = Vec::new();
    for m in base.morphism_ids() {
        let row = json
            .restrictions
            .get(&m.to_string())
            .ok_or_else(|| Error::MalformedCrossed(format!("missing restriction at {m}")))?;
        restriction.push(row.clone());
    }
    // action rows recovered from the per-object tables
    let mut action = vec![Vec::new(); base.n_morphisms()];
    for r in base.object_ids() {
        let into: Vec<MorId> = base
            .morphism_ids()
            .filter(|&m| base.cod(m) == r)
            .collect();
        let per_elt = json
            .actions
            .get(&r.to_string())
            .ok_or_else(|| Error::MalformedCrossed(format!("missing actions at object {r}")))?;
        for g in 0..groups[r].order() {
            let row = per_elt.get(&groups[r].elements[g]).ok_or_else(|| {
                Error::MalformedCrossed(format!("missing action row for element {g} at {r}"))
            })?;
            if row.len() != into.len() {
                return Err(Error::MalformedCrossed(format!(
                    "action row at object {r} has wrong length"
                )));
            }
            for (k, &m) in into.iter().enumerate() {
                if action[m].len() != g {
                    // rows are filled in group-element order
                    return Err(Error::MalformedCrossed(
                        "action rows out of order".into(),
                    ));
                }
                action[m].push(row[k]);
            }
        }
    }
    let crossed = CrossedGroup {
        base: base.clone(),
        groups,
        restriction,
        action,
    };
    crossed.check_tables()?;
    Ok(crossed)
}
