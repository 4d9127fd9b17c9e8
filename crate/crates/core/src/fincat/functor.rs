//! Functors between finite categories, comma categories, (co)fibered
//! detection, pullbacks of categories, and isomorphism search.

use super::{Cat, FinCategory, MorData, MorId, ObjId};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// A functor given by explicit object and morphism maps.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctorData {
    #[serde(skip, default = "empty_cat")]
    pub source: Cat,
    #[serde(skip, default = "empty_cat")]
    pub target: Cat,
    pub obj_map: Vec<ObjId>,
    pub mor_map: Vec<MorId>,
}

fn empty_cat() -> Cat {
    Arc::new(FinCategory::terminal())
}

impl FunctorData {
    pub fn identity(cat: &Cat) -> Self {
        FunctorData {
            source: cat.clone(),
            target: cat.clone(),
            obj_map: cat.object_ids().collect(),
            mor_map: cat.morphism_ids().collect(),
        }
    }

    pub fn new(source: Cat, target: Cat, obj_map: Vec<ObjId>, mor_map: Vec<MorId>) -> Result<Self> {
        let f = FunctorData {
            source,
            target,
            obj_map,
            mor_map,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn on_obj(&self, o: ObjId) -> ObjId {
        self.obj_map[o]
    }

    pub fn on_mor(&self, m: MorId) -> MorId {
        self.mor_map[m]
    }

    /// Checks identity/endpoint/composition preservation exhaustively.
    pub fn validate(&self) -> Result<()> {
        if self.obj_map.len() != self.source.n_objects()
            || self.mor_map.len() != self.source.n_morphisms()
        {
            return Err(Error::MalformedFunctor("map tables have wrong length".into()));
        }
        if self.obj_map.iter().any(|&o| o >= self.target.n_objects())
            || self.mor_map.iter().any(|&m| m >= self.target.n_morphisms())
        {
            return Err(Error::MalformedFunctor("map tables out of range".into()));
        }
        for f in self.source.morphism_ids() {
            let img = self.on_mor(f);
            if self.target.dom(img) != self.on_obj(self.source.dom(f))
                || self.target.cod(img) != self.on_obj(self.source.cod(f))
            {
                return Err(Error::MalformedFunctor(format!(
                    "endpoints not preserved at {}",
                    self.source.mor_name(f)
                )));
            }
        }
        for o in self.source.object_ids() {
            if self.on_mor(self.source.id(o)) != self.target.id(self.on_obj(o)) {
                return Err(Error::MalformedFunctor(format!(
                    "identity of {} not preserved",
                    self.source.object_names[o]
                )));
            }
        }
        for (g, f) in self.source.composable_pairs() {
            if let Some(gf) = self.source.compose(g, f) {
                let lhs = self.on_mor(gf);
                let rhs = self.target.compose(self.on_mor(g), self.on_mor(f));
                if rhs != Some(lhs) {
                    return Err(Error::MalformedFunctor(format!(
                        "composition not preserved at ({}, {})",
                        self.source.mor_name(g),
                        self.source.mor_name(f)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Compose functors: self after other.
    pub fn after(&self, other: &FunctorData) -> FunctorData {
        debug_assert!(other.target.same_shape(&self.source));
        FunctorData {
            source: other.source.clone(),
            target: self.target.clone(),
            obj_map: other.obj_map.iter().map(|&o| self.on_obj(o)).collect(),
            mor_map: other.mor_map.iter().map(|&m| self.on_mor(m)).collect(),
        }
    }

    /// The same functor viewed between the opposite categories.
    pub fn opposite(&self, op_source: &Cat, op_target: &Cat) -> FunctorData {
        debug_assert!(op_source.same_shape(&self.source.opposite()));
        debug_assert!(op_target.same_shape(&self.target.opposite()));
        FunctorData {
            source: op_source.clone(),
            target: op_target.clone(),
            obj_map: self.obj_map.clone(),
            mor_map: self.mor_map.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommaSide {
    /// φ/c: objects (d, u: φ(d) → c)
    Over,
    /// c/φ: objects (d, u: c → φ(d))
    Under,
}

/// A comma category φ/c (or c/φ) together with bookkeeping to find objects.
#[derive(Debug, Clone)]
pub struct CommaCategory {
    pub cat: Cat,
    /// objects as pairs (source object d, morphism u of the target category)
    pub objects: Vec<(ObjId, MorId)>,
    object_lookup: std::collections::BTreeMap<(ObjId, MorId), usize>,
    /// the projection π_c to the source of φ
    pub projection: FunctorData,
}

impl CommaCategory {
    pub fn object_index(&self, d: ObjId, u: MorId) -> Option<usize> {
        self.object_lookup.get(&(d, u)).copied()
    }
}

/// Builds the comma category of a functor at an object of its target.
///
/// For `Over`, objects are pairs (d, u: φ(d)→c) and morphisms (d,u)→(d',u')
/// are f: d→d' with u'∘φ(f) = u; `Under` is dual.
pub fn comma_category(phi: &FunctorData, c: ObjId, side: CommaSide) -> CommaCategory {
    let src = &phi.source;
    let tgt = &phi.target;
    let mut objects: Vec<(ObjId, MorId)> = Vec::new();
    for d in src.object_ids() {
        let homs = match side {
            CommaSide::Over => tgt.hom(phi.on_obj(d), c),
            CommaSide::Under => tgt.hom(c, phi.on_obj(d)),
        };
        for &u in homs {
            objects.push((d, u));
        }
    }
    // morphisms: pairs (source morphism f, from-object index, to-object index)
    let mut morphisms: Vec<MorData> = Vec::new();
    let mut underlying: Vec<MorId> = Vec::new();
    let mut identity = vec![usize::MAX; objects.len()];
    for (i, &(d, u)) in objects.iter().enumerate() {
        for (j, &(d2, u2)) in objects.iter().enumerate() {
            for &f in src.hom(d, d2) {
                let commutes = match side {
                    CommaSide::Over => tgt.compose(u2, phi.on_mor(f)) == Some(u),
                    CommaSide::Under => tgt.compose(phi.on_mor(f), u) == Some(u2),
                };
                if commutes {
                    let k = morphisms.len();
                    morphisms.push(MorData {
                        name: format!("{}@{}→{}", src.mor_name(f), i, j),
                        dom: i,
                        cod: j,
                    });
                    underlying.push(f);
                    if i == j && src.is_identity(f) {
                        identity[i] = k;
                    }
                }
            }
        }
    }
    let index: std::collections::BTreeMap<(usize, usize, MorId), MorId> = morphisms
        .iter()
        .enumerate()
        .map(|(k, m)| ((m.dom, m.cod, underlying[k]), k))
        .collect();
    let ul = underlying.clone();
    let morphs = morphisms.clone();
    let src2 = src.clone();
    let cat = FinCategory::from_compose_fn(
        objects
            .iter()
            .map(|&(d, u)| format!("({},{})", src.object_names[d], tgt.mor_name(u)))
            .collect(),
        morphisms,
        identity,
        |g, f| {
            let comp = src2.compose(ul[g], ul[f]).expect("composable in source");
            *index
                .get(&(morphs[f].dom, morphs[g].cod, comp))
                .expect("comma category closed under composition")
        },
    );
    let cat = Arc::new(cat);
    let projection = FunctorData {
        source: cat.clone(),
        target: phi.source.clone(),
        obj_map: objects.iter().map(|&(d, _)| d).collect(),
        mor_map: underlying,
    };
    let object_lookup = objects
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i))
        .collect();
    CommaCategory {
        cat,
        objects,
        object_lookup,
        projection,
    }
}

/// Is f cocartesian for φ? Exhaustive check of the universal property.
pub fn is_cocartesian(phi: &FunctorData, f: MorId) -> bool {
    let src = &phi.source;
    let tgt = &phi.target;
    let d = src.dom(f);
    let d1 = src.cod(f);
    for d2 in src.object_ids() {
        for &g in src.hom(d, d2) {
            for &h in tgt.hom(phi.on_obj(d1), phi.on_obj(d2)) {
                if tgt.compose(h, phi.on_mor(f)) != Some(phi.on_mor(g)) {
                    continue;
                }
                let lifts: Vec<MorId> = src
                    .hom(d1, d2)
                    .iter()
                    .copied()
                    .filter(|&k| src.compose(k, f) == Some(g) && phi.on_mor(k) == h)
                    .collect();
                if lifts.len() != 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// Is f cartesian for φ? Dual of the above.
pub fn is_cartesian(phi: &FunctorData, f: MorId) -> bool {
    let src = &phi.source;
    let tgt = &phi.target;
    let d1 = src.dom(f);
    let d = src.cod(f);
    for d2 in src.object_ids() {
        for &g in src.hom(d2, d) {
            for &h in tgt.hom(phi.on_obj(d2), phi.on_obj(d1)) {
                if tgt.compose(phi.on_mor(f), h) != Some(phi.on_mor(g)) {
                    continue;
                }
                let lifts: Vec<MorId> = src
                    .hom(d2, d1)
                    .iter()
                    .copied()
                    .filter(|&k| src.compose(f, k) == Some(g) && phi.on_mor(k) == h)
                    .collect();
                if lifts.len() != 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// Cocartesian lifts exist for all morphisms under all fibers, and
/// cocartesian morphisms compose.
pub fn is_cofibered(phi: &FunctorData) -> bool {
    let src = &phi.source;
    let tgt = &phi.target;
    let cocart: Vec<bool> = src.morphism_ids().map(|f| is_cocartesian(phi, f)).collect();
    for d in src.object_ids() {
        for m in tgt.morphism_ids() {
            if tgt.dom(m) != phi.on_obj(d) {
                continue;
            }
            let found = src
                .morphism_ids()
                .any(|f| src.dom(f) == d && phi.on_mor(f) == m && cocart[f]);
            if !found {
                return false;
            }
        }
    }
    for (g, f) in src.composable_pairs() {
        if let Some(gf) = src.compose(g, f) {
            if cocart[g] && cocart[f] && !cocart[gf] {
                return false;
            }
        }
    }
    true
}

pub fn is_fibered(phi: &FunctorData) -> bool {
    let src = &phi.source;
    let tgt = &phi.target;
    let cart: Vec<bool> = src.morphism_ids().map(|f| is_cartesian(phi, f)).collect();
    for d in src.object_ids() {
        for m in tgt.morphism_ids() {
            if tgt.cod(m) != phi.on_obj(d) {
                continue;
            }
            let found = src
                .morphism_ids()
                .any(|f| src.cod(f) == d && phi.on_mor(f) == m && cart[f]);
            if !found {
                return false;
            }
        }
    }
    for (g, f) in src.composable_pairs() {
        if let Some(gf) = src.compose(g, f) {
            if cart[g] && cart[f] && !cart[gf] {
                return false;
            }
        }
    }
    true
}

/// Checks that a commuting square of functors
///
/// ```text
///        beta
///   D' ------> D
///   |          |
///   | psi      | phi
///   v   alpha  v
///   C' ------> C
/// ```
///
/// is a pullback of categories: D' must be isomorphic, over the cospan, to
/// the category of pairs (object of C', object of D) agreeing in C.
pub fn is_pullback_square(
    beta: &FunctorData,
    psi: &FunctorData,
    alpha: &FunctorData,
    phi: &FunctorData,
) -> bool {
    let dprime = &psi.source;
    // commutativity
    for o in dprime.object_ids() {
        if alpha.on_obj(psi.on_obj(o)) != phi.on_obj(beta.on_obj(o)) {
            return false;
        }
    }
    for m in dprime.morphism_ids() {
        if alpha.on_mor(psi.on_mor(m)) != phi.on_mor(beta.on_mor(m)) {
            return false;
        }
    }
    // objects of the pullback = pairs (c', d) with alpha(c') = phi(d)
    let cprime = &alpha.source;
    let d_cat = &phi.source;
    let mut pair_objects = Vec::new();
    for c in cprime.object_ids() {
        for d in d_cat.object_ids() {
            if alpha.on_obj(c) == phi.on_obj(d) {
                pair_objects.push((c, d));
            }
        }
    }
    if pair_objects.len() != dprime.n_objects() {
        return false;
    }
    // the canonical functor d' |-> (psi d', beta d') must be bijective on
    // objects and morphisms
    let mut seen = vec![false; pair_objects.len()];
    for o in dprime.object_ids() {
        let pair = (psi.on_obj(o), beta.on_obj(o));
        match pair_objects.iter().position(|&p| p == pair) {
            Some(i) if !seen[i] => seen[i] = true,
            _ => return false,
        }
    }
    // morphisms of the pullback = pairs (m', m) agreeing in C, between pairs
    let mut n_pair_mors = 0usize;
    for m1 in cprime.morphism_ids() {
        for m2 in d_cat.morphism_ids() {
            if alpha.on_mor(m1) == phi.on_mor(m2)
                && alpha.on_obj(cprime.dom(m1)) == phi.on_obj(d_cat.dom(m2))
                && alpha.on_obj(cprime.cod(m1)) == phi.on_obj(d_cat.cod(m2))
            {
                n_pair_mors += 1;
            }
        }
    }
    if n_pair_mors != dprime.n_morphisms() {
        return false;
    }
    let mut seen_m = std::collections::BTreeSet::new();
    for m in dprime.morphism_ids() {
        let pair = (psi.on_mor(m), beta.on_mor(m));
        if !seen_m.insert(pair) {
            return false;
        }
    }
    true
}

/// Exhaustive isomorphism-of-categories search, pruned by hom-set size
/// profiles. Instances here are tiny; determinism beats cleverness.
pub fn find_isomorphism(a: &FinCategory, b: &FinCategory) -> Option<(Vec<ObjId>, Vec<MorId>)> {
    if a.n_objects() != b.n_objects() || a.n_morphisms() != b.n_morphisms() {
        return None;
    }
    let n = a.n_objects();
    let mut obj_map: Vec<Option<ObjId>> = vec![None; n];
    let mut used = vec![false; n];
    fn profile(c: &FinCategory, o: ObjId) -> Vec<usize> {
        let mut p: Vec<usize> = c.object_ids().map(|t| c.hom(o, t).len()).collect();
        p.extend(c.object_ids().map(|t| c.hom(t, o).len()));
        p.sort();
        p
    }
    let pa: Vec<Vec<usize>> = a.object_ids().map(|o| profile(a, o)).collect();
    let pb: Vec<Vec<usize>> = b.object_ids().map(|o| profile(b, o)).collect();

    fn try_objects(
        a: &FinCategory,
        b: &FinCategory,
        pa: &[Vec<usize>],
        pb: &[Vec<usize>],
        obj_map: &mut Vec<Option<ObjId>>,
        used: &mut Vec<bool>,
    ) -> Option<Vec<MorId>> {
        let o = match (0..a.n_objects()).find(|&o| obj_map[o].is_none()) {
            Some(o) => o,
            None => {
                let objs: Vec<ObjId> = obj_map.iter().map(|x| x.unwrap()).collect();
                return try_morphisms(a, b, &objs);
            }
        };
        for t in 0..b.n_objects() {
            if used[t] || pa[o] != pb[t] {
                continue;
            }
            // hom sizes against already-assigned objects must match
            let ok = (0..a.n_objects()).all(|o2| match obj_map[o2] {
                Some(t2) => {
                    a.hom(o, o2).len() == b.hom(t, t2).len()
                        && a.hom(o2, o).len() == b.hom(t2, t).len()
                }
                None => true,
            });
            if !ok {
                continue;
            }
            obj_map[o] = Some(t);
            used[t] = true;
            if let Some(m) = try_objects(a, b, pa, pb, obj_map, used) {
                return Some(m);
            }
            obj_map[o] = None;
            used[t] = false;
        }
        None
    }

    fn try_morphisms(a: &FinCategory, b: &FinCategory, objs: &[ObjId]) -> Option<Vec<MorId>> {
        let mut mor_map: Vec<Option<MorId>> = vec![None; a.n_morphisms()];
        let mut used = vec![false; b.n_morphisms()];
        for o in a.object_ids() {
            mor_map[a.id(o)] = Some(b.id(objs[o]));
            used[b.id(objs[o])] = true;
        }
        backtrack_mors(a, b, objs, &mut mor_map, &mut used)
    }

    fn backtrack_mors(
        a: &FinCategory,
        b: &FinCategory,
        objs: &[ObjId],
        mor_map: &mut Vec<Option<MorId>>,
        used: &mut Vec<bool>,
    ) -> Option<Vec<MorId>> {
        let f = match (0..a.n_morphisms()).find(|&f| mor_map[f].is_none()) {
            Some(f) => f,
            None => {
                let map: Vec<MorId> = mor_map.iter().map(|x| x.unwrap()).collect();
                // full composition check
                for g in a.morphism_ids() {
                    for h in a.morphism_ids() {
                        if let Some(gh) = a.compose(g, h) {
                            if b.compose(map[g], map[h]) != Some(map[gh]) {
                                return None;
                            }
                        }
                    }
                }
                return Some(map);
            }
        };
        for &t in b.hom(objs[a.dom(f)], objs[a.cod(f)]) {
            if used[t] {
                continue;
            }
            // partial consistency: compositions with already-mapped morphisms
            let consistent = (0..a.n_morphisms()).all(|g| match mor_map[g] {
                None => true,
                Some(tg) => {
                    let c1 = match a.compose(f, g) {
                        Some(fg) => match mor_map[fg] {
                            Some(tfg) => b.compose(t, tg) == Some(tfg),
                            None => b.compose(t, tg).is_some(),
                        },
                        None => true,
                    };
                    let c2 = match a.compose(g, f) {
                        Some(gf) => match mor_map[gf] {
                            Some(tgf) => b.compose(tg, t) == Some(tgf),
                            None => b.compose(tg, t).is_some(),
                        },
                        None => true,
                    };
                    c1 && c2
                }
            });
            if !consistent {
                continue;
            }
            mor_map[f] = Some(t);
            used[t] = true;
            if let Some(m) = backtrack_mors(a, b, objs, mor_map, used) {
                return Some(m);
            }
            mor_map[f] = None;
            used[t] = false;
        }
        None
    }

    try_objects(a, b, &pa, &pb, &mut obj_map, &mut used).map(|mors| {
        let objs: Vec<ObjId> = obj_map.into_iter().map(|x| x.unwrap()).collect();
        (objs, mors)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn comma_over_identity_on_terminal_is_terminal() {
        let t = Arc::new(FinCategory::terminal());
        let id = FunctorData::identity(&t);
        let comma = comma_category(&id, 0, CommaSide::Over);
        assert_eq!(comma.cat.n_objects(), 1);
        assert_eq!(comma.cat.n_morphisms(), 1);
        assert!(comma.cat.validate().is_valid());
    }

    #[test]
    fn comma_of_truncation_embedding_counts() {
        // t1: Δ≤1 ↪ Δ≤2 at c=[2], over: objects are maps [m]→[2], m≤1:
        // |Hom([0],[2])| + |Hom([1],[2])| = 3 + 6 = 9
        let (d2, _) = generators::simplex_trunc(2);
        let (d1, _) = generators::simplex_trunc(1);
        let t1 = generators::truncation_embedding(&d1, &d2);
        let comma = comma_category(&t1, 2, CommaSide::Over);
        assert_eq!(comma.cat.n_objects(), 9);
        assert!(comma.cat.validate().is_valid());
        comma.projection.validate().unwrap();
    }

    #[test]
    fn comma_object_count_is_hom_sum() {
        let (d2, _) = generators::simplex_trunc(2);
        let id = FunctorData::identity(&d2);
        for c in d2.object_ids() {
            let comma = comma_category(&id, c, CommaSide::Over);
            let expected: usize = d2.object_ids().map(|d| d2.hom(d, c).len()).sum();
            assert_eq!(comma.cat.n_objects(), expected);
        }
    }

    #[test]
    fn under_comma_of_embedding() {
        // side=under with a full embedding: objects are morphisms out of c
        let (d1, _) = generators::simplex_trunc(1);
        let id = FunctorData::identity(&d1);
        let comma = comma_category(&id, 0, CommaSide::Under);
        let expected: usize = d1.object_ids().map(|d| d1.hom(0, d).len()).sum();
        assert_eq!(comma.cat.n_objects(), expected);
        assert!(comma.cat.validate().is_valid());
    }

    #[test]
    fn projection_of_product_is_cofibered_and_fibered() {
        // projections of a product category have constant fibers, so they
        // are simultaneously cofibered and fibered
        let (_, s1) = generators::simplex_trunc(1);
        let (_, sg) = generators::group_category(&crate::group::Group::cyclic(2), 1);
        let (_, proj_a, proj_b) = generators::product_structure(&s1, &sg);
        assert!(is_cofibered(&proj_a));
        assert!(is_fibered(&proj_a));
        assert!(is_cofibered(&proj_b));
        assert!(is_fibered(&proj_b));
    }

    #[test]
    fn identity_square_is_pullback() {
        let (d1, _) = generators::simplex_trunc(1);
        let id = FunctorData::identity(&d1);
        assert!(is_pullback_square(&id, &id, &id, &id));
    }

    #[test]
    fn iso_search_finds_self_isomorphism() {
        let (d1, _) = generators::simplex_trunc(1);
        let found = find_isomorphism(&d1, &d1).expect("self iso");
        assert_eq!(found.0.len(), d1.n_objects());
        let (c2, _) = generators::cyclic_trunc(1);
        assert!(find_isomorphism(&d1, &c2).is_none());
    }
}
