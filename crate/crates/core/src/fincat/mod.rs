//! Finite categories as explicit composition tables.
//!
//! Objects and morphisms are dense integer indices. Composition is stored as
//! a dense table for small categories (O(1) lookup keeps brute-force law
//! checks over all composable triples cheap) and as sorted sparse rows for
//! the larger constructed categories (degree slices of the bigger corpus
//! members), where a dense table would not fit.

mod functor;
mod grothendieck;
mod json;

pub use functor::{
    comma_category, find_isomorphism, is_cartesian, is_cocartesian, is_cofibered, is_fibered,
    is_pullback_square, CommaCategory, CommaSide, FunctorData,
};
pub use grothendieck::{constant_fiber, grothendieck, GrothendieckData, GrothendieckResult};
pub use json::{category_from_json, category_to_json, CategoryJson};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

pub type ObjId = usize;
pub type MorId = usize;

const DENSE_LIMIT: usize = 2048;
const UNDEF: u32 = u32::MAX;

#[derive(Debug, Clone)]
enum CompTable {
    Dense { n: usize, table: Vec<u32> },
    Sparse { rows: Vec<Vec<(u32, u32)>> },
}

impl CompTable {
    fn get(&self, g: MorId, f: MorId) -> Option<MorId> {
        match self {
            CompTable::Dense { n, table } => {
                let v = table[g * n + f];
                if v == UNDEF {
                    None
                } else {
                    Some(v as MorId)
                }
            }
            CompTable::Sparse { rows } => rows[g]
                .binary_search_by_key(&(f as u32), |&(k, _)| k)
                .ok()
                .map(|i| rows[g][i].1 as MorId),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorData {
    pub name: String,
    pub dom: ObjId,
    pub cod: ObjId,
}

/// A finite category: object names, morphism list, identity table, and the
/// composition table `comp(g, f) = g∘f`, defined exactly when
/// `cod(f) = dom(g)`.
#[derive(Debug, Clone)]
pub struct FinCategory {
    pub object_names: Vec<String>,
    pub morphisms: Vec<MorData>,
    pub identity: Vec<MorId>,
    comp: CompTable,
    hom_index: std::sync::OnceLock<Vec<Vec<Vec<MorId>>>>,
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        self.object_names == other.object_names
            && self.morphisms == other.morphisms
            && self.identity == other.identity
            && self.same_composition(other)
    }
}
impl Eq for FinCategory {}

/// One violation found while validating a composition table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum CategoryViolation {
    MissingComposite { g: String, f: String },
    WrongEndpoints { g: String, f: String, gf: String },
    LeftUnit { f: String },
    RightUnit { f: String },
    Associativity { h: String, g: String, f: String },
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<CategoryViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Iso/mono/epi flags for a morphism, decided by exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismClass {
    pub iso: bool,
    pub mono: bool,
    pub epi: bool,
    pub split_mono: bool,
    pub split_epi: bool,
}

fn make_table(n_mor: usize, pairs: &[(MorId, MorId, MorId)]) -> CompTable {
    if n_mor <= DENSE_LIMIT {
        let mut table = vec![UNDEF; n_mor * n_mor];
        for &(g, f, gf) in pairs {
            table[g * n_mor + f] = gf as u32;
        }
        CompTable::Dense { n: n_mor, table }
    } else {
        let mut rows: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n_mor];
        for &(g, f, gf) in pairs {
            rows[g].push((f as u32, gf as u32));
        }
        for row in rows.iter_mut() {
            row.sort_unstable();
        }
        CompTable::Sparse { rows }
    }
}

impl FinCategory {
    /// Builds a category from raw tables. `pairs` lists composable pairs with
    /// their composites; pairs not listed are undefined (and will be reported
    /// by `validate`).
    pub fn from_tables(
        object_names: Vec<String>,
        morphisms: Vec<MorData>,
        identity: Vec<MorId>,
        pairs: &[(MorId, MorId, MorId)],
    ) -> Result<Self> {
        let n_obj = object_names.len();
        let n_mor = morphisms.len();
        for (i, m) in morphisms.iter().enumerate() {
            if m.dom >= n_obj || m.cod >= n_obj {
                return Err(Error::MalformedCategory(format!(
                    "morphism {i} ({}) has out-of-range endpoints",
                    m.name
                )));
            }
        }
        if identity.len() != n_obj {
            return Err(Error::MalformedCategory(
                "identity table length differs from object count".into(),
            ));
        }
        for (o, &id) in identity.iter().enumerate() {
            if id >= n_mor {
                return Err(Error::MalformedCategory(format!(
                    "identity of object {o} out of range"
                )));
            }
            if morphisms[id].dom != o || morphisms[id].cod != o {
                return Err(Error::MalformedCategory(format!(
                    "identity of object {o} is not an endomorphism of it"
                )));
            }
        }
        for &(g, f, gf) in pairs {
            if g >= n_mor || f >= n_mor || gf >= n_mor {
                return Err(Error::MalformedCategory(format!(
                    "composition entry ({g},{f},{gf}) out of range"
                )));
            }
            if morphisms[f].cod != morphisms[g].dom {
                return Err(Error::MalformedCategory(format!(
                    "composition entry ({g},{f}) is not composable: cod({}) != dom({})",
                    morphisms[f].name, morphisms[g].name
                )));
            }
        }
        Ok(FinCategory {
            object_names,
            comp: make_table(n_mor, pairs),
            morphisms,
            identity,
            hom_index: std::sync::OnceLock::new(),
        })
    }

    /// Builds a category, deriving the composition table from a closure; the
    /// closure is called once per composable pair.
    pub fn from_compose_fn(
        object_names: Vec<String>,
        morphisms: Vec<MorData>,
        identity: Vec<MorId>,
        compose: impl Fn(MorId, MorId) -> MorId,
    ) -> Self {
        let n_obj = object_names.len();
        let mut into: Vec<Vec<MorId>> = vec![Vec::new(); n_obj];
        let mut out_of: Vec<Vec<MorId>> = vec![Vec::new(); n_obj];
        for (m, data) in morphisms.iter().enumerate() {
            into[data.cod].push(m);
            out_of[data.dom].push(m);
        }
        let mut pairs = Vec::new();
        for mid in 0..n_obj {
            for &f in &into[mid] {
                for &g in &out_of[mid] {
                    pairs.push((g, f, compose(g, f)));
                }
            }
        }
        FinCategory::from_tables(object_names, morphisms, identity, &pairs)
            .expect("compose function produced out-of-range entries")
    }

    pub fn terminal() -> Self {
        FinCategory::from_tables(
            vec!["*".into()],
            vec![MorData {
                name: "id".into(),
                dom: 0,
                cod: 0,
            }],
            vec![0],
            &[(0, 0, 0)],
        )
        .unwrap()
    }

    pub fn n_objects(&self) -> usize {
        self.object_names.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn dom(&self, f: MorId) -> ObjId {
        self.morphisms[f].dom
    }

    pub fn cod(&self, f: MorId) -> ObjId {
        self.morphisms[f].cod
    }

    pub fn mor_name(&self, f: MorId) -> &str {
        &self.morphisms[f].name
    }

    pub fn id(&self, o: ObjId) -> MorId {
        self.identity[o]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identity[self.dom(f)] == f
    }

    /// g∘f, defined when cod(f) = dom(g).
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.comp.get(g, f)
    }

    /// All morphisms from a to b, in index order.
    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        let table = self.hom_index.get_or_init(|| {
            let mut t = vec![vec![Vec::new(); self.n_objects()]; self.n_objects()];
            for (f, m) in self.morphisms.iter().enumerate() {
                t[m.dom][m.cod].push(f);
            }
            t
        });
        &table[a][b]
    }

    pub fn morphism_ids(&self) -> std::ops::Range<MorId> {
        0..self.n_morphisms()
    }

    pub fn object_ids(&self) -> std::ops::Range<ObjId> {
        0..self.n_objects()
    }

    /// Iterates every composable pair (g, f) with cod(f) = dom(g), once each.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (MorId, MorId)> + '_ {
        self.object_ids().flat_map(move |mid| {
            self.object_ids().flat_map(move |a| {
                self.object_ids().flat_map(move |b| {
                    self.hom(a, mid).iter().flat_map(move |&f| {
                        self.hom(mid, b).iter().map(move |&g| (g, f))
                    })
                })
            })
        })
    }

    /// Lists every violated totality/unit/associativity instance; the empty
    /// report means the tables form a category.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (g, f) in self.composable_pairs() {
            match self.compose(g, f) {
                None => report.violations.push(CategoryViolation::MissingComposite {
                    g: self.mor_name(g).into(),
                    f: self.mor_name(f).into(),
                }),
                Some(gf) => {
                    if self.dom(gf) != self.dom(f) || self.cod(gf) != self.cod(g) {
                        report.violations.push(CategoryViolation::WrongEndpoints {
                            g: self.mor_name(g).into(),
                            f: self.mor_name(f).into(),
                            gf: self.mor_name(gf).into(),
                        });
                    }
                }
            }
        }
        for f in self.morphism_ids() {
            if self.compose(self.id(self.cod(f)), f) != Some(f) {
                report.violations.push(CategoryViolation::LeftUnit {
                    f: self.mor_name(f).into(),
                });
            }
            if self.compose(f, self.id(self.dom(f))) != Some(f) {
                report.violations.push(CategoryViolation::RightUnit {
                    f: self.mor_name(f).into(),
                });
            }
        }
        for (g, f) in self.composable_pairs() {
            let gf = match self.compose(g, f) {
                Some(x) => x,
                None => continue,
            };
            for &h in self
                .object_ids()
                .flat_map(|b| self.hom(self.cod(g), b))
            {
                let hg = match self.compose(h, g) {
                    Some(x) => x,
                    None => continue,
                };
                if self.compose(h, gf) != self.compose(hg, f) {
                    report.violations.push(CategoryViolation::Associativity {
                        h: self.mor_name(h).into(),
                        g: self.mor_name(g).into(),
                        f: self.mor_name(f).into(),
                    });
                }
            }
        }
        report
    }

    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (a, b) = (self.dom(f), self.cod(f));
        self.hom(b, a).iter().copied().find(|&g| {
            self.compose(g, f) == Some(self.id(a)) && self.compose(f, g) == Some(self.id(b))
        })
    }

    pub fn is_iso(&self, f: MorId) -> bool {
        self.inverse(f).is_some()
    }

    /// Decides iso/mono/epi/split flags by exhaustive search over parallel
    /// pairs and candidate sections/retractions.
    pub fn classify(&self, f: MorId) -> MorphismClass {
        let (a, b) = (self.dom(f), self.cod(f));
        let mono = self.object_ids().all(|s| {
            let hs = self.hom(s, a);
            hs.iter()
                .all(|&u| hs.iter().all(|&v| u == v || self.compose(f, u) != self.compose(f, v)))
        });
        let epi = self.object_ids().all(|t| {
            let ht = self.hom(b, t);
            ht.iter()
                .all(|&u| ht.iter().all(|&v| u == v || self.compose(u, f) != self.compose(v, f)))
        });
        let split_epi = self
            .hom(b, a)
            .iter()
            .any(|&s| self.compose(f, s) == Some(self.id(b)));
        let split_mono = self
            .hom(b, a)
            .iter()
            .any(|&r| self.compose(r, f) == Some(self.id(a)));
        MorphismClass {
            iso: self.is_iso(f),
            mono,
            epi,
            split_mono,
            split_epi,
        }
    }

    /// The opposite category. Object and morphism indices are preserved;
    /// dom/cod swap and comp(g,f) := comp(f,g).
    pub fn opposite(&self) -> FinCategory {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| MorData {
                name: m.name.clone(),
                dom: m.cod,
                cod: m.dom,
            })
            .collect();
        let mut pairs = Vec::new();
        for (g, f) in self.composable_pairs() {
            if let Some(gf) = self.compose(g, f) {
                pairs.push((f, g, gf));
            }
        }
        FinCategory {
            object_names: self.object_names.clone(),
            comp: make_table(self.n_morphisms(), &pairs),
            morphisms,
            identity: self.identity.clone(),
            hom_index: std::sync::OnceLock::new(),
        }
    }

    fn same_composition(&self, other: &FinCategory) -> bool {
        self.composable_pairs()
            .all(|(g, f)| self.compose(g, f) == other.compose(g, f))
    }

    /// Structural identity: same tables, names ignored.
    pub fn same_shape(&self, other: &FinCategory) -> bool {
        self.n_objects() == other.n_objects()
            && self.identity == other.identity
            && self.morphisms.len() == other.morphisms.len()
            && self
                .morphisms
                .iter()
                .zip(&other.morphisms)
                .all(|(a, b)| a.dom == b.dom && a.cod == b.cod)
            && self.same_composition(other)
    }

    /// DOT export: one node per object, one edge per non-identity morphism.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph category {\n");
        for (o, name) in self.object_names.iter().enumerate() {
            out.push_str(&format!("  o{o} [label=\"{name}\"];\n"));
        }
        for f in self.morphism_ids() {
            if self.is_identity(f) {
                continue;
            }
            out.push_str(&format!(
                "  o{} -> o{} [label=\"{}\"];\n",
                self.dom(f),
                self.cod(f),
                self.mor_name(f)
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// A wide subcategory: a set of morphisms containing every identity and
/// closed under composition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WideSubcategory {
    pub member: Vec<bool>,
}

impl WideSubcategory {
    pub fn from_predicate(cat: &FinCategory, pred: impl Fn(MorId) -> bool) -> Self {
        WideSubcategory {
            member: cat.morphism_ids().map(pred).collect(),
        }
    }

    pub fn all(cat: &FinCategory) -> Self {
        WideSubcategory {
            member: vec![true; cat.n_morphisms()],
        }
    }

    pub fn isos(cat: &FinCategory) -> Self {
        WideSubcategory::from_predicate(cat, |f| cat.is_iso(f))
    }

    pub fn contains(&self, f: MorId) -> bool {
        self.member[f]
    }

    pub fn validate(&self, cat: &FinCategory) -> Result<()> {
        if self.member.len() != cat.n_morphisms() {
            return Err(Error::MalformedReedy(
                "wide subcategory table length differs from morphism count".into(),
            ));
        }
        for o in cat.object_ids() {
            if !self.contains(cat.id(o)) {
                return Err(Error::MalformedReedy(format!(
                    "wide subcategory misses identity of object {}",
                    cat.object_names[o]
                )));
            }
        }
        for (g, f) in cat.composable_pairs() {
            if self.contains(g) && self.contains(f) {
                if let Some(gf) = cat.compose(g, f) {
                    if !self.contains(gf) {
                        return Err(Error::MalformedReedy(format!(
                            "wide subcategory not closed: {} ∘ {} = {} escapes",
                            cat.mor_name(g),
                            cat.mor_name(f),
                            cat.mor_name(gf)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Shared handle used across diagrams; cloning is cheap.
pub type Cat = Arc<FinCategory>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn terminal_category_is_valid() {
        let t = FinCategory::terminal();
        assert!(t.validate().is_valid());
        assert_eq!(t.n_objects(), 1);
        assert_eq!(t.n_morphisms(), 1);
    }

    #[test]
    fn broken_unit_is_reported() {
        // two objects a,b; f: a->b with a deliberately wrong unit composite
        let morphisms = vec![
            MorData { name: "id_a".into(), dom: 0, cod: 0 },
            MorData { name: "id_b".into(), dom: 1, cod: 1 },
            MorData { name: "f".into(), dom: 0, cod: 1 },
        ];
        let pairs = vec![
            (0, 0, 0),
            (1, 1, 1),
            (2, 0, 2),
            (1, 2, 1), // wrong: id_b ∘ f should be f
        ];
        let c = FinCategory::from_tables(
            vec!["a".into(), "b".into()],
            morphisms,
            vec![0, 1],
            &pairs,
        )
        .unwrap();
        let report = c.validate();
        assert!(!report.is_valid());
        let cites_pair = report.violations.iter().any(|v| match v {
            CategoryViolation::LeftUnit { f } => f == "f",
            _ => false,
        });
        assert!(cites_pair, "report must cite the broken unit pair: {report:?}");
    }

    #[test]
    fn simplex2_has_31_morphisms() {
        // oracle: #monotone [m]->[n] = C(n+m+1, m+1)
        fn binom(n: u64, k: u64) -> u64 {
            if k > n {
                return 0;
            }
            let mut r = 1u64;
            for i in 0..k {
                r = r * (n - i) / (i + 1);
            }
            r
        }
        let expected: u64 = (0..=2u64)
            .flat_map(|m| (0..=2u64).map(move |n| binom(n + m + 1, m + 1)))
            .sum();
        assert_eq!(expected, 31);
        let (cat, _) = generators::simplex_trunc(2);
        assert!(cat.validate().is_valid());
        assert_eq!(cat.n_objects(), 3);
        assert_eq!(cat.n_morphisms() as u64, expected);
    }

    #[test]
    fn classify_in_simplex2() {
        let (cat, _) = generators::simplex_trunc(2);
        for o in cat.object_ids() {
            let c = cat.classify(cat.id(o));
            assert!(c.iso && c.mono && c.epi && c.split_mono && c.split_epi);
        }
        let d0 = generators::simplex_mor(&cat, &[1], 1).unwrap(); // δ0: [0]->[1]
        let c = cat.classify(d0);
        assert!(c.mono && c.split_mono && !c.epi && !c.iso);
        let s0 = generators::simplex_mor(&cat, &[0, 0], 0).unwrap(); // σ0: [1]->[0]
        let c = cat.classify(s0);
        assert!(c.split_epi && c.epi && !c.mono);
        let d1 = generators::simplex_mor(&cat, &[0], 1).unwrap();
        assert!(cat.compose(s0, d0) == Some(cat.id(0)) || cat.compose(s0, d1) == Some(cat.id(0)));
    }

    #[test]
    fn opposite_is_involutive_and_swaps_flags() {
        let (cat, _) = generators::simplex_trunc(2);
        let op = cat.opposite();
        assert!(op.validate().is_valid());
        assert_eq!(op.n_morphisms(), 31);
        assert!(op.opposite().same_shape(&cat));
        for f in cat.morphism_ids() {
            let c = cat.classify(f);
            let c_op = op.classify(f);
            assert_eq!(c.mono, c_op.epi);
            assert_eq!(c.epi, c_op.mono);
            assert_eq!(c.split_mono, c_op.split_epi);
            assert_eq!(c.split_epi, c_op.split_mono);
            assert_eq!(c.iso, c_op.iso);
        }
        let t = FinCategory::terminal();
        assert!(t.opposite().same_shape(&t));
    }

    #[test]
    fn split_implies_plain_and_iso_equivalences() {
        for cat in [
            generators::simplex_trunc(2).0,
            generators::cyclic_trunc(2).0,
            generators::gamma_trunc(2).0,
        ] {
            for f in cat.morphism_ids() {
                let c = cat.classify(f);
                if c.split_epi {
                    assert!(c.epi);
                }
                if c.split_mono {
                    assert!(c.mono);
                }
                assert_eq!(c.iso, c.split_epi && c.mono);
                assert_eq!(c.iso, c.split_mono && c.epi);
            }
        }
    }
}
