//! Colimits via union-find over the disjoint union of values, limits via a
//! forward-propagating constraint solver over compatible families. Both come
//! with their universal property checked explicitly and have independent
//! naive oracles in tests.

use super::SetDiagram;
use crate::fincat::ObjId;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoconeResult {
    pub apex_size: usize,
    /// `legs[o][x]` = class of element x at object o
    pub legs: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConeResult {
    /// each family assigns one element per object
    pub families: Vec<Vec<usize>>,
    pub apex_size: usize,
}

impl ConeResult {
    /// leg at object o: family index -> element
    pub fn leg(&self, o: ObjId) -> Vec<usize> {
        self.families.iter().map(|fam| fam[o]).collect()
    }

    pub fn family_index(&self, fam: &[usize]) -> Option<usize> {
        self.families.iter().position(|f| f == fam)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the least index as representative so output order is canonical
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// The colimit of a diagram: disjoint union of the value sets modulo the
/// equivalence generated by x ~ action(f)(x). Classes are ordered by least
/// global element index, so output is deterministic.
pub fn colimit(d: &SetDiagram) -> CoconeResult {
    let shape = &d.shape;
    let offsets: Vec<usize> = {
        let mut acc = 0;
        shape
            .object_ids()
            .map(|o| {
                let here = acc;
                acc += d.size(o);
                here
            })
            .collect()
    };
    let total: usize = d.total_elements();
    let mut uf = UnionFind::new(total);
    for m in shape.morphism_ids() {
        let (a, b) = (shape.dom(m), shape.cod(m));
        for x in 0..d.size(a) {
            uf.union(offsets[a] + x, offsets[b] + d.apply(m, x));
        }
    }
    let mut class_of_root: std::collections::BTreeMap<usize, usize> = Default::default();
    let mut roots: Vec<usize> = (0..total).map(|i| uf.find(i)).collect();
    let mut sorted_roots: Vec<usize> = roots.clone();
    sorted_roots.sort();
    sorted_roots.dedup();
    for (k, &r) in sorted_roots.iter().enumerate() {
        class_of_root.insert(r, k);
    }
    for r in roots.iter_mut() {
        *r = class_of_root[r];
    }
    let legs = shape
        .object_ids()
        .map(|o| (0..d.size(o)).map(|x| roots[offsets[o] + x]).collect())
        .collect();
    CoconeResult {
        apex_size: sorted_roots.len(),
        legs,
    }
}

/// Verifies the universal property of a cocone over `d` in Set: the legs must
/// commute with the actions, be jointly surjective, and identify two elements
/// exactly when they are connected by a zig-zag of actions.
pub fn verify_colimit_universal(d: &SetDiagram, cocone: &CoconeResult) -> bool {
    let shape = &d.shape;
    for m in shape.morphism_ids() {
        let (a, b) = (shape.dom(m), shape.cod(m));
        for x in 0..d.size(a) {
            if cocone.legs[a][x] != cocone.legs[b][d.apply(m, x)] {
                return false;
            }
        }
    }
    let mut hit = vec![false; cocone.apex_size];
    for (o, leg) in cocone.legs.iter().enumerate() {
        let _ = o;
        for &c in leg {
            if c >= cocone.apex_size {
                return false;
            }
            hit[c] = true;
        }
    }
    if !hit.iter().all(|&b| b) {
        return false;
    }
    // separation: classes must coincide with zig-zag components (computed by
    // BFS, independently of union-find)
    let components = naive_colimit_components(d);
    if components.apex_size != cocone.apex_size {
        return false;
    }
    // the two labelings must be related by a bijection
    let mut rel: Vec<Option<usize>> = vec![None; cocone.apex_size];
    for o in shape.object_ids() {
        for x in 0..d.size(o) {
            let (c1, c2) = (cocone.legs[o][x], components.legs[o][x]);
            match rel[c1] {
                None => rel[c1] = Some(c2),
                Some(prev) if prev != c2 => return false,
                _ => {}
            }
        }
    }
    let mut seen: Vec<bool> = vec![false; components.apex_size];
    for r in rel.iter().flatten() {
        if seen[*r] {
            return false;
        }
        seen[*r] = true;
    }
    true
}

/// Independent oracle: connected components of the category of elements via
/// breadth-first search on the element graph.
pub fn naive_colimit_components(d: &SetDiagram) -> CoconeResult {
    let shape = &d.shape;
    let offsets: Vec<usize> = {
        let mut acc = 0;
        shape
            .object_ids()
            .map(|o| {
                let here = acc;
                acc += d.size(o);
                here
            })
            .collect()
    };
    let total = d.total_elements();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
    for m in shape.morphism_ids() {
        let (a, b) = (shape.dom(m), shape.cod(m));
        for x in 0..d.size(a) {
            let u = offsets[a] + x;
            let v = offsets[b] + d.apply(m, x);
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut label: Vec<Option<usize>> = vec![None; total];
    let mut next = 0usize;
    for start in 0..total {
        if label[start].is_some() {
            continue;
        }
        let mut queue = std::collections::VecDeque::from([start]);
        label[start] = Some(next);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if label[v].is_none() {
                    label[v] = Some(next);
                    queue.push_back(v);
                }
            }
        }
        next += 1;
    }
    let legs = shape
        .object_ids()
        .map(|o| {
            (0..d.size(o))
                .map(|x| label[offsets[o] + x].unwrap())
                .collect()
        })
        .collect();
    CoconeResult {
        apex_size: next,
        legs,
    }
}

/// Compatible families over an arbitrary arrow list: sizes per position and
/// arrows (dom, cod, action table). Backtracking with forward constraint
/// propagation: assigning a position immediately forces every action image.
/// Output order is deterministic but not lexicographic.
pub fn compatible_families(sizes: &[usize], arrows: &[(usize, usize, &[usize])]) -> Vec<Vec<usize>> {
    let n = sizes.len();
    let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n]; // (arrow, cod)
    let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, &(a, b, _)) in arrows.iter().enumerate() {
        out[a].push((k, b));
        if a != b {
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
    }
    let mut families = Vec::new();
    let mut assignment: Vec<Option<usize>> = vec![None; n];
    fn propagate(
        arrows: &[(usize, usize, &[usize])],
        out: &[Vec<(usize, usize)>],
        assignment: &mut [Option<usize>],
        start: usize,
        trail: &mut Vec<usize>,
    ) -> bool {
        let mut queue = vec![start];
        while let Some(a) = queue.pop() {
            let va = assignment[a].unwrap();
            for &(k, b) in &out[a] {
                let forced = arrows[k].2[va];
                match assignment[b] {
                    Some(vb) if vb != forced => return false,
                    Some(_) => {}
                    None => {
                        assignment[b] = Some(forced);
                        trail.push(b);
                        queue.push(b);
                    }
                }
            }
        }
        true
    }
    #[allow(clippy::too_many_arguments)]
    fn search(
        sizes: &[usize],
        arrows: &[(usize, usize, &[usize])],
        out: &[Vec<(usize, usize)>],
        neighbors: &[Vec<usize>],
        assignment: &mut Vec<Option<usize>>,
        families: &mut Vec<Vec<usize>>,
    ) {
        let n = assignment.len();
        // prefer an unassigned position adjacent to an assigned one
        let next = (0..n)
            .filter(|&o| assignment[o].is_none())
            .find(|&o| neighbors[o].iter().any(|&b| assignment[b].is_some()))
            .or_else(|| (0..n).find(|&o| assignment[o].is_none()));
        let o = match next {
            Some(o) => o,
            None => {
                families.push(assignment.iter().map(|v| v.unwrap()).collect());
                return;
            }
        };
        for v in 0..sizes[o] {
            assignment[o] = Some(v);
            let mut trail = vec![o];
            // actions into o from already-assigned sources must agree
            let ok_in = neighbors[o].iter().all(|&b| {
                assignment[b].is_none()
                    || out[b]
                        .iter()
                        .all(|&(k, c)| c != o || arrows[k].2[assignment[b].unwrap()] == v)
            });
            let ok = ok_in && propagate(arrows, out, assignment, o, &mut trail);
            if ok {
                search(sizes, arrows, out, neighbors, assignment, families);
            }
            for t in trail {
                assignment[t] = None;
            }
        }
    }
    search(sizes, arrows, &out, &neighbors, &mut assignment, &mut families);
    families
}

/// The limit of a diagram: compatible families in the product of value sets.
pub fn limit(d: &SetDiagram) -> ConeResult {
    let shape = &d.shape;
    let sizes: Vec<usize> = shape.object_ids().map(|o| d.size(o)).collect();
    let arrows: Vec<(usize, usize, &[usize])> = shape
        .morphism_ids()
        .map(|m| (shape.dom(m), shape.cod(m), d.actions[m].as_slice()))
        .collect();
    let families = compatible_families(&sizes, &arrows);
    ConeResult {
        apex_size: families.len(),
        families,
    }
}

/// Naive oracle for limits: filter the full product.
pub fn naive_limit_families(d: &SetDiagram) -> Vec<Vec<usize>> {
    let shape = &d.shape;
    let n = shape.n_objects();
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    if (0..n).any(|o| d.size(o) == 0) {
        return out;
    }
    loop {
        let ok = shape
            .morphism_ids()
            .all(|m| d.apply(m, cur[shape.dom(m)]) == cur[shape.cod(m)]);
        if ok {
            out.push(cur.clone());
        }
        // increment odometer
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < d.size(i) {
                break;
            }
            cur[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{FinCategory, MorData};
    use std::sync::Arc;

    fn discrete(n: usize) -> Arc<FinCategory> {
        let morphisms = (0..n)
            .map(|o| MorData {
                name: format!("id{o}"),
                dom: o,
                cod: o,
            })
            .collect();
        let pairs: Vec<(usize, usize, usize)> = (0..n).map(|o| (o, o, o)).collect();
        Arc::new(
            FinCategory::from_tables(
                (0..n).map(|o| format!("o{o}")).collect(),
                morphisms,
                (0..n).collect(),
                &pairs,
            )
            .unwrap(),
        )
    }

    fn z2_shape() -> Arc<FinCategory> {
        let morphisms = vec![
            MorData { name: "e".into(), dom: 0, cod: 0 },
            MorData { name: "t".into(), dom: 0, cod: 0 },
        ];
        let pairs = vec![(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)];
        Arc::new(
            FinCategory::from_tables(vec!["*".into()], morphisms, vec![0], &pairs).unwrap(),
        )
    }

    #[test]
    fn coproduct_of_singletons() {
        let d = SetDiagram::new(discrete(2), &[1, 1], vec![vec![0], vec![0]]).unwrap();
        let c = colimit(&d);
        assert_eq!(c.apex_size, 2);
        assert!(verify_colimit_universal(&d, &c));
    }

    #[test]
    fn coequalizer_of_equal_maps() {
        // shape • ⇉ • with both actions equal: apex ≅ target set
        let morphisms = vec![
            MorData { name: "id0".into(), dom: 0, cod: 0 },
            MorData { name: "id1".into(), dom: 1, cod: 1 },
            MorData { name: "u".into(), dom: 0, cod: 1 },
            MorData { name: "v".into(), dom: 0, cod: 1 },
        ];
        let pairs = vec![
            (0, 0, 0),
            (1, 1, 1),
            (2, 0, 2),
            (1, 2, 2),
            (3, 0, 3),
            (1, 3, 3),
        ];
        let shape = Arc::new(
            FinCategory::from_tables(
                vec!["a".into(), "b".into()],
                morphisms,
                vec![0, 1],
                &pairs,
            )
            .unwrap(),
        );
        let d = SetDiagram::new(
            shape,
            &[2, 3],
            vec![
                vec![0, 1],
                vec![0, 1, 2],
                vec![0, 2],
                vec![0, 2],
            ],
        )
        .unwrap();
        let c = colimit(&d);
        assert_eq!(c.apex_size, 3);
        assert!(verify_colimit_universal(&d, &c));
    }

    #[test]
    fn z2_swap_has_one_orbit_and_no_fixed_points() {
        let d = SetDiagram::new(z2_shape(), &[2], vec![vec![0, 1], vec![1, 0]]).unwrap();
        let c = colimit(&d);
        assert_eq!(c.apex_size, 1);
        assert!(verify_colimit_universal(&d, &c));
        let l = limit(&d);
        assert_eq!(l.apex_size, 0);
        assert_eq!(naive_limit_families(&d).len(), 0);
    }

    #[test]
    fn product_and_one_object_limits() {
        let d = SetDiagram::new(
            discrete(2),
            &[2, 3],
            vec![vec![0, 1], vec![0, 1, 2]],
        )
        .unwrap();
        let l = limit(&d);
        assert_eq!(l.apex_size, 6);
        let mut sorted = l.families.clone();
        sorted.sort();
        assert_eq!(naive_limit_families(&d), sorted);

        let one = SetDiagram::new(discrete(1), &[4], vec![vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(limit(&one).apex_size, 4);
        assert_eq!(colimit(&one).apex_size, 4);
    }
}
