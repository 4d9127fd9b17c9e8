//! Finite groups as explicit multiplication tables, and finite sets equipped
//! with a group action. Groups appearing here are small (automorphism groups
//! of truncated generators, order <= 24), so everything is table-driven.

use serde::{Deserialize, Serialize};

/// A finite group given by its multiplication table. `mult[g][h]` is the
/// product g*h, with the convention that in groups of maps, g*h means
/// "h first, then g" (function composition).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    pub elements: Vec<String>,
    pub mult: Vec<Vec<usize>>,
    pub unit: usize,
}

impl Group {
    pub fn trivial() -> Self {
        Group {
            elements: vec!["e".to_string()],
            mult: vec![vec![0]],
            unit: 0,
        }
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let elements = (0..n).map(|k| format!("t^{k}")).collect();
        let mult = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Group {
            elements,
            mult,
            unit: 0,
        }
    }

    /// The symmetric group on `n` letters, elements ordered lexicographically
    /// by their one-line notation, identity first.
    pub fn symmetric(n: usize) -> Self {
        let perms = all_permutations(n);
        let index =
            |p: &[usize]| -> usize { perms.iter().position(|q| q.as_slice() == p).unwrap() };
        let mult = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        // a*b = a after b
                        let ab: Vec<usize> = (0..n).map(|i| a[b[i]]).collect();
                        index(&ab)
                    })
                    .collect()
            })
            .collect();
        let elements = perms.iter().map(|p| perm_name(p)).collect();
        Group {
            elements,
            mult,
            unit: 0,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.mul(a, b) == self.unit && self.mul(b, a) == self.unit)
            .expect("group element without inverse")
    }

    /// Checks unit laws, associativity and invertibility of the table.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.order();
        if self.mult.len() != n || self.mult.iter().any(|row| row.len() != n) {
            return Err("multiplication table has wrong dimensions".into());
        }
        if self.unit >= n {
            return Err("unit out of range".into());
        }
        for (a, row) in self.mult.iter().enumerate() {
            for (b, &ab) in row.iter().enumerate() {
                if ab >= n {
                    return Err(format!("product {a}*{b} out of range"));
                }
            }
        }
        for a in 0..n {
            if self.mul(self.unit, a) != a || self.mul(a, self.unit) != a {
                return Err(format!("unit law fails at element {a}"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("associativity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        for a in 0..n {
            if !(0..n).any(|b| self.mul(a, b) == self.unit && self.mul(b, a) == self.unit) {
                return Err(format!("element {a} has no inverse"));
            }
        }
        Ok(())
    }

    /// All subgroups, as sorted element lists; used by the orbit-category
    /// generator. Brute force over closure of subsets of generators.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut found: Vec<Vec<usize>> = vec![vec![self.unit]];
        // close each subset generated by an existing subgroup plus one element
        let mut frontier = found.clone();
        while let Some(h) = frontier.pop() {
            for g in 0..n {
                if h.contains(&g) {
                    continue;
                }
                let mut gen: Vec<usize> = h.clone();
                gen.push(g);
                let closed = self.closure(&gen);
                if !found.contains(&closed) {
                    found.push(closed.clone());
                    frontier.push(closed);
                }
            }
        }
        found.sort();
        found
    }

    fn closure(&self, elems: &[usize]) -> Vec<usize> {
        let mut set: Vec<usize> = vec![self.unit];
        let mut stack: Vec<usize> = elems.to_vec();
        while let Some(x) = stack.pop() {
            if set.contains(&x) {
                continue;
            }
            set.push(x);
            let snapshot = set.clone();
            for &y in &snapshot {
                for p in [self.mul(x, y), self.mul(y, x), self.inverse(x)] {
                    if !set.contains(&p) {
                        stack.push(p);
                    }
                }
            }
        }
        set.sort();
        set
    }

    /// The opposite group (reversed multiplication). Automorphism groups of an
    /// opposite category are opposite groups, so equivariant data computed on
    /// reversed structures uses this.
    pub fn opposite(&self) -> Group {
        let n = self.order();
        Group {
            elements: self.elements.clone(),
            mult: (0..n)
                .map(|a| (0..n).map(|b| self.mult[b][a]).collect())
                .collect(),
            unit: self.unit,
        }
    }
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    permute(&mut cur, 0, &mut out);
    out.sort();
    out
}

fn permute(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permute(cur, k + 1, out);
        cur.swap(k, i);
    }
}

pub fn perm_name(p: &[usize]) -> String {
    let body: Vec<String> = p.iter().map(|i| i.to_string()).collect();
    format!("p({})", body.join(" "))
}

/// A finite set with a left action of a finite group: the value type of
/// latching and matching objects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivariantSet {
    pub group: Group,
    pub size: usize,
    /// `action[g][x]` is g.x
    pub action: Vec<Vec<usize>>,
}

impl EquivariantSet {
    pub fn new(group: Group, size: usize, action: Vec<Vec<usize>>) -> Self {
        let e = EquivariantSet {
            group,
            size,
            action,
        };
        debug_assert!(e.validate().is_ok(), "{:?}", e.validate());
        e
    }

    pub fn trivial_action(group: Group, size: usize) -> Self {
        let action = vec![(0..size).collect(); group.order()];
        EquivariantSet {
            group,
            size,
            action,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.action.len() != self.group.order() {
            return Err("action table has wrong number of rows".into());
        }
        for (g, row) in self.action.iter().enumerate() {
            if row.len() != self.size || row.iter().any(|&x| x >= self.size) {
                return Err(format!("action row {g} malformed"));
            }
        }
        for x in 0..self.size {
            if self.action[self.group.unit][x] != x {
                return Err(format!("unit acts nontrivially on {x}"));
            }
        }
        for g in 0..self.group.order() {
            for h in 0..self.group.order() {
                let gh = self.group.mul(g, h);
                for x in 0..self.size {
                    if self.action[gh][x] != self.action[g][self.action[h][x]] {
                        return Err(format!("action law fails at (g={g},h={h},x={x})"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut orbits = Vec::new();
        for x in 0..self.size {
            if seen[x] {
                continue;
            }
            let mut orbit = Vec::new();
            for g in 0..self.group.order() {
                let y = self.apply(g, x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            orbit.sort();
            orbits.push(orbit);
        }
        orbits
    }

    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&g| self.apply(g, x) == x)
            .collect()
    }

    pub fn is_free_on(&self, elems: &[usize]) -> bool {
        elems.iter().all(|&x| self.stabilizer(x).len() == 1)
    }
}

/// A map of sets equivariant for a common group.
pub fn is_equivariant_map(a: &EquivariantSet, b: &EquivariantSet, map: &[usize]) -> bool {
    if a.group != b.group || map.len() != a.size || map.iter().any(|&y| y >= b.size) {
        return false;
    }
    for g in 0..a.group.order() {
        for x in 0..a.size {
            if map[a.apply(g, x)] != b.apply(g, map[x]) {
                return false;
            }
        }
    }
    true
}

/// Searches for an equivariant bijection between two sets with an action of
/// the same group. Backtracking over orbit representatives; group orders here
/// are tiny, so this is cheap.
pub fn equivariant_bijection(a: &EquivariantSet, b: &EquivariantSet) -> Option<Vec<usize>> {
    if a.group != b.group || a.size != b.size {
        return None;
    }
    let mut map: Vec<Option<usize>> = vec![None; a.size];
    let mut used = vec![false; b.size];
    if assign(a, b, &mut map, &mut used) {
        Some(map.into_iter().map(|x| x.unwrap()).collect())
    } else {
        None
    }
}

fn assign(
    a: &EquivariantSet,
    b: &EquivariantSet,
    map: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    let x = match (0..a.size).find(|&x| map[x].is_none()) {
        Some(x) => x,
        None => return true,
    };
    'candidates: for y in 0..b.size {
        if used[y] || a.stabilizer(x) != b.stabilizer(y) {
            continue;
        }
        // push the whole orbit of x along g.x |-> g.y and recurse
        let mut placed = Vec::new();
        for g in 0..a.group.order() {
            let gx = a.apply(g, x);
            let gy = b.apply(g, y);
            match map[gx] {
                Some(z) if z != gy => {
                    for &(px, py) in &placed {
                        map[px] = None;
                        used[py] = false;
                    }
                    continue 'candidates;
                }
                Some(_) => {}
                None => {
                    if used[gy] {
                        for &(px, py) in &placed {
                            map[px] = None;
                            used[py] = false;
                        }
                        continue 'candidates;
                    }
                    map[gx] = Some(gy);
                    used[gy] = true;
                    placed.push((gx, gy));
                }
            }
        }
        if assign(a, b, map, used) {
            return true;
        }
        for &(px, py) in &placed {
            map[px] = None;
            used[py] = false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_and_symmetric_are_groups() {
        for n in 1..=4 {
            Group::cyclic(n).validate().unwrap();
        }
        for n in 1..=4 {
            let s = Group::symmetric(n);
            s.validate().unwrap();
            assert_eq!(s.order(), (1..=n).product::<usize>());
        }
    }

    #[test]
    fn s3_has_six_subgroups() {
        let s3 = Group::symmetric(3);
        // trivial, three order-2, one order-3, full
        assert_eq!(s3.subgroups().len(), 6);
    }

    #[test]
    fn z4_subgroup_lattice() {
        let z4 = Group::cyclic(4);
        assert_eq!(z4.subgroups().len(), 3);
    }

    #[test]
    fn swap_action_orbits() {
        let z2 = Group::cyclic(2);
        let swap = EquivariantSet::new(z2, 2, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(swap.orbits(), vec![vec![0, 1]]);
        assert!(swap.is_free_on(&[0, 1]));
    }

    #[test]
    fn equivariant_bijection_respects_stabilizers() {
        let z2 = Group::cyclic(2);
        let swap = EquivariantSet::new(z2.clone(), 2, vec![vec![0, 1], vec![1, 0]]);
        let triv = EquivariantSet::trivial_action(z2, 2);
        assert!(equivariant_bijection(&swap, &swap).is_some());
        assert!(equivariant_bijection(&swap, &triv).is_none());
    }
}
