//! Pointwise constructions in a diagram category: pushouts, pullbacks,
//! images, coproducts, quotients by a generated congruence, and subdiagram
//! closures. These are the presheaf-topos plumbing behind the structural
//! machinery.

use super::{DiagramMap, SetDiagram};
use crate::error::{Error, Result};
use crate::fincat::ObjId;

pub struct PushoutResult {
    pub apex: SetDiagram,
    pub from_left: DiagramMap,
    pub from_right: DiagramMap,
}

/// Pushout of the span left ← center → right, computed pointwise as the
/// quotient of the disjoint union by the generated relation, then given the
/// induced actions.
pub fn diagram_pushout(f: &DiagramMap, g: &DiagramMap) -> Result<PushoutResult> {
    if f.source != g.source {
        return Err(Error::Precondition(
            "pushout requires a span with common source".into(),
        ));
    }
    let shape = f.source.shape.clone();
    let left = &f.target;
    let right = &g.target;
    let center = &f.source;
    // pointwise union-find over left ⊔ right
    let mut class_left: Vec<Vec<usize>> = Vec::new();
    let mut class_right: Vec<Vec<usize>> = Vec::new();
    let mut sizes = Vec::new();
    for o in shape.object_ids() {
        let ln = left.size(o);
        let rn = right.size(o);
        let mut parent: Vec<usize> = (0..ln + rn).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for z in 0..center.size(o) {
            let a = find(&mut parent, f.apply(o, z));
            let b = find(&mut parent, ln + g.apply(o, z));
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent[hi] = lo;
        }
        let mut roots: Vec<usize> = (0..ln + rn).map(|i| find(&mut parent, i)).collect();
        let mut sorted: Vec<usize> = roots.clone();
        sorted.sort();
        sorted.dedup();
        for r in roots.iter_mut() {
            *r = sorted.iter().position(|&s| s == *r).unwrap();
        }
        class_left.push(roots[..ln].to_vec());
        class_right.push(roots[ln..].to_vec());
        sizes.push(sorted.len());
    }
    // induced actions; well-definedness is guaranteed by naturality of f, g
    let actions: Vec<Vec<usize>> = shape
        .morphism_ids()
        .map(|m| {
            let (a, b) = (shape.dom(m), shape.cod(m));
            let mut act = vec![usize::MAX; sizes[a]];
            for x in 0..left.size(a) {
                act[class_left[a][x]] = class_left[b][left.apply(m, x)];
            }
            for x in 0..right.size(a) {
                let cls = class_right[a][x];
                let img = class_right[b][right.apply(m, x)];
                if act[cls] != usize::MAX && act[cls] != img {
                    // can only happen if inputs were not natural
                    panic!("pushout action ill-defined");
                }
                act[cls] = img;
            }
            debug_assert!(act.iter().all(|&v| v != usize::MAX));
            act
        })
        .collect();
    let apex = SetDiagram {
        shape: shape.clone(),
        values: sizes
            .iter()
            .map(|&n| (0..n).map(|i| i.to_string()).collect())
            .collect(),
        actions,
    };
    apex.validate()?;
    let from_left = DiagramMap {
        source: left.clone(),
        target: apex.clone(),
        components: class_left,
    };
    let from_right = DiagramMap {
        source: right.clone(),
        target: apex.clone(),
        components: class_right,
    };
    Ok(PushoutResult {
        apex,
        from_left,
        from_right,
    })
}

pub struct PullbackResult {
    pub apex: SetDiagram,
    pub to_left: DiagramMap,
    pub to_right: DiagramMap,
    /// pairs[o] lists, per apex element, the matched (left, right) elements
    pub pairs: Vec<Vec<(usize, usize)>>,
}

/// Pullback of the cospan left → center ← right, pointwise.
pub fn diagram_pullback(f: &DiagramMap, g: &DiagramMap) -> Result<PullbackResult> {
    if f.target != g.target {
        return Err(Error::Precondition(
            "pullback requires a cospan with common target".into(),
        ));
    }
    let shape = f.source.shape.clone();
    let left = &f.source;
    let right = &g.source;
    let mut pairs: Vec<Vec<(usize, usize)>> = Vec::new();
    for o in shape.object_ids() {
        let mut here = Vec::new();
        for x in 0..left.size(o) {
            for y in 0..right.size(o) {
                if f.apply(o, x) == g.apply(o, y) {
                    here.push((x, y));
                }
            }
        }
        pairs.push(here);
    }
    let actions: Vec<Vec<usize>> = shape
        .morphism_ids()
        .map(|m| {
            let (a, b) = (shape.dom(m), shape.cod(m));
            pairs[a]
                .iter()
                .map(|&(x, y)| {
                    let img = (left.apply(m, x), right.apply(m, y));
                    pairs[b].iter().position(|&p| p == img).expect("closed")
                })
                .collect()
        })
        .collect();
    let apex = SetDiagram {
        shape: shape.clone(),
        values: pairs
            .iter()
            .map(|p| (0..p.len()).map(|i| i.to_string()).collect())
            .collect(),
        actions,
    };
    apex.validate()?;
    let to_left = DiagramMap {
        source: apex.clone(),
        target: left.clone(),
        components: pairs.iter().map(|p| p.iter().map(|&(x, _)| x).collect()).collect(),
    };
    let to_right = DiagramMap {
        source: apex.clone(),
        target: right.clone(),
        components: pairs.iter().map(|p| p.iter().map(|&(_, y)| y).collect()).collect(),
    };
    Ok(PullbackResult {
        apex,
        to_left,
        to_right,
        pairs,
    })
}

pub struct ImageResult {
    pub image: SetDiagram,
    /// the corestriction source → image
    pub onto: DiagramMap,
    /// the inclusion image → target
    pub include: DiagramMap,
}

/// Pointwise image of a map, with the epi-mono factorization.
pub fn diagram_image(f: &DiagramMap) -> ImageResult {
    let shape = f.source.shape.clone();
    let mut elems: Vec<Vec<usize>> = Vec::new();
    for o in shape.object_ids() {
        let mut here: Vec<usize> = f.components[o].clone();
        here.sort();
        here.dedup();
        elems.push(here);
    }
    let actions: Vec<Vec<usize>> = shape
        .morphism_ids()
        .map(|m| {
            let (a, b) = (shape.dom(m), shape.cod(m));
            elems[a]
                .iter()
                .map(|&x| {
                    let y = f.target.apply(m, x);
                    elems[b].iter().position(|&z| z == y).expect("image closed")
                })
                .collect()
        })
        .collect();
    let image = SetDiagram {
        shape: shape.clone(),
        values: elems
            .iter()
            .enumerate()
            .map(|(o, es)| es.iter().map(|&x| f.target.values[o][x].clone()).collect())
            .collect(),
        actions,
    };
    debug_assert!(image.validate().is_ok());
    let onto = DiagramMap {
        source: f.source.clone(),
        target: image.clone(),
        components: shape
            .object_ids()
            .map(|o| {
                f.components[o]
                    .iter()
                    .map(|&y| elems[o].iter().position(|&z| z == y).unwrap())
                    .collect()
            })
            .collect(),
    };
    let include = DiagramMap {
        source: image.clone(),
        target: f.target.clone(),
        components: elems.clone(),
    };
    ImageResult {
        image,
        onto,
        include,
    }
}

/// Coproduct of diagrams on a common shape, with the injections.
pub fn coproduct(parts: &[SetDiagram]) -> (SetDiagram, Vec<DiagramMap>) {
    assert!(!parts.is_empty());
    let shape = parts[0].shape.clone();
    let sizes: Vec<usize> = shape
        .object_ids()
        .map(|o| parts.iter().map(|p| p.size(o)).sum())
        .collect();
    let offsets: Vec<Vec<usize>> = shape
        .object_ids()
        .map(|o| {
            let mut acc = 0;
            parts
                .iter()
                .map(|p| {
                    let here = acc;
                    acc += p.size(o);
                    here
                })
                .collect()
        })
        .collect();
    let actions: Vec<Vec<usize>> = shape
        .morphism_ids()
        .map(|m| {
            let (a, b) = (shape.dom(m), shape.cod(m));
            let mut act = Vec::with_capacity(sizes[a]);
            for (k, p) in parts.iter().enumerate() {
                for x in 0..p.size(a) {
                    act.push(offsets[b][k] + p.apply(m, x));
                }
            }
            act
        })
        .collect();
    let total = SetDiagram {
        shape: shape.clone(),
        values: shape
            .object_ids()
            .map(|o| {
                parts
                    .iter()
                    .enumerate()
                    .flat_map(|(k, p)| {
                        p.values[o].iter().map(move |name| format!("{k}.{name}"))
                    })
                    .collect()
            })
            .collect(),
        actions,
    };
    let injections = parts
        .iter()
        .enumerate()
        .map(|(k, p)| DiagramMap {
            source: p.clone(),
            target: total.clone(),
            components: shape
                .object_ids()
                .map(|o| (0..p.size(o)).map(|x| offsets[o][k] + x).collect())
                .collect(),
        })
        .collect();
    (total, injections)
}

/// Quotient of a diagram by the congruence generated by the given pairs:
/// the relation is closed under every action, so the result is functorial.
/// Returns the quotient with the projection map.
pub fn equalize_quotient(
    d: &SetDiagram,
    gluing: &[(ObjId, usize, usize)],
) -> (SetDiagram, DiagramMap) {
    let shape = d.shape.clone();
    let mut parent: Vec<Vec<usize>> = shape
        .object_ids()
        .map(|o| (0..d.size(o)).collect())
        .collect();
    fn find(parent: &mut Vec<Vec<usize>>, o: usize, x: usize) -> usize {
        if parent[o][x] != x {
            let r = find(parent, o, parent[o][x]);
            parent[o][x] = r;
        }
        parent[o][x]
    }
    let mut pending: Vec<(ObjId, usize, usize)> = gluing.to_vec();
    while let Some((o, x, y)) = pending.pop() {
        let (rx, ry) = (find(&mut parent, o, x), find(&mut parent, o, y));
        if rx == ry {
            continue;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        parent[o][hi] = lo;
        // close under all actions out of o
        for m in shape.morphism_ids() {
            if shape.dom(m) == o {
                pending.push((shape.cod(m), d.apply(m, x), d.apply(m, y)));
            }
        }
    }
    let mut class: Vec<Vec<usize>> = Vec::new();
    let mut sizes = Vec::new();
    for o in shape.object_ids() {
        let roots: Vec<usize> = (0..d.size(o)).map(|x| find(&mut parent, o, x)).collect();
        let mut sorted = roots.clone();
        sorted.sort();
        sorted.dedup();
        class.push(
            roots
                .iter()
                .map(|r| sorted.iter().position(|s| s == r).unwrap())
                .collect(),
        );
        sizes.push(sorted.len());
    }
    let actions: Vec<Vec<usize>> = shape
        .morphism_ids()
        .map(|m| {
            let (a, b) = (shape.dom(m), shape.cod(m));
            let mut act = vec![usize::MAX; sizes[a]];
            for x in 0..d.size(a) {
                act[class[a][x]] = class[b][d.apply(m, x)];
            }
            act
        })
        .collect();
    let quotient = SetDiagram {
        shape,
        values: sizes
            .iter()
            .map(|&n| (0..n).map(|i| i.to_string()).collect())
            .collect(),
        actions,
    };
    debug_assert!(quotient.validate().is_ok(), "congruence closure must be functorial");
    let projection = DiagramMap {
        source: d.clone(),
        target: quotient.clone(),
        components: class,
    };
    (quotient, projection)
}

/// Smallest subdiagram containing the seed elements; returns it with its
/// inclusion.
pub fn subdiagram_closure(d: &SetDiagram, seeds: &[(ObjId, usize)]) -> (SetDiagram, DiagramMap) {
    let shape = d.shape.clone();
    let mut keep: Vec<Vec<bool>> = shape.object_ids().map(|o| vec![false; d.size(o)]).collect();
    let mut stack: Vec<(ObjId, usize)> = seeds.to_vec();
    while let Some((o, x)) = stack.pop() {
        if keep[o][x] {
            continue;
        }
        keep[o][x] = true;
        for m in shape.morphism_ids() {
            if shape.dom(m) == o {
                stack.push((shape.cod(m), d.apply(m, x)));
            }
        }
    }
    let elems: Vec<Vec<usize>> = keep
        .iter()
        .map(|k| {
            k.iter()
                .enumerate()
                .filter_map(|(x, &b)| if b { Some(x) } else { None })
                .collect()
        })
        .collect();
    let actions: Vec<Vec<usize>> = shape
        .morphism_ids()
        .map(|m| {
            let (a, b) = (shape.dom(m), shape.cod(m));
            elems[a]
                .iter()
                .map(|&x| {
                    let y = d.apply(m, x);
                    elems[b].iter().position(|&z| z == y).expect("closed")
                })
                .collect()
        })
        .collect();
    let sub = SetDiagram {
        shape,
        values: elems
            .iter()
            .enumerate()
            .map(|(o, es)| es.iter().map(|&x| d.values[o][x].clone()).collect())
            .collect(),
        actions,
    };
    debug_assert!(sub.validate().is_ok());
    let include = DiagramMap {
        source: sub.clone(),
        target: d.clone(),
        components: elems,
    };
    (sub, include)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use std::sync::Arc;

    fn delta2_op() -> Arc<crate::fincat::FinCategory> {
        let (cat, _) = generators::simplex_trunc(2);
        Arc::new(cat.opposite())
    }

    #[test]
    fn pushout_along_identities_is_identity() {
        let op = delta2_op();
        let x = SetDiagram::corepresentable(&op, 2); // Yoneda presheaf of [2]
        let id = DiagramMap::identity(&x);
        let po = diagram_pushout(&id, &id).unwrap();
        assert!(po.from_left.is_iso());
        for o in op.object_ids() {
            assert_eq!(po.apex.size(o), x.size(o));
        }
    }

    #[test]
    fn pullback_of_subpresheaf_inclusions_is_intersection() {
        let op = delta2_op();
        let x = SetDiagram::corepresentable(&op, 2);
        // two subpresheaves generated by single level-1 elements
        let (a, ia) = subdiagram_closure(&x, &[(1, 0)]);
        let (b, ib) = subdiagram_closure(&x, &[(1, 1)]);
        let pb = diagram_pullback(&ia, &ib).unwrap();
        // intersection sizes: elements in both
        for o in op.object_ids() {
            let inter = (0..x.size(o))
                .filter(|&e| ia.components[o].contains(&e) && ib.components[o].contains(&e))
                .count();
            assert_eq!(pb.apex.size(o), inter);
        }
        let _ = (a, b);
    }

    #[test]
    fn image_is_functorial_subobject() {
        let op = delta2_op();
        let x = SetDiagram::corepresentable(&op, 2);
        let (q, proj) = equalize_quotient(&x, &[(0, 0, 1)]);
        let img = diagram_image(&proj);
        img.image.validate().unwrap();
        assert!(img.include.is_mono());
        assert!(img.onto.is_epi());
        assert_eq!(img.include.after(&img.onto).components, proj.components);
        let _ = q;
    }

    #[test]
    fn quotient_identifying_vertices_of_edge() {
        // Δ[1] with both vertices glued: the closure also glues the two
        // degenerate edges, leaving the circle with 1 vertex and 2 edges
        let (cat, _) = generators::simplex_trunc(1);
        let op = Arc::new(cat.opposite());
        let x = SetDiagram::corepresentable(&op, 1);
        assert_eq!(x.size(0), 2);
        assert_eq!(x.size(1), 3);
        let (q, proj) = equalize_quotient(&x, &[(0, 0, 1)]);
        assert_eq!(q.size(0), 1);
        assert_eq!(q.size(1), 2);
        assert!(proj.is_epi());
        q.validate().unwrap();
    }
}
