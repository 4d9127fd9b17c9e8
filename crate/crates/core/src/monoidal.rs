//! Quasi-monoidal checks and the pushout-product property for normal
//! monomorphisms, instantiated for the cartesian product of presheaves on a
//! truncated EZ-category.

use crate::diagram::{coproduct, diagram_pullback, diagram_pushout, DiagramMap, SetDiagram};
use crate::error::{Error, Result};
use crate::ez::{boundary, is_normal_mono, EzStructure, NormalityReport};
use crate::fincat::ObjId;
use serde::{Deserialize, Serialize};

/// A symmetric monoidal product on presheaves: the bifunctor, its action on
/// maps, and the unit presheaf.
pub trait ProductOracle {
    fn product(&self, ez: &EzStructure, x: &SetDiagram, y: &SetDiagram) -> SetDiagram;
    fn product_map(
        &self,
        ez: &EzStructure,
        f: &DiagramMap,
        g: &DiagramMap,
    ) -> DiagramMap;
    fn unit(&self, ez: &EzStructure) -> SetDiagram;
}

/// The cartesian structure: pointwise products, diagonal actions, terminal
/// unit. Elements of (X × Y)_a are pairs in lexicographic order.
pub struct CartesianOracle;

fn pair_index(y_size: usize, i: usize, j: usize) -> usize {
    i * y_size + j
}

impl ProductOracle for CartesianOracle {
    fn product(&self, ez: &EzStructure, x: &SetDiagram, y: &SetDiagram) -> SetDiagram {
        let op = ez.op_shape();
        let values: Vec<Vec<String>> = op
            .object_ids()
            .map(|a| {
                let mut v = Vec::with_capacity(x.size(a) * y.size(a));
                for i in 0..x.size(a) {
                    for j in 0..y.size(a) {
                        v.push(format!("({},{})", x.values[a][i], y.values[a][j]));
                    }
                }
                v
            })
            .collect();
        let actions: Vec<Vec<usize>> = op
            .morphism_ids()
            .map(|m| {
                let (a, b) = (op.dom(m), op.cod(m));
                let mut act = Vec::with_capacity(x.size(a) * y.size(a));
                for i in 0..x.size(a) {
                    for j in 0..y.size(a) {
                        act.push(pair_index(y.size(b), x.apply(m, i), y.apply(m, j)));
                    }
                }
                act
            })
            .collect();
        SetDiagram {
            shape: op.clone(),
            values,
            actions,
        }
    }

    fn product_map(&self, ez: &EzStructure, f: &DiagramMap, g: &DiagramMap) -> DiagramMap {
        let source = self.product(ez, &f.source, &g.source);
        let target = self.product(ez, &f.target, &g.target);
        let op = ez.op_shape();
        let components: Vec<Vec<usize>> = op
            .object_ids()
            .map(|a| {
                let mut comp = Vec::with_capacity(source.size(a));
                for i in 0..f.source.size(a) {
                    for j in 0..g.source.size(a) {
                        comp.push(pair_index(
                            g.target.size(a),
                            f.apply(a, i),
                            g.apply(a, j),
                        ));
                    }
                }
                comp
            })
            .collect();
        DiagramMap {
            source,
            target,
            components,
        }
    }

    fn unit(&self, ez: &EzStructure) -> SetDiagram {
        SetDiagram::terminal_diagram(ez.op_shape().clone())
    }
}

/// The largest degree of a non-degenerate element: products of presheaves
/// generated in degrees a and b are fully determined in truncations of
/// degree at least a + b.
pub fn generation_degree(ez: &EzStructure, x: &SetDiagram) -> u32 {
    let mut top = 0;
    for r in ez.cat.object_ids() {
        for e in 0..x.size(r) {
            if !ez.is_degenerate(x, r, e) {
                top = top.max(ez.deg(r));
            }
        }
    }
    top
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairVerdict {
    pub r: ObjId,
    pub s: ObjId,
    pub square_is_pullback: bool,
    pub maps_normal: [bool; 4],
}

impl PairVerdict {
    pub fn passes(&self) -> bool {
        self.square_is_pullback && self.maps_normal.iter().all(|&b| b)
    }
}

/// Report of the quasi-monoidal axioms on the requested pairs. Colimit
/// preservation is a sampled verdict, never a proof.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuasiMonoidalReport {
    pub unit_cofibrant: bool,
    pub pairs: Vec<PairVerdict>,
    pub colimit_preservation_sampled: bool,
    pub truncation_adequate: bool,
}

impl QuasiMonoidalReport {
    pub fn passes(&self) -> bool {
        self.unit_cofibrant
            && self.truncation_adequate
            && self.colimit_preservation_sampled
            && self.pairs.iter().all(|p| p.passes())
    }
}

/// Checks, for each requested pair (r, s): the boundary square
///
/// ```text
///   ∂R[r]□∂R[s] → ∂R[r]□R[s]
///        ↓              ↓
///   R[r]□∂R[s]  →  R[r]□R[s]
/// ```
///
/// is a pullback of presheaves consisting of normal monomorphisms; that the
/// unit is cofibrant (∅ → I is normal); and spot-checks colimit preservation
/// on coproducts and pushouts of representables.
pub fn quasi_monoidal_check(
    ez: &EzStructure,
    oracle: &dyn ProductOracle,
    pairs: &[(ObjId, ObjId)],
) -> Result<QuasiMonoidalReport> {
    let max = ez.max_degree();
    for &(r, s) in pairs {
        if ez.deg(r) + ez.deg(s) > max {
            return Err(Error::InadequateTruncation {
                required: ez.deg(r) + ez.deg(s),
                available: max,
            });
        }
    }
    let unit = oracle.unit(ez);
    let empty = SetDiagram::empty(ez.op_shape().clone());
    let from_empty = DiagramMap {
        source: empty.clone(),
        target: unit.clone(),
        components: vec![Vec::new(); ez.cat.n_objects()],
    };
    let unit_cofibrant = {
        let rep = is_normal_mono(ez, &from_empty);
        rep.agree() && rep.is_normal()
    };
    let mut verdicts = Vec::new();
    for &(r, s) in pairs {
        let (_, ir) = boundary(ez, r);
        let (_, is_) = boundary(ez, s);
        let rep_r = ez.representable(r);
        let rep_s = ez.representable(s);
        let id_r = DiagramMap::identity(&rep_r);
        let id_s = DiagramMap::identity(&rep_s);
        // the four maps of the square
        let bb_to_bs = oracle.product_map(ez, &copy_identity(&ir.source), &is_); // ∂r□∂s → ∂r□s
        let bb_to_rb = oracle.product_map(ez, &ir, &copy_identity(&is_.source)); // ∂r□∂s → r□∂s
        let bs_to_rs = oracle.product_map(ez, &ir, &id_s); // ∂r□s → r□s
        let rb_to_rs = oracle.product_map(ez, &id_r, &is_); // r□∂s → r□s
        // pullback of the cospan
        let pb = diagram_pullback(&bs_to_rs, &rb_to_rs)?;
        // canonical map ∂r□∂s → pullback must be bijective
        let mut square_is_pullback = true;
        for a in ez.cat.object_ids() {
            let n = bb_to_bs.source.size(a);
            let mut seen = vec![false; pb.apex.size(a)];
            if n != pb.apex.size(a) {
                square_is_pullback = false;
                break;
            }
            for e in 0..n {
                let img = (bb_to_bs.apply(a, e), bb_to_rb.apply(a, e));
                match pb.pairs[a].iter().position(|&p| p == img) {
                    Some(k) if !seen[k] => seen[k] = true,
                    _ => {
                        square_is_pullback = false;
                    }
                }
            }
        }
        let maps_normal = [
            check_normal(ez, &bb_to_bs),
            check_normal(ez, &bb_to_rb),
            check_normal(ez, &bs_to_rs),
            check_normal(ez, &rb_to_rs),
        ];
        verdicts.push(PairVerdict {
            r,
            s,
            square_is_pullback,
            maps_normal,
        });
    }
    // colimit preservation, sampled: (A ⊔ B)□C ≅ (A□C) ⊔ (B□C) and the
    // pushout of representable quotients is preserved
    let colimit_preservation_sampled = {
        let mut ok = true;
        let items: Vec<SetDiagram> = ez
            .cat
            .object_ids()
            .map(|r| ez.representable(r))
            .collect();
        for a in &items {
            for b in &items {
                for c in &items {
                    let (sum, _) = coproduct(&[a.clone(), b.clone()]);
                    let lhs = oracle.product(ez, &sum, c);
                    let (rhs, _) = coproduct(&[
                        oracle.product(ez, a, c),
                        oracle.product(ez, b, c),
                    ]);
                    if ez
                        .cat
                        .object_ids()
                        .any(|o| lhs.size(o) != rhs.size(o))
                    {
                        ok = false;
                    }
                }
            }
        }
        // pushout sample: glue two representables along a boundary and check
        // the product against the pushout of products
        if let Some(r) = ez.cat.object_ids().find(|&r| ez.deg(r) == 0) {
            let c = ez.representable(r);
            for s in ez.cat.object_ids() {
                let (bd, incl) = boundary(ez, s);
                let _ = bd;
                let po = diagram_pushout(&incl, &incl)?;
                let lhs = oracle.product(ez, &po.apex, &c);
                let pc = oracle.product_map(ez, &incl, &DiagramMap::identity(&c));
                let po2 = diagram_pushout(&pc, &pc)?;
                if ez
                    .cat
                    .object_ids()
                    .any(|o| lhs.size(o) != po2.apex.size(o))
                {
                    ok = false;
                }
            }
        }
        ok
    };
    Ok(QuasiMonoidalReport {
        unit_cofibrant,
        pairs: verdicts,
        colimit_preservation_sampled,
        truncation_adequate: true,
    })
}

fn copy_identity(d: &SetDiagram) -> DiagramMap {
    DiagramMap::identity(d)
}

fn check_normal(ez: &EzStructure, f: &DiagramMap) -> bool {
    let rep = is_normal_mono(ez, f);
    rep.agree() && rep.is_normal()
}

/// The pushout-product of two normal monomorphisms: the comparison map
/// (A□D) ∪_{A□C} (B□C) → B□D, together with its three-way normality verdict.
pub fn pushout_product(
    ez: &EzStructure,
    oracle: &dyn ProductOracle,
    u: &DiagramMap,
    v: &DiagramMap,
) -> Result<(DiagramMap, NormalityReport)> {
    let ru = is_normal_mono(ez, u);
    if !(ru.agree() && ru.is_normal()) {
        return Err(Error::Precondition(
            "first input is not a normal monomorphism".into(),
        ));
    }
    let rv = is_normal_mono(ez, v);
    if !(rv.agree() && rv.is_normal()) {
        return Err(Error::Precondition(
            "second input is not a normal monomorphism".into(),
        ));
    }
    let need = generation_degree(ez, &u.target) + generation_degree(ez, &v.target);
    if need > ez.max_degree() {
        return Err(Error::InadequateTruncation {
            required: need,
            available: ez.max_degree(),
        });
    }
    // span A□D ← A□C → B□C
    let a_d = oracle.product_map(ez, &DiagramMap::identity(&u.source), v); // A□C → A□D
    let b_c = oracle.product_map(ez, u, &DiagramMap::identity(&v.source)); // A□C → B□C
    let po = diagram_pushout(&a_d, &b_c)?;
    // comparison into B□D: A□D via u□id, B□C via id□v
    let u_d = oracle.product_map(ez, u, &DiagramMap::identity(&v.target));
    let b_v = oracle.product_map(ez, &DiagramMap::identity(&u.target), v);
    let op = ez.op_shape();
    let mut components = Vec::new();
    for o in op.object_ids() {
        let mut comp = vec![usize::MAX; po.apex.size(o)];
        for e in 0..a_d.target.size(o) {
            comp[po.from_left.apply(o, e)] = u_d.apply(o, e);
        }
        for e in 0..b_c.target.size(o) {
            let cls = po.from_right.apply(o, e);
            let img = b_v.apply(o, e);
            if comp[cls] != usize::MAX && comp[cls] != img {
                return Err(Error::Precondition(
                    "pushout-product comparison ill-defined".into(),
                ));
            }
            comp[cls] = img;
        }
        if comp.contains(&usize::MAX) {
            return Err(Error::Precondition(
                "pushout-product comparison not total".into(),
            ));
        }
        components.push(comp);
    }
    let comparison = DiagramMap {
        source: po.apex,
        target: u_d.target.clone(),
        components,
    };
    comparison.validate()?;
    let verdict = is_normal_mono(ez, &comparison);
    Ok((comparison, verdict))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn ez_simplex(n: usize) -> EzStructure {
        let (cat, s) = generators::simplex_trunc(n);
        EzStructure::new(cat, s.degree.clone()).unwrap()
    }

    #[test]
    fn day_convolution_on_representables_is_the_product() {
        // maps R[t] → R[r]□R[s] correspond to pairs (t→r, t→s)
        let ez = ez_simplex(2);
        let oracle = CartesianOracle;
        for r in ez.cat.object_ids() {
            for s in ez.cat.object_ids() {
                let p = oracle.product(ez_ref(&ez), &ez.representable(r), &ez.representable(s));
                for t in ez.cat.object_ids() {
                    assert_eq!(
                        p.size(t),
                        ez.cat.hom(t, r).len() * ez.cat.hom(t, s).len()
                    );
                }
            }
        }
    }

    fn ez_ref(ez: &EzStructure) -> &EzStructure {
        ez
    }

    #[test]
    fn quasi_monoidal_on_small_pairs() {
        let ez = ez_simplex(2);
        let oracle = CartesianOracle;
        let report =
            quasi_monoidal_check(&ez, &oracle, &[(0, 0), (0, 1), (1, 1), (0, 2)]).unwrap();
        assert!(report.passes(), "{report:?}");
    }

    #[test]
    fn inadequate_pair_is_refused() {
        let ez = ez_simplex(2);
        let oracle = CartesianOracle;
        let err = quasi_monoidal_check(&ez, &oracle, &[(2, 2)]).unwrap_err();
        match err {
            Error::InadequateTruncation {
                required,
                available,
            } => {
                assert_eq!(required, 4);
                assert_eq!(available, 2);
            }
            other => panic!("wrong error: {other}"),
        }
    }

    #[test]
    fn pushout_product_of_boundary_inclusions() {
        let ez = ez_simplex(2);
        let oracle = CartesianOracle;
        let (_, i1) = boundary(&ez, 1);
        let (map, verdict) = pushout_product(&ez, &oracle, &i1, &i1).unwrap();
        assert!(map.is_mono());
        assert!(verdict.agree() && verdict.is_normal(), "{verdict:?}");
    }

    #[test]
    fn pushout_product_with_point_inclusion() {
        // u = (∅ ↪ Δ[0]): the pushout-product is Δ[0]□v-shaped and normal
        let ez = ez_simplex(2);
        let oracle = CartesianOracle;
        let point = ez.representable(0);
        let empty = SetDiagram::empty(ez.op_shape().clone());
        let u = DiagramMap {
            source: empty,
            target: point,
            components: vec![Vec::new(); ez.cat.n_objects()],
        };
        let (_, i1) = boundary(&ez, 1);
        let (map, verdict) = pushout_product(&ez, &oracle, &u, &i1).unwrap();
        assert!(verdict.agree() && verdict.is_normal());
        // the source is ∂Δ[1]□Δ[0]-sized
        for o in ez.cat.object_ids() {
            assert_eq!(map.source.size(o), i1.source.size(o) * ez.representable(0).size(o));
        }
    }

    #[test]
    fn pushout_product_of_identity_is_iso_shaped() {
        let ez = ez_simplex(2);
        let oracle = CartesianOracle;
        let x = ez.representable(1);
        let idx = DiagramMap::identity(&x);
        let (_, i1) = boundary(&ez, 1);
        let (map, verdict) = pushout_product(&ez, &oracle, &idx, &i1).unwrap();
        assert!(verdict.is_normal());
        assert!(map.is_iso(), "pushout-product with an identity is an iso");
    }
}
