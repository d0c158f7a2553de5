//! The core groupoid of a double groupoid and its actions on boxes and on
//! composable pairs.
//!
//! A core element is a box `E` whose top and right sides are identities.
//! It runs from its bottom-left vertex `s(E)` to its top-right vertex
//! `e(E)`:
//!
//! ```text
//!      ·  ──id──▶ e(E)
//!      │           │
//!  l(E)│     E     │id
//!      ▼           ▼
//!    s(E) ──b(E)─▶ ·
//! ```

use std::collections::HashMap;

use crate::action::{LeftAction, Partition};
use crate::dbl::{BoxId, DoubleGroupoid};
use crate::error::{Error, Result};
use crate::gpd::{Arrow, ArrowId, GroupoidTable, ObjectId};
use crate::pairs::{composable_pairs, Endpoint, PairSet};

/// The core groupoid `E(B)`, stored as a table whose arrow `k` is the box
/// `elements[k]`.
#[derive(Debug, Clone)]
pub struct CoreGroupoid<'a> {
    parent: &'a DoubleGroupoid,
    elements: Vec<BoxId>,
    index: HashMap<BoxId, ArrowId>,
    table: GroupoidTable,
}

/// Validates `b` and builds its core groupoid.
pub fn core_groupoid(b: &DoubleGroupoid) -> Result<CoreGroupoid<'_>> {
    let report = b.validate();
    if !report.is_valid() {
        return Err(Error::InvalidDouble(report.to_string()));
    }
    CoreGroupoid::of_valid(b)
}

impl<'a> CoreGroupoid<'a> {
    /// Builds the core of a double groupoid already known to be valid.
    pub fn of_valid(b: &'a DoubleGroupoid) -> Result<Self> {
        let (v, h) = (b.vertical(), b.horizontal());
        let elements: Vec<BoxId> = b
            .boxes()
            .filter(|&a| h.is_identity(b.top(a)) && v.is_identity(b.right(a)))
            .collect();
        let index: HashMap<BoxId, ArrowId> = elements
            .iter()
            .enumerate()
            .map(|(k, &e)| (e, ArrowId(k)))
            .collect();
        let arrows = elements
            .iter()
            .map(|&e| Arrow::new(b.bl(e).0, b.tr(e).0))
            .collect();
        let lookup = |a: BoxId| {
            index
                .get(&a)
                .copied()
                .ok_or_else(|| Error::InvalidDouble(format!("box {a} should lie in the core")))
        };
        let ident = v
            .objects()
            .map(|p| lookup(b.unit_box(p)))
            .collect::<Result<Vec<_>>>()?;
        let inv = elements
            .iter()
            .map(|&e| lookup(inverse_box(b, e)))
            .collect::<Result<Vec<_>>>()?;
        let mut comp = Vec::new();
        let mut by_src: Vec<Vec<BoxId>> = vec![Vec::new(); b.base_size()];
        for &f in &elements {
            by_src[b.bl(f).0].push(f);
        }
        for &e in &elements {
            for &f in &by_src[b.tr(e).0] {
                comp.push((index[&e], index[&f], lookup(product_box(b, e, f))?));
            }
        }
        let table = GroupoidTable::from_parts(b.base_size(), arrows, comp, ident, inv)?;
        let report = table.validate();
        if !report.is_valid() {
            return Err(Error::InvalidConstruction(report));
        }
        Ok(CoreGroupoid {
            parent: b,
            elements,
            index,
            table,
        })
    }

    pub fn parent(&self) -> &'a DoubleGroupoid {
        self.parent
    }

    pub fn table(&self) -> &GroupoidTable {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Core boxes in id order.
    pub fn elements(&self) -> &[BoxId] {
        &self.elements
    }

    pub fn element(&self, e: ArrowId) -> BoxId {
        self.elements[e.0]
    }

    /// The core arrow of a box, if the box lies in the core.
    pub fn index_of(&self, a: BoxId) -> Option<ArrowId> {
        self.index.get(&a).copied()
    }

    /// `s(E)`, the bottom-left vertex.
    pub fn source(&self, e: ArrowId) -> ObjectId {
        self.table.src(e)
    }

    /// `e(E)`, the top-right vertex.
    pub fn end(&self, e: ArrowId) -> ObjectId {
        self.table.end(e)
    }

    fn check_moment(&self, e: ArrowId, moment: ObjectId) -> Result<()> {
        if !self.table.contains(e) {
            return Err(Error::arrow(e, self.table.num_arrows()));
        }
        if self.end(e) != moment {
            return Err(Error::MomentMismatch {
                element: e.0,
                moment: moment.0,
                end: self.end(e).0,
            });
        }
        Ok(())
    }

    /// `E ⇀ A`: the box `A` stacked on `E` widened by the vertical identity
    /// of `b(A)`. Defined when `e(E)` is the bottom-left vertex of `A`; the
    /// result keeps `t(A)` and `r(A)`.
    pub fn act_box(&self, e: ArrowId, a: BoxId) -> Result<BoxId> {
        let b = self.parent;
        if a.0 >= b.num_boxes() {
            return Err(Error::UnknownBox(a.0));
        }
        self.check_moment(e, b.bl(a))?;
        Ok(act_box_unchecked(b, self.element(e), a))
    }

    /// `E ▷ (f, x) = (f·l(E), b(E)·x)`, defined when `b(f) = e(E)`.
    pub fn act_pair(&self, e: ArrowId, pair: (ArrowId, ArrowId)) -> Result<(ArrowId, ArrowId)> {
        let b = self.parent;
        let (f, x) = pair;
        let (v, h) = (b.vertical(), b.horizontal());
        if !v.contains(f) {
            return Err(Error::arrow(f, v.num_arrows()));
        }
        if !h.contains(x) || h.src(x) != v.end(f) {
            return Err(Error::arrow(x, h.num_arrows()));
        }
        self.check_moment(e, v.end(f))?;
        Ok(act_pair_unchecked(b, self.element(e), pair))
    }

    /// The action on boxes along `γ(A) = bl(A)`.
    pub fn box_action(&self) -> LeftAction {
        let b = self.parent;
        let moment = b.boxes().map(|a| b.bl(a)).collect();
        LeftAction::from_fn(&self.table, moment, |e, a| {
            act_box_unchecked(b, self.element(e), BoxId(a)).0
        })
    }

    /// The pairs `V ×_{b,l} H` on which the core acts.
    pub fn carrier(&self) -> PairSet {
        let b = self.parent;
        composable_pairs(
            b.vertical(),
            b.horizontal(),
            Endpoint::End,
            Endpoint::Source,
        )
        .expect("side groupoids share a base")
    }

    /// The action on `pairs` (as produced by [`CoreGroupoid::carrier`])
    /// along `η(f, x) = b(f)`.
    pub fn pair_action(&self, pairs: &PairSet) -> LeftAction {
        let b = self.parent;
        LeftAction::from_fn(&self.table, pairs.etas().to_vec(), |e, n| {
            let (f, x) = act_pair_unchecked(b, self.element(e), pairs.pair(n));
            pairs.index_of(f, x).expect("action stays in the carrier")
        })
    }

    /// Orbits of the box action.
    pub fn box_orbits(&self) -> Partition {
        self.box_action().orbits(&self.table)
    }

    /// Orbits of the pair action on `pairs`.
    pub fn pair_orbits(&self, pairs: &PairSet) -> Partition {
        self.pair_action(pairs).orbits(&self.table)
    }
}

/// `E ∘ F` for core boxes with `e(E) = s(F)`: `F` widened by the horizontal
/// identity of `l(F)`, stacked on `E` widened by the vertical identity of
/// `b(F)`. Its sides are `l(F)·l(E)` and `b(E)·b(F)`.
pub fn product_box(b: &DoubleGroupoid, e: BoxId, f: BoxId) -> BoxId {
    let upper = b.hmul(b.hident(b.left(f)), f);
    let lower = b.hmul(e, b.vident(b.bottom(f)));
    b.vmul(upper, lower)
}

/// `E⁻¹`: the vertical inverse of `E` widened by the vertical identity of
/// `b(E)⁻¹`.
pub fn inverse_box(b: &DoubleGroupoid, e: BoxId) -> BoxId {
    let y = b.bottom(e);
    let widened = b.hmul(e, b.vident(b.horizontal().inv(y)));
    b.vinv(widened)
}

fn act_box_unchecked(b: &DoubleGroupoid, e: BoxId, a: BoxId) -> BoxId {
    let upper = b.hmul(b.hident(b.left(a)), a);
    let lower = b.hmul(e, b.vident(b.bottom(a)));
    b.vmul(upper, lower)
}

fn act_pair_unchecked(
    b: &DoubleGroupoid,
    e: BoxId,
    (f, x): (ArrowId, ArrowId),
) -> (ArrowId, ArrowId) {
    (
        b.vertical().mul(f, b.left(e)),
        b.horizontal().mul(b.bottom(e), x),
    )
}

/// True iff every stabilizer of the box action is trivial.
pub fn check_free(b: &DoubleGroupoid) -> Result<bool> {
    Ok(box_action_witness(&core_groupoid(b)?).is_none())
}

/// A non-identity core element fixing some box, with that box.
pub fn box_action_witness(core: &CoreGroupoid<'_>) -> Option<(BoxId, BoxId)> {
    core.box_action()
        .non_free_witness(core.table())
        .map(|(e, a)| (core.element(e), BoxId(a)))
}

/// A non-identity core element fixing some composable pair, with that pair.
pub fn pair_action_witness(core: &CoreGroupoid<'_>) -> Option<(BoxId, (ArrowId, ArrowId))> {
    let pairs = core.carrier();
    core.pair_action(&pairs)
        .non_free_witness(core.table())
        .map(|(e, n)| (core.element(e), pairs.pair(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dbl::Frame;
    use crate::factor::box_double;
    use crate::gen::{exact_factorization, pair_groupoid};
    use crate::groups::Group;

    fn z2z2() -> DoubleGroupoid {
        let g = Group::cyclic(2);
        let all = [0, 1];
        box_double(&exact_factorization(&g, &all, &all).unwrap()).unwrap()
    }

    fn s3() -> DoubleGroupoid {
        let g = Group::symmetric(3);
        let a = g.generated(&[g.element_of_perm(&[1, 0, 2])]);
        let b = g.generated(&[g.element_of_perm(&[1, 2, 0])]);
        box_double(&exact_factorization(&g, &a, &b).unwrap()).unwrap()
    }

    #[test]
    fn identity_only_core_is_unit() {
        let b = DoubleGroupoid::identity_only(pair_groupoid(3), GroupoidTable::unit(3)).unwrap();
        let core = core_groupoid(&b).unwrap();
        assert_eq!(core.len(), 3);
        assert!(core
            .table()
            .arrow_ids()
            .all(|e| core.table().is_identity(e)));
        assert!(check_free(&b).unwrap());
    }

    #[test]
    fn vacant_s3_core_is_trivial() {
        let b = s3();
        let core = core_groupoid(&b).unwrap();
        assert_eq!(core.len(), 1);
        assert!(core.table().validate().is_valid());
    }

    #[test]
    fn z2_core_has_two_elements() {
        let b = z2z2();
        let core = core_groupoid(&b).unwrap();
        assert_eq!(core.len(), 2);
        let carrier: Vec<(ArrowId, ArrowId)> = core
            .elements()
            .iter()
            .map(|&e| (b.left(e), b.bottom(e)))
            .collect();
        // j(h⁻¹) = i(y) in Z2 means h = y
        assert_eq!(
            carrier,
            vec![(ArrowId(0), ArrowId(0)), (ArrowId(1), ArrowId(1))]
        );
    }

    #[test]
    fn nontrivial_core_element_moves_boxes_within_top_right_classes() {
        let b = z2z2();
        let core = core_groupoid(&b).unwrap();
        let e = core
            .table()
            .arrow_ids()
            .find(|&e| !core.table().is_identity(e))
            .unwrap();
        let zero = ArrowId(0);
        let one = ArrowId(1);
        // top 0, left 0, right 1, bottom 1: 0 + 1 = 0 + 1
        let a = b
            .boxes_with_frame(&Frame::new(zero, zero, one, one))
            .next()
            .unwrap();
        let moved = core.act_box(e, a).unwrap();
        assert_eq!(b.frame(moved).unwrap(), Frame::new(zero, one, one, zero));
        assert_eq!(core.act_box(e, moved).unwrap(), a);
    }

    #[test]
    fn unit_acts_trivially_and_products_act_stepwise() {
        for b in [z2z2(), s3()] {
            let core = CoreGroupoid::of_valid(&b).unwrap();
            let t = core.table();
            for a in b.boxes() {
                let p = b.bl(a);
                assert_eq!(core.act_box(t.ident(p), a).unwrap(), a);
            }
            for (e, f) in t.composable_pairs() {
                for a in b.boxes().filter(|&a| b.bl(a) == t.end(f)) {
                    let stepwise = core.act_box(e, core.act_box(f, a).unwrap()).unwrap();
                    assert_eq!(core.act_box(t.mul(e, f), a).unwrap(), stepwise);
                }
            }
            assert!(core.box_action().validate(t).is_valid());
            let pairs = core.carrier();
            assert!(core.pair_action(&pairs).validate(t).is_valid());
        }
    }

    #[test]
    fn pair_action_formula() {
        let b = z2z2();
        let core = core_groupoid(&b).unwrap();
        let (v, h) = (b.vertical(), b.horizontal());
        for e in core.table().arrow_ids() {
            let eb = core.element(e);
            for f in v.arrow_ids() {
                for x in h.arrow_ids() {
                    let (f2, x2) = core.act_pair(e, (f, x)).unwrap();
                    assert_eq!(f2, v.mul(f, b.left(eb)));
                    assert_eq!(x2, h.mul(b.bottom(eb), x));
                }
            }
        }
    }

    #[test]
    fn z2_pair_orbits() {
        let b = z2z2();
        let core = core_groupoid(&b).unwrap();
        let pairs = core.carrier();
        assert_eq!(pairs.len(), 4);
        let orbits = core.pair_orbits(&pairs);
        assert_eq!(orbits.len(), 2);
        assert!(pair_action_witness(&core).is_none());
    }

    #[test]
    fn moment_mismatch_is_an_error() {
        let b = DoubleGroupoid::coarse(pair_groupoid(2), pair_groupoid(2)).unwrap();
        let core = core_groupoid(&b).unwrap();
        let e = core
            .table()
            .arrow_ids()
            .find(|&e| core.end(e) == ObjectId(1))
            .unwrap();
        let a = b.boxes().find(|&a| b.bl(a) == ObjectId(0)).unwrap();
        assert!(matches!(
            core.act_box(e, a),
            Err(Error::MomentMismatch {
                moment: 0,
                end: 1,
                ..
            })
        ));
    }

    #[test]
    fn doubled_box_action_is_free_but_pair_action_is_not() {
        let b = z2z2().doubled().unwrap();
        let core = core_groupoid(&b).unwrap();
        assert_eq!(core.len(), 4);
        assert!(check_free(&b).unwrap());
        let (e, _) = pair_action_witness(&core).expect("the second copy of Θ fixes pairs");
        assert_eq!(
            b.frame(e).unwrap(),
            b.frame(b.unit_box(ObjectId(0))).unwrap()
        );
    }

    #[test]
    fn box_orbits_are_same_top_right_classes() {
        for b in [z2z2(), s3()] {
            let core = core_groupoid(&b).unwrap();
            let orbits = core.box_orbits();
            for a in b.boxes() {
                for c in b.boxes() {
                    let same = b.top(a) == b.top(c) && b.right(a) == b.right(c);
                    assert_eq!(orbits.same_class(a.0, c.0), same);
                }
            }
        }
    }
}
