//! Four independent tests of whether two composable pairs lie in the same
//! class of the diagonal groupoid.
//!
//! For pairs `(f1, x1)` and `(f2, x2)` in `V ×_{b,l} H`:
//!
//! * orbit: the pairs share a core-action orbit;
//! * core box: some core element `E` has `l(E) = f2⁻¹·f1` and
//!   `b(E) = x1·x2⁻¹`;
//! * word: the loop `f1 x1 x2⁻¹ f2⁻¹` maps to an identity of `D(B)`;
//! * two boxes: some boxes `A1`, `A2` with `(l, b) = (f1, x1)` and
//!   `(f2, x2)` share their top and right sides.
//!
//! The last three require `t(f1) = t(f2)` and `r(x1) = r(x2)` and are
//! false otherwise.

use std::collections::{HashMap, HashSet};

use crate::diagonal::DiagonalGroupoid;
use crate::gpd::ArrowId;
use crate::word::{in_j, FreeProduct, Letter};

type Pair = (ArrowId, ArrowId);

/// Lookup tables shared by the four tests.
pub struct SimContext<'d, 'a> {
    diagonal: &'d DiagonalGroupoid<'a>,
    // (left, bottom) of core elements
    core_sides: HashSet<Pair>,
    // (left, bottom) -> {(top, right)}
    top_right_by_left_bottom: HashMap<Pair, HashSet<Pair>>,
}

impl<'d, 'a> SimContext<'d, 'a> {
    pub fn new(diagonal: &'d DiagonalGroupoid<'a>) -> Self {
        let b = diagonal.parent();
        let core_sides = diagonal
            .core()
            .elements()
            .iter()
            .map(|&e| (b.left(e), b.bottom(e)))
            .collect();
        let mut top_right_by_left_bottom: HashMap<Pair, HashSet<Pair>> = HashMap::new();
        for a in b.boxes() {
            top_right_by_left_bottom
                .entry((b.left(a), b.bottom(a)))
                .or_default()
                .insert((b.top(a), b.right(a)));
        }
        SimContext {
            diagonal,
            core_sides,
            top_right_by_left_bottom,
        }
    }

    fn endpoints_match(&self, (f1, x1): Pair, (f2, x2): Pair) -> bool {
        let b = self.diagonal.parent();
        let (v, h) = (b.vertical(), b.horizontal());
        v.src(f1) == v.src(f2) && h.end(x1) == h.end(x2)
    }

    /// Same orbit of the core action.
    pub fn by_orbit(&self, p1: Pair, p2: Pair) -> bool {
        match (
            self.diagonal.project(p1.0, p1.1),
            self.diagonal.project(p2.0, p2.1),
        ) {
            (Some(c1), Some(c2)) => c1 == c2,
            _ => false,
        }
    }

    /// A core element with sides `f2⁻¹·f1` and `x1·x2⁻¹`.
    pub fn by_core_box(&self, p1: Pair, p2: Pair) -> bool {
        if !self.endpoints_match(p1, p2) {
            return false;
        }
        let b = self.diagonal.parent();
        let (v, h) = (b.vertical(), b.horizontal());
        let left = v.mul(v.inv(p2.0), p1.0);
        let bottom = h.mul(p1.1, h.inv(p2.1));
        self.core_sides.contains(&(left, bottom))
    }

    /// The loop `f1 x1 x2⁻¹ f2⁻¹` has identity image in `D(B)`.
    pub fn by_word(&self, p1: Pair, p2: Pair) -> bool {
        if !self.endpoints_match(p1, p2) {
            return false;
        }
        let b = self.diagonal.parent();
        let fp = FreeProduct::of(b);
        let w = fp
            .word(vec![
                Letter::v(p1.0),
                Letter::h(p1.1),
                Letter::h(b.horizontal().inv(p2.1)),
                Letter::v(b.vertical().inv(p2.0)),
            ])
            .expect("pairs with matching endpoints form a loop");
        in_j(self.diagonal, &w).expect("loop")
    }

    /// Two boxes with the given left and bottom sides and a common top and
    /// right side.
    pub fn by_two_boxes(&self, p1: Pair, p2: Pair) -> bool {
        if !self.endpoints_match(p1, p2) {
            return false;
        }
        match (
            self.top_right_by_left_bottom.get(&p1),
            self.top_right_by_left_bottom.get(&p2),
        ) {
            (Some(a), Some(b)) => !a.is_disjoint(b),
            _ => false,
        }
    }

    /// All four answers, in the order orbit, core box, word, two boxes.
    pub fn all(&self, p1: Pair, p2: Pair) -> [bool; 4] {
        [
            self.by_orbit(p1, p2),
            self.by_core_box(p1, p2),
            self.by_word(p1, p2),
            self.by_two_boxes(p1, p2),
        ]
    }

    /// The first pair of carrier elements on which the tests disagree.
    pub fn disagreement(&self) -> Option<(Pair, Pair, [bool; 4])> {
        let pairs = self.diagonal.carrier().pairs();
        for &p1 in pairs {
            for &p2 in pairs {
                let answers = self.all(p1, p2);
                if answers.iter().any(|&a| a != answers[0]) {
                    return Some((p1, p2, answers));
                }
            }
        }
        None
    }
}

/// Whether two pairs define the same class, by orbit equality.
pub fn sim_b(d: &DiagonalGroupoid<'_>, p1: Pair, p2: Pair) -> bool {
    SimContext::new(d).by_orbit(p1, p2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dbl::DoubleGroupoid;
    use crate::diagonal::diagonal;
    use crate::factor::box_double;
    use crate::gen::{exact_factorization, pair_groupoid};
    use crate::groups::Group;

    #[test]
    fn reflexive_on_every_pair() {
        let b = DoubleGroupoid::coarse(pair_groupoid(2), pair_groupoid(2)).unwrap();
        let d = diagonal(&b).unwrap();
        let ctx = SimContext::new(&d);
        for &p in d.carrier().pairs() {
            assert_eq!(ctx.all(p, p), [true; 4]);
        }
        assert!(ctx.disagreement().is_none());
    }

    #[test]
    fn z2_pairs_one_zero_and_zero_one_are_related() {
        let g = Group::cyclic(2);
        let b = box_double(&exact_factorization(&g, &[0, 1], &[0, 1]).unwrap()).unwrap();
        let d = diagonal(&b).unwrap();
        let ctx = SimContext::new(&d);
        let (zero, one) = (ArrowId(0), ArrowId(1));
        assert_eq!(ctx.all((one, zero), (zero, one)), [true; 4]);
        assert_eq!(ctx.all((one, zero), (zero, zero)), [false; 4]);
        assert!(ctx.disagreement().is_none());
    }

    #[test]
    fn s3_distinct_pairs_are_never_related() {
        let g = Group::symmetric(3);
        let a = g.generated(&[g.element_of_perm(&[1, 0, 2])]);
        let c = g.generated(&[g.element_of_perm(&[1, 2, 0])]);
        let b = box_double(&exact_factorization(&g, &a, &c).unwrap()).unwrap();
        let d = diagonal(&b).unwrap();
        let ctx = SimContext::new(&d);
        for &p1 in d.carrier().pairs() {
            for &p2 in d.carrier().pairs() {
                assert_eq!(ctx.all(p1, p2), [p1 == p2; 4]);
            }
        }
    }

    #[test]
    fn endpoint_mismatch_is_false() {
        let b = DoubleGroupoid::coarse(pair_groupoid(2), pair_groupoid(2)).unwrap();
        let d = diagonal(&b).unwrap();
        let ctx = SimContext::new(&d);
        // (id_0, id_0) and (id_1, id_1) start at different objects
        let p1 = (ArrowId(0), ArrowId(0));
        let p2 = (ArrowId(3), ArrowId(3));
        assert_eq!(ctx.all(p1, p2), [false; 4]);
        assert!(!sim_b(&d, p1, p2));
    }
}
