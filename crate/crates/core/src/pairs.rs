//! Fibre products `V ×_P H` of two groupoids over a common base.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gpd::{ArrowId, GroupoidTable, ObjectId};

/// Which structural map of a groupoid is matched in a fibre product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Endpoint {
    Source,
    End,
}

impl Endpoint {
    fn of(self, g: &GroupoidTable, a: ArrowId) -> ObjectId {
        match self {
            Endpoint::Source => g.src(a),
            Endpoint::End => g.end(a),
        }
    }
}

/// The pairs `(v, h)` whose chosen endpoints agree, in lexicographic order,
/// each tagged with the common object `η(v, h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSet {
    pairs: Vec<(ArrowId, ArrowId)>,
    eta: Vec<ObjectId>,
    index: HashMap<(ArrowId, ArrowId), usize>,
}

impl PairSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pair(&self, k: usize) -> (ArrowId, ArrowId) {
        self.pairs[k]
    }

    pub fn pairs(&self) -> &[(ArrowId, ArrowId)] {
        &self.pairs
    }

    pub fn eta(&self, k: usize) -> ObjectId {
        self.eta[k]
    }

    pub fn etas(&self) -> &[ObjectId] {
        &self.eta
    }

    pub fn index_of(&self, v: ArrowId, h: ArrowId) -> Option<usize> {
        self.index.get(&(v, h)).copied()
    }
}

/// `V ×_P H` matching `on_v` of `V` against `on_h` of `H`.
///
/// ```
/// use dblgpd::gen::pair_groupoid;
/// use dblgpd::pairs::{composable_pairs, Endpoint};
///
/// let v = pair_groupoid(3);
/// let pairs = composable_pairs(&v, &v, Endpoint::End, Endpoint::Source).unwrap();
/// assert_eq!(pairs.len(), 27);
/// ```
pub fn composable_pairs(
    v: &GroupoidTable,
    h: &GroupoidTable,
    on_v: Endpoint,
    on_h: Endpoint,
) -> Result<PairSet> {
    if v.base_size() != h.base_size() {
        return Err(Error::BaseMismatch {
            left: v.base_size(),
            right: h.base_size(),
        });
    }
    let mut by_object = vec![Vec::new(); h.base_size()];
    for b in h.arrow_ids() {
        by_object[on_h.of(h, b).0].push(b);
    }
    let mut pairs = Vec::new();
    let mut eta = Vec::new();
    for a in v.arrow_ids() {
        let p = on_v.of(v, a);
        for &b in &by_object[p.0] {
            pairs.push((a, b));
            eta.push(p);
        }
    }
    let index = pairs.iter().enumerate().map(|(k, &ab)| (ab, k)).collect();
    Ok(PairSet { pairs, eta, index })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::pair_groupoid;
    use crate::gpd::Arrow;
    use crate::groups::Group;

    #[test]
    fn one_object_groups_give_every_pair() {
        let v = Group::cyclic(3).to_groupoid();
        let h = Group::symmetric(3).to_groupoid();
        let pairs = composable_pairs(&v, &h, Endpoint::End, Endpoint::Source).unwrap();
        assert_eq!(pairs.len(), 18);
    }

    #[test]
    fn pair_groupoid_has_cubic_pairs() {
        for n in 1..=5 {
            let g = pair_groupoid(n);
            let pairs = composable_pairs(&g, &g, Endpoint::End, Endpoint::Source).unwrap();
            assert_eq!(pairs.len(), n * n * n);
            // Σ_p |b⁻¹(p)|·|l⁻¹(p)|
            let expected: usize = g
                .objects()
                .map(|p| g.incoming(p).len() * g.outgoing(p).len())
                .sum();
            assert_eq!(pairs.len(), expected);
        }
    }

    #[test]
    fn pairs_through_an_unreached_object_are_absent() {
        // V: nothing ends at 1 except its identity; H: an arrow 1 -> 0
        let v = GroupoidTable::unit(2);
        let h = GroupoidTable::from_fn(
            2,
            vec![
                Arrow::new(0, 0),
                Arrow::new(1, 1),
                Arrow::new(0, 1),
                Arrow::new(1, 0),
            ],
            vec![ArrowId(0), ArrowId(1)],
            |a, b| {
                let table = [[0, 9, 2, 9], [9, 1, 9, 3], [9, 2, 9, 0], [3, 9, 1, 9]];
                ArrowId(table[a.0][b.0])
            },
        )
        .unwrap();
        let pairs = composable_pairs(&v, &h, Endpoint::End, Endpoint::Source).unwrap();
        assert_eq!(pairs.len(), 4);
        assert!(pairs.pairs().iter().all(|&(a, b)| v.end(a) == h.src(b)));
        assert_eq!(pairs.index_of(ArrowId(1), ArrowId(3)), Some(3));
        assert_eq!(pairs.index_of(ArrowId(0), ArrowId(3)), None);
    }

    #[test]
    fn base_mismatch_is_an_error() {
        let err = composable_pairs(
            &GroupoidTable::unit(1),
            &GroupoidTable::unit(2),
            Endpoint::End,
            Endpoint::Source,
        )
        .unwrap_err();
        assert_eq!(err, Error::BaseMismatch { left: 1, right: 2 });
    }
}
