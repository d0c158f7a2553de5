//! Left groupoid actions along a moment map, action groupoids, and orbit
//! partitions.

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::gpd::{Arrow, ArrowId, GroupoidTable, ObjectId};
use crate::report::{Axiom, ValidationReport};

/// A left action of a groupoid `G` on a finite carrier `N` along a moment
/// map `ε: N → P`. `g·n` is defined iff `end(g) = ε(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftAction {
    carrier_size: usize,
    moment: Vec<ObjectId>,
    // table[g * carrier_size + n]
    table: Vec<Option<usize>>,
}

impl LeftAction {
    /// Tabulates `act` on every pair with `end(g) = ε(n)`.
    pub fn from_fn(
        groupoid: &GroupoidTable,
        moment: Vec<ObjectId>,
        mut act: impl FnMut(ArrowId, usize) -> usize,
    ) -> Self {
        let carrier_size = moment.len();
        let mut by_moment = vec![Vec::new(); groupoid.base_size()];
        for (n, p) in moment.iter().enumerate() {
            by_moment[p.0].push(n);
        }
        let mut table = vec![None; groupoid.num_arrows() * carrier_size];
        for g in groupoid.arrow_ids() {
            for &n in &by_moment[groupoid.end(g).0] {
                table[g.0 * carrier_size + n] = Some(act(g, n));
            }
        }
        LeftAction {
            carrier_size,
            moment,
            table,
        }
    }

    /// An action from explicit `(g, n, g·n)` entries; nothing is checked
    /// beyond index ranges.
    pub fn from_entries(
        groupoid: &GroupoidTable,
        moment: Vec<ObjectId>,
        entries: impl IntoIterator<Item = (ArrowId, usize, usize)>,
    ) -> Result<Self> {
        let carrier_size = moment.len();
        if let Some(p) = moment.iter().find(|p| p.0 >= groupoid.base_size()) {
            return Err(Error::object(*p, groupoid.base_size()));
        }
        let mut table = vec![None; groupoid.num_arrows() * carrier_size];
        for (g, n, m) in entries {
            if !groupoid.contains(g) {
                return Err(Error::arrow(g, groupoid.num_arrows()));
            }
            if n >= carrier_size || m >= carrier_size {
                return Err(Error::WrongLength {
                    what: "action carrier",
                    expected: carrier_size,
                    found: n.max(m) + 1,
                });
            }
            table[g.0 * carrier_size + n] = Some(m);
        }
        Ok(LeftAction {
            carrier_size,
            moment,
            table,
        })
    }

    pub fn carrier_size(&self) -> usize {
        self.carrier_size
    }

    pub fn moment(&self, n: usize) -> ObjectId {
        self.moment[n]
    }

    pub fn act(&self, g: ArrowId, n: usize) -> Option<usize> {
        self.table[g.0 * self.carrier_size + n]
    }

    /// Checks `ε(g·n) = src(g)`, `id(ε(n))·n = n` and `(gh)·n = g·(h·n)`,
    /// plus that `g·n` is defined exactly when `end(g) = ε(n)`.
    pub fn validate(&self, groupoid: &GroupoidTable) -> ValidationReport {
        let mut report = ValidationReport::new();
        for g in groupoid.arrow_ids() {
            for n in 0..self.carrier_size {
                let defined = self.act(g, n).is_some();
                if defined != (groupoid.end(g) == self.moment(n)) {
                    report.push(Axiom::ActionDomain, [g.0, n]);
                }
                if let Some(m) = self.act(g, n) {
                    if self.moment(m) != groupoid.src(g) {
                        report.push(Axiom::ActionMoment, [g.0, n]);
                    }
                }
            }
        }
        for n in 0..self.carrier_size {
            let e = groupoid.ident(self.moment(n));
            if self.act(e, n) != Some(n) {
                report.push(Axiom::ActionUnit, [n]);
            }
        }
        for (g, h) in groupoid.composable_pairs() {
            let Some(gh) = groupoid.compose(g, h) else {
                continue;
            };
            for n in 0..self.carrier_size {
                if groupoid.end(h) != self.moment(n) {
                    continue;
                }
                let stepwise = self.act(h, n).and_then(|m| self.act(g, m));
                if stepwise.is_none() || self.act(gh, n) != stepwise {
                    report.push(Axiom::ActionCompatibility, [g.0, h.0, n]);
                }
            }
        }
        report
    }

    /// Orbits of the action, by union-find over every defined `g·n`.
    pub fn orbits(&self, groupoid: &GroupoidTable) -> Partition {
        let mut uf = UnionFind::<usize>::new(self.carrier_size);
        for g in groupoid.arrow_ids() {
            for n in 0..self.carrier_size {
                if let Some(m) = self.act(g, n) {
                    uf.union(n, m);
                }
            }
        }
        Partition::from_labels(&uf.into_labeling())
    }

    /// Arrows fixing `n`.
    pub fn stabilizer(&self, groupoid: &GroupoidTable, n: usize) -> Vec<ArrowId> {
        groupoid
            .arrow_ids()
            .filter(|&g| self.act(g, n) == Some(n))
            .collect()
    }

    /// The first element with a stabilizer larger than its identity.
    pub fn non_free_witness(&self, groupoid: &GroupoidTable) -> Option<(ArrowId, usize)> {
        (0..self.carrier_size).find_map(|n| {
            self.stabilizer(groupoid, n)
                .into_iter()
                .find(|&g| !groupoid.is_identity(g))
                .map(|g| (g, n))
        })
    }
}

/// The action groupoid `G ⋉ N`: arrows `(g, n)` with `end(g) = ε(n)`,
/// `src(g, n) = g·n`, `end(g, n) = n`, and `(g, n)(h, m) = (gh, m)`.
///
/// Returns the table together with the `(g, n)` label of each arrow.
pub fn action_groupoid(
    groupoid: &GroupoidTable,
    action: &LeftAction,
) -> Result<(GroupoidTable, Vec<(ArrowId, usize)>)> {
    let report = action.validate(groupoid);
    if !report.is_valid() {
        return Err(Error::InvalidAction(report));
    }
    let n = action.carrier_size();
    let mut labels = Vec::new();
    let mut index = vec![None; groupoid.num_arrows() * n];
    for g in groupoid.arrow_ids() {
        for m in 0..n {
            if action.act(g, m).is_some() {
                index[g.0 * n + m] = Some(labels.len());
                labels.push((g, m));
            }
        }
    }
    let arrows = labels
        .iter()
        .map(|&(g, m)| Arrow::new(action.act(g, m).expect("defined"), m))
        .collect();
    let ident = (0..n)
        .map(|m| {
            let e = groupoid.ident(action.moment(m));
            ArrowId(index[e.0 * n + m].expect("identity acts"))
        })
        .collect();
    let table = GroupoidTable::from_fn(n, arrows, ident, |a, b| {
        let (g, _) = labels[a.0];
        let (h, m) = labels[b.0];
        let gh = groupoid.mul(g, h);
        ArrowId(index[gh.0 * n + m].expect("composite acts"))
    })?;
    Ok((table, labels))
}

/// A partition of `{0, .., n-1}` into classes. Classes are ordered by their
/// least member and each class is sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds the partition whose classes are the fibres of `labels`.
    pub fn from_labels<L: Eq + std::hash::Hash + Copy>(labels: &[L]) -> Self {
        let mut seen = std::collections::HashMap::new();
        let mut class_of = Vec::with_capacity(labels.len());
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (k, l) in labels.iter().enumerate() {
            let c = *seen.entry(*l).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[c].push(k);
            class_of.push(c);
        }
        Partition { class_of, classes }
    }

    pub fn class_of(&self, k: usize) -> usize {
        self.class_of[k]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn same_class(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Group;

    #[test]
    fn trivial_action_of_unit_groupoid() {
        let unit = GroupoidTable::unit(1);
        let act = LeftAction::from_fn(&unit, vec![ObjectId(0); 3], |_, n| n);
        assert!(act.validate(&unit).is_valid());
        let (g, labels) = action_groupoid(&unit, &act).unwrap();
        assert_eq!(g.num_arrows(), 3);
        assert!(g.arrow_ids().all(|a| g.is_identity(a)));
        assert_eq!(labels.len(), 3);
        assert_eq!(act.orbits(&unit).len(), 3);
    }

    #[test]
    fn left_translation_groupoid_has_order_squared_arrows() {
        for group in [Group::cyclic(4), Group::symmetric(3)] {
            let g = group.to_groupoid();
            let n = group.order();
            let act = LeftAction::from_fn(&g, vec![ObjectId(0); n], |a, m| group.mul(a.0, m));
            assert!(act.validate(&g).is_valid());
            let (ag, _) = action_groupoid(&g, &act).unwrap();
            assert_eq!(ag.num_arrows(), n * n);
            assert!(ag.validate().is_valid());
            assert_eq!(act.orbits(&g).len(), 1);
            assert!(act.non_free_witness(&g).is_none());
        }
    }

    #[test]
    fn z2_swap_action() {
        let z2 = Group::cyclic(2).to_groupoid();
        let act = LeftAction::from_fn(&z2, vec![ObjectId(0); 2], |g, n| (n + g.0) % 2);
        let (ag, _) = action_groupoid(&z2, &act).unwrap();
        assert_eq!(ag.num_arrows(), 4);
        assert!(ag.validate().is_valid());
    }

    #[test]
    fn invalid_action_is_rejected_with_axiom() {
        let z2 = Group::cyclic(2).to_groupoid();
        // the nontrivial element fixes 0 but moves 1 to 0: not compatible
        let bad = LeftAction::from_entries(
            &z2,
            vec![ObjectId(0); 2],
            [
                (ArrowId(0), 0, 0),
                (ArrowId(0), 1, 1),
                (ArrowId(1), 0, 0),
                (ArrowId(1), 1, 0),
            ],
        )
        .unwrap();
        match action_groupoid(&z2, &bad) {
            Err(Error::InvalidAction(report)) => {
                assert!(report.contains(Axiom::ActionCompatibility))
            }
            other => panic!("expected invalid action, got {other:?}"),
        }
    }

    #[test]
    fn partition_from_labels() {
        let p = Partition::from_labels(&[7, 3, 7, 1, 3]);
        assert_eq!(p.classes(), &[vec![0, 2], vec![1, 4], vec![3]]);
        assert!(p.same_class(1, 4));
        assert!(!p.same_class(0, 3));
    }
}
