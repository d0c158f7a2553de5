//! The diagonal groupoid `D(B)`: classes `[v, h]` of composable pairs
//! `(v, h) ∈ V ×_{b,l} H` under the core action.
//!
//! The class `[v, h]` runs from the top of `v` to the right end of `h`.
//! Products use a filler box `F` with `t(F) = h1` and `r(F) = v2`:
//!
//! ```text
//!      ──h1──▶
//!   │         │
//!  v1    F    v2
//!   ▼         ▼
//!   ──b(F)──▶ ──h2──▶
//! ```
//!
//! so that `[v1, h1][v2, h2] = [v1·l(F), b(F)·h2]`.

use std::collections::HashMap;

use crate::action::Partition;
use crate::coregpd::CoreGroupoid;
use crate::dbl::{BoxId, DoubleGroupoid};
use crate::error::{Error, Result};
use crate::gpd::{Arrow, ArrowId, GroupoidTable};
use crate::morphism::GroupoidMorphism;
use crate::pairs::PairSet;

/// `D(B)` together with the data it was computed from.
#[derive(Debug, Clone)]
pub struct DiagonalGroupoid<'a> {
    core: CoreGroupoid<'a>,
    pairs: PairSet,
    classes: Partition,
    table: GroupoidTable,
}

/// Builds `D(B)` for a valid, slim double groupoid with the filling
/// condition, and verifies that products do not depend on the filler box.
pub fn diagonal(b: &DoubleGroupoid) -> Result<DiagonalGroupoid<'_>> {
    let report = b.validate();
    if !report.is_valid() {
        return Err(Error::InvalidDouble(report.to_string()));
    }
    let d = DiagonalGroupoid::of_valid(b)?;
    d.verify_filler_independence()?;
    Ok(d)
}

impl<'a> DiagonalGroupoid<'a> {
    /// Builds `D(B)` from one representative and one filler per product.
    /// `b` must already be known to be valid.
    pub fn of_valid(b: &'a DoubleGroupoid) -> Result<Self> {
        if let Some((x, y)) = b.slimness_witness() {
            return Err(Error::NotSlim(x.0, y.0));
        }
        if let Some((x, f)) = b.filling_witness() {
            return Err(Error::FillingFails {
                top: b.horizontal().inv(x).0,
                right: f.0,
            });
        }
        let core = CoreGroupoid::of_valid(b)?;
        let pairs = core.carrier();
        let classes = core.pair_orbits(&pairs);
        let (v, h) = (b.vertical(), b.horizontal());
        let rep = |c: usize| pairs.pair(classes.classes()[c][0]);
        let class_of = |(f, x): (ArrowId, ArrowId)| {
            ArrowId(classes.class_of(pairs.index_of(f, x).expect("pair in carrier")))
        };
        let arrows = (0..classes.len())
            .map(|c| {
                let (f, x) = rep(c);
                Arrow::new(v.src(f).0, h.end(x).0)
            })
            .collect::<Vec<_>>();
        let ident = v
            .objects()
            .map(|p| class_of((v.ident(p), h.ident(p))))
            .collect();
        let mut by_left_bottom: HashMap<(ArrowId, ArrowId), BoxId> = HashMap::new();
        for a in b.boxes() {
            by_left_bottom.entry((b.left(a), b.bottom(a))).or_insert(a);
        }
        let inv = (0..classes.len())
            .map(|c| {
                let (f, x) = rep(c);
                let filler = by_left_bottom.get(&(f, x)).ok_or(Error::FillingFails {
                    top: x.0,
                    right: f.0,
                })?;
                Ok(class_of((v.inv(b.right(*filler)), h.inv(b.top(*filler)))))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); b.base_size()];
        for (c, arrow) in arrows.iter().enumerate() {
            by_src[arrow.src.0].push(c);
        }
        let mut comp = Vec::new();
        for c1 in 0..classes.len() {
            let (v1, h1) = rep(c1);
            for &c2 in &by_src[arrows[c1].end.0] {
                let (v2, h2) = rep(c2);
                let filler = b.fillers(h1, v2).next().ok_or(Error::FillingFails {
                    top: h1.0,
                    right: v2.0,
                })?;
                let product = product_pair(b, (v1, h1), (v2, h2), filler);
                comp.push((ArrowId(c1), ArrowId(c2), class_of(product)));
            }
        }
        let table = GroupoidTable::from_parts(b.base_size(), arrows, comp, ident, inv)?;
        let report = table.validate();
        if !report.is_valid() {
            return Err(Error::InvalidConstruction(report));
        }
        Ok(DiagonalGroupoid {
            core,
            pairs,
            classes,
            table,
        })
    }

    pub fn parent(&self) -> &'a DoubleGroupoid {
        self.core.parent()
    }

    pub fn core(&self) -> &CoreGroupoid<'a> {
        &self.core
    }

    /// The groupoid structure on classes.
    pub fn table(&self) -> &GroupoidTable {
        &self.table
    }

    pub fn carrier(&self) -> &PairSet {
        &self.pairs
    }

    pub fn classes(&self) -> &Partition {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// The lexicographically least pair of a class.
    pub fn representative(&self, c: ArrowId) -> (ArrowId, ArrowId) {
        self.pairs.pair(self.classes.classes()[c.0][0])
    }

    /// Every pair of a class, in lexicographic order.
    pub fn members(&self, c: ArrowId) -> impl Iterator<Item = (ArrowId, ArrowId)> + '_ {
        self.classes.classes()[c.0]
            .iter()
            .map(|&k| self.pairs.pair(k))
    }

    /// `π(f, x) = [f, x]`, or `None` if the pair is not composable.
    pub fn project(&self, f: ArrowId, x: ArrowId) -> Option<ArrowId> {
        self.pairs
            .index_of(f, x)
            .map(|k| ArrowId(self.classes.class_of(k)))
    }

    /// `i(x) = [id, x]`.
    pub fn i(&self, x: ArrowId) -> ArrowId {
        let b = self.parent();
        let id = b.vertical().ident(b.horizontal().src(x));
        self.project(id, x).expect("identity pair")
    }

    /// `j(f) = [f, id]`.
    pub fn j(&self, f: ArrowId) -> ArrowId {
        let b = self.parent();
        let id = b.horizontal().ident(b.vertical().end(f));
        self.project(f, id).expect("identity pair")
    }

    /// `i: H → D(B)` and `j: V → D(B)`.
    pub fn induced_maps(&self) -> (GroupoidMorphism, GroupoidMorphism) {
        let b = self.parent();
        let i = GroupoidMorphism::new(b.horizontal().arrow_ids().map(|x| self.i(x)).collect());
        let j = GroupoidMorphism::new(b.vertical().arrow_ids().map(|f| self.j(f)).collect());
        (i, j)
    }

    /// Recomputes every product from every pair of representatives with
    /// every filler box, and checks that all agree with the table.
    pub fn verify_filler_independence(&self) -> Result<()> {
        let b = self.parent();
        for (c1, c2) in self.table.composable_pairs() {
            let expected = self.table.mul(c1, c2);
            for (v1, h1) in self.members(c1) {
                for (v2, h2) in self.members(c2) {
                    for filler in b.fillers(h1, v2) {
                        let product = product_pair(b, (v1, h1), (v2, h2), filler);
                        if self.project(product.0, product.1) != Some(expected) {
                            return Err(Error::FillerDependence {
                                top: h1.0,
                                right: v2.0,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The number of filler boxes at each `(top, right)` corner that occurs
    /// in some product, as `(top, right, count)`.
    pub fn filler_counts(&self) -> Vec<(ArrowId, ArrowId, usize)> {
        let b = self.parent();
        let (v, h) = (b.vertical(), b.horizontal());
        let mut counts = Vec::new();
        for x in h.arrow_ids() {
            for &g in v.outgoing(h.end(x)) {
                counts.push((x, g, b.fillers(x, g).count()));
            }
        }
        counts
    }

    pub fn base_size(&self) -> usize {
        self.table.base_size()
    }
}

/// `[v1, h1][v2, h2]` computed with the filler `F`: `(v1·l(F), b(F)·h2)`.
pub fn product_pair(
    b: &DoubleGroupoid,
    (v1, _h1): (ArrowId, ArrowId),
    (_v2, h2): (ArrowId, ArrowId),
    filler: BoxId,
) -> (ArrowId, ArrowId) {
    (
        b.vertical().mul(v1, b.left(filler)),
        b.horizontal().mul(b.bottom(filler), h2),
    )
}
