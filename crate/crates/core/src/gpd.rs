//! Finite groupoids stored as explicit composition tables.
//!
//! Composition is diagrammatic throughout the crate: `a·b` is defined
//! exactly when `end(a) = src(b)`, and then `src(a·b) = src(a)`,
//! `end(a·b) = end(b)`. Left actions compose the same way, so that
//! `(g·h)·n = g·(h·n)` needs `end(g) = src(h)`; the double groupoid layer
//! inherits this convention for both box compositions.
//!
//! Objects and arrows are dense integer ranges. Only composable pairs have
//! a slot in the table, so memory is proportional to the number of
//! composable pairs rather than to the square of the arrow count.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{Axiom, ValidationReport};

/// An object of the base set `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectId(pub usize);

/// An arrow of some groupoid; only meaningful together with its table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArrowId(pub usize);

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for ArrowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Source and end of an arrow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub src: ObjectId,
    pub end: ObjectId,
}

impl Arrow {
    pub fn new(src: usize, end: usize) -> Self {
        Arrow {
            src: ObjectId(src),
            end: ObjectId(end),
        }
    }
}

/// A finite groupoid over the base `{0, .., base_size - 1}`.
///
/// Construction only checks that the table is well formed (indices in
/// range, composites stored at composable pairs). Whether the table is a
/// groupoid is decided by [`GroupoidTable::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidTable {
    base_size: usize,
    arrows: Vec<Arrow>,
    outgoing: Vec<Vec<ArrowId>>,
    incoming: Vec<Vec<ArrowId>>,
    // position of each arrow in `outgoing[src]`
    out_pos: Vec<usize>,
    // comp[a][out_pos[b]] for b leaving end(a)
    comp: Vec<Vec<Option<ArrowId>>>,
    ident: Vec<ArrowId>,
    inv: Vec<ArrowId>,
}

impl GroupoidTable {
    /// Builds a table from raw parts. Missing composites are allowed (they
    /// show up as violations); entries at non-composable pairs are errors.
    pub fn from_parts(
        base_size: usize,
        arrows: Vec<Arrow>,
        comp: impl IntoIterator<Item = (ArrowId, ArrowId, ArrowId)>,
        ident: Vec<ArrowId>,
        inv: Vec<ArrowId>,
    ) -> Result<Self> {
        let mut table = Self::skeleton(base_size, arrows, ident, inv)?;
        let n = table.arrows.len();
        for (a, b, c) in comp {
            for x in [a, b, c] {
                if x.0 >= n {
                    return Err(Error::arrow(x, n));
                }
            }
            if table.arrows[a.0].end != table.arrows[b.0].src {
                return Err(Error::NotComposable { a: a.0, b: b.0 });
            }
            let slot = &mut table.comp[a.0][table.out_pos[b.0]];
            if slot.is_some() {
                return Err(Error::DuplicateComposite { a: a.0, b: b.0 });
            }
            *slot = Some(c);
        }
        Ok(table)
    }

    /// Builds a table by evaluating `mul` on every composable pair. Inverses
    /// are found by search; an arrow without a two-sided inverse is an error.
    pub fn from_fn(
        base_size: usize,
        arrows: Vec<Arrow>,
        ident: Vec<ArrowId>,
        mut mul: impl FnMut(ArrowId, ArrowId) -> ArrowId,
    ) -> Result<Self> {
        let n = arrows.len();
        let mut table = Self::skeleton(base_size, arrows, ident, vec![ArrowId(0); n])?;
        for a in 0..n {
            let end = table.arrows[a].end.0;
            for k in 0..table.outgoing[end].len() {
                let b = table.outgoing[end][k];
                let c = mul(ArrowId(a), b);
                if c.0 >= n {
                    return Err(Error::arrow(c, n));
                }
                table.comp[a][k] = Some(c);
            }
        }
        for a in 0..n {
            let found = table.find_inverse(ArrowId(a));
            table.inv[a] = found.ok_or(Error::NoInverse(a))?;
        }
        Ok(table)
    }

    /// Builds a table from composition entries alone. The identity at `p`
    /// is the idempotent loop at `p`; inverses are found by search.
    pub fn from_compositions(
        base_size: usize,
        arrows: Vec<Arrow>,
        comp: impl IntoIterator<Item = (ArrowId, ArrowId, ArrowId)>,
    ) -> Result<Self> {
        Self::search_structure(base_size, arrows, comp, true)
    }

    /// As [`GroupoidTable::from_compositions`], but an arrow without an
    /// inverse is recorded as its own inverse and an object without an
    /// idempotent loop gets its first loop, so that [`GroupoidTable::validate`]
    /// can pinpoint the failure. Errors only when some object has no loop.
    pub fn from_compositions_lenient(
        base_size: usize,
        arrows: Vec<Arrow>,
        comp: impl IntoIterator<Item = (ArrowId, ArrowId, ArrowId)>,
    ) -> Result<Self> {
        Self::search_structure(base_size, arrows, comp, false)
    }

    fn search_structure(
        base_size: usize,
        arrows: Vec<Arrow>,
        comp: impl IntoIterator<Item = (ArrowId, ArrowId, ArrowId)>,
        strict: bool,
    ) -> Result<Self> {
        let n = arrows.len();
        if n == 0 && base_size > 0 {
            return Err(Error::MissingIdentity(0));
        }
        let mut table = Self::from_parts(
            base_size,
            arrows,
            comp,
            vec![ArrowId(0); base_size],
            vec![ArrowId(0); n],
        )?;
        for p in 0..base_size {
            let (p, table_ref) = (ObjectId(p), &table);
            let idempotent = table_ref
                .hom(p, p)
                .find(|&a| table_ref.compose(a, a) == Some(a));
            let e = match idempotent {
                Some(e) => e,
                None if !strict => table_ref
                    .hom(p, p)
                    .next()
                    .ok_or(Error::MissingIdentity(p.0))?,
                None => return Err(Error::MissingIdentity(p.0)),
            };
            table.ident[p.0] = e;
        }
        for a in 0..n {
            table.inv[a] = match table.find_inverse(ArrowId(a)) {
                Some(b) => b,
                None if !strict => ArrowId(a),
                None => return Err(Error::NoInverse(a)),
            };
        }
        Ok(table)
    }

    fn find_inverse(&self, a: ArrowId) -> Option<ArrowId> {
        let arrow = self.arrows[a.0];
        self.hom(arrow.end, arrow.src).find(|&b| {
            self.compose(a, b) == Some(self.ident[arrow.src.0])
                && self.compose(b, a) == Some(self.ident[arrow.end.0])
        })
    }

    fn skeleton(
        base_size: usize,
        arrows: Vec<Arrow>,
        ident: Vec<ArrowId>,
        inv: Vec<ArrowId>,
    ) -> Result<Self> {
        let n = arrows.len();
        for a in &arrows {
            for p in [a.src, a.end] {
                if p.0 >= base_size {
                    return Err(Error::object(p, base_size));
                }
            }
        }
        if ident.len() != base_size {
            return Err(Error::WrongLength {
                what: "ident",
                expected: base_size,
                found: ident.len(),
            });
        }
        if inv.len() != n {
            return Err(Error::WrongLength {
                what: "inv",
                expected: n,
                found: inv.len(),
            });
        }
        if let Some(&bad) = ident.iter().chain(inv.iter()).find(|x| x.0 >= n) {
            return Err(Error::arrow(bad, n));
        }
        let mut outgoing = vec![Vec::new(); base_size];
        let mut incoming = vec![Vec::new(); base_size];
        let mut out_pos = vec![0; n];
        for (k, a) in arrows.iter().enumerate() {
            out_pos[k] = outgoing[a.src.0].len();
            outgoing[a.src.0].push(ArrowId(k));
            incoming[a.end.0].push(ArrowId(k));
        }
        let comp = arrows
            .iter()
            .map(|a| vec![None; outgoing[a.end.0].len()])
            .collect();
        Ok(GroupoidTable {
            base_size,
            arrows,
            outgoing,
            incoming,
            out_pos,
            comp,
            ident,
            inv,
        })
    }

    pub fn base_size(&self) -> usize {
        self.base_size
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> {
        (0..self.base_size).map(ObjectId)
    }

    pub fn arrow(&self, a: ArrowId) -> Arrow {
        self.arrows[a.0]
    }

    pub fn contains(&self, a: ArrowId) -> bool {
        a.0 < self.arrows.len()
    }

    pub fn src(&self, a: ArrowId) -> ObjectId {
        self.arrows[a.0].src
    }

    pub fn end(&self, a: ArrowId) -> ObjectId {
        self.arrows[a.0].end
    }

    /// `(src(a), end(a))`.
    pub fn anchor(&self, a: ArrowId) -> Result<(ObjectId, ObjectId)> {
        let arrow = self
            .arrows
            .get(a.0)
            .ok_or_else(|| Error::arrow(a, self.arrows.len()))?;
        Ok((arrow.src, arrow.end))
    }

    /// The stored composite `a·b`, if the pair is composable and filled in.
    pub fn compose(&self, a: ArrowId, b: ArrowId) -> Option<ArrowId> {
        if self.arrows[a.0].end != self.arrows[b.0].src {
            return None;
        }
        self.comp[a.0][self.out_pos[b.0]]
    }

    /// `a·b` for a pair known to be composable in a valid table.
    ///
    /// Panics if the pair is not composable.
    pub fn mul(&self, a: ArrowId, b: ArrowId) -> ArrowId {
        self.compose(a, b)
            .unwrap_or_else(|| panic!("arrows {a} and {b} are not composable"))
    }

    pub fn ident(&self, p: ObjectId) -> ArrowId {
        self.ident[p.0]
    }

    pub fn inv(&self, a: ArrowId) -> ArrowId {
        self.inv[a.0]
    }

    pub fn is_identity(&self, a: ArrowId) -> bool {
        self.ident[self.arrows[a.0].src.0] == a
    }

    pub fn identities(&self) -> &[ArrowId] {
        &self.ident
    }

    pub fn inverses(&self) -> &[ArrowId] {
        &self.inv
    }

    /// Arrows with source `p`, in id order.
    pub fn outgoing(&self, p: ObjectId) -> &[ArrowId] {
        &self.outgoing[p.0]
    }

    /// Arrows with end `p`, in id order.
    pub fn incoming(&self, p: ObjectId) -> &[ArrowId] {
        &self.incoming[p.0]
    }

    /// Arrows from `p` to `q`.
    pub fn hom(&self, p: ObjectId, q: ObjectId) -> impl Iterator<Item = ArrowId> + '_ {
        self.outgoing[p.0]
            .iter()
            .copied()
            .filter(move |&a| self.arrows[a.0].end == q)
    }

    /// Every composable pair `(a, b)` in lexicographic order.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (ArrowId, ArrowId)> + '_ {
        self.arrow_ids().flat_map(move |a| {
            self.outgoing[self.arrows[a.0].end.0]
                .iter()
                .map(move |&b| (a, b))
        })
    }

    /// Every stored composition entry `(a, b, a·b)`.
    pub fn entries(&self) -> impl Iterator<Item = (ArrowId, ArrowId, ArrowId)> + '_ {
        self.composable_pairs()
            .filter_map(move |(a, b)| self.compose(a, b).map(|c| (a, b, c)))
    }

    /// Checks every groupoid axiom exhaustively, collecting all violations.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        for (a, b) in self.composable_pairs() {
            match self.compose(a, b) {
                None => report.push(Axiom::CompositionTotal, [a.0, b.0]),
                Some(c) => {
                    if self.src(c) != self.src(a) || self.end(c) != self.end(b) {
                        report.push(Axiom::CompositeEndpoints, [a.0, b.0]);
                    }
                }
            }
        }
        for p in self.objects() {
            let e = self.ident(p);
            if self.src(e) != p || self.end(e) != p {
                report.push(Axiom::IdentityEndpoints, [p.0]);
            }
        }
        for a in self.arrow_ids() {
            let (s, t) = (self.src(a), self.end(a));
            let (es, et) = (self.ident(s), self.ident(t));
            if self.end(es) == s && self.compose(es, a) != Some(a) {
                report.push(Axiom::LeftUnit, [a.0]);
            }
            if self.src(et) == t && self.compose(a, et) != Some(a) {
                report.push(Axiom::RightUnit, [a.0]);
            }
            let b = self.inv(a);
            let ok = self.src(b) == t
                && self.end(b) == s
                && self.compose(a, b) == Some(es)
                && self.compose(b, a) == Some(et);
            if !ok {
                report.push(Axiom::Inverse, [a.0]);
            }
        }
        for (a, b) in self.composable_pairs() {
            let Some(ab) = self.compose(a, b) else {
                continue;
            };
            for &c in self.outgoing(self.end(b)) {
                let Some(bc) = self.compose(b, c) else {
                    continue;
                };
                let left = if self.end(ab) == self.src(c) {
                    self.compose(ab, c)
                } else {
                    None
                };
                let right = if self.end(a) == self.src(bc) {
                    self.compose(a, bc)
                } else {
                    None
                };
                if left.is_none() || left != right {
                    report.push(Axiom::Associativity, [a.0, b.0, c.0]);
                }
            }
        }
        report
    }

    /// The identity-only groupoid on `n` objects.
    pub fn unit(n: usize) -> Self {
        let arrows = (0..n).map(|p| Arrow::new(p, p)).collect();
        let ident: Vec<ArrowId> = (0..n).map(ArrowId).collect();
        GroupoidTable::from_parts(
            n,
            arrows,
            (0..n).map(|p| (ArrowId(p), ArrowId(p), ArrowId(p))),
            ident.clone(),
            ident,
        )
        .expect("unit groupoid is well formed")
    }
}

/// Free-standing form of [`GroupoidTable::validate`].
pub fn validate_groupoid(g: &GroupoidTable) -> ValidationReport {
    g.validate()
}

/// Free-standing form of [`GroupoidTable::anchor`].
pub fn anchor(g: &GroupoidTable, a: ArrowId) -> Result<(ObjectId, ObjectId)> {
    g.anchor(a)
}
