//! Double groupoids as explicit box sets.
//!
//! A box has four sides: `top` and `bottom` in `H`, `left` and `right` in
//! `V`. Side accessors follow one convention throughout: for `x ∈ H`,
//! `src(x)` is its left vertex and `end(x)` its right vertex; for `f ∈ V`,
//! `src(f)` is its top vertex and `end(f)` its bottom vertex.
//!
//! ```text
//!          top
//!      tl ─────▶ tr
//!      │          │
//! left │    A     │ right
//!      ▼          ▼
//!      bl ─────▶ br
//!         bottom
//! ```
//!
//! Horizontal composition `AB` places `B` to the right of `A` and needs
//! `right(A) = left(B)`; vertical composition places `B` below `A` and needs
//! `bottom(A) = top(B)`. The boxes therefore form a groupoid over the arrows
//! of `V` (horizontally) and one over the arrows of `H` (vertically), and
//! both are stored as ordinary [`GroupoidTable`]s.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gpd::{Arrow, ArrowId, GroupoidTable, ObjectId};
use crate::report::{Axiom, ValidationReport};

/// A box of some double groupoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BoxId(pub usize);

impl fmt::Display for BoxId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The four sides of a box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Frame {
    pub top: ArrowId,
    pub left: ArrowId,
    pub right: ArrowId,
    pub bottom: ArrowId,
}

impl Frame {
    pub fn new(top: ArrowId, left: ArrowId, right: ArrowId, bottom: ArrowId) -> Self {
        Frame {
            top,
            left,
            right,
            bottom,
        }
    }

    /// The corner condition: the four sides meet at four vertices.
    pub fn fits(&self, v: &GroupoidTable, h: &GroupoidTable) -> bool {
        let in_range = h.contains(self.top)
            && h.contains(self.bottom)
            && v.contains(self.left)
            && v.contains(self.right);
        in_range
            && h.src(self.top) == v.src(self.left)
            && h.end(self.top) == v.src(self.right)
            && h.src(self.bottom) == v.end(self.left)
            && h.end(self.bottom) == v.end(self.right)
    }

    /// Side-wise horizontal product, if the sides compose.
    pub fn hcomp(&self, other: &Frame, h: &GroupoidTable) -> Option<Frame> {
        if self.right != other.left {
            return None;
        }
        Some(Frame::new(
            h.compose(self.top, other.top)?,
            self.left,
            other.right,
            h.compose(self.bottom, other.bottom)?,
        ))
    }

    /// Side-wise vertical product, if the sides compose.
    pub fn vcomp(&self, other: &Frame, v: &GroupoidTable) -> Option<Frame> {
        if self.bottom != other.top {
            return None;
        }
        Some(Frame::new(
            self.top,
            v.compose(self.left, other.left)?,
            v.compose(self.right, other.right)?,
            other.bottom,
        ))
    }

    pub fn hinv(&self, h: &GroupoidTable) -> Frame {
        Frame::new(h.inv(self.top), self.right, self.left, h.inv(self.bottom))
    }

    pub fn vinv(&self, v: &GroupoidTable) -> Frame {
        Frame::new(self.bottom, v.inv(self.left), v.inv(self.right), self.top)
    }

    pub fn hident(f: ArrowId, v: &GroupoidTable, h: &GroupoidTable) -> Frame {
        Frame::new(h.ident(v.src(f)), f, f, h.ident(v.end(f)))
    }

    pub fn vident(x: ArrowId, v: &GroupoidTable, h: &GroupoidTable) -> Frame {
        Frame::new(x, v.ident(h.src(x)), v.ident(h.end(x)), x)
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}; {}, {}; {})",
            self.top, self.left, self.right, self.bottom
        )
    }
}

/// A finite double groupoid with side groupoids `V` (vertical) and `H`
/// (horizontal) over a common base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleGroupoid {
    vertical: GroupoidTable,
    horizontal: GroupoidTable,
    frames: Vec<Frame>,
    // boxes over V-arrows: src = left, end = right
    hgpd: GroupoidTable,
    // boxes over H-arrows: src = top, end = bottom
    vgpd: GroupoidTable,
}

impl DoubleGroupoid {
    /// Builds a double groupoid from box frames and explicit composition
    /// entries `(A, B, AB)`. Identities and inverses of both compositions
    /// are found by search; where none exists a placeholder is recorded and
    /// left for validation to report.
    ///
    /// Only well-formedness is checked here; axioms are checked by
    /// [`DoubleGroupoid::validate`].
    pub fn from_tables(
        vertical: GroupoidTable,
        horizontal: GroupoidTable,
        frames: Vec<Frame>,
        hcomp: impl IntoIterator<Item = (BoxId, BoxId, BoxId)>,
        vcomp: impl IntoIterator<Item = (BoxId, BoxId, BoxId)>,
    ) -> Result<Self> {
        if vertical.base_size() != horizontal.base_size() {
            return Err(Error::BaseMismatch {
                left: vertical.base_size(),
                right: horizontal.base_size(),
            });
        }
        for (k, fr) in frames.iter().enumerate() {
            if !(horizontal.contains(fr.top)
                && horizontal.contains(fr.bottom)
                && vertical.contains(fr.left)
                && vertical.contains(fr.right))
            {
                return Err(Error::UnknownBox(k));
            }
        }
        let as_arrows =
            |e: (BoxId, BoxId, BoxId)| (ArrowId(e.0 .0), ArrowId(e.1 .0), ArrowId(e.2 .0));
        let harrows = frames
            .iter()
            .map(|fr| Arrow::new(fr.left.0, fr.right.0))
            .collect();
        let varrows = frames
            .iter()
            .map(|fr| Arrow::new(fr.top.0, fr.bottom.0))
            .collect();
        let hgpd = GroupoidTable::from_compositions_lenient(
            vertical.num_arrows(),
            harrows,
            hcomp.into_iter().map(as_arrows),
        )
        .map_err(|e| Error::InvalidDouble(format!("horizontal composition: {e}")))?;
        let vgpd = GroupoidTable::from_compositions_lenient(
            horizontal.num_arrows(),
            varrows,
            vcomp.into_iter().map(as_arrows),
        )
        .map_err(|e| Error::InvalidDouble(format!("vertical composition: {e}")))?;
        Ok(DoubleGroupoid {
            vertical,
            horizontal,
            frames,
            hgpd,
            vgpd,
        })
    }

    /// The slim double groupoid with the given frames, composing side-wise.
    ///
    /// Errors if a frame violates the corner condition, two boxes share a
    /// frame, or the frames are not closed under the side-wise structure.
    pub fn from_frames(
        vertical: GroupoidTable,
        horizontal: GroupoidTable,
        frames: Vec<Frame>,
    ) -> Result<Self> {
        if vertical.base_size() != horizontal.base_size() {
            return Err(Error::BaseMismatch {
                left: vertical.base_size(),
                right: horizontal.base_size(),
            });
        }
        let mut index = HashMap::with_capacity(frames.len());
        for (k, fr) in frames.iter().enumerate() {
            if !fr.fits(&vertical, &horizontal) {
                return Err(Error::BadCorners(k));
            }
            if let Some(prev) = index.insert(*fr, BoxId(k)) {
                return Err(Error::NotSlim(prev.0, k));
            }
        }
        let (v, h) = (&vertical, &horizontal);
        let mut by_left: Vec<Vec<BoxId>> = vec![Vec::new(); v.num_arrows()];
        let mut by_top: Vec<Vec<BoxId>> = vec![Vec::new(); h.num_arrows()];
        for (k, fr) in frames.iter().enumerate() {
            by_left[fr.left.0].push(BoxId(k));
            by_top[fr.top.0].push(BoxId(k));
        }
        let mut hcomp = Vec::new();
        let mut vcomp = Vec::new();
        for (a, fa) in frames.iter().enumerate() {
            for &b in &by_left[fa.right.0] {
                let fab = fa
                    .hcomp(&frames[b.0], h)
                    .ok_or(Error::NotClosed("horizontal composition"))?;
                let c = index
                    .get(&fab)
                    .ok_or(Error::NotClosed("horizontal composition"))?;
                hcomp.push((BoxId(a), b, *c));
            }
            for &b in &by_top[fa.bottom.0] {
                let fab = fa
                    .vcomp(&frames[b.0], v)
                    .ok_or(Error::NotClosed("vertical composition"))?;
                let c = index
                    .get(&fab)
                    .ok_or(Error::NotClosed("vertical composition"))?;
                vcomp.push((BoxId(a), b, *c));
            }
        }
        for f in v.arrow_ids() {
            if !index.contains_key(&Frame::hident(f, v, h)) {
                return Err(Error::NotClosed("horizontal identities"));
            }
        }
        for x in h.arrow_ids() {
            if !index.contains_key(&Frame::vident(x, v, h)) {
                return Err(Error::NotClosed("vertical identities"));
            }
        }
        for fr in &frames {
            if !index.contains_key(&fr.hinv(h)) {
                return Err(Error::NotClosed("horizontal inverses"));
            }
            if !index.contains_key(&fr.vinv(v)) {
                return Err(Error::NotClosed("vertical inverses"));
            }
        }
        Self::from_tables(vertical, horizontal, frames, hcomp, vcomp)
    }

    /// The coarse double groupoid: every frame satisfying the corner
    /// condition is a box.
    ///
    /// ```
    /// use dblgpd::dbl::DoubleGroupoid;
    /// use dblgpd::gen::pair_groupoid;
    ///
    /// let b = DoubleGroupoid::coarse(pair_groupoid(3), pair_groupoid(3)).unwrap();
    /// assert_eq!(b.num_boxes(), 81);
    /// assert!(b.validate().is_valid());
    /// ```
    pub fn coarse(vertical: GroupoidTable, horizontal: GroupoidTable) -> Result<Self> {
        Self::coarse_bounded(vertical, horizontal, usize::MAX)
    }

    /// [`DoubleGroupoid::coarse`], failing once more than `limit` boxes
    /// would be enumerated.
    pub fn coarse_bounded(
        vertical: GroupoidTable,
        horizontal: GroupoidTable,
        limit: usize,
    ) -> Result<Self> {
        let frames = coarse_frames(&vertical, &horizontal, limit)?;
        Self::from_frames(vertical, horizontal, frames)
    }

    /// The smallest double groupoid on `V` and `H`: the horizontal
    /// identities of `V`-arrows and the vertical identities of `H`-arrows.
    pub fn identity_only(vertical: GroupoidTable, horizontal: GroupoidTable) -> Result<Self> {
        let mut frames: Vec<Frame> = vertical
            .arrow_ids()
            .map(|f| Frame::hident(f, &vertical, &horizontal))
            .chain(
                horizontal
                    .arrow_ids()
                    .filter(|&x| !horizontal.is_identity(x))
                    .map(|x| Frame::vident(x, &vertical, &horizontal)),
            )
            .collect();
        frames.sort();
        frames.dedup();
        Self::from_frames(vertical, horizontal, frames)
    }

    /// Two copies of every box, composing in `B × Z2`. Never slim when
    /// `B` has a box.
    pub fn doubled(&self) -> Result<Self> {
        let n = self.num_boxes();
        let frames = (0..2 * n).map(|k| self.frames[k % n]).collect();
        let lift = |table: &GroupoidTable| -> Vec<(BoxId, BoxId, BoxId)> {
            table
                .entries()
                .flat_map(|(a, b, c)| {
                    (0..2).flat_map(move |s| {
                        (0..2).map(move |t| {
                            (
                                BoxId(a.0 + s * n),
                                BoxId(b.0 + t * n),
                                BoxId(c.0 + ((s + t) % 2) * n),
                            )
                        })
                    })
                })
                .collect()
        };
        Self::from_tables(
            self.vertical.clone(),
            self.horizontal.clone(),
            frames,
            lift(&self.hgpd),
            lift(&self.vgpd),
        )
    }

    pub fn vertical(&self) -> &GroupoidTable {
        &self.vertical
    }

    pub fn horizontal(&self) -> &GroupoidTable {
        &self.horizontal
    }

    /// Boxes as a groupoid over the arrows of `V` under horizontal
    /// composition.
    pub fn horizontal_groupoid(&self) -> &GroupoidTable {
        &self.hgpd
    }

    /// Boxes as a groupoid over the arrows of `H` under vertical
    /// composition.
    pub fn vertical_groupoid(&self) -> &GroupoidTable {
        &self.vgpd
    }

    pub fn base_size(&self) -> usize {
        self.vertical.base_size()
    }

    pub fn num_boxes(&self) -> usize {
        self.frames.len()
    }

    pub fn boxes(&self) -> impl Iterator<Item = BoxId> {
        (0..self.frames.len()).map(BoxId)
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    /// The frame of a box.
    pub fn frame(&self, a: BoxId) -> Result<Frame> {
        self.frames.get(a.0).copied().ok_or(Error::UnknownBox(a.0))
    }

    fn fr(&self, a: BoxId) -> &Frame {
        &self.frames[a.0]
    }

    pub fn top(&self, a: BoxId) -> ArrowId {
        self.fr(a).top
    }

    pub fn bottom(&self, a: BoxId) -> ArrowId {
        self.fr(a).bottom
    }

    pub fn left(&self, a: BoxId) -> ArrowId {
        self.fr(a).left
    }

    pub fn right(&self, a: BoxId) -> ArrowId {
        self.fr(a).right
    }

    /// Top-left vertex.
    pub fn tl(&self, a: BoxId) -> ObjectId {
        self.horizontal.src(self.top(a))
    }

    /// Top-right vertex.
    pub fn tr(&self, a: BoxId) -> ObjectId {
        self.horizontal.end(self.top(a))
    }

    /// Bottom-left vertex.
    pub fn bl(&self, a: BoxId) -> ObjectId {
        self.horizontal.src(self.bottom(a))
    }

    /// Bottom-right vertex.
    pub fn br(&self, a: BoxId) -> ObjectId {
        self.horizontal.end(self.bottom(a))
    }

    /// `AB`, with `B` to the right of `A`.
    pub fn hcomp(&self, a: BoxId, b: BoxId) -> Option<BoxId> {
        self.hgpd
            .compose(ArrowId(a.0), ArrowId(b.0))
            .map(|c| BoxId(c.0))
    }

    /// `A` over `B`.
    pub fn vcomp(&self, a: BoxId, b: BoxId) -> Option<BoxId> {
        self.vgpd
            .compose(ArrowId(a.0), ArrowId(b.0))
            .map(|c| BoxId(c.0))
    }

    /// `hcomp` for a pair known to be composable.
    pub fn hmul(&self, a: BoxId, b: BoxId) -> BoxId {
        BoxId(self.hgpd.mul(ArrowId(a.0), ArrowId(b.0)).0)
    }

    /// `vcomp` for a pair known to be composable.
    pub fn vmul(&self, a: BoxId, b: BoxId) -> BoxId {
        BoxId(self.vgpd.mul(ArrowId(a.0), ArrowId(b.0)).0)
    }

    pub fn hinv(&self, a: BoxId) -> BoxId {
        BoxId(self.hgpd.inv(ArrowId(a.0)).0)
    }

    pub fn vinv(&self, a: BoxId) -> BoxId {
        BoxId(self.vgpd.inv(ArrowId(a.0)).0)
    }

    /// Horizontal identity on the `V`-arrow `f`, with frame `(id; f, f; id)`.
    pub fn hident(&self, f: ArrowId) -> BoxId {
        BoxId(self.hgpd.ident(ObjectId(f.0)).0)
    }

    /// Vertical identity on the `H`-arrow `x`, with frame `(x; id, id; x)`.
    pub fn vident(&self, x: ArrowId) -> BoxId {
        BoxId(self.vgpd.ident(ObjectId(x.0)).0)
    }

    /// The box `Θ_p` whose four sides are identities at `p`.
    pub fn unit_box(&self, p: ObjectId) -> BoxId {
        self.hident(self.vertical.ident(p))
    }

    /// Boxes with the given frame, in id order.
    pub fn boxes_with_frame(&self, frame: &Frame) -> impl Iterator<Item = BoxId> + '_ {
        let frame = *frame;
        self.hgpd
            .hom(ObjectId(frame.left.0), ObjectId(frame.right.0))
            .filter(move |a| self.frames[a.0] == frame)
            .map(|a| BoxId(a.0))
    }

    /// Boxes with the given top and right sides.
    pub fn fillers(&self, top: ArrowId, right: ArrowId) -> impl Iterator<Item = BoxId> + '_ {
        self.vgpd
            .outgoing(ObjectId(top.0))
            .iter()
            .filter(move |a| self.frames[a.0].right == right)
            .map(|a| BoxId(a.0))
    }

    /// Two distinct boxes sharing a frame, if any.
    pub fn slimness_witness(&self) -> Option<(BoxId, BoxId)> {
        let mut seen = HashMap::with_capacity(self.frames.len());
        for (k, fr) in self.frames.iter().enumerate() {
            if let Some(prev) = seen.insert(*fr, k) {
                return Some((BoxId(prev), BoxId(k)));
            }
        }
        None
    }

    /// True iff no two distinct boxes share a frame.
    pub fn is_slim(&self) -> bool {
        self.slimness_witness().is_none()
    }

    /// A corner `(top x, left f)` with `src(x) = src(f)` that no box
    /// fills, if any.
    pub fn filling_witness(&self) -> Option<(ArrowId, ArrowId)> {
        let mut filled = std::collections::HashSet::with_capacity(self.frames.len());
        for fr in &self.frames {
            filled.insert((fr.top, fr.left));
        }
        for x in self.horizontal.arrow_ids() {
            for &f in self.vertical.outgoing(self.horizontal.src(x)) {
                if !filled.contains(&(x, f)) {
                    return Some((x, f));
                }
            }
        }
        None
    }

    /// True iff every corner `(top, left)` with matching vertex extends to
    /// a box.
    pub fn filling_condition(&self) -> bool {
        self.filling_witness().is_none()
    }

    /// Checks every double groupoid axiom exhaustively.
    pub fn validate(&self) -> ValidationReport {
        let (v, h) = (&self.vertical, &self.horizontal);
        let mut report = ValidationReport::new();
        report.absorb("V", v.validate());
        report.absorb("H", h.validate());
        if !report.is_valid() {
            return report;
        }
        for a in self.boxes() {
            if !self.fr(a).fits(v, h) {
                report.push(Axiom::BoxCorners, [a.0]);
            }
        }
        if !report.is_valid() {
            return report;
        }
        report.absorb("horizontal", self.hgpd.validate());
        report.absorb("vertical", self.vgpd.validate());
        for (a, b) in self.hgpd.composable_pairs() {
            let (a, b) = (BoxId(a.0), BoxId(b.0));
            let expected = self.fr(a).hcomp(self.fr(b), h);
            if self.hcomp(a, b).map(|c| *self.fr(c)) != expected {
                report.push(Axiom::HorizontalSides, [a.0, b.0]);
            }
        }
        for (a, b) in self.vgpd.composable_pairs() {
            let (a, b) = (BoxId(a.0), BoxId(b.0));
            let expected = self.fr(a).vcomp(self.fr(b), v);
            if self.vcomp(a, b).map(|c| *self.fr(c)) != expected {
                report.push(Axiom::VerticalSides, [a.0, b.0]);
            }
        }
        for f in v.arrow_ids() {
            if *self.fr(self.hident(f)) != Frame::hident(f, v, h) {
                report.push(Axiom::HorizontalIdentitySides, [f.0]);
            }
        }
        for x in h.arrow_ids() {
            if *self.fr(self.vident(x)) != Frame::vident(x, v, h) {
                report.push(Axiom::VerticalIdentitySides, [x.0]);
            }
        }
        for p in v.objects() {
            if self.hident(v.ident(p)) != self.vident(h.ident(p)) {
                report.push(Axiom::IdentityCompatibility, [p.0]);
            }
        }
        for (f, g) in v.composable_pairs() {
            let stacked = self.vcomp(self.hident(f), self.hident(g));
            if stacked != Some(self.hident(v.mul(f, g))) {
                report.push(Axiom::IdentityCompatibility, [f.0, g.0]);
            }
        }
        for (x, y) in h.composable_pairs() {
            let joined = self.hcomp(self.vident(x), self.vident(y));
            if joined != Some(self.vident(h.mul(x, y))) {
                report.push(Axiom::IdentityCompatibility, [x.0, y.0]);
            }
        }
        self.check_interchange(&mut report);
        report
    }

    // Every 2×2 array
    //   A B
    //   C D
    // with all four compositions defined.
    fn check_interchange(&self, report: &mut ValidationReport) {
        let mut by_left_top: HashMap<(ArrowId, ArrowId), Vec<BoxId>> = HashMap::new();
        for a in self.boxes() {
            by_left_top
                .entry((self.left(a), self.top(a)))
                .or_default()
                .push(a);
        }
        for a in self.boxes() {
            for &b in self.hgpd.outgoing(ObjectId(self.right(a).0)) {
                let b = BoxId(b.0);
                // missing composites are reported by the groupoid checks
                let Some(ab) = self.hcomp(a, b) else { continue };
                for &c in self.vgpd.outgoing(ObjectId(self.bottom(a).0)) {
                    let c = BoxId(c.0);
                    let Some(ac) = self.vcomp(a, c) else { continue };
                    let Some(ds) = by_left_top.get(&(self.right(c), self.bottom(b))) else {
                        continue;
                    };
                    for &d in ds {
                        let (Some(cd), Some(bd)) = (self.hcomp(c, d), self.vcomp(b, d)) else {
                            continue;
                        };
                        let rows = self.vcomp(ab, cd);
                        let cols = self.hcomp(ac, bd);
                        if rows.is_none() || rows != cols {
                            report.push(Axiom::Interchange, [a.0, b.0, c.0, d.0]);
                        }
                    }
                }
            }
        }
    }
}

/// Every frame over `V` and `H` satisfying the corner condition, ordered by
/// `(top, left, right, bottom)`.
pub fn coarse_frames(v: &GroupoidTable, h: &GroupoidTable, limit: usize) -> Result<Vec<Frame>> {
    if v.base_size() != h.base_size() {
        return Err(Error::BaseMismatch {
            left: v.base_size(),
            right: h.base_size(),
        });
    }
    let mut frames = Vec::new();
    for x in h.arrow_ids() {
        for &f in v.outgoing(h.src(x)) {
            for &g in v.outgoing(h.end(x)) {
                for y in h.hom(v.end(f), v.end(g)) {
                    if frames.len() == limit {
                        return Err(Error::TooManyBoxes { limit });
                    }
                    frames.push(Frame::new(x, f, g, y));
                }
            }
        }
    }
    Ok(frames)
}

/// Free-standing form of [`DoubleGroupoid::validate`].
pub fn validate_double(b: &DoubleGroupoid) -> ValidationReport {
    b.validate()
}

/// A morphism of double groupoids sharing `V` and `H` that is the identity
/// on both side groupoids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleGroupoidMorphism {
    box_map: Vec<BoxId>,
}

impl DoubleGroupoidMorphism {
    pub fn new(box_map: Vec<BoxId>) -> Self {
        DoubleGroupoidMorphism { box_map }
    }

    pub fn apply(&self, a: BoxId) -> BoxId {
        self.box_map[a.0]
    }

    pub fn box_map(&self) -> &[BoxId] {
        &self.box_map
    }

    /// Checks frames and both compositions, identities and inverses.
    pub fn validate(
        &self,
        source: &DoubleGroupoid,
        target: &DoubleGroupoid,
    ) -> Result<ValidationReport> {
        if source.vertical != target.vertical || source.horizontal != target.horizontal {
            return Err(Error::InvalidDouble(
                "morphism between double groupoids with different side groupoids".into(),
            ));
        }
        let mut report = ValidationReport::new();
        if self.box_map.len() != source.num_boxes()
            || self.box_map.iter().any(|b| b.0 >= target.num_boxes())
        {
            report.push(Axiom::MorphismShape, [self.box_map.len()]);
            return Ok(report);
        }
        for a in source.boxes() {
            if source.fr(a) != target.fr(self.apply(a)) {
                report.push(Axiom::FramePreserved, [a.0]);
            }
        }
        if !report.is_valid() {
            return Ok(report);
        }
        for (a, b) in source.hgpd.composable_pairs() {
            let (a, b) = (BoxId(a.0), BoxId(b.0));
            let image = source.hcomp(a, b).map(|c| self.apply(c));
            if image.is_none() || image != target.hcomp(self.apply(a), self.apply(b)) {
                report.push(Axiom::StructurePreserved, [a.0, b.0]);
            }
        }
        for (a, b) in source.vgpd.composable_pairs() {
            let (a, b) = (BoxId(a.0), BoxId(b.0));
            let image = source.vcomp(a, b).map(|c| self.apply(c));
            if image.is_none() || image != target.vcomp(self.apply(a), self.apply(b)) {
                report.push(Axiom::StructurePreserved, [a.0, b.0]);
            }
        }
        for a in source.boxes() {
            if self.apply(source.hinv(a)) != target.hinv(self.apply(a))
                || self.apply(source.vinv(a)) != target.vinv(self.apply(a))
            {
                report.push(Axiom::StructurePreserved, [a.0]);
            }
        }
        for f in source.vertical.arrow_ids() {
            if self.apply(source.hident(f)) != target.hident(f) {
                report.push(Axiom::MorphismIdentity, [f.0]);
            }
        }
        for x in source.horizontal.arrow_ids() {
            if self.apply(source.vident(x)) != target.vident(x) {
                report.push(Axiom::MorphismIdentity, [x.0]);
            }
        }
        Ok(report)
    }

    pub fn is_bijective(&self, target: &DoubleGroupoid) -> bool {
        let mut seen = vec![false; target.num_boxes()];
        self.box_map.len() == target.num_boxes()
            && self
                .box_map
                .iter()
                .all(|b| b.0 < seen.len() && !std::mem::replace(&mut seen[b.0], true))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::pair_groupoid;
    use crate::groups::Group;

    fn z(n: usize) -> GroupoidTable {
        Group::cyclic(n).to_groupoid()
    }

    #[test]
    fn identity_only_over_units_is_valid() {
        let b =
            DoubleGroupoid::identity_only(GroupoidTable::unit(3), GroupoidTable::unit(3)).unwrap();
        assert_eq!(b.num_boxes(), 3);
        assert!(b.validate().is_valid());
        assert!(b.is_slim());
        assert!(b.filling_condition());
    }

    #[test]
    fn coarse_counts() {
        let unit = DoubleGroupoid::coarse(GroupoidTable::unit(4), GroupoidTable::unit(4)).unwrap();
        assert_eq!(unit.num_boxes(), 4);
        let pair2 = DoubleGroupoid::coarse(pair_groupoid(2), pair_groupoid(2)).unwrap();
        assert_eq!(pair2.num_boxes(), 16);
        assert!(pair2.validate().is_valid());
        let pair3 = DoubleGroupoid::coarse(pair_groupoid(3), pair_groupoid(3)).unwrap();
        assert_eq!(pair3.num_boxes(), 81);
        // one-object Z2 and Z3: every quadruple fits
        let z2z3 = DoubleGroupoid::coarse(z(2), z(3)).unwrap();
        assert_eq!(z2z3.num_boxes(), 36);
        assert!(z2z3.validate().is_valid());
    }

    #[test]
    fn coarse_count_matches_brute_force() {
        let (v, h) = (pair_groupoid(2), z(2));
        // base sizes differ: rejected
        assert!(DoubleGroupoid::coarse(v.clone(), h).is_err());
        let h = pair_groupoid(2);
        let mut brute = 0;
        for x in h.arrow_ids() {
            for y in h.arrow_ids() {
                for f in v.arrow_ids() {
                    for g in v.arrow_ids() {
                        brute += Frame::new(x, f, g, y).fits(&v, &h) as usize;
                    }
                }
            }
        }
        assert_eq!(DoubleGroupoid::coarse(v, h).unwrap().num_boxes(), brute);
    }

    #[test]
    fn coarse_bound_is_enforced() {
        let err =
            DoubleGroupoid::coarse_bounded(pair_groupoid(3), pair_groupoid(3), 80).unwrap_err();
        assert_eq!(err, Error::TooManyBoxes { limit: 80 });
    }

    #[test]
    fn corrupted_horizontal_composition_is_reported() {
        let b = DoubleGroupoid::coarse(z(2), z(2)).unwrap();
        let boxes = |t: &GroupoidTable| -> Vec<(BoxId, BoxId, BoxId)> {
            t.entries()
                .map(|(a, b, c)| (BoxId(a.0), BoxId(b.0), BoxId(c.0)))
                .collect()
        };
        let mut hcomp = boxes(b.horizontal_groupoid());
        let plain = |x: BoxId| !b.horizontal_groupoid().is_identity(ArrowId(x.0));
        let k = hcomp
            .iter()
            .position(|&(x, y, c)| plain(x) && plain(y) && plain(c))
            .unwrap();
        let (x, y, c) = hcomp[k];
        // same left and right sides, different top
        let d = b
            .boxes()
            .find(|&d| {
                d != c && d != x && plain(d) && b.left(d) == b.left(c) && b.right(d) == b.right(c)
            })
            .unwrap();
        hcomp[k] = (x, y, d);
        let forged = DoubleGroupoid::from_tables(
            b.vertical().clone(),
            b.horizontal().clone(),
            b.frames().to_vec(),
            hcomp,
            boxes(b.vertical_groupoid()),
        )
        .unwrap();
        let report = forged.validate();
        assert!(report.contains(Axiom::HorizontalSides), "{report}");
        assert!(report
            .iter()
            .any(|v| v.axiom == Axiom::HorizontalSides && v.witness == [x.0, y.0]));
    }

    #[test]
    fn frames_of_identities() {
        let b = DoubleGroupoid::coarse(z(2), z(3)).unwrap();
        let (v, h) = (b.vertical(), b.horizontal());
        for f in v.arrow_ids() {
            let fr = b.frame(b.hident(f)).unwrap();
            assert_eq!(
                fr,
                Frame::new(h.ident(ObjectId(0)), f, f, h.ident(ObjectId(0)))
            );
        }
        for a in b.boxes() {
            // coarse: the frame map is the identity on quadruples
            assert_eq!(
                b.boxes_with_frame(&b.frame(a).unwrap()).collect::<Vec<_>>(),
                vec![a]
            );
        }
        assert_eq!(b.frame(BoxId(36)), Err(Error::UnknownBox(36)));
    }

    #[test]
    fn inverses_are_involutions_with_expected_sides() {
        let b = DoubleGroupoid::coarse(pair_groupoid(2), GroupoidTable::unit(2)).unwrap();
        let (v, h) = (b.vertical(), b.horizontal());
        for a in b.boxes() {
            assert_eq!(b.hinv(b.hinv(a)), a);
            assert_eq!(b.vinv(b.vinv(a)), a);
            let fr = b.frame(a).unwrap();
            assert_eq!(b.frame(b.hinv(a)).unwrap(), fr.hinv(h));
            assert_eq!(b.frame(b.vinv(a)).unwrap(), fr.vinv(v));
        }
    }

    #[test]
    fn doubled_is_valid_but_not_slim() {
        let b = DoubleGroupoid::coarse(z(2), z(2)).unwrap();
        let d = b.doubled().unwrap();
        assert_eq!(d.num_boxes(), 32);
        assert!(d.validate().is_valid());
        assert!(!d.is_slim());
        assert_eq!(d.slimness_witness(), Some((BoxId(0), BoxId(16))));
        assert!(b.is_slim());
    }

    #[test]
    fn filling_condition_cases() {
        assert!(DoubleGroupoid::coarse(pair_groupoid(3), pair_groupoid(3))
            .unwrap()
            .filling_condition());
        let thin = DoubleGroupoid::identity_only(z(2), z(2)).unwrap();
        assert!(thin.validate().is_valid());
        assert!(!thin.filling_condition());
        assert_eq!(thin.filling_witness(), Some((ArrowId(1), ArrowId(1))));
        // with H a unit groupoid, horizontal identities fill every corner
        let fills = DoubleGroupoid::identity_only(z(2), GroupoidTable::unit(1)).unwrap();
        assert!(fills.filling_condition());
    }

    #[test]
    fn from_frames_rejects_bad_input() {
        let (v, h) = (z(2), z(2));
        let id = ArrowId(0);
        let one = ArrowId(1);
        let dup = vec![Frame::new(id, id, id, id), Frame::new(id, id, id, id)];
        assert_eq!(
            DoubleGroupoid::from_frames(v.clone(), h.clone(), dup).unwrap_err(),
            Error::NotSlim(0, 1)
        );
        let open = vec![Frame::new(id, id, id, id), Frame::new(one, one, one, one)];
        assert!(matches!(
            DoubleGroupoid::from_frames(v.clone(), h.clone(), open),
            Err(Error::NotClosed(_))
        ));
        let pair = pair_groupoid(2);
        let bad = vec![Frame::new(ArrowId(1), ArrowId(0), ArrowId(0), ArrowId(0))];
        assert_eq!(
            DoubleGroupoid::from_frames(pair.clone(), pair, bad).unwrap_err(),
            Error::BadCorners(0)
        );
    }

    #[test]
    fn frame_is_a_homomorphism() {
        let b = DoubleGroupoid::coarse(pair_groupoid(2), pair_groupoid(2)).unwrap();
        let (v, h) = (b.vertical(), b.horizontal());
        for (x, y) in b.horizontal_groupoid().composable_pairs() {
            let (x, y) = (BoxId(x.0), BoxId(y.0));
            let expected = b.frame(x).unwrap().hcomp(&b.frame(y).unwrap(), h);
            assert_eq!(Some(b.frame(b.hmul(x, y)).unwrap()), expected);
        }
        for (x, y) in b.vertical_groupoid().composable_pairs() {
            let (x, y) = (BoxId(x.0), BoxId(y.0));
            let expected = b.frame(x).unwrap().vcomp(&b.frame(y).unwrap(), v);
            assert_eq!(Some(b.frame(b.vmul(x, y)).unwrap()), expected);
        }
    }

    #[test]
    fn identity_morphism_is_bijective() {
        let b = DoubleGroupoid::coarse(z(2), z(2)).unwrap();
        let id = DoubleGroupoidMorphism::new(b.boxes().collect());
        assert!(id.validate(&b, &b).unwrap().is_valid());
        assert!(id.is_bijective(&b));
    }
}
