//! Diagrams `(D, j, i)`, factorizations, the box double groupoid
//! `□(D, j, i)`, and the canonical maps between the two constructions.
//!
//! A frame `(x; h, g; y)` (top, left, right, bottom) is a box of
//! `□(D, j, i)` exactly when `i(x)·j(g) = j(h)·i(y)` in `D`.

use std::collections::HashMap;

use serde::Serialize;

use crate::dbl::{BoxId, DoubleGroupoid, DoubleGroupoidMorphism, Frame};
use crate::diagonal::DiagonalGroupoid;
use crate::error::{Error, Result};
use crate::gpd::{ArrowId, GroupoidTable};
use crate::morphism::GroupoidMorphism;
use crate::report::{Axiom, ValidationReport};

/// A groupoid `D` with base-fixing morphisms `j: V → D` and `i: H → D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub d: GroupoidTable,
    pub v: GroupoidTable,
    pub h: GroupoidTable,
    pub j: GroupoidMorphism,
    pub i: GroupoidMorphism,
}

impl Diagram {
    pub fn new(
        d: GroupoidTable,
        v: GroupoidTable,
        h: GroupoidTable,
        j: GroupoidMorphism,
        i: GroupoidMorphism,
    ) -> Self {
        Diagram { d, v, h, j, i }
    }

    /// Validates `D`, `V`, `H` and both morphisms.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        report.absorb("D", self.d.validate());
        report.absorb("V", self.v.validate());
        report.absorb("H", self.h.validate());
        for (name, m, src) in [("j", &self.j, &self.v), ("i", &self.i, &self.h)] {
            match m.validate(src, &self.d) {
                Ok(r) => report.absorb(name, r),
                Err(_) => {
                    let mut r = ValidationReport::new();
                    r.push(Axiom::BaseMismatch, [src.base_size(), self.d.base_size()]);
                    report.absorb(name, r);
                }
            }
        }
        report
    }

    /// `Ψ(f, y) = j(f)·i(y)`.
    pub fn psi(&self, f: ArrowId, y: ArrowId) -> Option<ArrowId> {
        self.d.compose(self.j.apply(f), self.i.apply(y))
    }

    /// `Φ(x, g) = i(x)·j(g)`.
    pub fn phi(&self, x: ArrowId, g: ArrowId) -> Option<ArrowId> {
        self.d.compose(self.i.apply(x), self.j.apply(g))
    }

    /// Whether a frame satisfies `i(x)·j(g) = j(h)·i(y)`.
    pub fn is_box(&self, frame: &Frame) -> bool {
        frame.fits(&self.v, &self.h)
            && self.phi(frame.top, frame.right).is_some()
            && self.phi(frame.top, frame.right) == self.psi(frame.left, frame.bottom)
    }
}

/// Free-standing form of [`Diagram::validate`].
pub fn validate_diagram(delta: &Diagram) -> ValidationReport {
    delta.validate()
}

/// Coverage of `D` by products `j(v)·i(h)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    pub is_factorization: bool,
    /// Arrows of `D` not of the form `j(v)·i(h)`.
    pub uncovered: Vec<ArrowId>,
    /// For each arrow of `D`, the number of pairs `(v, h)` producing it.
    pub redundancy: Vec<usize>,
}

impl FactorizationReport {
    /// Every arrow is covered exactly once.
    pub fn is_exact(&self) -> bool {
        self.is_factorization && self.redundancy.iter().all(|&n| n == 1)
    }
}

/// Whether `D = j(V)·i(H)`.
pub fn is_factorization(delta: &Diagram) -> FactorizationReport {
    let mut redundancy = vec![0; delta.d.num_arrows()];
    for f in delta.v.arrow_ids() {
        for &y in delta.h.outgoing(delta.v.end(f)) {
            if let Some(c) = delta.psi(f, y) {
                redundancy[c.0] += 1;
            }
        }
    }
    let uncovered: Vec<ArrowId> = (0..redundancy.len())
        .filter(|&c| redundancy[c] == 0)
        .map(ArrowId)
        .collect();
    FactorizationReport {
        is_factorization: uncovered.is_empty(),
        uncovered,
        redundancy,
    }
}

/// Whether `i(H)·j(V) = j(V)·i(H)` as sets of arrows of `D`, that is,
/// whether `j(V)·i(H)` is closed under composition.
pub fn products_commute(delta: &Diagram) -> bool {
    let mut psi = vec![false; delta.d.num_arrows()];
    let mut phi = vec![false; delta.d.num_arrows()];
    for f in delta.v.arrow_ids() {
        for &y in delta.h.outgoing(delta.v.end(f)) {
            if let Some(c) = delta.psi(f, y) {
                psi[c.0] = true;
            }
        }
    }
    for x in delta.h.arrow_ids() {
        for &g in delta.v.outgoing(delta.h.end(x)) {
            if let Some(c) = delta.phi(x, g) {
                phi[c.0] = true;
            }
        }
    }
    psi == phi
}

/// Whether `D` is generated by `j(V) ∪ i(H)`.
pub fn generated_by_images(delta: &Diagram) -> bool {
    let d = &delta.d;
    let mut reached = vec![false; d.num_arrows()];
    let mut frontier: Vec<ArrowId> = d.identities().to_vec();
    let gens: Vec<ArrowId> = delta
        .j
        .arrow_map()
        .iter()
        .chain(delta.i.arrow_map())
        .copied()
        .collect();
    for &a in &frontier {
        reached[a.0] = true;
    }
    while let Some(a) = frontier.pop() {
        for &g in &gens {
            if let Some(c) = d.compose(a, g) {
                if !std::mem::replace(&mut reached[c.0], true) {
                    frontier.push(c);
                }
            }
        }
    }
    reached.into_iter().all(|r| r)
}

/// The frames of `□(D, j, i)`, ordered by `(top, right)` and then by
/// `(left, bottom)`. Fails once more than `limit` frames are found.
pub fn box_frames(delta: &Diagram, limit: usize) -> Result<Vec<Frame>> {
    let mut by_psi: HashMap<ArrowId, Vec<(ArrowId, ArrowId)>> = HashMap::new();
    for f in delta.v.arrow_ids() {
        for &y in delta.h.outgoing(delta.v.end(f)) {
            if let Some(c) = delta.psi(f, y) {
                by_psi.entry(c).or_default().push((f, y));
            }
        }
    }
    let mut frames = Vec::new();
    for x in delta.h.arrow_ids() {
        for &g in delta.v.outgoing(delta.h.end(x)) {
            let Some(c) = delta.phi(x, g) else { continue };
            for &(f, y) in by_psi.get(&c).map(Vec::as_slice).unwrap_or_default() {
                if frames.len() == limit {
                    return Err(Error::TooManyBoxes { limit });
                }
                frames.push(Frame::new(x, f, g, y));
            }
        }
    }
    Ok(frames)
}

/// The box double groupoid `□(D, j, i)`: slim, with compositions
/// restricted from the coarse double groupoid.
pub fn box_double(delta: &Diagram) -> Result<DoubleGroupoid> {
    box_double_bounded(delta, usize::MAX)
}

/// [`box_double`], failing once more than `limit` boxes are found.
pub fn box_double_bounded(delta: &Diagram, limit: usize) -> Result<DoubleGroupoid> {
    let report = delta.validate();
    if !report.is_valid() {
        return Err(Error::InvalidDiagram(report));
    }
    let frames = box_frames(delta, limit)?;
    DoubleGroupoid::from_frames(delta.v.clone(), delta.h.clone(), frames)
}

/// Whether `□(D, j, i)` satisfies the filling condition exactly when
/// `(D, j, i)` is a factorization.
pub fn filling_iff_factorization(delta: &Diagram) -> Result<bool> {
    let filling = box_double(delta)?.filling_condition();
    Ok(filling == is_factorization(delta).is_factorization)
}

/// The canonical map `D(□(D, j, i)) → D`, `[v, h] ↦ j(v)·i(h)`, with the
/// checks that make it an isomorphism of diagrams.
#[derive(Debug, Clone)]
pub struct PhiCertificate {
    pub diagonal: GroupoidTable,
    pub phi: GroupoidMorphism,
    pub is_morphism: bool,
    pub is_bijective: bool,
    /// `φ ∘ j̄ = j` on every arrow of `V`.
    pub intertwines_j: bool,
    /// `φ ∘ ī = i` on every arrow of `H`.
    pub intertwines_i: bool,
}

impl PhiCertificate {
    pub fn certified(&self) -> bool {
        self.is_morphism && self.is_bijective && self.intertwines_j && self.intertwines_i
    }
}

/// Builds `□(Δ)`, its diagonal, and the canonical map back to `D`.
pub fn phi_roundtrip(delta: &Diagram) -> Result<PhiCertificate> {
    let fact = is_factorization(delta);
    if !fact.is_factorization {
        return Err(Error::NotAFactorization {
            uncovered: fact.uncovered.len(),
        });
    }
    let b = box_double(delta)?;
    let diag = DiagonalGroupoid::of_valid(&b)?;
    diag.verify_filler_independence()?;
    Ok(phi_certificate(delta, &diag))
}

/// The canonical map for a diagonal already computed from `□(Δ)`.
pub fn phi_certificate(delta: &Diagram, diag: &DiagonalGroupoid<'_>) -> PhiCertificate {
    let t = diag.table();
    let phi = GroupoidMorphism::new(
        t.arrow_ids()
            .map(|c| {
                let (v, h) = diag.representative(c);
                delta.psi(v, h).expect("composable pair")
            })
            .collect(),
    );
    let is_morphism = matches!(phi.validate(t, &delta.d), Ok(r) if r.is_valid());
    let is_bijective = phi.is_bijective(&delta.d);
    let (bar_i, bar_j) = diag.induced_maps();
    let intertwines_j = bar_j.then(&phi) == delta.j;
    let intertwines_i = bar_i.then(&phi) == delta.i;
    PhiCertificate {
        diagonal: t.clone(),
        phi,
        is_morphism,
        is_bijective,
        intertwines_j,
        intertwines_i,
    }
}

/// The frame map `B → □(D(B), j, i)`, with its checks.
#[derive(Debug, Clone)]
pub struct FrameCertificate {
    pub target: DoubleGroupoid,
    pub map: DoubleGroupoidMorphism,
    pub is_morphism: bool,
    pub is_bijective: bool,
}

impl FrameCertificate {
    pub fn certified(&self) -> bool {
        self.is_morphism && self.is_bijective
    }
}

/// The diagram `(D(B), j, i)` induced by a diagonal.
pub fn induced_diagram(diag: &DiagonalGroupoid<'_>) -> Diagram {
    let b = diag.parent();
    let (i, j) = diag.induced_maps();
    Diagram::new(
        diag.table().clone(),
        b.vertical().clone(),
        b.horizontal().clone(),
        j,
        i,
    )
}

/// Builds `D(B)`, then `□(D(B), j, i)`, and maps each box to the box with
/// the same frame.
pub fn frame_roundtrip(b: &DoubleGroupoid) -> Result<FrameCertificate> {
    let report = b.validate();
    if !report.is_valid() {
        return Err(Error::InvalidDouble(report.to_string()));
    }
    let diag = DiagonalGroupoid::of_valid(b)?;
    diag.verify_filler_independence()?;
    frame_certificate(&diag)
}

/// The frame map for a diagonal already computed from `B`.
pub fn frame_certificate(diag: &DiagonalGroupoid<'_>) -> Result<FrameCertificate> {
    let b = diag.parent();
    let target = box_double(&induced_diagram(diag))?;
    let index: HashMap<Frame, BoxId> = target.boxes().map(|a| (target.frames()[a.0], a)).collect();
    let mut box_map = Vec::with_capacity(b.num_boxes());
    for a in b.boxes() {
        let frame = b.frames()[a.0];
        // a missing frame would mean a relator outside the kernel
        let image = index.get(&frame).ok_or(Error::UnknownBox(a.0))?;
        box_map.push(*image);
    }
    let map = DoubleGroupoidMorphism::new(box_map);
    let is_morphism = matches!(map.validate(b, &target), Ok(r) if r.is_valid());
    let is_bijective = map.is_bijective(&target);
    Ok(FrameCertificate {
        target,
        map,
        is_morphism,
        is_bijective,
    })
}

/// The class map `D(B1) → D(B2)` induced by a morphism of double groupoids
/// over the same `V` and `H`: `[v, h] ↦ [v, h]`.
pub fn transport_double_morphism(
    d1: &DiagonalGroupoid<'_>,
    d2: &DiagonalGroupoid<'_>,
    morphism: &DoubleGroupoidMorphism,
) -> Result<GroupoidMorphism> {
    let report = morphism.validate(d1.parent(), d2.parent())?;
    if !report.is_valid() {
        return Err(Error::InvalidDouble(report.to_string()));
    }
    let mut map = Vec::with_capacity(d1.num_classes());
    for c in d1.table().arrow_ids() {
        let mut images = d1.members(c).map(|(v, h)| d2.project(v, h));
        let first = images.next().flatten().expect("classes are non-empty");
        if images.any(|other| other != Some(first)) {
            return Err(Error::InvalidDouble(format!(
                "class {c} is split by the target's core action"
            )));
        }
        map.push(first);
    }
    let phi = GroupoidMorphism::new(map);
    let report = phi.validate(d1.table(), d2.table())?;
    if !report.is_valid() {
        return Err(Error::InvalidConstruction(report));
    }
    Ok(phi)
}

/// The frame-wise map `□(Δ1) → □(Δ2)` induced by a morphism `ψ: D1 → D2`
/// with `ψ∘j1 = j2` and `ψ∘i1 = i2`.
pub fn transport_diagram_morphism(
    delta1: &Diagram,
    delta2: &Diagram,
    psi: &GroupoidMorphism,
) -> Result<DoubleGroupoidMorphism> {
    let mut report = psi.validate(&delta1.d, &delta2.d)?;
    if delta1.j.then(psi) != delta2.j {
        report.push(Axiom::StructurePreserved, [0]);
    }
    if delta1.i.then(psi) != delta2.i {
        report.push(Axiom::StructurePreserved, [1]);
    }
    if !report.is_valid() {
        return Err(Error::InvalidDiagram(report));
    }
    let b1 = box_double(delta1)?;
    let b2 = box_double(delta2)?;
    let index: HashMap<Frame, BoxId> = b2.boxes().map(|a| (b2.frames()[a.0], a)).collect();
    let map = b1
        .boxes()
        .map(|a| {
            index
                .get(&b1.frames()[a.0])
                .copied()
                .ok_or(Error::UnknownBox(a.0))
        })
        .collect::<Result<Vec<_>>>()?;
    let morphism = DoubleGroupoidMorphism::new(map);
    let report = morphism.validate(&b1, &b2)?;
    if !report.is_valid() {
        return Err(Error::InvalidDouble(report.to_string()));
    }
    Ok(morphism)
}
