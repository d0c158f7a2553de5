//! Workspace files: named groupoids, double groupoids and diagrams in one
//! JSON document.
//!
//! ```json
//! {
//!   "base_size": 1,
//!   "groupoids": { "Z2": { "arrows": [{"id": 0, "src": 0, "end": 0}, ...],
//!                          "comp": [[0, 0, 0], ...], "ident": [0], "inv": [0, 1] } },
//!   "doubles":   { "B": { "V": "Z2", "H": "Z2", "boxes": [{"id": 0, "t": 0, "b": 0, "l": 0, "r": 0}, ...],
//!                         "hcomp": [[0, 0, 0], ...], "vcomp": [...] } },
//!   "diagrams":  { "Delta": { "D": "Z2", "V": "Z2", "H": "Z2", "j": [0, 1], "i": [0, 1] } }
//! }
//! ```
//!
//! Everything is validated on load. Slim doubles must carry exactly the
//! side-wise compositions of their frames.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::dbl::{BoxId, DoubleGroupoid, Frame};
use crate::error::Error;
use crate::factor::Diagram;
use crate::gpd::{Arrow, ArrowId, GroupoidTable};
use crate::morphism::GroupoidMorphism;
use crate::report::ValidationReport;

/// Why a workspace could not be loaded or extended.
#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("schema violation at `{path}` (line {line}, column {column}): {message}")]
    Schema {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("`{path}`: {message}")]
    Field { path: String, message: String },
    #[error("`{path}`: {error}")]
    Construction { path: String, error: Error },
    #[error("`{path}` fails validation: {report}")]
    Invalid {
        path: String,
        report: ValidationReport,
    },
    #[error("name `{0}` is already taken")]
    DuplicateName(String),
    #[error("base size {found} differs from the workspace base size {expected}")]
    BaseMismatch { expected: usize, found: usize },
}

impl LoadError {
    /// The field path the error points at, if any.
    pub fn path(&self) -> Option<&str> {
        match self {
            LoadError::Schema { path, .. }
            | LoadError::Field { path, .. }
            | LoadError::Construction { path, .. }
            | LoadError::Invalid { path, .. } => Some(path),
            _ => None,
        }
    }
}

fn field(path: impl Into<String>, message: impl fmt::Display) -> LoadError {
    LoadError::Field {
        path: path.into(),
        message: message.to_string(),
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    base_size: usize,
    #[serde(default)]
    groupoids: BTreeMap<String, RawGroupoid>,
    #[serde(default)]
    doubles: BTreeMap<String, RawDouble>,
    #[serde(default)]
    diagrams: BTreeMap<String, RawDiagram>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArrow {
    id: usize,
    src: usize,
    end: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroupoid {
    arrows: Vec<RawArrow>,
    comp: Vec<[usize; 3]>,
    ident: Vec<usize>,
    inv: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBox {
    id: usize,
    t: usize,
    b: usize,
    l: usize,
    r: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDouble {
    #[serde(rename = "V")]
    v: String,
    #[serde(rename = "H")]
    h: String,
    boxes: Vec<RawBox>,
    hcomp: Vec<[usize; 3]>,
    vcomp: Vec<[usize; 3]>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiagram {
    #[serde(rename = "D")]
    d: String,
    #[serde(rename = "V")]
    v: String,
    #[serde(rename = "H")]
    h: String,
    j: Vec<usize>,
    i: Vec<usize>,
}

/// A double groupoid together with the names of its side groupoids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoredDouble {
    pub v: String,
    pub h: String,
    pub double: DoubleGroupoid,
}

/// A diagram together with the names of its three groupoids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoredDiagram {
    pub d: String,
    pub v: String,
    pub h: String,
    pub diagram: Diagram,
}

/// A named object of a workspace.
#[derive(Debug, Clone, Copy)]
pub enum Object<'w> {
    Groupoid(&'w GroupoidTable),
    Double(&'w DoubleGroupoid),
    Diagram(&'w Diagram),
}

/// Named, validated groupoids, double groupoids and diagrams over one base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Workspace {
    base_size: usize,
    groupoids: BTreeMap<String, GroupoidTable>,
    doubles: BTreeMap<String, StoredDouble>,
    diagrams: BTreeMap<String, StoredDiagram>,
}

impl Workspace {
    pub fn new(base_size: usize) -> Self {
        Workspace {
            base_size,
            groupoids: BTreeMap::new(),
            doubles: BTreeMap::new(),
            diagrams: BTreeMap::new(),
        }
    }

    pub fn base_size(&self) -> usize {
        self.base_size
    }

    pub fn is_empty(&self) -> bool {
        self.groupoids.is_empty() && self.doubles.is_empty() && self.diagrams.is_empty()
    }

    pub fn groupoids(&self) -> &BTreeMap<String, GroupoidTable> {
        &self.groupoids
    }

    pub fn doubles(&self) -> &BTreeMap<String, StoredDouble> {
        &self.doubles
    }

    pub fn diagrams(&self) -> &BTreeMap<String, StoredDiagram> {
        &self.diagrams
    }

    pub fn groupoid(&self, name: &str) -> Option<&GroupoidTable> {
        self.groupoids.get(name)
    }

    pub fn double(&self, name: &str) -> Option<&DoubleGroupoid> {
        self.doubles.get(name).map(|s| &s.double)
    }

    pub fn diagram(&self, name: &str) -> Option<&Diagram> {
        self.diagrams.get(name).map(|s| &s.diagram)
    }

    /// Looks a name up across all three kinds.
    pub fn get(&self, name: &str) -> Option<Object<'_>> {
        self.groupoid(name)
            .map(Object::Groupoid)
            .or_else(|| self.double(name).map(Object::Double))
            .or_else(|| self.diagram(name).map(Object::Diagram))
    }

    /// All names, groupoids first, then doubles, then diagrams.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.groupoids
            .keys()
            .chain(self.doubles.keys())
            .chain(self.diagrams.keys())
            .map(String::as_str)
    }

    fn claim(&self, name: &str) -> Result<(), LoadError> {
        if self.get(name).is_some() {
            Err(LoadError::DuplicateName(name.to_string()))
        } else {
            Ok(())
        }
    }

    fn check_base(&self, n: usize) -> Result<(), LoadError> {
        if n == self.base_size {
            Ok(())
        } else {
            Err(LoadError::BaseMismatch {
                expected: self.base_size,
                found: n,
            })
        }
    }

    /// Adds a validated groupoid under `name`.
    pub fn insert_groupoid(&mut self, name: &str, g: GroupoidTable) -> Result<(), LoadError> {
        self.claim(name)?;
        self.check_base(g.base_size())?;
        let report = g.validate();
        if !report.is_valid() {
            return Err(LoadError::Invalid {
                path: format!("groupoids.{name}"),
                report,
            });
        }
        self.groupoids.insert(name.to_string(), g);
        Ok(())
    }

    // reuses an equal stored groupoid, or stores `g` as `fallback`
    fn intern(&mut self, g: &GroupoidTable, fallback: String) -> Result<String, LoadError> {
        if let Some((name, _)) = self.groupoids.iter().find(|(_, h)| *h == g) {
            return Ok(name.clone());
        }
        self.insert_groupoid(&fallback, g.clone())?;
        Ok(fallback)
    }

    /// Adds a validated double groupoid, storing its side groupoids as
    /// `name.V` and `name.H` unless equal groupoids are already present.
    pub fn insert_double(&mut self, name: &str, b: DoubleGroupoid) -> Result<(), LoadError> {
        self.claim(name)?;
        self.check_base(b.base_size())?;
        let report = b.validate();
        if !report.is_valid() {
            return Err(LoadError::Invalid {
                path: format!("doubles.{name}"),
                report,
            });
        }
        let v = self.intern(b.vertical(), format!("{name}.V"))?;
        let h = self.intern(b.horizontal(), format!("{name}.H"))?;
        self.doubles
            .insert(name.to_string(), StoredDouble { v, h, double: b });
        Ok(())
    }

    /// Adds a validated diagram, storing its groupoids as `name.D`, `name.V`
    /// and `name.H` unless equal groupoids are already present.
    pub fn insert_diagram(&mut self, name: &str, delta: Diagram) -> Result<(), LoadError> {
        self.claim(name)?;
        self.check_base(delta.d.base_size())?;
        let report = delta.validate();
        if !report.is_valid() {
            return Err(LoadError::Invalid {
                path: format!("diagrams.{name}"),
                report,
            });
        }
        let d = self.intern(&delta.d, format!("{name}.D"))?;
        let v = self.intern(&delta.v, format!("{name}.V"))?;
        let h = self.intern(&delta.h, format!("{name}.H"))?;
        self.diagrams.insert(
            name.to_string(),
            StoredDiagram {
                d,
                v,
                h,
                diagram: delta,
            },
        );
        Ok(())
    }

    /// Parses and validates a workspace document.
    pub fn from_json(text: &str) -> Result<Self, LoadError> {
        let mut de = serde_json::Deserializer::from_str(text);
        let raw: RawFile = serde_path_to_error::deserialize(&mut de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            LoadError::Schema {
                path,
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        })?;
        de.end().map_err(|e| LoadError::Schema {
            path: ".".into(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let mut ws = Workspace::new(raw.base_size);
        for (name, rg) in &raw.groupoids {
            let g = groupoid_from_raw(&format!("groupoids.{name}"), raw.base_size, rg)?;
            ws.insert_groupoid(name, g)?;
        }
        for (name, rd) in &raw.doubles {
            let path = format!("doubles.{name}");
            ws.claim(name)?;
            let b = double_from_raw(&ws, &path, rd)?;
            ws.doubles.insert(
                name.clone(),
                StoredDouble {
                    v: rd.v.clone(),
                    h: rd.h.clone(),
                    double: b,
                },
            );
        }
        for (name, rd) in &raw.diagrams {
            let path = format!("diagrams.{name}");
            ws.claim(name)?;
            let delta = diagram_from_raw(&ws, &path, rd)?;
            ws.diagrams.insert(
                name.clone(),
                StoredDiagram {
                    d: rd.d.clone(),
                    v: rd.v.clone(),
                    h: rd.h.clone(),
                    diagram: delta,
                },
            );
        }
        Ok(ws)
    }

    /// The canonical document: sorted names, tables in id order, a
    /// trailing newline.
    pub fn to_json(&self) -> String {
        let raw = RawFile {
            base_size: self.base_size,
            groupoids: self
                .groupoids
                .iter()
                .map(|(k, g)| (k.clone(), groupoid_to_raw(g)))
                .collect(),
            doubles: self
                .doubles
                .iter()
                .map(|(k, s)| (k.clone(), double_to_raw(s)))
                .collect(),
            diagrams: self
                .diagrams
                .iter()
                .map(|(k, s)| (k.clone(), diagram_to_raw(s)))
                .collect(),
        };
        let value = serde_json::to_value(&raw).expect("plain data serializes");
        let mut out = String::new();
        write_canonical(&value, 0, &mut out);
        out.push('\n');
        out
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, LoadError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), LoadError> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

fn is_flat(value: &Value) -> bool {
    match value {
        Value::Array(items) => items.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(map) => map.values().all(|x| !x.is_array() && !x.is_object()),
        _ => true,
    }
}

// flat values on one line, everything else indented by two spaces
fn write_canonical(value: &Value, depth: usize, out: &mut String) {
    if is_flat(value) {
        out.push_str(&value.to_string());
        return;
    }
    let pad = "  ".repeat(depth + 1);
    let (open, close) = if value.is_array() {
        ('[', ']')
    } else {
        ('{', '}')
    };
    out.push(open);
    let mut first = true;
    let mut item = |key: Option<&str>, v: &Value, out: &mut String| {
        out.push_str(if first { "\n" } else { ",\n" });
        first = false;
        out.push_str(&pad);
        if let Some(k) = key {
            out.push_str(&Value::String(k.to_string()).to_string());
            out.push_str(": ");
        }
        write_canonical(v, depth + 1, out);
    };
    match value {
        Value::Array(items) => items.iter().for_each(|v| item(None, v, out)),
        Value::Object(map) => map.iter().for_each(|(k, v)| item(Some(k), v, out)),
        _ => unreachable!(),
    }
    out.push('\n');
    out.push_str(&"  ".repeat(depth));
    out.push(close);
}

fn check_index(path: String, value: usize, len: usize, what: &str) -> Result<(), LoadError> {
    if value < len {
        Ok(())
    } else {
        Err(field(
            path,
            format!("{what} {value} out of range (0..{len})"),
        ))
    }
}

fn groupoid_from_raw(
    path: &str,
    base: usize,
    rg: &RawGroupoid,
) -> Result<GroupoidTable, LoadError> {
    let n = rg.arrows.len();
    for (k, a) in rg.arrows.iter().enumerate() {
        if a.id != k {
            return Err(field(
                format!("{path}.arrows[{k}].id"),
                format!("expected id {k}, found {}", a.id),
            ));
        }
        check_index(format!("{path}.arrows[{k}].src"), a.src, base, "object")?;
        check_index(format!("{path}.arrows[{k}].end"), a.end, base, "object")?;
    }
    for (k, [a, b, c]) in rg.comp.iter().copied().enumerate() {
        for x in [a, b, c] {
            check_index(format!("{path}.comp[{k}]"), x, n, "arrow")?;
        }
        if rg.arrows[a].end != rg.arrows[b].src {
            return Err(field(
                format!("{path}.comp[{k}]"),
                format!("arrows {a} and {b} are not composable"),
            ));
        }
    }
    for (k, &e) in rg.ident.iter().enumerate() {
        check_index(format!("{path}.ident[{k}]"), e, n, "arrow")?;
    }
    for (k, &e) in rg.inv.iter().enumerate() {
        check_index(format!("{path}.inv[{k}]"), e, n, "arrow")?;
    }
    let arrows = rg.arrows.iter().map(|a| Arrow::new(a.src, a.end)).collect();
    let comp = rg
        .comp
        .iter()
        .map(|&[a, b, c]| (ArrowId(a), ArrowId(b), ArrowId(c)));
    let ident = rg.ident.iter().map(|&a| ArrowId(a)).collect();
    let inv = rg.inv.iter().map(|&a| ArrowId(a)).collect();
    GroupoidTable::from_parts(base, arrows, comp, ident, inv).map_err(|error| {
        LoadError::Construction {
            path: path.to_string(),
            error,
        }
    })
}

fn lookup<'w>(ws: &'w Workspace, path: String, name: &str) -> Result<&'w GroupoidTable, LoadError> {
    ws.groupoid(name)
        .ok_or_else(|| field(path, format!("no groupoid named `{name}`")))
}

fn double_from_raw(
    ws: &Workspace,
    path: &str,
    rd: &RawDouble,
) -> Result<DoubleGroupoid, LoadError> {
    let v = lookup(ws, format!("{path}.V"), &rd.v)?;
    let h = lookup(ws, format!("{path}.H"), &rd.h)?;
    let mut frames = Vec::with_capacity(rd.boxes.len());
    for (k, rb) in rd.boxes.iter().enumerate() {
        let at = |f: &str| format!("{path}.boxes[{k}].{f}");
        if rb.id != k {
            return Err(field(at("id"), format!("expected id {k}, found {}", rb.id)));
        }
        check_index(at("t"), rb.t, h.num_arrows(), "H-arrow")?;
        check_index(at("b"), rb.b, h.num_arrows(), "H-arrow")?;
        check_index(at("l"), rb.l, v.num_arrows(), "V-arrow")?;
        check_index(at("r"), rb.r, v.num_arrows(), "V-arrow")?;
        let fr = Frame::new(ArrowId(rb.t), ArrowId(rb.l), ArrowId(rb.r), ArrowId(rb.b));
        if !fr.fits(v, h) {
            return Err(field(
                format!("{path}.boxes[{k}]"),
                format!("frame {fr} violates the corner condition"),
            ));
        }
        frames.push(fr);
    }
    let n = frames.len();
    let entries = |name: &str, table: &[[usize; 3]], horizontal: bool| {
        let mut out = Vec::with_capacity(table.len());
        for (k, &[a, b, c]) in table.iter().enumerate() {
            let at = format!("{path}.{name}[{k}]");
            for x in [a, b, c] {
                check_index(at.clone(), x, n, "box")?;
            }
            let ok = if horizontal {
                frames[a].right == frames[b].left
            } else {
                frames[a].bottom == frames[b].top
            };
            if !ok {
                return Err(field(at, format!("boxes {a} and {b} are not composable")));
            }
            out.push((BoxId(a), BoxId(b), BoxId(c)));
        }
        Ok(out)
    };
    let hcomp = entries("hcomp", &rd.hcomp, true)?;
    let vcomp = entries("vcomp", &rd.vcomp, false)?;
    let b = DoubleGroupoid::from_tables(v.clone(), h.clone(), frames.clone(), hcomp, vcomp)
        .map_err(|error| LoadError::Construction {
            path: path.to_string(),
            error,
        })?;
    let report = b.validate();
    if !report.is_valid() {
        return Err(LoadError::Invalid {
            path: path.to_string(),
            report,
        });
    }
    if b.is_slim() {
        let derived =
            DoubleGroupoid::from_frames(v.clone(), h.clone(), frames).map_err(|error| {
                LoadError::Construction {
                    path: path.to_string(),
                    error,
                }
            })?;
        if derived.horizontal_groupoid() != b.horizontal_groupoid() {
            return Err(field(
                format!("{path}.hcomp"),
                "differs from the side-wise composition of frames",
            ));
        }
        if derived.vertical_groupoid() != b.vertical_groupoid() {
            return Err(field(
                format!("{path}.vcomp"),
                "differs from the side-wise composition of frames",
            ));
        }
    }
    Ok(b)
}

fn diagram_from_raw(ws: &Workspace, path: &str, rd: &RawDiagram) -> Result<Diagram, LoadError> {
    let d = lookup(ws, format!("{path}.D"), &rd.d)?;
    let v = lookup(ws, format!("{path}.V"), &rd.v)?;
    let h = lookup(ws, format!("{path}.H"), &rd.h)?;
    let map = |name: &str, values: &[usize], source: &GroupoidTable| {
        if values.len() != source.num_arrows() {
            return Err(field(
                format!("{path}.{name}"),
                format!(
                    "expected {} entries, found {}",
                    source.num_arrows(),
                    values.len()
                ),
            ));
        }
        for (k, &x) in values.iter().enumerate() {
            check_index(format!("{path}.{name}[{k}]"), x, d.num_arrows(), "D-arrow")?;
        }
        Ok(GroupoidMorphism::new(
            values.iter().map(|&x| ArrowId(x)).collect(),
        ))
    };
    let j = map("j", &rd.j, v)?;
    let i = map("i", &rd.i, h)?;
    let delta = Diagram::new(d.clone(), v.clone(), h.clone(), j, i);
    let report = delta.validate();
    if !report.is_valid() {
        return Err(LoadError::Invalid {
            path: path.to_string(),
            report,
        });
    }
    Ok(delta)
}

fn groupoid_to_raw(g: &GroupoidTable) -> RawGroupoid {
    let mut comp: Vec<[usize; 3]> = g.entries().map(|(a, b, c)| [a.0, b.0, c.0]).collect();
    comp.sort_unstable();
    RawGroupoid {
        arrows: g
            .arrow_ids()
            .map(|a| RawArrow {
                id: a.0,
                src: g.src(a).0,
                end: g.end(a).0,
            })
            .collect(),
        comp,
        ident: g.identities().iter().map(|a| a.0).collect(),
        inv: g.inverses().iter().map(|a| a.0).collect(),
    }
}

fn double_to_raw(s: &StoredDouble) -> RawDouble {
    let b = &s.double;
    let table = |g: &GroupoidTable| {
        let mut t: Vec<[usize; 3]> = g.entries().map(|(a, b, c)| [a.0, b.0, c.0]).collect();
        t.sort_unstable();
        t
    };
    RawDouble {
        v: s.v.clone(),
        h: s.h.clone(),
        boxes: b
            .frames()
            .iter()
            .enumerate()
            .map(|(k, fr)| RawBox {
                id: k,
                t: fr.top.0,
                b: fr.bottom.0,
                l: fr.left.0,
                r: fr.right.0,
            })
            .collect(),
        hcomp: table(b.horizontal_groupoid()),
        vcomp: table(b.vertical_groupoid()),
    }
}

fn diagram_to_raw(s: &StoredDiagram) -> RawDiagram {
    let m = |m: &GroupoidMorphism| m.arrow_map().iter().map(|a| a.0).collect();
    RawDiagram {
        d: s.d.clone(),
        v: s.v.clone(),
        h: s.h.clone(),
        j: m(&s.diagram.j),
        i: m(&s.diagram.i),
    }
}
