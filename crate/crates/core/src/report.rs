//! Validation reports: every violated axiom together with a witness tuple.

use std::fmt;

use serde::Serialize;

/// The axiom a [`Violation`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    /// A composable pair has no composite in the table.
    CompositionTotal,
    /// `src(ab) = src(a)` or `end(ab) = end(b)` fails.
    CompositeEndpoints,
    /// `ident(p)` is not a loop at `p`.
    IdentityEndpoints,
    LeftUnit,
    RightUnit,
    Inverse,
    Associativity,
    /// Arrow map has the wrong length or leaves the target.
    MorphismShape,
    /// The morphism moves an endpoint; morphisms here fix the base.
    MorphismEndpoints,
    MorphismIdentity,
    MorphismComposition,
    /// The groupoids being compared live over different bases.
    BaseMismatch,
    ActionDomain,
    ActionMoment,
    ActionUnit,
    ActionCompatibility,
    BoxCorners,
    HorizontalSides,
    VerticalSides,
    HorizontalIdentitySides,
    VerticalIdentitySides,
    IdentityCompatibility,
    Interchange,
    /// A double groupoid morphism changes the frame of a box.
    FramePreserved,
    /// A double groupoid morphism does not commute with a structure map.
    StructurePreserved,
}

impl Axiom {
    fn name(self) -> &'static str {
        match self {
            Axiom::CompositionTotal => "composition totality",
            Axiom::CompositeEndpoints => "composite endpoints",
            Axiom::IdentityEndpoints => "identity endpoints",
            Axiom::LeftUnit => "left unit axiom",
            Axiom::RightUnit => "right unit axiom",
            Axiom::Inverse => "inverse axiom",
            Axiom::Associativity => "associativity",
            Axiom::MorphismShape => "morphism shape",
            Axiom::MorphismEndpoints => "base preservation",
            Axiom::MorphismIdentity => "identity preservation",
            Axiom::MorphismComposition => "composition preservation",
            Axiom::BaseMismatch => "common base",
            Axiom::ActionDomain => "action domain",
            Axiom::ActionMoment => "moment equivariance",
            Axiom::ActionUnit => "action unit",
            Axiom::ActionCompatibility => "action compatibility",
            Axiom::BoxCorners => "corner condition",
            Axiom::HorizontalSides => "horizontal side formula",
            Axiom::VerticalSides => "vertical side formula",
            Axiom::HorizontalIdentitySides => "horizontal identity sides",
            Axiom::VerticalIdentitySides => "vertical identity sides",
            Axiom::IdentityCompatibility => "identity compatibility",
            Axiom::Interchange => "interchange law",
            Axiom::FramePreserved => "frame preservation",
            Axiom::StructurePreserved => "structure preservation",
        }
    }

    fn witness_kind(self, arity: usize) -> &'static str {
        match (self, arity) {
            (Axiom::IdentityEndpoints | Axiom::BaseMismatch, _) => "object",
            (Axiom::Interchange, _) => "array",
            (Axiom::BoxCorners | Axiom::FramePreserved, _) => "box",
            (_, 1) => "arrow",
            (_, 2) => "pair",
            (_, 3) => "triple",
            _ => "tuple",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One violated axiom with the ids that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
    /// Which structure the violation belongs to, e.g. `horizontal` or `V`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub context: Option<String>,
}

impl Violation {
    pub fn new(axiom: Axiom, witness: impl Into<Vec<usize>>) -> Self {
        Violation {
            axiom,
            witness: witness.into(),
            context: None,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(ctx) = &self.context {
            write!(f, "{ctx}: ")?;
        }
        write!(
            f,
            "{} violated at {} ",
            self.axiom,
            self.axiom.witness_kind(self.witness.len())
        )?;
        match self.witness.as_slice() {
            [single] => write!(f, "{single}"),
            many => {
                let parts: Vec<String> = many.iter().map(ToString::to_string).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

/// Outcome of a validator: empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: Axiom, witness: impl Into<Vec<usize>>) {
        self.violations.push(Violation::new(axiom, witness));
    }

    /// Appends `other`, tagging each violation that has no context yet.
    pub fn absorb(&mut self, context: &str, other: ValidationReport) {
        for mut v in other.violations {
            v.context = Some(match v.context {
                Some(inner) => format!("{context}.{inner}"),
                None => context.to_string(),
            });
            self.violations.push(v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter()
    }

    pub fn contains(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn messages_name_the_witness() {
        let v = Violation::new(Axiom::Inverse, [1]);
        assert_eq!(v.to_string(), "inverse axiom violated at arrow 1");
        let mut r = ValidationReport::new();
        r.push(Axiom::Associativity, [0, 1, 2]);
        let mut outer = ValidationReport::new();
        outer.absorb("horizontal", r);
        assert_eq!(
            outer.to_string(),
            "horizontal: associativity violated at triple (0, 1, 2)"
        );
        assert_eq!(ValidationReport::new().to_string(), "valid");
    }
}
