//! Base-fixing groupoid morphisms.

use crate::error::{Error, Result};
use crate::gpd::{ArrowId, GroupoidTable};
use crate::report::{Axiom, ValidationReport};

/// A map of arrows between two groupoids over the same base. It must act
/// as the identity on objects.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupoidMorphism {
    arrow_map: Vec<ArrowId>,
}

impl GroupoidMorphism {
    pub fn new(arrow_map: Vec<ArrowId>) -> Self {
        GroupoidMorphism { arrow_map }
    }

    pub fn identity(g: &GroupoidTable) -> Self {
        GroupoidMorphism::new(g.arrow_ids().collect())
    }

    /// Sends every arrow to the identity at its source. Only a morphism
    /// when the source groupoid has no arrows between distinct objects.
    pub fn to_identities(source: &GroupoidTable, target: &GroupoidTable) -> Self {
        GroupoidMorphism::new(
            source
                .arrow_ids()
                .map(|a| target.ident(source.src(a)))
                .collect(),
        )
    }

    pub fn apply(&self, a: ArrowId) -> ArrowId {
        self.arrow_map[a.0]
    }

    pub fn arrow_map(&self) -> &[ArrowId] {
        &self.arrow_map
    }

    pub fn len(&self) -> usize {
        self.arrow_map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrow_map.is_empty()
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &GroupoidMorphism) -> GroupoidMorphism {
        GroupoidMorphism::new(self.arrow_map.iter().map(|&a| then.apply(a)).collect())
    }

    /// Checks structure preservation, reporting one witness per failure.
    pub fn validate(
        &self,
        source: &GroupoidTable,
        target: &GroupoidTable,
    ) -> Result<ValidationReport> {
        if source.base_size() != target.base_size() {
            return Err(Error::BaseMismatch {
                left: source.base_size(),
                right: target.base_size(),
            });
        }
        let mut report = ValidationReport::new();
        if self.arrow_map.len() != source.num_arrows() {
            report.push(Axiom::MorphismShape, [self.arrow_map.len()]);
            return Ok(report);
        }
        if let Some(a) = source
            .arrow_ids()
            .find(|&a| !target.contains(self.apply(a)))
        {
            report.push(Axiom::MorphismShape, [a.0]);
            return Ok(report);
        }
        for a in source.arrow_ids() {
            let fa = self.apply(a);
            if target.src(fa) != source.src(a) || target.end(fa) != source.end(a) {
                report.push(Axiom::MorphismEndpoints, [a.0]);
            }
        }
        for p in source.objects() {
            if self.apply(source.ident(p)) != target.ident(p) {
                report.push(Axiom::MorphismIdentity, [p.0]);
            }
        }
        for (a, b) in source.composable_pairs() {
            let (fa, fb) = (self.apply(a), self.apply(b));
            let image = source.compose(a, b).map(|c| self.apply(c));
            let product = if target.end(fa) == target.src(fb) {
                target.compose(fa, fb)
            } else {
                None
            };
            if image.is_none() || image != product {
                report.push(Axiom::MorphismComposition, [a.0, b.0]);
            }
        }
        Ok(report)
    }

    /// True iff the arrow map is a bijection onto the target's arrows.
    pub fn is_bijective(&self, target: &GroupoidTable) -> bool {
        if self.arrow_map.len() != target.num_arrows() {
            return false;
        }
        let mut seen = vec![false; target.num_arrows()];
        for &a in &self.arrow_map {
            if a.0 >= seen.len() || std::mem::replace(&mut seen[a.0], true) {
                return false;
            }
        }
        true
    }
}

pub fn validate_morphism(
    phi: &GroupoidMorphism,
    source: &GroupoidTable,
    target: &GroupoidTable,
) -> Result<ValidationReport> {
    phi.validate(source, target)
}

/// A valid morphism whose arrow map is bijective. A bijective base-fixing
/// morphism is an isomorphism: its inverse map is again a morphism.
pub fn verify_isomorphism(
    phi: &GroupoidMorphism,
    source: &GroupoidTable,
    target: &GroupoidTable,
) -> bool {
    matches!(phi.validate(source, target), Ok(r) if r.is_valid()) && phi.is_bijective(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Group;

    #[test]
    fn identity_is_an_isomorphism() {
        let g = Group::symmetric(3).to_groupoid();
        let id = GroupoidMorphism::identity(&g);
        assert!(id.validate(&g, &g).unwrap().is_valid());
        assert!(verify_isomorphism(&id, &g, &g));
    }

    #[test]
    fn subgroup_inclusion_into_s3() {
        let s3 = Group::symmetric(3);
        let transposition = s3.generated(&[s3.element_of_perm(&[1, 0, 2])]);
        assert_eq!(transposition.len(), 2);
        let (a, incl) = s3.subgroup_groupoid(&transposition);
        assert!(incl.validate(&a, &s3.to_groupoid()).unwrap().is_valid());
        assert!(!incl.is_bijective(&s3.to_groupoid()));
    }

    #[test]
    fn collapse_to_identity_is_a_morphism_but_not_iso() {
        let z2 = Group::cyclic(2).to_groupoid();
        let collapse = GroupoidMorphism::to_identities(&z2, &z2);
        assert!(collapse.validate(&z2, &z2).unwrap().is_valid());
        assert!(!verify_isomorphism(&collapse, &z2, &z2));
    }

    #[test]
    fn broken_composition_is_witnessed() {
        let z3 = Group::cyclic(3).to_groupoid();
        // 1 -> 1, 2 -> 1 is not additive
        let bad = GroupoidMorphism::new(vec![ArrowId(0), ArrowId(1), ArrowId(1)]);
        let report = bad.validate(&z3, &z3).unwrap();
        assert!(report.contains(Axiom::MorphismComposition));
    }

    #[test]
    fn base_mismatch_is_an_error() {
        let a = GroupoidTable::unit(1);
        let b = GroupoidTable::unit(2);
        let phi = GroupoidMorphism::new(vec![ArrowId(0)]);
        assert!(matches!(
            phi.validate(&a, &b),
            Err(Error::BaseMismatch { left: 1, right: 2 })
        ));
    }
}
