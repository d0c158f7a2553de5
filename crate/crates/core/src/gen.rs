//! Generators: pair groupoids, groups, products with a base shape, and
//! diagrams from subgroup pairs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::factor::{is_factorization, Diagram};
use crate::gpd::{Arrow, ArrowId, GroupoidTable, ObjectId};
use crate::groups::Group;
use crate::morphism::GroupoidMorphism;

/// The pair groupoid on `n` points: one arrow `(p, q)` for every ordered
/// pair, with id `p·n + q`.
///
/// ```
/// let g = dblgpd::gen::pair_groupoid(3);
/// assert_eq!(g.num_arrows(), 9);
/// assert!(g.validate().is_valid());
/// ```
pub fn pair_groupoid(n: usize) -> GroupoidTable {
    let arrows = (0..n * n).map(|k| Arrow::new(k / n, k % n)).collect();
    GroupoidTable::from_fn(
        n,
        arrows,
        (0..n).map(|p| ArrowId(p * n + p)).collect(),
        |a, b| ArrowId((a.0 / n) * n + b.0 % n),
    )
    .expect("pair groupoids are groupoids")
}

/// The one-object groupoid of a Cayley table.
pub fn gen_group(mul: Vec<Vec<usize>>) -> Result<GroupoidTable> {
    Ok(Group::from_cayley("G", mul)?.to_groupoid())
}

/// `S × G` for a groupoid `S` and a one-object groupoid `G`: arrow
/// `(s, g)` has id `s·|G| + g` and the endpoints of `s`.
pub fn product_with_group(s: &GroupoidTable, g: &GroupoidTable) -> GroupoidTable {
    let m = g.num_arrows();
    let arrows = (0..s.num_arrows() * m)
        .map(|k| s.arrow(ArrowId(k / m)))
        .collect();
    let e = g.ident(ObjectId(0));
    GroupoidTable::from_fn(
        s.base_size(),
        arrows,
        s.identities()
            .iter()
            .map(|a| ArrowId(a.0 * m + e.0))
            .collect(),
        |a, b| {
            let sa = s.mul(ArrowId(a.0 / m), ArrowId(b.0 / m));
            let ga = g.mul(ArrowId(a.0 % m), ArrowId(b.0 % m));
            ArrowId(sa.0 * m + ga.0)
        },
    )
    .expect("products of groupoids are groupoids")
}

/// `φ_S × φ_G` between products built by [`product_with_group`].
pub fn product_morphism(
    on_shape: &GroupoidMorphism,
    on_group: &GroupoidMorphism,
    source_order: usize,
    target_order: usize,
) -> GroupoidMorphism {
    GroupoidMorphism::new(
        (0..on_shape.len() * source_order)
            .map(|k| {
                let s = on_shape.apply(ArrowId(k / source_order));
                let g = on_group.apply(ArrowId(k % source_order));
                ArrowId(s.0 * target_order + g.0)
            })
            .collect(),
    )
}

fn check_subgroup(group: &Group, elems: &[usize], name: &'static str) -> Result<()> {
    if group.is_subgroup(elems) {
        Ok(())
    } else {
        Err(Error::NotASubgroup(name))
    }
}

/// The one-object diagram `(G, A ↪ G, B ↪ G)` for subgroups `A` (vertical)
/// and `B` (horizontal), without checking that `G = AB`.
pub fn subgroup_diagram(group: &Group, a: &[usize], b: &[usize]) -> Result<Diagram> {
    check_subgroup(group, a, "A")?;
    check_subgroup(group, b, "B")?;
    let (v, j) = group.subgroup_groupoid(a);
    let (h, i) = group.subgroup_groupoid(b);
    Ok(Diagram::new(group.to_groupoid(), v, h, j, i))
}

/// The one-object diagram of a factorization `G = AB`.
///
/// ```
/// use dblgpd::gen::exact_factorization;
/// use dblgpd::groups::Group;
///
/// let z6 = Group::cyclic(6);
/// assert!(exact_factorization(&z6, &[0, 3], &[0, 2, 4]).is_ok());
/// let z4 = Group::cyclic(4);
/// assert!(exact_factorization(&z4, &[0, 2], &[0]).is_err());
/// ```
pub fn exact_factorization(group: &Group, a: &[usize], b: &[usize]) -> Result<Diagram> {
    let delta = subgroup_diagram(group, a, b)?;
    let report = is_factorization(&delta);
    if !report.is_factorization {
        return Err(Error::NotAFactorization {
            uncovered: report.uncovered.len(),
        });
    }
    Ok(delta)
}

/// Which side groupoids of a lifted diagram carry the pair groupoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Spread {
    /// `V = pair(n) × A`, `H = unit(n) × B`.
    Vertical,
    /// `V = unit(n) × A`, `H = pair(n) × B`.
    Horizontal,
    /// `V = pair(n) × A`, `H = pair(n) × B`.
    Both,
}

/// Lifts a one-object diagram to `n` objects: `D = pair(n) × G`, with the
/// side groupoids chosen by `spread`. Factorizations lift to
/// factorizations.
pub fn lift_diagram(delta: &Diagram, n: usize, spread: Spread) -> Diagram {
    let pair = pair_groupoid(n);
    let unit = GroupoidTable::unit(n);
    let (vs, hs) = match spread {
        Spread::Vertical => (&pair, &unit),
        Spread::Horizontal => (&unit, &pair),
        Spread::Both => (&pair, &pair),
    };
    let shape_map = |s: &GroupoidTable| {
        if std::ptr::eq(s, &pair) {
            GroupoidMorphism::identity(&pair)
        } else {
            GroupoidMorphism::to_identities(&unit, &pair)
        }
    };
    let order = delta.d.num_arrows();
    Diagram::new(
        product_with_group(&pair, &delta.d),
        product_with_group(vs, &delta.v),
        product_with_group(hs, &delta.h),
        product_morphism(&shape_map(vs), &delta.j, delta.v.num_arrows(), order),
        product_morphism(&shape_map(hs), &delta.i, delta.h.num_arrows(), order),
    )
}

/// Renames arrows by a permutation: arrow `a` becomes `perm[a]`.
pub fn relabel_groupoid(g: &GroupoidTable, perm: &[usize]) -> GroupoidTable {
    let n = g.num_arrows();
    let mut arrows = vec![Arrow::new(0, 0); n];
    let mut inv = vec![ArrowId(0); n];
    for a in g.arrow_ids() {
        arrows[perm[a.0]] = g.arrow(a);
        inv[perm[a.0]] = ArrowId(perm[g.inv(a).0]);
    }
    let ident = g.identities().iter().map(|a| ArrowId(perm[a.0])).collect();
    let comp = g
        .entries()
        .map(|(a, b, c)| (ArrowId(perm[a.0]), ArrowId(perm[b.0]), ArrowId(perm[c.0])));
    GroupoidTable::from_parts(g.base_size(), arrows, comp, ident, inv)
        .expect("relabelling preserves well-formedness")
}

fn random_permutation(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// The same diagram with the arrows of `D`, `V` and `H` renamed at random.
pub fn relabel_diagram(delta: &Diagram, rng: &mut impl Rng) -> Diagram {
    let pd = random_permutation(delta.d.num_arrows(), rng);
    let pv = random_permutation(delta.v.num_arrows(), rng);
    let ph = random_permutation(delta.h.num_arrows(), rng);
    let conj = |m: &GroupoidMorphism, p_src: &[usize]| {
        let mut out = vec![ArrowId(0); m.len()];
        for (a, &b) in m.arrow_map().iter().enumerate() {
            out[p_src[a]] = ArrowId(pd[b.0]);
        }
        GroupoidMorphism::new(out)
    };
    Diagram::new(
        relabel_groupoid(&delta.d, &pd),
        relabel_groupoid(&delta.v, &pv),
        relabel_groupoid(&delta.h, &ph),
        conj(&delta.j, &pv),
        conj(&delta.i, &ph),
    )
}

/// A random subgroup-pair diagram over a group of order at most
/// `max_order`, possibly lifted to a few objects, with shuffled arrow ids.
pub fn random_diagram(max_order: usize, rng: &mut impl Rng) -> Diagram {
    let groups = crate::groups::catalogue(max_order);
    let group = groups.choose(rng).expect("catalogue is never empty");
    let subs = group.subgroups();
    let a = subs.choose(rng).expect("trivial subgroup");
    let b = subs.choose(rng).expect("trivial subgroup");
    let mut delta = subgroup_diagram(group, a, b).expect("subgroups");
    let n = rng.gen_range(1..=3);
    if n > 1 {
        let spread = [Spread::Vertical, Spread::Horizontal, Spread::Both]
            .choose(rng)
            .copied()
            .expect("non-empty");
        delta = lift_diagram(&delta, n, spread);
    }
    relabel_diagram(&delta, rng)
}

/// [`random_diagram`] driven by a ChaCha8 stream seeded with `seed`.
pub fn random_diagram_seeded(max_order: usize, seed: u64) -> Diagram {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    random_diagram(max_order, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::box_double;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pair_and_group_generators() {
        assert_eq!(pair_groupoid(3).num_arrows(), 9);
        let z2 = gen_group(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!((z2.num_arrows(), z2.base_size()), (2, 1));
        assert!(gen_group(vec![vec![0, 1], vec![0, 1]]).is_err());
    }

    #[test]
    fn subgroup_factorizations() {
        let s3 = Group::symmetric(3);
        let a = s3.generated(&[s3.element_of_perm(&[1, 0, 2])]);
        let b = s3.generated(&[s3.element_of_perm(&[1, 2, 0])]);
        let delta = exact_factorization(&s3, &a, &b).unwrap();
        assert!(delta.validate().is_valid());
        let z6 = Group::cyclic(6);
        assert!(exact_factorization(&z6, &[0, 3], &[0, 2, 4])
            .unwrap()
            .validate()
            .is_valid());
        let z4 = Group::cyclic(4);
        assert_eq!(
            exact_factorization(&z4, &[0, 2], &[0]).unwrap_err(),
            Error::NotAFactorization { uncovered: 2 }
        );
        assert_eq!(
            exact_factorization(&z4, &[0, 1], &[0]).unwrap_err(),
            Error::NotASubgroup("A")
        );
    }

    #[test]
    fn lifts_are_valid_factorizations() {
        let s3 = Group::symmetric(3);
        let a = s3.generated(&[s3.element_of_perm(&[1, 0, 2])]);
        let b = s3.generated(&[s3.element_of_perm(&[1, 2, 0])]);
        let delta = exact_factorization(&s3, &a, &b).unwrap();
        for spread in [Spread::Vertical, Spread::Horizontal, Spread::Both] {
            let lifted = lift_diagram(&delta, 3, spread);
            assert!(lifted.validate().is_valid(), "{spread:?}");
            assert_eq!(lifted.d.num_arrows(), 54);
            let report = is_factorization(&lifted);
            assert!(report.is_factorization);
            assert_eq!(report.is_exact(), spread != Spread::Both);
            assert!(box_double(&lifted).unwrap().filling_condition());
        }
    }

    #[test]
    fn relabelling_preserves_everything_checked() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let delta = random_diagram(8, &mut rng);
            assert!(delta.validate().is_valid());
            let again = relabel_diagram(&delta, &mut rng);
            assert!(again.validate().is_valid());
            assert_eq!(
                is_factorization(&delta).is_factorization,
                is_factorization(&again).is_factorization
            );
            assert_eq!(
                box_double(&delta).unwrap().num_boxes(),
                box_double(&again).unwrap().num_boxes()
            );
        }
    }

    #[test]
    fn random_diagrams_are_reproducible() {
        let a: Vec<Diagram> = {
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            (0..5).map(|_| random_diagram(12, &mut rng)).collect()
        };
        let b: Vec<Diagram> = {
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            (0..5).map(|_| random_diagram(12, &mut rng)).collect()
        };
        assert_eq!(a, b);
    }
}
