//! Finite groups as Cayley tables, their subgroups, and a catalogue of
//! every group of order at most 16 up to isomorphism.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::gpd::{Arrow, ArrowId, GroupoidTable};
use crate::morphism::GroupoidMorphism;

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    name: String,
    mul: Vec<Vec<usize>>,
    identity: usize,
    inv: Vec<usize>,
    perms: Option<Vec<Vec<usize>>>,
}

impl Group {
    /// Validates a Cayley table: closure, a two-sided identity, inverses
    /// and associativity.
    pub fn from_cayley(name: impl Into<String>, mul: Vec<Vec<usize>>) -> Result<Group> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::InvalidCayley("empty table".into()));
        }
        if let Some(row) = mul.iter().position(|r| r.len() != n) {
            return Err(Error::InvalidCayley(format!(
                "row {row} has the wrong length"
            )));
        }
        if mul.iter().flatten().any(|&c| c >= n) {
            return Err(Error::InvalidCayley("entry out of range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e][x] == x && mul[x][e] == x))
            .ok_or_else(|| Error::InvalidCayley("no identity element".into()))?;
        let mut inv = vec![0; n];
        for (x, slot) in inv.iter_mut().enumerate() {
            *slot = (0..n)
                .find(|&y| mul[x][y] == identity && mul[y][x] == identity)
                .ok_or_else(|| Error::InvalidCayley(format!("element {x} has no inverse")))?;
        }
        for x in 0..n {
            for y in 0..n {
                let xy = mul[x][y];
                for z in 0..n {
                    if mul[xy][z] != mul[x][mul[y][z]] {
                        return Err(Error::InvalidCayley(format!(
                            "associativity fails at ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        Ok(Group {
            name: name.into(),
            mul,
            identity,
            inv,
            perms: None,
        })
    }

    pub fn cyclic(n: usize) -> Group {
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Group::from_cayley(format!("Z{n}"), mul).expect("cyclic group")
    }

    /// `<a, b | a^m = 1, b^n = a^s, b a b^-1 = a^r>`, elements `a^i b^j`
    /// stored at index `i * n + j`.
    pub fn metacyclic(
        name: impl Into<String>,
        m: usize,
        n: usize,
        r: usize,
        s: usize,
    ) -> Result<Group> {
        let mut rpow = vec![1 % m; n];
        for j in 1..n {
            rpow[j] = rpow[j - 1] * r % m;
        }
        let mul = (0..m * n)
            .map(|x| {
                let (i, j) = (x / n, x % n);
                (0..m * n)
                    .map(|y| {
                        let (k, l) = (y / n, y % n);
                        let wrap = if j + l >= n { s } else { 0 };
                        let a = (i + k * rpow[j] + wrap) % m;
                        a * n + (j + l) % n
                    })
                    .collect()
            })
            .collect();
        Group::from_cayley(name, mul)
    }

    /// Elements `(x, y)` stored at `x * |b| + y`.
    pub fn direct_product(a: &Group, b: &Group) -> Group {
        let nb = b.order();
        let n = a.order() * nb;
        let mul = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        Group::from_cayley(format!("{}x{}", a.name, b.name), mul).expect("direct product")
    }

    /// `N ⋊ Z2` for an involutive automorphism `twist` of `N`; elements
    /// `(x, k)` stored at `2x + k`.
    pub fn semidirect_z2(
        name: impl Into<String>,
        normal: &Group,
        twist: impl Fn(usize) -> usize,
    ) -> Result<Group> {
        let n = normal.order();
        let phi: Vec<usize> = (0..n).map(&twist).collect();
        let mul = (0..2 * n)
            .map(|p| {
                let (x, k) = (p / 2, p % 2);
                (0..2 * n)
                    .map(|q| {
                        let (y, l) = (q / 2, q % 2);
                        let y = if k == 1 { phi[y] } else { y };
                        normal.mul(x, y) * 2 + (k + l) % 2
                    })
                    .collect()
            })
            .collect();
        Group::from_cayley(name, mul)
    }

    /// The permutation group generated by `gens` on `degree` points, with
    /// product "first `p`, then `q`". Elements are sorted lexicographically
    /// as image vectors, so the identity is element 0.
    pub fn from_permutations(name: impl Into<String>, degree: usize, gens: &[Vec<usize>]) -> Group {
        let compose =
            |p: &[usize], q: &[usize]| -> Vec<usize> { p.iter().map(|&x| q[x]).collect() };
        let id: Vec<usize> = (0..degree).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = VecDeque::from([id.clone()]);
        seen.insert(id);
        while let Some(p) = queue.pop_front() {
            for g in gens {
                let q = compose(&p, g);
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        let perms: Vec<Vec<usize>> = seen.into_iter().collect();
        let index: HashMap<&Vec<usize>, usize> =
            perms.iter().enumerate().map(|(k, p)| (p, k)).collect();
        let mul = perms
            .iter()
            .map(|p| perms.iter().map(|q| index[&compose(p, q)]).collect())
            .collect();
        let mut group = Group::from_cayley(name, mul).expect("permutation group");
        group.perms = Some(perms);
        group
    }

    /// The full symmetric group on `k` points.
    pub fn symmetric(k: usize) -> Group {
        let mut gens = Vec::new();
        if k >= 2 {
            let mut swap: Vec<usize> = (0..k).collect();
            swap.swap(0, 1);
            gens.push(swap);
            gens.push((0..k).map(|x| (x + 1) % k).collect());
        }
        Group::from_permutations(format!("S{k}"), k, &gens)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Index of a permutation, for groups built from permutations.
    pub fn element_of_perm(&self, perm: &[usize]) -> usize {
        self.perms
            .as_ref()
            .and_then(|ps| ps.iter().position(|p| p == perm))
            .expect("permutation belongs to the group")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// The subgroup generated by `gens`, as a sorted element list.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&x| seen[x]).collect()
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        for &x in elems {
            if x >= self.order() {
                return false;
            }
            member[x] = true;
        }
        member[self.identity]
            && elems.iter().all(|&x| member[self.inv(x)])
            && elems
                .iter()
                .all(|&x| elems.iter().all(|&y| member[self.mul(x, y)]))
    }

    /// Every subgroup, as sorted element lists ordered by size and then
    /// lexicographically.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> =
            (0..self.order()).map(|g| self.generated(&[g])).collect();
        loop {
            let current: Vec<Vec<usize>> = found.iter().cloned().collect();
            let mut grew = false;
            for (k, s) in current.iter().enumerate() {
                for t in &current[k + 1..] {
                    let union: Vec<usize> = s.iter().chain(t.iter()).copied().collect();
                    if found.insert(self.generated(&union)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut all: Vec<Vec<usize>> = found.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all
    }

    /// The product set `AB`, sorted.
    pub fn product_set(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        let set: BTreeSet<usize> = a
            .iter()
            .flat_map(|&x| b.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.mul(x, y))
            .collect();
        set.into_iter().collect()
    }

    /// The group as a one-object groupoid; arrow ids are element indices.
    pub fn to_groupoid(&self) -> GroupoidTable {
        let n = self.order();
        GroupoidTable::from_fn(
            1,
            vec![Arrow::new(0, 0); n],
            vec![ArrowId(self.identity)],
            |a, b| ArrowId(self.mul(a.0, b.0)),
        )
        .expect("group tables are groupoids")
    }

    /// A subgroup as a one-object groupoid (arrow `k` is `elems[k]`) with
    /// its inclusion into [`Group::to_groupoid`].
    ///
    /// Panics if `elems` is not a subgroup.
    pub fn subgroup_groupoid(&self, elems: &[usize]) -> (GroupoidTable, GroupoidMorphism) {
        assert!(self.is_subgroup(elems), "not a subgroup: {elems:?}");
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let table = GroupoidTable::from_fn(
            1,
            vec![Arrow::new(0, 0); elems.len()],
            vec![ArrowId(pos[&self.identity])],
            |a, b| ArrowId(pos[&self.mul(elems[a.0], elems[b.0])]),
        )
        .expect("subgroup tables are groupoids");
        let incl = GroupoidMorphism::new(elems.iter().map(|&x| ArrowId(x)).collect());
        (table, incl)
    }

    /// Isomorphism invariants used to tell catalogue entries apart.
    pub fn signature(&self) -> GroupSignature {
        let n = self.order();
        let mut order_counts = vec![0; n + 1];
        for a in 0..n {
            order_counts[self.element_order(a)] += 1;
        }
        let center = (0..n)
            .filter(|&a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
            .count();
        let commutators: Vec<usize> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b)))
            .collect();
        let derived = self.generated(&commutators).len();
        let squares: Vec<usize> = (0..n).map(|a| self.mul(a, a)).collect();
        let square_subgroup = self.generated(&squares).len();
        GroupSignature {
            order: n,
            order_counts,
            center,
            derived,
            square_subgroup,
            subgroups: self.subgroups().len(),
        }
    }
}

/// Cheap isomorphism invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSignature {
    pub order: usize,
    pub order_counts: Vec<usize>,
    pub center: usize,
    pub derived: usize,
    pub square_subgroup: usize,
    pub subgroups: usize,
}

fn meta(name: &str, m: usize, n: usize, r: usize, s: usize) -> Group {
    Group::metacyclic(name, m, n, r, s).expect("catalogue parameters are consistent")
}

fn named(mut g: Group, name: &str) -> Group {
    g.name = name.to_string();
    g
}

/// Every group of order at most `max_order` (and at most 16), one per
/// isomorphism class, in order of increasing order.
pub fn catalogue(max_order: usize) -> Vec<Group> {
    let z2 = Group::cyclic(2);
    let z2z2 = named(meta("Z2xZ2", 2, 2, 1, 0), "Z2xZ2");
    let z4z2 = meta("Z4xZ2", 4, 2, 1, 0);
    let z2_3 = named(Group::direct_product(&z2z2, &z2), "Z2^3");
    let d8 = meta("D8", 4, 2, 3, 0);
    let q8 = meta("Q8", 4, 2, 3, 2);
    let mut groups = vec![Group::cyclic(1)];
    for n in 2..=16usize {
        match n {
            4 => groups.extend([Group::cyclic(4), z2z2.clone()]),
            6 => groups.extend([Group::cyclic(6), Group::symmetric(3)]),
            8 => groups.extend([
                Group::cyclic(8),
                z4z2.clone(),
                z2_3.clone(),
                d8.clone(),
                q8.clone(),
            ]),
            9 => groups.extend([Group::cyclic(9), meta("Z3xZ3", 3, 3, 1, 0)]),
            10 => groups.extend([Group::cyclic(10), meta("D10", 5, 2, 4, 0)]),
            12 => groups.extend([
                Group::cyclic(12),
                meta("Z6xZ2", 6, 2, 1, 0),
                Group::from_permutations("A4", 4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]),
                meta("D12", 6, 2, 5, 0),
                meta("Dic12", 3, 4, 2, 0),
            ]),
            14 => groups.extend([Group::cyclic(14), meta("D14", 7, 2, 6, 0)]),
            16 => groups.extend([
                Group::cyclic(16),
                meta("Z4xZ4", 4, 4, 1, 0),
                // a -> ab, b -> b on Z4xZ2 = <a> x <b>
                Group::semidirect_z2("(Z4xZ2):Z2", &z4z2, |x| {
                    let (i, j) = (x / 2, x % 2);
                    i * 2 + (i + j) % 2
                })
                .expect("automorphism"),
                meta("Z4:Z4", 4, 4, 3, 0),
                meta("Z8xZ2", 8, 2, 1, 0),
                meta("M16", 8, 2, 5, 0),
                meta("D16", 8, 2, 7, 0),
                meta("SD16", 8, 2, 3, 0),
                meta("Q16", 8, 2, 7, 4),
                named(Group::direct_product(&z4z2, &z2), "Z4xZ2xZ2"),
                named(Group::direct_product(&d8, &z2), "D8xZ2"),
                named(Group::direct_product(&q8, &z2), "Q8xZ2"),
                // a -> a, b -> a^2 b: the Pauli group
                Group::semidirect_z2("Pauli", &z4z2, |x| {
                    let (i, j) = (x / 2, x % 2);
                    ((i + 2 * j) % 4) * 2 + j
                })
                .expect("automorphism"),
                named(Group::direct_product(&z2_3, &z2), "Z2^4"),
            ]),
            _ => groups.push(Group::cyclic(n)),
        }
    }
    groups.retain(|g| g.order() <= max_order);
    groups
}

/// Looks a group up in the catalogue by name.
pub fn by_name(name: &str) -> Option<Group> {
    catalogue(16).into_iter().find(|g| g.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Number of isomorphism classes of groups of order n, n = 1..=16.
    const GROUP_COUNTS: [usize; 16] = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14];

    #[test]
    fn catalogue_has_one_group_per_class() {
        let groups = catalogue(16);
        assert_eq!(groups.len(), GROUP_COUNTS.iter().sum::<usize>());
        for (k, &count) in GROUP_COUNTS.iter().enumerate() {
            let order = k + 1;
            let of_order: Vec<&Group> = groups.iter().filter(|g| g.order() == order).collect();
            assert_eq!(of_order.len(), count, "order {order}");
            let sigs: BTreeSet<GroupSignature> = of_order.iter().map(|g| g.signature()).collect();
            assert_eq!(
                sigs.len(),
                count,
                "order {order} has indistinguishable entries"
            );
        }
        let names: BTreeSet<&str> = groups.iter().map(|g| g.name()).collect();
        assert_eq!(names.len(), groups.len());
    }

    #[test]
    fn known_subgroup_counts() {
        assert_eq!(Group::symmetric(3).subgroups().len(), 6);
        assert_eq!(by_name("Z2^4").unwrap().subgroups().len(), 67);
        assert_eq!(by_name("A4").unwrap().subgroups().len(), 10);
        assert_eq!(by_name("Q8").unwrap().subgroups().len(), 6);
        assert_eq!(by_name("D8").unwrap().subgroups().len(), 10);
    }

    #[test]
    fn invalid_cayley_tables_are_rejected() {
        assert!(Group::from_cayley("bad", vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(Group::from_cayley("bad", vec![vec![0, 1], vec![1]]).is_err());
        assert!(Group::from_cayley("bad", vec![]).is_err());
        // a Latin square that is not associative
        let nonassoc = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(Group::from_cayley("loop", nonassoc).is_err());
    }

    #[test]
    fn s3_generators() {
        let s3 = Group::symmetric(3);
        assert_eq!(s3.identity(), 0);
        let a = s3.generated(&[s3.element_of_perm(&[1, 0, 2])]);
        let b = s3.generated(&[s3.element_of_perm(&[1, 2, 0])]);
        assert_eq!((a.len(), b.len()), (2, 3));
        assert_eq!(s3.product_set(&a, &b).len(), 6);
    }
}
