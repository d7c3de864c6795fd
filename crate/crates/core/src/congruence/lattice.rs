use std::collections::{BTreeSet, VecDeque};

use itertools::Itertools;

use super::{cg_pair, Partition};
use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};

/// Default cap on the number of elements of a computed congruence lattice.
pub const DEFAULT_LATTICE_CAP: usize = 100_000;

/// A finite lattice of congruences of one algebra, sorted by canonical
/// encoding. Meets are intersections; joins are taken inside the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceSet {
    ground: usize,
    partitions: Vec<Partition>,
    relative_to: Option<String>,
}

impl CongruenceSet {
    pub fn new(
        ground: usize,
        partitions: impl IntoIterator<Item = Partition>,
        relative_to: Option<String>,
    ) -> Self {
        let set: BTreeSet<Partition> = partitions.into_iter().collect();
        CongruenceSet {
            ground,
            partitions: set.into_iter().collect(),
            relative_to,
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn relative_to(&self) -> Option<&str> {
        self.relative_to.as_deref()
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn iter(&self) -> impl Iterator<Item = &Partition> {
        self.partitions.iter()
    }

    pub fn contains(&self, p: &Partition) -> bool {
        self.partitions.binary_search(p).is_ok()
    }

    pub fn contains_identity(&self) -> bool {
        self.contains(&Partition::identity(self.ground))
    }

    /// Least element (the meet of everything).
    pub fn bottom(&self) -> Option<Partition> {
        let mut it = self.partitions.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, p| acc.meet(p).expect("same ground")))
    }

    /// Non-bottom elements, i.e. for a lattice containing the identity, the
    /// nonidentity congruences.
    pub fn nonidentity(&self) -> impl Iterator<Item = &Partition> {
        let n = self.ground;
        self.partitions.iter().filter(move |p| p.num_blocks() != n)
    }

    /// Least member above both arguments.
    pub fn lub(&self, a: &Partition, b: &Partition) -> Option<Partition> {
        let above: Vec<&Partition> =
            self.partitions.iter().filter(|p| a.leq(p) && b.leq(p)).collect();
        let mut it = above.into_iter();
        let first = it.next()?.clone();
        let m = it.fold(first, |acc, p| acc.meet(p).expect("same ground"));
        self.contains(&m).then_some(m)
    }

    pub fn meet_all<'a>(&self, items: impl IntoIterator<Item = &'a Partition>) -> Partition {
        items
            .into_iter()
            .fold(Partition::total(self.ground), |acc, p| acc.meet(p).expect("same ground"))
    }

    /// Members strictly above `p` with nothing of the set in between.
    pub fn upper_covers(&self, p: &Partition) -> Vec<Partition> {
        let above: Vec<&Partition> =
            self.partitions.iter().filter(|q| *q != p && p.leq(q)).collect();
        above
            .iter()
            .filter(|q| !above.iter().any(|r| r != *q && r.leq(q)))
            .map(|q| (*q).clone())
            .collect()
    }

    /// Whether the set is closed under pairwise intersection.
    pub fn is_meet_closed(&self) -> bool {
        self.partitions.iter().tuple_combinations().all(|(a, b)| {
            self.contains(&a.meet(b).expect("same ground"))
        })
    }
}

/// `Con(A)`: principal congruences closed under joins, plus the identity.
pub fn con_all(a: &FiniteAlgebra) -> Result<CongruenceSet> {
    con_all_with_cap(a, DEFAULT_LATTICE_CAP)
}

pub fn con_all_with_cap(a: &FiniteAlgebra, cap: usize) -> Result<CongruenceSet> {
    let n = a.size();
    let principals: BTreeSet<Partition> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .map(|(x, y)| cg_pair(a, x, y))
        .collect();
    let mut seen: BTreeSet<Partition> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(Partition::identity(n));
    queue.push_back(Partition::identity(n));
    while let Some(x) = queue.pop_front() {
        for p in &principals {
            let y = x.join(p)?;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::SizeOverflow {
                        size: seen.len() as u128,
                        cap: cap as u128,
                    });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(CongruenceSet::new(n, seen, None))
}

/// Meet irreducible and completely meet irreducible members: those with
/// exactly one upper cover. The two coincide in a finite lattice and the top
/// is never included.
pub fn irr(c: &CongruenceSet) -> (Vec<Partition>, Vec<Partition>) {
    let mi: Vec<Partition> = c
        .iter()
        .filter(|p| c.upper_covers(p).len() == 1)
        .cloned()
        .collect();
    (mi.clone(), mi)
}

fn meet_except(c: &CongruenceSet, items: &[&Partition], skip: usize) -> Partition {
    c.meet_all(items.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, p)| *p))
}

/// Whether every representation `θ = θ1 ∩ .. ∩ θn` over `c` has a redundant
/// term. Exhaustive over multisets of members above `θ`.
pub fn n_irreducible(c: &CongruenceSet, theta: &Partition, n: usize) -> bool {
    if n == 0 || !c.contains(theta) {
        return false;
    }
    let above: Vec<&Partition> = c.iter().filter(|p| theta.leq(p)).collect();
    for combo in (0..above.len()).combinations_with_replacement(n) {
        let items: Vec<&Partition> = combo.iter().map(|&i| above[i]).collect();
        if c.meet_all(items.iter().copied()) != *theta {
            continue;
        }
        if !(0..n).any(|skip| meet_except(c, &items, skip) == *theta) {
            return false;
        }
    }
    true
}

/// For an `n`-irreducible `θ`, the lexicographically least shortest list of
/// at most `n - 1` meet irreducibles whose meet is `θ`. `None` when `θ` is
/// not `n`-irreducible.
pub fn decompose_irreducible(
    c: &CongruenceSet,
    theta: &Partition,
    n: usize,
) -> Option<Vec<Partition>> {
    if !n_irreducible(c, theta, n) {
        return None;
    }
    let (mi, _) = irr(c);
    let candidates: Vec<&Partition> = mi.iter().filter(|p| theta.leq(p)).collect();
    for k in 0..n {
        for combo in candidates.iter().combinations(k) {
            if c.meet_all(combo.iter().copied().copied()) == *theta {
                return Some(combo.into_iter().map(|p| (*p).clone()).collect());
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeProps {
    pub distributive: bool,
    pub permuting: bool,
}

/// Distributivity over all triples and permutability over all pairs, with
/// joins taken inside `c`.
pub fn lattice_props(c: &CongruenceSet) -> LatticeProps {
    let items = c.partitions();
    let join = |a: &Partition, b: &Partition| c.lub(a, b).expect("set is a lattice");
    let meet = |a: &Partition, b: &Partition| a.meet(b).expect("same ground");
    let mut distributive = true;
    'outer: for x in items {
        for y in items {
            for z in items {
                if meet(x, &join(y, z)) != join(&meet(x, y), &meet(x, z)) {
                    distributive = false;
                    break 'outer;
                }
            }
        }
    }
    let permuting = items.iter().tuple_combinations().all(|(a, b)| {
        let j = join(a, b);
        let comp = a.compose(b);
        (0..c.ground_size())
            .all(|x| (0..c.ground_size()).all(|y| comp[x][y] == j.related(x, y)))
    });
    LatticeProps {
        distributive,
        permuting,
    }
}
