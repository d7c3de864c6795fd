//! Partitions, congruence generation and congruence lattices.

mod lattice;
mod partition;

pub use lattice::{
    con_all, con_all_with_cap, decompose_irreducible, irr, lattice_props, n_irreducible,
    CongruenceSet, LatticeProps, DEFAULT_LATTICE_CAP,
};
pub use partition::Partition;

use crate::algebra::{for_each_tuple, FiniteAlgebra, Subset};

/// Disjoint sets with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if two distinct classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn into_partition(mut self) -> Partition {
        let roots: Vec<usize> = (0..self.parent.len()).map(|i| self.find(i)).collect();
        Partition::from_labels(&roots)
    }
}

/// The least congruence of `a` relating `x` and `y`.
pub fn cg_pair(a: &FiniteAlgebra, x: usize, y: usize) -> Partition {
    cg_set(a, &[(x, y)])
}

/// The least congruence of `a` containing every pair in `pairs`.
///
/// Union-find closure: every merge `u ~ v` is queued, and for each queued
/// pair, each operation, each argument position and each choice of the
/// remaining arguments, the two results are merged in turn.
pub fn cg_set(a: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Partition {
    let n = a.size();
    let mut uf = UnionFind::new(n);
    let mut queue: Vec<(usize, usize)> = Vec::new();
    for &(x, y) in pairs {
        if uf.union(x, y) {
            queue.push((x, y));
        }
    }
    let sig = a.signature();
    let mut args_x = Vec::new();
    let mut args_y = Vec::new();
    while let Some((x, y)) = queue.pop() {
        for op in 0..sig.len() {
            let arity = sig.arity(op);
            for pos in 0..arity {
                for_each_tuple(n, arity - 1, |rest| {
                    args_x.clear();
                    args_x.extend_from_slice(&rest[..pos]);
                    args_x.push(x);
                    args_x.extend_from_slice(&rest[pos..]);
                    args_y.clone_from(&args_x);
                    args_y[pos] = y;
                    let u = a.apply(op, &args_x);
                    let v = a.apply(op, &args_y);
                    if uf.union(u, v) {
                        queue.push((u, v));
                    }
                });
            }
        }
    }
    uf.into_partition()
}

/// Whether `theta` is compatible with every operation of `a`.
pub fn is_congruence(a: &FiniteAlgebra, theta: &Partition) -> bool {
    theta.len() == a.size() && crate::algebra::quotient(a, theta).is_ok()
}

/// `θ ∩ (S × S)`, re-indexed along the sorted carrier of `s`.
pub fn restrict(theta: &Partition, s: &Subset) -> Partition {
    let labels: Vec<usize> = s.iter().map(|e| theta.block(e)).collect();
    Partition::from_labels(&labels)
}

/// Extends a partition of `s` (in its re-indexing) to pairs of the ambient
/// universe, for seeding `cg_set`.
pub fn lift_pairs(theta_on_s: &Partition, s: &Subset) -> Vec<(usize, usize)> {
    theta_on_s
        .pairs()
        .into_iter()
        .map(|(i, j)| (s.elems()[i], s.elems()[j]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::product;
    use crate::catalog;

    #[test]
    fn cg_examples() {
        let s3 = catalog::chain_semilattice(3);
        assert_eq!(cg_pair(&s3, 1, 1), Partition::identity(3));
        assert_eq!(cg_pair(&s3, 0, 1), Partition::parse("0 1|2").unwrap());
        assert_eq!(cg_set(&s3, &[]), Partition::identity(3));
        assert_eq!(cg_set(&s3, &[(0, 1), (1, 2)]), Partition::total(3));

        let l2 = catalog::chain_lattice(2);
        let sq = product(&[l2.clone(), l2]).unwrap();
        // (0,0) ~ (0,1) generates the kernel of the first projection
        assert_eq!(cg_pair(&sq, 0, 1), Partition::parse("0 1|2 3").unwrap());
    }

    #[test]
    fn restrict_examples() {
        let s = Subset::new(4, [0, 2, 3]).unwrap();
        assert_eq!(restrict(&Partition::identity(4), &s), Partition::identity(3));
        assert_eq!(restrict(&Partition::total(4), &s), Partition::total(3));
        let kernel_p1 = Partition::parse("0 1|2 3").unwrap();
        assert_eq!(restrict(&kernel_p1, &s), Partition::parse("0|1 2").unwrap());
    }
}
