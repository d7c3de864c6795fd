//! Brute-force oracles. None of these call into the search code they are
//! compared with; they only read operation tables.

#![allow(dead_code)]

use std::collections::BTreeSet;

use ualg::algebra::{for_each_tuple, FiniteAlgebra};
use ualg::catalog;
use ualg::Partition;

/// Every algebra of the catalog with at most `max` elements: chains,
/// semilattices, Boolean and Heyting algebras, implication reducts and a few
/// products.
pub fn small_catalog(max: usize) -> Vec<FiniteAlgebra> {
    let keys = [
        "chain_lattice(1)",
        "chain_lattice(2)",
        "chain_lattice(3)",
        "chain_lattice(4)",
        "chain_lattice(5)",
        "chain_lattice(6)",
        "chain_semilattice(2)",
        "chain_semilattice(3)",
        "chain_semilattice(4)",
        "chain_semilattice(5)",
        "chain_semilattice(6)",
        "flat_semilattice(3)",
        "flat_semilattice(4)",
        "flat_semilattice(5)",
        "flat_semilattice(6)",
        "boolean(1)",
        "boolean(2)",
        "implication_of_boolean(1)",
        "implication_of_boolean(2)",
        "heyting_chain(2)",
        "heyting_chain(3)",
        "heyting_chain(4)",
        "heyting_chain(5)",
        "heyting_chain(6)",
        "product(L2,L2)",
        "product(L2,chain_lattice(3))",
        "product(S2,S2)",
        "product(S2,S3)",
        "product(heyting_chain(2),heyting_chain(3))",
        "power(chain_semilattice(2),2)",
    ];
    keys.iter()
        .map(|k| catalog::build(k).unwrap().algebra)
        .filter(|a| a.size() <= max)
        .collect()
}

/// Restricted growth strings of length `n`, i.e. all partitions of `n`.
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, n: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let top = if prefix.is_empty() { 0 } else { max + 1 };
        for v in 0..=top {
            prefix.push(v);
            rec(prefix, n, max.max(v), out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, 0, &mut out);
    out
}

/// Compatibility straight from the definition: componentwise related
/// arguments give related results.
pub fn compatible(a: &FiniteAlgebra, labels: &[usize]) -> bool {
    let n = a.size();
    for (op, &(_, arity)) in a.signature().symbols().iter().enumerate() {
        let mut ok = true;
        for_each_tuple(n, arity, |xs| {
            if !ok {
                return;
            }
            let xs = xs.to_vec();
            for_each_tuple(n, arity, |ys| {
                if ok && xs.iter().zip(ys).all(|(&x, &y)| labels[x] == labels[y]) {
                    ok = labels[a.apply(op, &xs)] == labels[a.apply(op, ys)];
                }
            });
        });
        if !ok {
            return false;
        }
    }
    true
}

pub fn brute_con(a: &FiniteAlgebra) -> Vec<Partition> {
    let mut out: Vec<Partition> = all_partitions(a.size())
        .into_iter()
        .filter(|l| compatible(a, l))
        .map(|l| Partition::from_labels(&l))
        .collect();
    out.sort();
    out
}

/// The least congruence relating `x` and `y`, by scanning all of them.
pub fn brute_cg(a: &FiniteAlgebra, x: usize, y: usize) -> Partition {
    let cands: Vec<Partition> = brute_con(a).into_iter().filter(|p| p.related(x, y)).collect();
    cands
        .iter()
        .find(|p| cands.iter().all(|q| p.leq(q)))
        .expect("the total relation is a congruence")
        .clone()
}

pub fn brute_is_hom(f: &[usize], b: &FiniteAlgebra, c: &FiniteAlgebra) -> bool {
    let mut ok = true;
    for (op, &(_, arity)) in b.signature().symbols().iter().enumerate() {
        for_each_tuple(b.size(), arity, |xs| {
            if ok {
                let img: Vec<usize> = xs.iter().map(|&x| f[x]).collect();
                ok = f[b.apply(op, xs)] == c.apply(op, &img);
            }
        });
    }
    ok
}

pub fn brute_homs(b: &FiniteAlgebra, c: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_tuple(c.size(), b.size(), |f| {
        if brute_is_hom(f, b, c) {
            out.push(f.to_vec());
        }
    });
    out
}

/// Congruences `θ` with `A/θ ∈ ISP(M)`: those equal to the intersection of
/// the kernels of all homomorphisms into `M` above them.
pub fn brute_rel_con_q(a: &FiniteAlgebra, m: &[FiniteAlgebra]) -> Vec<Partition> {
    let kernels: Vec<Partition> = m
        .iter()
        .flat_map(|c| brute_homs(a, c))
        .map(|f| Partition::from_labels(&f))
        .collect();
    brute_con(a)
        .into_iter()
        .filter(|t| {
            let mut meet = Partition::total(a.size());
            for k in kernels.iter().filter(|k| t.leq(k)) {
                meet = meet.meet(k).unwrap();
            }
            meet == *t
        })
        .collect()
}

/// Fixpoint closure of `gens` under coordinatewise operations on tuples
/// over `factors`.
pub fn naive_closure(factors: &[&FiniteAlgebra], gens: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let sig = factors.first().map(|f| f.signature().clone());
    let mut set: BTreeSet<Vec<usize>> = gens.iter().cloned().collect();
    let Some(sig) = sig else {
        return set;
    };
    loop {
        let elems: Vec<Vec<usize>> = set.iter().cloned().collect();
        let mut grew = false;
        for (op, &(_, arity)) in sig.symbols().iter().enumerate() {
            for_each_tuple(elems.len(), arity, |idx| {
                let r: Vec<usize> = (0..factors.len())
                    .map(|c| {
                        let args: Vec<usize> = idx.iter().map(|&i| elems[i][c]).collect();
                        factors[c].apply(op, &args)
                    })
                    .collect();
                grew |= set.insert(r);
            });
        }
        if !grew {
            return set;
        }
    }
}

pub fn naive_sg(a: &FiniteAlgebra, gens: &[usize]) -> BTreeSet<usize> {
    let g: Vec<Vec<usize>> = gens.iter().map(|&x| vec![x]).collect();
    naive_closure(&[a], &g).into_iter().map(|t| t[0]).collect()
}

type Coordinate = (usize, Vec<usize>);

/// All `vars`-ary term operations of `M`, each as its table on every member
/// of `M` concatenated. Also returns the assignments per coordinate.
pub fn term_operations(m: &[FiniteAlgebra], vars: usize) -> (Vec<Vec<usize>>, Vec<Coordinate>) {
    let mut coords = Vec::new();
    for (i, c) in m.iter().enumerate() {
        for_each_tuple(c.size(), vars, |t| coords.push((i, t.to_vec())));
    }
    let factors: Vec<&FiniteAlgebra> = coords.iter().map(|(i, _)| &m[*i]).collect();
    let gens: Vec<Vec<usize>> = (0..vars)
        .map(|v| coords.iter().map(|(_, t)| t[v]).collect())
        .collect();
    (naive_closure(&factors, &gens).into_iter().collect(), coords)
}

/// Whether some ternary term operation satisfies `pred(op, a, b, c)` on all
/// triples of every member, with `op` evaluated through its table.
pub fn some_ternary_operation(m: &[FiniteAlgebra], pred: impl Fn(&dyn Fn(usize, usize, usize) -> usize, usize, usize, usize) -> bool) -> bool {
    let (ops, coords) = term_operations(m, 3);
    ops.iter().any(|t| {
        let mut ok = true;
        let mut start = 0;
        for (i, c) in m.iter().enumerate() {
            let n = c.size();
            let f = |a: usize, b: usize, x: usize| t[start + (a * n + b) * n + x];
            for_each_tuple(n, 3, |abc| {
                ok &= pred(&f, abc[0], abc[1], abc[2]);
            });
            start += coords.iter().filter(|(j, _)| *j == i).count();
        }
        ok
    })
}

/// Is every subuniverse of `b` listed by brute force over subsets.
pub fn brute_subuniverses(b: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = b.size();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if naive_sg(b, &s).len() == s.len() {
            out.push(s);
        }
    }
    out
}

/// Quasivariety contexts used by the property checks.
pub fn contexts() -> Vec<ualg::classctx::ClassContext> {
    [
        catalog::chain_lattice(2),
        catalog::chain_semilattice(2),
        catalog::boolean(1),
        catalog::heyting_chain(3),
        catalog::implication_of_boolean(1),
        catalog::flat_semilattice(3),
    ]
    .into_iter()
    .map(|m| ualg::classctx::ClassContext::quasivariety(vec![m]).unwrap())
    .collect()
}

/// Members of `k` with at most `max` elements among small catalog
/// algebras and their products.
pub fn members(k: &ualg::classctx::ClassContext, max: usize) -> Vec<FiniteAlgebra> {
    small_catalog(max)
        .into_iter()
        .filter(|b| b.signature() == k.signature() && !b.is_trivial())
        .filter(|b| ualg::classctx::member_isp(b, k).unwrap())
        .collect()
}

/// Every full pair `A ≤ B` with `B` from [`members`].
pub fn full_pairs(k: &ualg::classctx::ClassContext, max: usize) -> Vec<(FiniteAlgebra, ualg::Subset)> {
    let mut out = Vec::new();
    for b in members(k, max) {
        for a in ualg::classctx::subuniverses(&b, 1000).unwrap() {
            if a.is_full() {
                continue;
            }
            let cert = ualg::classctx::is_full(&a, &b, k).unwrap();
            if cert.is(ualg::classctx::Verdict::Full) {
                out.push((b.clone(), a));
            }
        }
    }
    out
}
