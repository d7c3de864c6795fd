mod common;

use common::*;
use ualg::algebra::{sg, Subset};
use ualg::catalog;
use ualg::classctx::{self, rel_con, subuniverses, ClassContext};
use ualg::congruence::{cg_pair, con_all};
use ualg::maltsev;

#[test]
fn con_all_matches_brute_force() {
    for a in small_catalog(6) {
        let fast: Vec<_> = con_all(&a).unwrap().partitions().to_vec();
        assert_eq!(fast, brute_con(&a), "{}", a.name());
    }
}

#[test]
fn cg_pair_is_the_least_congruence() {
    for a in small_catalog(6) {
        for x in 0..a.size() {
            for y in x + 1..a.size() {
                assert_eq!(cg_pair(&a, x, y), brute_cg(&a, x, y), "{} ({x},{y})", a.name());
            }
        }
    }
}

#[test]
fn homs_match_brute_force() {
    let algebras = small_catalog(5);
    for b in &algebras {
        for c in &algebras {
            if b.signature() == c.signature() && c.size() <= 4 {
                assert_eq!(classctx::homs(b, c).unwrap(), brute_homs(b, c), "{} -> {}", b.name(), c.name());
            }
        }
    }
}

#[test]
fn sg_matches_fixpoint() {
    for a in small_catalog(6) {
        for x in 0..a.size() {
            for y in x..a.size() {
                let fast = sg(&a, &Subset::new(a.size(), [x, y]).unwrap()).unwrap();
                let slow: Vec<usize> = naive_sg(&a, &[x, y]).into_iter().collect();
                assert_eq!(fast.elements.elems(), slow.as_slice(), "{} {x} {y}", a.name());
            }
        }
    }
}

#[test]
fn subuniverses_match_brute_force() {
    for a in small_catalog(6) {
        let mut fast: Vec<Vec<usize>> = subuniverses(&a, 1000)
            .unwrap()
            .into_iter()
            .map(|s| s.elems().to_vec())
            .collect();
        fast.sort();
        let mut slow = brute_subuniverses(&a);
        slow.sort();
        assert_eq!(fast, slow, "{}", a.name());
    }
}

#[test]
fn rel_con_matches_kernel_intersections() {
    let gens = [
        catalog::chain_lattice(2),
        catalog::chain_semilattice(2),
        catalog::boolean(1),
        catalog::heyting_chain(3),
        catalog::implication_of_boolean(1),
    ];
    for m in &gens {
        let k = ClassContext::quasivariety(vec![m.clone()]).unwrap();
        for a in small_catalog(6).into_iter().filter(|a| a.signature() == m.signature()) {
            let fast = rel_con(&a, &k).unwrap().partitions().to_vec();
            assert_eq!(fast, brute_rel_con_q(&a, std::slice::from_ref(m)), "{} in Q({})", a.name(), m.name());
            let kv = ClassContext::variety(vec![m.clone()]).unwrap();
            assert_eq!(rel_con(&a, &kv).unwrap().partitions(), brute_con(&a).as_slice());
        }
    }
}

#[test]
fn free_algebra_sizes_match_term_operations() {
    for m in [
        catalog::chain_lattice(2),
        catalog::chain_semilattice(2),
        catalog::boolean(1),
        catalog::heyting_chain(3),
        catalog::chain_lattice(3),
    ] {
        let k = ClassContext::quasivariety(vec![m.clone()]).unwrap();
        let (ops, _) = term_operations(std::slice::from_ref(&m), 2);
        assert_eq!(maltsev::free(&k, 2, 100_000).unwrap().size(), ops.len(), "{}", m.name());
    }
    let k = ClassContext::quasivariety(vec![catalog::chain_lattice(2)]).unwrap();
    assert_eq!(maltsev::free(&k, 2, 100).unwrap().size(), 4);
    let k = ClassContext::quasivariety(vec![catalog::chain_semilattice(2)]).unwrap();
    assert_eq!(maltsev::free(&k, 2, 100).unwrap().size(), 3);
}

type Op<'a> = &'a dyn Fn(usize, usize, usize) -> usize;

fn majority(f: Op, x: usize, y: usize, _: usize) -> bool {
    f(y, x, x) == x && f(x, y, x) == x && f(x, x, y) == x
}

fn pixley(f: Op, x: usize, y: usize, _: usize) -> bool {
    f(x, y, x) == x && f(x, y, y) == x && f(y, y, x) == x
}

fn maltsev_identity(f: Op, x: usize, y: usize, _: usize) -> bool {
    f(x, y, y) == x && f(y, y, x) == x
}

fn discriminator(f: Op, a: usize, b: usize, c: usize) -> bool {
    f(a, b, c) == if a == b { c } else { a }
}

#[test]
fn term_detection_matches_ternary_clone() {
    for m in [
        catalog::chain_lattice(2),
        catalog::chain_semilattice(2),
        catalog::boolean(1),
        catalog::implication_of_boolean(1),
        catalog::flat_semilattice(3),
    ] {
        let ms = std::slice::from_ref(&m);
        let k = ClassContext::quasivariety(vec![m.clone()]).unwrap();
        let cap = 1_000_000;
        let name = m.name().to_string();
        assert_eq!(maltsev::nu_term(&k, 3, cap).unwrap().is_some(), some_ternary_operation(ms, majority), "nu {name}");
        assert_eq!(maltsev::pixley_term(&k, cap).unwrap().is_some(), some_ternary_operation(ms, pixley), "pixley {name}");
        assert_eq!(
            maltsev::maltsev_term(&k, cap).unwrap().is_some(),
            some_ternary_operation(ms, maltsev_identity),
            "maltsev {name}"
        );
        assert_eq!(
            maltsev::discriminator_term(&k, cap).unwrap().is_some(),
            some_ternary_operation(ms, discriminator),
            "discriminator {name}"
        );
    }
}
