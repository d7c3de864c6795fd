mod common;

use common::*;
use proptest::prelude::*;
use ualg::algebra::{sg, FiniteAlgebra, Subset};
use ualg::classctx::{self, rel_con, ClassContext};
use ualg::congruence::{cg_pair, con_all};
use ualg::Signature;

fn groupoid(n: usize, table: Vec<usize>) -> FiniteAlgebra {
    let sig = Signature::new([("m", 2)]).unwrap();
    FiniteAlgebra::new("R", n, sig, vec![table]).unwrap()
}

fn arb_groupoid(max: usize) -> impl Strategy<Value = FiniteAlgebra> {
    (1..=max).prop_flat_map(|n| proptest::collection::vec(0..n, n * n).prop_map(move |t| groupoid(n, t)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn congruences_of_random_groupoids(a in arb_groupoid(5)) {
        prop_assert_eq!(con_all(&a).unwrap().partitions().to_vec(), brute_con(&a));
        for x in 0..a.size() {
            for y in x + 1..a.size() {
                prop_assert_eq!(cg_pair(&a, x, y), brute_cg(&a, x, y));
            }
        }
    }

    #[test]
    fn homs_of_random_groupoids(b in arb_groupoid(4), c in arb_groupoid(3)) {
        prop_assert_eq!(classctx::homs(&b, &c).unwrap(), brute_homs(&b, &c));
    }

    #[test]
    fn sg_of_random_groupoids(a in arb_groupoid(5), g in proptest::collection::vec(0usize..5, 0..3)) {
        let g: Vec<usize> = g.into_iter().filter(|&x| x < a.size()).collect();
        let fast = sg(&a, &Subset::new(a.size(), g.iter().copied()).unwrap()).unwrap();
        let slow: Vec<usize> = naive_sg(&a, &g).into_iter().collect();
        prop_assert_eq!(fast.elements.elems(), slow.as_slice());
    }

    #[test]
    fn relative_congruences_of_random_groupoids(a in arb_groupoid(4), m in arb_groupoid(3)) {
        let k = ClassContext::quasivariety(vec![m.clone()]).unwrap();
        prop_assert_eq!(rel_con(&a, &k).unwrap().partitions().to_vec(), brute_rel_con_q(&a, &[m]));
    }
}
