//! Every proper subalgebra of a finite Heyting chain has two distinct
//! congruences agreeing on it.

use ualg::catalog;
use ualg::classctx::{condition_i_pair, subuniverses, ClassContext};

fn main() -> ualg::Result<()> {
    for n in 2..=5 {
        let h = catalog::heyting_chain(n);
        let k = ClassContext::quasivariety(vec![h.clone()])?;
        for a in subuniverses(&h, 100)?.into_iter().filter(|a| !a.is_full()) {
            match condition_i_pair(&a, &h, &k)? {
                Some((theta, phi)) => println!("H{n} {:?}: {theta} vs {phi}", a.elems()),
                None => println!("H{n} {:?}: no pair", a.elems()),
            }
        }
    }
    Ok(())
}
