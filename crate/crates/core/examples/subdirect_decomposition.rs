//! Subdirect decomposition into relatively subdirectly irreducible factors.

use ualg::catalog;
use ualg::classctx::{decompose, ClassContext};

fn main() -> ualg::Result<()> {
    let cases = [
        (catalog::chain_lattice(2), catalog::chain_lattice(4)),
        (catalog::boolean(1), catalog::boolean(2)),
        (catalog::heyting_chain(3), catalog::build("product(heyting_chain(2),heyting_chain(3))")?.algebra),
    ];
    for (m, a) in cases {
        let k = ClassContext::quasivariety(vec![m])?;
        let d = decompose(&a, &k)?;
        println!("{} in {}: {} factors", a.name(), k.describe(), d.factors.len());
        for f in &d.factors {
            println!("  theta = {}  ({} elements)", f.theta, f.quotient.size());
        }
        for (e, image) in d.embedding(a.size()).iter().enumerate() {
            println!("  {e} -> {image:?}");
        }
    }
    Ok(())
}
