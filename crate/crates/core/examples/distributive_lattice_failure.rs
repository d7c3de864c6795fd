//! Distributive lattices fail weak epimorphism surjectivity already at four
//! elements: the 3-chain is fully epic in 2 x 2.

use ualg::catalog;
use ualg::classctx::{is_fully_epic, verify, weak_es_search, ClassContext, SearchBounds};

fn main() -> ualg::Result<()> {
    let two = catalog::chain_lattice(2);
    let k = ClassContext::quasivariety(vec![two.clone()])?;

    let ex = catalog::dl_example(&two, 0, 1)?;
    println!("ambient {} with A = {:?}", ex.ambient.name(), ex.a.elems());
    let cert = is_fully_epic(&ex.a, &ex.ambient, &k)?;
    println!("A <= 2x2: {:?}", cert.verdict);

    let cert = weak_es_search(&k, SearchBounds::new(4, 2, 2))?;
    verify(&cert)?;
    println!("search: {:?}, checked", cert.verdict);
    println!("{}", cert.to_json());
    Ok(())
}
