use ualg::catalog;
use ualg::classctx::{embeddings, homs, HomPlan, DEFAULT_NODE_BUDGET};
use ualg::Partition;

fn main() -> ualg::Result<()> {
    let b = catalog::boolean(2);
    let c = catalog::boolean(1);

    let plan = HomPlan::new(&b)?;
    println!("{} is generated by {:?}", b.name(), plan.generators());

    let maps = homs(&b, &c)?;
    println!("{} homomorphisms {} -> {}", maps.len(), b.name(), c.name());
    for f in &maps {
        println!("  {f:?} with kernel {}", Partition::kernel(f));
    }

    let l2 = catalog::chain_lattice(2);
    let l3 = catalog::chain_lattice(3);
    let emb = embeddings(&l2, &l3, DEFAULT_NODE_BUDGET)?;
    println!("{} embeddings {} -> {}: {emb:?}", emb.len(), l2.name(), l3.name());
    Ok(())
}
