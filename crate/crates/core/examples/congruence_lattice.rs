//! Congruence lattice of a small Heyting chain and of a lattice product.

use ualg::algebra::quotient;
use ualg::catalog;
use ualg::congruence::{cg_pair, con_all, irr, lattice_props};

fn main() -> ualg::Result<()> {
    for a in [catalog::heyting_chain(4), catalog::build("product(L2,L2)")?.algebra] {
        let con = con_all(&a)?;
        let props = lattice_props(&con);
        println!("{} has {} congruences", a.name(), con.len());
        for theta in con.iter() {
            println!("  {theta}");
        }
        println!("  distributive: {}, permuting: {}", props.distributive, props.permuting);

        let (mi, ji) = irr(&con);
        println!("  {} meet irreducible, {} join irreducible", mi.len(), ji.len());

        let theta = cg_pair(&a, 0, 1);
        let (q, _) = quotient(&a, &theta)?;
        println!("  Cg(0,1) = {theta}, quotient has {} elements", q.size());
    }
    Ok(())
}
