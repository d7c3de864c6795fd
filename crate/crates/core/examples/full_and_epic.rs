//! Full, epic and fully epic subalgebras, with the theorem-based decision
//! next to the direct test.

use ualg::algebra::Subset;
use ualg::catalog;
use ualg::classctx::{decide_epic_thm, fullify, is_epic, is_full, is_fully_epic, ClassContext};

fn main() -> ualg::Result<()> {
    let k = ClassContext::quasivariety(vec![catalog::chain_semilattice(2)])?;
    let s3 = catalog::chain_semilattice(3);
    let a = Subset::new(3, [0, 2])?;

    println!("A = {:?} in {}", a.elems(), s3.name());
    println!("  full:        {:?}", is_full(&a, &s3, &k)?.verdict);
    println!("  epic:        {:?}", is_epic(&a, &s3, &k)?.verdict);
    println!("  fully epic:  {:?}", is_fully_epic(&a, &s3, &k)?.verdict);
    let thm = decide_epic_thm(&a, &s3, &k)?;
    println!("  by theorem:  {:?}", thm.verdict);
    println!("  witness:     {}", serde_json::to_string(&thm.witness).unwrap());

    let l2 = ClassContext::quasivariety(vec![catalog::chain_lattice(2)])?;
    let l3 = catalog::chain_lattice(3);
    let a = Subset::new(3, [0, 1])?;
    let f = fullify(&a, &l3, &l2)?;
    println!("fullify {:?} in {}: theta = {}, A/theta = {:?} in {} elements", a.elems(), l3.name(), f.theta, f.sub.elems(), f.quotient.size());
    Ok(())
}
