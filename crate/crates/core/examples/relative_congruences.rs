//! Relative congruences differ from ordinary ones in a quasivariety but not
//! in the variety generated by the same algebra. Here `M` is a 2-cycle and
//! `A` a 2-cycle plus a fixed point under one unary operation, so `A` lies
//! in `V(M)` but not in `Q(M)`.

use ualg::classctx::{rel_con, rsi_check, ClassContext};
use ualg::congruence::con_all;
use ualg::{FiniteAlgebra, Signature};

fn cycle(n: usize) -> ualg::Result<FiniteAlgebra> {
    let sig = Signature::new([("s", 1)])?;
    FiniteAlgebra::from_fn(format!("C{n}"), n, sig, |_, a| (a[0] + 1) % n)
}

fn main() -> ualg::Result<()> {
    let m = cycle(2)?;
    let c4 = cycle(4)?;
    let sig = Signature::new([("s", 1)])?;
    let a = FiniteAlgebra::from_fn("C2+1", 3, sig, |_, x| [1, 0, 2][x[0]])?;
    let q = ClassContext::quasivariety(vec![m.clone()])?;
    let v = ClassContext::variety(vec![m.clone()])?;

    println!("Con({}) has {} members", a.name(), con_all(&a)?.len());
    for k in [&q, &v] {
        let c = rel_con(&a, k)?;
        println!("Con_K({}) for K = {}:", a.name(), k.describe());
        for theta in c.iter() {
            println!("  {theta}");
        }
    }
    println!("Con_K({}) for K = {}: {} members", c4.name(), q.describe(), rel_con(&c4, &q)?.len());
    println!("{} is RSI in {}: {}", m.name(), q.describe(), rsi_check(&m, &q)?.rsi);
    Ok(())
}
