use ualg::catalog;
use ualg::classctx::{verify, ClassContext, Witness};
use ualg::maltsev::arithmeticity_witness;

fn main() -> ualg::Result<()> {
    for m in [catalog::boolean(1), catalog::chain_lattice(2), catalog::chain_semilattice(2)] {
        let k = ClassContext::quasivariety(vec![m])?;
        let cert = arithmeticity_witness(&k, 1_000_000)?;
        verify(&cert)?;
        print!("{}: {:?}", k.describe(), cert.verdict);
        match &cert.witness {
            Witness::Term { term, .. } => println!(" via p = {term}"),
            Witness::Failure { ambient, a, theta, .. } => {
                println!(" with |B| = {}, |A| = {}, theta = {theta}", ambient.elements.len(), a.len())
            }
            Witness::Diagnostic { message } => println!(" ({message})"),
            _ => println!(),
        }
    }
    Ok(())
}
