//! Term search for Maltsev conditions through free algebras.

use ualg::catalog;
use ualg::classctx::ClassContext;
use ualg::maltsev::{self, Schema};

fn main() -> ualg::Result<()> {
    let cap = 1_000_000;
    let algebras = [catalog::chain_lattice(2), catalog::chain_semilattice(2), catalog::boolean(1)];
    let schemas = [Schema::Majority, Schema::Pixley, Schema::Maltsev, Schema::Discriminator];

    for m in algebras {
        let k = ClassContext::quasivariety(vec![m])?;
        let f = maltsev::free(&k, 2, cap)?;
        println!("{}: F(2) has {} elements", k.describe(), f.size());
        for schema in schemas {
            match maltsev::find_term(&k, schema, cap)? {
                Some(t) => println!("  {schema}: {t}"),
                None => println!("  {schema}: none"),
            }
        }
    }
    Ok(())
}
