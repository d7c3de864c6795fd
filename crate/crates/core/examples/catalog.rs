use ualg::algebra::json::to_json_string;
use ualg::catalog;

fn main() -> ualg::Result<()> {
    for (key, about) in catalog::list() {
        println!("{key:<28} {about}");
    }
    let entry = catalog::build("dl_example(chain_lattice(2),0,1)")?;
    println!("\n{} ({} elements): {:?}", entry.key, entry.algebra.size(), entry.element_names);
    println!("{}", to_json_string(&catalog::chain_semilattice(3)));
    Ok(())
}
