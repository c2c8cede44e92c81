//! Pendant gadgets on cubic graphs: a contained k-trail exists exactly when
//! the cubic graph has a Hamiltonian path.

use ktrail::containment::oracle_contains_k_trail;
use ktrail::instances::{cubic_graphs, gen_hardness_gadget};
use ktrail::oracles::has_hamiltonian_path;

fn main() -> ktrail::Result<()> {
    for n in [4, 6] {
        for (i, cubic) in cubic_graphs(n).iter().enumerate() {
            let path = has_hamiltonian_path(cubic)?;
            let gadget = gen_hardness_gadget(cubic, 3)?;
            let inside = gadget.is_connected() && oracle_contains_k_trail(&gadget, 3, 16)?.is_some();
            println!("n={n} #{i}: Hamiltonian path {path}, gadget contains a 3-trail {inside}");
        }
    }
    Ok(())
}
