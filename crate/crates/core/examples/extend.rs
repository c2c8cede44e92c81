//! A Hamiltonian path of K4 is a 2-trail inside it; stretch it into a
//! 3-witness for the whole graph.

use ktrail::containment::{extend_to_full_trail, oracle_contains_k_trail};
use ktrail::instances::complete;
use ktrail::preimage::verify_witness;

fn main() -> ktrail::Result<()> {
    let g = complete(4);
    let inner = oracle_contains_k_trail(&g, 2, 16)?.expect("K4 has a Hamiltonian path");
    println!("contained 2-trail on edges {:?}", inner.edges);
    let ext = extend_to_full_trail(&g, &inner, 2)?;
    verify_witness(&g, &ext.witness, 3).expect("extension is a 3-witness");
    println!("absorbed {} cycles, attached {} leaf edges", ext.cycles.len(), ext.leaf_edges.len());
    println!("preimage: {} nodes, max degree {}", ext.witness.node_count(), ext.witness.max_degree());
    Ok(())
}
