//! Slot graph of a small multigraph and the preimage read off a spanning tree.

use ktrail::auxgraph::{build_aux, tree_to_witness};
use ktrail::instances::cycle;
use ktrail::recognition::feasible_split;

fn main() -> ktrail::Result<()> {
    let g = cycle(3);
    let aux = build_aux(&g)?;
    print!("{}", aux.dump());
    let check = feasible_split(&g, &[1, 0, 0])?;
    let tree = check.tree.expect("splitting one vertex of a triangle is feasible");
    let trail = tree_to_witness(&aux, &tree)?;
    println!("tree {:?} gives a path on {} nodes: phi = {:?}", tree.edges, trail.witness.node_count(), trail.witness.phi);
    print!("{}", aux.to_dot(Some(&tree)));
    Ok(())
}
