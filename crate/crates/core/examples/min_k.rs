//! Smallest k for a handful of graphs, cross-checked against brute force.

use ktrail::instances::{complete, complete_bipartite, cycle, seven_vertex_example, paw, star};
use ktrail::oracles::oracle_min_k;
use ktrail::recognition::min_trail_k;

fn main() -> ktrail::Result<()> {
    let graphs = [
        ("C5", cycle(5)),
        ("K4", complete(4)),
        ("K1,3", star(3)),
        ("K2,3", complete_bipartite(2, 3)),
        ("paw", paw()),
        ("example", seven_vertex_example()),
    ];
    for (name, g) in graphs {
        let (k, w) = min_trail_k(&g)?;
        let oracle = oracle_min_k(&g)?;
        println!("{name:8} k={k} (oracle {oracle}), preimage on {} nodes", w.node_count());
    }
    Ok(())
}
