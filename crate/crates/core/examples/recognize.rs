//! Is the seven-vertex example graph a 2-trail? a 3-trail?

use ktrail::instances::seven_vertex_example;
use ktrail::preimage::verify_witness;
use ktrail::recognition::is_k_trail;

fn main() -> ktrail::Result<()> {
    let g = seven_vertex_example();
    for k in [2, 3] {
        let r = is_k_trail(&g, k)?;
        match (&r.witness, &r.certificate) {
            (Some(w), _) => {
                assert!(verify_witness(&g, w, k).is_ok());
                println!("k={k}: yes, tree preimage with {} nodes, multiplicities {:?}", w.node_count(), w.multiplicities(g.n()));
                for (node, &v) in w.phi.iter().enumerate() {
                    println!("  node {node} -> vertex {v}, degree {}", w.h.degree(node));
                }
            }
            (None, Some(c)) => println!("k={k}: no, best common independent set {} of {} needed", c.common, c.target),
            (None, None) => unreachable!(),
        }
    }
    Ok(())
}
