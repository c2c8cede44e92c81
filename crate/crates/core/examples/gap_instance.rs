//! The ring instance where the relaxation is feasible at k but only a
//! (2k-1)-trail exists.

use ktrail::auxgraph::build_aux;
use ktrail::containment::oracle_contains_k_trail;
use ktrail::instances::gen_gap_instance;
use ktrail::lp::{CutOutcome, Lpa};
use ktrail::weighted::{approx_min_weight_trail, ApproxOutcome};

fn main() -> ktrail::Result<()> {
    let (k, n) = (3, 6);
    let g = gen_gap_instance(k, n, -1)?;
    println!("ring degrees {:?}", (0..n).map(|v| g.graph.degree(v)).collect::<Vec<_>>());
    let mut lpa = Lpa::new(build_aux(&g.graph)?, g.weights.clone(), k);
    if let CutOutcome::Optimal(p) = lpa.solve_with_cuts() {
        println!("relaxation at k={k}: value {} after {} cut rounds", p.value, p.rounds);
    }
    println!("contains a {k}-trail: {}", oracle_contains_k_trail(&g.graph, k, 16)?.is_some());
    if let ApproxOutcome::Found(a) = approx_min_weight_trail(&g, k)? {
        println!("algorithm keeps {} edges with preimage degree {}", a.trail.edges.len(), a.witness_bound());
    }
    Ok(())
}
