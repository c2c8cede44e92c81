//! Iterative relaxation on a random weighted multigraph, compared with the
//! exhaustive optimum.

use ktrail::instances::{gen_random_multigraph, random_weights};
use ktrail::weighted::{approx_min_weight_trail, oracle_min_weight_k_trail, ApproxOutcome};
use ktrail::WeightedMultiGraph;

fn main() -> ktrail::Result<()> {
    let k = 2;
    let graph = gen_random_multigraph(5, 8, 0.1, 0.3, 11)?;
    let g = WeightedMultiGraph::new(graph, random_weights(8, -3, 3, 11))?;
    let opt = oracle_min_weight_k_trail(&g, k, 16)?;
    match approx_min_weight_trail(&g, k)? {
        ApproxOutcome::Found(a) => {
            println!("weight {} <= relaxation {} <= optimum {:?}", a.weight, a.lp_value, opt.map(|o| o.0));
            println!("edges {:?}, preimage degree {} (bound {})", a.trail.edges, a.witness_bound(), 2 * k - 1);
            for t in &a.trace {
                println!("  #{:<2} lp {:>4}  |E*|={:<2} |Q|={}  {:?}", t.iteration, t.lp_value, t.live_edges, t.q_size, t.action);
            }
        }
        ApproxOutcome::NoKTrail(_) => println!("relaxation infeasible: no {k}-trail inside (oracle: {opt:?})"),
    }
    Ok(())
}
