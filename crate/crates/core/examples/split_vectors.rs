//! Feasible split vectors: the greedy optimum and the exact feasibility test.

use ktrail::auxgraph::build_aux;
use ktrail::instances::seven_vertex_example;
use ktrail::matroids::max_weight_split;
use ktrail::recognition::{feasible_split, required_split};
use ktrail::Rational;

fn main() -> ktrail::Result<()> {
    let g = seven_vertex_example();
    let aux = build_aux(&g)?;

    let ones = vec![Rational::one(); g.n()];
    let mu = max_weight_split(&aux, &ones)?;
    println!("unit weights: mu = {mu:?}, sum {} = |E| - |V| + 1", mu.iter().sum::<usize>());

    // reward splitting vertex 0
    let mut c = ones.clone();
    c[0] = Rational::from_integer(5);
    println!("vertex 0 weighted:  mu = {:?}", max_weight_split(&aux, &c)?);

    for k in [2, 3] {
        let need = required_split(&g, k);
        let check = feasible_split(&g, &need)?;
        println!("k={k}: need {need:?}, feasible {} ({} of {} clique edges placed)", check.feasible(), check.common, check.target);
    }
    Ok(())
}
