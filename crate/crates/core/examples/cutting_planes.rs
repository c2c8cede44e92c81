//! Solve the relaxation by separating subtour rows, then print the final row
//! set in LP text form.

use ktrail::auxgraph::build_aux;
use ktrail::instances::complete;
use ktrail::lp::{CutOutcome, Lpa};

fn main() -> ktrail::Result<()> {
    let g = complete(4);
    let weights: Vec<i64> = (0..g.m() as i64).map(|e| e % 3 - 1).collect();
    let mut lpa = Lpa::new(build_aux(&g)?, weights, 2);
    match lpa.solve_with_cuts() {
        CutOutcome::Optimal(p) => {
            println!("value {} after {} rounds, {} pooled cuts", p.value, p.rounds, lpa.pool().len());
            println!("tight rank {} of {} variables", p.tight_rank, p.variables);
        }
        CutOutcome::Infeasible { farkas, .. } => println!("infeasible, certificate of length {}", farkas.len()),
    }
    print!("{}", lpa.build().0.to_lp_text());
    Ok(())
}
