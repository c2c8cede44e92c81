//! The relaxation used by the weighted algorithm. Variables are the live
//! edges of `G'`; matching edges carry the weight of their edge, clique
//! edges weigh 0. Rows:
//!
//! * `x(E*) = |V'| − 1`
//! * `x(E*(S)) ≤ |S| − 1` for the sets in the cut pool
//! * for `v ∈ Q`: `Σ_ē ends(ē, v)·x_ē + k·x(E* ∩ K_v) ≤ k·deg(v)`, where
//!   `ends` counts a loop at `v` twice.

use std::collections::HashSet;

use crate::auxgraph::{AuxGraph, SlotId};
use crate::multigraph::{EdgeId, VertexId};
use crate::rational::Rational;

use super::separation::separate_forest_all;
use super::simplex::{simplex_solve, LinearProgram, LpOutcome, Sense};

#[derive(Debug, Clone)]
pub struct Lpa {
    pub aux: AuxGraph,
    /// Weight per edge of `G`.
    pub weights: Vec<i64>,
    pub k: usize,
    pub live: Vec<bool>,
    pub q: Vec<bool>,
    pool: Vec<Vec<SlotId>>,
    pooled: HashSet<Vec<SlotId>>,
}

#[derive(Debug, Clone)]
pub struct LpaPoint {
    /// Value per aux edge; dead edges are 0.
    pub x: Vec<Rational>,
    pub value: Rational,
    /// Separation rounds needed for this solve.
    pub rounds: usize,
    pub tight_rank: usize,
    pub variables: usize,
}

#[derive(Debug, Clone)]
pub enum CutOutcome {
    Optimal(LpaPoint),
    /// Multipliers for the rows of `lp` proving infeasibility.
    Infeasible { lp: LinearProgram, farkas: Vec<Rational> },
}

impl Lpa {
    pub fn new(aux: AuxGraph, weights: Vec<i64>, k: usize) -> Self {
        assert_eq!(weights.len(), aux.ebar_count());
        let live = vec![true; aux.edge_count()];
        let q = vec![true; aux.graph().n()];
        Lpa { aux, weights, k, live, q, pool: Vec::new(), pooled: HashSet::new() }
    }

    pub fn live_edges(&self) -> Vec<EdgeId> {
        (0..self.aux.edge_count()).filter(|&e| self.live[e]).collect()
    }

    pub fn cost(&self, e: EdgeId) -> i64 {
        if self.aux.is_ebar(e) {
            self.weights[e]
        } else {
            0
        }
    }

    pub fn pool(&self) -> &[Vec<SlotId>] {
        &self.pool
    }

    pub fn add_cut(&mut self, set: Vec<SlotId>) -> bool {
        if self.pooled.insert(set.clone()) {
            self.pool.push(set);
            true
        } else {
            false
        }
    }

    /// `(Σ ends·x_ē over live matching edges, live clique edges)` at `v`.
    pub fn live_degree(&self, v: VertexId) -> (usize, usize) {
        let g = self.aux.graph();
        let mut seen_loop = HashSet::new();
        let mut deg = 0;
        for &e in g.incident(v) {
            if self.live[e] && (!g.is_loop(e) || seen_loop.insert(e)) {
                deg += self.aux.ebar_ends_at(e, v);
            }
        }
        let k = self.aux.kpart(v).iter().filter(|&&e| self.live[e]).count();
        (deg, k)
    }

    pub fn degree_row(&self, v: VertexId) -> (Vec<(EdgeId, i64)>, i64) {
        let g = self.aux.graph();
        let k = self.k as i64;
        let mut row = Vec::new();
        let mut seen_loop = HashSet::new();
        for &e in g.incident(v) {
            if self.live[e] && (!g.is_loop(e) || seen_loop.insert(e)) {
                row.push((e, self.aux.ebar_ends_at(e, v) as i64));
            }
        }
        for &e in self.aux.kpart(v) {
            if self.live[e] {
                row.push((e, k));
            }
        }
        row.sort_unstable();
        (row, k * g.degree(v) as i64)
    }

    fn var_name(&self, e: EdgeId) -> String {
        if self.aux.is_ebar(e) {
            format!("e{e}")
        } else {
            let (s, t) = self.aux.gprime().endpoints(e);
            format!("k{}_{s}_{t}", self.aux.k_owner(e).unwrap())
        }
    }

    /// The current program over live edges; variable `j` is aux edge
    /// `vars[j]`.
    pub fn build(&self) -> (LinearProgram, Vec<EdgeId>) {
        let vars = self.live_edges();
        let mut index = vec![usize::MAX; self.aux.edge_count()];
        let mut lp = LinearProgram::new();
        for (j, &e) in vars.iter().enumerate() {
            index[e] = j;
            lp.add_var(self.var_name(e), Rational::from_integer(self.cost(e)));
        }
        let one = Rational::one();
        lp.add_row(
            "tree",
            (0..vars.len()).map(|j| (j, one.clone())).collect(),
            Sense::Eq,
            Rational::from(self.aux.slot_count() - 1),
        );
        for (i, set) in self.pool.iter().enumerate() {
            let mut inside = vec![false; self.aux.slot_count()];
            for &s in set {
                inside[s] = true;
            }
            let coeffs: Vec<(usize, Rational)> = vars
                .iter()
                .enumerate()
                .filter(|(_, &e)| {
                    let (a, b) = self.aux.gprime().endpoints(e);
                    inside[a] && inside[b]
                })
                .map(|(j, _)| (j, one.clone()))
                .collect();
            if !coeffs.is_empty() {
                lp.add_row(format!("sub{i}"), coeffs, Sense::Le, Rational::from(set.len() - 1));
            }
        }
        for v in 0..self.aux.graph().n() {
            if self.q[v] {
                let (row, rhs) = self.degree_row(v);
                let coeffs = row.into_iter().map(|(e, a)| (index[e], Rational::from_integer(a))).collect();
                lp.add_row(format!("deg{v}"), coeffs, Sense::Le, Rational::from_integer(rhs));
            }
        }
        (lp, vars)
    }

    /// Solve, separate, add every violated set found, repeat.
    pub fn solve_with_cuts(&mut self) -> CutOutcome {
        let mut rounds = 0;
        loop {
            rounds += 1;
            let (lp, vars) = self.build();
            let sol = match simplex_solve(&lp) {
                LpOutcome::Optimal(s) => s,
                LpOutcome::Infeasible { farkas } => return CutOutcome::Infeasible { lp, farkas },
                LpOutcome::Unbounded { .. } => unreachable!("the tree row bounds every variable"),
            };
            let edges: Vec<(usize, usize)> = vars.iter().map(|&e| self.aux.gprime().endpoints(e)).collect();
            let cuts = separate_forest_all(self.aux.slot_count(), &edges, &sol.x);
            if cuts.is_empty() {
                let mut x = vec![Rational::zero(); self.aux.edge_count()];
                for (j, &e) in vars.iter().enumerate() {
                    x[e] = sol.x[j].clone();
                }
                return CutOutcome::Optimal(LpaPoint {
                    x,
                    value: sol.objective,
                    rounds,
                    tight_rank: sol.tight_rank,
                    variables: vars.len(),
                });
            }
            let mut added = false;
            for c in cuts {
                added |= self.add_cut(c.set);
            }
            assert!(added, "separation returned only pooled rows");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auxgraph::build_aux;
    use crate::instances::{cycle, seven_vertex_example, star};
    use crate::lp::is_farkas_certificate;

    fn lpa(g: &crate::MultiGraph, k: usize) -> Lpa {
        let aux = build_aux(g).unwrap();
        let m = aux.ebar_count();
        Lpa::new(aux, vec![1; m], k)
    }

    #[test]
    fn c3_tree_value() {
        let mut p = lpa(&cycle(3), 2);
        p.q = vec![false; 3];
        p.weights = vec![0; 3];
        let CutOutcome::Optimal(pt) = p.solve_with_cuts() else { panic!() };
        let total: Rational = pt.x.iter().sum();
        assert_eq!(total, Rational::from_integer(5));
        assert_eq!(pt.tight_rank, pt.variables);
    }

    #[test]
    fn star_is_infeasible_at_two() {
        let mut p = lpa(&star(3), 2);
        match p.solve_with_cuts() {
            CutOutcome::Infeasible { lp, farkas } => assert!(is_farkas_certificate(&lp, &farkas)),
            CutOutcome::Optimal(pt) => panic!("unexpected optimum {:?}", pt.value),
        }
    }

    #[test]
    fn c4_value_bounded_by_hamiltonian_path() {
        let mut p = lpa(&cycle(4), 2);
        let CutOutcome::Optimal(pt) = p.solve_with_cuts() else { panic!() };
        assert!(pt.value <= Rational::from_integer(3));
        assert_eq!(pt.tight_rank, pt.variables);
    }

    #[test]
    fn max_degree_is_feasible() {
        let g = seven_vertex_example();
        let mut p = lpa(&g, g.max_degree());
        let CutOutcome::Optimal(pt) = p.solve_with_cuts() else { panic!() };
        // unit weights: every feasible tree uses all 11 matching edges at most
        assert!(pt.value <= Rational::from_integer(11));
        assert!(!p.pool().is_empty());
    }

    #[test]
    fn loop_rows_count_both_ends() {
        let g = seven_vertex_example();
        let p = lpa(&g, 3);
        let (row, rhs) = p.degree_row(6);
        assert_eq!(rhs, 9);
        assert!(row.contains(&(10, 2)));
        assert_eq!(p.live_degree(6), (3, 3));
        let text = p.build().0.to_lp_text();
        assert!(text.contains(" deg6: + e9 + 2 e10"));
    }
}
