//! Iterative relaxation for cheap `(2k−1)`-trails.
//!
//! Solve the relaxation to an extreme point, delete a zero edge if there is
//! one, otherwise stop enforcing the degree row of a vertex whose live
//! support is already small. Once no degree rows remain the extreme point
//! is a spanning tree of `G'`, whose matching edges form the answer.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::auxgraph::{build_aux, tree_to_witness, AuxTree};
use crate::error::{Error, Result};
use crate::lp::{CutOutcome, LinearProgram, Lpa, LpaPoint};
use crate::multigraph::{EdgeId, VertexId, WeightedMultiGraph};
use crate::oracles::for_each_connected_subset;
use crate::preimage::{balance_degrees, ContainedTrail};
use crate::rational::Rational;
use crate::recognition::is_k_trail;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DropRule {
    /// `deg*(v) + (2k−1)|E* ∩ K_v| ≤ (2k−1)·deg(v)`
    Mixed,
    /// `deg*(v) ≤ 2k − 1`
    SupportDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Action {
    DeleteEdge { aux_edge: EdgeId },
    DropVertex { vertex: VertexId, rule: DropRule },
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceRecord {
    pub iteration: usize,
    pub lp_value: Rational,
    pub live_edges: usize,
    pub q_size: usize,
    pub cut_rounds: usize,
    pub action: Action,
}

#[derive(Debug, Clone)]
pub struct Approximation {
    /// `U` with a witness of maximum degree at most `2k − 1`.
    pub trail: ContainedTrail,
    pub weight: i64,
    /// Optimum of the first relaxation, a lower bound on every contained
    /// `k`-trail.
    pub lp_value: Rational,
    pub iterations: usize,
    pub trace: Vec<TraceRecord>,
    pub tree: AuxTree,
    /// The first relaxation with all cuts found for it.
    pub first_lp: LinearProgram,
}

impl Approximation {
    pub fn witness_bound(&self) -> usize {
        self.trail.witness.max_degree()
    }
}

#[derive(Debug, Clone)]
pub struct NoKTrailCertificate {
    pub lp: LinearProgram,
    pub farkas: Vec<Rational>,
}

#[derive(Debug, Clone)]
pub enum ApproxOutcome {
    Found(Box<Approximation>),
    NoKTrail(NoKTrailCertificate),
}

pub fn approx_min_weight_trail(g: &WeightedMultiGraph, k: usize) -> Result<ApproxOutcome> {
    if k < 2 {
        return Err(Error::usage("the weighted algorithm needs k >= 2"));
    }
    let graph = &g.graph;
    let aux = build_aux(graph)?;
    let mut lpa = Lpa::new(aux, g.weights.clone(), k);
    let mut point: LpaPoint = match lpa.solve_with_cuts() {
        CutOutcome::Optimal(p) => p,
        CutOutcome::Infeasible { lp, farkas } => return Ok(ApproxOutcome::NoKTrail(NoKTrailCertificate { lp, farkas })),
    };
    let first_lp = lpa.build().0;
    let lp_value = point.value.clone();
    let bound = 2 * k - 1;
    let limit = lpa.aux.edge_count() + graph.n();
    let mut dropped: Vec<Option<DropRule>> = vec![None; graph.n()];
    let mut trace = Vec::new();
    let mut iterations = 0;

    while lpa.q.iter().any(|&b| b) {
        iterations += 1;
        assert!(iterations <= limit, "no progress after {limit} iterations");
        let zero = (0..lpa.aux.edge_count()).find(|&e| lpa.live[e] && point.x[e].is_zero());
        let action = if let Some(e) = zero {
            // the current point stays an optimal extreme point of the
            // smaller program, so no re-solve is needed
            lpa.live[e] = false;
            Action::DeleteEdge { aux_edge: e }
        } else {
            let pick = (0..graph.n()).filter(|&v| lpa.q[v]).find_map(|v| {
                let (deg, kv) = lpa.live_degree(v);
                if deg + bound * kv <= bound * graph.degree(v) {
                    Some((v, DropRule::Mixed))
                } else if deg <= bound {
                    Some((v, DropRule::SupportDegree))
                } else {
                    None
                }
            });
            let Some((v, rule)) = pick else {
                panic!("stuck: no zero edge and no droppable vertex at iteration {iterations}");
            };
            lpa.q[v] = false;
            dropped[v] = Some(rule);
            let previous = point.value.clone();
            point = match lpa.solve_with_cuts() {
                CutOutcome::Optimal(p) => p,
                CutOutcome::Infeasible { .. } => unreachable!("dropping a row keeps the program feasible"),
            };
            assert!(point.value <= previous, "objective increased after a drop");
            Action::DropVertex { vertex: v, rule }
        };
        trace.push(TraceRecord {
            iteration: iterations,
            lp_value: point.value.clone(),
            live_edges: lpa.live.iter().filter(|&&b| b).count(),
            q_size: lpa.q.iter().filter(|&&b| b).count(),
            cut_rounds: point.rounds,
            action,
        });
    }

    let mut tree_edges = Vec::new();
    for e in 0..lpa.aux.edge_count() {
        let x = &point.x[e];
        if x.is_one() {
            tree_edges.push(e);
        } else {
            assert!(x.is_zero(), "final extreme point is fractional at edge {e}: {x}");
        }
    }
    let tree = AuxTree::new(&lpa.aux, tree_edges)?;
    let aux = &lpa.aux;
    let alpha = tree.alpha(aux);
    for v in 0..graph.n() {
        let deg_t: usize = tree.edges.iter().map(|&e| aux.ebar_ends_at(e, v)).sum();
        match dropped[v].expect("every vertex leaves Q") {
            DropRule::SupportDegree => assert!(deg_t <= bound),
            DropRule::Mixed => assert!(deg_t + bound * alpha[v] <= bound * graph.degree(v)),
        }
    }
    let raw = tree_to_witness(aux, &tree)?;
    let sub = raw.subgraph(graph)?;
    let witness = balance_degrees(&sub, &raw.witness)?;
    let trail = ContainedTrail { edges: raw.edges, witness };
    if let Err(err) = trail.verify(graph, bound) {
        panic!("output fails bound {bound}: {err}");
    }
    let weight = g.weight_of(&trail.edges);
    assert_eq!(Rational::from_integer(weight), point.value, "tree weight differs from its LP value");
    assert!(point.value <= lp_value);
    Ok(ApproxOutcome::Found(Box::new(Approximation {
        trail,
        weight,
        lp_value,
        iterations,
        trace,
        tree,
        first_lp,
    })))
}

/// Cheapest connected spanning edge subset that is a `k`-trail, by
/// exhaustive search over non-bridge edges (at most `max_edges` of them).
pub fn oracle_min_weight_k_trail(g: &WeightedMultiGraph, k: usize, max_edges: usize) -> Result<Option<(i64, Vec<EdgeId>)>> {
    let mut best: Option<(i64, Vec<EdgeId>)> = None;
    for_each_connected_subset(&g.graph, max_edges, |subset| {
        let w = g.weight_of(subset);
        if best.as_ref().map_or(true, |(b, _)| w < *b) {
            let sub = g.graph.edge_subgraph(subset)?;
            if is_k_trail(&sub, k)?.is_yes() {
                best = Some((w, subset.to_vec()));
            }
        }
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(best)
}
