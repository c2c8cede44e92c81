//! Deciding whether `G` is a `k`-trail.
//!
//! `G` is a `k`-trail iff it has a tree preimage in which every vertex `v`
//! has at least `⌈deg(v)/k⌉` copies, and a split vector `μ` (copies minus
//! one) is realizable iff some spanning tree of `G'` through all matching
//! edges uses at most `deg(v) − 1 − μ(v)` clique edges at each `v`. That is
//! a matroid intersection on the clique edges.

use serde::Serialize;

use crate::auxgraph::{build_aux, tree_to_witness, AuxGraph, AuxTree};
use crate::error::{Error, Result};
use crate::matroids::{aux_matroids, matroid_intersection, DeficiencyCut};
use crate::multigraph::MultiGraph;
use crate::preimage::{balance_degrees, verify_witness, PreimageWitness};

#[derive(Debug, Clone)]
pub struct SplitCheck {
    pub tree: Option<AuxTree>,
    /// Per-vertex clique-edge budget `deg − 1 − μ`, clamped at 0.
    pub capacity: Vec<usize>,
    /// Size of the largest common independent set found.
    pub common: usize,
    pub target: usize,
    /// Present when the intersection fell short; `None` also when some
    /// `μ(v)` already exceeds `deg(v) − 1`.
    pub cut: Option<DeficiencyCut>,
}

impl SplitCheck {
    pub fn feasible(&self) -> bool {
        self.tree.is_some()
    }
}

pub fn feasible_split(g: &MultiGraph, mu: &[usize]) -> Result<SplitCheck> {
    let aux = build_aux(g)?;
    feasible_split_aux(&aux, mu)
}

pub fn feasible_split_aux(aux: &AuxGraph, mu: &[usize]) -> Result<SplitCheck> {
    let g = aux.graph();
    if mu.len() != g.n() {
        return Err(Error::usage(format!("split vector needs {} entries, got {}", g.n(), mu.len())));
    }
    let degrees = g.degrees();
    let capacity: Vec<usize> = degrees.iter().zip(mu).map(|(&d, &s)| (d - 1).saturating_sub(s)).collect();
    let target = g.m() - 1;
    if degrees.iter().zip(mu).any(|(&d, &s)| s + 1 > d) {
        return Ok(SplitCheck { tree: None, capacity, common: 0, target, cut: None });
    }
    let (graphic, partition) = aux_matroids(aux, capacity.clone())?;
    let found = matroid_intersection(&graphic, &partition)?;
    let common = found.set.len();
    if common < target {
        return Ok(SplitCheck { tree: None, capacity, common, target, cut: Some(found.cut) });
    }
    let m = aux.ebar_count();
    let edges = (0..m).chain(found.set.iter().map(|&i| m + i)).collect();
    let tree = AuxTree::new(aux, edges)?;
    Ok(SplitCheck { tree: Some(tree), capacity, common, target, cut: None })
}

/// `⌈deg(v)/k⌉ − 1` per vertex.
pub fn required_split(g: &MultiGraph, k: usize) -> Vec<usize> {
    g.degrees().iter().map(|&d| d.div_ceil(k) - 1).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct NoCertificate {
    pub split: Vec<usize>,
    pub capacity: Vec<usize>,
    pub common: usize,
    pub target: usize,
    /// Clique edges (aux ids) on the unreachable side of the exchange graph.
    pub cut_side: Vec<usize>,
    pub rank_sum: usize,
}

#[derive(Debug, Clone)]
pub struct RecognitionResult {
    pub k: usize,
    pub witness: Option<PreimageWitness>,
    pub certificate: Option<NoCertificate>,
}

impl RecognitionResult {
    pub fn is_yes(&self) -> bool {
        self.witness.is_some()
    }
}

pub fn is_k_trail(g: &MultiGraph, k: usize) -> Result<RecognitionResult> {
    let aux = build_aux(g)?;
    is_k_trail_aux(&aux, k)
}

pub fn is_k_trail_aux(aux: &AuxGraph, k: usize) -> Result<RecognitionResult> {
    if k < 1 {
        return Err(Error::usage("k must be at least 1"));
    }
    let g = aux.graph();
    let mu = required_split(g, k);
    let check = feasible_split_aux(aux, &mu)?;
    let Some(tree) = check.tree else {
        let m = aux.ebar_count();
        let (cut_side, rank_sum) = match &check.cut {
            Some(c) => (c.a.iter().map(|&i| m + i).collect(), c.rank1_a + c.rank2_r),
            None => (Vec::new(), 0),
        };
        let certificate = NoCertificate {
            split: mu,
            capacity: check.capacity,
            common: check.common,
            target: check.target,
            cut_side,
            rank_sum,
        };
        return Ok(RecognitionResult { k, witness: None, certificate: Some(certificate) });
    };
    let raw = tree_to_witness(aux, &tree)?.witness;
    let witness = balance_degrees(g, &raw)?;
    if let Err(v) = verify_witness(g, &witness, k) {
        panic!("balanced witness fails bound {k}: {v:?}");
    }
    Ok(RecognitionResult { k, witness: Some(witness), certificate: None })
}

/// Smallest `k` for which `g` is a `k`-trail, with a witness.
pub fn min_trail_k(g: &MultiGraph) -> Result<(usize, PreimageWitness)> {
    let aux = build_aux(g)?;
    // only a single non-loop edge is a 1-trail
    let start = if g.m() == 1 && !g.is_loop(0) { 1 } else { 2 };
    for k in start..=g.max_degree().max(start) {
        if let Some(w) = is_k_trail_aux(&aux, k)?.witness {
            return Ok((k, w));
        }
    }
    unreachable!("every connected graph is a Δ-trail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{complete, cycle, seven_vertex_example, gen_random_multigraph, path, star};
    use proptest::prelude::*;

    #[test]
    fn zero_split_always_feasible() {
        for g in [cycle(4), seven_vertex_example(), star(3), complete(4)] {
            assert!(feasible_split(&g, &vec![0; g.n()]).unwrap().feasible());
        }
    }

    #[test]
    fn c3_splits() {
        let g = cycle(3);
        assert!(feasible_split(&g, &[1, 0, 0]).unwrap().feasible());
        let no = feasible_split(&g, &[1, 1, 1]).unwrap();
        assert!(!no.feasible());
        assert!(no.cut.is_some());
        assert!(!feasible_split(&g, &[2, 0, 0]).unwrap().feasible());
    }

    #[test]
    fn seven_vertex_example_split() {
        let g = seven_vertex_example();
        let check = feasible_split(&g, &[0, 1, 1, 0, 1, 0, 1]).unwrap();
        assert!(check.feasible());
    }

    #[test]
    fn small_answers() {
        assert!(is_k_trail(&cycle(5), 2).unwrap().is_yes());
        let star_no = is_k_trail(&star(3), 2).unwrap();
        assert!(!star_no.is_yes());
        assert!(star_no.certificate.unwrap().common < 2);
        let fig = is_k_trail(&seven_vertex_example(), 3).unwrap();
        let w = fig.witness.unwrap();
        assert!(w.is_tree());
        assert_eq!(verify_witness(&seven_vertex_example(), &w, 3), Ok(()));
        assert!(!is_k_trail(&seven_vertex_example(), 2).unwrap().is_yes());
        assert!(matches!(is_k_trail(&cycle(3), 0), Err(Error::Usage(_))));
    }

    #[test]
    fn min_k_examples() {
        assert_eq!(min_trail_k(&path(3)).unwrap().0, 2);
        assert_eq!(min_trail_k(&path(2)).unwrap().0, 1);
        assert_eq!(min_trail_k(&star(3)).unwrap().0, 3);
        assert_eq!(min_trail_k(&complete(4)).unwrap().0, 3);
        assert_eq!(min_trail_k(&seven_vertex_example()).unwrap().0, 3);
        let single_loop_plus = MultiGraph::new(2, vec![(0, 0), (0, 1)]).unwrap();
        assert_eq!(min_trail_k(&single_loop_plus).unwrap().0, 2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]
        #[test]
        fn monotone_and_sound(n in 2usize..=5, extra in 0usize..=4, seed in any::<u64>()) {
            let g = gen_random_multigraph(n, n - 1 + extra, 0.2, 0.3, seed).unwrap();
            let mut seen_yes = false;
            for k in 1..=g.max_degree() {
                let r = is_k_trail(&g, k).unwrap();
                prop_assert!(!seen_yes || r.is_yes(), "monotonicity broken at k = {}", k);
                if let Some(w) = &r.witness {
                    prop_assert_eq!(verify_witness(&g, w, k), Ok(()));
                    seen_yes = true;
                } else {
                    let c = r.certificate.unwrap();
                    prop_assert_eq!(c.rank_sum, c.common);
                }
            }
            prop_assert!(seen_yes);
        }
    }
}
