//! From a `k`-trail inside `G` to a `(k+1)`-tree witness for all of `G`.
//!
//! Cycles of `G ∖ U` are absorbed one at a time without raising the degree
//! bound (each cycle vertex gains one node and two edge ends, and
//! `⌈(kλ + 2)/(λ + 1)⌉ ≤ k` once `k ≥ 2`). What is left is a forest; peeling
//! it leaf by leaf attaches a fresh copy of the inner endpoint to a node
//! over the leaf, which is the only place a degree can reach `k + 1`.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, MultiGraph, VertexId};
use crate::oracles::for_each_connected_subset;
use crate::preimage::{balance_degrees, split_into_tree, verify_witness, ContainedTrail, PreimageWitness};
use crate::recognition::is_k_trail;

/// A cycle as `(v_i, e_i)` pairs, `e_i` joining `v_i` and `v_{i+1}`.
pub type Cycle = Vec<(VertexId, EdgeId)>;

fn check_cycle(g: &MultiGraph, used: &[bool], cycle: &[(VertexId, EdgeId)]) -> Result<()> {
    if cycle.is_empty() {
        return Err(Error::usage("empty cycle"));
    }
    let mut seen_v = vec![false; g.n()];
    let mut seen_e = vec![false; g.m()];
    for (i, &(v, e)) in cycle.iter().enumerate() {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        if e >= g.m() {
            return Err(Error::EdgeOutOfRange { edge: e, m: g.m() });
        }
        if used[e] {
            return Err(Error::usage(format!("cycle edge {e} already belongs to U")));
        }
        if std::mem::replace(&mut seen_v[v], true) || std::mem::replace(&mut seen_e[e], true) {
            return Err(Error::usage("cycle repeats a vertex or an edge"));
        }
        let next = cycle[(i + 1) % cycle.len()].0;
        let (a, b) = g.endpoints(e);
        if !((a == v && b == next) || (b == v && a == next)) {
            return Err(Error::usage(format!("edge {e} does not join {v} and {next}")));
        }
    }
    Ok(())
}

/// Working form: H-edge images are edge ids of `g`.
struct Grow {
    phi: Vec<VertexId>,
    edges: Vec<(usize, usize)>,
    image: Vec<EdgeId>,
}

impl Grow {
    fn from_trail(g: &MultiGraph, trail: &ContainedTrail) -> Result<Self> {
        let sub = trail.subgraph(g)?;
        let tree = split_into_tree(&sub, &trail.witness)?;
        Ok(Grow {
            phi: tree.phi.clone(),
            edges: tree.h.edges().to_vec(),
            image: tree.edge_map.iter().map(|&i| trail.edges[i]).collect(),
        })
    }

    fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.phi.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Node over `v` of least degree, smallest id on ties.
    fn lightest(&self, deg: &[usize], v: VertexId) -> usize {
        (0..self.phi.len())
            .filter(|&w| self.phi[w] == v)
            .min_by_key(|&w| (deg[w], w))
            .expect("witness is onto")
    }

    fn trail(&self) -> ContainedTrail {
        ContainedTrail {
            edges: self.image.clone(),
            witness: PreimageWitness {
                h: MultiGraph::new(self.phi.len(), self.edges.clone()).expect("nodes in range"),
                phi: self.phi.clone(),
                edge_map: (0..self.image.len()).collect(),
            },
        }
    }

    fn balanced(self, g: &MultiGraph) -> Result<Self> {
        let t = self.trail();
        let sub = t.subgraph(g)?;
        let w = balance_degrees(&sub, &t.witness)?;
        Ok(Grow {
            phi: w.phi,
            edges: w.h.edges().to_vec(),
            image: w.edge_map.iter().map(|&i| t.edges[i]).collect(),
        })
    }

    fn absorb(&mut self, cycle: &[(VertexId, EdgeId)]) {
        let deg = self.degrees();
        let l = cycle.len();
        let w: Vec<usize> = cycle.iter().map(|&(v, _)| self.lightest(&deg, v)).collect();
        let base = self.phi.len();
        for &(v, _) in cycle {
            self.phi.push(v);
        }
        for i in 0..l {
            // {w_i, u_{i+1}} maps onto e_i
            self.edges.push((w[i], base + (i + 1) % l));
            self.image.push(cycle[i].1);
        }
    }
}

/// Add the cycle `cycle` of `g ∖ U` to a `k`-trail `(V, U)`, `k ≥ 2`. The
/// result is again a `k`-trail, with a tree witness.
pub fn absorb_cycle(g: &MultiGraph, trail: &ContainedTrail, cycle: &[(VertexId, EdgeId)], k: usize) -> Result<ContainedTrail> {
    if k < 2 {
        return Err(Error::usage("cycle absorption needs k >= 2"));
    }
    trail.verify(g, k)?;
    let mut used = vec![false; g.m()];
    for &e in &trail.edges {
        used[e] = true;
    }
    check_cycle(g, &used, cycle)?;
    let mut grow = Grow::from_trail(g, trail)?;
    grow.absorb(cycle);
    let out = grow.balanced(g)?.trail();
    out.verify(g, k)?;
    Ok(out)
}

/// Shortest cycle among the edges with `free[e]`: a loop, else a parallel
/// pair, else the shortest BFS cycle; ties go to smaller edge ids.
pub fn shortest_cycle(g: &MultiGraph, free: &[bool]) -> Option<Cycle> {
    if let Some(e) = (0..g.m()).find(|&e| free[e] && g.is_loop(e)) {
        return Some(vec![(g.endpoints(e).0, e)]);
    }
    let mut best: Option<Cycle> = None;
    for e in (0..g.m()).filter(|&e| free[e]) {
        let (a, b) = g.endpoints(e);
        // shortest a-b path avoiding e
        let mut prev: Vec<Option<(VertexId, EdgeId)>> = vec![None; g.n()];
        let mut seen = vec![false; g.n()];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            if u == b {
                break;
            }
            for &f in g.incident(u) {
                if f == e || !free[f] || g.is_loop(f) {
                    continue;
                }
                let w = g.other_end(f, u);
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((u, f));
                    queue.push_back(w);
                }
            }
        }
        if !seen[b] {
            continue;
        }
        let mut path = Vec::new();
        let mut v = b;
        while let Some((u, f)) = prev[v] {
            path.push((u, f));
            v = u;
        }
        path.reverse();
        // a -> ... -> b along the path, then e back to a
        let mut cycle: Cycle = path;
        cycle.push((b, e));
        if best.as_ref().map_or(true, |c| cycle.len() < c.len()) {
            best = Some(cycle);
        }
    }
    best
}

#[derive(Debug, Clone)]
pub struct Extension {
    /// Witness for all of `g` with bound `k + 1`; `edge_map` holds ids of `g`.
    pub witness: PreimageWitness,
    /// Cycles absorbed, in order.
    pub cycles: Vec<Cycle>,
    /// Forest edges attached in the leaf phase, in order.
    pub leaf_edges: Vec<EdgeId>,
    /// Nodes created or given an edge during the leaf phase; the only nodes
    /// whose degree may exceed `k`. For `k = 1` the witness is rebuilt, so
    /// every node counts.
    pub touched: Vec<bool>,
}

/// Every graph containing a `k`-trail is a `(k+1)`-trail; this builds the
/// witness from the contained one.
pub fn extend_to_full_trail(g: &MultiGraph, trail: &ContainedTrail, k: usize) -> Result<Extension> {
    if k < 1 {
        return Err(Error::usage("k must be at least 1"));
    }
    trail.verify(g, k)?;
    if k == 1 {
        // a 1-trail is a single edge, so g has two vertices and an Euler
        // trail; recognition builds the witness directly
        let witness = is_k_trail(g, 2)?.witness.expect("two-vertex graphs are 2-trails");
        let touched = vec![true; witness.node_count()];
        return Ok(Extension { witness, cycles: Vec::new(), leaf_edges: Vec::new(), touched });
    }
    let mut grow = Grow::from_trail(g, trail)?;
    let mut free = vec![true; g.m()];
    for &e in &grow.image {
        free[e] = false;
    }
    let mut cycles = Vec::new();
    while let Some(c) = shortest_cycle(g, &free) {
        grow.absorb(&c);
        grow = grow.balanced(g)?;
        for &(_, e) in &c {
            free[e] = false;
        }
        cycles.push(c);
    }
    debug_assert!(grow.degrees().iter().all(|&d| d <= k));

    let mut touched = vec![false; grow.phi.len()];
    let mut leaf_edges = Vec::new();
    let mut forest_deg = vec![0usize; g.n()];
    for e in (0..g.m()).filter(|&e| free[e]) {
        let (a, b) = g.endpoints(e);
        forest_deg[a] += 1;
        forest_deg[b] += 1;
    }
    while let Some(u) = (0..g.n()).find(|&v| forest_deg[v] == 1) {
        let e = *g.incident(u).iter().find(|&&e| free[e]).unwrap();
        let v = g.other_end(e, u);
        let deg = grow.degrees();
        let u_node = grow.lightest(&deg, u);
        let fresh = grow.phi.len();
        grow.phi.push(v);
        grow.edges.push((u_node, fresh));
        grow.image.push(e);
        touched[u_node] = true;
        touched.push(true);
        free[e] = false;
        forest_deg[u] -= 1;
        forest_deg[v] -= 1;
        leaf_edges.push(e);
    }
    debug_assert!(free.iter().all(|&f| !f));

    let mut edge_map = grow.image.clone();
    let witness = PreimageWitness {
        h: MultiGraph::new(grow.phi.len(), std::mem::take(&mut grow.edges))?,
        phi: grow.phi,
        edge_map: std::mem::take(&mut edge_map),
    };
    if let Err(v) = verify_witness(g, &witness, k + 1) {
        panic!("extension fails bound {}: {v:?}", k + 1);
    }
    Ok(Extension { witness, cycles, leaf_edges, touched })
}

/// Whether some connected spanning edge subset is a `k`-trail, with the
/// first one found among the smallest. Exponential in the number of
/// non-bridge edges, which must not exceed `max_edges`.
pub fn oracle_contains_k_trail(g: &MultiGraph, k: usize, max_edges: usize) -> Result<Option<ContainedTrail>> {
    let mut found = None;
    for_each_connected_subset(g, max_edges, |subset| {
        let sub = g.edge_subgraph(subset)?;
        if let Some(w) = is_k_trail(&sub, k)?.witness {
            found = Some(ContainedTrail { edges: subset.to_vec(), witness: w });
            return Ok(ControlFlow::Break(()));
        }
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(found)
}
