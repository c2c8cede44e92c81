//! Homomorphic-preimage witnesses and the transformations between them.
//!
//! A [`PreimageWitness`] certifies that `G` is the image of a connected graph
//! `H` under an onto vertex map. It carries the edge bijection explicitly so
//! that parallel edges are matched one-to-one.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, MultiGraph, VertexId};

/// Preimage `H` of a graph together with the node map `phi` and the edge
/// bijection `edge_map` (H-edge id to G-edge id).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreimageWitness {
    pub h: MultiGraph,
    pub phi: Vec<VertexId>,
    pub edge_map: Vec<EdgeId>,
}

/// Why a witness was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    PhiLength { nodes: usize, phi: usize },
    PhiOutOfRange { node: usize, image: usize },
    NotOnto { vertex: VertexId },
    EdgeCount { h_edges: usize, g_edges: usize },
    EdgeImageOutOfRange { h_edge: EdgeId, image: EdgeId },
    EdgeImageRepeated { g_edge: EdgeId },
    EndpointMismatch { h_edge: EdgeId, g_edge: EdgeId },
    Disconnected,
    DegreeExceeded { node: usize, degree: usize, bound: usize },
    NotATree,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PhiLength { nodes, phi } => {
                write!(f, "phi has {phi} entries for {nodes} nodes")
            }
            Violation::PhiOutOfRange { node, image } => {
                write!(f, "node {node} maps to nonexistent vertex {image}")
            }
            Violation::NotOnto { vertex } => write!(f, "vertex {vertex} has no preimage"),
            Violation::EdgeCount { h_edges, g_edges } => {
                write!(f, "preimage has {h_edges} edges, image has {g_edges}")
            }
            Violation::EdgeImageOutOfRange { h_edge, image } => {
                write!(f, "preimage edge {h_edge} maps to nonexistent edge {image}")
            }
            Violation::EdgeImageRepeated { g_edge } => {
                write!(f, "edge {g_edge} is the image of more than one preimage edge")
            }
            Violation::EndpointMismatch { h_edge, g_edge } => {
                write!(f, "preimage edge {h_edge} does not map onto the ends of edge {g_edge}")
            }
            Violation::Disconnected => write!(f, "preimage is not connected"),
            Violation::DegreeExceeded { node, degree, bound } => {
                write!(f, "node {node} has degree {degree} > {bound}")
            }
            Violation::NotATree => write!(f, "preimage is not a tree"),
        }
    }
}

impl PreimageWitness {
    /// The trivial witness `H = G` with the identity maps.
    pub fn identity(g: &MultiGraph) -> Self {
        PreimageWitness {
            h: g.clone(),
            phi: (0..g.n()).collect(),
            edge_map: (0..g.m()).collect(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.h.n()
    }

    pub fn max_degree(&self) -> usize {
        self.h.max_degree()
    }

    pub fn is_tree(&self) -> bool {
        self.h.m() + 1 == self.h.n() && self.h.is_connected()
    }

    /// `|phi^-1(v)|` for every `v < n`.
    pub fn multiplicities(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for &v in &self.phi {
            if v < n {
                out[v] += 1;
            }
        }
        out
    }

    pub fn fiber(&self, v: VertexId) -> Vec<usize> {
        (0..self.phi.len()).filter(|&w| self.phi[w] == v).collect()
    }

    /// Renaming-invariant description: for each node, its image and the
    /// sorted image edges at it.
    pub fn signature(&self) -> Vec<(VertexId, Vec<EdgeId>)> {
        let mut sig: Vec<(VertexId, Vec<EdgeId>)> = (0..self.h.n())
            .map(|w| {
                let mut es: Vec<EdgeId> =
                    self.h.incident(w).iter().map(|&f| self.edge_map[f]).collect();
                es.sort_unstable();
                (self.phi[w], es)
            })
            .collect();
        sig.sort();
        sig
    }

    pub fn to_json(&self, image_edges: Option<&[EdgeId]>) -> WitnessJson {
        WitnessJson {
            nodes: self
                .phi
                .iter()
                .enumerate()
                .map(|(id, &image)| NodeJson { id, image })
                .collect(),
            edges: self
                .h
                .edges()
                .iter()
                .enumerate()
                .map(|(id, &(u, v))| EdgeJson {
                    id,
                    u,
                    v,
                    image_edge: match image_edges {
                        Some(map) => map[self.edge_map[id]],
                        None => self.edge_map[id],
                    },
                })
                .collect(),
        }
    }
}

/// Universal soundness check: every witness the crate emits passes this
/// with its claimed degree bound.
pub fn verify_witness(
    g: &MultiGraph,
    wit: &PreimageWitness,
    k: usize,
) -> std::result::Result<(), Violation> {
    let h = &wit.h;
    if wit.phi.len() != h.n() {
        return Err(Violation::PhiLength { nodes: h.n(), phi: wit.phi.len() });
    }
    let mut hit = vec![false; g.n()];
    for (node, &image) in wit.phi.iter().enumerate() {
        if image >= g.n() {
            return Err(Violation::PhiOutOfRange { node, image });
        }
        hit[image] = true;
    }
    if let Some(vertex) = hit.iter().position(|&b| !b) {
        return Err(Violation::NotOnto { vertex });
    }
    if wit.edge_map.len() != h.m() || h.m() != g.m() {
        return Err(Violation::EdgeCount { h_edges: h.m(), g_edges: g.m() });
    }
    let mut used = vec![false; g.m()];
    for (f, &e) in wit.edge_map.iter().enumerate() {
        if e >= g.m() {
            return Err(Violation::EdgeImageOutOfRange { h_edge: f, image: e });
        }
        if std::mem::replace(&mut used[e], true) {
            return Err(Violation::EdgeImageRepeated { g_edge: e });
        }
        let (a, b) = h.endpoints(f);
        let (pa, pb) = (wit.phi[a], wit.phi[b]);
        let (u, v) = g.endpoints(e);
        if !((pa == u && pb == v) || (pa == v && pb == u)) {
            return Err(Violation::EndpointMismatch { h_edge: f, g_edge: e });
        }
    }
    if !h.is_connected() {
        return Err(Violation::Disconnected);
    }
    for w in 0..h.n() {
        let d = h.degree(w);
        if d > k {
            return Err(Violation::DegreeExceeded { node: w, degree: d, bound: k });
        }
    }
    Ok(())
}

fn require_valid(g: &MultiGraph, wit: &PreimageWitness) -> Result<()> {
    verify_witness(g, wit, usize::MAX).map_err(Error::InvalidWitness)
}

fn require_tree(g: &MultiGraph, wit: &PreimageWitness) -> Result<()> {
    require_valid(g, wit)?;
    if !wit.is_tree() {
        return Err(Error::InvalidWitness(Violation::NotATree));
    }
    Ok(())
}

/// Turn any witness into a tree witness by detaching cycle edges onto fresh
/// leaves. The result has exactly `|E| + 1` nodes; no degree grows and no
/// multiplicity shrinks.
pub fn split_into_tree(g: &MultiGraph, wit: &PreimageWitness) -> Result<PreimageWitness> {
    require_valid(g, wit)?;
    let h = &wit.h;
    let n = h.n();
    // DFS tree from node 0; every other edge closes a cycle with it
    let mut in_tree = vec![false; h.m()];
    let mut seen = vec![false; n];
    let mut stack = vec![(0usize, 0usize)];
    seen[0] = true;
    while let Some(top) = stack.last_mut() {
        let (u, idx) = *top;
        if idx < h.incident(u).len() {
            top.1 += 1;
            let f = h.incident(u)[idx];
            let w = h.other_end(f, u);
            if !seen[w] {
                seen[w] = true;
                in_tree[f] = true;
                stack.push((w, 0));
            }
        } else {
            stack.pop();
        }
    }
    let mut phi = wit.phi.clone();
    let mut edges = h.edges().to_vec();
    for f in 0..h.m() {
        if in_tree[f] {
            continue;
        }
        // keep w1, hand the w2 end to a new leaf x with phi(x) = phi(w2)
        let (w1, w2) = edges[f];
        let x = phi.len();
        phi.push(phi[w2]);
        edges[f] = (w1, x);
    }
    let out = PreimageWitness {
        h: MultiGraph::new(phi.len(), edges)?,
        phi,
        edge_map: wit.edge_map.clone(),
    };
    debug_assert!(out.is_tree());
    Ok(out)
}

/// Merge nodes within fibers until the multiplicities equal `target`.
pub fn merge_to_multiplicity(
    g: &MultiGraph,
    wit: &PreimageWitness,
    target: &[usize],
) -> Result<PreimageWitness> {
    require_valid(g, wit)?;
    if target.len() != g.n() {
        return Err(Error::usage(format!(
            "target has {} entries for {} vertices",
            target.len(),
            g.n()
        )));
    }
    let current = wit.multiplicities(g.n());
    for v in 0..g.n() {
        if target[v] == 0 || target[v] > current[v] {
            return Err(Error::usage(format!(
                "target multiplicity {} at vertex {v} outside 1..={}",
                target[v], current[v]
            )));
        }
    }
    // keep the first target(v) - 1 nodes of each fiber, fold the rest into
    // the next one
    let mut rep: Vec<usize> = (0..wit.node_count()).collect();
    for v in 0..g.n() {
        let fiber = wit.fiber(v);
        let keep = target[v] - 1;
        for &w in &fiber[keep..] {
            rep[w] = fiber[keep];
        }
    }
    let mut new_id = vec![usize::MAX; wit.node_count()];
    let mut phi = Vec::new();
    for w in 0..wit.node_count() {
        if rep[w] == w {
            new_id[w] = phi.len();
            phi.push(wit.phi[w]);
        }
    }
    let edges = wit
        .h
        .edges()
        .iter()
        .map(|&(a, b)| (new_id[rep[a]], new_id[rep[b]]))
        .collect();
    Ok(PreimageWitness {
        h: MultiGraph::new(phi.len(), edges)?,
        phi,
        edge_map: wit.edge_map.clone(),
    })
}

/// Equalize degrees inside every fiber of a tree witness: afterwards each
/// node over `v` has degree `floor(deg(v)/lambda(v))` or the ceiling.
pub fn balance_degrees(g: &MultiGraph, wit: &PreimageWitness) -> Result<PreimageWitness> {
    require_tree(g, wit)?;
    let n = wit.node_count();
    let mut edges = wit.h.edges().to_vec();
    let fibers: Vec<Vec<usize>> = (0..g.n()).map(|v| wit.fiber(v)).collect();
    let potential = |edges: &[(usize, usize)]| -> usize {
        let mut deg = vec![0usize; n];
        for &(a, b) in edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg.iter().map(|d| d * d).sum()
    };
    let budget = potential(&edges);
    let mut steps = 0usize;
    while let Some((f, w, w2)) = find_unbalanced(n, &edges, &fibers) {
        let (a, b) = edges[f];
        edges[f] = if a == w { (w2, b) } else { (a, w2) };
        steps += 1;
        assert!(steps <= budget, "balancing exceeded its potential bound");
    }
    Ok(PreimageWitness {
        h: MultiGraph::new(n, edges)?,
        phi: wit.phi.clone(),
        edge_map: wit.edge_map.clone(),
    })
}

/// Lexicographically smallest violating `(v, w, w', u)`; returns the edge
/// `{u, w}` to move onto `w'`.
fn find_unbalanced(
    n: usize,
    edges: &[(usize, usize)],
    fibers: &[Vec<usize>],
) -> Option<(EdgeId, usize, usize)> {
    let mut adj: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new(); n];
    for (f, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, f));
        adj[b].push((a, f));
    }
    for fiber in fibers {
        for &w in fiber {
            for &w2 in fiber {
                if adj[w].len() < adj[w2].len() + 2 {
                    continue;
                }
                let toward = next_hop(&adj, w, w2);
                let pick = adj[w]
                    .iter()
                    .filter(|&&(u, _)| u != toward)
                    .min()
                    .copied();
                let (_, f) = pick.expect("a node of degree >= 2 has a neighbour off any path");
                return Some((f, w, w2));
            }
        }
    }
    None
}

/// First node after `from` on the tree path to `to`.
fn next_hop(adj: &[Vec<(usize, EdgeId)>], from: usize, to: usize) -> usize {
    let mut parent = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::from([to]);
    parent[to] = to;
    while let Some(x) = queue.pop_front() {
        if x == from {
            break;
        }
        for &(y, _) in &adj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    parent[from]
}

/// A `k`-trail `(V, U)` inside a larger graph: `edges` lists `U` and the
/// witness is relative to `g.edge_subgraph(edges)`, so H-edge images are
/// positions in `edges`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainedTrail {
    pub edges: Vec<EdgeId>,
    pub witness: PreimageWitness,
}

impl ContainedTrail {
    pub fn subgraph(&self, g: &MultiGraph) -> Result<MultiGraph> {
        g.edge_subgraph(&self.edges)
    }

    pub fn verify(&self, g: &MultiGraph, k: usize) -> Result<()> {
        let mut seen = vec![false; g.m()];
        for &e in &self.edges {
            if e >= g.m() {
                return Err(Error::EdgeOutOfRange { edge: e, m: g.m() });
            }
            if std::mem::replace(&mut seen[e], true) {
                return Err(Error::usage(format!("edge {e} listed twice")));
            }
        }
        verify_witness(&self.subgraph(g)?, &self.witness, k).map_err(Error::InvalidWitness)
    }

    pub fn to_json(&self) -> WitnessJson {
        self.witness.to_json(Some(&self.edges))
    }

    /// Rebuild from JSON whose `image_edge` fields are ids in `g`; `edges`
    /// fixes the order of `U`.
    pub fn from_json(g: &MultiGraph, edges: Vec<EdgeId>, json: &WitnessJson) -> Result<Self> {
        let mut pos = vec![usize::MAX; g.m()];
        for (i, &e) in edges.iter().enumerate() {
            if e >= g.m() {
                return Err(Error::EdgeOutOfRange { edge: e, m: g.m() });
            }
            pos[e] = i;
        }
        let witness = json.to_witness(|e| pos.get(e).copied().filter(|&p| p != usize::MAX))?;
        Ok(ContainedTrail { edges, witness })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    pub image: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    pub image_edge: EdgeId,
}

/// Interchange form `{nodes:[{id, image}], edges:[{id, u, v, image_edge}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<EdgeJson>,
}

impl WitnessJson {
    /// `image_index` translates a JSON `image_edge` into the witness's edge
    /// index space.
    pub fn to_witness(&self, image_index: impl Fn(EdgeId) -> Option<EdgeId>) -> Result<PreimageWitness> {
        let n = self.nodes.len();
        let mut phi = vec![usize::MAX; n];
        for node in &self.nodes {
            if node.id >= n || phi[node.id] != usize::MAX {
                return Err(Error::usage(format!("node ids must be 0..{n} without repeats")));
            }
            phi[node.id] = node.image;
        }
        let m = self.edges.len();
        let mut slots: Vec<Option<((usize, usize), EdgeId)>> = vec![None; m];
        for edge in &self.edges {
            if edge.id >= m || slots[edge.id].is_some() {
                return Err(Error::usage(format!("edge ids must be 0..{m} without repeats")));
            }
            let image = image_index(edge.image_edge).ok_or_else(|| {
                Error::usage(format!("image_edge {} is not in the image graph", edge.image_edge))
            })?;
            slots[edge.id] = Some(((edge.u, edge.v), image));
        }
        let (edges, edge_map): (Vec<_>, Vec<_>) = slots.into_iter().flatten().unzip();
        Ok(PreimageWitness { h: MultiGraph::new(n, edges)?, phi, edge_map })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{seven_vertex_example, seven_vertex_h1, seven_vertex_h2, gen_random_multigraph};
    use proptest::prelude::*;

    fn c3() -> MultiGraph {
        MultiGraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    /// All tree witnesses of C3 obtained by choosing which edge to cut and
    /// which side gets the copy: the brute-force set of tree preimages.
    fn c3_tree_preimage_multiplicities() -> Vec<Vec<usize>> {
        let g = c3();
        let mut out = Vec::new();
        for cut in 0..3 {
            for side in 0..2 {
                let (a, b) = g.endpoints(cut);
                let copied = if side == 0 { a } else { b };
                let mut mult = vec![1; 3];
                mult[copied] += 1;
                out.push(mult);
            }
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn seven_vertex_h2_is_a_three_witness() {
        let g = seven_vertex_example();
        let h2 = seven_vertex_h2();
        assert_eq!(verify_witness(&g, &h2, 3), Ok(()));
        assert!(matches!(
            verify_witness(&g, &h2, 2),
            Err(Violation::DegreeExceeded { .. })
        ));
        assert_eq!(verify_witness(&g, &seven_vertex_h1(), 4), Ok(()));
    }

    #[test]
    fn identity_witness_checks() {
        let g = c3();
        let id = PreimageWitness::identity(&g);
        assert_eq!(verify_witness(&g, &id, 2), Ok(()));
        assert_eq!(
            verify_witness(&g, &id, 1),
            Err(Violation::DegreeExceeded { node: 0, degree: 2, bound: 1 })
        );
    }

    #[test]
    fn violations_are_reported() {
        let g = c3();
        let mut bad = PreimageWitness::identity(&g);
        bad.edge_map = vec![0, 0, 2];
        assert_eq!(verify_witness(&g, &bad, 5), Err(Violation::EdgeImageRepeated { g_edge: 0 }));
        let mut bad = PreimageWitness::identity(&g);
        bad.edge_map = vec![1, 0, 2];
        assert!(matches!(verify_witness(&g, &bad, 5), Err(Violation::EndpointMismatch { .. })));
        let mut bad = PreimageWitness::identity(&g);
        bad.phi = vec![0, 1, 1];
        assert!(matches!(verify_witness(&g, &bad, 5), Err(Violation::NotOnto { vertex: 2 })));
    }

    #[test]
    fn split_tree_is_fixpoint() {
        let g = MultiGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let id = PreimageWitness::identity(&g);
        assert_eq!(split_into_tree(&g, &id).unwrap(), id);
    }

    #[test]
    fn split_c3_gives_a_path() {
        let g = c3();
        let t = split_into_tree(&g, &PreimageWitness::identity(&g)).unwrap();
        assert!(t.is_tree());
        assert_eq!(t.node_count(), 4);
        assert_eq!(t.max_degree(), 2);
        let mult = t.multiplicities(3);
        assert!(c3_tree_preimage_multiplicities().contains(&mult));
        let mut sorted = mult.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 1, 2]);
        assert_eq!(verify_witness(&g, &t, 2), Ok(()));
    }

    #[test]
    fn split_seven_vertex_h1() {
        let g = seven_vertex_example();
        let h1 = seven_vertex_h1();
        let t = split_into_tree(&g, &h1).unwrap();
        assert_eq!(t.node_count(), 12);
        assert!(t.is_tree());
        assert_eq!(verify_witness(&g, &t, h1.max_degree()), Ok(()));
        let before = h1.multiplicities(7);
        let after = t.multiplicities(7);
        assert!(before.iter().zip(&after).all(|(b, a)| a >= b));
    }

    #[test]
    fn merge_examples() {
        let g = c3();
        let path = split_into_tree(&g, &PreimageWitness::identity(&g)).unwrap();
        let same = merge_to_multiplicity(&g, &path, &path.multiplicities(3)).unwrap();
        assert_eq!(same, path);
        let full = merge_to_multiplicity(&g, &path, &[1, 1, 1]).unwrap();
        assert_eq!(full.phi, vec![0, 1, 2]);
        assert_eq!(full.h.edges(), g.edges());
        assert!(merge_to_multiplicity(&g, &path, &[3, 1, 1]).is_err());
        assert!(merge_to_multiplicity(&g, &path, &[0, 1, 1]).is_err());

        let fig = seven_vertex_example();
        let target = seven_vertex_h1().multiplicities(7);
        let merged = merge_to_multiplicity(&fig, &seven_vertex_h2(), &target).unwrap();
        assert_eq!(merged.multiplicities(7), target);
        assert_eq!(merged.multiplicities(7)[1], 1);
        assert_eq!(merged.h.m(), fig.m());
        assert_eq!(verify_witness(&fig, &merged, merged.max_degree()), Ok(()));
    }

    #[test]
    fn balance_examples() {
        // deg(0) = 4 split over two nodes as (3, 1)
        let g = MultiGraph::new(3, vec![(0, 1), (0, 1), (0, 2), (0, 2)]).unwrap();
        // H nodes: a=0 (0), b=1 (0), p=2 (1), q=3 (2), r=4 (2)
        // edges: a-p (e0), b-p (e1), a-q (e2), a-r (e3): a has degree 3, b 1
        let wit = PreimageWitness {
            h: MultiGraph::new(5, vec![(0, 2), (1, 2), (0, 3), (0, 4)]).unwrap(),
            phi: vec![0, 0, 1, 2, 2],
            edge_map: vec![0, 1, 2, 3],
        };
        assert_eq!(verify_witness(&g, &wit, 3), Ok(()));
        let out = balance_degrees(&g, &wit).unwrap();
        assert!(out.is_tree());
        assert_eq!(out.h.degree(0), 2);
        assert_eq!(out.h.degree(1), 2);
        assert_eq!(verify_witness(&g, &out, 2), Ok(()));
        assert_eq!(balance_degrees(&g, &out).unwrap(), out);
    }

    #[test]
    fn balance_seven_over_three() {
        // vertex 0 of degree 7 split into 3 nodes of degrees (5, 1, 1)
        let g = MultiGraph::new(
            3,
            vec![(0, 1), (0, 1), (0, 1), (0, 1), (0, 2), (0, 2), (0, 2)],
        )
        .unwrap();
        // a, b, c over 0; p3..p6 over 1; q7 over 2
        let edges = vec![(0, 3), (0, 4), (0, 5), (0, 6), (0, 7), (1, 7), (2, 7)];
        let wit = PreimageWitness {
            h: MultiGraph::new(8, edges).unwrap(),
            phi: vec![0, 0, 0, 1, 1, 1, 1, 2],
            edge_map: vec![0, 1, 2, 3, 4, 5, 6],
        };
        assert_eq!(verify_witness(&g, &wit, 5), Ok(()));
        assert!(wit.is_tree());
        let out = balance_degrees(&g, &wit).unwrap();
        let mut fiber: Vec<usize> = out.fiber(0).iter().map(|&w| out.h.degree(w)).collect();
        fiber.sort();
        assert_eq!(fiber, vec![2, 2, 3]);
        assert_eq!(out.multiplicities(3), wit.multiplicities(3));
    }

    #[test]
    fn balance_rejects_non_tree() {
        let g = c3();
        assert!(balance_degrees(&g, &PreimageWitness::identity(&g)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = seven_vertex_example();
        let h2 = seven_vertex_h2();
        let json = serde_json::to_string(&h2.to_json(None)).unwrap();
        let back: WitnessJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_witness(Some).unwrap(), h2);
        assert_eq!(verify_witness(&g, &back.to_witness(Some).unwrap(), 3), Ok(()));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn transformations_preserve_validity(n in 2usize..=6, extra in 0usize..=6, seed in any::<u64>()) {
            let g = gen_random_multigraph(n, n - 1 + extra, 0.2, 0.3, seed).unwrap();
            let id = PreimageWitness::identity(&g);
            let tree = split_into_tree(&g, &id).unwrap();
            prop_assert_eq!(tree.node_count(), g.m() + 1);
            prop_assert!(tree.is_tree());
            prop_assert!(tree.max_degree() <= g.max_degree());
            prop_assert_eq!(verify_witness(&g, &tree, tree.max_degree()), Ok(()));

            let bal = balance_degrees(&g, &tree).unwrap();
            prop_assert!(bal.is_tree());
            prop_assert_eq!(bal.multiplicities(n), tree.multiplicities(n));
            prop_assert_eq!(verify_witness(&g, &bal, bal.max_degree()), Ok(()));
            let lambda = bal.multiplicities(n);
            for w in 0..bal.node_count() {
                let v = bal.phi[w];
                let lo = g.degree(v) / lambda[v];
                let hi = g.degree(v).div_ceil(lambda[v]);
                let d = bal.h.degree(w);
                prop_assert!(d == lo || d == hi, "node {} over {}: {} not in [{}, {}]", w, v, d, lo, hi);
            }

            let merged = merge_to_multiplicity(&g, &bal, &vec![1; n]).unwrap();
            prop_assert_eq!(merged.phi, (0..n).collect::<Vec<_>>());
            let mut got: Vec<_> = merged.h.edges().iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
            let mut want: Vec<_> = merged.edge_map.iter().map(|&e| { let (a, b) = g.endpoints(e); (a.min(b), a.max(b)) }).collect();
            got.sort();
            want.sort();
            prop_assert_eq!(got, want);
        }
    }
}
