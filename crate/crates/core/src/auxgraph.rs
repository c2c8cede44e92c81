//! The slot graph `G'`: one vertex per edge end, a matching edge per
//! original edge, and a clique on the slots of every vertex.
//!
//! Spanning trees of `G'` that contain every matching edge are exactly the
//! tree preimages of `G`: contracting the clique-edge components of the tree
//! gives the preimage nodes. [`tree_to_witness`] and [`witness_to_tree`]
//! convert in both directions.
//!
//! Numbering: edge `e = (a, b)` of `G` owns slots `2e` (at `a`) and `2e + 1`
//! (at `b`), and aux edge `e < m` is its matching edge. Clique edges follow,
//! grouped by vertex and ordered by slot pair.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::multigraph::{render_graph, EdgeId, MultiGraph, UnionFind, VertexId};
use crate::preimage::{verify_witness, ContainedTrail, PreimageWitness, Violation};

pub type SlotId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slot {
    pub vertex: VertexId,
    pub edge: EdgeId,
    /// 0 for the first listed endpoint of `edge`, 1 for the second.
    pub end: usize,
}

#[derive(Debug, Clone)]
pub struct AuxGraph {
    graph: MultiGraph,
    gprime: MultiGraph,
    slots: Vec<Slot>,
    part: Vec<Vec<SlotId>>,
    kpart: Vec<Vec<EdgeId>>,
    k_owner: Vec<Option<VertexId>>,
    k_lookup: HashMap<(SlotId, SlotId), EdgeId>,
}

impl AuxGraph {
    /// The original graph `G`.
    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn gprime(&self) -> &MultiGraph {
        &self.gprime
    }

    pub fn slot(&self, s: SlotId) -> Slot {
        self.slots[s]
    }

    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    /// `V'_v`, sorted.
    pub fn part(&self, v: VertexId) -> &[SlotId] {
        &self.part[v]
    }

    /// Clique edges `K_v`, sorted.
    pub fn kpart(&self, v: VertexId) -> &[EdgeId] {
        &self.kpart[v]
    }

    pub fn edge_count(&self) -> usize {
        self.gprime.m()
    }

    pub fn ebar_count(&self) -> usize {
        self.graph.m()
    }

    pub fn k_count(&self) -> usize {
        self.gprime.m() - self.graph.m()
    }

    pub fn is_ebar(&self, aux_edge: EdgeId) -> bool {
        aux_edge < self.graph.m()
    }

    /// Vertex whose clique contains `aux_edge`, `None` for matching edges.
    pub fn k_owner(&self, aux_edge: EdgeId) -> Option<VertexId> {
        self.k_owner[aux_edge]
    }

    pub fn k_edge_between(&self, s: SlotId, t: SlotId) -> Option<EdgeId> {
        self.k_lookup.get(&(s.min(t), s.max(t))).copied()
    }

    /// Number of ends of aux edge `e` inside `V'_v` when `e` is a matching
    /// edge (2 for a loop at `v`), 0 otherwise.
    pub fn ebar_ends_at(&self, e: EdgeId, v: VertexId) -> usize {
        if !self.is_ebar(e) {
            return 0;
        }
        let (a, b) = self.graph.endpoints(e);
        (a == v) as usize + (b == v) as usize
    }

    pub fn to_dot(&self, tree: Option<&AuxTree>) -> String {
        let in_tree: Vec<bool> = match tree {
            Some(t) => {
                let mut mark = vec![false; self.edge_count()];
                for &e in &t.edges {
                    mark[e] = true;
                }
                mark
            }
            None => vec![true; self.edge_count()],
        };
        let mut s = String::from("graph Gprime {\n  node [shape=point];\n");
        for v in 0..self.graph.n() {
            let _ = writeln!(s, "  subgraph cluster_{v} {{\n    label=\"{v}\";");
            for &slot in &self.part[v] {
                let _ = writeln!(s, "    s{slot} [xlabel=\"e{}\"];", self.slots[slot].edge);
            }
            s.push_str("  }\n");
        }
        for (e, &(a, b)) in self.gprime.edges().iter().enumerate() {
            if tree.is_some() && !in_tree[e] {
                continue;
            }
            let style = if self.is_ebar(e) { "bold" } else { "dashed" };
            let _ = writeln!(s, "  s{a} -- s{b} [style={style}];");
        }
        s.push_str("}\n");
        s
    }

    /// `G'` in the graph text format preceded by a `# slot s -> v` map.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (id, slot) in self.slots.iter().enumerate() {
            let _ = writeln!(s, "# slot {id} -> {} (edge {})", slot.vertex, slot.edge);
        }
        let _ = writeln!(s, "# edges 0..{} are matching edges", self.graph.m());
        s.push_str(&render_graph(&self.gprime));
        s
    }
}

pub fn build_aux(g: &MultiGraph) -> Result<AuxGraph> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let m = g.m();
    let mut slots = Vec::with_capacity(2 * m);
    let mut part = vec![Vec::new(); g.n()];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        for (end, v) in [a, b].into_iter().enumerate() {
            part[v].push(slots.len());
            slots.push(Slot { vertex: v, edge: e, end });
        }
    }
    let mut edges: Vec<(SlotId, SlotId)> = (0..m).map(|e| (2 * e, 2 * e + 1)).collect();
    let mut k_owner = vec![None; m];
    let mut kpart = vec![Vec::new(); g.n()];
    let mut k_lookup = HashMap::new();
    for v in 0..g.n() {
        let p = &part[v];
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                let id = edges.len();
                edges.push((p[i], p[j]));
                k_owner.push(Some(v));
                kpart[v].push(id);
                k_lookup.insert((p[i], p[j]), id);
            }
        }
    }
    let gprime = MultiGraph::new(2 * m, edges)?;
    Ok(AuxGraph { graph: g.clone(), gprime, slots, part, kpart, k_owner, k_lookup })
}

/// A spanning tree of `G'`, given by aux edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxTree {
    pub edges: Vec<EdgeId>,
    /// Whether every matching edge is in the tree (the recognition case);
    /// otherwise the tree describes a preimage of the subgraph formed by its
    /// matching edges.
    pub contains_ebar: bool,
}

impl AuxTree {
    pub fn new(aux: &AuxGraph, mut edges: Vec<EdgeId>) -> Result<Self> {
        edges.sort_unstable();
        edges.dedup();
        let nv = aux.slot_count();
        if edges.len() + 1 != nv {
            return Err(Error::usage(format!(
                "a spanning tree of G' has {} edges, got {}",
                nv - 1,
                edges.len()
            )));
        }
        let mut uf = UnionFind::new(nv);
        for &e in &edges {
            if e >= aux.edge_count() {
                return Err(Error::EdgeOutOfRange { edge: e, m: aux.edge_count() });
            }
            let (a, b) = aux.gprime.endpoints(e);
            if !uf.union(a, b) {
                return Err(Error::usage("edge set contains a cycle"));
            }
        }
        let contains_ebar = edges.iter().take_while(|&&e| aux.is_ebar(e)).count() == aux.ebar_count();
        Ok(AuxTree { edges, contains_ebar })
    }

    /// `|T ∩ K_v|` per vertex.
    pub fn alpha(&self, aux: &AuxGraph) -> Vec<usize> {
        let mut out = vec![0; aux.graph.n()];
        for &e in &self.edges {
            if let Some(v) = aux.k_owner(e) {
                out[v] += 1;
            }
        }
        out
    }
}

/// Contract the clique-edge components of `t`. The image is the subgraph
/// formed by the tree's matching edges (all of `G` when `t` contains every
/// matching edge); nodes are numbered by their smallest slot.
pub fn tree_to_witness(aux: &AuxGraph, t: &AuxTree) -> Result<ContainedTrail> {
    let t = AuxTree::new(aux, t.edges.clone())?;
    let nv = aux.slot_count();
    let mut uf = UnionFind::new(nv);
    for &e in &t.edges {
        if !aux.is_ebar(e) {
            let (a, b) = aux.gprime.endpoints(e);
            uf.union(a, b);
        }
    }
    let mut node_of_root = vec![usize::MAX; nv];
    let mut node_of_slot = vec![0; nv];
    let mut phi = Vec::new();
    for s in 0..nv {
        let r = uf.find(s);
        if node_of_root[r] == usize::MAX {
            node_of_root[r] = phi.len();
            phi.push(aux.slots[s].vertex);
        }
        node_of_slot[s] = node_of_root[r];
    }
    let image: Vec<EdgeId> = t.edges.iter().copied().filter(|&e| aux.is_ebar(e)).collect();
    let h_edges = image
        .iter()
        .map(|&e| (node_of_slot[2 * e], node_of_slot[2 * e + 1]))
        .collect();
    let witness = PreimageWitness {
        h: MultiGraph::new(phi.len().max(2), h_edges)?,
        edge_map: (0..image.len()).collect(),
        phi,
    };
    Ok(ContainedTrail { edges: image, witness })
}

/// Inverse of [`tree_to_witness`] for tree witnesses of all of `G`: all
/// matching edges plus, for every node, a path through the slots of its
/// incident edges.
pub fn witness_to_tree(aux: &AuxGraph, wit: &PreimageWitness) -> Result<AuxTree> {
    let g = &aux.graph;
    verify_witness(g, wit, usize::MAX).map_err(Error::InvalidWitness)?;
    if !wit.is_tree() {
        return Err(Error::InvalidWitness(Violation::NotATree));
    }
    let mut edges: Vec<EdgeId> = (0..g.m()).collect();
    for w in 0..wit.node_count() {
        let mut slots: Vec<SlotId> = wit
            .h
            .incident(w)
            .iter()
            .map(|&f| {
                let e = wit.edge_map[f];
                let (a, b) = g.endpoints(e);
                if a != b {
                    if a == wit.phi[w] {
                        2 * e
                    } else {
                        2 * e + 1
                    }
                } else if wit.h.endpoints(f).0 == w {
                    2 * e
                } else {
                    2 * e + 1
                }
            })
            .collect();
        slots.sort_unstable();
        for pair in slots.windows(2) {
            let k = aux
                .k_edge_between(pair[0], pair[1])
                .expect("slots of one node lie over one vertex");
            edges.push(k);
        }
    }
    AuxTree::new(aux, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{cycle, seven_vertex_example, seven_vertex_h2, gen_random_multigraph};
    use crate::preimage::{balance_degrees, split_into_tree};
    use proptest::prelude::*;

    #[test]
    fn sizes() {
        let single = MultiGraph::new(2, vec![(0, 1)]).unwrap();
        let a = build_aux(&single).unwrap();
        assert_eq!((a.slot_count(), a.ebar_count(), a.k_count()), (2, 1, 0));

        let a = build_aux(&cycle(3)).unwrap();
        assert_eq!((a.slot_count(), a.ebar_count(), a.k_count()), (6, 3, 3));
        assert!((0..3).all(|v| a.kpart(v).len() == 1));

        let g = seven_vertex_example();
        let a = build_aux(&g).unwrap();
        assert_eq!(a.slot_count(), 22);
        assert_eq!(a.ebar_count(), 11);
        let counts: Vec<usize> = (0..7).map(|v| a.part(v).len()).collect();
        assert_eq!(counts, vec![3, 4, 4, 3, 4, 1, 3]);
        let expect_k: usize = g.degrees().iter().map(|d| d * (d - 1) / 2).sum();
        assert_eq!(a.k_count(), expect_k);
        // the loop at vertex 7 gives two slots inside V'_7 joined by its matching edge
        let (s, t) = a.gprime().endpoints(10);
        assert_eq!((a.slot(s).vertex, a.slot(t).vertex), (6, 6));

        let disconnected = MultiGraph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        assert!(matches!(build_aux(&disconnected), Err(Error::Disconnected)));
    }

    #[test]
    fn c3_contraction() {
        let g = cycle(3);
        let a = build_aux(&g).unwrap();
        // keep K_0 and K_1, drop K_2
        let t = AuxTree::new(&a, vec![0, 1, 2, a.kpart(0)[0], a.kpart(1)[0]]).unwrap();
        assert!(t.contains_ebar);
        let out = tree_to_witness(&a, &t).unwrap();
        assert_eq!(out.edges, vec![0, 1, 2]);
        let w = out.witness;
        assert_eq!(w.multiplicities(3), vec![1, 1, 2]);
        assert!(w.is_tree());
        assert_eq!(w.max_degree(), 2);
        assert_eq!(verify_witness(&g, &w, 2), Ok(()));
        let back = witness_to_tree(&a, &w).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn identity_on_a_tree() {
        let g = MultiGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let a = build_aux(&g).unwrap();
        let id = PreimageWitness::identity(&g);
        let t = witness_to_tree(&a, &id).unwrap();
        assert_eq!(t.alpha(&a), vec![0, 1, 0]);
        assert_eq!(tree_to_witness(&a, &t).unwrap().witness, id);
    }

    #[test]
    fn rejects_non_trees() {
        let g = cycle(3);
        let a = build_aux(&g).unwrap();
        assert!(AuxTree::new(&a, vec![0, 1, 2]).is_err());
        assert!(witness_to_tree(&a, &PreimageWitness::identity(&g)).is_err());
    }

    #[test]
    fn seven_vertex_h2_round_trip() {
        let g = seven_vertex_example();
        let a = build_aux(&g).unwrap();
        let tree = split_into_tree(&g, &seven_vertex_h2()).unwrap();
        let t = witness_to_tree(&a, &tree).unwrap();
        let lambda = tree.multiplicities(7);
        let alpha = t.alpha(&a);
        for v in 0..7 {
            assert_eq!(alpha[v], g.degree(v) - lambda[v]);
        }
        assert_eq!(alpha.iter().sum::<usize>(), g.m() - 1);
        let back = tree_to_witness(&a, &t).unwrap();
        assert_eq!(back.witness.signature(), tree.signature());
    }

    #[test]
    fn dump_and_dot() {
        let a = build_aux(&cycle(3)).unwrap();
        let dump = a.dump();
        assert!(dump.contains("# slot 0 -> 0 (edge 0)"));
        let parsed = crate::multigraph::parse_graph(&dump).unwrap();
        assert_eq!(&parsed.graph, a.gprime());
        assert!(a.to_dot(None).contains("subgraph cluster_2"));
    }

    fn random_aux_tree(a: &AuxGraph, seed: u64) -> AuxTree {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut ks: Vec<EdgeId> = (a.ebar_count()..a.edge_count()).collect();
        ks.shuffle(&mut rng);
        let mut uf = UnionFind::new(a.slot_count());
        let mut edges: Vec<EdgeId> = (0..a.ebar_count()).collect();
        for e in 0..a.ebar_count() {
            let (x, y) = a.gprime().endpoints(e);
            uf.union(x, y);
        }
        for e in ks {
            let (x, y) = a.gprime().endpoints(e);
            if uf.union(x, y) {
                edges.push(e);
            }
        }
        AuxTree::new(a, edges).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn witness_tree_round_trip(n in 2usize..=6, extra in 0usize..=5, seed in any::<u64>()) {
            let g = gen_random_multigraph(n, n - 1 + extra, 0.2, 0.3, seed).unwrap();
            let a = build_aux(&g).unwrap();
            let t = random_aux_tree(&a, seed ^ 0x5eed);
            let alpha = t.alpha(&a);
            prop_assert_eq!(alpha.iter().sum::<usize>(), g.m() - 1);
            let out = tree_to_witness(&a, &t).unwrap();
            prop_assert_eq!(&out.edges, &(0..g.m()).collect::<Vec<_>>());
            let w = out.witness;
            let lambda = w.multiplicities(n);
            for v in 0..n {
                prop_assert_eq!(lambda[v], g.degree(v) - alpha[v]);
            }
            // node degree equals component size when T ⊇ Ē
            let mut biggest = 0;
            for node in 0..w.node_count() {
                biggest = biggest.max(w.h.degree(node));
            }
            prop_assert_eq!(verify_witness(&g, &w, biggest), Ok(()));
            prop_assert_eq!(w.max_degree(), biggest);
            let back = witness_to_tree(&a, &w).unwrap();
            let again = tree_to_witness(&a, &back).unwrap().witness;
            prop_assert_eq!(again.signature(), w.signature());
            // balancing keeps a valid tree witness that maps back to some tree
            let bal = balance_degrees(&g, &w).unwrap();
            let bt = witness_to_tree(&a, &bal).unwrap();
            prop_assert_eq!(tree_to_witness(&a, &bt).unwrap().witness.signature(), bal.signature());
        }
    }
}
