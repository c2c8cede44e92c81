//! Undirected multigraphs with loops and parallel edges.
//!
//! Vertices and edges are dense integer ids. A loop is a single edge whose
//! endpoints coincide and contributes two to the degree of its vertex.
//! Parallel edges are never merged.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    // edge ids incident to each vertex; a loop appears twice
    incidence: Vec<Vec<EdgeId>>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewVertices(n));
        }
        let mut incidence = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            incidence[u].push(id);
            incidence[v].push(id);
        }
        Ok(MultiGraph { n, edges, incidence })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (u, v) = self.edges[e];
        u == v
    }

    /// Edges at `v`, loops listed twice.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    /// The endpoint of `e` opposite to `v`.
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    pub fn checked_degree(&self, v: VertexId) -> Result<usize> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(self.degree(v))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incidence.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        uf.count()
    }

    /// Spanning subgraph on the same vertices keeping `edges` in the given
    /// order; edge `i` of the result is `edges[i]` of `self`.
    pub fn edge_subgraph(&self, edges: &[EdgeId]) -> Result<MultiGraph> {
        let mut out = Vec::with_capacity(edges.len());
        for &e in edges {
            if e >= self.m() {
                return Err(Error::EdgeOutOfRange { edge: e, m: self.m() });
            }
            out.push(self.edges[e]);
        }
        MultiGraph::new(self.n, out)
    }

    /// Vertices reachable from `start` using only edges with `allowed[e]`.
    pub fn reachable(&self, start: VertexId, allowed: impl Fn(EdgeId) -> bool) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(u) = queue.pop_front() {
            for &e in &self.incidence[u] {
                if !allowed(e) {
                    continue;
                }
                let w = self.other_end(e, u);
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Edges whose removal disconnects their component. Loops and edges with
    /// a parallel twin are never bridges.
    pub fn bridges(&self) -> Vec<EdgeId> {
        // iterative lowpoint DFS keyed by edge id so parallel edges are handled
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut out = Vec::new();
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // (vertex, parent edge, next incidence index)
            let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(top) = stack.last_mut() {
                let (u, pe, idx) = *top;
                if idx < self.incidence[u].len() {
                    let e = self.incidence[u][idx];
                    top.2 += 1;
                    if Some(e) == pe || self.is_loop(e) {
                        continue;
                    }
                    let w = self.other_end(e, u);
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, Some(e), 0));
                    } else {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let (Some(e), Some(&(p, _, _))) = (pe, stack.last()) {
                        low[p] = low[p].min(low[u]);
                        if low[u] > disc[p] {
                            out.push(e);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    count: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            count: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.count -= 1;
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn count(&self) -> usize {
        self.count
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedMultiGraph {
    pub graph: MultiGraph,
    pub weights: Vec<i64>,
}

impl WeightedMultiGraph {
    pub fn new(graph: MultiGraph, weights: Vec<i64>) -> Result<Self> {
        if weights.len() != graph.m() {
            return Err(Error::usage(format!(
                "{} weights for {} edges",
                weights.len(),
                graph.m()
            )));
        }
        Ok(WeightedMultiGraph { graph, weights })
    }

    pub fn uniform(graph: MultiGraph, w: i64) -> Self {
        let weights = vec![w; graph.m()];
        WeightedMultiGraph { graph, weights }
    }

    pub fn weight_of(&self, edges: &[EdgeId]) -> i64 {
        edges.iter().map(|&e| self.weights[e]).sum()
    }
}

/// Result of reading the text format: weights are present only when every
/// edge line carried one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: MultiGraph,
    pub weights: Option<Vec<i64>>,
}

impl ParsedGraph {
    /// Weighted view; an unweighted file gets unit weights.
    pub fn into_weighted(self) -> WeightedMultiGraph {
        match self.weights {
            Some(w) => WeightedMultiGraph { graph: self.graph, weights: w },
            None => WeightedMultiGraph::uniform(self.graph, 1),
        }
    }
}

/// Parse the `p ktrail <n> <m>` / `e <u> <v> [w]` text format.
pub fn parse_graph(text: &str) -> Result<ParsedGraph> {
    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut weights: Vec<Option<i64>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "p" => {
                if header.is_some() {
                    return Err(perr(lineno, "duplicate header".into()));
                }
                if toks.len() != 4 || toks[1] != "ktrail" {
                    return Err(perr(lineno, "expected `p ktrail <n> <m>`".into()));
                }
                let n: usize = toks[2]
                    .parse()
                    .map_err(|_| perr(lineno, format!("bad vertex count {:?}", toks[2])))?;
                let m: usize = toks[3]
                    .parse()
                    .map_err(|_| perr(lineno, format!("bad edge count {:?}", toks[3])))?;
                if n < 2 {
                    return Err(perr(lineno, format!("need at least 2 vertices, got {n}")));
                }
                header = Some((n, m, lineno));
            }
            "e" => {
                let Some((n, _, _)) = header else {
                    return Err(perr(lineno, "edge line before header".into()));
                };
                if toks.len() != 3 && toks.len() != 4 {
                    return Err(perr(lineno, "expected `e <u> <v> [w]`".into()));
                }
                let mut ends = [0usize; 2];
                for (slot, tok) in ends.iter_mut().zip(&toks[1..3]) {
                    let x: usize = tok
                        .parse()
                        .map_err(|_| perr(lineno, format!("bad vertex {tok:?}")))?;
                    if x >= n {
                        return Err(perr(lineno, format!("vertex {x} out of range (n = {n})")));
                    }
                    *slot = x;
                }
                let w = match toks.get(3) {
                    Some(tok) => Some(
                        tok.parse::<i64>()
                            .map_err(|_| perr(lineno, format!("bad weight {tok:?}")))?,
                    ),
                    None => None,
                };
                edges.push((ends[0], ends[1]));
                weights.push(w);
            }
            other => return Err(perr(lineno, format!("unknown line type {other:?}"))),
        }
    }
    let Some((n, m, hline)) = header else {
        return Err(perr(1, "missing `p ktrail` header".into()));
    };
    if edges.len() != m {
        return Err(perr(
            hline,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    let weighted = weights.iter().filter(|w| w.is_some()).count();
    let weights = if weighted == 0 {
        None
    } else if weighted == m {
        Some(weights.into_iter().flatten().collect())
    } else {
        return Err(perr(hline, "either all edges carry a weight or none does".into()));
    };
    let graph = MultiGraph::new(n, edges)?;
    Ok(ParsedGraph { graph, weights })
}

pub fn render_graph(g: &MultiGraph) -> String {
    let mut s = format!("p ktrail {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "e {u} {v}");
    }
    s
}

pub fn render_weighted(g: &WeightedMultiGraph) -> String {
    let mut s = format!("p ktrail {} {}\n", g.graph.n(), g.graph.m());
    for (&(u, v), w) in g.graph.edges().iter().zip(&g.weights) {
        let _ = writeln!(s, "e {u} {v} {w}");
    }
    s
}

/// Graphviz export; parallel edges stay parallel and loops become self-edges.
pub fn to_dot(g: &MultiGraph, weights: Option<&[i64]>) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..g.n() {
        let _ = writeln!(s, "  {v};");
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        match weights {
            Some(w) => {
                let _ = writeln!(s, "  {u} -- {v} [id=\"e{e}\", label=\"{}\"];", w[e]);
            }
            None => {
                let _ = writeln!(s, "  {u} -- {v} [id=\"e{e}\"];");
            }
        }
    }
    s.push_str("}\n");
    s
}
