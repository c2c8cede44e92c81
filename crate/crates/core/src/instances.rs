//! Instance generators: the reduction gadget from cubic Hamiltonian path,
//! the ring-with-pendants integrality-gap family, random multigraphs, and
//! a few fixed graphs used throughout the tests and examples.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::multigraph::{MultiGraph, WeightedMultiGraph};
use crate::preimage::PreimageWitness;

fn is_simple(g: &MultiGraph) -> bool {
    let mut seen = std::collections::HashSet::new();
    g.edges()
        .iter()
        .all(|&(u, v)| u != v && seen.insert((u.min(v), u.max(v))))
}

/// Attach `k - 2` pendant vertices to every vertex of a cubic graph. The
/// output contains a `k`-trail exactly when the input has a Hamiltonian
/// path. Pendants of vertex `v` get ids `n + v*(k-2) .. n + (v+1)*(k-2)`.
pub fn gen_hardness_gadget(cubic: &MultiGraph, k: usize) -> Result<MultiGraph> {
    if k < 2 {
        return Err(Error::usage("gadget needs k >= 2"));
    }
    if !is_simple(cubic) || (0..cubic.n()).any(|v| cubic.degree(v) != 3) {
        return Err(Error::usage("gadget input must be a simple 3-regular graph"));
    }
    let n = cubic.n();
    let extra = k - 2;
    let mut edges = cubic.edges().to_vec();
    for v in 0..n {
        for i in 0..extra {
            edges.push((v, n + v * extra + i));
        }
    }
    MultiGraph::new(n + n * extra, edges)
}

/// Ring `v1..vn` with single edges `v1v2`, `vnv1` and doubled edges
/// `v_i v_{i+1}` for `2 <= i <= n-1`, padded with pendants so that every ring
/// vertex has degree `2k - 1`. Every edge gets weight `weight`.
pub fn gen_gap_instance(k: usize, n: usize, weight: i64) -> Result<WeightedMultiGraph> {
    if k < 3 || n < k {
        return Err(Error::usage(format!("gap instance needs k >= 3 and n >= k (k = {k}, n = {n})")));
    }
    let mut edges = vec![(0, 1)];
    for i in 1..n - 1 {
        edges.push((i, i + 1));
        edges.push((i, i + 1));
    }
    edges.push((n - 1, 0));
    let mut ring_deg = vec![0usize; n];
    for &(u, v) in &edges {
        ring_deg[u] += 1;
        ring_deg[v] += 1;
    }
    let mut next = n;
    for (v, &d) in ring_deg.iter().enumerate() {
        let pendants = 2 * k - 1 - d;
        let labelled = match v {
            0 => 2 * k - 3,
            _ if v == 1 || v == n - 1 => 2 * k - 4,
            _ => 2 * k - 5,
        };
        assert_eq!(pendants, labelled, "pendant count at ring vertex {v}");
        for _ in 0..pendants {
            edges.push((v, next));
            next += 1;
        }
    }
    let graph = MultiGraph::new(next, edges)?;
    Ok(WeightedMultiGraph::uniform(graph, weight))
}

/// Connected random multigraph: a random spanning tree plus `m - n + 1`
/// extra edges, each a loop with probability `loop_p`, a copy of an existing
/// edge with probability `parallel_p`, and a fresh random pair otherwise.
pub fn gen_random_multigraph(
    n: usize,
    m: usize,
    loop_p: f64,
    parallel_p: f64,
    seed: u64,
) -> Result<MultiGraph> {
    if n < 2 {
        return Err(Error::TooFewVertices(n));
    }
    if m + 1 < n {
        return Err(Error::usage(format!("{m} edges cannot connect {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut edges = Vec::with_capacity(m);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((order[i], order[j]));
    }
    while edges.len() < m {
        let r: f64 = rng.gen();
        if r < loop_p {
            let v = rng.gen_range(0..n);
            edges.push((v, v));
        } else if r < loop_p + parallel_p && !edges.is_empty() {
            let e = edges[rng.gen_range(0..edges.len())];
            edges.push(e);
        } else {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            edges.push((u, v));
        }
    }
    edges.shuffle(&mut rng);
    MultiGraph::new(n, edges)
}

/// Random integer weights in `lo..=hi`.
pub fn random_weights(m: usize, lo: i64, hi: i64, seed: u64) -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m).map(|_| rng.gen_range(lo..=hi)).collect()
}

/// All pairwise non-isomorphic simple 3-regular graphs on `n` vertices,
/// disconnected ones included.
pub fn cubic_graphs(n: usize) -> Vec<MultiGraph> {
    if n < 4 || n % 2 == 1 {
        return Vec::new();
    }
    let mut reps: Vec<Vec<Vec<bool>>> = Vec::new();
    let mut adj = vec![vec![false; n]; n];
    let mut deg = vec![0usize; n];
    // vertex 0 is adjacent to 1, 2, 3 in some labelling of every cubic graph
    for v in 1..=3 {
        adj[0][v] = true;
        adj[v][0] = true;
        deg[v] = 1;
    }
    deg[0] = 3;
    extend_cubic(&mut adj, &mut deg, &mut reps);
    reps.into_iter()
        .map(|a| {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if a[u][v] {
                        edges.push((u, v));
                    }
                }
            }
            MultiGraph::new(n, edges).expect("n >= 4")
        })
        .collect()
}

fn extend_cubic(adj: &mut Vec<Vec<bool>>, deg: &mut Vec<usize>, reps: &mut Vec<Vec<Vec<bool>>>) {
    let n = adj.len();
    let Some(u) = (0..n).find(|&v| deg[v] < 3) else {
        if !reps.iter().any(|r| isomorphic(r, adj)) {
            reps.push(adj.clone());
        }
        return;
    };
    for v in u + 1..n {
        if deg[v] < 3 && !adj[u][v] {
            adj[u][v] = true;
            adj[v][u] = true;
            deg[u] += 1;
            deg[v] += 1;
            extend_cubic(adj, deg, reps);
            adj[u][v] = false;
            adj[v][u] = false;
            deg[u] -= 1;
            deg[v] -= 1;
        }
    }
}

fn isomorphic(a: &[Vec<bool>], b: &[Vec<bool>]) -> bool {
    fn go(a: &[Vec<bool>], b: &[Vec<bool>], map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == a.len() {
            return true;
        }
        for x in 0..b.len() {
            if used[x] || (0..i).any(|j| a[i][j] != b[x][map[j]]) {
                continue;
            }
            used[x] = true;
            map.push(x);
            if go(a, b, map, used) {
                return true;
            }
            map.pop();
            used[x] = false;
        }
        false
    }
    a.len() == b.len() && go(a, b, &mut Vec::new(), &mut vec![false; b.len()])
}

/// All connected multigraphs (loops and parallel edges allowed) on `n`
/// vertices with `n − 1 ..= max_m` edges, one per isomorphism class, in
/// order of edge count. Refuses `n > 6`.
pub fn connected_multigraphs(n: usize, max_m: usize) -> Result<Vec<MultiGraph>> {
    if !(2..=6).contains(&n) {
        return Err(Error::usage(format!("connected_multigraphs supports 2..=6 vertices, got {n}")));
    }
    let kinds: Vec<(usize, usize)> = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let mut out = Vec::new();
    for m in n - 1..=max_m {
        let mut seen = std::collections::HashSet::new();
        let mut pick = vec![0usize; m];
        loop {
            let edges: Vec<(usize, usize)> = pick.iter().map(|&i| kinds[i]).collect();
            let g = MultiGraph::new(n, edges.clone()).expect("n >= 2");
            if g.is_connected() {
                let canon = perms
                    .iter()
                    .map(|p| {
                        let mut e: Vec<(usize, usize)> = edges
                            .iter()
                            .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
                            .collect();
                        e.sort_unstable();
                        e
                    })
                    .min()
                    .unwrap();
                if seen.insert(canon.clone()) {
                    out.push(MultiGraph::new(n, canon).expect("n >= 2"));
                }
            }
            // next nondecreasing index sequence
            let Some(i) = (0..m).rev().find(|&i| pick[i] + 1 < kinds.len()) else { break };
            let next = pick[i] + 1;
            for slot in pick[i..].iter_mut() {
                *slot = next;
            }
        }
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// The seven-vertex example graph with two double edges and a loop at
/// vertex 7 (ids shifted to 0..=6).
pub fn seven_vertex_example() -> MultiGraph {
    MultiGraph::new(
        7,
        vec![
            (0, 1),
            (0, 2),
            (0, 2),
            (1, 2),
            (1, 3),
            (1, 3),
            (2, 4),
            (3, 4),
            (4, 5),
            (4, 6),
            (6, 6),
        ],
    )
    .expect("static graph")
}

/// Preimage of [`seven_vertex_example`] with vertices 3, 5 and 7 split in two; its
/// maximum degree is 4.
pub fn seven_vertex_h1() -> PreimageWitness {
    // nodes: 1 2 3a 3b 4 5a 5b 6 7a 7b
    PreimageWitness {
        h: MultiGraph::new(
            10,
            vec![
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 4),
                (1, 4),
                (3, 6),
                (4, 5),
                (5, 8),
                (6, 7),
                (8, 9),
            ],
        )
        .expect("static graph"),
        phi: vec![0, 1, 2, 2, 3, 4, 4, 5, 6, 6],
        edge_map: vec![0, 1, 2, 3, 4, 5, 6, 7, 9, 8, 10],
    }
}

/// Preimage of [`seven_vertex_example`] with vertices 2, 3, 5 and 7 split in two; its
/// maximum degree is 3.
pub fn seven_vertex_h2() -> PreimageWitness {
    // nodes: 1 2a 2b 3a 3b 4 5a 5b 6 7a 7b
    PreimageWitness {
        h: MultiGraph::new(
            11,
            vec![
                (0, 1),
                (0, 3),
                (0, 4),
                (3, 2),
                (2, 5),
                (1, 5),
                (4, 7),
                (5, 6),
                (6, 9),
                (7, 8),
                (9, 10),
            ],
        )
        .expect("static graph"),
        phi: vec![0, 1, 1, 2, 2, 3, 4, 4, 5, 6, 6],
        edge_map: vec![0, 1, 2, 3, 4, 5, 6, 7, 9, 8, 10],
    }
}

pub fn cycle(n: usize) -> MultiGraph {
    MultiGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).expect("n >= 2")
}

pub fn path(n: usize) -> MultiGraph {
    MultiGraph::new(n, (1..n).map(|i| (i - 1, i)).collect()).expect("n >= 2")
}

pub fn star(leaves: usize) -> MultiGraph {
    MultiGraph::new(leaves + 1, (1..=leaves).map(|i| (0, i)).collect()).expect("n >= 2")
}

pub fn complete(n: usize) -> MultiGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    MultiGraph::new(n, edges).expect("n >= 2")
}

pub fn complete_bipartite(a: usize, b: usize) -> MultiGraph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    MultiGraph::new(a + b, edges).expect("n >= 2")
}

/// Triangle with a pendant edge.
pub fn paw() -> MultiGraph {
    MultiGraph::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3)]).expect("static graph")
}
