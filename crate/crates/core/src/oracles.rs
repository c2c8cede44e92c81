//! Exponential reference implementations used to cross-check the fast
//! algorithms. The combinatorial oracles share no code with the matroid or
//! LP paths; the full-row-set LP oracle reuses only the simplex.

use std::ops::ControlFlow;

use crate::auxgraph::{build_aux, AuxGraph};
use crate::error::{Error, Result};
use crate::lp::{simplex_solve, LinearProgram, Lpa, LpOutcome, Sense};
use crate::multigraph::{EdgeId, MultiGraph, UnionFind};
use crate::rational::Rational;

/// Default limit on the number of edges an oracle will branch over.
pub const DEFAULT_MAX_EDGES: usize = 16;

fn connected_with(vertices: usize, edges: &[(usize, usize)], on: impl Fn(usize) -> bool) -> bool {
    let mut uf = UnionFind::new(vertices);
    for (i, &(a, b)) in edges.iter().enumerate() {
        if on(i) {
            uf.union(a, b);
        }
    }
    uf.count() == 1
}

/// Visit every spanning tree of the graph on `0..vertices` with `edges`,
/// each exactly once, by include/exclude branching on edges in order: an
/// edge is included when it joins two components, and excluded only when
/// the rest can still connect everything. `allow(chosen, edge)` may veto an
/// inclusion, which prunes the search to trees satisfying a hereditary
/// condition.
pub fn for_each_spanning_tree<F, A>(vertices: usize, edges: &[(usize, usize)], mut allow: A, mut visit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
    A: FnMut(&[usize], usize) -> bool,
{
    if vertices == 0 {
        return;
    }
    if !connected_with(vertices, edges, |_| true) {
        return;
    }
    let mut chosen = Vec::with_capacity(vertices - 1);
    let mut excluded = vec![false; edges.len()];
    let _ = branch(vertices, edges, 0, &mut chosen, &mut excluded, &mut allow, &mut visit);
}

fn branch<F, A>(
    vertices: usize,
    edges: &[(usize, usize)],
    i: usize,
    chosen: &mut Vec<usize>,
    excluded: &mut Vec<bool>,
    allow: &mut A,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
    A: FnMut(&[usize], usize) -> bool,
{
    if chosen.len() + 1 == vertices {
        return visit(chosen);
    }
    if i == edges.len() {
        return ControlFlow::Continue(());
    }
    let mut uf = UnionFind::new(vertices);
    for &c in chosen.iter() {
        uf.union(edges[c].0, edges[c].1);
    }
    let (a, b) = edges[i];
    if !uf.same(a, b) && allow(chosen, i) {
        chosen.push(i);
        branch(vertices, edges, i + 1, chosen, excluded, allow, visit)?;
        chosen.pop();
    }
    excluded[i] = true;
    let still = connected_with(vertices, edges, |j| !excluded[j]);
    let out = if still {
        branch(vertices, edges, i + 1, chosen, excluded, allow, visit)
    } else {
        ControlFlow::Continue(())
    };
    excluded[i] = false;
    out
}

/// All spanning trees as sorted edge-index lists; refuses above `max_edges`.
pub fn enumerate_spanning_trees(vertices: usize, edges: &[(usize, usize)], max_edges: usize) -> Result<Vec<Vec<usize>>> {
    if edges.len() > max_edges {
        return Err(Error::SizeGuard { what: "edges", actual: edges.len(), limit: max_edges });
    }
    let mut out = Vec::new();
    for_each_spanning_tree(vertices, edges, |_, _| true, |t| {
        out.push(t.to_vec());
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// `G'` with the matching edges contracted: vertex `e` stands for edge `e`
/// of `G`, and edge `i` is clique edge `ebar_count() + i`.
pub fn contracted_aux(aux: &AuxGraph) -> (usize, Vec<(usize, usize)>) {
    let m = aux.ebar_count();
    let edges = (m..aux.edge_count())
        .map(|e| {
            let (s, t) = aux.gprime().endpoints(e);
            (aux.slot(s).edge, aux.slot(t).edge)
        })
        .collect();
    (m, edges)
}

/// Searches for a spanning tree `T ⊇ Ē` of `G'` whose clique-edge
/// components at each vertex `v` have at most `max_size(v)` slots and number
/// at least `min_parts(v)`.
fn search_tree(aux: &AuxGraph, max_size: &[usize], min_parts: &[usize]) -> bool {
    let g = aux.graph();
    let (vertices, edges) = contracted_aux(aux);
    let m = aux.ebar_count();
    let owner: Vec<usize> = (0..edges.len()).map(|i| aux.k_owner(m + i).unwrap()).collect();
    let budget: Vec<usize> = (0..g.n())
        .map(|v| (g.degree(v)).saturating_sub(min_parts[v]))
        .collect();
    if (0..g.n()).any(|v| min_parts[v] > g.degree(v)) {
        return false;
    }
    let mut found = false;
    for_each_spanning_tree(
        vertices,
        &edges,
        |chosen, i| {
            let v = owner[i];
            let used = chosen.iter().filter(|&&c| owner[c] == v).count();
            if used + 1 > budget[v] {
                return false;
            }
            // slot components inside V'_v after adding i
            let mut uf = UnionFind::new(aux.slot_count());
            for &c in chosen.iter().filter(|&&c| owner[c] == v).chain([&i]) {
                let (s, t) = aux.gprime().endpoints(m + c);
                uf.union(s, t);
            }
            let (s, _) = aux.gprime().endpoints(m + i);
            let root = uf.find(s);
            let size = aux.part(v).iter().filter(|&&x| uf.find(x) == root).count();
            size <= max_size[v]
        },
        |_| {
            found = true;
            ControlFlow::Break(())
        },
    );
    found
}

fn guard(g: &MultiGraph, aux_limit: usize) -> Result<()> {
    let k_edges: usize = g.degrees().iter().map(|d| d * (d - 1) / 2).sum();
    if k_edges > aux_limit {
        return Err(Error::SizeGuard { what: "clique edges", actual: k_edges, limit: aux_limit });
    }
    Ok(())
}

/// Limit on `|K|` for the tree-search oracles.
pub const DEFAULT_MAX_CLIQUE_EDGES: usize = 400;

/// Whether some tree preimage has maximum degree at most `k`.
pub fn oracle_is_k_trail(g: &MultiGraph, k: usize) -> Result<bool> {
    guard(g, DEFAULT_MAX_CLIQUE_EDGES)?;
    let aux = build_aux(g)?;
    Ok(search_tree(&aux, &vec![k; g.n()], &vec![1; g.n()]))
}

/// Minimum over spanning trees `T ⊇ Ē` of the largest clique-edge
/// component, i.e. the smallest `k` admitting a tree preimage of degree `k`.
pub fn oracle_min_k(g: &MultiGraph) -> Result<usize> {
    guard(g, DEFAULT_MAX_CLIQUE_EDGES)?;
    let aux = build_aux(g)?;
    for k in 1..=g.max_degree() {
        if search_tree(&aux, &vec![k; g.n()], &vec![1; g.n()]) {
            return Ok(k);
        }
    }
    unreachable!("the all-clique tree has component size Δ")
}

/// Whether some spanning tree `T ⊇ Ē` splits every `V'_v` into at least
/// `μ(v) + 1` components.
pub fn oracle_feasible_split(g: &MultiGraph, mu: &[usize]) -> Result<bool> {
    guard(g, DEFAULT_MAX_CLIQUE_EDGES)?;
    if mu.len() != g.n() {
        return Err(Error::usage("split vector length mismatch"));
    }
    let aux = build_aux(g)?;
    let parts: Vec<usize> = mu.iter().map(|&x| x + 1).collect();
    Ok(search_tree(&aux, &vec![usize::MAX; g.n()], &parts))
}

/// Whether a simple graph has a Hamiltonian path, by subset dynamic
/// programming. Parallel edges and loops are ignored.
pub fn has_hamiltonian_path(g: &MultiGraph) -> Result<bool> {
    let n = g.n();
    if n > 20 {
        return Err(Error::SizeGuard { what: "vertices", actual: n, limit: 20 });
    }
    let mut adj = vec![0u32; n];
    for &(a, b) in g.edges() {
        if a != b {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
    }
    // reach[mask] = set of end vertices of paths covering exactly mask
    let full = (1usize << n) - 1;
    let mut reach = vec![0u32; 1 << n];
    for v in 0..n {
        reach[1 << v] = 1 << v;
    }
    for mask in 1..=full {
        let ends = reach[mask];
        if ends == 0 {
            continue;
        }
        for v in 0..n {
            if ends >> v & 1 == 1 {
                let mut next = adj[v] & !(mask as u32);
                while next != 0 {
                    let u = next.trailing_zeros() as usize;
                    next &= next - 1;
                    reach[mask | 1 << u] |= 1 << u;
                }
            }
        }
    }
    Ok(reach[full] != 0)
}

/// Connected spanning edge subsets of `g`, smallest first. Bridges are in
/// every such subset, so only the other edges are enumerated and the guard
/// applies to them.
pub fn for_each_connected_subset(
    g: &MultiGraph,
    max_edges: usize,
    mut visit: impl FnMut(&[EdgeId]) -> Result<ControlFlow<()>>,
) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let bridges = g.bridges();
    let mut is_bridge = vec![false; g.m()];
    for &b in &bridges {
        is_bridge[b] = true;
    }
    let free: Vec<EdgeId> = (0..g.m()).filter(|&e| !is_bridge[e]).collect();
    if free.len() > max_edges {
        return Err(Error::SizeGuard { what: "non-bridge edges", actual: free.len(), limit: max_edges });
    }
    let mut masks: Vec<u32> = (0u32..(1 << free.len())).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut subset = Vec::with_capacity(g.m());
    for mask in masks {
        subset.clear();
        subset.extend(bridges.iter().copied());
        subset.extend((0..free.len()).filter(|&i| mask >> i & 1 == 1).map(|i| free[i]));
        if subset.len() + 1 < g.n() {
            continue;
        }
        subset.sort_unstable();
        let mut uf = UnionFind::new(g.n());
        for &e in &subset {
            let (a, b) = g.endpoints(e);
            uf.union(a, b);
        }
        if uf.count() != 1 {
            continue;
        }
        if visit(&subset)?.is_break() {
            break;
        }
    }
    Ok(())
}

/// Optimum of the current relaxation of `lpa` with every forest row
/// written out (`None` when infeasible), for `|V'|` up to `max_slots`.
///
/// Solved through the dual, which has one variable per row and one
/// constraint per live edge, so it shares nothing with the cutting-plane
/// path except the simplex itself.
pub fn oracle_full_lpa_value(lpa: &Lpa, max_slots: usize) -> Result<Option<Rational>> {
    let aux = &lpa.aux;
    let slots = aux.slot_count();
    if slots > max_slots {
        return Err(Error::SizeGuard { what: "slots", actual: slots, limit: max_slots });
    }
    let vars = lpa.live_edges();
    let ends: Vec<(usize, usize)> = vars.iter().map(|&e| aux.gprime().endpoints(e)).collect();
    // primal rows as (coefficients per live edge, rhs); all but the first are <=
    let mut rows: Vec<(Vec<i64>, i64)> = Vec::new();
    rows.push((vec![1; vars.len()], slots as i64 - 1));
    for mask in 1u32..(1 << slots) {
        if mask.count_ones() < 2 {
            continue;
        }
        let a: Vec<i64> = ends.iter().map(|&(s, t)| (mask >> s & mask >> t & 1) as i64).collect();
        if a.iter().any(|&c| c != 0) {
            rows.push((a, mask.count_ones() as i64 - 1));
        }
    }
    for v in 0..aux.graph().n() {
        if lpa.q[v] {
            let (coeffs, rhs) = lpa.degree_row(v);
            let mut a = vec![0; vars.len()];
            for (e, c) in coeffs {
                a[vars.iter().position(|&x| x == e).unwrap()] = c;
            }
            rows.push((a, rhs));
        }
    }
    // dual: max b·y, y_0 free, y_i <= 0, Σ_i y_i a_ij <= c_j. Write
    // y_0 = p − q and y_i = −z_i, then minimize the negated objective.
    let mut dual = LinearProgram::new();
    let b0 = Rational::from_integer(rows[0].1);
    let p = dual.add_var("p", -b0.clone());
    let q = dual.add_var("q", b0);
    let z: Vec<usize> = rows[1..]
        .iter()
        .enumerate()
        .map(|(i, (_, rhs))| dual.add_var(format!("z{i}"), Rational::from_integer(*rhs)))
        .collect();
    for (j, &e) in vars.iter().enumerate() {
        let mut coeffs = vec![(p, Rational::one()), (q, -Rational::one())];
        for (i, (a, _)) in rows[1..].iter().enumerate() {
            if a[j] != 0 {
                coeffs.push((z[i], Rational::from_integer(-a[j])));
            }
        }
        dual.add_row(format!("x{e}"), coeffs, Sense::Le, Rational::from_integer(lpa.cost(e)));
    }
    Ok(match simplex_solve(&dual) {
        LpOutcome::Optimal(s) => Some(-s.objective),
        LpOutcome::Unbounded { .. } => None,
        LpOutcome::Infeasible { .. } => unreachable!("the dual is feasible with q large"),
    })
}
