//! Graphic and partition matroids, their intersection, and greedy
//! optimization over the bases of the contracted slot graph.

use std::collections::VecDeque;

use crate::auxgraph::{AuxGraph, AuxTree};
use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, MultiGraph, UnionFind};
use crate::rational::Rational;

/// Ground set elements are `0..ground_size()`.
pub trait Matroid {
    fn ground_size(&self) -> usize;
    fn rank_of(&self, set: &[usize]) -> usize;
    fn is_independent(&self, set: &[usize]) -> bool {
        self.rank_of(set) == set.len()
    }
}

/// Cycle matroid of a graph after contracting some of its edges. Element
/// `i` is the `i`-th ground edge.
#[derive(Debug, Clone)]
pub struct GraphicMatroid {
    vertices: usize,
    ends: Vec<(usize, usize)>,
    labels: Vec<EdgeId>,
}

impl GraphicMatroid {
    pub fn new(g: &MultiGraph, ground: &[EdgeId]) -> Result<Self> {
        Self::contracted(g, &[], ground)
    }

    pub fn contracted(g: &MultiGraph, contract: &[EdgeId], ground: &[EdgeId]) -> Result<Self> {
        let mut uf = UnionFind::new(g.n());
        for &e in contract.iter().chain(ground) {
            if e >= g.m() {
                return Err(Error::EdgeOutOfRange { edge: e, m: g.m() });
            }
        }
        for &e in contract {
            let (a, b) = g.endpoints(e);
            uf.union(a, b);
        }
        let mut label = vec![usize::MAX; g.n()];
        let mut vertices = 0;
        for v in 0..g.n() {
            let r = uf.find(v);
            if label[r] == usize::MAX {
                label[r] = vertices;
                vertices += 1;
            }
        }
        let ends = ground
            .iter()
            .map(|&e| {
                let (a, b) = g.endpoints(e);
                (label[uf.find(a)], label[uf.find(b)])
            })
            .collect();
        Ok(GraphicMatroid { vertices, ends, labels: ground.to_vec() })
    }

    /// Vertex count after contraction.
    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// Endpoints of element `i` in the contracted graph.
    pub fn ends(&self, i: usize) -> (usize, usize) {
        self.ends[i]
    }

    /// Edge id of element `i` in the underlying graph.
    pub fn label(&self, i: usize) -> EdgeId {
        self.labels[i]
    }

    pub fn full_rank(&self) -> usize {
        let all: Vec<usize> = (0..self.ends.len()).collect();
        self.rank_of(&all)
    }
}

impl Matroid for GraphicMatroid {
    fn ground_size(&self) -> usize {
        self.ends.len()
    }

    fn rank_of(&self, set: &[usize]) -> usize {
        let mut uf = UnionFind::new(self.vertices);
        set.iter().filter(|&&i| uf.union(self.ends[i].0, self.ends[i].1)).count()
    }
}

#[derive(Debug, Clone)]
pub struct PartitionMatroid {
    part_of: Vec<usize>,
    capacity: Vec<usize>,
}

impl PartitionMatroid {
    pub fn new(part_of: Vec<usize>, capacity: Vec<usize>) -> Result<Self> {
        if let Some(&p) = part_of.iter().find(|&&p| p >= capacity.len()) {
            return Err(Error::usage(format!("part {p} has no capacity")));
        }
        Ok(PartitionMatroid { part_of, capacity })
    }

    pub fn part_of(&self, i: usize) -> usize {
        self.part_of[i]
    }

    pub fn capacity(&self) -> &[usize] {
        &self.capacity
    }
}

impl Matroid for PartitionMatroid {
    fn ground_size(&self) -> usize {
        self.part_of.len()
    }

    fn rank_of(&self, set: &[usize]) -> usize {
        let mut count = vec![0usize; self.capacity.len()];
        for &i in set {
            count[self.part_of[i]] += 1;
        }
        count.iter().zip(&self.capacity).map(|(&c, &cap)| c.min(cap)).sum()
    }
}

/// Proof that a common independent set is maximum: `r1(a) + r2(r) = |I|`
/// with `a` and `r` partitioning the ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeficiencyCut {
    /// Elements not reachable from the sources of the exchange graph.
    pub a: Vec<usize>,
    pub r: Vec<usize>,
    pub rank1_a: usize,
    pub rank2_r: usize,
}

#[derive(Debug, Clone)]
pub struct Intersection {
    /// Sorted ground elements.
    pub set: Vec<usize>,
    pub cut: DeficiencyCut,
}

/// Maximum common independent set by shortest augmenting paths.
pub fn matroid_intersection(m1: &impl Matroid, m2: &impl Matroid) -> Result<Intersection> {
    let size = m1.ground_size();
    if size != m2.ground_size() {
        return Err(Error::usage(format!(
            "ground sets differ: {} vs {}",
            size,
            m2.ground_size()
        )));
    }
    let mut in_set = vec![false; size];
    let mut cur: Vec<usize> = Vec::new();
    for y in 0..size {
        cur.push(y);
        if m1.is_independent(&cur) && m2.is_independent(&cur) {
            in_set[y] = true;
        } else {
            cur.pop();
        }
    }

    loop {
        let members: Vec<usize> = (0..size).filter(|&i| in_set[i]).collect();
        let others: Vec<usize> = (0..size).filter(|&i| !in_set[i]).collect();
        let with = |y: usize| {
            let mut s = members.clone();
            s.push(y);
            s
        };
        let swap = |x: usize, y: usize| {
            let mut s: Vec<usize> = members.iter().copied().filter(|&z| z != x).collect();
            s.push(y);
            s
        };
        let is_sink: Vec<bool> = (0..size).map(|y| !in_set[y] && m2.is_independent(&with(y))).collect();

        let mut prev = vec![usize::MAX; size];
        let mut seen = vec![false; size];
        let mut queue = VecDeque::new();
        for &y in &others {
            if m1.is_independent(&with(y)) {
                seen[y] = true;
                queue.push_back(y);
            }
        }
        let mut end = None;
        while let Some(u) = queue.pop_front() {
            if is_sink[u] {
                end = Some(u);
                break;
            }
            if in_set[u] {
                // x -> y when I - x + y stays independent in M1
                for &y in &others {
                    if !seen[y] && m1.is_independent(&swap(u, y)) {
                        seen[y] = true;
                        prev[y] = u;
                        queue.push_back(y);
                    }
                }
            } else {
                for &x in &members {
                    if !seen[x] && m2.is_independent(&swap(x, u)) {
                        seen[x] = true;
                        prev[x] = u;
                        queue.push_back(x);
                    }
                }
            }
        }

        match end {
            Some(mut u) => loop {
                in_set[u] = !in_set[u];
                if prev[u] == usize::MAX {
                    break;
                }
                u = prev[u];
            },
            None => {
                let a: Vec<usize> = (0..size).filter(|&i| !seen[i]).collect();
                let r: Vec<usize> = (0..size).filter(|&i| seen[i]).collect();
                let cut = DeficiencyCut { rank1_a: m1.rank_of(&a), rank2_r: m2.rank_of(&r), a, r };
                assert_eq!(cut.rank1_a + cut.rank2_r, members.len(), "deficiency cut must be tight");
                return Ok(Intersection { set: members, cut });
            }
        }
    }
}

/// The two matroids on the clique edges of `aux`: graphic after contracting
/// the matching edges, and the partition by owning vertex. Ground element
/// `i` is aux edge `aux.ebar_count() + i`.
pub fn aux_matroids(aux: &AuxGraph, capacity: Vec<usize>) -> Result<(GraphicMatroid, PartitionMatroid)> {
    let m = aux.ebar_count();
    let contract: Vec<EdgeId> = (0..m).collect();
    let ground: Vec<EdgeId> = (m..aux.edge_count()).collect();
    let graphic = GraphicMatroid::contracted(aux.gprime(), &contract, &ground)?;
    let part_of = ground.iter().map(|&e| aux.k_owner(e).expect("clique edge")).collect();
    Ok((graphic, PartitionMatroid::new(part_of, capacity)?))
}

/// Spanning tree `T ⊇ Ē` of `G'` maximizing `Σ weights(v)·|T ∩ K_v|`, by
/// Kruskal on the clique edges. Ties go to the smaller edge id.
pub fn max_weight_basis_alpha(aux: &AuxGraph, weights: &[Rational]) -> Result<(Vec<usize>, AuxTree)> {
    let n = aux.graph().n();
    if weights.len() != n {
        return Err(Error::usage(format!("expected {n} weights, got {}", weights.len())));
    }
    let m = aux.ebar_count();
    let mut uf = UnionFind::new(aux.slot_count());
    let mut edges: Vec<EdgeId> = (0..m).collect();
    for e in 0..m {
        let (a, b) = aux.gprime().endpoints(e);
        uf.union(a, b);
    }
    let mut order: Vec<EdgeId> = (m..aux.edge_count()).collect();
    order.sort_by(|&e, &f| {
        let we = &weights[aux.k_owner(e).unwrap()];
        let wf = &weights[aux.k_owner(f).unwrap()];
        wf.cmp(we).then(e.cmp(&f))
    });
    let mut alpha = vec![0; n];
    for e in order {
        let (a, b) = aux.gprime().endpoints(e);
        if uf.union(a, b) {
            edges.push(e);
            alpha[aux.k_owner(e).unwrap()] += 1;
        }
    }
    let tree = AuxTree::new(aux, edges)?;
    Ok((alpha, tree))
}

/// Feasible split vector maximizing `c·μ`, namely `deg − 1 − α` for the
/// basis minimizing `c·α`.
pub fn max_weight_split(aux: &AuxGraph, c: &[Rational]) -> Result<Vec<usize>> {
    if c.iter().any(Rational::is_negative) {
        return Err(Error::usage("split weights must be nonnegative"));
    }
    let neg: Vec<Rational> = c.iter().map(|x| -x).collect();
    let (alpha, _) = max_weight_basis_alpha(aux, &neg)?;
    Ok(aux
        .graph()
        .degrees()
        .iter()
        .zip(&alpha)
        .map(|(&d, &a)| d - 1 - a)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auxgraph::build_aux;
    use crate::instances::{cycle, seven_vertex_example, gen_random_multigraph, path};
    use proptest::prelude::*;

    fn brute_force(m1: &impl Matroid, m2: &impl Matroid) -> usize {
        let n = m1.ground_size();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if set.len() > best && m1.is_independent(&set) && m2.is_independent(&set) {
                best = set.len();
            }
        }
        best
    }

    #[test]
    fn zero_capacities() {
        let aux = build_aux(&seven_vertex_example()).unwrap();
        let (g, p) = aux_matroids(&aux, vec![0; 7]).unwrap();
        let out = matroid_intersection(&g, &p).unwrap();
        assert!(out.set.is_empty());
    }

    #[test]
    fn vacuous_capacities() {
        let aux = build_aux(&seven_vertex_example()).unwrap();
        let (g, p) = aux_matroids(&aux, vec![100; 7]).unwrap();
        let out = matroid_intersection(&g, &p).unwrap();
        assert_eq!(out.set.len(), g.full_rank());
        assert_eq!(out.set.len(), aux.ebar_count() - 1);
    }

    #[test]
    fn c3_capacities() {
        let aux = build_aux(&cycle(3)).unwrap();
        let (g, p) = aux_matroids(&aux, vec![0, 1, 1]).unwrap();
        let out = matroid_intersection(&g, &p).unwrap();
        assert_eq!(out.set.len(), 2);
        assert_eq!(brute_force(&g, &p), 2);
        let (g, p) = aux_matroids(&aux, vec![0, 0, 1]).unwrap();
        let out = matroid_intersection(&g, &p).unwrap();
        assert_eq!(out.set.len(), 1);
        assert_eq!(out.cut.rank1_a + out.cut.rank2_r, 1);
    }

    #[test]
    fn ground_mismatch() {
        let g = GraphicMatroid::new(&cycle(3), &[0, 1]).unwrap();
        let p = PartitionMatroid::new(vec![0, 0, 0], vec![1]).unwrap();
        assert!(matches!(matroid_intersection(&g, &p), Err(Error::Usage(_))));
    }

    #[test]
    fn alpha_on_c3() {
        let aux = build_aux(&cycle(3)).unwrap();
        let w = [Rational::one(), Rational::zero(), Rational::zero()];
        let (alpha, tree) = max_weight_basis_alpha(&aux, &w).unwrap();
        assert_eq!(alpha[0], 1);
        assert_eq!(alpha.iter().sum::<usize>(), 2);
        assert!(tree.contains_ebar);
        assert_eq!(tree.alpha(&aux), alpha);
    }

    #[test]
    fn split_identities() {
        let ones = |n| vec![Rational::one(); n];
        let aux = build_aux(&cycle(3)).unwrap();
        assert_eq!(max_weight_split(&aux, &ones(3)).unwrap().iter().sum::<usize>(), 1);
        let aux = build_aux(&path(5)).unwrap();
        assert_eq!(max_weight_split(&aux, &ones(5)).unwrap(), vec![0; 5]);
        let bad = [Rational::from_integer(-1), Rational::one(), Rational::one()];
        let aux = build_aux(&cycle(3)).unwrap();
        assert!(max_weight_split(&aux, &bad).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn intersection_matches_brute_force(n in 2usize..=5, extra in 0usize..=3, seed in any::<u64>(), caps in proptest::collection::vec(0usize..=3, 5)) {
            let g = gen_random_multigraph(n, n - 1 + extra, 0.2, 0.3, seed).unwrap();
            let aux = build_aux(&g).unwrap();
            prop_assume!(aux.k_count() <= 14);
            let (gm, pm) = aux_matroids(&aux, caps[..n].to_vec()).unwrap();
            let out = matroid_intersection(&gm, &pm).unwrap();
            prop_assert!(gm.is_independent(&out.set) && pm.is_independent(&out.set));
            prop_assert_eq!(out.set.len(), brute_force(&gm, &pm));
            prop_assert_eq!(out.cut.rank1_a + out.cut.rank2_r, out.set.len());
        }

        #[test]
        fn alpha_sum_is_constant(n in 2usize..=6, extra in 0usize..=6, seed in any::<u64>(), w in proptest::collection::vec(-3i64..=3, 6)) {
            let g = gen_random_multigraph(n, n - 1 + extra, 0.2, 0.3, seed).unwrap();
            let aux = build_aux(&g).unwrap();
            let weights: Vec<Rational> = w[..n].iter().map(|&x| Rational::from_integer(x)).collect();
            let (alpha, _) = max_weight_basis_alpha(&aux, &weights).unwrap();
            prop_assert_eq!(alpha.iter().sum::<usize>(), g.m() - 1);
        }

        #[test]
        fn down_monotone(n in 2usize..=5, extra in 0usize..=4, seed in any::<u64>(), c in proptest::collection::vec(0i64..=3, 5), cut in proptest::collection::vec(0usize..=3, 5)) {
            let g = gen_random_multigraph(n, n - 1 + extra, 0.2, 0.3, seed).unwrap();
            let aux = build_aux(&g).unwrap();
            let weights: Vec<Rational> = c[..n].iter().map(|&x| Rational::from_integer(x)).collect();
            let mu = max_weight_split(&aux, &weights).unwrap();
            let lower: Vec<usize> = mu.iter().zip(&cut).map(|(&a, &b)| a.saturating_sub(b)).collect();
            for split in [&mu, &lower] {
                let caps = g.degrees().iter().zip(split).map(|(&d, &s)| d - 1 - s).collect();
                let (gm, pm) = aux_matroids(&aux, caps).unwrap();
                prop_assert_eq!(matroid_intersection(&gm, &pm).unwrap().set.len(), g.m() - 1);
            }
        }
    }
}
