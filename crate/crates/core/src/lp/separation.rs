//! Exact separation of the forest rows `x(E(S)) ≤ |S| − 1`.
//!
//! With `c_i = 1 − x(δ(i))/2` we have `x(E(S)) − |S| = −(x(δ(S))/2 + c(S))`,
//! so the most violated set through a root is a minimum cut in a network
//! with arc capacities `x_e/2` between endpoints, `c_i⁺` into the sink and
//! `c_i⁻` out of the source. Roots are processed in order, earlier roots
//! being forced to the sink side, so every violated set is reachable.

use std::collections::VecDeque;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestCut {
    /// Sorted vertex set, `|S| ≥ 2`.
    pub set: Vec<usize>,
    /// `x(E(S)) − |S| + 1 > 0`.
    pub violation: Rational,
}

pub fn excess(set: &[usize], edges: &[(usize, usize)], x: &[Rational], vertices: usize) -> Rational {
    let mut inside = vec![false; vertices];
    for &v in set {
        inside[v] = true;
    }
    let within: Rational = edges
        .iter()
        .zip(x)
        .filter(|((a, b), _)| inside[*a] && inside[*b])
        .map(|(_, v)| v.clone())
        .sum();
    within - Rational::from(set.len()) + Rational::one()
}

struct Network {
    cap: Vec<Vec<Rational>>,
}

impl Network {
    /// Edmonds–Karp; returns the flow value and leaves residual capacities.
    fn max_flow(&mut self, s: usize, t: usize) -> Rational {
        let n = self.cap.len();
        let mut total = Rational::zero();
        loop {
            let mut prev = vec![usize::MAX; n];
            prev[s] = s;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for v in 0..n {
                    if prev[v] == usize::MAX && self.cap[u][v].is_positive() {
                        prev[v] = u;
                        queue.push_back(v);
                    }
                }
            }
            if prev[t] == usize::MAX {
                return total;
            }
            let mut bottleneck: Option<Rational> = None;
            let mut v = t;
            while v != s {
                let u = prev[v];
                let c = &self.cap[u][v];
                if bottleneck.as_ref().map_or(true, |b| c < b) {
                    bottleneck = Some(c.clone());
                }
                v = u;
            }
            let f = bottleneck.unwrap();
            let mut v = t;
            while v != s {
                let u = prev[v];
                self.cap[u][v] -= &f;
                self.cap[v][u] += &f;
                v = u;
            }
            total += &f;
        }
    }

    fn source_side(&self, s: usize) -> Vec<bool> {
        let n = self.cap.len();
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if !seen[v] && self.cap[u][v].is_positive() {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

/// Most violated set through each root, deduplicated, most violated first.
pub fn separate_forest_all(vertices: usize, edges: &[(usize, usize)], x: &[Rational]) -> Vec<ForestCut> {
    assert_eq!(edges.len(), x.len());
    let half = Rational::new(1, 2);
    let mut base = vec![vec![Rational::zero(); vertices + 2]; vertices + 2];
    let mut load = vec![Rational::zero(); vertices];
    for (&(a, b), v) in edges.iter().zip(x) {
        if v.is_zero() || a == b {
            continue;
        }
        let h = v * &half;
        base[a][b] += &h;
        base[b][a] += &h;
        load[a] += &h;
        load[b] += &h;
    }
    let (s, t) = (vertices, vertices + 1);
    let mut negative = Rational::zero();
    for i in 0..vertices {
        let c = Rational::one() - &load[i];
        if c.is_positive() {
            base[i][t] = c;
        } else if c.is_negative() {
            negative += &(-&c);
            base[s][i] = -c;
        }
    }
    let big: Rational = x.iter().sum::<Rational>() + Rational::from(vertices) + Rational::one();

    let mut found: Vec<ForestCut> = Vec::new();
    for root in 0..vertices {
        let mut net = Network { cap: base.clone() };
        net.cap[s][root] = big.clone();
        for earlier in 0..root {
            net.cap[earlier][t] = big.clone();
        }
        let cut = net.max_flow(s, t);
        let violation = Rational::one() - (cut - &negative);
        if !violation.is_positive() {
            continue;
        }
        let side = net.source_side(s);
        let set: Vec<usize> = (0..vertices).filter(|&v| side[v]).collect();
        debug_assert_eq!(excess(&set, edges, x, vertices), violation);
        if !found.iter().any(|c| c.set == set) {
            found.push(ForestCut { set, violation });
        }
    }
    found.sort_by(|a, b| b.violation.cmp(&a.violation).then_with(|| a.set.cmp(&b.set)));
    found
}

pub fn separate_forest(vertices: usize, edges: &[(usize, usize)], x: &[Rational]) -> Option<ForestCut> {
    separate_forest_all(vertices, edges, x).into_iter().next()
}

/// Reference implementation over all subsets; refuses more than 20
/// vertices.
pub fn separate_forest_exhaustive(vertices: usize, edges: &[(usize, usize)], x: &[Rational]) -> Option<ForestCut> {
    assert!(vertices <= 20, "exhaustive separation is limited to 20 vertices");
    let mut best: Option<ForestCut> = None;
    for mask in 1u32..(1 << vertices) {
        if mask.count_ones() < 2 {
            continue;
        }
        let set: Vec<usize> = (0..vertices).filter(|&v| mask >> v & 1 == 1).collect();
        let violation = excess(&set, edges, x, vertices);
        if violation.is_positive() && best.as_ref().map_or(true, |b| violation > b.violation) {
            best = Some(ForestCut { set, violation });
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn tree_has_no_cut() {
        let edges = [(0, 1), (1, 2), (2, 3), (1, 3)];
        let x = [1, 1, 1, 0].map(Rational::from_integer);
        assert_eq!(separate_forest(4, &edges, &x), None);
    }

    #[test]
    fn parallel_pair() {
        let edges = [(0, 1), (0, 1), (1, 2)];
        let x = [1, 1, 0].map(Rational::from_integer);
        let cut = separate_forest(3, &edges, &x).unwrap();
        assert_eq!(cut.set, vec![0, 1]);
        assert_eq!(cut.violation, Rational::one());
    }

    #[test]
    fn fractional_triangle_is_tight() {
        let edges = [(0, 1), (1, 2), (2, 0)];
        let x = vec![Rational::new(2, 3); 3];
        assert_eq!(separate_forest(3, &edges, &x), None);
        assert_eq!(separate_forest_exhaustive(3, &edges, &x), None);
        assert_eq!(excess(&[0, 1, 2], &edges, &x, 3), Rational::zero());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]
        #[test]
        fn flow_matches_exhaustive(vertices in 2usize..=9, raw in proptest::collection::vec((0usize..9, 0usize..9, 0i64..=6), 1..=16)) {
            let edges: Vec<(usize, usize)> = raw.iter().map(|&(a, b, _)| (a % vertices, b % vertices)).filter(|(a, b)| a != b).collect();
            let x: Vec<Rational> = raw.iter().filter(|&&(a, b, _)| a % vertices != b % vertices).map(|&(_, _, v)| Rational::new(v, 4)).collect();
            let flow = separate_forest(vertices, &edges, &x);
            let brute = separate_forest_exhaustive(vertices, &edges, &x);
            prop_assert_eq!(flow.as_ref().map(|c| c.violation.clone()), brute.map(|c| c.violation));
            if let Some(c) = flow {
                prop_assert!(c.set.len() >= 2);
                prop_assert_eq!(excess(&c.set, &edges, &x, vertices), c.violation);
            }
        }
    }
}
