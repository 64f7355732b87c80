//! Brute-force references and generators shared by the integration tests.
#![allow(dead_code)]

use exgraph::Graph;
use proptest::prelude::*;

/// Graph on `n` vertices whose edges are the set bits of `mask` over pairs
/// `(i, j)`, `i < j`, in column order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let slots = n * n.saturating_sub(1) / 2;
    let bits: Vec<bool> = (0..slots).map(|k| mask >> k & 1 == 1).collect();
    graph_from_bits(n, &bits)
}

pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    g
}

pub fn all_labeled(n: usize) -> impl Iterator<Item = Graph> {
    let slots = n * n.saturating_sub(1) / 2;
    (0..1u64 << slots).map(move |m| graph_from_mask(n, m))
}

/// Largest matching by trying every edge for the lowest free vertex.
pub fn brute_matching(g: &Graph) -> usize {
    fn go(g: &Graph, free: &mut Vec<bool>) -> usize {
        let Some(v) = free.iter().position(|&f| f) else {
            return 0;
        };
        free[v] = false;
        let mut best = go(g, free);
        for u in v + 1..g.n() {
            if free[u] && g.has_edge(u, v) {
                free[u] = false;
                best = best.max(1 + go(g, free));
                free[u] = true;
            }
        }
        free[v] = true;
        best
    }
    go(g, &mut vec![true; g.n()])
}

/// Whether some injection maps every pattern edge onto a host edge.
pub fn brute_contains(host: &Graph, pattern: &Graph) -> bool {
    fn go(host: &Graph, pattern: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == pattern.n() {
            return true;
        }
        for x in 0..host.n() {
            if used[x] {
                continue;
            }
            if (0..i).any(|j| pattern.has_edge(i, j) && !host.has_edge(x, map[j])) {
                continue;
            }
            used[x] = true;
            map.push(x);
            if go(host, pattern, map, used) {
                return true;
            }
            map.pop();
            used[x] = false;
        }
        false
    }
    pattern.n() <= host.n() && go(host, pattern, &mut Vec::new(), &mut vec![false; host.n()])
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph_between(0, max_n)
}

pub fn arb_graph_between(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let slots = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), slots)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}
