use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// A set of pairwise disjoint host edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingWitness {
    pub edges: Vec<(usize, usize)>,
}

impl MatchingWitness {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints are disjoint and every pair is an edge of `g`.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.n()];
        for &(u, v) in &self.edges {
            if u >= g.n() || v >= g.n() || !g.has_edge(u, v) || seen[u] || seen[v] {
                return false;
            }
            seen[u] = true;
            seen[v] = true;
        }
        true
    }
}

pub fn matching_number(g: &Graph) -> usize {
    maximum_matching(g).size()
}

/// Maximum matching in a general graph (Edmonds' blossom algorithm, BFS form
/// with blossom bases), seeded with a greedy matching.
pub fn maximum_matching(g: &Graph) -> MatchingWitness {
    let n = g.n();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut blossom = Blossom::new(&adj);

    for (v, nbrs) in adj.iter().enumerate() {
        if blossom.mate[v] == NONE {
            if let Some(&u) = nbrs.iter().find(|&&u| blossom.mate[u] == NONE) {
                blossom.mate[v] = u;
                blossom.mate[u] = v;
            }
        }
    }
    for (root, nbrs) in adj.iter().enumerate() {
        if blossom.mate[root] != NONE || nbrs.is_empty() {
            continue;
        }
        if let Some(mut v) = blossom.augmenting_path(root) {
            while v != NONE {
                let pv = blossom.parent[v];
                let ppv = blossom.mate[pv];
                blossom.mate[v] = pv;
                blossom.mate[pv] = v;
                v = ppv;
            }
        }
    }
    let edges = (0..n)
        .filter(|&v| blossom.mate[v] != NONE && v < blossom.mate[v])
        .map(|v| (v, blossom.mate[v]))
        .collect();
    MatchingWitness { edges }
}

const NONE: usize = usize::MAX;

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    on_path: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            on_path: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&mut self, mut a: usize, mut b: usize) -> usize {
        self.on_path.fill(false);
        loop {
            a = self.base[a];
            self.on_path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if self.on_path[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS over alternating trees from `root`; returns the free endpoint of an
    /// augmenting path, whose edges are recoverable through `parent`/`mate`.
    fn augmenting_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for i in 0..self.adj[v].len() {
                let to = self.adj[v][i];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for u in 0..n {
                        if self.in_blossom[self.base[u]] {
                            self.base[u] = cur;
                            if !self.used[u] {
                                self.used[u] = true;
                                self.queue.push_back(u);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, disjoint_union, empty, join};

    #[test]
    fn small_examples() {
        assert_eq!(matching_number(&cycle(5).unwrap()), 2);
        assert_eq!(matching_number(&join(&complete(2), &empty(7))), 2);
        assert_eq!(matching_number(&complete(7)), 3);
        assert_eq!(matching_number(&empty(4)), 0);
    }

    #[test]
    fn blossom_needed() {
        // Two triangles joined by a path; greedy order leaves an odd cycle to shrink.
        let g = Graph::from_edges(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 5),
            ],
        );
        let m = maximum_matching(&g);
        assert_eq!(m.size(), 4);
        assert!(m.is_valid_for(&g));
    }

    #[test]
    fn witness_is_valid() {
        let g = disjoint_union(&complete(5), &cycle(7).unwrap());
        let m = maximum_matching(&g);
        assert_eq!(m.size(), 5);
        assert!(m.is_valid_for(&g));
    }

    #[test]
    fn large_construction_is_fast() {
        let g = join(&complete(3), &empty(4997));
        let start = std::time::Instant::now();
        assert_eq!(matching_number(&g), 3);
        assert!(start.elapsed().as_secs() < 10);
    }
}
