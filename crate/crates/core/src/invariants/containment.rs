//! Non-induced subgraph containment by ordered backtracking.
//!
//! Pattern vertices are placed in a connectivity-first order; each candidate
//! set is the intersection of the host rows of already-placed neighbors.
//! Interchangeable host vertices (same open or closed neighborhood) are tried
//! once per level, which collapses the large independent sides that the
//! extremal constructions are built from. Isolated pattern vertices are never
//! placed: they only need enough spare host vertices.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::graph::{iter_bits, Graph};

/// Injective map from pattern vertices to host vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingWitness {
    pub map: Vec<usize>,
}

impl EmbeddingWitness {
    pub fn is_valid(&self, host: &Graph, pattern: &Graph) -> bool {
        if self.map.len() != pattern.n() {
            return false;
        }
        let mut seen = vec![false; host.n()];
        for &x in &self.map {
            if x >= host.n() || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        pattern
            .edges()
            .iter()
            .all(|&(u, v)| host.has_edge(self.map[u], self.map[v]))
    }
}

pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> bool {
    find_subgraph(host, pattern).is_some()
}

pub fn find_subgraph(host: &Graph, pattern: &Graph) -> Option<EmbeddingWitness> {
    if !plausible(host, pattern) {
        return None;
    }
    Matcher::new(host, pattern, None).run()
}

/// Finds a copy of `pattern` that uses `host_vertex`. Used by incremental
/// searches where every copy avoiding `host_vertex` has been ruled out.
pub fn find_subgraph_through(
    host: &Graph,
    pattern: &Graph,
    host_vertex: usize,
) -> Option<EmbeddingWitness> {
    if !plausible(host, pattern) {
        return None;
    }
    let hdeg = host.degree(host_vertex);
    let mut tried_rows: Vec<Vec<u64>> = Vec::new();
    for u in 0..pattern.n() {
        if pattern.degree(u) > hdeg {
            continue;
        }
        // Pattern vertices with equal neighborhoods are interchangeable.
        let row = pattern.row(u).to_vec();
        if tried_rows.contains(&row) {
            continue;
        }
        tried_rows.push(row);
        if let Some(w) = Matcher::new(host, pattern, Some((u, host_vertex))).run() {
            return Some(w);
        }
    }
    None
}

fn plausible(host: &Graph, pattern: &Graph) -> bool {
    if pattern.n() > host.n() || pattern.edge_count() > host.edge_count() {
        return false;
    }
    let pmax = (0..pattern.n())
        .map(|v| pattern.degree(v))
        .max()
        .unwrap_or(0);
    let hmax = (0..host.n()).map(|v| host.degree(v)).max().unwrap_or(0);
    pmax <= hmax
}

/// Hosts at or below this size skip twin detection.
const TWIN_THRESHOLD: usize = 16;

struct Matcher<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: Vec<usize>,
    /// For `order[i]`: positions in `order` of its already-placed neighbors.
    back: Vec<Vec<usize>>,
    pinned: Option<usize>,
    pdeg: Vec<usize>,
    hdeg: Vec<usize>,
    twins: Option<(Vec<usize>, Vec<usize>)>,
    spare_needed: usize,
    placed: Vec<usize>,
    used: Vec<u64>,
    cand: Vec<Vec<u64>>,
}

impl<'a> Matcher<'a> {
    fn new(host: &'a Graph, pattern: &'a Graph, pin: Option<(usize, usize)>) -> Self {
        let pdeg = pattern.degrees();
        let hdeg = host.degrees();
        let mut order = Vec::with_capacity(pattern.n());
        let mut in_order = vec![false; pattern.n()];
        if let Some((u, _)) = pin {
            order.push(u);
            in_order[u] = true;
        }
        loop {
            let next = (0..pattern.n())
                .filter(|&u| !in_order[u] && pdeg[u] > 0)
                .max_by_key(|&u| {
                    let placed = order.iter().filter(|&&w| pattern.has_edge(u, w)).count();
                    (placed, pdeg[u], std::cmp::Reverse(u))
                });
            match next {
                Some(u) => {
                    order.push(u);
                    in_order[u] = true;
                }
                None => break,
            }
        }
        let spare_needed = (0..pattern.n()).filter(|&u| !in_order[u]).count();
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &u)| (0..i).filter(|&j| pattern.has_edge(u, order[j])).collect())
            .collect();
        let twins = (host.n() > TWIN_THRESHOLD).then(|| twin_classes(host));
        let words = host.words();
        Matcher {
            host,
            pattern,
            back,
            pinned: pin.map(|(_, x)| x),
            pdeg,
            hdeg,
            twins,
            spare_needed,
            placed: vec![usize::MAX; order.len()],
            used: vec![0; words],
            cand: vec![vec![0; words]; order.len()],
            order,
        }
    }

    fn run(mut self) -> Option<EmbeddingWitness> {
        if !self.place(0) {
            return None;
        }
        let mut map = vec![usize::MAX; self.pattern.n()];
        for (i, &u) in self.order.iter().enumerate() {
            map[u] = self.placed[i];
        }
        let mut spare = (0..self.host.n()).filter(|&x| self.used[x / 64] >> (x % 64) & 1 == 0);
        for m in map.iter_mut().filter(|m| **m == usize::MAX) {
            *m = spare.next().expect("spare count checked");
        }
        Some(EmbeddingWitness { map })
    }

    fn place(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return self.host.n() - self.order.len() >= self.spare_needed;
        }
        let u = self.order[i];
        let mut cand = std::mem::take(&mut self.cand[i]);
        if let (0, Some(x)) = (i, self.pinned) {
            cand.fill(0);
            cand[x / 64] = 1 << (x % 64);
        } else if self.back[i].is_empty() {
            let n = self.host.n();
            for (w, c) in cand.iter_mut().enumerate() {
                let lo = w * 64;
                *c = if lo + 64 <= n {
                    !0
                } else {
                    (1u64 << (n - lo)) - 1
                };
            }
        } else {
            cand.copy_from_slice(self.host.row(self.placed[self.back[i][0]]));
            for &j in &self.back[i][1..] {
                for (c, r) in cand.iter_mut().zip(self.host.row(self.placed[j])) {
                    *c &= r;
                }
            }
        }
        for (c, used) in cand.iter_mut().zip(&self.used) {
            *c &= !used;
        }
        let mut tried: Vec<usize> = Vec::new();
        let mut found = false;
        for x in iter_bits(&cand) {
            if self.hdeg[x] < self.pdeg[u] {
                continue;
            }
            if let Some((open, closed)) = &self.twins {
                if tried
                    .iter()
                    .any(|&t| open[t] == open[x] || closed[t] == closed[x])
                {
                    continue;
                }
                tried.push(x);
            }
            self.placed[i] = x;
            self.used[x / 64] |= 1 << (x % 64);
            if self.place(i + 1) {
                // `used` keeps the embedding for the spare-vertex fill.
                found = true;
                break;
            }
            self.used[x / 64] &= !(1 << (x % 64));
        }
        self.cand[i] = cand;
        found
    }
}

/// Class ids for equal open neighborhoods and equal closed neighborhoods.
fn twin_classes(host: &Graph) -> (Vec<usize>, Vec<usize>) {
    let mut open_ids: HashMap<&[u64], usize> = HashMap::new();
    let open: Vec<usize> = (0..host.n())
        .map(|v| {
            let next = open_ids.len();
            *open_ids.entry(host.row(v)).or_insert(next)
        })
        .collect();
    let mut closed_ids: HashMap<Vec<u64>, usize> = HashMap::new();
    let closed: Vec<usize> = (0..host.n())
        .map(|v| {
            let mut row = host.row(v).to_vec();
            row[v / 64] |= 1 << (v % 64);
            let next = closed_ids.len();
            *closed_ids.entry(row).or_insert(next)
        })
        .collect();
    (open, closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        complete, complete_bipartite, cycle, disjoint_union, empty, join, matching, path,
    };

    #[test]
    fn examples() {
        assert!(contains_subgraph(&cycle(5).unwrap(), &path(4)));
        assert!(!contains_subgraph(
            &complete_bipartite(2, 3).unwrap(),
            &complete(3)
        ));
        let g72 = join(&complete(2), &empty(5));
        assert!(!contains_subgraph(&g72, &cycle(5).unwrap()));
    }

    #[test]
    fn witness_checks_out() {
        let host = join(&complete(2), &empty(5));
        let pat = cycle(4).unwrap();
        let w = find_subgraph(&host, &pat).unwrap();
        assert!(w.is_valid(&host, &pat));
    }

    #[test]
    fn isolated_pattern_vertices_need_room() {
        let pat = disjoint_union(&complete(2), &empty(3));
        assert!(!contains_subgraph(&complete(4), &pat));
        assert!(contains_subgraph(
            &disjoint_union(&complete(2), &empty(3)),
            &pat
        ));
        let w = find_subgraph(&complete(5), &pat).unwrap();
        assert!(w.is_valid(&complete(5), &pat));
        assert!(contains_subgraph(&empty(3), &empty(3)));
        assert!(!contains_subgraph(&empty(2), &empty(3)));
    }

    #[test]
    fn through_vertex() {
        // Triangle on {0,1,2} plus pendant 3 at vertex 2.
        let host = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3)]);
        assert!(find_subgraph_through(&host, &complete(3), 2).is_some());
        assert!(find_subgraph_through(&host, &complete(3), 3).is_none());
        let w = find_subgraph_through(&host, &path(2), 3).unwrap();
        assert!(w.map.contains(&3));
        // Isolated image only.
        let pat = disjoint_union(&complete(2), &empty(1));
        assert!(find_subgraph_through(&host, &pat, 4).is_some());
    }

    #[test]
    fn large_hosts_use_twins() {
        let host = join(&complete(3), &empty(497));
        assert!(!contains_subgraph(&host, &matching(4)));
        assert!(contains_subgraph(&host, &matching(3)));
        assert!(!contains_subgraph(&host, &cycle(7).unwrap()));
        assert!(contains_subgraph(&host, &cycle(6).unwrap()));
    }
}
