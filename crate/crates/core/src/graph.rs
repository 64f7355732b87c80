//! Undirected simple graphs over dense vertex labels `0..n`, stored as one
//! adjacency bitset per vertex.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Graph from single-word adjacency rows (`rows.len() <= 64`).
    pub(crate) fn from_word_rows(rows: impl ExactSizeIterator<Item = u64>) -> Self {
        let n = rows.len();
        assert!(n <= WORD);
        Graph {
            n,
            words: 1,
            bits: if n == 0 { Vec::new() } else { rows.collect() },
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of `u64` words in each adjacency row.
    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    /// First word of `v`'s adjacency row; the whole row when `n <= 64`.
    #[inline]
    pub fn row_word(&self, v: usize) -> u64 {
        self.bits[v * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    /// Adds `uv`; returns false when the edge was already present.
    ///
    /// Panics on a loop or an out-of-range endpoint.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "self-loop at {u}");
        assert!(
            u < self.n && v < self.n,
            "edge ({u},{v}) out of range for n={}",
            self.n
        );
        if self.has_edge(u, v) {
            return false;
        }
        self.bits[u * self.words + v / WORD] |= 1 << (v % WORD);
        self.bits[v * self.words + u / WORD] |= 1 << (u % WORD);
        true
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n || !self.has_edge(u, v) {
            return false;
        }
        self.bits[u * self.words + v / WORD] &= !(1 << (v % WORD));
        self.bits[v * self.words + u / WORD] &= !(1 << (u % WORD));
        true
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.bits
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn isolated_count(&self) -> usize {
        (0..self.n).filter(|&v| self.degree(v) == 0).count()
    }

    /// Subgraph induced on `keep`, relabeled so that `keep[i]` becomes `i`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut g = Graph::new(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Deletes the vertices flagged in `remove`; survivors keep their relative order.
    pub fn delete_vertices(&self, remove: &[usize]) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|v| !remove.contains(v)).collect();
        self.induced(&keep)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Graph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Checks the representation invariants: symmetric, loop-free, no stray bits
    /// beyond `n`.
    pub fn is_well_formed(&self) -> bool {
        for u in 0..self.n {
            if self.has_edge(u, u) {
                return false;
            }
            for v in self.neighbors(u) {
                if v >= self.n || !self.has_edge(v, u) {
                    return false;
                }
            }
        }
        self.bits.len() == self.n * self.words
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD + b)
            }
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedKind {
    Empty,
    Complete,
    Path,
    Cycle,
    Star,
    Matching,
    CompleteBipartite,
    CompleteMultipartite,
}

/// Builds a named graph. Vertices are labeled part by part in declaration order.
///
/// Parameter conventions: `empty [n]`, `complete [k]`, `path [k]` (k vertices),
/// `cycle [k]`, `star [k]` (k vertices, one center), `matching [k]` (k edges),
/// `complete_bipartite [a, b]`, `complete_multipartite [sizes...]`.
pub fn make_named_graph(kind: NamedKind, params: &[usize]) -> Result<Graph> {
    let single = |name: &str| -> Result<usize> {
        match params {
            [k] => Ok(*k),
            _ => Err(invalid(format!(
                "{name} takes exactly one parameter, got {params:?}"
            ))),
        }
    };
    let positive = |name: &str, k: usize| -> Result<usize> {
        if k == 0 {
            Err(invalid(format!("{name} needs a positive size")))
        } else {
            Ok(k)
        }
    };
    match kind {
        NamedKind::Empty => Ok(empty(single("empty")?)),
        NamedKind::Complete => Ok(complete(positive("complete", single("complete")?)?)),
        NamedKind::Path => Ok(path(positive("path", single("path")?)?)),
        NamedKind::Cycle => cycle(single("cycle")?),
        NamedKind::Star => Ok(star(positive("star", single("star")?)?)),
        NamedKind::Matching => Ok(matching(positive("matching", single("matching")?)?)),
        NamedKind::CompleteBipartite => match params {
            [a, b] => complete_multipartite(&[*a, *b]),
            _ => Err(invalid("complete_bipartite takes two part sizes")),
        },
        NamedKind::CompleteMultipartite => complete_multipartite(params),
    }
}

pub fn empty(n: usize) -> Graph {
    Graph::new(n)
}

pub fn complete(k: usize) -> Graph {
    let mut g = Graph::new(k);
    for u in 0..k {
        for v in u + 1..k {
            g.add_edge(u, v);
        }
    }
    g
}

/// Path on `k` vertices.
pub fn path(k: usize) -> Graph {
    let mut g = Graph::new(k);
    for v in 1..k {
        g.add_edge(v - 1, v);
    }
    g
}

pub fn cycle(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(invalid(format!("cycle needs at least 3 vertices, got {k}")));
    }
    let mut g = path(k);
    g.add_edge(k - 1, 0);
    Ok(g)
}

/// Star on `k` vertices with center 0.
pub fn star(k: usize) -> Graph {
    let mut g = Graph::new(k);
    for v in 1..k {
        g.add_edge(0, v);
    }
    g
}

/// `k` disjoint edges `(2i, 2i+1)`.
pub fn matching(k: usize) -> Graph {
    let mut g = Graph::new(2 * k);
    for i in 0..k {
        g.add_edge(2 * i, 2 * i + 1);
    }
    g
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    complete_multipartite(&[a, b])
}

pub fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
    if parts.is_empty() {
        return Err(invalid("complete_multipartite needs at least one part"));
    }
    if parts.contains(&0) {
        return Err(invalid(format!("zero-size part in {parts:?}")));
    }
    Ok(multipartite_unchecked(parts))
}

/// Complete multipartite graph where empty parts are allowed.
pub(crate) fn multipartite_unchecked(parts: &[usize]) -> Graph {
    let n = parts.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (i, &size) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, size));
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Disjoint union plus every edge between the two sides. `g` keeps labels
/// `0..|V(g)|`; `h` is shifted up by `|V(g)|`.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let mut out = disjoint_union(g, h);
    let off = g.n();
    for u in 0..g.n() {
        for v in 0..h.n() {
            out.add_edge(u, off + v);
        }
    }
    out
}

pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let off = g.n();
    let mut out = Graph::new(g.n() + h.n());
    for (u, v) in g.edges() {
        out.add_edge(u, v);
    }
    for (u, v) in h.edges() {
        out.add_edge(off + u, off + v);
    }
    out
}

/// `copies` disjoint copies of `g`.
pub fn repeat_union(g: &Graph, copies: usize) -> Graph {
    (0..copies).fold(empty(0), |acc, _| disjoint_union(&acc, g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_examples() {
        assert_eq!(complete(4).edge_count(), 6);
        let m = make_named_graph(NamedKind::Matching, &[3]).unwrap();
        assert_eq!((m.n(), m.edge_count()), (6, 3));
        let t = make_named_graph(NamedKind::CompleteMultipartite, &[3, 2, 2]).unwrap();
        assert_eq!(t.edge_count(), 16);
        assert_eq!(
            make_named_graph(NamedKind::Path, &[5])
                .unwrap()
                .edge_count(),
            4
        );
        for g in [complete(5), path(7), star(6), m, t] {
            assert!(g.is_well_formed());
        }
    }

    #[test]
    fn named_errors() {
        assert!(make_named_graph(NamedKind::Cycle, &[2]).is_err());
        assert!(make_named_graph(NamedKind::CompleteMultipartite, &[]).is_err());
        assert!(make_named_graph(NamedKind::CompleteMultipartite, &[2, 0]).is_err());
        assert!(make_named_graph(NamedKind::CompleteBipartite, &[2]).is_err());
        assert!(make_named_graph(NamedKind::Complete, &[1, 2]).is_err());
    }

    #[test]
    fn join_examples() {
        let k25 = join(&empty(2), &empty(5));
        assert_eq!(k25.edge_count(), 10);
        assert_eq!(join(&complete(2), &empty(5)).edge_count(), 11);
        let wheel = join(&complete(1), &cycle(4).unwrap());
        assert_eq!(wheel.edge_count(), 8);
        assert_eq!(wheel.degree(0), 4);
        assert!(wheel.has_edge(1, 2) && wheel.has_edge(4, 1));
    }

    #[test]
    fn union_examples() {
        let g = disjoint_union(&complete(3), &complete(3));
        assert_eq!((g.n(), g.edge_count()), (6, 6));
        assert_eq!(disjoint_union(&star(16), &complete(4)).edge_count(), 21);
        let p = path(5);
        assert_eq!(disjoint_union(&p, &empty(0)), p);
    }

    #[test]
    fn wide_rows() {
        let mut g = Graph::new(130);
        g.add_edge(0, 129);
        g.add_edge(64, 65);
        assert!(g.has_edge(129, 0));
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![129]);
        assert_eq!(g.edge_count(), 2);
        assert!(g.remove_edge(0, 129));
        assert_eq!(g.edge_count(), 1);
        assert!(g.is_well_formed());
    }

    #[test]
    fn induced_and_delete() {
        let c = cycle(5).unwrap();
        let p = c.delete_vertices(&[0]);
        assert_eq!(p.edges(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(c.components().len(), 1);
        assert_eq!(disjoint_union(&c, &empty(2)).components().len(), 3);
    }
}
