//! Canonical labeling by individualization and equitable refinement.
//!
//! The search tree explores ordered partitions; every discrete leaf yields a
//! relabeled adjacency string and the lexicographically largest one is the
//! canonical form. Automorphisms discovered along the way (two leaves with the
//! same string) prune sibling subtrees that lie in the same orbit, and jump
//! back to the deepest common ancestor with the leaf they matched.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;

pub const DEFAULT_MAX_N: usize = 16;
/// Rows are held in `u32` masks.
pub const HARD_MAX_N: usize = 32;

/// Isomorphism-class code: the graph6 string of the canonically relabeled
/// graph. Ordering is byte order, so codes of smaller graphs sort first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalCode {
    bytes: Vec<u8>,
}

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn as_str(&self) -> &str {
        // graph6 output is plain ASCII.
        std::str::from_utf8(&self.bytes).expect("graph6 is ascii")
    }

    /// The canonical representative of the class.
    pub fn to_graph(&self) -> Graph {
        graph6::decode(self.as_str()).expect("canonical codes are valid graph6")
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.as_str())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of a canonical labeling run.
#[derive(Clone, Debug)]
pub struct Labeling {
    pub code: CanonicalCode,
    /// `label[v]` is the canonical position of vertex `v`.
    pub label: Vec<usize>,
    /// Automorphism generators found during the search.
    pub generators: Vec<Vec<usize>>,
    pub nodes: usize,
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalCode> {
    canonical_form_with_limit(g, DEFAULT_MAX_N)
}

pub fn canonical_form_with_limit(g: &Graph, max_n: usize) -> Result<CanonicalCode> {
    Ok(canonical_labeling(g, max_n)?.code)
}

/// The canonically relabeled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    let lab = canonical_labeling(g, DEFAULT_MAX_N)?;
    Ok(g.permuted(&lab.label))
}

pub fn canonical_labeling(g: &Graph, max_n: usize) -> Result<Labeling> {
    let n = g.n();
    let limit = max_n.min(HARD_MAX_N);
    if n > limit {
        return Err(Error::TooLarge { n, max: limit });
    }
    let adj: Vec<u32> = (0..n).map(|v| g.row_word(v) as u32).collect();
    Ok(label_rows(&adj))
}

/// Canonical labeling of a graph given as `u32` adjacency rows.
pub(crate) fn label_rows(adj: &[u32]) -> Labeling {
    let n = adj.len();
    let mut search = Search {
        adj,
        n,
        first: None,
        best: None,
        generators: Vec::new(),
        nodes: 0,
    };
    let unit = if n == 0 {
        Vec::new()
    } else {
        vec![(0..n).collect()]
    };
    let root = refine(adj, unit);
    let mut prefix = Vec::new();
    search.descend(root, &mut prefix);
    let best = search.best.expect("search reaches at least one leaf");
    let mut label = vec![0; n];
    for (pos, &v) in best.order.iter().enumerate() {
        label[v] = pos;
    }
    let relabeled = Graph::from_edges(
        n,
        &(0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| adj[u] >> v & 1 == 1)
            .map(|(u, v)| (label[u], label[v]))
            .collect::<Vec<_>>(),
    );
    let code = CanonicalCode {
        bytes: graph6::encode(&relabeled)
            .expect("n is below the graph6 limit")
            .into_bytes(),
    };
    Labeling {
        code,
        label,
        generators: search.generators,
        nodes: search.nodes,
    }
}

type Partition = Vec<Vec<usize>>;

struct Leaf {
    bits: Vec<u64>,
    order: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    adj: &'a [u32],
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
    nodes: usize,
}

impl Search<'_> {
    /// Returns `Some(depth)` to unwind the recursion up to the node at `depth`.
    fn descend(&mut self, part: Partition, prefix: &mut Vec<usize>) -> Option<usize> {
        self.nodes += 1;
        let Some(target) = part.iter().position(|c| c.len() > 1) else {
            return self.leaf(&part, prefix);
        };
        let depth = prefix.len();
        let mut tried: Vec<usize> = Vec::new();
        let cell = part[target].clone();
        for &v in &cell {
            if !tried.is_empty() && self.same_orbit(prefix, &tried, v) {
                continue;
            }
            tried.push(v);
            let mut child = part.clone();
            let rest: Vec<usize> = cell.iter().copied().filter(|&u| u != v).collect();
            child.splice(target..=target, [vec![v], rest]);
            let child = refine(self.adj, child);
            prefix.push(v);
            let jump = self.descend(child, prefix);
            prefix.pop();
            if let Some(to) = jump {
                if to < depth {
                    return Some(to);
                }
            }
        }
        None
    }

    fn leaf(&mut self, part: &Partition, prefix: &[usize]) -> Option<usize> {
        let order: Vec<usize> = part.iter().map(|c| c[0]).collect();
        let bits = leaf_bits(self.adj, &order);
        let leaf = Leaf {
            bits,
            order,
            path: prefix.to_vec(),
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                bits: leaf.bits.clone(),
                order: leaf.order.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if leaf.bits == first.bits {
            let gen = automorphism(&first.order, &leaf.order, self.n);
            let back = common_prefix(&first.path, &leaf.path);
            self.generators.push(gen);
            return Some(back);
        }
        let best = self.best.as_ref().expect("best is set with first");
        match leaf.bits.cmp(&best.bits) {
            Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            Ordering::Equal => {
                let gen = automorphism(&best.order, &leaf.order, self.n);
                let back = common_prefix(&best.path, &leaf.path);
                self.generators.push(gen);
                Some(back)
            }
            Ordering::Less => None,
        }
    }

    /// Whether `v` shares an orbit with an already tried vertex under the
    /// generators that fix `prefix` pointwise.
    fn same_orbit(&self, prefix: &[usize], tried: &[usize], v: usize) -> bool {
        let usable: Vec<&Vec<usize>> = self
            .generators
            .iter()
            .filter(|g| prefix.iter().all(|&p| g[p] == p))
            .collect();
        if usable.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in usable {
            for (x, &gx) in g.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, gx));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == rv)
    }
}

/// `gamma` with `gamma[from[i]] = to[i]`.
fn automorphism(from: &[usize], to: &[usize], n: usize) -> Vec<usize> {
    let mut gamma = vec![0; n];
    for (&a, &b) in from.iter().zip(to) {
        gamma[a] = b;
    }
    gamma
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Upper triangle of the relabeled adjacency matrix, column-major, MSB first.
fn leaf_bits(adj: &[u32], order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let slots = n * n.saturating_sub(1) / 2;
    let mut out = vec![0u64; slots.div_ceil(64).max(1)];
    let mut k = 0;
    for j in 1..n {
        let row = adj[order[j]];
        for &oi in &order[..j] {
            if row >> oi & 1 == 1 {
                out[k / 64] |= 1 << (63 - k % 64);
            }
            k += 1;
        }
    }
    out
}

/// Equitable refinement: split cells by neighbor counts into each splitter
/// cell until stable. Fragments are ordered by count, which keeps the result
/// independent of vertex labels.
fn refine(adj: &[u32], mut part: Partition) -> Partition {
    let mut si = 0;
    while si < part.len() {
        let mask: u32 = part[si].iter().fold(0, |m, &v| m | 1 << v);
        let mut next: Partition = Vec::with_capacity(part.len());
        let mut split = false;
        for cell in &part {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(u32, usize)> = cell
                .iter()
                .map(|&v| ((adj[v] & mask).count_ones(), v))
                .collect();
            keyed.sort_unstable();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
            if keyed[0].0 != keyed[keyed.len() - 1].0 {
                split = true;
            }
        }
        part = next;
        if split {
            si = 0;
        } else {
            si += 1;
        }
    }
    part
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, empty, path};

    #[test]
    fn relabeled_paths_agree() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let b = Graph::from_edges(3, &[(0, 2), (2, 1)]);
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        assert_ne!(
            canonical_form(&complete(3)).unwrap(),
            canonical_form(&path(3)).unwrap()
        );
    }

    #[test]
    fn symmetric_graphs_stay_cheap() {
        for g in [empty(16), complete(16), cycle(16).unwrap()] {
            let lab = canonical_labeling(&g, 16).unwrap();
            assert!(lab.nodes < 2000, "{} nodes", lab.nodes);
        }
    }

    #[test]
    fn code_decodes_to_isomorphic_copy() {
        let g = Graph::from_edges(6, &[(0, 5), (5, 2), (2, 3), (1, 4)]);
        let c = canonical_form(&g).unwrap();
        let h = c.to_graph();
        assert_eq!(h.edge_count(), 4);
        assert_eq!(canonical_form(&h).unwrap(), c);
        assert_eq!(canonical_graph(&g).unwrap(), h);
    }

    #[test]
    fn respects_limit() {
        assert!(canonical_form(&empty(17)).is_err());
        assert!(canonical_form_with_limit(&empty(20), 24).is_ok());
    }
}
