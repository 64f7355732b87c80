//! Reference engine: every labeled graph, checked against every labeled copy
//! of every forbidden graph. Shares nothing with the search engine beyond
//! the `Graph` type.

use std::collections::BTreeSet;

use super::{Budget, Engine, ExResult, Problem};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const NAIVE_MAX_N: usize = 7;

/// Labeled extremal graphs examined for witnesses before giving up on listing.
const LABELED_WITNESS_LIMIT: usize = 50_000;

pub fn naive_ex(problem: &Problem) -> Result<ExResult> {
    let n = problem.n();
    if n > NAIVE_MAX_N {
        return Err(Error::TooLarge {
            n,
            max: NAIVE_MAX_N,
        });
    }
    let slots = Slots::new(n);
    let mut copies: Vec<u32> = Vec::new();
    for f in problem.family().graphs() {
        copies.extend(labeled_copies(f, n, &slots));
    }
    copies.sort_unstable();
    copies.dedup();
    let is_free = |mask: u32| copies.iter().all(|&c| c & !mask != 0);

    let total = slots.count;
    let mut explored = 0u64;
    for e in (0..=total).rev() {
        let mut free: Vec<u32> = Vec::new();
        for mask in masks_with_popcount(total, e) {
            explored += 1;
            if is_free(mask) {
                free.push(mask);
                if free.len() >= LABELED_WITNESS_LIMIT {
                    break;
                }
            }
        }
        if free.is_empty() {
            continue;
        }
        let classes: BTreeSet<Vec<bool>> =
            free.iter().map(|&m| min_relabeling(m, n, &slots)).collect();
        let cap = Budget::default().witness_cap;
        let truncated = classes.len() > cap || free.len() >= LABELED_WITNESS_LIMIT;
        let witnesses = classes
            .into_iter()
            .take(cap)
            .map(|bits| slots.graph_from_bits(&bits))
            .collect();
        return Ok(ExResult {
            value: e,
            witnesses,
            witnesses_truncated: truncated,
            nodes_explored: explored,
            engine: Engine::Naive,
            exact: true,
        });
    }
    unreachable!("the empty graph is free of every family with edges")
}

/// Pair `(i, j)`, `i < j`, to a bit position.
struct Slots {
    n: usize,
    count: usize,
    index: Vec<Vec<usize>>,
}

impl Slots {
    #[allow(clippy::needless_range_loop)]
    fn new(n: usize) -> Self {
        let mut index = vec![vec![usize::MAX; n]; n];
        let mut count = 0;
        for j in 1..n {
            for i in 0..j {
                index[i][j] = count;
                index[j][i] = count;
                count += 1;
            }
        }
        Slots { n, count, index }
    }

    fn graph_from_bits(&self, bits: &[bool]) -> Graph {
        let mut g = Graph::new(self.n);
        for j in 1..self.n {
            for i in 0..j {
                if bits[self.index[i][j]] {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }
}

/// Edge masks of all placements of `f` into `K_n`.
fn labeled_copies(f: &Graph, n: usize, slots: &Slots) -> Vec<u32> {
    let edges = f.edges();
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; f.n()];
    let mut used = vec![false; n];
    fn place(
        i: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        edges: &[(usize, usize)],
        slots: &Slots,
        out: &mut Vec<u32>,
    ) {
        if i == image.len() {
            out.push(
                edges
                    .iter()
                    .fold(0u32, |m, &(u, v)| m | 1 << slots.index[image[u]][image[v]]),
            );
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                image[i] = x;
                place(i + 1, image, used, edges, slots, out);
                used[x] = false;
            }
        }
    }
    if f.n() <= n {
        place(0, &mut image, &mut used, &edges, slots, &mut out);
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn masks_with_popcount(total: usize, e: usize) -> impl Iterator<Item = u32> {
    let limit: u64 = 1 << total;
    let mut cur = Some((1u64 << e) - 1);
    std::iter::from_fn(move || {
        let x = cur?;
        if x >= limit && x != 0 {
            return None;
        }
        cur = if x == 0 {
            None
        } else {
            let c = x & x.wrapping_neg();
            let r = x + c;
            Some((((r ^ x) >> 2) / c) | r)
        };
        Some(x as u32)
    })
}

/// Lexicographically smallest adjacency bit string over all vertex
/// permutations: a brute-force isomorphism class label.
fn min_relabeling(mask: u32, n: usize, slots: &Slots) -> Vec<bool> {
    let adj = |u: usize, v: usize| mask >> slots.index[u][v] & 1 == 1;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    loop {
        let mut bits = vec![false; slots.count];
        for j in 1..n {
            for i in 0..j {
                bits[slots.index[i][j]] = adj(perm[i], perm[j]);
            }
        }
        if best.as_ref().is_none_or(|b| bits < *b) {
            best = Some(bits);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
