use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{as_matching, Budget, Engine, ExResult, Problem};
use crate::canon::{label_rows, CanonicalCode};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::find_subgraph_through;

pub const ENGINE_MAX_N: usize = 10;
pub const ENUMERATE_MAX_N: usize = 8;

const GREEDY_ROUNDS: usize = 96;
const GREEDY_SEED: u64 = 0x5eed_e7a1;

/// Exact `ex(n, family)` for `n <= 10`.
pub fn exact_ex(problem: &Problem, budget: &Budget) -> Result<ExResult> {
    let n = problem.n();
    if n > ENGINE_MAX_N {
        return Err(Error::TooLarge {
            n,
            max: ENGINE_MAX_N,
        });
    }
    let constraints = Constraints::from_problem(problem);
    let (lower, greedy) = constraints.greedy_lower_bound(n);
    let run = Generator {
        n,
        lower: lower as u64,
        constraints: &constraints,
        budget,
        started: Instant::now(),
        explored: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
    };
    let finals = run.run();
    let exact = !run.exhausted.load(Ordering::Relaxed);
    let nodes_explored = run.explored.load(Ordering::Relaxed);

    let best = finals
        .iter()
        .map(|f| f.edges)
        .max()
        .filter(|&b| exact || b >= lower);
    let (value, witnesses, truncated) = match best {
        Some(best) => {
            let all: Vec<&Node> = finals.iter().filter(|f| f.edges == best).collect();
            let truncated = all.len() > budget.witness_cap;
            let graphs = all
                .into_iter()
                .take(budget.witness_cap)
                .map(|f| f.code.to_graph())
                .collect();
            (best, graphs, truncated)
        }
        None => {
            // Only reachable when the search was cut short.
            debug_assert!(!exact);
            (lower, vec![crate::canon::canonical_graph(&greedy)?], false)
        }
    };
    Ok(ExResult {
        value,
        witnesses,
        witnesses_truncated: truncated,
        nodes_explored,
        engine: Engine::Bnb,
        exact,
    })
}

/// One graph per isomorphism class on `n <= 8` vertices, in canonical order.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > ENUMERATE_MAX_N {
        return Err(Error::TooLarge {
            n,
            max: ENUMERATE_MAX_N,
        });
    }
    let constraints = Constraints::default();
    let budget = Budget::default();
    let run = Generator {
        n,
        lower: 0,
        constraints: &constraints,
        budget: &budget,
        started: Instant::now(),
        explored: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
    };
    Ok(run.run().into_iter().map(|f| f.code.to_graph()).collect())
}

#[derive(Default)]
struct Constraints {
    /// Largest allowed matching number.
    nu_bound: Option<usize>,
    patterns: Vec<Graph>,
}

impl Constraints {
    fn from_problem(problem: &Problem) -> Self {
        let mut nu_bound: Option<usize> = None;
        let mut patterns = Vec::new();
        for g in problem.family().graphs() {
            match as_matching(g) {
                Some(k) => nu_bound = Some(nu_bound.map_or(k - 1, |b| b.min(k - 1))),
                None => patterns.push(g.clone()),
            }
        }
        Constraints { nu_bound, patterns }
    }

    /// Every copy of a forbidden graph in `g` must use `v`.
    fn admits_through(&self, g: &Graph, v: usize) -> bool {
        self.patterns
            .iter()
            .all(|p| find_subgraph_through(g, p, v).is_none())
    }

    /// Best edge count over randomized greedy maximal graphs, with the graph.
    fn greedy_lower_bound(&self, n: usize) -> (usize, Graph) {
        let mut rng = ChaCha8Rng::seed_from_u64(GREEDY_SEED ^ n as u64);
        let mut pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let mut best = Graph::new(n);
        for _ in 0..GREEDY_ROUNDS {
            pairs.shuffle(&mut rng);
            let mut g = Graph::new(n);
            let mut rows = vec![0u32; n];
            for &(u, v) in &pairs {
                g.add_edge(u, v);
                rows[u] |= 1 << v;
                rows[v] |= 1 << u;
                let nu_ok = self
                    .nu_bound
                    .is_none_or(|b| !has_matching(&rows, full_mask(n), b + 1));
                if !nu_ok || !self.admits_through(&g, u) {
                    g.remove_edge(u, v);
                    rows[u] &= !(1 << v);
                    rows[v] &= !(1 << u);
                }
            }
            if g.edge_count() > best.edge_count() {
                best = g;
            }
        }
        (best.edge_count(), best)
    }
}

fn full_mask(n: usize) -> u32 {
    if n == 32 {
        !0
    } else {
        (1u32 << n) - 1
    }
}

/// Whether the vertices in `avail` carry a matching with `k` edges.
fn has_matching(rows: &[u32], avail: u32, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if (avail.count_ones() as usize) < 2 * k {
        return false;
    }
    let v = avail.trailing_zeros();
    let rest = avail & !(1 << v);
    let mut nb = rows[v as usize] & rest;
    while nb != 0 {
        let u = nb.trailing_zeros();
        nb &= nb - 1;
        if has_matching(rows, rest & !(1 << u), k - 1) {
            return true;
        }
    }
    has_matching(rows, rest, k)
}

struct Node {
    rows: Vec<u32>,
    edges: usize,
    nu: usize,
    code: CanonicalCode,
}

struct Generator<'a> {
    n: usize,
    lower: u64,
    constraints: &'a Constraints,
    budget: &'a Budget,
    started: Instant,
    explored: AtomicU64,
    exhausted: AtomicBool,
}

impl Generator<'_> {
    /// Minimum edge count on `k` vertices for a graph that can still grow
    /// into an `n`-vertex graph with `lower` edges.
    fn threshold(&self, k: usize) -> usize {
        let n = self.n as u64;
        if n < 2 {
            return 0;
        }
        let k = k as u64;
        (self.lower * k * k.saturating_sub(1)).div_ceil(n * (n - 1)) as usize
    }

    fn run(&self) -> Vec<Node> {
        let root = Node {
            rows: Vec::new(),
            edges: 0,
            nu: 0,
            code: label_rows(&[]).code,
        };
        let mut level = vec![root];
        for k in 0..self.n {
            let mut next: Vec<Node> = level
                .par_iter()
                .flat_map_iter(|parent| self.children(parent, k))
                .collect();
            next.sort_unstable_by(|a, b| a.code.cmp(&b.code));
            level = next;
            if self.exhausted.load(Ordering::Relaxed) {
                break;
            }
        }
        if level.first().is_some_and(|f| f.rows.len() != self.n) {
            level.clear();
        }
        level
    }

    fn out_of_budget(&self) -> bool {
        if self.exhausted.load(Ordering::Relaxed) {
            return true;
        }
        let spent = self.explored.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.budget.max_nodes.is_some_and(|m| spent > m);
        let over_time = spent.is_multiple_of(1024)
            && self
                .budget
                .time_limit
                .is_some_and(|t| self.started.elapsed() > t);
        if over_nodes || over_time {
            self.exhausted.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    /// Canonical children of `parent` (which has `k` vertices) on `k + 1` vertices.
    fn children(&self, parent: &Node, k: usize) -> Vec<Node> {
        let need = self.threshold(k + 1);
        let deg: Vec<usize> = parent
            .rows
            .iter()
            .map(|r| r.count_ones() as usize)
            .collect();
        let min_deg = deg.iter().copied().min().unwrap_or(0);
        let lo = need.saturating_sub(parent.edges);
        let hi = if k == 0 { 0 } else { k.min(min_deg + 1) };
        let mut out = Vec::new();
        let mut seen: HashSet<CanonicalCode> = HashSet::new();
        for d in lo..=hi {
            for nbrs in subsets_of_size(k, d) {
                let fits = (0..k).all(|u| deg[u] + (nbrs >> u & 1) as usize >= d);
                if !fits {
                    continue;
                }
                if self.out_of_budget() {
                    return out;
                }
                if let Some(child) = self.try_child(parent, nbrs, d) {
                    if seen.insert(child.code.clone()) {
                        out.push(child);
                    }
                }
            }
        }
        out
    }

    fn try_child(&self, parent: &Node, nbrs: u32, d: usize) -> Option<Node> {
        let k = parent.rows.len();
        let mut rows = parent.rows.clone();
        for (u, r) in rows.iter_mut().enumerate() {
            if nbrs >> u & 1 == 1 {
                *r |= 1 << k;
            }
        }
        rows.push(nbrs);

        let mut nu = parent.nu;
        if let Some(bound) = self.constraints.nu_bound {
            if has_matching(&rows, full_mask(k + 1), parent.nu + 1) {
                nu += 1;
            }
            if nu > bound {
                return None;
            }
        }
        if !self.constraints.patterns.is_empty() {
            let g = Graph::from_word_rows(rows.iter().map(|&r| r as u64));
            if !self.constraints.admits_through(&g, k) {
                return None;
            }
        }

        let lab = label_rows(&rows);
        // Canonical deletion: the min-degree vertex with the largest label.
        let child_min = rows.iter().map(|r| r.count_ones()).min().unwrap_or(0);
        let vstar = (0..=k)
            .filter(|&v| rows[v].count_ones() == child_min)
            .max_by_key(|&v| lab.label[v])
            .expect("nonempty");
        if vstar != k && !same_orbit(&lab.generators, vstar, k) {
            let reduced = delete_row(&rows, vstar);
            if label_rows(&reduced).code != parent.code {
                return None;
            }
        }
        Some(Node {
            rows,
            edges: parent.edges + d,
            nu,
            code: lab.code,
        })
    }
}

fn same_orbit(generators: &[Vec<usize>], a: usize, b: usize) -> bool {
    if generators.is_empty() {
        return false;
    }
    let n = generators[0].len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in generators {
        for (x, &gx) in g.iter().enumerate() {
            let (ra, rb) = (find(&mut parent, x), find(&mut parent, gx));
            if ra != rb {
                parent[ra] = rb;
            }
        }
    }
    find(&mut parent, a) == find(&mut parent, b)
}

/// Rows of the graph with vertex `v` removed and later vertices shifted down.
fn delete_row(rows: &[u32], v: usize) -> Vec<u32> {
    let low = (1u32 << v) - 1;
    rows.iter()
        .enumerate()
        .filter(|&(u, _)| u != v)
        .map(|(_, &r)| (r & low) | ((r >> 1) & !low))
        .collect()
}

/// All `d`-subsets of `{0..k}` as bitmasks, in increasing numeric order.
fn subsets_of_size(k: usize, d: usize) -> impl Iterator<Item = u32> {
    let limit: u64 = 1 << k;
    let mut cur: Option<u64> = if d > k { None } else { Some((1u64 << d) - 1) };
    std::iter::from_fn(move || {
        let x = cur?;
        if x >= limit && !(d == 0 && x == 0) {
            return None;
        }
        cur = if x == 0 {
            None
        } else {
            // Gosper's hack.
            let c = x & x.wrapping_neg();
            let r = x + c;
            Some((((r ^ x) >> 2) / c) | r)
        };
        Some(x as u32)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;
    use crate::families::GraphFamily;
    use crate::graph::{complete, complete_bipartite, matching, path, star};

    fn ex(n: usize, fam: Vec<Graph>) -> ExResult {
        let fam = GraphFamily::from_graphs(fam).unwrap();
        exact_ex(&Problem::new(n, &fam).unwrap(), &Budget::default()).unwrap()
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets_of_size(4, 2).count(), 6);
        assert_eq!(subsets_of_size(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets_of_size(3, 3).collect::<Vec<_>>(), vec![7]);
        assert_eq!(subsets_of_size(2, 3).count(), 0);
        assert_eq!(subsets_of_size(0, 0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn delete_row_shifts() {
        // path 0-1-2, delete 0 -> edge 0-1
        let rows = vec![0b010, 0b101, 0b010];
        assert_eq!(delete_row(&rows, 0), vec![0b10, 0b01]);
    }

    #[test]
    fn examples() {
        assert_eq!(ex(5, vec![complete(3)]).value, 6);
        assert_eq!(ex(7, vec![matching(3)]).value, 11);
        assert_eq!(ex(7, vec![complete(3), matching(3)]).value, 10);
        assert_eq!(ex(7, vec![path(4), matching(3)]).value, 6);
    }

    #[test]
    fn turan_witness_unique() {
        let r = ex(5, vec![complete(3)]);
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(
            canonical_form(&r.witnesses[0]).unwrap(),
            canonical_form(&complete_bipartite(2, 3).unwrap()).unwrap()
        );
        assert!(r.exact);
    }

    #[test]
    fn m2_free_on_five() {
        let r = ex(5, vec![matching(2)]);
        assert_eq!(r.value, 4);
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(
            canonical_form(&r.witnesses[0]).unwrap(),
            canonical_form(&star(5)).unwrap()
        );
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (0..=6)
            .map(|n| enumerate_graphs(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
        assert!(enumerate_graphs(9).is_err());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let fam = GraphFamily::from_graphs([complete(4)]).unwrap();
        let budget = Budget {
            max_nodes: Some(3),
            ..Budget::default()
        };
        let r = exact_ex(&Problem::new(9, &fam).unwrap(), &budget).unwrap();
        assert!(!r.exact);
        assert!(r.value <= 27);
        assert!(!r.witnesses.is_empty());
    }
}
