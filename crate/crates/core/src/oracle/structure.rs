//! Structure of extremal graphs for `{F, M_{s+1}}` with `F` bipartite: how
//! many vertices see exactly the same `p - 1` neighbors.

use std::collections::HashMap;

use serde::Serialize;

use super::{Budget, ExCache, Problem};
use crate::error::{invalid, Result};
use crate::families::GraphFamily;
use crate::graph::Graph;
use crate::graph6;
use crate::invariants::p_value;

#[derive(Clone, Debug, Serialize)]
pub struct Prop2Report {
    pub n: usize,
    pub s: usize,
    pub p: usize,
    pub value: usize,
    pub exact: bool,
    /// Extremal graphs examined (one per isomorphism class).
    pub extremal_graphs: usize,
    pub witnesses_truncated: bool,
    /// Most vertices sharing one neighborhood of size `p - 1`, over all
    /// extremal graphs.
    pub shared_count: usize,
    /// The shared neighborhood in `best_graph`.
    pub hub: Vec<usize>,
    /// `n - shared_count`.
    pub observed_k: usize,
    /// Vertices outside the hub whose neighborhood is not the hub.
    pub exceptions: usize,
    /// Whether every exception has degree at least `p`.
    pub exceptions_have_degree_p: bool,
    pub best_graph: String,
}

pub fn verify_prop2_structure(
    n: usize,
    f: &Graph,
    s: usize,
    budget: &Budget,
    cache: &ExCache,
) -> Result<Prop2Report> {
    let p = p_value(f)?;
    if p == 0 {
        return Err(invalid("structure report needs a pattern with an edge"));
    }
    if p > s {
        log::info!("p={p} exceeds s={s}; the matching bound dominates");
    }
    let fam = GraphFamily::from_graphs([f.clone()])?;
    let problem = Problem::with_matching_bound(n, &fam, s)?;
    let res = cache.solve(&problem, budget)?;

    let mut best: Option<(usize, Vec<usize>, &Graph)> = None;
    for g in &res.witnesses {
        let (count, hub) = largest_shared_neighborhood(g, p - 1);
        if best.as_ref().is_none_or(|(c, _, _)| count > *c) {
            best = Some((count, hub, g));
        }
    }
    let (shared_count, hub, g) = best.ok_or_else(|| invalid("oracle returned no witness"))?;
    let hub_mask: Vec<bool> = (0..n).map(|v| hub.contains(&v)).collect();
    let exceptions: Vec<usize> = (0..n)
        .filter(|&v| !hub_mask[v])
        .filter(|&v| g.degree(v) != hub.len() || !hub.iter().all(|&h| g.has_edge(v, h)))
        .collect();
    Ok(Prop2Report {
        n,
        s,
        p,
        value: res.value,
        exact: res.exact,
        extremal_graphs: res.witnesses.len(),
        witnesses_truncated: res.witnesses_truncated,
        shared_count,
        observed_k: n - shared_count,
        exceptions: exceptions.len(),
        exceptions_have_degree_p: exceptions.iter().all(|&v| g.degree(v) >= p),
        hub,
        best_graph: graph6::encode(g)?,
    })
}

/// Largest set of vertices whose neighborhoods equal one common set of size
/// `size`, with that set. Ties go to the lexicographically smallest set.
fn largest_shared_neighborhood(g: &Graph, size: usize) -> (usize, Vec<usize>) {
    let mut groups: HashMap<Vec<usize>, usize> = HashMap::new();
    for v in 0..g.n() {
        if g.degree(v) == size {
            *groups.entry(g.neighbors(v).collect()).or_default() += 1;
        }
    }
    groups
        .into_iter()
        .max_by(|(a, ca), (b, cb)| ca.cmp(cb).then_with(|| b.cmp(a)))
        .map(|(hub, count)| (count, hub))
        .unwrap_or((0, Vec::new()))
}
