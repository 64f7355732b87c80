//! Exact extremal numbers `ex(n, family)` for small `n`.
//!
//! Two independent engines:
//!
//! * [`exact_ex`]: grows family-free graphs one vertex at a time by canonical
//!   augmentation, where the parent of a graph is obtained by deleting a
//!   canonically chosen minimum-degree vertex. Deleting a minimum-degree vertex
//!   never lowers edge density, so a graph on `k` vertices can only lead to an
//!   `n`-vertex graph with at least `L` edges if it has at least
//!   `L * C(k,2) / C(n,2)` edges. `L` starts from a greedy lower bound.
//! * [`naive_ex`]: scans every labeled graph, highest edge count first,
//!   against precomputed labeled copies of the forbidden graphs.
//!
//! Matching constraints are ordinary family members (`M_{s+1}`); the search
//! engine recognizes them and tracks the matching number directly.

mod cache;
mod naive;
mod search;
mod structure;

use std::time::Duration;

use serde::{Deserialize, Serialize};

pub use cache::{ExCache, CACHE_ENV, ENGINE_VERSION};
pub use naive::{naive_ex, NAIVE_MAX_N};
pub use search::{enumerate_graphs, exact_ex, ENGINE_MAX_N, ENUMERATE_MAX_N};
pub use structure::{verify_prop2_structure, Prop2Report};

use crate::error::{invalid, Result};
use crate::families::{GraphFamily, Provenance};
use crate::graph::{matching, Graph};

/// An extremal problem: `n` and the forbidden family.
#[derive(Clone, Debug)]
pub struct Problem {
    n: usize,
    family: GraphFamily,
    vacuous: Vec<String>,
}

impl Problem {
    /// Members with more than `n` vertices cannot occur and are set aside.
    pub fn new(n: usize, family: &GraphFamily) -> Result<Self> {
        let mut kept = GraphFamily::default();
        let mut vacuous = Vec::new();
        for m in family.members() {
            if m.graph.n() > n {
                log::info!(
                    "dropping {} ({} vertices) from a problem on {n} vertices",
                    m.code,
                    m.graph.n()
                );
                vacuous.push(m.code.as_str().to_owned());
            } else if m.graph.edge_count() == 0 {
                return Err(invalid(format!(
                    "every graph on {n} vertices contains the edgeless member {}",
                    m.code
                )));
            } else {
                kept.insert(m.graph.clone(), m.provenance.clone())?;
            }
        }
        Ok(Problem {
            n,
            family: kept,
            vacuous,
        })
    }

    /// `family` plus the matching `M_{s+1}`.
    pub fn with_matching_bound(n: usize, family: &GraphFamily, s: usize) -> Result<Self> {
        let mut fam = family.clone();
        fam.insert(matching(s + 1), Provenance::Matching(s + 1))?;
        Problem::new(n, &fam)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> &GraphFamily {
        &self.family
    }

    /// Canonical graph6 of members dropped for having more than `n` vertices.
    pub fn vacuous_members(&self) -> &[String] {
        &self.vacuous
    }

    /// Cache key: sorted canonical graph6 of the effective family, and `n`.
    pub fn key(&self) -> (Vec<String>, usize) {
        (self.family.to_graph6_list(), self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Bnb,
    Naive,
}

#[derive(Clone, Debug)]
pub struct Budget {
    /// Candidate graphs the search may examine.
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
    pub witness_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: None,
            time_limit: None,
            witness_cap: 100,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExResult {
    pub value: usize,
    /// Extremal graphs, one per isomorphism class, in canonical order.
    pub witnesses: Vec<Graph>,
    pub witnesses_truncated: bool,
    pub nodes_explored: u64,
    pub engine: Engine,
    /// False when the budget ran out; `value` is then only a lower bound.
    pub exact: bool,
}

/// All extremal graphs up to isomorphism (capped), plus a truncation flag.
pub fn extremal_graphs(problem: &Problem, budget: &Budget) -> Result<(Vec<Graph>, bool)> {
    let res = exact_ex(problem, budget)?;
    Ok((res.witnesses, res.witnesses_truncated))
}

/// `k` if `g` is exactly `M_k` (every vertex of degree one).
pub(crate) fn as_matching(g: &Graph) -> Option<usize> {
    (g.n() > 0 && (0..g.n()).all(|v| g.degree(v) == 1)).then(|| g.edge_count())
}
