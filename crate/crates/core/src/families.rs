//! Forbidden families derived from a pattern graph.
//!
//! * [`delete_color_classes`]: every graph `F - I` for a nonempty color class `I`.
//! * [`delete_vertex_subsets`]: every graph `F - S` with `|S| = r`.
//! * [`family_f1`]: the `(p-1)`-deletion family plus the matching `M_{s-p+2}`.
//!
//! Members keep their isolated vertices; they matter for containment.
//!
//! For an odd cycle `C_{2l+1}` the color-class family consists of `P_{2l}`
//! and graphs with `l+1` vertices (deleting independent sets of size up to
//! `l`). In particular it contains `P_{2l}` itself, so `ex(s, F) < C(s, 2)`
//! as soon as `s >= 2l`. Claims about an "edge plus `2l-1` isolated vertices"
//! member do not follow from this definition.

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form_with_limit, CanonicalCode, HARD_MAX_N};
use crate::error::{invalid, Error, Result};
use crate::graph::{matching, Graph};
use crate::invariants::{chromatic_number, contains_subgraph, p_value, PATTERN_MAX_N};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Vertices of the source pattern that were removed.
    Deleted(Vec<usize>),
    /// The matching with this many edges.
    Matching(usize),
    Given,
}

#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub graph: Graph,
    pub code: CanonicalCode,
    pub provenance: Provenance,
}

/// Finite family of graphs, one member per isomorphism class, kept in
/// canonical-code order.
#[derive(Clone, Debug, Default)]
pub struct GraphFamily {
    members: Vec<FamilyMember>,
}

impl GraphFamily {
    pub fn from_graphs(graphs: impl IntoIterator<Item = Graph>) -> Result<Self> {
        let mut fam = GraphFamily::default();
        for g in graphs {
            fam.insert(g, Provenance::Given)?;
        }
        Ok(fam)
    }

    /// Adds `g` unless an isomorphic member exists; returns whether it was added.
    pub fn insert(&mut self, g: Graph, provenance: Provenance) -> Result<bool> {
        let code = canonical_form_with_limit(&g, HARD_MAX_N)?;
        match self.members.binary_search_by(|m| m.code.cmp(&code)) {
            Ok(_) => Ok(false),
            Err(at) => {
                self.members.insert(
                    at,
                    FamilyMember {
                        graph: g,
                        code,
                        provenance,
                    },
                );
                Ok(true)
            }
        }
    }

    pub fn members(&self) -> &[FamilyMember] {
        &self.members
    }

    pub fn graphs(&self) -> impl Iterator<Item = &Graph> {
        self.members.iter().map(|m| &m.graph)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_class_of(&self, g: &Graph) -> bool {
        canonical_form_with_limit(g, HARD_MAX_N)
            .map(|code| self.members.binary_search_by(|m| m.code.cmp(&code)).is_ok())
            .unwrap_or(false)
    }

    pub fn union(&self, other: &GraphFamily) -> GraphFamily {
        let mut out = self.clone();
        for m in &other.members {
            if let Err(at) = out.members.binary_search_by(|x| x.code.cmp(&m.code)) {
                out.members.insert(at, m.clone());
            }
        }
        out
    }

    /// Canonical graph6 strings in sorted order; the family's cache key.
    pub fn to_graph6_list(&self) -> Vec<String> {
        self.members
            .iter()
            .map(|m| m.code.as_str().to_owned())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassMode {
    /// Any nonempty independent set.
    #[default]
    IndependentSets,
    /// Only classes of proper colorings with exactly `chi(F)` colors.
    ChiColorings,
}

fn check_pattern(f: &Graph) -> Result<()> {
    if f.n() > PATTERN_MAX_N {
        Err(Error::TooLarge {
            n: f.n(),
            max: PATTERN_MAX_N,
        })
    } else {
        Ok(())
    }
}

fn mask_vertices(mask: u32) -> Vec<usize> {
    (0..32).filter(|&v| mask >> v & 1 == 1).collect()
}

pub fn delete_color_classes(f: &Graph, mode: ClassMode) -> Result<GraphFamily> {
    check_pattern(f)?;
    let n = f.n();
    let rows: Vec<u32> = (0..n).map(|v| f.row_word(v) as u32).collect();
    let chi = match mode {
        ClassMode::ChiColorings => Some(chromatic_number(f)?),
        ClassMode::IndependentSets => None,
    };
    let mut fam = GraphFamily::default();
    for mask in 1u32..(1 << n) {
        let independent = mask_vertices(mask).iter().all(|&v| rows[v] & mask == 0);
        if !independent {
            continue;
        }
        let removed = mask_vertices(mask);
        let rest = f.delete_vertices(&removed);
        if let Some(chi) = chi {
            // I is a class of a chi-coloring iff F - I is (chi-1)-colorable.
            if chromatic_number(&rest)? + 1 != chi {
                continue;
            }
        }
        fam.insert(rest, Provenance::Deleted(removed))?;
    }
    Ok(fam)
}

pub fn delete_vertex_subsets(f: &Graph, r: usize) -> Result<GraphFamily> {
    check_pattern(f)?;
    let n = f.n();
    if r >= n {
        return Err(invalid(format!(
            "cannot delete {r} of {n} vertices (need r < |V(F)|)"
        )));
    }
    let mut fam = GraphFamily::default();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != r {
            continue;
        }
        let removed = mask_vertices(mask);
        fam.insert(f.delete_vertices(&removed), Provenance::Deleted(removed))?;
    }
    Ok(fam)
}

pub fn family_f1(f: &Graph, s: usize) -> Result<GraphFamily> {
    let p = p_value(f)?;
    if p > s {
        return Err(invalid(format!("p(F) = {p} exceeds s = {s}")));
    }
    if p == 0 {
        return Err(invalid("p(F) = 0: F has no edges"));
    }
    let mut fam = delete_vertex_subsets(f, p - 1)?;
    let k = s - p + 2;
    fam.insert(matching(k), Provenance::Matching(k))?;
    Ok(fam)
}

/// Drops members that contain another member; the free class is unchanged.
pub fn minimalize(fam: &GraphFamily) -> GraphFamily {
    let keep: Vec<FamilyMember> = fam
        .members
        .iter()
        .enumerate()
        .filter(|(i, a)| {
            !fam.members
                .iter()
                .enumerate()
                .any(|(j, b)| j != *i && contains_subgraph(&a.graph, &b.graph))
        })
        .map(|(_, m)| m.clone())
        .collect();
    GraphFamily { members: keep }
}
