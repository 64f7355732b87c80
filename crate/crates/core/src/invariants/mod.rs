//! Exact invariants: matching number, subgraph containment, colorings.

mod coloring;
mod containment;
mod matching;

pub use coloring::{
    chromatic_number, color_critical_edges, is_bipartite, p_value, two_coloring, PATTERN_MAX_N,
};
pub use containment::{contains_subgraph, find_subgraph, find_subgraph_through, EmbeddingWitness};
pub use matching::{matching_number, maximum_matching, MatchingWitness};

use crate::families::{FamilyMember, GraphFamily};
use crate::graph::Graph;

pub fn is_family_free(g: &Graph, fam: &GraphFamily) -> bool {
    first_contained_member(g, fam).is_none()
}

/// The first member (in canonical order) that `g` contains.
pub fn first_contained_member<'a>(g: &Graph, fam: &'a GraphFamily) -> Option<&'a FamilyMember> {
    fam.members()
        .iter()
        .find(|m| contains_subgraph(g, &m.graph))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, matching};

    #[test]
    fn family_free_examples() {
        let fam = GraphFamily::from_graphs([complete(3), matching(3)]).unwrap();
        assert!(is_family_free(&complete_bipartite(2, 7).unwrap(), &fam));
        let c5 = GraphFamily::from_graphs([cycle(5).unwrap()]).unwrap();
        assert!(!is_family_free(&complete(5), &c5));
        assert!(is_family_free(&complete(9), &GraphFamily::default()));
    }
}
