//! Explicit extremal and lower-bound graphs, each paired with its predicted
//! edge count and the constraints it is meant to satisfy.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::families::{family_f1, GraphFamily};
use crate::formulas::{
    binom2, edge_formula, prop3_value, prop4_divisible, prop4_t, prop4_value, EdgeFormula, Params,
};
use crate::graph::{
    complete, disjoint_union, empty, join, multipartite_unchecked, path, repeat_union, Graph,
};
use crate::invariants::{first_contained_member, is_family_free, matching_number, p_value};
use crate::oracle::{Budget, ExCache, Problem, ENGINE_MAX_N};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionKind {
    Turan,
    Eg,
    Af,
    Thm1,
    C1,
    C2,
    Prop4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// No member of the forbidden family is a subgraph.
    pub family_free: bool,
    pub matching_number: usize,
    /// `matching_number <= s`, or true when no bound applies.
    pub matching_ok: bool,
    pub edges_ok: bool,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.family_free && self.matching_ok && self.edges_ok
    }
}

#[derive(Clone, Debug)]
pub struct ConstructionResult {
    pub kind: ConstructionKind,
    pub params: Params,
    pub graph: Graph,
    pub predicted_edges: u64,
    /// Family the graph must avoid.
    pub forbidden: GraphFamily,
    /// Matching-number bound, if any.
    pub s: Option<usize>,
    pub certificate: Option<Certificate>,
}

impl ConstructionResult {
    fn new(
        kind: ConstructionKind,
        params: Params,
        graph: Graph,
        predicted_edges: u64,
        forbidden: GraphFamily,
        s: Option<usize>,
    ) -> Self {
        ConstructionResult {
            kind,
            params,
            graph,
            predicted_edges,
            forbidden,
            s,
            certificate: None,
        }
    }

    /// Runs the family and matching checks (concurrently) and stores the
    /// outcome.
    pub fn certify(&mut self) -> Certificate {
        let (family_free, nu) = rayon::join(
            || is_family_free(&self.graph, &self.forbidden),
            || matching_number(&self.graph),
        );
        let cert = Certificate {
            family_free,
            matching_number: nu,
            matching_ok: self.s.is_none_or(|s| nu <= s),
            edges_ok: self.graph.edge_count() as u64 == self.predicted_edges,
        };
        self.certificate = Some(cert);
        cert
    }

    pub fn edges(&self) -> usize {
        self.graph.edge_count()
    }
}

fn single(g: Graph) -> Result<GraphFamily> {
    GraphFamily::from_graphs([g])
}

/// Balanced parts of `n` into `k` pieces, larger pieces first.
fn balanced(n: usize, k: usize) -> Vec<usize> {
    (0..k).map(|i| n / k + usize::from(i < n % k)).collect()
}

/// `T(n,k)`, checked against `K_{k+1}`.
pub fn turan_graph(n: usize, k: usize) -> Result<ConstructionResult> {
    let fv = edge_formula(EdgeFormula::Turan { n, k })?;
    let g = multipartite_unchecked(&balanced(n, k));
    Ok(ConstructionResult::new(
        ConstructionKind::Turan,
        fv.params,
        g,
        fv.value,
        single(complete(k + 1))?,
        None,
    ))
}

/// `G(n,s)`: `K_s` joined to `n - s` independent vertices.
pub fn eg_graph(n: usize, s: usize) -> Result<ConstructionResult> {
    let fv = edge_formula(EdgeFormula::Eg { n, s })?;
    let g = join(&complete(s), &empty(n - s));
    Ok(ConstructionResult::new(
        ConstructionKind::Eg,
        fv.params,
        g,
        fv.value,
        GraphFamily::default(),
        Some(s),
    ))
}

/// `G(n,k,s)`: one part of size `n - s`, the other `k - 1` parts a balanced
/// partition of `s`.
pub fn af_graph(n: usize, k: usize, s: usize) -> Result<ConstructionResult> {
    let fv = edge_formula(EdgeFormula::Af { n, k, s })?;
    let mut parts = vec![n - s];
    parts.extend(balanced(s, k - 1));
    let g = multipartite_unchecked(&parts);
    Ok(ConstructionResult::new(
        ConstructionKind::Af,
        fv.params,
        g,
        fv.value,
        single(complete(k + 1))?,
        Some(s),
    ))
}

/// `g0` (on `s` vertices) joined to `n - s` independent vertices. Checked
/// against `f` when given.
pub fn thm1_graph(n: usize, s: usize, g0: &Graph, f: Option<&Graph>) -> Result<ConstructionResult> {
    if g0.n() != s || s > n {
        return Err(invalid(format!(
            "thm1 needs |V(G0)| = s <= n, got |V(G0)|={}, s={s}, n={n}",
            g0.n()
        )));
    }
    let g = join(g0, &empty(n - s));
    let forbidden = match f {
        Some(f) => single(f.clone())?,
        None => GraphFamily::default(),
    };
    Ok(ConstructionResult::new(
        ConstructionKind::Thm1,
        Params {
            n: Some(n),
            s: Some(s),
            ..Default::default()
        },
        g,
        g0.edge_count() as u64 + (s * (n - s)) as u64,
        forbidden,
        Some(s),
    ))
}

/// `K_{p-1}` joined to `h` (default: empty) on `n - p + 1` vertices, where `h`
/// must avoid the `(p-1)`-deletion family of `f` and `M_{s-p+2}`.
pub fn construction1(
    n: usize,
    s: usize,
    f: &Graph,
    h: Option<&Graph>,
) -> Result<ConstructionResult> {
    let p = p_value(f)?;
    if p == 0 || p > s || s > n {
        return Err(invalid(format!(
            "construction 1 needs 1 <= p <= s <= n, got p={p}, s={s}, n={n}"
        )));
    }
    let rest = n - p + 1;
    let h = match h {
        Some(h) => {
            if h.n() != rest {
                return Err(invalid(format!(
                    "H must have {rest} vertices, got {}",
                    h.n()
                )));
            }
            let f1 = family_f1(f, s)?;
            if let Some(m) = first_contained_member(h, &f1) {
                return Err(Error::ForbiddenMember {
                    member: m.code.to_string(),
                });
            }
            h.clone()
        }
        None => {
            // The empty graph contains an edgeless member of the deletion
            // family exactly when `p - 1` vertices cover every edge of `f`.
            if matching_number(f) < p && f.n() <= n {
                return Err(invalid(format!(
                    "p - 1 = {} vertices cover every edge of F, so the empty H is not admissible",
                    p - 1
                )));
            }
            empty(rest)
        }
    };
    let predicted = prop3_value(n, p)?.value + h.edge_count() as u64;
    let g = join(&complete(p - 1), &h);
    Ok(ConstructionResult::new(
        ConstructionKind::C1,
        Params {
            n: Some(n),
            s: Some(s),
            p: Some(p),
            ..Default::default()
        },
        g,
        predicted,
        single(f.clone())?,
        Some(s),
    ))
}

/// `K_{p-1, n+p-2s}` plus a disjoint `f`-free graph `q` on `2s - 2p + 1`
/// vertices. Without `q`, an extremal `f`-free graph from the oracle is used.
pub fn construction2(
    n: usize,
    s: usize,
    f: &Graph,
    q: Option<&Graph>,
    cache: &ExCache,
) -> Result<ConstructionResult> {
    if !f.is_connected() {
        return Err(Error::NotConnected);
    }
    let p = p_value(f)?;
    if p == 0 || p > s || n + p < 2 * s + 1 {
        return Err(invalid(format!(
            "construction 2 needs 1 <= p <= s and n + p - 2s >= 1, got p={p}, s={s}, n={n}"
        )));
    }
    let rest = 2 * s - 2 * p + 1;
    let forbidden = single(f.clone())?;
    let q = match q {
        Some(q) => {
            if q.n() != rest {
                return Err(invalid(format!(
                    "Q must have {rest} vertices, got {}",
                    q.n()
                )));
            }
            if let Some(m) = first_contained_member(q, &forbidden) {
                return Err(Error::ForbiddenMember {
                    member: m.code.to_string(),
                });
            }
            q.clone()
        }
        None => {
            if rest > ENGINE_MAX_N {
                return Err(invalid(format!(
                    "no default Q on {rest} vertices; supply one (oracle limit {ENGINE_MAX_N})"
                )));
            }
            let res = cache.solve(&Problem::new(rest, &forbidden)?, &Budget::default())?;
            res.witnesses
                .into_iter()
                .next()
                .ok_or_else(|| invalid("oracle returned no witness"))?
        }
    };
    let big = n + p - 2 * s;
    let predicted = ((p - 1) * big + q.edge_count()) as u64;
    let g = disjoint_union(&multipartite_unchecked(&[p - 1, big]), &q);
    Ok(ConstructionResult::new(
        ConstructionKind::C2,
        Params {
            n: Some(n),
            s: Some(s),
            p: Some(p),
            ..Default::default()
        },
        g,
        predicted,
        forbidden,
        Some(s),
    ))
}

/// Lower-bound graph for `{P_{2l+1}, M_{s+1}}`: a `G(m, l-1)` (plus one edge
/// inside its independent side when `l` does not divide `s - l + 1`) next to
/// disjoint copies of `K_{2l}`.
pub fn prop4_graph(n: usize, s: usize, l: usize) -> Result<ConstructionResult> {
    let fv = prop4_value(n, s, l)?;
    let (copies, m) = if prop4_divisible(s, l) {
        ((s - l + 1) / l, n + 2 * l - 2 - 2 * s)
    } else {
        let t = prop4_t(s, l);
        (t, n - 2 * l * t)
    };
    let mut base = join(&complete(l - 1), &empty(m - l + 1));
    if !prop4_divisible(s, l) {
        base.add_edge(l - 1, l);
    }
    let g = disjoint_union(&base, &repeat_union(&complete(2 * l), copies));
    Ok(ConstructionResult::new(
        ConstructionKind::Prop4,
        fv.params,
        g,
        fv.value,
        single(path(2 * l + 1))?,
        Some(s),
    ))
}

/// Polarity graph of the projective plane over `GF(q)`, `q` prime, with loops
/// dropped: `q^2 + q + 1` vertices, `q(q+1)^2 / 2` edges, no `C_4`.
pub fn polarity_graph(q: usize) -> Result<Graph> {
    if q < 2 || (2..q).any(|d| q.is_multiple_of(d)) || q > 31 {
        return Err(invalid(format!(
            "polarity graph needs a prime q <= 31, got {q}"
        )));
    }
    // Normalized points: first nonzero coordinate is 1.
    let mut points: Vec<[usize; 3]> = Vec::new();
    for a in 0..q {
        for b in 0..q {
            points.push([1, a, b]);
        }
    }
    for b in 0..q {
        points.push([0, 1, b]);
    }
    points.push([0, 0, 1]);
    let mut g = Graph::new(points.len());
    for (i, x) in points.iter().enumerate() {
        for (j, y) in points.iter().enumerate().skip(i + 1) {
            if (x[0] * y[0] + x[1] * y[1] + x[2] * y[2]) % q == 0 {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// Edge count of [`polarity_graph`].
pub fn polarity_edges(q: usize) -> u64 {
    (q * (q + 1) * (q + 1) / 2) as u64
}

/// Edge count of `K_{min(n, 2s+1)}` padded with isolated vertices.
pub fn clique_block_edges(n: usize, s: usize) -> u64 {
    binom2(n.min(2 * s + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;
    use crate::graph::{cycle, star};

    fn certified(mut r: ConstructionResult) -> ConstructionResult {
        let c = r.certify();
        assert!(c.passed(), "{:?} {:?}", r.kind, c);
        r
    }

    #[test]
    fn turan_examples() {
        assert_eq!(certified(turan_graph(5, 2).unwrap()).edges(), 6);
        assert_eq!(certified(turan_graph(7, 3).unwrap()).edges(), 16);
        assert_eq!(certified(turan_graph(6, 6).unwrap()).edges(), 15);
        assert!(turan_graph(3, 4).is_err());
        assert!(turan_graph(3, 0).is_err());
    }

    #[test]
    fn eg_examples() {
        let r = certified(eg_graph(7, 2).unwrap());
        assert_eq!((r.edges(), r.certificate.unwrap().matching_number), (11, 2));
        assert_eq!(certified(eg_graph(9, 2).unwrap()).edges(), 15);
        assert_eq!(certified(eg_graph(5, 5).unwrap()).edges(), 10);
        assert!(eg_graph(3, 4).is_err());
    }

    #[test]
    fn af_examples() {
        assert_eq!(certified(af_graph(7, 2, 2).unwrap()).edges(), 10);
        assert_eq!(certified(af_graph(9, 3, 4).unwrap()).edges(), 24);
        assert_eq!(certified(af_graph(6, 2, 0).unwrap()).edges(), 0);
        assert!(af_graph(6, 1, 2).is_err());
        assert!(af_graph(3, 2, 4).is_err());
    }

    #[test]
    fn thm1_examples() {
        let c5 = cycle(5).unwrap();
        assert_eq!(
            certified(thm1_graph(9, 2, &complete(2), Some(&c5)).unwrap()).edges(),
            15
        );
        assert_eq!(
            certified(thm1_graph(8, 3, &empty(3), None).unwrap()).edges(),
            15
        );
        let mut r = thm1_graph(6, 2, &complete(2), Some(&complete(3))).unwrap();
        assert!(!r.certify().family_free);
        assert!(thm1_graph(6, 2, &complete(3), None).is_err());
    }

    #[test]
    fn construction1_examples() {
        let r = certified(construction1(10, 3, &path(4), None).unwrap());
        assert_eq!(
            canonical_form(&r.graph).unwrap(),
            canonical_form(&star(10)).unwrap()
        );
        let c6 = cycle(6).unwrap();
        let h = disjoint_union(&complete(2), &empty(8));
        assert_eq!(
            certified(construction1(12, 4, &c6, Some(&h)).unwrap()).edges(),
            22
        );
        assert_eq!(
            certified(construction1(5, 2, &path(4), None).unwrap()).edges(),
            4
        );
        let bad = disjoint_union(&complete(2), &empty(7));
        assert!(matches!(
            construction1(10, 3, &path(4), Some(&bad)),
            Err(Error::ForbiddenMember { .. })
        ));
        assert!(construction1(10, 1, &path(4), None).is_err());
        let double_star = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]);
        assert!(construction1(10, 3, &double_star, None).is_err());
    }

    #[test]
    fn construction2_examples() {
        let cache = ExCache::in_memory();
        let c4 = cycle(4).unwrap();
        let r = certified(construction2(20, 3, &c4, Some(&complete(3)), &cache).unwrap());
        assert_eq!(r.edges(), 19);
        let r = certified(construction2(10, 2, &path(4), None, &cache).unwrap());
        assert_eq!((r.edges(), r.graph.n()), (8, 10));
        let c5 = cycle(5).unwrap();
        assert_eq!(
            certified(construction2(20, 4, &c4, Some(&c5), &cache).unwrap()).edges(),
            19
        );
        let r = certified(construction2(20, 3, &c4, None, &cache).unwrap());
        assert_eq!(r.edges(), 19);
        assert!(matches!(
            construction2(20, 3, &disjoint_union(&c4, &c4), None, &cache),
            Err(Error::NotConnected)
        ));
        assert!(matches!(
            construction2(20, 4, &c4, Some(&complete(5)), &cache),
            Err(Error::ForbiddenMember { .. })
        ));
    }

    #[test]
    fn prop4_examples() {
        assert_eq!(certified(prop4_graph(20, 3, 2).unwrap()).edges(), 21);
        assert_eq!(certified(prop4_graph(20, 4, 2).unwrap()).edges(), 22);
        assert_eq!(certified(prop4_graph(20, 2, 2).unwrap()).edges(), 20);
        assert_eq!(certified(prop4_graph(100, 7, 3).unwrap()).edges(), 201);
        assert!(prop4_graph(20, 3, 1).is_err());
        assert!(prop4_graph(20, 3, 4).is_err());
        assert!(prop4_graph(4, 3, 2).is_err());
    }

    #[test]
    fn polarity_graphs_are_c4_free() {
        let c4 = single(cycle(4).unwrap()).unwrap();
        for q in [2, 3, 5, 7] {
            let g = polarity_graph(q).unwrap();
            assert_eq!(g.n(), q * q + q + 1);
            assert_eq!(g.edge_count() as u64, polarity_edges(q));
            assert!(is_family_free(&g, &c4));
        }
        assert!(polarity_graph(4).is_err());
    }
}
