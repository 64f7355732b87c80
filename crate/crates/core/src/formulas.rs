//! Closed-form edge counts. Pure integer arithmetic with no dependency on the
//! graph builders, so that formula/construction agreement is a real check.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Named parameters shared by formulas, constructions and report rows.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
}

impl Params {
    /// `(name, value)` for every present parameter, in declaration order.
    pub fn entries(&self) -> Vec<(&'static str, usize)> {
        [
            ("n", self.n),
            ("s", self.s),
            ("k", self.k),
            ("l", self.l),
            ("t", self.t),
            ("p", self.p),
        ]
        .into_iter()
        .filter_map(|(name, v)| v.map(|v| (name, v)))
        .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaId {
    Turan,
    Eg,
    EgMax,
    Af,
    AfMax,
    Thm1,
    Prop2Leading,
    Prop3,
    Prop4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaValue {
    pub value: u64,
    pub formula_id: FormulaId,
    pub params: Params,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeFormula {
    /// `|E(T(n,k))|`
    Turan { n: usize, k: usize },
    /// `|E(G(n,s))|`
    Eg { n: usize, s: usize },
    /// Largest of `G(n,s)` and the biggest clique that fits, `K_{min(n, 2s+1)}`.
    EgMax { n: usize, s: usize },
    /// `|E(G(n,k,s))|`
    Af { n: usize, k: usize, s: usize },
    /// Largest of `G(n,k,s)` and `T(min(n, 2s+1), k)`.
    AfMax { n: usize, k: usize, s: usize },
}

pub fn binom2(m: usize) -> u64 {
    let m = m as u64;
    m * m.saturating_sub(1) / 2
}

/// Edges of the balanced complete `k`-partite graph on `n` vertices, `k >= 1`.
fn turan_edges(n: usize, k: usize) -> u64 {
    let (q, r) = (n / k, n % k);
    binom2(n) - r as u64 * binom2(q + 1) - (k - r) as u64 * binom2(q)
}

pub fn edge_formula(f: EdgeFormula) -> Result<FormulaValue> {
    let (formula_id, params, value) = match f {
        EdgeFormula::Turan { n, k } => {
            if k == 0 || k > n {
                return Err(invalid(format!(
                    "turan needs 1 <= k <= n, got n={n}, k={k}"
                )));
            }
            (
                FormulaId::Turan,
                Params {
                    n: Some(n),
                    k: Some(k),
                    ..Default::default()
                },
                turan_edges(n, k),
            )
        }
        EdgeFormula::Eg { n, s } => {
            if s > n {
                return Err(invalid(format!("eg needs s <= n, got n={n}, s={s}")));
            }
            (
                FormulaId::Eg,
                Params {
                    n: Some(n),
                    s: Some(s),
                    ..Default::default()
                },
                eg(n, s),
            )
        }
        EdgeFormula::EgMax { n, s } => {
            let dominated = if s <= n { eg(n, s) } else { binom2(n) };
            let clique = binom2(n.min(2 * s + 1));
            (
                FormulaId::EgMax,
                Params {
                    n: Some(n),
                    s: Some(s),
                    ..Default::default()
                },
                dominated.max(clique),
            )
        }
        EdgeFormula::Af { n, k, s } => {
            check_af(n, k, s)?;
            (
                FormulaId::Af,
                Params {
                    n: Some(n),
                    k: Some(k),
                    s: Some(s),
                    ..Default::default()
                },
                af(n, k, s),
            )
        }
        EdgeFormula::AfMax { n, k, s } => {
            check_af(n, k, s)?;
            let m = n.min(2 * s + 1);
            let dense = if m == 0 { 0 } else { turan_edges(m, k.min(m)) };
            (
                FormulaId::AfMax,
                Params {
                    n: Some(n),
                    k: Some(k),
                    s: Some(s),
                    ..Default::default()
                },
                af(n, k, s).max(dense),
            )
        }
    };
    Ok(FormulaValue {
        value,
        formula_id,
        params,
    })
}

fn eg(n: usize, s: usize) -> u64 {
    binom2(s) + (s * (n - s)) as u64
}

fn check_af(n: usize, k: usize, s: usize) -> Result<()> {
    if k < 2 || s > n {
        return Err(invalid(format!(
            "af needs k >= 2 and s <= n, got n={n}, k={k}, s={s}"
        )));
    }
    Ok(())
}

fn af(n: usize, k: usize, s: usize) -> u64 {
    let small = if s == 0 {
        0
    } else {
        turan_edges(s, (k - 1).min(s))
    };
    (s * (n - s)) as u64 + small
}

/// `ex(s, family) + s(n - s)`.
pub fn thm1_value(n: usize, s: usize, ex_s_family: u64) -> Result<FormulaValue> {
    if s > n {
        return Err(invalid(format!("thm1 needs s <= n, got n={n}, s={s}")));
    }
    if ex_s_family > binom2(s) {
        return Err(invalid(format!(
            "ex(s, family) = {ex_s_family} exceeds C({s}, 2)"
        )));
    }
    Ok(FormulaValue {
        value: ex_s_family + (s * (n - s)) as u64,
        formula_id: FormulaId::Thm1,
        params: Params {
            n: Some(n),
            s: Some(s),
            ..Default::default()
        },
    })
}

/// Leading term `(p - 1) n` of the bipartite estimate; only a baseline, the
/// additive constant is left to the oracle.
pub fn prop2_leading_term(n: usize, p: usize) -> Result<FormulaValue> {
    if p == 0 {
        return Err(invalid("p must be positive"));
    }
    Ok(FormulaValue {
        value: ((p - 1) * n) as u64,
        formula_id: FormulaId::Prop2Leading,
        params: Params {
            n: Some(n),
            p: Some(p),
            ..Default::default()
        },
    })
}

/// `(p-1)(n-p+1) + C(p-1, 2)`.
pub fn prop3_value(n: usize, p: usize) -> Result<FormulaValue> {
    if p == 0 || n < p {
        return Err(invalid(format!(
            "prop3 needs 1 <= p <= n, got n={n}, p={p}"
        )));
    }
    Ok(FormulaValue {
        value: ((p - 1) * (n - p + 1)) as u64 + binom2(p - 1),
        formula_id: FormulaId::Prop3,
        params: Params {
            n: Some(n),
            p: Some(p),
            ..Default::default()
        },
    })
}

/// Whether the clique count `(s-l+1)/l` is integral.
pub fn prop4_divisible(s: usize, l: usize) -> bool {
    (s - l + 1).is_multiple_of(l)
}

/// Number of `K_{2l}` copies in the non-divisible case.
pub fn prop4_t(s: usize, l: usize) -> usize {
    (s - l + 1) / l
}

/// Smallest `n` for which the odd-path construction is well defined: the
/// dominated part needs one free vertex (two in the non-divisible case, for
/// the extra edge).
pub fn prop4_min_n(s: usize, l: usize) -> usize {
    if prop4_divisible(s, l) {
        2 * s - 2 * l + 2 + l
    } else {
        2 * l * prop4_t(s, l) + l + 1
    }
}

/// Extremal value for `{P_{2l+1}, M_{s+1}}`, with the binomial term read as
/// `C(l-1, 2)`.
pub fn prop4_value(n: usize, s: usize, l: usize) -> Result<FormulaValue> {
    if l < 2 || l > s {
        return Err(invalid(format!(
            "prop4 needs 2 <= l <= s, got l={l}, s={s}"
        )));
    }
    if n < prop4_min_n(s, l) {
        return Err(invalid(format!(
            "prop4 needs n >= {} for s={s}, l={l}",
            prop4_min_n(s, l)
        )));
    }
    let base = binom2(l - 1);
    let (value, t) = if prop4_divisible(s, l) {
        (
            ((l - 1) * (n + l - 1 - 2 * s)) as u64 + base + ((s - l + 1) * (2 * l - 1)) as u64,
            None,
        )
    } else {
        let t = prop4_t(s, l);
        (
            ((l - 1) * (n - l + 1 - 2 * l * t)) as u64 + 1 + base + t as u64 * binom2(2 * l),
            Some(t),
        )
    };
    Ok(FormulaValue {
        value,
        formula_id: FormulaId::Prop4,
        params: Params {
            n: Some(n),
            s: Some(s),
            l: Some(l),
            t,
            ..Default::default()
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: EdgeFormula) -> u64 {
        edge_formula(f).unwrap().value
    }

    #[test]
    fn edge_formula_examples() {
        assert_eq!(v(EdgeFormula::EgMax { n: 5, s: 2 }), 10);
        assert_eq!(v(EdgeFormula::Turan { n: 7, k: 3 }), 16);
        assert_eq!(v(EdgeFormula::Af { n: 9, k: 3, s: 4 }), 24);
        assert_eq!(v(EdgeFormula::Eg { n: 7, s: 2 }), 11);
        assert_eq!(v(EdgeFormula::EgMax { n: 7, s: 2 }), 11);
        assert_eq!(v(EdgeFormula::AfMax { n: 7, k: 2, s: 2 }), 10);
    }

    #[test]
    fn small_n_clips_the_clique() {
        // ex(n, M_{s+1}) = C(n, 2) whenever n <= 2s + 1.
        assert_eq!(v(EdgeFormula::EgMax { n: 3, s: 2 }), 3);
        assert_eq!(v(EdgeFormula::EgMax { n: 4, s: 2 }), 6);
        assert_eq!(v(EdgeFormula::EgMax { n: 3, s: 3 }), 3);
        assert_eq!(v(EdgeFormula::EgMax { n: 6, s: 3 }), 15);
    }

    #[test]
    fn edge_formula_errors() {
        assert!(edge_formula(EdgeFormula::Turan { n: 3, k: 4 }).is_err());
        assert!(edge_formula(EdgeFormula::Turan { n: 3, k: 0 }).is_err());
        assert!(edge_formula(EdgeFormula::Af { n: 3, k: 1, s: 1 }).is_err());
        assert!(edge_formula(EdgeFormula::Eg { n: 3, s: 4 }).is_err());
    }

    #[test]
    fn thm1_examples() {
        assert_eq!(thm1_value(9, 2, 1).unwrap().value, 15);
        assert_eq!(thm1_value(12, 0, 0).unwrap().value, 0);
        assert_eq!(thm1_value(7, 2, 0).unwrap().value, 10);
        assert!(thm1_value(7, 2, 2).is_err());
    }

    #[test]
    fn prop3_examples() {
        assert_eq!(prop3_value(10, 2).unwrap().value, 9);
        assert_eq!(prop3_value(17, 1).unwrap().value, 0);
        assert_eq!(prop3_value(12, 3).unwrap().value, 21);
        assert!(prop3_value(2, 3).is_err());
    }

    #[test]
    fn prop4_examples() {
        assert_eq!(prop4_value(20, 3, 2).unwrap().value, 21);
        assert_eq!(prop4_value(20, 4, 2).unwrap().value, 22);
        assert_eq!(prop4_value(20, 2, 2).unwrap().value, 20);
        assert_eq!(prop4_value(100, 7, 3).unwrap().value, 201);
        assert!(prop4_value(20, 2, 1).is_err());
        assert!(prop4_value(20, 2, 3).is_err());
    }

    #[test]
    fn prop4_branch_selection() {
        for s in 2..=12 {
            for l in 2..=s {
                let fv = prop4_value(200, s, l).unwrap();
                let divides = (s - l + 1) % l == 0;
                assert_eq!(fv.params.t.is_none(), divides, "s={s} l={l}");
            }
        }
    }

    #[test]
    fn thm1_round_trip() {
        for n in 0..12 {
            for s in 0..=n {
                for ex in 0..=binom2(s) {
                    let v = thm1_value(n, s, ex).unwrap().value;
                    assert_eq!(v - (s * (n - s)) as u64, ex);
                }
            }
        }
    }
}
