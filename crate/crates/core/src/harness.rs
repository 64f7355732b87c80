//! Verification grids: closed-form value, exact oracle value and explicit
//! construction side by side, one row per grid point.

use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{
    af_graph, construction1, eg_graph, prop4_graph, thm1_graph, turan_graph, ConstructionResult,
};
use crate::error::{invalid, Error, Result};
use crate::families::{delete_color_classes, ClassMode, GraphFamily};
use crate::formulas::{edge_formula, prop3_value, prop4_value, thm1_value, EdgeFormula};
use crate::graph::{complete, cycle, disjoint_union, empty, path, Graph};
use crate::graph6;
use crate::invariants::{is_bipartite, is_family_free, matching_number, p_value};
use crate::oracle::{Budget, ExCache, Problem, ENGINE_MAX_N, ENGINE_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    Turan,
    ErdosGallai,
    AlonFrankl,
    Thm1,
    Prop3,
    Prop4,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::Turan,
        TheoremId::ErdosGallai,
        TheoremId::AlonFrankl,
        TheoremId::Thm1,
        TheoremId::Prop3,
        TheoremId::Prop4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Turan => "turan",
            TheoremId::ErdosGallai => "erdos_gallai",
            TheoremId::AlonFrankl => "alon_frankl",
            TheoremId::Thm1 => "thm1",
            TheoremId::Prop3 => "prop3",
            TheoremId::Prop4 => "prop4",
        }
    }

    /// Exact for every `n`; the others only claim equality for large `n`.
    pub fn is_exact(self) -> bool {
        matches!(
            self,
            TheoremId::Turan | TheoremId::ErdosGallai | TheoremId::AlonFrankl
        )
    }

    /// Parameters each grid point must carry, besides `n`.
    fn required(self) -> &'static [&'static str] {
        match self {
            TheoremId::Turan => &["k"],
            TheoremId::ErdosGallai => &["s"],
            TheoremId::AlonFrankl => &["k", "s"],
            TheoremId::Thm1 | TheoremId::Prop3 => &["s", "F"],
            TheoremId::Prop4 => &["s", "l"],
        }
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| invalid(format!("unknown theorem {s:?}")))
    }
}

/// One grid point. `f` is the forbidden pattern where the theorem takes one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub n: usize,
    pub s: Option<usize>,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub f: Option<Graph>,
}

impl Point {
    fn new(n: usize) -> Self {
        Point {
            n,
            s: None,
            k: None,
            l: None,
            f: None,
        }
    }

    fn has(&self, key: &str) -> bool {
        match key {
            "s" => self.s.is_some(),
            "k" => self.k.is_some(),
            "l" => self.l.is_some(),
            "F" => self.f.is_some(),
            _ => true,
        }
    }
}

/// Parses `n=5..9;s=2;F=Bw`. Values are `a..b` (inclusive), comma lists, or
/// graph6 lists for `F`. Points vary `n` fastest.
pub fn parse_grid(spec: &str) -> Result<Vec<Point>> {
    let mut ns = None;
    let mut ints: [(&str, Option<Vec<usize>>); 3] = [("s", None), ("k", None), ("l", None)];
    let mut fs: Option<Vec<Graph>> = None;
    for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| invalid(format!("grid entry {part:?} is not key=value")))?;
        let key = key.trim();
        let value = value.trim();
        if key == "F" {
            fs = Some(
                value
                    .split(',')
                    .map(graph6::decode)
                    .collect::<Result<_>>()?,
            );
        } else if key == "n" {
            ns = Some(parse_values(value)?);
        } else if let Some(slot) = ints.iter_mut().find(|(k, _)| *k == key) {
            slot.1 = Some(parse_values(value)?);
        } else {
            return Err(invalid(format!("unknown grid key {key:?}")));
        }
    }
    let ns = ns.ok_or_else(|| invalid("grid needs n"))?;
    let opt = |v: Option<Vec<usize>>| -> Vec<Option<usize>> {
        v.map_or(vec![None], |v| v.into_iter().map(Some).collect())
    };
    let [(_, s), (_, k), (_, l)] = ints;
    let fs: Vec<Option<Graph>> = fs.map_or(vec![None], |v| v.into_iter().map(Some).collect());
    let mut points = Vec::new();
    for f in &fs {
        for &s in &opt(s.clone()) {
            for &k in &opt(k.clone()) {
                for &l in &opt(l.clone()) {
                    for &n in &ns {
                        points.push(Point {
                            n,
                            s,
                            k,
                            l,
                            f: f.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(points)
}

fn parse_values(value: &str) -> Result<Vec<usize>> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| invalid(format!("bad grid number {t:?}")))
    };
    if let Some((a, b)) = value.split_once("..") {
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            return Err(invalid(format!("empty range {value:?}")));
        }
        Ok((a..=b).collect())
    } else {
        value.split(',').map(num).collect()
    }
}

/// Named grids reproducing each theorem at small `n`.
pub const PRESETS: [&str; 9] = [
    "turan",
    "erdos_gallai",
    "alon_frankl",
    "thm1_k3",
    "thm1_c5",
    "thm1",
    "prop3_p4",
    "prop4_s2",
    "prop4_s3",
];

pub fn preset(name: &str) -> Result<(TheoremId, Vec<Point>)> {
    let range = |lo: usize, hi: usize, f: &dyn Fn(&mut Point)| -> Vec<Point> {
        (lo..=hi)
            .map(|n| {
                let mut p = Point::new(n);
                f(&mut p);
                p
            })
            .collect()
    };
    let c5 = cycle(5)?;
    Ok(match name {
        "turan" => (
            TheoremId::Turan,
            [2, 3]
                .into_iter()
                .flat_map(|k| range(3, 9, &|p| p.k = Some(k)))
                .collect(),
        ),
        "erdos_gallai" => (
            TheoremId::ErdosGallai,
            (1..=3)
                .flat_map(|s| range(3, 9, &|p| p.s = Some(s)))
                .collect(),
        ),
        "alon_frankl" => (
            TheoremId::AlonFrankl,
            (1..=3)
                .flat_map(|s| {
                    range(2 * s + 1, 9, &|p| {
                        p.s = Some(s);
                        p.k = Some(2);
                    })
                })
                .collect(),
        ),
        "thm1_k3" => (
            TheoremId::Thm1,
            range(5, 9, &|p| {
                p.s = Some(2);
                p.f = Some(complete(3));
            }),
        ),
        "thm1_c5" => (
            TheoremId::Thm1,
            range(5, 9, &|p| {
                p.s = Some(2);
                p.f = Some(c5.clone());
            }),
        ),
        "thm1" => {
            let mut points = preset("thm1_k3")?.1;
            points.extend(preset("thm1_c5")?.1);
            (TheoremId::Thm1, points)
        }
        "prop3_p4" => (
            TheoremId::Prop3,
            range(5, 9, &|p| {
                p.s = Some(2);
                p.f = Some(path(4));
            }),
        ),
        "prop4_s2" | "prop4_s3" => {
            let s = if name == "prop4_s2" { 2 } else { 3 };
            (
                TheoremId::Prop4,
                range(6, 9, &|p| {
                    p.s = Some(s);
                    p.l = Some(2);
                }),
            )
        }
        _ => return Err(invalid(format!("unknown preset {name:?}"))),
    })
}

/// The preset run when none is named.
pub fn default_preset(theorem: TheoremId) -> Result<Vec<Point>> {
    match theorem {
        TheoremId::Prop4 => {
            let mut points = preset("prop4_s2")?.1;
            points.extend(preset("prop4_s3")?.1);
            Ok(points)
        }
        TheoremId::Prop3 => Ok(preset("prop3_p4")?.1),
        t => Ok(preset(t.as_str())?.1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub theorem_id: TheoremId,
    pub n: usize,
    pub s: Option<usize>,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub p: Option<usize>,
    /// graph6 of the forbidden pattern.
    pub pattern: Option<String>,
    pub formula: Option<u64>,
    pub oracle: Option<u64>,
    pub construction: Option<u64>,
    #[serde(rename = "match")]
    pub matches: bool,
    /// Smallest tested `n` from which every larger tested `n` with the same
    /// other parameters matches.
    pub threshold: Option<usize>,
    /// False when the oracle ran out of budget.
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct ReportTable {
    pub theorem: TheoremId,
    pub rows: Vec<ReportRow>,
    pub engine_version: String,
    pub runtime_ms: u128,
}

impl ReportTable {
    /// Rows of an exact theorem where an exact oracle value differs from the
    /// formula.
    pub fn mismatches(&self) -> Vec<&ReportRow> {
        if !self.theorem.is_exact() {
            return Vec::new();
        }
        self.rows.iter().filter(|r| r.exact && !r.matches).collect()
    }

    pub fn inexact_rows(&self) -> usize {
        self.rows.iter().filter(|r| !r.exact).count()
    }

    /// Every construction is no larger than the exact optimum.
    pub fn constructions_feasible(&self) -> bool {
        self.rows.iter().all(|r| match (r.construction, r.oracle) {
            (Some(c), Some(o)) if r.exact => c <= o,
            _ => true,
        })
    }
}

pub fn verify_theorem(
    theorem: TheoremId,
    points: &[Point],
    budget: &Budget,
    cache: &ExCache,
) -> Result<ReportTable> {
    let started = Instant::now();
    for p in points {
        if let Some(missing) = theorem.required().iter().find(|k| !p.has(k)) {
            return Err(invalid(format!(
                "{} needs {missing} at every grid point",
                theorem.as_str()
            )));
        }
        if p.n > ENGINE_MAX_N {
            return Err(Error::TooLarge {
                n: p.n,
                max: ENGINE_MAX_N,
            });
        }
    }
    let mut rows = points
        .par_iter()
        .map(|p| evaluate(theorem, p, budget, cache))
        .collect::<Result<Vec<_>>>()?;
    fill_thresholds(&mut rows);
    Ok(ReportTable {
        theorem,
        rows,
        engine_version: ENGINE_VERSION.to_owned(),
        runtime_ms: started.elapsed().as_millis(),
    })
}

/// Keeps domain errors (a formula undefined at this point) as missing values.
fn optional<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::InvalidParameter(msg)) => {
            log::debug!("{msg}");
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn certified_edges(mut c: ConstructionResult) -> Result<u64> {
    let cert = c.certify();
    if !cert.passed() {
        return Err(invalid(format!(
            "{:?} construction at {:?} failed certification: {cert:?}",
            c.kind, c.params
        )));
    }
    Ok(c.edges() as u64)
}

/// Edges of `dense` on `min(n, 2s+1)` vertices padded to `n`, if it passes the
/// checks.
fn block_edges(n: usize, dense: Graph, fam: &GraphFamily, s: usize) -> Result<u64> {
    let g = disjoint_union(&dense, &empty(n - dense.n()));
    if !is_family_free(&g, fam) || matching_number(&g) > s {
        return Err(invalid("dense block construction failed certification"));
    }
    Ok(g.edge_count() as u64)
}

fn evaluate(theorem: TheoremId, pt: &Point, budget: &Budget, cache: &ExCache) -> Result<ReportRow> {
    let n = pt.n;
    let mut row = ReportRow {
        theorem_id: theorem,
        n,
        s: pt.s,
        k: pt.k,
        l: pt.l,
        p: None,
        pattern: pt.f.as_ref().map(graph6::encode).transpose()?,
        formula: None,
        oracle: None,
        construction: None,
        matches: false,
        threshold: None,
        exact: true,
    };
    let mut forbidden = GraphFamily::default();
    let (formula, construction) = match theorem {
        TheoremId::Turan => {
            let k = pt.k.unwrap_or_default();
            forbidden = GraphFamily::from_graphs([complete(k + 1)])?;
            (
                optional(edge_formula(EdgeFormula::Turan { n, k }).map(|f| f.value))?,
                optional(turan_graph(n, k).and_then(certified_edges))?,
            )
        }
        TheoremId::ErdosGallai => {
            let s = pt.s.unwrap_or_default();
            let eg = optional(eg_graph(n, s).and_then(certified_edges))?;
            let block = block_edges(n, complete(n.min(2 * s + 1)), &forbidden, s)?;
            (
                Some(edge_formula(EdgeFormula::EgMax { n, s })?.value),
                Some(eg.unwrap_or(0).max(block)),
            )
        }
        TheoremId::AlonFrankl => {
            let (k, s) = (pt.k.unwrap_or_default(), pt.s.unwrap_or_default());
            forbidden = GraphFamily::from_graphs([complete(k + 1)])?;
            let af = optional(af_graph(n, k, s).and_then(certified_edges))?;
            let m = n.min(2 * s + 1);
            let block = match optional(turan_graph(m, k.min(m)))? {
                Some(t) => block_edges(n, t.graph, &forbidden, s)?,
                None => 0,
            };
            (
                optional(edge_formula(EdgeFormula::AfMax { n, k, s }).map(|f| f.value))?,
                af.map(|a| a.max(block)),
            )
        }
        TheoremId::Thm1 => {
            let (s, f) = (
                pt.s.unwrap_or_default(),
                pt.f.clone().expect("checked in verify_theorem"),
            );
            if is_bipartite(&f) {
                return Err(invalid("thm1 needs a non-bipartite pattern"));
            }
            forbidden = GraphFamily::from_graphs([f.clone()])?;
            let derived = delete_color_classes(&f, ClassMode::IndependentSets)?;
            let inner = cache.solve(&Problem::new(s, &derived)?, budget)?;
            row.exact &= inner.exact;
            let g0 = inner
                .witnesses
                .first()
                .ok_or_else(|| invalid("oracle returned no witness"))?;
            (
                optional(thm1_value(n, s, inner.value as u64).map(|f| f.value))?,
                optional(thm1_graph(n, s, g0, Some(&f)).and_then(certified_edges))?,
            )
        }
        TheoremId::Prop3 => {
            let (s, f) = (
                pt.s.unwrap_or_default(),
                pt.f.clone().expect("checked in verify_theorem"),
            );
            let p = p_value(&f)?;
            row.p = Some(p);
            forbidden = GraphFamily::from_graphs([f.clone()])?;
            (
                optional(prop3_value(n, p).map(|f| f.value))?,
                optional(construction1(n, s, &f, None).and_then(certified_edges))?,
            )
        }
        TheoremId::Prop4 => {
            let (s, l) = (pt.s.unwrap_or_default(), pt.l.unwrap_or_default());
            forbidden = GraphFamily::from_graphs([path(2 * l + 1)])?;
            (
                optional(prop4_value(n, s, l).map(|f| f.value))?,
                optional(prop4_graph(n, s, l).and_then(certified_edges))?,
            )
        }
    };
    let problem = match pt.s {
        Some(s) => Problem::with_matching_bound(n, &forbidden, s)?,
        None => Problem::new(n, &forbidden)?,
    };
    let res = cache.solve(&problem, budget)?;
    row.exact &= res.exact;
    row.oracle = Some(res.value as u64);
    row.formula = formula;
    row.construction = construction;
    row.matches = formula == row.oracle;
    Ok(row)
}

fn fill_thresholds(rows: &mut [ReportRow]) {
    let key = |r: &ReportRow| (r.s, r.k, r.l, r.pattern.clone());
    let groups: Vec<_> = {
        let mut keys: Vec<_> = rows.iter().map(key).collect();
        keys.sort();
        keys.dedup();
        keys
    };
    for g in groups {
        let mut ns: Vec<(usize, bool)> = rows
            .iter()
            .filter(|r| key(r) == g)
            .map(|r| (r.n, r.matches && r.exact))
            .collect();
        ns.sort();
        let mut threshold = None;
        for &(n, ok) in ns.iter().rev() {
            if !ok {
                break;
            }
            threshold = Some(n);
        }
        for r in rows.iter_mut().filter(|r| key(r) == g) {
            r.threshold = threshold;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "md" | "markdown" => Ok(Format::Markdown),
            _ => Err(invalid(format!("unknown format {s:?}"))),
        }
    }
}

pub const COLUMNS: [&str; 13] = [
    "theorem_id",
    "n",
    "s",
    "k",
    "l",
    "p",
    "pattern",
    "formula",
    "oracle",
    "construction",
    "match",
    "threshold",
    "exact",
];

fn cells(r: &ReportRow, check: bool) -> Vec<String> {
    fn opt<T: ToString>(v: &Option<T>) -> String {
        v.as_ref().map(ToString::to_string).unwrap_or_default()
    }
    let flag = |b: bool| match (check, b) {
        (true, true) => "✓".to_owned(),
        (true, false) => "✗".to_owned(),
        (false, b) => b.to_string(),
    };
    vec![
        r.theorem_id.as_str().to_owned(),
        r.n.to_string(),
        opt(&r.s),
        opt(&r.k),
        opt(&r.l),
        opt(&r.p),
        opt(&r.pattern),
        opt(&r.formula),
        opt(&r.oracle),
        opt(&r.construction),
        flag(r.matches),
        opt(&r.threshold),
        r.exact.to_string(),
    ]
}

/// Renders the rows; output depends only on the rows.
pub fn emit_table(table: &ReportTable, format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(COLUMNS)?;
            for r in &table.rows {
                w.write_record(cells(r, false))?;
            }
            let bytes = w.into_inner().map_err(|e| e.into_error())?;
            Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
        }
        Format::Json => Ok(serde_json::to_string_pretty(&table.rows)? + "\n"),
        Format::Markdown => {
            let mut out = String::new();
            let line = |cols: Vec<String>| format!("| {} |\n", cols.join(" | "));
            out.push_str(&line(COLUMNS.iter().map(|c| c.to_string()).collect()));
            out.push_str(&line(COLUMNS.iter().map(|_| "---".to_owned()).collect()));
            for r in &table.rows {
                // graph6 may contain '|'.
                let escaped = cells(r, true)
                    .into_iter()
                    .map(|c| c.replace('|', "\\|"))
                    .collect();
                out.push_str(&line(escaped));
            }
            Ok(out)
        }
    }
}
