use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use exgraph::constructions::{
    af_graph, construction1, construction2, eg_graph, prop4_graph, thm1_graph, turan_graph,
    ConstructionResult,
};
use exgraph::families::{delete_color_classes, minimalize, ClassMode, GraphFamily};
use exgraph::harness::{
    default_preset, emit_table, parse_grid, preset, verify_theorem, Format, TheoremId,
};
use exgraph::invariants::{
    chromatic_number, is_bipartite, matching_number, maximum_matching, p_value, PATTERN_MAX_N,
};
use exgraph::oracle::{enumerate_graphs, exact_ex, naive_ex, Budget, ExCache, Problem};
use exgraph::{graph6, Error, Graph};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "exgraph",
    version,
    about = "Extremal numbers under a matching bound"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named construction and print its graph6 and a JSON record.
    Construct {
        #[arg(long = "type", value_enum)]
        kind: Kind,
        /// Comma-separated `key=value` pairs from n, s, k, l.
        #[arg(long, default_value = "")]
        params: String,
        /// Forbidden pattern (thm1, c1, c2).
        #[arg(long)]
        forbid: Option<String>,
        /// Base graph on s vertices (thm1).
        #[arg(long)]
        g0: Option<String>,
        /// Graph added to the large side (c1).
        #[arg(long)]
        h: Option<String>,
        /// Remainder graph (c2).
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        certify: bool,
    },
    /// Print invariants of a graph.
    Invariants {
        #[arg(long)]
        graph: String,
    },
    /// Print the color-class deletion family of a pattern, one graph6 per line.
    Family {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value = "independent-sets")]
        mode: Mode,
        #[arg(long)]
        minimal: bool,
    },
    /// Exact extremal number.
    Ex {
        #[arg(long)]
        n: usize,
        /// Comma-separated graph6 list.
        #[arg(long, default_value = "")]
        forbid: String,
        /// Matching-number bound.
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, value_enum, default_value = "bnb")]
        engine: EngineArg,
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(long)]
        time_limit_secs: Option<u64>,
    },
    /// Compare formula, oracle and construction over a grid.
    Verify {
        theorem: String,
        #[arg(long, conflicts_with = "grid")]
        preset: Option<String>,
        /// For example `n=5..9;s=2;F=Bw`.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// One graph per isomorphism class, graph6 per line.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Turan,
    Eg,
    Af,
    Thm1,
    C1,
    C2,
    Prop4,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    IndependentSets,
    ChiColorings,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Bnb,
    Naive,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Io(_) => 1,
                _ => EXIT_USAGE,
            })
        }
    }
}

fn decode(text: &str) -> exgraph::Result<Graph> {
    graph6::decode(text)
}

fn decode_opt(text: &Option<String>) -> exgraph::Result<Option<Graph>> {
    text.as_deref().map(decode).transpose()
}

fn param(params: &[(String, usize)], key: &str) -> exgraph::Result<usize> {
    params
        .iter()
        .find(|(k, _)| k == key)
        .map(|&(_, v)| v)
        .ok_or_else(|| Error::InvalidParameter(format!("missing parameter {key}")))
}

fn parse_params(text: &str) -> exgraph::Result<Vec<(String, usize)>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (k, v) = t
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("{t:?} is not key=value")))?;
            let v = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad number in {t:?}")))?;
            Ok((k.trim().to_owned(), v))
        })
        .collect()
}

fn budget(max_nodes: Option<u64>, secs: Option<u64>) -> Budget {
    Budget {
        max_nodes,
        time_limit: secs.map(std::time::Duration::from_secs),
        ..Budget::default()
    }
}

fn run(command: Command) -> exgraph::Result<u8> {
    match command {
        Command::Construct {
            kind,
            params,
            forbid,
            g0,
            h,
            q,
            certify,
        } => {
            let ps = parse_params(&params)?;
            let p = |k: &str| param(&ps, k);
            let forbid = decode_opt(&forbid)?;
            let need_f = || {
                forbid
                    .clone()
                    .ok_or_else(|| Error::InvalidParameter("--forbid is required".into()))
            };
            let mut result: ConstructionResult = match kind {
                Kind::Turan => turan_graph(p("n")?, p("k")?)?,
                Kind::Eg => eg_graph(p("n")?, p("s")?)?,
                Kind::Af => af_graph(p("n")?, p("k")?, p("s")?)?,
                Kind::Thm1 => {
                    let g0 = decode_opt(&g0)?
                        .ok_or_else(|| Error::InvalidParameter("--g0 is required".into()))?;
                    thm1_graph(p("n")?, p("s")?, &g0, forbid.as_ref())?
                }
                Kind::C1 => construction1(p("n")?, p("s")?, &need_f()?, decode_opt(&h)?.as_ref())?,
                Kind::C2 => {
                    let cache = ExCache::from_env()?;
                    construction2(
                        p("n")?,
                        p("s")?,
                        &need_f()?,
                        decode_opt(&q)?.as_ref(),
                        &cache,
                    )?
                }
                Kind::Prop4 => prop4_graph(p("n")?, p("s")?, p("l")?)?,
            };
            let cert = certify.then(|| result.certify());
            println!("{}", graph6::encode(&result.graph)?);
            let record = json!({
                "kind": result.kind,
                "params": result.params,
                "vertices": result.graph.n(),
                "edges": result.edges(),
                "predicted_edges": result.predicted_edges,
                "forbidden": result.forbidden.to_graph6_list(),
                "s": result.s,
                "certificate": cert,
            });
            println!("{record}");
            Ok(if cert.is_some_and(|c| !c.passed()) {
                EXIT_MISMATCH
            } else {
                0
            })
        }
        Command::Invariants { graph } => {
            let g = decode(&graph)?;
            let small = g.n() <= PATTERN_MAX_N;
            let record = json!({
                "n": g.n(),
                "edges": g.edge_count(),
                "degrees": g.degrees(),
                "components": g.components().len(),
                "connected": g.is_connected(),
                "matching_number": matching_number(&g),
                "maximum_matching": maximum_matching(&g).edges,
                "bipartite": is_bipartite(&g),
                "p": if small { p_value(&g).ok() } else { None },
                "chromatic_number": if small { chromatic_number(&g).ok() } else { None },
            });
            println!("{record}");
            Ok(0)
        }
        Command::Family {
            graph,
            mode,
            minimal,
        } => {
            let g = decode(&graph)?;
            let mode = match mode {
                Mode::IndependentSets => ClassMode::IndependentSets,
                Mode::ChiColorings => ClassMode::ChiColorings,
            };
            let mut fam = delete_color_classes(&g, mode)?;
            if minimal {
                fam = minimalize(&fam);
            }
            for code in fam.to_graph6_list() {
                println!("{code}");
            }
            Ok(0)
        }
        Command::Ex {
            n,
            forbid,
            s,
            engine,
            max_nodes,
            time_limit_secs,
        } => {
            let graphs = forbid
                .split(',')
                .filter(|t| !t.is_empty())
                .map(decode)
                .collect::<exgraph::Result<Vec<_>>>()?;
            let fam = GraphFamily::from_graphs(graphs)?;
            let problem = match s {
                Some(s) => Problem::with_matching_bound(n, &fam, s)?,
                None => Problem::new(n, &fam)?,
            };
            let res = match engine {
                EngineArg::Naive => naive_ex(&problem)?,
                EngineArg::Bnb => {
                    let b = budget(max_nodes, time_limit_secs);
                    if b.max_nodes.is_none() && b.time_limit.is_none() {
                        ExCache::from_env()?.solve(&problem, &b)?
                    } else {
                        exact_ex(&problem, &b)?
                    }
                }
            };
            let witnesses = res
                .witnesses
                .iter()
                .map(graph6::encode)
                .collect::<exgraph::Result<Vec<_>>>()?;
            let record = json!({
                "n": n,
                "family": problem.family().to_graph6_list(),
                "vacuous": problem.vacuous_members(),
                "value": res.value,
                "exact": res.exact,
                "engine": res.engine,
                "nodes_explored": res.nodes_explored,
                "witnesses": witnesses,
                "witnesses_truncated": res.witnesses_truncated,
            });
            println!("{record}");
            Ok(if res.exact { 0 } else { EXIT_BUDGET })
        }
        Command::Verify {
            theorem,
            preset: preset_name,
            grid,
            format,
            max_nodes,
        } => {
            let theorem: TheoremId = theorem.parse()?;
            let format: Format = format.parse()?;
            let points = match (preset_name, grid) {
                (Some(name), _) => {
                    let (t, points) = preset(&name)?;
                    if t != theorem {
                        return Err(Error::InvalidParameter(format!(
                            "preset {name} belongs to {}",
                            t.as_str()
                        )));
                    }
                    points
                }
                (None, Some(grid)) => parse_grid(&grid)?,
                (None, None) => default_preset(theorem)?,
            };
            let cache = ExCache::from_env()?;
            let table = verify_theorem(theorem, &points, &budget(max_nodes, None), &cache)?;
            print!("{}", emit_table(&table, format)?);
            log::info!(
                "{} rows in {} ms (engine {}, {} searches, {} cache hits)",
                table.rows.len(),
                table.runtime_ms,
                table.engine_version,
                cache.searches(),
                cache.hits()
            );
            Ok(if !table.mismatches().is_empty() {
                EXIT_MISMATCH
            } else if table.inexact_rows() > 0 {
                EXIT_BUDGET
            } else {
                0
            })
        }
        Command::Enumerate { n } => {
            for g in enumerate_graphs(n)? {
                println!("{}", graph6::encode(&g)?);
            }
            Ok(0)
        }
    }
}
