//! Persistent result cache: JSON lines keyed by (sorted canonical family, n).
//! One writer, many readers. Only exact results are stored.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Mutex, RwLock};

use serde::{Deserialize, Serialize};

use super::{exact_ex, Budget, Engine, ExResult, Problem};
use crate::error::Result;
use crate::graph6;

pub const CACHE_ENV: &str = "EXGRAPH_CACHE";
/// Bumped whenever a change could alter cached values or witness lists.
pub const ENGINE_VERSION: &str = concat!("exgraph-", env!("CARGO_PKG_VERSION"), "/1");
const DEFAULT_FILE: &str = ".exgraph-cache.jsonl";

type Key = (Vec<String>, usize);

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Record {
    family: Vec<String>,
    n: usize,
    value: usize,
    witness_count: usize,
    engine: Engine,
    version: String,
    #[serde(default)]
    witnesses: Vec<String>,
    #[serde(default)]
    witnesses_truncated: bool,
}

#[derive(Debug)]
pub struct ExCache {
    path: Option<PathBuf>,
    map: RwLock<HashMap<Key, Record>>,
    writer: Mutex<Option<File>>,
    hits: AtomicU64,
    misses: AtomicU64,
    searches: AtomicU64,
}

impl ExCache {
    /// A cache that lives only as long as the process.
    pub fn in_memory() -> Self {
        ExCache {
            path: None,
            map: RwLock::new(HashMap::new()),
            writer: Mutex::new(None),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
            searches: AtomicU64::new(0),
        }
    }

    /// Loads `path` if it exists and appends new results to it. Malformed
    /// lines and records from other engine versions are skipped.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut map = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(&path)?);
            for (i, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<Record>(&line) {
                    Ok(r) if r.version == ENGINE_VERSION => {
                        map.insert((r.family.clone(), r.n), r);
                    }
                    Ok(r) => log::debug!("cache line {}: stale version {}", i + 1, r.version),
                    Err(e) => log::warn!("cache line {}: {e}", i + 1),
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(&path)?;
        Ok(ExCache {
            path: Some(path),
            map: RwLock::new(map),
            writer: Mutex::new(Some(file)),
            ..ExCache::in_memory()
        })
    }

    /// Opens the file named by `EXGRAPH_CACHE`, or the default file in the
    /// working directory.
    pub fn from_env() -> Result<Self> {
        let path = std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_FILE));
        ExCache::open(path)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }

    /// Oracle searches started through [`ExCache::solve`].
    pub fn searches(&self) -> u64 {
        self.searches.load(Ordering::Relaxed)
    }

    pub fn get(&self, problem: &Problem) -> Option<ExResult> {
        let map = self.map.read().expect("cache lock");
        let found = map.get(&problem.key()).and_then(|r| {
            let witnesses = r
                .witnesses
                .iter()
                .map(|w| graph6::decode(w))
                .collect::<Result<Vec<_>>>()
                .ok()?;
            Some(ExResult {
                value: r.value,
                witnesses,
                witnesses_truncated: r.witnesses_truncated,
                nodes_explored: 0,
                engine: r.engine,
                exact: true,
            })
        });
        let counter = if found.is_some() {
            &self.hits
        } else {
            &self.misses
        };
        counter.fetch_add(1, Ordering::Relaxed);
        found
    }

    /// Stores an exact result; inexact results are ignored.
    pub fn put(&self, problem: &Problem, res: &ExResult) -> Result<()> {
        if !res.exact {
            return Ok(());
        }
        let (family, n) = problem.key();
        let record = Record {
            family,
            n,
            value: res.value,
            witness_count: res.witnesses.len(),
            engine: res.engine,
            version: ENGINE_VERSION.to_owned(),
            witnesses: res
                .witnesses
                .iter()
                .map(graph6::encode)
                .collect::<Result<_>>()?,
            witnesses_truncated: res.witnesses_truncated,
        };
        let mut writer = self.writer.lock().expect("cache writer");
        if let Some(file) = writer.as_mut() {
            let line = serde_json::to_string(&record)?;
            writeln!(file, "{line}")?;
        }
        self.map
            .write()
            .expect("cache lock")
            .insert((record.family.clone(), record.n), record);
        Ok(())
    }

    /// Cached value, or a fresh search whose exact result is stored.
    pub fn solve(&self, problem: &Problem, budget: &Budget) -> Result<ExResult> {
        if let Some(hit) = self.get(problem) {
            return Ok(hit);
        }
        self.searches.fetch_add(1, Ordering::Relaxed);
        let res = exact_ex(problem, budget)?;
        self.put(problem, &res)?;
        Ok(res)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::GraphFamily;
    use crate::graph::complete;

    fn k3_problem(n: usize) -> Problem {
        Problem::new(n, &GraphFamily::from_graphs([complete(3)]).unwrap()).unwrap()
    }

    #[test]
    fn second_solve_is_a_hit() {
        let cache = ExCache::in_memory();
        let p = k3_problem(5);
        let a = cache.solve(&p, &Budget::default()).unwrap();
        let b = cache.solve(&p, &Budget::default()).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.witnesses, b.witnesses);
        assert_eq!(cache.searches(), 1);
        assert_eq!(cache.hits(), 1);
    }

    #[test]
    fn file_round_trip_and_stale_versions() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        {
            let cache = ExCache::open(&path).unwrap();
            cache.solve(&k3_problem(6), &Budget::default()).unwrap();
        }
        let mut text = std::fs::read_to_string(&path).unwrap();
        text.push_str(
            &text
                .replace(ENGINE_VERSION, "old")
                .replace("\"n\":6", "\"n\":4"),
        );
        text.push_str("not json\n");
        std::fs::write(&path, text).unwrap();

        let cache = ExCache::open(&path).unwrap();
        assert_eq!(cache.len(), 1);
        assert_eq!(cache.get(&k3_problem(6)).unwrap().value, 9);
        assert!(cache.get(&k3_problem(4)).is_none());
    }
}
