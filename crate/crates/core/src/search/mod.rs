//! Isomorph-free enumeration of triangle-free graphs by canonical
//! augmentation, filtered down to twin-free diameter-2 skeletons that carry
//! strictly positive regular weights.

mod augment;
mod canon;
mod checkpoint;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

pub use augment::{children, enumerate_triangle_free, levels, walk, Node};
pub use canon::{canonical, Canon, SmallGraph, MAX_N};

use crate::bounds::{self, BoundValue};
use crate::exactmath::{int, parse_rational, rat, Rational};
use crate::graphcore::io::{parse_graph6, to_graph6};
use crate::graphcore::WeightedGraph;
use crate::regweights::{optimize_a, positive_feasibility, LpStatus};

#[derive(Debug, thiserror::Error)]
pub enum SearchError {
    #[error("checkpoint is corrupt: {0}")]
    CheckpointCorrupt(String),
    #[error("invalid search config: {0}")]
    Config(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// Densities accepted by the search: `min < rho <= max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoFilter {
    pub min: Rational,
    pub max: Rational,
}

impl RhoFilter {
    pub fn contains(&self, rho: &Rational) -> bool {
        *rho > self.min && *rho <= self.max
    }
}

impl Default for RhoFilter {
    fn default() -> Self {
        RhoFilter {
            min: int(0),
            max: rat(1, 2),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub n_max: usize,
    pub rho_filter: RhoFilter,
    pub worker_count: usize,
    pub checkpoint_path: Option<PathBuf>,
    /// Level of the augmentation tree whose nodes become independent
    /// subtrees.
    pub split_depth: usize,
}

impl SearchConfig {
    pub fn new(n_max: usize) -> Self {
        SearchConfig {
            n_max,
            rho_filter: RhoFilter::default(),
            worker_count: 1,
            checkpoint_path: None,
            split_depth: 7,
        }
    }

    pub fn with_rho(mut self, min: Rational, max: Rational) -> Self {
        self.rho_filter = RhoFilter { min, max };
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.worker_count = workers;
        self
    }

    fn validate(&self) -> Result<(), SearchError> {
        if self.n_max == 0 || self.n_max > MAX_N {
            return Err(SearchError::Config(format!(
                "n_max must lie in 1..={MAX_N}, got {}",
                self.n_max
            )));
        }
        if self.worker_count == 0 {
            return Err(SearchError::Config("workers must be at least 1".into()));
        }
        if self.split_depth == 0 {
            return Err(SearchError::Config("split_depth must be at least 1".into()));
        }
        if self.rho_filter.min > self.rho_filter.max {
            return Err(SearchError::Config("rho_min exceeds rho_max".into()));
        }
        Ok(())
    }

    fn fingerprint(&self) -> String {
        format!(
            "n_max={} split_depth={} rho_min={} rho_max={}",
            self.n_max, self.split_depth, self.rho_filter.min, self.rho_filter.max
        )
    }
}

impl FromStr for SearchConfig {
    type Err = SearchError;

    /// `key = value` lines; `#` starts a comment.
    fn from_str(text: &str) -> Result<Self, SearchError> {
        let mut cfg = SearchConfig::new(0);
        let bad = |msg: String| SearchError::Config(msg);
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad(format!("line {}: expected key = value", no + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let int_value = || {
                value
                    .parse::<usize>()
                    .map_err(|_| bad(format!("line {}: {key} needs an integer", no + 1)))
            };
            let rat_value = || {
                parse_rational(value)
                    .map_err(|e| bad(format!("line {}: {key}: {e}", no + 1)))
            };
            match key {
                "n_max" => cfg.n_max = int_value()?,
                "workers" => cfg.worker_count = int_value()?,
                "split_depth" => cfg.split_depth = int_value()?,
                "rho_min" => cfg.rho_filter.min = rat_value()?,
                "rho_max" => cfg.rho_filter.max = rat_value()?,
                "checkpoint" => cfg.checkpoint_path = Some(PathBuf::from(value)),
                _ => return Err(bad(format!("line {}: unknown key {key:?}", no + 1))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// A surviving skeleton with its regular density, its optimal `a` and a
/// strictly positive regular weighting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub n: usize,
    pub skeleton: WeightedGraph,
    pub rho_g: Rational,
    pub optimum_a: Rational,
    pub weights: Vec<Rational>,
}

impl SearchResult {
    /// Runs the structural and LP filters on a skeleton, ignoring any
    /// density window.
    pub fn evaluate(g: &WeightedGraph) -> Option<SearchResult> {
        let g = g.clone().uniform();
        if !g.is_triangle_free() || !g.is_twin_free() || !g.is_diameter_two() {
            return None;
        }
        let weights = positive_feasibility(&g).ok()??;
        let lp = optimize_a(&g);
        if lp.status != LpStatus::Optimal {
            return None;
        }
        Some(SearchResult {
            n: g.n(),
            skeleton: g,
            rho_g: lp.rho_g?,
            optimum_a: lp.optimum_a?,
            weights,
        })
    }

    pub fn graph6(&self) -> String {
        to_graph6(&self.skeleton)
    }

    /// The skeleton carrying the positive weights.
    pub fn weighted(&self) -> WeightedGraph {
        self.skeleton
            .clone()
            .with_weights(self.weights.clone())
            .expect("weights were validated on construction")
    }

    /// Re-derives `rho_G` and a positive `a` through the graph layer.
    pub fn revalidate(&self) -> bool {
        let g = self.weighted();
        self.weights.iter().all(|w| w.is_positive())
            && g.is_triangle_free()
            && g.is_twin_free()
            && g.is_diameter_two()
            && g.regular_degree().as_ref() == Some(&self.rho_g)
            && g.a_value().map(|a| a.is_positive()).unwrap_or(false)
    }

    pub fn parse_line(line: &str) -> Result<SearchResult, String> {
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(format!("expected 4 tab-separated fields, got {}", fields.len()));
        }
        let skeleton = parse_graph6(fields[0]).map_err(|e| e.to_string())?;
        let rho_g = parse_rational(fields[1]).map_err(|e| e.to_string())?;
        let optimum_a = parse_rational(fields[2]).map_err(|e| e.to_string())?;
        let weights = fields[3]
            .split(',')
            .map(|w| parse_rational(w).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        if weights.len() != skeleton.n() {
            return Err("weight count does not match vertex count".into());
        }
        Ok(SearchResult {
            n: skeleton.n(),
            skeleton,
            rho_g,
            optimum_a,
            weights,
        })
    }

    fn sort_key(&self) -> (usize, String) {
        (self.n, self.graph6())
    }
}

impl fmt::Display for SearchResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.weights.iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "{}\t{}\t{}\t{}",
            self.graph6(),
            self.rho_g,
            self.optimum_a,
            w.join(",")
        )
    }
}

fn survivor(g: &SmallGraph, filter: &RhoFilter) -> Option<SearchResult> {
    if !g.is_twin_free() || !g.is_diameter_two() {
        return None;
    }
    SearchResult::evaluate(&g.to_weighted()).filter(|r| filter.contains(&r.rho_g))
}

fn subtree_survivors(root: &Node, cfg: &SearchConfig) -> Vec<SearchResult> {
    let mut out = Vec::new();
    for c in children(root) {
        walk(&c, cfg.n_max, &mut |node: &Node| {
            out.extend(survivor(&node.graph, &cfg.rho_filter));
        });
    }
    out
}

/// State of a possibly partial run.
#[derive(Clone, Debug)]
pub struct SearchProgress {
    pub results: Vec<SearchResult>,
    pub pending_subtrees: usize,
}

impl SearchProgress {
    pub fn is_complete(&self) -> bool {
        self.pending_subtrees == 0
    }
}

/// Runs the whole search, resuming from the checkpoint when one exists.
pub fn run_search(config: &SearchConfig) -> Result<Vec<SearchResult>, SearchError> {
    Ok(run_search_limited(config, None)?.results)
}

/// Like [`run_search`] but processes at most `limit` pending subtrees, leaving
/// the rest in the checkpoint.
pub fn run_search_limited(
    config: &SearchConfig,
    limit: Option<usize>,
) -> Result<SearchProgress, SearchError> {
    config.validate()?;
    let depth = config.split_depth.min(config.n_max);
    let store = config
        .checkpoint_path
        .as_ref()
        .map(|p| checkpoint::Store::new(p.clone(), config.fingerprint()));

    let resumed = match &store {
        Some(s) => s.load()?,
        None => None,
    };
    let (mut results, pending) = match resumed {
        Some(state) => state,
        None => {
            let lv = levels(depth);
            let shallow: Vec<SearchResult> = lv
                .par_iter()
                .flatten()
                .filter_map(|node| survivor(&node.graph, &config.rho_filter))
                .collect();
            let frontier = if depth < config.n_max {
                lv.last().cloned().unwrap_or_default()
            } else {
                Vec::new()
            };
            if let Some(s) = &store {
                s.start(&shallow, &frontier)?;
            }
            (shallow, frontier)
        }
    };

    let take = limit.unwrap_or(pending.len()).min(pending.len());
    let (now, later) = pending.split_at(take);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.worker_count)
        .build()
        .map_err(|e| SearchError::Config(e.to_string()))?;
    let (tx, rx) = std::sync::mpsc::channel::<(usize, Vec<SearchResult>)>();
    let mut remaining: Vec<Option<Node>> = pending.iter().copied().map(Some).collect();
    std::thread::scope(|scope| -> Result<(), SearchError> {
        scope.spawn(move || {
            pool.install(|| {
                now.par_iter().enumerate().for_each_with(tx, |tx, (i, node)| {
                    let _ = tx.send((i, subtree_survivors(node, config)));
                });
            });
        });
        for (i, found) in rx {
            remaining[i] = None;
            if let Some(s) = &store {
                let left: Vec<Node> = remaining.iter().flatten().copied().collect();
                s.commit(&found, &left)?;
            }
            results.extend(found);
        }
        Ok(())
    })?;

    let mut merged: BTreeMap<(usize, String), SearchResult> = BTreeMap::new();
    for r in results {
        merged.entry(r.sort_key()).or_insert(r);
    }
    Ok(SearchProgress {
        results: merged.into_values().collect(),
        pending_subtrees: later.len(),
    })
}

/// One `(rho, a)` data point with the upper bound at that density.
#[derive(Clone, Debug)]
pub struct LowerBoundRow {
    pub rho: Rational,
    pub a: Rational,
    pub bound: Option<BoundValue>,
}

impl LowerBoundRow {
    /// `a <= bound(rho)`, or `None` where no bound is defined.
    pub fn consistent(&self) -> Option<bool> {
        self.bound
            .as_ref()
            .map(|b| b.value.cmp_rational(&self.a) != Ordering::Less)
    }

    pub fn tight(&self) -> bool {
        self.bound
            .as_ref()
            .is_some_and(|b| b.value.cmp_rational(&self.a) == Ordering::Equal)
    }
}

impl fmt::Display for LowerBoundRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = rat(1, 1_000_000_000_000);
        let bound = match &self.bound {
            Some(b) => b.describe(&width),
            None => "value=undefined".into(),
        };
        let consistent = match self.consistent() {
            Some(c) => c.to_string(),
            None => "n/a".into(),
        };
        write!(f, "rho={} a={} bound_{} consistent={}", self.rho, self.a, bound, consistent)
    }
}

/// Largest `optimum_a` per distinct density, ordered by density.
pub fn lower_bound_table(results: &[SearchResult]) -> Vec<LowerBoundRow> {
    let mut best: BTreeMap<Rational, Rational> = BTreeMap::new();
    for r in results {
        let e = best.entry(r.rho_g.clone()).or_insert_with(Rational::zero);
        if r.optimum_a > *e {
            *e = r.optimum_a.clone();
        }
    }
    best.into_iter()
        .map(|(rho, a)| LowerBoundRow {
            bound: bounds::bound(&rho).ok(),
            rho,
            a,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::catalog;

    #[test]
    fn config_round_trip() {
        let cfg: SearchConfig = "n_max = 9\nrho_max = 1/3 # upper\nworkers=2\ncheckpoint = /tmp/x\n"
            .parse()
            .unwrap();
        assert_eq!(cfg.n_max, 9);
        assert_eq!(cfg.rho_filter.max, rat(1, 3));
        assert_eq!(cfg.worker_count, 2);
        assert_eq!(cfg.checkpoint_path, Some(PathBuf::from("/tmp/x")));
        assert!("n_max = 0".parse::<SearchConfig>().is_err());
        assert!("n_max = 5\nfoo = 1".parse::<SearchConfig>().is_err());
        assert!("n_max = 5\nrho_min = x".parse::<SearchConfig>().is_err());
    }

    #[test]
    fn five_vertices_yield_c5() {
        let res = run_search(&SearchConfig::new(5)).unwrap();
        assert_eq!(res.len(), 1);
        assert_eq!(res[0].rho_g, rat(2, 5));
        assert_eq!(res[0].optimum_a, rat(1, 5));
        assert!(res[0].revalidate());
    }

    #[test]
    fn two_vertices_yield_nothing() {
        assert!(run_search(&SearchConfig::new(2)).unwrap().is_empty());
    }

    #[test]
    fn result_lines_round_trip() {
        let r = SearchResult::evaluate(&catalog::petersen()).unwrap();
        let back = SearchResult::parse_line(&r.to_string()).unwrap();
        assert_eq!(back, r);
        assert!(SearchResult::parse_line("I?\t1/2").is_err());
    }

    #[test]
    fn table_rows() {
        assert!(lower_bound_table(&[]).is_empty());
        let r = SearchResult::evaluate(&catalog::petersen()).unwrap();
        let t = lower_bound_table(&[r]);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].a, rat(1, 10));
        assert_eq!(t[0].consistent(), Some(true));
        assert!(t[0].tight());
    }
}
