use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use super::augment::Node;
use super::canon::SmallGraph;
use super::{SearchError, SearchResult};
use crate::graphcore::io::{parse_graph6, to_graph6};

const MAGIC: &str = "# tfsr-search";

/// Pending subtree roots in graph6, one per line after a header recording
/// the config; completed results accumulate in a `.results` sidecar.
pub(crate) struct Store {
    path: PathBuf,
    results: PathBuf,
    header: String,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> SearchError + '_ {
    move |source| SearchError::Io {
        path: path.to_path_buf(),
        source,
    }
}

impl Store {
    pub(crate) fn new(path: PathBuf, fingerprint: String) -> Self {
        let mut results = path.clone().into_os_string();
        results.push(".results");
        Store {
            path,
            results: results.into(),
            header: format!("{MAGIC} {fingerprint}"),
        }
    }

    pub(crate) fn load(&self) -> Result<Option<(Vec<SearchResult>, Vec<Node>)>, SearchError> {
        if !self.path.exists() {
            return Ok(None);
        }
        let corrupt = |m: String| SearchError::CheckpointCorrupt(format!("{}: {m}", self.path.display()));
        let text = fs::read_to_string(&self.path).map_err(io_err(&self.path))?;
        let mut lines = text.lines();
        match lines.next() {
            Some(h) if h == self.header => {}
            Some(h) if h.starts_with(MAGIC) => {
                return Err(corrupt(format!("written for a different config ({h})")))
            }
            _ => return Err(corrupt("missing header".into())),
        }
        let mut pending = Vec::new();
        for (i, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let g = parse_graph6(line.trim())
                .ok()
                .and_then(|g| SmallGraph::from_weighted(&g))
                .ok_or_else(|| corrupt(format!("line {}: bad graph6", i + 2)))?;
            pending.push(Node::new(&g));
        }
        let mut results = Vec::new();
        if self.results.exists() {
            let text = fs::read_to_string(&self.results).map_err(io_err(&self.results))?;
            for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
                let r = SearchResult::parse_line(line).map_err(|e| {
                    SearchError::CheckpointCorrupt(format!(
                        "{} line {}: {e}",
                        self.results.display(),
                        i + 1
                    ))
                })?;
                results.push(r);
            }
        } else {
            return Err(corrupt("results sidecar is missing".into()));
        }
        Ok(Some((results, pending)))
    }

    pub(crate) fn start(&self, shallow: &[SearchResult], frontier: &[Node]) -> Result<(), SearchError> {
        let mut body = String::new();
        for r in shallow {
            body.push_str(&format!("{r}\n"));
        }
        fs::write(&self.results, body).map_err(io_err(&self.results))?;
        self.write_pending(frontier)
    }

    pub(crate) fn commit(&self, found: &[SearchResult], left: &[Node]) -> Result<(), SearchError> {
        if !found.is_empty() {
            let mut f = OpenOptions::new()
                .append(true)
                .open(&self.results)
                .map_err(io_err(&self.results))?;
            let mut body = String::new();
            for r in found {
                body.push_str(&format!("{r}\n"));
            }
            f.write_all(body.as_bytes()).map_err(io_err(&self.results))?;
            f.sync_data().map_err(io_err(&self.results))?;
        }
        self.write_pending(left)
    }

    fn write_pending(&self, nodes: &[Node]) -> Result<(), SearchError> {
        let mut body = format!("{}\n", self.header);
        for n in nodes {
            body.push_str(&to_graph6(&n.graph.to_weighted()));
            body.push('\n');
        }
        let mut tmp = self.path.clone().into_os_string();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        fs::write(&tmp, body).map_err(io_err(&tmp))?;
        fs::rename(&tmp, &self.path).map_err(io_err(&self.path))
    }
}
