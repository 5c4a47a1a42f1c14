use std::path::Path;

use super::{GraphError, WeightedGraph};
use crate::exactmath::{parse_rational, Rational};

const HEADER: &str = ">>graph6<<";

/// Parses one graph6 line (optional `>>graph6<<` header allowed).
pub fn parse_graph6(line: &str) -> Result<WeightedGraph, GraphError> {
    let text = line.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    let bad = |msg: &str| GraphError::Graph6(format!("{msg}: {text:?}"));
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside the graph6 range 63..=126"));
    }
    let (n, rest) = match bytes {
        [] => return Err(bad("empty input")),
        [126, 126, r @ ..] => {
            if r.len() < 6 {
                return Err(bad("truncated size field"));
            }
            let n = r[..6].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &r[6..])
        }
        [126, r @ ..] => {
            if r.len() < 3 {
                return Err(bad("truncated size field"));
            }
            let n = r[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &r[3..])
        }
        [b, r @ ..] => ((b - 63) as usize, r),
    };
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let bits = n * (n - 1) / 2;
    if rest.len() != bits.div_ceil(6) {
        return Err(bad(&format!(
            "expected {} data bytes for {n} vertices, found {}",
            bits.div_ceil(6),
            rest.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    WeightedGraph::from_edges(n, &edges)
}

/// Encodes the adjacency structure as graph6 (no header).
pub fn to_graph6(g: &WeightedGraph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.adjacent(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Parses a weights sidecar: one `index p/q` line per vertex; blank lines
/// and `#` comments are ignored.
pub fn parse_weights(text: &str, n: usize) -> Result<Vec<Rational>, GraphError> {
    let mut weights: Vec<Option<Rational>> = vec![None; n];
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| GraphError::WeightsFile(format!("line {}: {msg}", lineno + 1));
        let mut parts = line.split_whitespace();
        let (Some(idx), Some(w), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad(format!("expected `index p/q`, got {line:?}")));
        };
        let idx: usize = idx.parse().map_err(|_| bad(format!("bad index {idx:?}")))?;
        if idx >= n {
            return Err(bad(format!("index {idx} out of range for {n} vertices")));
        }
        let w = parse_rational(w).map_err(|e| bad(e.to_string()))?;
        if weights[idx].replace(w).is_some() {
            return Err(bad(format!("duplicate index {idx}")));
        }
    }
    weights
        .into_iter()
        .enumerate()
        .map(|(i, w)| w.ok_or_else(|| GraphError::WeightsFile(format!("missing weight for vertex {i}"))))
        .collect()
}

pub fn format_weights(g: &WeightedGraph) -> String {
    g.weights()
        .iter()
        .enumerate()
        .map(|(i, w)| format!("{i} {w}\n"))
        .collect()
}

/// Reads the first graph of a graph6 file and, if given, its weights
/// sidecar. Without a sidecar the weights are uniform.
pub fn read_weighted_graph(
    graph_path: &Path,
    weights_path: Option<&Path>,
) -> Result<WeightedGraph, GraphError> {
    let text = std::fs::read_to_string(graph_path)
        .map_err(|e| GraphError::Io(format!("{}: {e}", graph_path.display())))?;
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| GraphError::Graph6(format!("{}: no graph found", graph_path.display())))?;
    let g = parse_graph6(line)?;
    match weights_path {
        None => Ok(g),
        Some(p) => {
            let wtext = std::fs::read_to_string(p)
                .map_err(|e| GraphError::Io(format!("{}: {e}", p.display())))?;
            let n = g.n();
            g.with_weights(parse_weights(&wtext, n)?)
        }
    }
}

/// Reads every graph in a graph6 file, one per non-empty line.
pub fn read_graph6_file(path: &Path) -> Result<Vec<WeightedGraph>, GraphError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| GraphError::Io(format!("{}: {e}", path.display())))?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(parse_graph6)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::graphcore::catalog;

    #[test]
    fn petersen_graph6_string() {
        let g = catalog::petersen();
        let s = to_graph6(&g);
        assert_eq!(parse_graph6(&s).unwrap(), g);
        assert_eq!(s.len(), 1 + 45usize.div_ceil(6));
    }

    #[test]
    fn known_small_encodings() {
        let k2 = parse_graph6("A_").unwrap();
        assert!(k2.adjacent(0, 1));
        let k3 = parse_graph6("Bw").unwrap();
        assert_eq!(k3.edge_count(), 3);
        let c4 = parse_graph6("Cr").unwrap();
        assert_eq!(c4.edge_count(), 4);
        assert!((0..4).all(|v| c4.degree(v) == 2));
        assert_eq!(to_graph6(&c4), "Cr");
        assert_eq!(parse_graph6(">>graph6<<A_").unwrap(), k2);
    }

    #[test]
    fn malformed_graph6() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("D").is_err());
        assert!(parse_graph6("A__").is_err());
        assert!(parse_graph6("A ").is_err());
    }

    #[test]
    fn weights_round_trip() {
        let text = "0 1/2\n# comment\n1 1/4\n2 1/4\n";
        let w = parse_weights(text, 3).unwrap();
        assert_eq!(w, vec![rat(1, 2), rat(1, 4), rat(1, 4)]);
        assert!(parse_weights("0 1/2\n", 2).is_err());
        assert!(parse_weights("0 1/2\n0 1/2\n", 2).is_err());
        assert!(parse_weights("5 1/2\n", 2).is_err());
    }

    #[test]
    fn large_size_field() {
        let g = catalog::higman_sims().unwrap();
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }
}
