use num_bigint::BigInt;
use num_traits::One;

use super::{io::parse_graph6, GraphError, WeightedGraph};
use crate::exactmath::Rational;

const HIGMAN_SIMS_G6: &str = include_str!("../../data/higman_sims.g6");

pub fn cycle(n: usize) -> Result<WeightedGraph, GraphError> {
    if n < 3 {
        return Err(GraphError::ParameterOutOfRange(format!("cycle length {n} < 3")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    WeightedGraph::from_edges(n, &edges)
}

pub fn cycle5() -> WeightedGraph {
    cycle(5).unwrap()
}

/// Outer 5-cycle `0..5`, spokes `i ~ i+5`, inner pentagram on `5..10`.
pub fn petersen() -> WeightedGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    WeightedGraph::from_edges(10, &edges).unwrap()
}

/// Folded 5-cube: `{0,1}^4`, adjacent at Hamming distance 1 or 4.
pub fn clebsch() -> WeightedGraph {
    let mut edges = Vec::new();
    for u in 0..16usize {
        for v in u + 1..16 {
            let d = (u ^ v).count_ones();
            if d == 1 || d == 4 {
                edges.push((u, v));
            }
        }
    }
    WeightedGraph::from_edges(16, &edges).unwrap()
}

/// The Higman-Sims graph, loaded from the bundled graph6 file and checked to
/// be strongly regular with parameters (100, 22, 0, 6).
pub fn higman_sims() -> Result<WeightedGraph, GraphError> {
    let g = parse_graph6(HIGMAN_SIMS_G6.trim())?;
    if !is_strongly_regular(&g, 100, 22, 0, 6) {
        return Err(GraphError::DataInvalid(
            "bundled Higman-Sims data is not srg(100,22,0,6)".into(),
        ));
    }
    Ok(g)
}

/// Checks that `g` is an srg(n, k, lambda, mu) as an unweighted graph.
pub fn is_strongly_regular(g: &WeightedGraph, n: usize, k: usize, lambda: usize, mu: usize) -> bool {
    g.n() == n
        && (0..n).all(|v| g.degree(v) == k)
        && (0..n).all(|u| {
            (u + 1..n).all(|v| {
                let c = g.common_neighbours(u, v).len();
                if g.adjacent(u, v) {
                    c == lambda
                } else {
                    c == mu
                }
            })
        })
}

/// Kneser graph `KG(3k-1, k)`: `k`-subsets of `[3k-1]`, adjacent when
/// disjoint. Vertices are the subsets in lexicographic order.
pub fn kneser(k: usize) -> Result<WeightedGraph, GraphError> {
    if !(2..=5).contains(&k) {
        return Err(GraphError::ParameterOutOfRange(format!(
            "kneser parameter k = {k} outside 2..=5"
        )));
    }
    let m = 3 * k - 1;
    let subsets: Vec<u32> = (0u32..(1 << m))
        .filter(|s| s.count_ones() as usize == k)
        .collect();
    let mut sorted = subsets;
    sorted.sort_by_key(|&s| {
        (0..m)
            .filter(|&i| s & (1 << i) != 0)
            .collect::<Vec<_>>()
    });
    let mut edges = Vec::new();
    for (i, &s) in sorted.iter().enumerate() {
        for (j, &t) in sorted.iter().enumerate().skip(i + 1) {
            if s & t == 0 {
                edges.push((i, j));
            }
        }
    }
    WeightedGraph::from_edges(sorted.len(), &edges)
}

/// Index of `u_{i,eps}` in [`g_h`].
pub fn g_h_u(i: usize, eps: usize) -> usize {
    2 * i + eps
}

/// Index of `v_a` in [`g_h`], with `a` a bitmask (`a(i)` = bit `i`).
pub fn g_h_v(h: usize, a: usize) -> usize {
    2 * h + a
}

/// The graph `G_h` on `2h + 2^h` vertices: matchings `u_{i0} ~ u_{i1}` and
/// `v_a ~ v_{1-a}`, plus `u_{i,eps} ~ v_a` iff `a(i) = eps`; weighted with
/// `mu(u) = 1/(4h)` and `mu(v) = 2^(-h-1)`.
pub fn g_h(h: usize) -> Result<WeightedGraph, GraphError> {
    if !(1..=10).contains(&h) {
        return Err(GraphError::ParameterOutOfRange(format!(
            "g_h parameter h = {h} outside 1..=10"
        )));
    }
    let full = (1usize << h) - 1;
    let mut edges = Vec::new();
    for i in 0..h {
        edges.push((g_h_u(i, 0), g_h_u(i, 1)));
        for a in 0..=full {
            edges.push((g_h_u(i, (a >> i) & 1), g_h_v(h, a)));
        }
    }
    for a in 0..=full {
        if a < full - a {
            edges.push((g_h_v(h, a), g_h_v(h, full - a)));
        }
    }
    let n = 2 * h + (1 << h);
    let u_weight = Rational::new(BigInt::one(), BigInt::from(4 * h));
    let v_weight = Rational::new(BigInt::one(), BigInt::from(1u64 << (h + 1)));
    let weights = (0..n)
        .map(|x| if x < 2 * h { u_weight.clone() } else { v_weight.clone() })
        .collect();
    WeightedGraph::from_edges(n, &edges)?.with_weights(weights)
}

/// Names accepted by [`by_name`].
pub const CATALOG_NAMES: &[&str] = &[
    "c5",
    "petersen",
    "clebsch",
    "higman-sims",
    "kneser-K",
    "g-H",
    "cycle-N",
];

/// Looks up a catalog graph: `c5`, `petersen`, `clebsch`, `higman-sims`,
/// `kneser-K`, `g-H` or `cycle-N` (underscores and parentheses accepted).
pub fn by_name(name: &str) -> Result<WeightedGraph, GraphError> {
    let norm: String = name
        .trim()
        .to_ascii_lowercase()
        .chars()
        .map(|c| if c == '_' || c == '(' || c == ':' { '-' } else { c })
        .filter(|&c| c != ')')
        .collect();
    let param = |prefix: &str| -> Option<Result<usize, GraphError>> {
        let rest = norm.strip_prefix(prefix)?;
        let rest = rest.strip_prefix('-').unwrap_or(rest);
        Some(rest.parse::<usize>().map_err(|_| GraphError::UnknownCatalogName(name.to_string())))
    };
    match norm.as_str() {
        "c5" | "cycle5" | "cycle-5" => Ok(cycle5()),
        "petersen" => Ok(petersen()),
        "clebsch" => Ok(clebsch()),
        "higman-sims" | "higmansims" | "hs" => higman_sims(),
        _ => {
            if let Some(k) = param("kneser") {
                kneser(k?)
            } else if let Some(h) = param("g-h") {
                g_h(h?)
            } else if let Some(n) = param("cycle") {
                cycle(n?)
            } else if let Some(h) = param("g") {
                g_h(h?)
            } else {
                Err(GraphError::UnknownCatalogName(name.to_string()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn named_graphs_have_expected_sizes() {
        assert_eq!(petersen().edge_count(), 15);
        assert_eq!(clebsch().edge_count(), 40);
        assert_eq!(kneser(2).unwrap().n(), 10);
        assert_eq!(kneser(3).unwrap().n(), 56);
        assert_eq!(g_h(2).unwrap().n(), 8);
        assert!(kneser(1).is_err());
        assert!(g_h(0).is_err());
    }

    #[test]
    fn petersen_is_srg() {
        assert!(is_strongly_regular(&petersen(), 10, 3, 0, 1));
        assert!(is_strongly_regular(&clebsch(), 16, 5, 0, 2));
    }

    #[test]
    fn kneser3_density() {
        let g = kneser(3).unwrap();
        assert_eq!(g.rho(), rat(5, 28));
        assert_eq!(g.a_value().unwrap(), rat(1, 56));
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(by_name("Petersen").unwrap(), petersen());
        assert_eq!(by_name("kneser(2)").unwrap().n(), 10);
        assert_eq!(by_name("g_h(3)").unwrap().n(), 14);
        assert_eq!(by_name("cycle-6").unwrap().n(), 6);
        assert!(by_name("moore").is_err());
    }
}
