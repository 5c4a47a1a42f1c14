use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::GraphError;
use crate::exactmath::{lcm_of_denominators, Rational};

/// Simple undirected graph with a probability measure on its vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    adj: Vec<bool>,
    nbrs: Vec<Vec<usize>>,
    weights: Vec<Rational>,
}

impl fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightedGraph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .field("weights", &self.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

impl WeightedGraph {
    /// Uniformly weighted graph on `n >= 1` vertices.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adj = vec![false; n * n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u * n + v] = true;
            adj[v * n + u] = true;
        }
        Ok(Self::from_adjacency_unchecked(n, adj, uniform(n)))
    }

    /// Builds from a row-major symmetric boolean matrix with empty diagonal.
    pub fn from_matrix(n: usize, adj: Vec<bool>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        assert_eq!(adj.len(), n * n, "adjacency matrix has wrong size");
        for u in 0..n {
            if adj[u * n + u] {
                return Err(GraphError::SelfLoop(u));
            }
            for v in 0..u {
                if adj[u * n + v] != adj[v * n + u] {
                    return Err(GraphError::Asymmetric(u, v));
                }
            }
        }
        Ok(Self::from_adjacency_unchecked(n, adj, uniform(n)))
    }

    fn from_adjacency_unchecked(n: usize, adj: Vec<bool>, weights: Vec<Rational>) -> Self {
        let nbrs = (0..n)
            .map(|u| (0..n).filter(|&v| adj[u * n + v]).collect())
            .collect();
        WeightedGraph {
            n,
            adj,
            nbrs,
            weights,
        }
    }

    /// Replaces the weights; they must be non-negative and sum to one.
    pub fn with_weights(mut self, weights: Vec<Rational>) -> Result<Self, GraphError> {
        if weights.len() != self.n {
            return Err(GraphError::InvalidWeights(format!(
                "expected {} weights, got {}",
                self.n,
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(GraphError::InvalidWeights(format!("negative weight {w}")));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(GraphError::InvalidWeights(format!("weights sum to {total}, not 1")));
        }
        self.weights = weights;
        Ok(self)
    }

    pub fn uniform(self) -> Self {
        let n = self.n;
        WeightedGraph {
            weights: uniform(n),
            ..self
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.nbrs[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    pub fn weight(&self, v: usize) -> &Rational {
        &self.weights[v]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn is_uniform(&self) -> bool {
        self.weights.iter().all(|w| *w == self.weights[0])
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for &v in &self.nbrs[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.nbrs.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Distinct non-adjacent pairs `(u, v)` with `u < v`.
    pub fn non_adjacent_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n)
                .filter(move |&v| !self.adjacent(u, v))
                .map(move |v| (u, v))
        })
    }

    pub fn common_neighbours(&self, u: usize, v: usize) -> Vec<usize> {
        self.nbrs[u]
            .iter()
            .copied()
            .filter(|&w| self.adjacent(v, w))
            .collect()
    }

    pub fn measure(&self, vertices: impl IntoIterator<Item = usize>) -> Rational {
        vertices.into_iter().map(|v| &self.weights[v]).sum()
    }

    pub fn is_triangle_free(&self) -> bool {
        (0..self.n).all(|u| {
            self.nbrs[u]
                .iter()
                .filter(|&&v| v > u)
                .all(|&v| self.nbrs[v].iter().all(|&w| w <= v || !self.adjacent(u, w)))
        })
    }

    /// `e(v) = mu(N(v))`.
    pub fn e(&self, v: usize) -> Rational {
        self.measure(self.nbrs[v].iter().copied())
    }

    /// Weighted edge density `sum over ordered adjacent pairs of mu(u) mu(v)`.
    pub fn rho(&self) -> Rational {
        (0..self.n).map(|u| &self.weights[u] * self.e(u)).sum()
    }

    /// `P3^N(u, v) = mu(N(u) ∩ N(v))`.
    pub fn p3n(&self, u: usize, v: usize) -> Rational {
        self.measure(self.common_neighbours(u, v))
    }

    /// Minimum common-neighbourhood measure over distinct non-adjacent pairs.
    pub fn a_value(&self) -> Result<Rational, GraphError> {
        self.non_adjacent_pairs()
            .map(|(u, v)| self.p3n(u, v))
            .min()
            .ok_or(GraphError::CompleteGraph)
    }

    /// All distinct non-adjacent pairs attaining [`Self::a_value`].
    pub fn minimizing_pairs(&self) -> Result<Vec<(usize, usize)>, GraphError> {
        let a = self.a_value()?;
        Ok(self
            .non_adjacent_pairs()
            .filter(|&(u, v)| self.p3n(u, v) == a)
            .collect())
    }

    /// The common value of `e(v)` over the support of the measure, if any.
    pub fn regular_degree(&self) -> Option<Rational> {
        let mut support = (0..self.n).filter(|&v| !self.weights[v].is_zero());
        let first = self.e(support.next()?);
        support.all(|v| self.e(v) == first).then_some(first)
    }

    pub fn is_regular(&self) -> bool {
        self.regular_degree().is_some()
    }

    pub fn is_complete(&self) -> bool {
        self.non_adjacent_pairs().next().is_none()
    }

    /// Every distinct non-adjacent pair has a common neighbour.
    pub fn is_diameter_two(&self) -> bool {
        self.non_adjacent_pairs()
            .all(|(u, v)| self.nbrs[u].iter().any(|&w| self.adjacent(v, w)))
    }

    pub fn is_twin_free(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        (0..self.n).all(|v| seen.insert(&self.nbrs[v]))
    }

    pub fn induced(&self, vertices: &[usize]) -> WeightedGraph {
        let m = vertices.len();
        let mut adj = vec![false; m * m];
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                adj[i * m + j] = self.adjacent(u, v);
            }
        }
        let weights = vertices.iter().map(|&v| self.weights[v].clone()).collect();
        Self::from_adjacency_unchecked(m, adj, weights)
    }

    /// Drops zero-weight vertices; returns the reduced graph and, for each of
    /// its vertices, the original index.
    pub fn strip_zero_weights(&self) -> (WeightedGraph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n).filter(|&v| !self.weights[v].is_zero()).collect();
        (self.induced(&keep), keep)
    }

    /// Merges vertices with identical neighbourhoods, summing weights.
    /// Classes are numbered in order of first appearance.
    pub fn twin_reduce(&self) -> WeightedGraph {
        let (reduced, _) = self.twin_reduce_with_classes();
        reduced
    }

    /// Like [`Self::twin_reduce`], also returning the class of each vertex.
    pub fn twin_reduce_with_classes(&self) -> (WeightedGraph, Vec<usize>) {
        let mut class_of_set: HashMap<&Vec<usize>, usize> = HashMap::new();
        let mut reps = Vec::new();
        let mut class = Vec::with_capacity(self.n);
        for v in 0..self.n {
            let next = reps.len();
            let c = *class_of_set.entry(&self.nbrs[v]).or_insert(next);
            if c == next {
                reps.push(v);
            }
            class.push(c);
        }
        let mut reduced = self.induced(&reps);
        let mut weights = vec![Rational::zero(); reps.len()];
        for v in 0..self.n {
            weights[class[v]] += &self.weights[v];
        }
        reduced.weights = weights;
        (reduced, class)
    }

    /// Replaces each vertex `v` by `N * mu(v)` independent twin copies, where
    /// `N` is the least common denominator of the weights.
    pub fn blow_up(&self) -> WeightedGraph {
        let d = lcm_of_denominators(&self.weights);
        let copies: Vec<usize> = self
            .weights
            .iter()
            .map(|w| {
                (w * Rational::from_integer(d.clone()))
                    .to_integer()
                    .to_usize()
                    .expect("blow-up too large")
            })
            .collect();
        let mut origin = Vec::new();
        for (v, &c) in copies.iter().enumerate() {
            origin.extend(std::iter::repeat(v).take(c));
        }
        let m = origin.len();
        let mut adj = vec![false; m * m];
        for i in 0..m {
            for j in 0..m {
                adj[i * m + j] = self.adjacent(origin[i], origin[j]);
            }
        }
        Self::from_adjacency_unchecked(m, adj, uniform(m))
    }

    /// Relabels vertices: new vertex `i` is old vertex `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> WeightedGraph {
        assert_eq!(order.len(), self.n);
        self.induced(order)
    }
}

fn uniform(n: usize) -> Vec<Rational> {
    vec![Rational::new(BigInt::one(), BigInt::from(n)); n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn cycle(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        WeightedGraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn c5_invariants() {
        let g = cycle(5);
        assert!(g.is_triangle_free());
        assert_eq!(g.rho(), rat(2, 5));
        assert_eq!(g.a_value().unwrap(), rat(1, 5));
        assert!(g.is_diameter_two());
        assert!(g.is_twin_free());
    }

    #[test]
    fn triangle_detected() {
        let k3 = WeightedGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!k3.is_triangle_free());
        assert_eq!(k3.a_value(), Err(GraphError::CompleteGraph));
    }

    #[test]
    fn c4_reduces_to_weighted_edge() {
        let r = cycle(4).twin_reduce();
        assert_eq!(r.n(), 2);
        assert!(r.adjacent(0, 1));
        assert_eq!(r.weights(), &[rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn blow_up_of_skewed_edge_is_path() {
        let g = WeightedGraph::from_edges(2, &[(0, 1)])
            .unwrap()
            .with_weights(vec![rat(2, 3), rat(1, 3)])
            .unwrap();
        let b = g.blow_up();
        assert_eq!(b.n(), 3);
        assert_eq!(b.edge_count(), 2);
        assert_eq!(b.rho(), g.rho());
    }

    #[test]
    fn c6_is_not_diameter_two() {
        let g = cycle(6);
        assert!(!g.is_diameter_two());
        assert_eq!(g.a_value().unwrap(), rat(0, 1));
    }

    #[test]
    fn weight_validation() {
        let g = cycle(3);
        assert!(g.clone().with_weights(vec![rat(1, 2); 3]).is_err());
        assert!(g.clone().with_weights(vec![rat(1, 2), rat(1, 2)]).is_err());
        assert!(g
            .with_weights(vec![rat(3, 2), rat(-1, 2), rat(0, 1)])
            .is_err());
    }
}
