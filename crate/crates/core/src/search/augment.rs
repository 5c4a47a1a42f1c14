use std::collections::HashSet;

use rayon::prelude::*;

use super::canon::{canonical, SmallGraph};

/// A graph in canonical form together with its certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Node {
    pub graph: SmallGraph,
    pub cert: u128,
}

impl Node {
    pub fn new(g: &SmallGraph) -> Self {
        let c = canonical(g);
        Node {
            graph: c.form(g),
            cert: c.cert,
        }
    }

    pub fn root() -> Self {
        Self::new(&SmallGraph::empty(1))
    }
}

/// Triangle-free children of `parent` one vertex larger, each isomorphism
/// class produced exactly once over all parents.
///
/// The new vertex must have minimum degree and lie in the orbit of the
/// canonical deletion vertex: the min-degree vertex with the largest
/// canonical position.
pub fn children(parent: &Node) -> Vec<Node> {
    let p = &parent.graph;
    let n = p.n();
    let degs: Vec<usize> = (0..n).map(|v| p.degree(v)).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for s in p.independent_sets() {
        let k = s.count_ones() as usize;
        if (0..n).any(|u| degs[u] + (((s >> u) & 1) as usize) < k) {
            continue;
        }
        let child = p.with_vertex(s);
        let c = canonical(&child);
        let vc = *c
            .labeling
            .iter()
            .rev()
            .find(|&&v| child.degree(v) == k)
            .expect("new vertex has minimum degree");
        let accept = vc == n
            || c.same_orbit(vc, n)
            || canonical(&child.without_vertex(vc)).cert == parent.cert;
        if accept && seen.insert(c.cert) {
            out.push(Node {
                graph: c.form(&child),
                cert: c.cert,
            });
        }
    }
    out.sort_by_key(|c| c.cert);
    out
}

/// Every triangle-free graph on `n` vertices up to isomorphism, sorted by
/// certificate.
pub fn enumerate_triangle_free(n: usize) -> Vec<SmallGraph> {
    levels(n).pop().unwrap_or_default().into_iter().map(|x| x.graph).collect()
}

/// Levels 1..=n of the augmentation tree.
pub fn levels(n: usize) -> Vec<Vec<Node>> {
    if n == 0 {
        return vec![vec![Node::new(&SmallGraph::empty(0))]];
    }
    let mut out = vec![vec![Node::root()]];
    for _ in 1..n {
        let prev = out.last().unwrap();
        let mut next: Vec<Node> = prev.par_iter().flat_map_iter(children).collect();
        next.sort_by_key(|c| c.cert);
        out.push(next);
    }
    out
}

/// Depth-first walk of the subtree below `node` down to `n_max` vertices.
pub fn walk<F: FnMut(&Node)>(node: &Node, n_max: usize, visit: &mut F) {
    visit(node);
    if node.graph.n() < n_max {
        for c in children(node) {
            walk(&c, n_max, visit);
        }
    }
}
