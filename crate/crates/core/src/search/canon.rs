use crate::graphcore::WeightedGraph;

pub const MAX_N: usize = 16;

/// A simple graph on at most 16 vertices stored as adjacency bitmasks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallGraph {
    n: u8,
    adj: [u16; MAX_N],
}

impl SmallGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_N, "at most {MAX_N} vertices");
        SmallGraph {
            n: n as u8,
            adj: [0; MAX_N],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn from_weighted(g: &WeightedGraph) -> Option<Self> {
        (g.n() <= MAX_N).then(|| Self::from_edges(g.n(), &g.edges()))
    }

    /// Uniformly weighted copy.
    pub fn to_weighted(&self) -> WeightedGraph {
        WeightedGraph::from_edges(self.n(), &self.edges()).expect("valid simple graph")
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n() && v < self.n());
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn nbr_mask(&self, v: usize) -> u16 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.n() {
            for u in 0..v {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Adds vertex `n` adjacent to the vertices in `mask`.
    pub fn with_vertex(&self, mask: u16) -> Self {
        let mut g = *self;
        let v = self.n();
        assert!(v < MAX_N);
        g.n += 1;
        g.adj[v] = mask;
        for u in 0..v {
            if mask >> u & 1 == 1 {
                g.adj[u] |= 1 << v;
            }
        }
        g
    }

    /// Deletes `v`, shifting higher vertices down by one.
    pub fn without_vertex(&self, v: usize) -> Self {
        let low = (1u16 << v) - 1;
        let squeeze = |m: u16| (m & low) | ((m >> 1) & !low);
        let mut g = Self::empty(self.n() - 1);
        let mut k = 0;
        for u in 0..self.n() {
            if u != v {
                g.adj[k] = squeeze(self.adj[u] & !(1 << v));
                k += 1;
            }
        }
        g
    }

    /// Relabels so that vertex `order[i]` becomes `i`.
    pub fn relabel(&self, order: &[usize]) -> Self {
        let mut pos = [0usize; MAX_N];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Self::empty(self.n());
        for (i, &v) in order.iter().enumerate() {
            let mut m = 0u16;
            for u in 0..self.n() {
                if self.has_edge(v, u) {
                    m |= 1 << pos[u];
                }
            }
            g.adj[i] = m;
        }
        g
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges().iter().all(|&(u, v)| self.adj[u] & self.adj[v] == 0)
    }

    pub fn is_twin_free(&self) -> bool {
        (0..self.n()).all(|v| (0..v).all(|u| self.adj[u] != self.adj[v]))
    }

    /// Some distinct pair is non-adjacent and every such pair has a common
    /// neighbour.
    pub fn is_diameter_two(&self) -> bool {
        let mut any = false;
        for v in 0..self.n() {
            for u in 0..v {
                if !self.has_edge(u, v) {
                    any = true;
                    if self.adj[u] & self.adj[v] == 0 {
                        return false;
                    }
                }
            }
        }
        any
    }

    /// Independent sets as bitmasks, including the empty set.
    pub fn independent_sets(&self) -> Vec<u16> {
        let mut out = Vec::new();
        self.collect_independent(0, 0, &mut out);
        out
    }

    fn collect_independent(&self, v: usize, set: u16, out: &mut Vec<u16>) {
        if v == self.n() {
            out.push(set);
            return;
        }
        self.collect_independent(v + 1, set, out);
        if self.adj[v] & set == 0 {
            self.collect_independent(v + 1, set | 1 << v, out);
        }
    }
}

/// Result of canonical labelling: the certificate is an isomorphism
/// invariant, `labeling[i]` is the vertex placed at position `i`.
#[derive(Clone, Debug)]
pub struct Canon {
    pub cert: u128,
    pub labeling: Vec<usize>,
    orbit: Vec<usize>,
}

impl Canon {
    /// Whether `u` and `v` were found to lie in one automorphism orbit; a
    /// `false` answer is not conclusive.
    pub fn same_orbit(&self, u: usize, v: usize) -> bool {
        self.orbit[u] == self.orbit[v]
    }

    pub fn form(&self, g: &SmallGraph) -> SmallGraph {
        g.relabel(&self.labeling)
    }
}

fn certificate(g: &SmallGraph, lab: &[usize]) -> u128 {
    let mut c = 0u128;
    let mut bit = 0;
    for j in 1..lab.len() {
        for i in 0..j {
            if g.has_edge(lab[i], lab[j]) {
                c |= 1 << bit;
            }
            bit += 1;
        }
    }
    c
}

fn refine(g: &SmallGraph, cells: &mut Vec<Vec<usize>>) {
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter: u16 = cells[s].iter().fold(0, |m, &v| m | 1 << v);
            let mut next = Vec::with_capacity(cells.len());
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> = cell
                    .iter()
                    .map(|&v| ((g.nbr_mask(v) & splitter).count_ones(), v))
                    .collect();
                keyed.sort_by_key(|&(k, _)| k);
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
            }
            if next.len() != cells.len() {
                changed = true;
            }
            *cells = next;
            s += 1;
        }
        if !changed {
            return;
        }
    }
}

struct Search<'a> {
    g: &'a SmallGraph,
    best: Option<(u128, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    let mut y = x;
    while p[y] != r {
        let next = p[y];
        p[y] = r;
        y = next;
    }
    r
}

fn union(p: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(p, a), find(p, b));
    if ra != rb {
        p[ra.max(rb)] = ra.min(rb);
    }
}

impl Search<'_> {
    fn orbits_fixing(&self, prefix: &[usize]) -> Vec<usize> {
        let n = self.g.n();
        let mut p: Vec<usize> = (0..n).collect();
        for a in &self.autos {
            if prefix.iter().all(|&x| a[x] == x) {
                for v in 0..n {
                    union(&mut p, v, a[v]);
                }
            }
        }
        p
    }

    fn run(&mut self, cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        let Some(t) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cells[t] {
            if !explored.is_empty() {
                let mut p = self.orbits_fixing(prefix);
                let rv = find(&mut p, v);
                if explored.iter().any(|&u| find(&mut p, u) == rv) {
                    continue;
                }
            }
            explored.push(v);
            let mut next = cells.clone();
            let rest: Vec<usize> = next[t].iter().copied().filter(|&x| x != v).collect();
            next[t] = vec![v];
            next.insert(t + 1, rest);
            refine(self.g, &mut next);
            prefix.push(v);
            self.run(next, prefix);
            prefix.pop();
        }
    }

    fn leaf(&mut self, cells: &[Vec<usize>]) {
        let lab: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let cert = certificate(self.g, &lab);
        match &self.best {
            Some((b, blab)) if *b == cert => {
                let mut gamma = vec![0; lab.len()];
                for (i, &x) in blab.iter().enumerate() {
                    gamma[x] = lab[i];
                }
                if gamma.iter().enumerate().any(|(i, &x)| i != x) {
                    self.autos.push(gamma);
                }
            }
            Some((b, _)) if *b > cert => {}
            _ => self.best = Some((cert, lab)),
        }
    }
}

/// Canonical labelling by equitable refinement and individualization, with
/// pruning by the automorphisms discovered along the way.
pub fn canonical(g: &SmallGraph) -> Canon {
    let n = g.n();
    if n == 0 {
        return Canon {
            cert: 0,
            labeling: Vec::new(),
            orbit: Vec::new(),
        };
    }
    let mut cells = vec![(0..n).collect::<Vec<_>>()];
    refine(g, &mut cells);
    let mut s = Search {
        g,
        best: None,
        autos: Vec::new(),
    };
    s.run(cells, &mut Vec::new());
    let mut orbit = s.orbits_fixing(&[]);
    for v in 0..n {
        orbit[v] = find(&mut orbit, v);
    }
    let (cert, labeling) = s.best.expect("at least one leaf");
    Canon { cert, labeling, orbit }
}
