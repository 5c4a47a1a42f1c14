use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{GraphError, WeightedGraph};
use crate::exactmath::{int, Rational};

/// The chain `W_0 ⊃ W_1 ⊃ ...` built while bounding the number of vertices
/// of a twin-free triangle-free weighted graph in terms of `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessChain {
    pub a: Rational,
    pub sets: Vec<Vec<usize>>,
    /// `mu(∪_{v ∈ K(W_r)} N(v))` for each `W_r`.
    pub covered_measure: Vec<Rational>,
    /// The vertex `v*` used to pass from `W_r` to `W_{r+1}`.
    pub pivots: Vec<usize>,
}

impl WitnessChain {
    /// Checks nesting, the size ratio `|W_{r+1}| >= (a/2)|W_r|`, the
    /// coverage bound `covered_measure[r] >= a r`, `mu(W_0) < a/2`, and
    /// termination with `|W_last| <= 1` within `1/a` steps.
    pub fn verify(&self, g: &WeightedGraph) -> bool {
        let half_a = &self.a / int(2);
        let Some(w0) = self.sets.first() else {
            return false;
        };
        if g.measure(w0.iter().copied()) >= half_a {
            return false;
        }
        for r in 0..self.sets.len() {
            if self.covered_measure[r] < &self.a * int(r as i64) {
                return false;
            }
            if r + 1 < self.sets.len() {
                let (cur, next) = (&self.sets[r], &self.sets[r + 1]);
                if !next.iter().all(|v| cur.contains(v)) || next.len() >= cur.len() {
                    return false;
                }
                if int(next.len() as i64) < &half_a * int(cur.len() as i64) {
                    return false;
                }
            }
        }
        let steps = int(self.sets.len() as i64 - 1);
        self.sets.last().unwrap().len() <= 1 && &steps * &self.a <= int(1)
    }
}

/// `(2/a)^(1 + ceil(1/a)) + 2/a`; equal to the exact vertex bound when
/// `1/a` is an integer and an upper bound for it otherwise.
pub fn boundedness_bound(a: &Rational) -> Result<Rational, GraphError> {
    if !a.is_positive() {
        return Err(GraphError::ZeroA);
    }
    let t = int(2) / a;
    let inv = a.recip();
    let e = inv.ceil().to_integer();
    let e: u32 = (e + BigInt::one()).try_into().map_err(|_| GraphError::ZeroA)?;
    Ok(num_traits::pow(t.clone(), e as usize) + t)
}

/// Exact test of `n <= (2/a)^(1 + 1/a) + 2/a` for the support of `g`.
pub fn boundedness_check(g: &WeightedGraph) -> Result<bool, GraphError> {
    let (g, _) = g.strip_zero_weights();
    let a = effective_a(&g)?;
    if !a.is_positive() {
        return Err(GraphError::ZeroA);
    }
    let n = int(g.n() as i64);
    let t = int(2) / &a;
    if n <= t {
        return Ok(true);
    }
    // with 1/a = p/q: (n - t)^q <= t^(q + p)
    let inv = a.recip();
    let (p, q) = (inv.numer().clone(), inv.denom().clone());
    let q_us: usize = (&q).try_into().map_err(|_| GraphError::ZeroA)?;
    let pq: usize = (&(&p + &q)).try_into().map_err(|_| GraphError::ZeroA)?;
    Ok(num_traits::pow(&n - &t, q_us) <= num_traits::pow(t, pq))
}

fn effective_a(g: &WeightedGraph) -> Result<Rational, GraphError> {
    match g.a_value() {
        Ok(a) => Ok(a),
        Err(GraphError::CompleteGraph) => Ok(int(1)),
        Err(e) => Err(e),
    }
}

/// Runs the constructive argument: sorts vertices by weight, takes the
/// light tail `W_0` of measure below `a/2`, then repeatedly intersects with
/// the neighbourhood of a vertex `v* ∉ W ∪ K(W)` that sees at least an
/// `a/2` fraction of `W`, until `|W| <= 1`.
pub fn boundedness_witness(g: &WeightedGraph) -> Result<WitnessChain, GraphError> {
    let (g, keep) = g.strip_zero_weights();
    let a = effective_a(&g)?;
    if !a.is_positive() {
        return Err(GraphError::ZeroA);
    }
    let half_a = &a / int(2);
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&u, &v| g.weight(v).cmp(g.weight(u)).then(u.cmp(&v)));

    // maximal k (1-based) with mu({v_k..v_n}) >= a/2; W_0 = {v_{k+1}..v_n}
    let mut tail = Rational::zero();
    let mut start = g.n();
    for i in (0..g.n()).rev() {
        tail += g.weight(order[i]);
        if tail >= half_a {
            start = i + 1;
            break;
        }
    }
    let mut w: Vec<usize> = order[start.min(g.n())..].to_vec();
    w.sort_unstable();

    let mut sets = vec![w.clone()];
    let mut covered = vec![covered_measure(&g, &w)];
    let mut pivots = Vec::new();
    while w.len() >= 2 {
        let k = common_neighbourhood(&g, &w);
        let best = (0..g.n())
            .filter(|v| !w.contains(v) && !k.contains(v))
            .map(|v| (w.iter().filter(|&&x| g.adjacent(v, x)).count(), v))
            .max_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
        let Some((hits, v)) = best else {
            return Err(GraphError::WitnessFailed(w.len()));
        };
        if int(hits as i64) < &half_a * int(w.len() as i64) {
            return Err(GraphError::WitnessFailed(w.len()));
        }
        w.retain(|&x| g.adjacent(v, x));
        pivots.push(keep[v]);
        covered.push(covered_measure(&g, &w));
        sets.push(w.clone());
        if int(pivots.len() as i64) * &a > int(1) {
            return Err(GraphError::WitnessFailed(w.len()));
        }
    }
    let sets = sets
        .into_iter()
        .map(|s| s.into_iter().map(|v| keep[v]).collect())
        .collect();
    Ok(WitnessChain {
        a,
        sets,
        covered_measure: covered,
        pivots,
    })
}

/// `K(W)`: vertices adjacent to every member of `W`.
fn common_neighbourhood(g: &WeightedGraph, w: &[usize]) -> Vec<usize> {
    (0..g.n())
        .filter(|&v| w.iter().all(|&x| g.adjacent(v, x)))
        .collect()
}

fn covered_measure(g: &WeightedGraph, w: &[usize]) -> Rational {
    if w.is_empty() {
        return Rational::zero();
    }
    let k = common_neighbourhood(g, w);
    let mut covered = vec![false; g.n()];
    for v in k {
        for &u in g.neighbours(v) {
            covered[u] = true;
        }
    }
    g.measure((0..g.n()).filter(|&u| covered[u]))
}
