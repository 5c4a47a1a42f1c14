//! Regular vertex weightings of a graph skeleton: the unique regular density
//! `rho_G` and the exact linear program maximizing `a(G, mu)` over regular
//! probability weights.

mod simplex;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use simplex::{LinearProgram, LpOutcome, Sense};

use crate::exactmath::Rational;
use crate::graphcore::WeightedGraph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegError {
    #[error("the all-ones vector is not in the column space of the adjacency matrix")]
    NoRegularWeights,
    #[error("regular density is undefined: solutions of A x = 1 sum to zero")]
    DegenerateRho,
    #[error("column order is not a permutation of 0..{0}")]
    BadOrder(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    /// `rho_G` exists but no non-negative weights realize it.
    Infeasible,
    NoRegularWeights,
    /// No distinct non-adjacent pair constrains `a`.
    Unbounded,
}

impl fmt::Display for LpStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LpStatus::Optimal => "optimal",
            LpStatus::Infeasible => "infeasible",
            LpStatus::NoRegularWeights => "no-regular-weights",
            LpStatus::Unbounded => "unbounded",
        })
    }
}

#[derive(Clone, Debug)]
pub struct LpResult {
    pub status: LpStatus,
    pub rho_g: Option<Rational>,
    pub optimum_a: Option<Rational>,
    pub weights: Option<Vec<Rational>>,
    /// Dual multipliers for the rows of [`a_program`], in order.
    pub certificate: Option<Vec<Rational>>,
}

impl LpResult {
    /// Re-checks primal feasibility of the weights and the dual certificate
    /// against a freshly built program.
    pub fn verify(&self, g: &WeightedGraph) -> bool {
        match (&self.rho_g, &self.optimum_a, &self.weights, &self.certificate) {
            (Some(rho), Some(a), Some(w), Some(y)) if self.status == LpStatus::Optimal => {
                let lp = a_program(g, rho);
                let mut x = w.clone();
                x.push(a.clone());
                lp.is_feasible(&x) && lp.dual_certifies(y, a)
            }
            _ => false,
        }
    }
}

impl fmt::Display for LpResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "status={}", self.status)?;
        if let Some(r) = &self.rho_g {
            writeln!(f, "rho_G={r}")?;
        }
        if let Some(a) = &self.optimum_a {
            writeln!(f, "a*={a}")?;
        }
        if let Some(w) = &self.weights {
            if w.iter().all(|x| *x == w[0]) {
                writeln!(f, "weights=uniform")?;
            } else {
                let s: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                writeln!(f, "weights={}", s.join(","))?;
            }
        }
        if let Some(y) = &self.certificate {
            let s: Vec<String> = y.iter().map(|x| x.to_string()).collect();
            writeln!(f, "certificate={}", s.join(","))?;
        }
        Ok(())
    }
}

/// `rho_G = 1 / (1^T x)` for any solution of `A x = 1`.
pub fn rho_of_skeleton(g: &WeightedGraph) -> Result<Rational, RegError> {
    let order: Vec<usize> = (0..g.n()).collect();
    rho_of_skeleton_with_order(g, &order)
}

/// As [`rho_of_skeleton`], eliminating the unknowns in the given order.
pub fn rho_of_skeleton_with_order(g: &WeightedGraph, order: &[usize]) -> Result<Rational, RegError> {
    let n = g.n();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(RegError::BadOrder(n));
    }
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|r| {
            let mut row: Vec<BigInt> = order
                .iter()
                .map(|&c| if g.adjacent(r, c) { BigInt::one() } else { BigInt::zero() })
                .collect();
            row.push(BigInt::one());
            row
        })
        .collect();
    let pivots = bareiss(&mut m, n);
    if pivots.iter().any(|&(_, c)| c == n) {
        return Err(RegError::NoRegularWeights);
    }
    let mut x = vec![Rational::zero(); n];
    for &(r, c) in pivots.iter().rev() {
        let mut rhs = Rational::from_integer(m[r][n].clone());
        for j in c + 1..n {
            if !m[r][j].is_zero() {
                rhs -= Rational::from_integer(m[r][j].clone()) * &x[j];
            }
        }
        x[c] = rhs / Rational::from_integer(m[r][c].clone());
    }
    let total: Rational = x.iter().sum();
    if total.is_zero() {
        return Err(RegError::DegenerateRho);
    }
    Ok(total.recip())
}

/// Fraction-free row reduction of the first `cols` columns (plus the
/// augmented tail); returns `(row, column)` of each pivot, including a pivot
/// in column `cols` when the system is inconsistent.
fn bareiss(m: &mut [Vec<BigInt>], cols: usize) -> Vec<(usize, usize)> {
    let rows = m.len();
    let width = cols + 1;
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..width {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

/// The program `max a` over `(eta_1..eta_n, a) ≥ 0` with `sum eta = 1`,
/// `A eta = rho 1` and `sum_{u in N(v) ∩ N(w)} eta_u ≥ a` for every distinct
/// non-adjacent pair `v < w`.
pub fn a_program(g: &WeightedGraph, rho: &Rational) -> LinearProgram {
    let n = g.n();
    let mut obj = vec![Rational::zero(); n + 1];
    obj[n] = Rational::one();
    let mut lp = LinearProgram::new(obj);
    regularity_rows(g, rho, &mut lp);
    for (v, w) in g.non_adjacent_pairs() {
        let mut row = vec![Rational::zero(); n + 1];
        for u in g.common_neighbours(v, w) {
            row[u] = Rational::one();
        }
        row[n] = -Rational::one();
        lp.push(row, Sense::Ge, Rational::zero());
    }
    lp
}

fn regularity_rows(g: &WeightedGraph, rho: &Rational, lp: &mut LinearProgram) {
    let n = g.n();
    let width = lp.n_vars();
    let mut sum = vec![Rational::zero(); width];
    for x in sum.iter_mut().take(n) {
        *x = Rational::one();
    }
    lp.push(sum, Sense::Eq, Rational::one());
    for v in 0..n {
        let mut row = vec![Rational::zero(); width];
        for &u in g.neighbours(v) {
            row[u] = Rational::one();
        }
        lp.push(row, Sense::Eq, rho.clone());
    }
}

/// Maximizes `a(G, mu)` over probability weights making `G` regular. Vertex
/// weights of `g` are ignored.
pub fn optimize_a(g: &WeightedGraph) -> LpResult {
    let empty = |status, rho_g| LpResult {
        status,
        rho_g,
        optimum_a: None,
        weights: None,
        certificate: None,
    };
    let rho = match rho_of_skeleton(g) {
        Ok(r) => r,
        Err(RegError::DegenerateRho) => return empty(LpStatus::Infeasible, None),
        Err(_) => return empty(LpStatus::NoRegularWeights, None),
    };
    let lp = a_program(g, &rho);
    match lp.solve_by_row_generation() {
        LpOutcome::Optimal { mut x, value, duals } => {
            x.pop();
            LpResult {
                status: LpStatus::Optimal,
                rho_g: Some(rho),
                optimum_a: Some(value),
                weights: Some(x),
                certificate: Some(duals),
            }
        }
        LpOutcome::Infeasible => empty(LpStatus::Infeasible, Some(rho)),
        LpOutcome::Unbounded => empty(LpStatus::Unbounded, Some(rho)),
    }
}

/// Regular probability weights maximizing the smallest vertex weight, if that
/// smallest weight can be made strictly positive.
pub fn positive_feasibility(g: &WeightedGraph) -> Result<Option<Vec<Rational>>, RegError> {
    let rho = rho_of_skeleton(g)?;
    let n = g.n();
    let mut obj = vec![Rational::zero(); n + 1];
    obj[n] = Rational::one();
    let mut lp = LinearProgram::new(obj);
    regularity_rows(g, &rho, &mut lp);
    for v in 0..n {
        let mut row = vec![Rational::zero(); n + 1];
        row[v] = Rational::one();
        row[n] = -Rational::one();
        lp.push(row, Sense::Ge, Rational::zero());
    }
    match lp.solve_by_row_generation() {
        LpOutcome::Optimal { mut x, value, .. } if value.is_positive() => {
            x.pop();
            Ok(Some(x))
        }
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};
    use crate::graphcore::catalog;

    #[test]
    fn rho_of_small_skeletons() {
        assert_eq!(rho_of_skeleton(&catalog::petersen()).unwrap(), rat(3, 10));
        assert_eq!(rho_of_skeleton(&catalog::cycle5()).unwrap(), rat(2, 5));
        let p3 = WeightedGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(rho_of_skeleton(&p3).unwrap(), rat(1, 2));
        let empty = WeightedGraph::from_edges(2, &[]).unwrap();
        assert_eq!(rho_of_skeleton(&empty), Err(RegError::NoRegularWeights));
    }

    #[test]
    fn petersen_program() {
        let g = catalog::petersen();
        let r = optimize_a(&g);
        assert_eq!(r.status, LpStatus::Optimal);
        assert_eq!(r.optimum_a, Some(rat(1, 10)));
        assert_eq!(r.weights, Some(vec![rat(1, 10); 10]));
        assert!(r.verify(&g));
    }

    #[test]
    fn c6_has_zero_optimum() {
        let g = catalog::cycle(6).unwrap();
        let r = optimize_a(&g);
        assert_eq!(r.rho_g, Some(rat(1, 3)));
        assert_eq!(r.optimum_a, Some(int(0)));
        assert!(r.verify(&g));
    }

    #[test]
    fn edge_is_unbounded() {
        let g = WeightedGraph::from_edges(2, &[(0, 1)]).unwrap();
        let r = optimize_a(&g);
        assert_eq!(r.status, LpStatus::Unbounded);
        assert_eq!(r.rho_g, Some(rat(1, 2)));
        assert_eq!(
            positive_feasibility(&g).unwrap(),
            Some(vec![rat(1, 2), rat(1, 2)])
        );
    }

    #[test]
    fn star_has_no_positive_weights() {
        let g = WeightedGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(positive_feasibility(&g).unwrap().map(|w| w[0].clone()), Some(rat(1, 2)));
    }
}
