use num_traits::{One, Signed, Zero};

use crate::exactmath::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

/// `maximize c·x` subject to the rows and `x ≥ 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub rows: Vec<(Vec<Rational>, Sense, Rational)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal {
        x: Vec<Rational>,
        value: Rational,
        /// One multiplier per row, signed for the original row orientation.
        duals: Vec<Rational>,
    },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>) -> Self {
        LinearProgram {
            objective,
            rows: Vec::new(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn push(&mut self, coeffs: Vec<Rational>, sense: Sense, rhs: Rational) {
        assert_eq!(coeffs.len(), self.n_vars());
        self.rows.push((coeffs, sense, rhs));
    }

    pub fn objective_at(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }

    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.n_vars()
            && x.iter().all(|v| !v.is_negative())
            && self.rows.iter().all(|(a, s, b)| {
                let lhs = dot(a, x);
                match s {
                    Sense::Le => lhs <= *b,
                    Sense::Ge => lhs >= *b,
                    Sense::Eq => lhs == *b,
                }
            })
    }

    /// Checks that `duals` is feasible for the dual program and that its
    /// objective equals `value`, which together with primal feasibility of a
    /// point attaining `value` proves optimality.
    pub fn dual_certifies(&self, duals: &[Rational], value: &Rational) -> bool {
        if duals.len() != self.rows.len() {
            return false;
        }
        let signs_ok = self.rows.iter().zip(duals).all(|((_, s, _), y)| match s {
            Sense::Le => !y.is_negative(),
            Sense::Ge => !y.is_positive(),
            Sense::Eq => true,
        });
        let cols_ok = (0..self.n_vars()).all(|j| {
            let s: Rational = self.rows.iter().zip(duals).map(|((a, _, _), y)| &a[j] * y).sum();
            s >= self.objective[j]
        });
        let by: Rational = self.rows.iter().zip(duals).map(|((_, _, b), y)| b * y).sum();
        signs_ok && cols_ok && by == *value
    }

    /// Exact two-phase simplex with Bland's rule.
    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).run(self)
    }

    /// Same optimum as [`solve`](Self::solve), computed on equality rows
    /// plus a growing subset of the inequality rows: violated rows are added
    /// until the relaxed optimum satisfies every row. Duals of inactive rows
    /// are zero.
    pub fn solve_by_row_generation(&self) -> LpOutcome {
        let batch = self.n_vars().max(8);
        let mut inactive: Vec<usize> = Vec::new();
        let mut active: Vec<usize> = Vec::new();
        for (i, (_, s, _)) in self.rows.iter().enumerate() {
            if *s == Sense::Eq || active.len() < batch {
                active.push(i);
            } else {
                inactive.push(i);
            }
        }
        loop {
            let sub = LinearProgram {
                objective: self.objective.clone(),
                rows: active.iter().map(|&i| self.rows[i].clone()).collect(),
            };
            let added: Vec<usize> = match sub.solve() {
                LpOutcome::Infeasible => return LpOutcome::Infeasible,
                LpOutcome::Unbounded if inactive.is_empty() => return LpOutcome::Unbounded,
                LpOutcome::Unbounded => inactive.iter().copied().take(batch).collect(),
                LpOutcome::Optimal { x, value, duals } => {
                    let mut violated: Vec<(Rational, usize)> = inactive
                        .iter()
                        .filter_map(|&i| {
                            let (a, s, b) = &self.rows[i];
                            let gap = match s {
                                Sense::Ge => b - dot(a, &x),
                                _ => dot(a, &x) - b,
                            };
                            gap.is_positive().then_some((gap, i))
                        })
                        .collect();
                    if violated.is_empty() {
                        let mut full = vec![Rational::zero(); self.rows.len()];
                        for (k, &i) in active.iter().enumerate() {
                            full[i] = duals[k].clone();
                        }
                        return LpOutcome::Optimal { x, value, duals: full };
                    }
                    violated.sort_by(|p, q| q.0.cmp(&p.0).then(p.1.cmp(&q.1)));
                    violated.into_iter().take(batch).map(|(_, i)| i).collect()
                }
            };
            inactive.retain(|i| !added.contains(i));
            active.extend(added);
            active.sort_unstable();
        }
    }
}

fn dot(a: &[Rational], x: &[Rational]) -> Rational {
    a.iter().zip(x).filter(|(c, _)| !c.is_zero()).map(|(c, v)| c * v).sum()
}

struct Tableau {
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    n: usize,
    n_cols: usize,
    first_art: usize,
    /// Column of the initial identity basis for each row.
    unit_col: Vec<usize>,
    flipped: Vec<bool>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let n = lp.n_vars();
        let m = lp.rows.len();
        let mut norm = Vec::with_capacity(m);
        let mut flipped = Vec::with_capacity(m);
        for (a, s, b) in &lp.rows {
            if b.is_negative() {
                let s2 = match s {
                    Sense::Le => Sense::Ge,
                    Sense::Ge => Sense::Le,
                    Sense::Eq => Sense::Eq,
                };
                norm.push((a.iter().map(|x| -x).collect::<Vec<_>>(), s2, -b));
                flipped.push(true);
            } else {
                norm.push((a.clone(), *s, b.clone()));
                flipped.push(false);
            }
        }
        let n_slack = norm.iter().filter(|r| r.1 != Sense::Eq).count();
        let n_art = norm.iter().filter(|r| r.1 != Sense::Le).count();
        let first_art = n + n_slack;
        let n_cols = first_art + n_art;
        let mut t = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut unit_col = Vec::with_capacity(m);
        let (mut si, mut ai) = (n, first_art);
        for (a, s, b) in norm {
            let mut row = a;
            row.resize(n_cols + 1, Rational::zero());
            row[n_cols] = b;
            match s {
                Sense::Le => {
                    row[si] = Rational::one();
                    basis.push(si);
                    unit_col.push(si);
                    si += 1;
                }
                Sense::Ge => {
                    row[si] = -Rational::one();
                    si += 1;
                    row[ai] = Rational::one();
                    basis.push(ai);
                    unit_col.push(ai);
                    ai += 1;
                }
                Sense::Eq => {
                    row[ai] = Rational::one();
                    basis.push(ai);
                    unit_col.push(ai);
                    ai += 1;
                }
            }
            t.push(row);
        }
        Tableau {
            t,
            basis,
            n,
            n_cols,
            first_art,
            unit_col,
            flipped,
        }
    }

    fn reduced_costs(&self, c: &[Rational]) -> Vec<Rational> {
        let mut d = c.to_vec();
        for (r, &b) in self.basis.iter().enumerate() {
            if c[b].is_zero() {
                continue;
            }
            for (j, dj) in d.iter_mut().enumerate() {
                if !self.t[r][j].is_zero() {
                    *dj -= &c[b] * &self.t[r][j];
                }
            }
        }
        d
    }

    fn pivot(&mut self, p: usize, q: usize) {
        let inv = self.t[p][q].recip();
        for x in self.t[p].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let nz: Vec<usize> = (0..=self.n_cols).filter(|&j| !self.t[p][j].is_zero()).collect();
        let prow = self.t[p].clone();
        for (r, row) in self.t.iter_mut().enumerate() {
            if r == p || row[q].is_zero() {
                continue;
            }
            let f = row[q].clone();
            for &j in &nz {
                row[j] -= &f * &prow[j];
            }
        }
        self.basis[p] = q;
    }

    /// Runs simplex iterations for objective `c` over columns `< limit`.
    /// Returns false if unbounded.
    fn optimize(&mut self, c: &[Rational], limit: usize) -> bool {
        loop {
            let d = self.reduced_costs(c);
            let Some(q) = (0..limit).find(|&j| d[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(Rational, usize, usize)> = None;
            for (r, row) in self.t.iter().enumerate() {
                if row[q].is_positive() {
                    let ratio = &row[self.n_cols] / &row[q];
                    let better = match &best {
                        None => true,
                        Some((br, bb, _)) => ratio < *br || (ratio == *br && self.basis[r] < *bb),
                    };
                    if better {
                        best = Some((ratio, self.basis[r], r));
                    }
                }
            }
            match best {
                None => return false,
                Some((_, _, p)) => self.pivot(p, q),
            }
        }
    }

    fn run(mut self, lp: &LinearProgram) -> LpOutcome {
        let total = self.n_cols;
        let mut c1 = vec![Rational::zero(); total];
        for x in c1.iter_mut().skip(self.first_art) {
            *x = -Rational::one();
        }
        self.optimize(&c1, total);
        let art_sum: Rational = self
            .basis
            .iter()
            .zip(&self.t)
            .filter(|(b, _)| **b >= self.first_art)
            .map(|(_, row)| row[total].clone())
            .sum();
        if art_sum.is_positive() {
            return LpOutcome::Infeasible;
        }
        for r in 0..self.t.len() {
            if self.basis[r] >= self.first_art {
                if let Some(q) = (0..self.first_art).find(|&j| !self.t[r][j].is_zero()) {
                    self.pivot(r, q);
                }
            }
        }
        let mut c2 = lp.objective.clone();
        c2.resize(total, Rational::zero());
        if !self.optimize(&c2, self.first_art) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rational::zero(); self.n];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.n {
                x[b] = self.t[r][total].clone();
            }
        }
        let duals = (0..self.t.len())
            .map(|i| {
                let col = self.unit_col[i];
                let y: Rational = self
                    .basis
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| !c2[b].is_zero())
                    .map(|(r, &b)| &c2[b] * &self.t[r][col])
                    .sum();
                if self.flipped[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        let value = lp.objective_at(&x);
        LpOutcome::Optimal { x, value, duals }
    }
}
