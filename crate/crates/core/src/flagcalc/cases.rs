use std::fmt;

use num_traits::{Signed, Zero};

use super::eval::Evaluator;
use super::flag::flags;
use super::FlagError;
use crate::exactmath::{int, rat, Rational};
use crate::graphcore::WeightedGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
    Gt,
}

impl Cmp {
    fn test(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Cmp::Le => lhs <= rhs,
            Cmp::Ge => lhs >= rhs,
            Cmp::Eq => lhs == rhs,
            Cmp::Gt => lhs > rhs,
        }
    }
}

impl fmt::Display for Cmp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cmp::Le => "<=",
            Cmp::Ge => ">=",
            Cmp::Eq => "==",
            Cmp::Gt => ">",
        })
    }
}

/// One inequality of the case analysis. `holds` is computed whether or not
/// the hypotheses are met; only `applicable ⇒ holds` is guaranteed.
#[derive(Clone, Debug)]
pub struct CaseCheck {
    pub id: String,
    pub relation: Cmp,
    pub applicable: bool,
    pub holds: bool,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl CaseCheck {
    /// Whether the relation is tight (`lhs == rhs`).
    pub fn tight(&self) -> bool {
        self.lhs == self.rhs
    }
}

impl fmt::Display for CaseCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        write!(
            f,
            "{}\tapplicable={}\tholds={}\tlhs={}\trhs={}\trelation={}",
            self.id,
            yn(self.applicable),
            yn(self.holds),
            self.lhs,
            self.rhs,
            self.relation
        )
    }
}

/// Local structure around a non-adjacent pair `(v1, v2)` of a regular
/// triangle-free weighted graph.
///
/// `w` holds the chosen common neighbours (at most four), and every set-indexed
/// quantity uses bit `i` of the mask for `w[i]`. `f_sets[S]` is the measure of
/// vertices whose neighbourhood meets `w` exactly in `S`; for `S = ∅` only
/// vertices of `I` are counted.
#[derive(Clone, Debug)]
pub struct CaseAnalysisReport {
    pub v1: usize,
    pub v2: usize,
    pub rho: Rational,
    pub a: Rational,
    pub minimizing: bool,
    pub twin_free: bool,
    /// `a > rho / 3`
    pub above_third: bool,
    pub p: Vec<usize>,
    pub i: Vec<usize>,
    pub mu_p: Rational,
    pub mu_i: Rational,
    pub c: usize,
    pub w: Vec<usize>,
    pub a_i: Vec<Rational>,
    pub f_sets: Vec<Rational>,
    pub f_nu: Vec<Rational>,
    pub f_hat: Vec<Rational>,
    /// Deficits `a_i + F_jk - 4a + rho`, only when `c = 3`.
    pub eps: Vec<Rational>,
    pub checks: Vec<CaseCheck>,
}

impl CaseAnalysisReport {
    pub fn check(&self, id: &str) -> Option<&CaseCheck> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// True iff every applicable check holds.
    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|c| !c.applicable || c.holds)
    }

    /// `F_S` for a set of 1-based indices into `w`.
    pub fn f(&self, s: &[usize]) -> &Rational {
        &self.f_sets[mask_of(s)]
    }
}

impl fmt::Display for CaseAnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pair\t{} {}", self.v1, self.v2)?;
        writeln!(f, "rho\t{}", self.rho)?;
        writeln!(f, "a\t{}", self.a)?;
        writeln!(f, "minimizing\t{}", self.minimizing)?;
        writeln!(f, "twin_free\t{}", self.twin_free)?;
        writeln!(f, "a_above_rho_third\t{}", self.above_third)?;
        writeln!(f, "P\t{:?}\tmeasure={}", self.p, self.mu_p)?;
        writeln!(f, "I\t{:?}\tmeasure={}", self.i, self.mu_i)?;
        writeln!(f, "c\t{}", self.c)?;
        writeln!(f, "w\t{:?}", self.w)?;
        for (k, x) in self.a_i.iter().enumerate() {
            writeln!(f, "a_{}\t{}", k + 1, x)?;
        }
        for (mask, x) in self.f_sets.iter().enumerate() {
            writeln!(f, "F_{{{}}}\t{}", set_label(mask), x)?;
        }
        for (nu, x) in self.f_nu.iter().enumerate() {
            writeln!(f, "f_{nu}\t{x}")?;
        }
        for (mask, x) in self.f_hat.iter().enumerate().skip(1) {
            writeln!(f, "Fhat_{{{}}}\t{}", set_label(mask), x)?;
        }
        for (k, x) in self.eps.iter().enumerate() {
            writeln!(f, "eps_{}\t{}", k + 1, x)?;
        }
        for c in &self.checks {
            writeln!(f, "check\t{c}")?;
        }
        Ok(())
    }
}

fn mask_of(s: &[usize]) -> usize {
    s.iter().fold(0, |m, &i| m | 1 << (i - 1))
}

fn set_label(mask: usize) -> String {
    let v: Vec<String> = (0..usize::BITS as usize)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    v.join(",")
}

struct Checks(Vec<CaseCheck>);

impl Checks {
    fn push(&mut self, id: String, applicable: bool, lhs: Rational, relation: Cmp, rhs: Rational) {
        let holds = relation.test(&lhs, &rhs);
        self.0.push(CaseCheck {
            id,
            relation,
            applicable,
            holds,
            lhs,
            rhs,
        });
    }
}

/// Case analysis at `(v1, v2)` with `w` the first `min(c, 4)` common
/// neighbours in index order.
pub fn case_analysis(g: &WeightedGraph, v1: usize, v2: usize) -> Result<CaseAnalysisReport, FlagError> {
    let p: Vec<usize> = validate(g, v1, v2)?;
    let w: Vec<usize> = p.iter().copied().take(4).collect();
    build(g, v1, v2, &w)
}

/// Case analysis at `(v1, v2)` with an explicit choice of `min(c, 4)`
/// distinct common neighbours.
pub fn case_analysis_with(
    g: &WeightedGraph,
    v1: usize,
    v2: usize,
    w: &[usize],
) -> Result<CaseAnalysisReport, FlagError> {
    let p = validate(g, v1, v2)?;
    if w.len() != p.len().min(4) {
        return Err(FlagError::InvalidChoice(format!(
            "expected {} vertices, got {}",
            p.len().min(4),
            w.len()
        )));
    }
    for (k, x) in w.iter().enumerate() {
        if !p.contains(x) || w[..k].contains(x) {
            return Err(FlagError::InvalidChoice(format!("{x} is repeated or not a common neighbour")));
        }
    }
    build(g, v1, v2, w)
}

fn validate(g: &WeightedGraph, v1: usize, v2: usize) -> Result<Vec<usize>, FlagError> {
    for v in [v1, v2] {
        if v >= g.n() {
            return Err(FlagError::VertexOutOfRange(g.n()));
        }
        if g.weight(v).is_zero() {
            return Err(FlagError::ZeroWeightVertex(v));
        }
    }
    if v1 == v2 || g.adjacent(v1, v2) {
        return Err(FlagError::AdjacentPair(v1, v2));
    }
    if !g.is_triangle_free() {
        return Err(FlagError::NotTriangleFree);
    }
    if g.regular_degree().is_none() {
        return Err(FlagError::NotRegular);
    }
    Ok(g
        .common_neighbours(v1, v2)
        .into_iter()
        .filter(|&x| !g.weight(x).is_zero())
        .collect())
}

fn build(g: &WeightedGraph, v1: usize, v2: usize, w: &[usize]) -> Result<CaseAnalysisReport, FlagError> {
    let (sg, keep) = g.strip_zero_weights();
    let to_new = |v: usize| keep.iter().position(|&k| k == v).expect("positive weight vertex");
    let (n1, n2) = (to_new(v1), to_new(v2));
    let nw: Vec<usize> = w.iter().map(|&x| to_new(x)).collect();
    let rho = sg.regular_degree().ok_or(FlagError::NotRegular)?;
    let a = sg.a_value().map_err(|_| FlagError::AdjacentPair(v1, v2))?;
    let n = sg.n();
    let p_new = sg.common_neighbours(n1, n2);
    let i_new: Vec<usize> = (0..n)
        .filter(|&x| !sg.adjacent(x, n1) && !sg.adjacent(x, n2))
        .collect();
    let mu = |s: &[usize]| sg.measure(s.iter().copied());
    let mu_p = mu(&p_new);
    let mu_i = mu(&i_new);
    let c = p_new.len();
    let m = nw.len();
    let minimizing = mu_p == a;
    let twin_free = sg.is_twin_free();
    let above_third = int(3) * &a > rho;
    let low = rho <= rat(1, 3);
    let core = minimizing && above_third && low && twin_free;

    let in_i: Vec<bool> = (0..n).map(|x| i_new.contains(&x)).collect();
    let nbr_mask = |x: usize| -> usize {
        nw.iter()
            .enumerate()
            .filter(|(_, &y)| sg.adjacent(x, y))
            .fold(0, |acc, (k, _)| acc | 1 << k)
    };
    let masks: Vec<usize> = (0..n).map(nbr_mask).collect();
    let mut f_sets = vec![Rational::zero(); 1 << m];
    for x in 0..n {
        if masks[x] != 0 || in_i[x] {
            f_sets[masks[x]] += sg.weight(x);
        }
    }
    let mut f_nu = vec![Rational::zero(); m + 1];
    for (mask, val) in f_sets.iter().enumerate() {
        f_nu[mask.count_ones() as usize] += val;
    }
    let mut f_hat = vec![Rational::zero(); 1 << m];
    for (s, slot) in f_hat.iter_mut().enumerate().skip(1) {
        for (t, val) in f_sets.iter().enumerate() {
            if t & s != 0 {
                *slot += val;
            }
        }
    }
    let a_i: Vec<Rational> = nw.iter().map(|&x| sg.weight(x).clone()).collect();
    let fs = |s: &[usize]| f_sets[s.iter().fold(0, |acc, &k| acc | 1 << k)].clone();

    let mut ch = Checks(Vec::new());
    let ev = Evaluator::new(&sg);
    let one = int(1);
    let two = int(2);
    let three = int(3);

    ch.push(
        "i3n".into(),
        true,
        mu_i.clone(),
        Cmp::Eq,
        &one - sg.e(n1) - sg.e(n2) + &mu_p,
    );
    ch.push("volume_total".into(), true, f_nu.iter().sum(), Cmp::Eq, mu_i.clone());
    ch.push("upper_bound".into(), twin_free, mu_p.clone(), Cmp::Le, &rho - &a);
    let v3_slack = p_new
        .iter()
        .map(|&x| mu(&i_new.iter().copied().filter(|&y| !sg.adjacent(x, y)).collect::<Vec<_>>()))
        .min()
        .unwrap_or_else(|| one.clone());
    ch.push(
        "v3_exists".into(),
        low && a.is_positive() && c > 0,
        v3_slack,
        Cmp::Gt,
        Rational::zero(),
    );
    let w_slack = i_new
        .iter()
        .map(|&y| mu(&p_new.iter().copied().filter(|&x| sg.adjacent(x, y)).collect::<Vec<_>>()))
        .min()
        .unwrap_or_else(|| one.clone());
    ch.push("w_exists".into(), core, w_slack, Cmp::Gt, Rational::zero());
    ch.push("c_at_least_two".into(), core, int(c as i64), Cmp::Ge, two.clone());

    if c == 2 {
        ch.push("twofifth".into(), core, a.clone(), Cmp::Le, rat(2, 5) * &rho);
        let covered: Vec<usize> = (0..n)
            .filter(|&x| !sg.adjacent(x, nw[0]) && !sg.adjacent(x, nw[1]))
            .collect();
        ch.push("cover".into(), core, &mu_i + mu(&covered), Cmp::Eq, one.clone());
        ch.push("two_rho_half".into(), core, a.clone(), Cmp::Le, &two * &rho - rat(1, 2));
    }

    let mut eps = Vec::new();
    if c == 3 {
        let f3 = fs(&[0, 1, 2]);
        let perms = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)];
        for &(i, j, k) in &perms {
            let tag = format!("(i={},j={})", i + 1, j + 1);
            ch.push(format!("ivsij{tag}"), twin_free, fs(&[i]) + fs(&[i, j]), Cmp::Ge, a.clone());
            ch.push(
                format!("ijvsk{tag}"),
                fs(&[i, j]).is_positive(),
                fs(&[k]),
                Cmp::Ge,
                a.clone(),
            );
        }
        for &(i, j) in &[(0, 1), (0, 2), (1, 2)] {
            let tag = format!("({},{})", i + 1, j + 1);
            ch.push(format!("opposite{tag}"), true, fs(&[i, j]) + &f3, Cmp::Ge, a.clone());
            ch.push(format!("fij_positive{tag}"), core, fs(&[i, j]), Cmp::Gt, Rational::zero());
            let mut edge_mass = Rational::zero();
            for x in (0..n).filter(|&x| masks[x] == 1 << i) {
                for &y in sg.neighbours(x) {
                    if masks[y] == 1 << j {
                        edge_mass += sg.weight(x) * sg.weight(y);
                    }
                }
            }
            ch.push(format!("fi_fj_edge{tag}"), core, edge_mass, Cmp::Gt, Rational::zero());
        }
        ch.push("density".into(), true, &f_nu[1] + &two * &f_nu[2] + &three * &f_nu[3], Cmp::Eq, &three * &rho);
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let tag = format!("({})", i + 1);
            ch.push(format!("fi_positive{tag}"), core, fs(&[i]), Cmp::Gt, Rational::zero());
            ch.push(format!("fi_ge_a{tag}"), core, fs(&[i]), Cmp::Ge, a.clone());
            ch.push(
                format!("almost_last{tag}"),
                core,
                fs(&[i]) + fs(&[i, j]) + fs(&[i, k]),
                Cmp::Ge,
                &two * &a,
            );
            ch.push(
                format!("sophisticated{tag}"),
                core,
                &a_i[i] + fs(&[j, k]),
                Cmp::Ge,
                int(4) * &a - &rho,
            );
            eps.push(&a_i[i] + fs(&[j, k]) - int(4) * &a + &rho);
        }
        ch.push("volume".into(), core, &f_nu[1] + &f_nu[2] + &f_nu[3], Cmp::Eq, &one - &two * &rho + &a);
        ch.push(
            "resolving".into(),
            core,
            &two * &f_nu[1] + &f_nu[2],
            Cmp::Eq,
            &three - int(9) * &rho + &three * &a,
        );
        ch.push("f1_ge_3a".into(), core, f_nu[1].clone(), Cmp::Ge, &three * &a);
        ch.push("f2_lower".into(), core, f_nu[2].clone(), Cmp::Ge, int(11) * &a - &three * &rho);
        ch.push(
            "three_fourteenths".into(),
            core,
            a.clone(),
            Cmp::Le,
            rat(3, 14) * (&one - &two * &rho),
        );
        let t4n = ev.density(&flags::t4_n(), &[n1, n2])?;
        let mut sym = Rational::zero();
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            sym += fs(&[i]) * (&rho - &two * &a + fs(&[j, k]) + &a_i[i]);
        }
        ch.push("symmetric".into(), core, t4n, Cmp::Le, sym);
        ch.push("improved_quadratic".into(), core, improved_quadratic(&rho, &a), Cmp::Ge, Rational::zero());
    }

    if c >= 4 {
        let all = (1usize << m) - 1;
        for s in 1..=all {
            let tag = format!("({})", set_label(s));
            let hat = f_hat[s].clone();
            match s.count_ones() {
                1 => ch.push(format!("hat_i{tag}"), true, hat, Cmp::Eq, rho.clone()),
                2 => ch.push(format!("hat_ij{tag}"), twin_free, hat, Cmp::Ge, &rho + &a),
                3 => ch.push(format!("hat_ijk{tag}"), twin_free, hat, Cmp::Ge, &rho + &two * &a),
                _ => {}
            }
        }
        ch.push(
            "hat_1234_upper".into(),
            true,
            f_hat[all].clone(),
            Cmp::Le,
            &one - &two * &rho + &mu_p,
        );
        ch.push(
            "hat_1234".into(),
            twin_free && above_third,
            f_hat[all].clone(),
            Cmp::Ge,
            &rho + &three * &a,
        );
        ch.push(
            "one_minus_3rho_half".into(),
            core,
            a.clone(),
            Cmp::Le,
            (&one - &three * &rho) / &two,
        );
    }

    Ok(CaseAnalysisReport {
        v1,
        v2,
        rho,
        a,
        minimizing,
        twin_free,
        above_third,
        p: p_new.iter().map(|&x| keep[x]).collect(),
        i: i_new.iter().map(|&x| keep[x]).collect(),
        mu_p,
        mu_i,
        c,
        w: w.to_vec(),
        a_i,
        f_sets,
        f_nu,
        f_hat,
        eps,
        checks: ch.0,
    })
}

/// Gap between the upper bound on `T4^N(v1, v2)` obtained from the `c = 3`
/// structure and its lower bound `rho - 2(rho^2 + (rho - a)^2)`.
pub(crate) fn improved_quadratic(rho: &Rational, a: &Rational) -> Rational {
    let upper = rat(33, 2) * a * a + int(15) * a * rho - rat(15, 2) * a + rat(9, 2) * rho * rho
        - rat(9, 2) * rho
        + rat(9, 8);
    let d = rho - a;
    let lower = rho - int(2) * (rho * rho + &d * &d);
    upper - lower
}
