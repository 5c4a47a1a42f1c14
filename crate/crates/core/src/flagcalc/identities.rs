use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::eval::{lift, Evaluator, Expr};
use super::flag::{flags, types, Flag, FlagType};
use super::FlagError;
use crate::exactmath::{int, rat, Rational};
use crate::graphcore::WeightedGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `lhs == rhs`
    Equal,
    /// `lhs <= rhs`
    AtMost,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Equal => "==",
            Relation::AtMost => "<=",
        })
    }
}

/// Outcome of one identity or inequality, evaluated at every anchor tuple
/// where it applies.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub id: &'static str,
    pub relation: Relation,
    pub applicable: bool,
    pub requires: &'static str,
    pub anchors_checked: usize,
    pub failures: usize,
    /// Largest `|lhs - rhs|` for equalities, largest `lhs - rhs` (or 0) for
    /// inequalities.
    pub max_discrepancy: Rational,
    pub first_failure: Option<(Vec<usize>, Rational, Rational)>,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        write!(
            f,
            "{}\trelation={}\tapplicable={}\tholds={}\tanchors={}\tmax_discrepancy={}",
            self.id,
            self.relation,
            yn(self.applicable),
            yn(self.holds()),
            self.anchors_checked,
            self.max_discrepancy
        )?;
        if !self.applicable {
            write!(f, "\trequires={}", self.requires)?;
        }
        if let Some((anchors, lhs, rhs)) = &self.first_failure {
            write!(f, "\tfirst_failure={anchors:?} lhs={lhs} rhs={rhs}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    /// True iff every applicable check holds.
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| !c.applicable || c.holds())
    }

    pub fn get(&self, id: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.id == id)
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

type Pair = (Rational, Rational);

struct Runner<'a> {
    ev: Evaluator<'a>,
    out: Vec<IdentityCheck>,
}

impl<'a> Runner<'a> {
    fn run<F>(
        &mut self,
        id: &'static str,
        relation: Relation,
        applicable: bool,
        requires: &'static str,
        anchors: &[Vec<usize>],
        f: F,
    ) -> Result<(), FlagError>
    where
        F: Fn(&Evaluator<'a>, &[usize]) -> Result<Pair, FlagError> + Sync,
    {
        let mut check = IdentityCheck {
            id,
            relation,
            applicable,
            requires,
            anchors_checked: 0,
            failures: 0,
            max_discrepancy: Rational::zero(),
            first_failure: None,
        };
        if applicable {
            let ev = &self.ev;
            let results: Vec<(usize, Pair)> = anchors
                .par_iter()
                .enumerate()
                .map(|(i, t)| f(ev, t).map(|p| (i, p)))
                .collect::<Result<_, _>>()?;
            check.anchors_checked = results.len();
            for (i, (lhs, rhs)) in results {
                let d = &lhs - &rhs;
                let (bad, disc) = match relation {
                    Relation::Equal => (!d.is_zero(), d.abs()),
                    Relation::AtMost => (d.is_positive(), if d.is_positive() { d } else { Rational::zero() }),
                };
                if disc > check.max_discrepancy {
                    check.max_discrepancy = disc;
                }
                if bad {
                    check.failures += 1;
                    if check.first_failure.is_none() {
                        check.first_failure = Some((anchors[i].clone(), lhs, rhs));
                    }
                }
            }
        }
        self.out.push(check);
        Ok(())
    }
}

fn fl(f: Flag) -> Expr {
    Expr::flag(f)
}

fn sum(terms: Vec<(Rational, Expr)>) -> Expr {
    Expr::Sum(terms)
}

/// Evaluates the flag identities and inequalities behind the Krein-type
/// bounds on `g` at every anchor tuple where they apply.
///
/// Identities that hold on every triangle-free weighted graph are always
/// checked. Those that need regularity, a minimizing pair `(v1, v2)` or
/// twin-freeness are marked not applicable when the hypothesis fails.
pub fn identity_suite(g: &WeightedGraph) -> Result<IdentityReport, FlagError> {
    if !g.is_triangle_free() {
        return Err(FlagError::NotTriangleFree);
    }
    let (g, _) = g.strip_zero_weights();
    let mut r = Runner {
        ev: Evaluator::new(&g),
        out: Vec::new(),
    };
    let (t1, te, tn, ti, tp, td, tq1, tq2) = (
        types::one(),
        types::e(),
        types::n(),
        types::i(),
        types::p(),
        types::d(),
        types::q1(),
        types::q2(),
    );
    let a1 = r.ev.anchors_of(&t1);
    let ae = r.ev.anchors_of(&te);
    let an = r.ev.anchors_of(&tn);
    let ai = r.ev.anchors_of(&ti);
    let ap = r.ev.anchors_of(&tp);
    let ad = r.ev.anchors_of(&td);
    let rho = g.rho();
    let regular = g.regular_degree();
    let is_regular = regular.is_some();
    let twin_free = g.is_twin_free();
    let a = g.a_value().ok();
    let min_pairs: Vec<Vec<usize>> = match &a {
        Some(_) if is_regular => g
            .minimizing_pairs()
            .unwrap_or_default()
            .into_iter()
            .flat_map(|(u, v)| [vec![u, v], vec![v, u]])
            .collect(),
        _ => Vec::new(),
    };
    let min_p_anchors: Vec<Vec<usize>> = min_pairs
        .iter()
        .flat_map(|p| {
            g.common_neighbours(p[0], p[1])
                .into_iter()
                .map(move |w| vec![p[0], p[1], w])
        })
        .collect();
    let half = rat(1, 2);
    let one = int(1);
    let two = int(2);

    let s4i = fl(flags::s4_i());
    let t4i = fl(flags::t4_i());
    let k32p = fl(flags::k32_p());
    let u5p = fl(flags::u5_p());
    let v5p1 = fl(flags::v5_p1());
    let v5p2 = fl(flags::v5_p2());
    let kuvw_rhs = sum(vec![
        (one.clone(), k32p.clone()),
        (one.clone(), u5p.clone()),
        (one.clone(), v5p1.clone()),
        (one.clone(), v5p2.clone()),
    ]);
    let kuvw_lhs = lift(flags::p3_1b(), &tp, &[2])?;
    let sst_lhs = s4i.clone().times(s4i.clone().plus(t4i.clone())).averaged(ti.clone(), vec![0, 1]);
    let sst_rhs = k32p.clone().plus(u5p.clone()).averaged(tp.clone(), vec![0, 1]).scaled(half.clone());
    let s4_square = s4i.clone().times(s4i.clone()).averaged(ti.clone(), vec![0, 1]);
    let s4_cross = s4i.clone().times(t4i.clone()).averaged(ti.clone(), vec![0, 1]);
    let k32p_avg = k32p.clone().averaged(tp.clone(), vec![0, 1]);
    let u5p_avg = u5p.clone().averaged(tp.clone(), vec![0, 1]);
    let e_on_p = lift(flags::e(), &tp, &[2])?.averaged(tp.clone(), vec![0, 1]);
    let e_on_q1 = lift(flags::e(), &tq1, &[2])?.averaged(tq1.clone(), vec![0, 1]);
    let e_on_q2 = lift(flags::e(), &tq2, &[2])?.averaged(tq2.clone(), vec![0, 1]);
    let p3n_on_q1 = lift(flags::p3n(), &tq1, &[1, 2])?.averaged(tq1.clone(), vec![0, 1]);
    let v5d1_avg = fl(flags::v5_d1()).averaged(td.clone(), vec![0, 1, 2]);
    let d_indicator = Expr::one().averaged(td.clone(), vec![0, 1, 2]);
    let p3n_bar_b_on_p = lift(flags::p3n_bar_b(), &tp, &[0, 1])?;
    let p3n_on_d = lift(flags::p3n(), &td, &[2, 3])?;
    let e_on_e = lift(flags::e(), &te, &[1])?;
    let p3eb_avg = fl(flags::p3_eb()).averaged(te.clone(), vec![0]);
    let t4i_avg = t4i.clone().averaged(ti.clone(), vec![0, 1]);
    let t4n = flags::t4_n();
    let s4n = flags::s4_n();
    let v4n1 = flags::v4_n1();
    let v4n2 = flags::v4_n2();
    let p4n = flags::p4_n();

    let eq = Relation::Equal;
    let le = Relation::AtMost;
    let any = "triangle-free";

    r.run("i3n", eq, true, any, &an, |ev, t| {
        let lhs = ev.density(&flags::i3n(), t)?;
        let g = ev.graph();
        Ok((lhs, int(1) - g.e(t[0]) - g.e(t[1]) + ev.density(&flags::p3n(), t)?))
    })?;
    r.run("upper_bound_split", eq, true, any, &an, |ev, t| {
        let lhs = ev.density(&flags::p3n(), t)? + ev.density(&flags::p3n_bar_c(), t)?;
        Ok((lhs, ev.graph().e(t[1])))
    })?;
    r.run("kuvw", eq, true, any, &ap, |ev, t| {
        Ok((ev.eval(&kuvw_lhs, &tp, t)?, ev.eval(&kuvw_rhs, &tp, t)?))
    })?;
    r.run("rho_expansion", eq, true, any, &an, |ev, t| {
        let mut rhs = Rational::zero();
        for f in [&t4n, &s4n, &v4n1, &v4n2, &p4n] {
            rhs += ev.density(f, t)?;
        }
        Ok((rho.clone(), rhs))
    })?;
    r.run("sst", eq, true, any, &an, |ev, t| {
        Ok((ev.eval(&sst_lhs, &tn, t)?, ev.eval(&sst_rhs, &tn, t)?))
    })?;
    r.run("sst_square", eq, true, any, &an, |ev, t| {
        let lhs = ev.eval(&s4_square, &tn, t)?;
        let k32n = ev.density(&flags::k32_n(), t)? / int(3);
        let half_k32p = ev.eval(&k32p_avg, &tn, t)? / int(2);
        if k32n != half_k32p {
            return Ok((lhs, half_k32p));
        }
        Ok((lhs, k32n))
    })?;
    r.run("sst_cross", eq, true, any, &an, |ev, t| {
        Ok((ev.eval(&s4_cross, &tn, t)?, ev.eval(&u5p_avg, &tn, t)? / int(2)))
    })?;
    r.run("star_lift", eq, true, any, &an, |ev, t| {
        Ok((ev.density(&s4n, t)?, int(2) * ev.eval(&e_on_p, &tn, t)?))
    })?;
    r.run("rhoqv_1", eq, true, any, &an, |ev, t| {
        let rhs = (ev.density(&v4n1, t)? + ev.density(&p4n, t)?) / int(2);
        Ok((ev.eval(&e_on_q1, &tn, t)?, rhs))
    })?;
    r.run("rhoqv_2", eq, true, any, &an, |ev, t| {
        let rhs = (ev.density(&v4n2, t)? + ev.density(&p4n, t)?) / int(2);
        Ok((ev.eval(&e_on_q2, &tn, t)?, rhs))
    })?;
    r.run("p4_lift", eq, true, any, &an, |ev, t| {
        Ok((ev.eval(&p3n_on_q1, &tn, t)?, ev.density(&p4n, t)? / int(2)))
    })?;
    r.run("t4_average", eq, true, any, &an, |ev, t| {
        Ok((ev.density(&t4n, t)?, ev.eval(&t4i_avg, &tn, t)?))
    })?;
    r.run("v5_split", eq, true, any, &ap, |ev, t| {
        Ok((ev.eval(&v5p1, &tp, t)?, int(2) * ev.eval(&v5d1_avg, &tp, t)?))
    })?;
    r.run("d_indicator", eq, true, any, &ap, |ev, t| {
        Ok((ev.eval(&d_indicator, &tp, t)?, ev.eval(&p3n_bar_b_on_p, &tp, t)?))
    })?;
    r.run("v5_lift", eq, true, any, &ad, |ev, t| {
        Ok((ev.density(&flags::v5_d1(), t)?, ev.eval(&p3n_on_d, &td, t)?))
    })?;
    r.run("edge_lift", eq, true, any, &ae, |ev, t| {
        Ok((ev.density(&flags::p3_eb(), t)?, ev.eval(&e_on_e, &te, t)?))
    })?;
    r.run("edge_average", eq, true, any, &a1, |ev, t| {
        Ok((ev.density(&flags::p3_1b(), t)? / int(2), ev.eval(&p3eb_avg, &t1, t)?))
    })?;
    let path_lhs = int(3) * r.ev.average(&fl(flags::p3_1()), &t1, &[], &[])?;
    let path_mid = r.ev.density(&flags::p3(), &[])?;
    let path_rhs = int(3) * r.ev.average(&fl(flags::p3n()), &tn, &[], &[])?;
    r.run("path_count", eq, true, any, &[vec![]], |_, _| {
        if path_lhs != path_mid {
            return Ok((path_lhs.clone(), path_mid.clone()));
        }
        Ok((path_mid.clone(), path_rhs.clone()))
    })?;

    let reg = "regular";
    let rr = regular.clone().unwrap_or_default();
    r.run("i3n_regular", eq, is_regular, reg, &an, |ev, t| {
        let rhs = int(1) - &two * &rr + ev.density(&flags::p3n(), t)?;
        Ok((ev.density(&flags::i3n(), t)?, rhs))
    })?;
    r.run("kuvw_regular", eq, is_regular, reg, &ap, |ev, t| {
        Ok((ev.eval(&kuvw_rhs, &tp, t)?, &two * &rr * &rr))
    })?;
    r.run("edge_lift_regular", eq, is_regular, reg, &ae, |ev, t| {
        Ok((ev.density(&flags::p3_eb(), t)?, rr.clone()))
    })?;
    r.run("star_regular", eq, is_regular, reg, &an, |ev, t| {
        Ok((ev.density(&s4n, t)?, &two * &rr * ev.density(&flags::p3n(), t)?))
    })?;
    r.run("rhoqv_regular", eq, is_regular, reg, &an, |ev, t| {
        let rhs = &rr * (&rr - ev.density(&flags::p3n(), t)?);
        Ok((ev.eval(&e_on_q1, &tn, t)?, rhs))
    })?;
    r.run("path_count_regular", eq, is_regular, reg, &[vec![]], |_, _| {
        Ok((path_mid.clone(), int(3) * &rr * &rr))
    })?;

    let has_a = is_regular && a.is_some();
    let aa = a.clone().unwrap_or_default();
    let reg_a = "regular, non-complete";
    r.run("trivial_bound", le, has_a, reg_a, &[vec![]], |_, _| {
        Ok((aa.clone(), &rr * &rr / (int(1) - &rr)))
    })?;
    r.run("t4i", le, has_a, reg_a, &ai, |ev, t| {
        let rhs = ev.density(&flags::s4_i(), t)? + &rr - &two * &aa;
        Ok((ev.density(&flags::t4_i(), t)?, rhs))
    })?;
    let reg_min = "regular, minimizing pair";
    r.run("v1v2_specific", eq, has_a, reg_min, &min_p_anchors, |ev, t| {
        Ok((ev.eval(&d_indicator, &tp, t)?, &rr - &aa))
    })?;
    r.run("v5_lower", le, has_a, reg_min, &min_p_anchors, |ev, t| {
        let lower = &two * &aa * (&rr - &aa);
        Ok((lower.clone(), ev.eval(&v5p1, &tp, t)?.min(ev.eval(&v5p2, &tp, t)?)))
    })?;
    r.run("kplusu", le, has_a, reg_min, &min_p_anchors, |ev, t| {
        let lhs = ev.eval(&k32p, &tp, t)? + ev.eval(&u5p, &tp, t)?;
        let d = &rr - &aa;
        Ok((lhs, &two * (&d * &d + &aa * &aa)))
    })?;
    r.run("star_minimizing", eq, has_a, reg_min, &min_pairs, |ev, t| {
        Ok((ev.density(&s4n, t)?, &two * &aa * &rr))
    })?;
    r.run("s4t4", le, has_a, reg_min, &min_pairs, |ev, t| {
        let rhs = &aa * (&rr * &rr - &two * &aa * (&rr - &aa));
        Ok((ev.eval(&sst_lhs, &tn, t)?, rhs))
    })?;
    r.run("t4n", le, has_a, reg_min, &min_pairs, |ev, t| {
        let d = &rr - &aa;
        let lower = &rr - &two * (&rr * &rr + &d * &d);
        Ok((lower, ev.density(&t4n, t)?))
    })?;
    r.run("p4_lower", le, has_a, reg_min, &min_pairs, |ev, t| {
        Ok((&aa * (&rr - &aa), ev.eval(&p3n_on_q1, &tn, t)?))
    })?;
    let distinct_pairs: Vec<Vec<usize>> = an.iter().filter(|t| t[0] != t[1]).cloned().collect();
    r.run(
        "upper_bound",
        le,
        has_a && twin_free,
        "regular, twin-free, non-complete",
        &distinct_pairs,
        |ev, t| Ok((ev.density(&flags::p3n(), t)?, &rr - &aa)),
    )?;
    Ok(IdentityReport { checks: r.out })
}

/// Sum of the densities of all flags of type `ty` on `l` vertices at
/// `anchors`; equals 1 whenever the anchors span `ty`.
pub fn total_probability(
    g: &WeightedGraph,
    ty: &FlagType,
    l: usize,
    anchors: &[usize],
) -> Result<Rational, FlagError> {
    let ev = Evaluator::new(g);
    let mut s = Rational::zero();
    for f in Flag::all_extensions(ty, l) {
        s += ev.density(&f, anchors)?;
    }
    Ok(s)
}
