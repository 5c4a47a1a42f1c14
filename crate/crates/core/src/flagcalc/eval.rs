use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::flag::{pair_index, pairs_below, Flag, FlagType};
use super::FlagError;
use crate::exactmath::{lcm_of_denominators, Rational};
use crate::graphcore::WeightedGraph;

/// A real-valued function of a `sigma`-typed tuple of vertices, built from
/// flag densities.
#[derive(Clone, Debug)]
pub enum Expr {
    Const(Rational),
    Flag(Arc<Flag>),
    /// `pi^{sigma,eta}(F)`: evaluates `F` at the sub-tuple selected by `eta`.
    Lift { flag: Arc<Flag>, eta: Vec<usize> },
    Sum(Vec<(Rational, Expr)>),
    Product(Box<Expr>, Box<Expr>),
    /// `[[inner]]_{sigma,eta}` evaluated at a tuple of length `eta.len()`.
    Average {
        inner: Box<Expr>,
        sigma: FlagType,
        eta: Vec<usize>,
    },
}

impl Expr {
    pub fn flag(f: Flag) -> Expr {
        Expr::Flag(Arc::new(f))
    }

    pub fn constant(r: Rational) -> Expr {
        Expr::Const(r)
    }

    pub fn one() -> Expr {
        Expr::Const(Rational::from_integer(1.into()))
    }

    pub fn times(self, other: Expr) -> Expr {
        Expr::Product(Box::new(self), Box::new(other))
    }

    pub fn plus(self, other: Expr) -> Expr {
        let one = Rational::from_integer(1.into());
        Expr::Sum(vec![(one.clone(), self), (one, other)])
    }

    pub fn scaled(self, c: Rational) -> Expr {
        Expr::Sum(vec![(c, self)])
    }

    pub fn averaged(self, sigma: FlagType, eta: Vec<usize>) -> Expr {
        Expr::Average {
            inner: Box::new(self),
            sigma,
            eta,
        }
    }
}

/// `pi^{sigma,eta}(F)` as an expression over `sigma`-tuples.
pub fn lift(flag: Flag, sigma: &FlagType, eta: &[usize]) -> Result<Expr, FlagError> {
    let mut seen = vec![false; sigma.k()];
    for &e in eta {
        if e >= sigma.k() || std::mem::replace(&mut seen[e], true) {
            return Err(FlagError::InvalidInjection(eta.to_vec()));
        }
    }
    if !flag.flag_type().same_shape(&sigma.restrict(eta)) {
        return Err(FlagError::TypeMismatch {
            flag: flag.name().to_string(),
            expected: sigma.restrict(eta).name().to_string(),
        });
    }
    Ok(Expr::Lift {
        flag: Arc::new(flag),
        eta: eta.to_vec(),
    })
}

/// Exact evaluator of flag densities on a fixed weighted graph. Weights are
/// rescaled to integers over their common denominator so that sums of
/// products are computed in machine integers where they fit.
pub struct Evaluator<'g> {
    g: &'g WeightedGraph,
    denom: BigInt,
    nums: Vec<BigInt>,
    int_weights: Option<(Vec<u64>, u64)>,
    support: Vec<usize>,
}

impl<'g> Evaluator<'g> {
    pub fn new(g: &'g WeightedGraph) -> Self {
        let denom = lcm_of_denominators(g.weights());
        let nums: Vec<BigInt> = g
            .weights()
            .iter()
            .map(|w| (w * Rational::from_integer(denom.clone())).to_integer())
            .collect();
        let small: Option<Vec<u64>> = nums.iter().map(|x| x.to_u64()).collect();
        let int_weights = match (small, denom.to_u64()) {
            (Some(v), Some(d)) if d < (1 << 40) => Some((v, d)),
            _ => None,
        };
        let support = (0..g.n()).filter(|&v| !g.weight(v).is_zero()).collect();
        Evaluator {
            g,
            denom,
            nums,
            int_weights,
            support,
        }
    }

    pub fn graph(&self) -> &WeightedGraph {
        self.g
    }

    /// Whether `anchors` span `ty` (repeated vertices count as non-adjacent).
    pub fn induces(&self, ty: &FlagType, anchors: &[usize]) -> bool {
        anchors.len() == ty.k()
            && (0..anchors.len()).all(|j| {
                (0..j).all(|i| self.g.adjacent(anchors[i], anchors[j]) == ty.has_edge(i, j))
            })
    }

    /// Probability that independent `mu`-samples completing `anchors`
    /// induce `flag`, or 0 if the anchors do not span its type.
    pub fn density(&self, flag: &Flag, anchors: &[usize]) -> Result<Rational, FlagError> {
        if anchors.len() != flag.k() {
            return Err(FlagError::AnchorArityMismatch {
                expected: flag.k(),
                got: anchors.len(),
            });
        }
        if anchors.iter().any(|&v| v >= self.g.n()) {
            return Err(FlagError::VertexOutOfRange(self.g.n()));
        }
        if !self.induces(flag.flag_type(), anchors) {
            return Ok(Rational::zero());
        }
        Ok(self.density_unchecked(flag, anchors))
    }

    fn density_unchecked(&self, flag: &Flag, anchors: &[usize]) -> Rational {
        let slots = flag.l() - flag.k();
        let mut tuple = anchors.to_vec();
        tuple.resize(flag.l(), 0);
        let alive: u128 = if flag.patterns().len() >= 128 {
            u128::MAX
        } else {
            (1u128 << flag.patterns().len()) - 1
        };
        if let Some((w, d)) = &self.int_weights {
            let fits = (0..slots).try_fold(1u128, |acc, _| acc.checked_mul(*d as u128));
            if let Some(total) = fits {
                if total < (1u128 << 126) {
                    let count = self.dfs_int(flag, &mut tuple, flag.k(), alive, 1, w);
                    return Rational::new(BigInt::from(count), BigInt::from(total));
                }
            }
        }
        let one = Rational::from_integer(1.into());
        self.dfs_big(flag, &mut tuple, flag.k(), alive, one)
    }

    fn step_alive(&self, flag: &Flag, tuple: &[usize], pos: usize, x: usize, alive: u128) -> u128 {
        let mut bits = 0u32;
        for (p, &y) in tuple.iter().enumerate().take(pos) {
            if self.g.adjacent(x, y) {
                bits |= 1 << pair_index(p, pos);
            }
        }
        let window = pairs_below(pos + 1) & !pairs_below(pos);
        let mut next = 0u128;
        for (t, pat) in flag.patterns().iter().enumerate() {
            if alive >> t & 1 == 1 && pat & window == bits {
                next |= 1 << t;
            }
        }
        next
    }

    fn dfs_int(
        &self,
        flag: &Flag,
        tuple: &mut Vec<usize>,
        pos: usize,
        alive: u128,
        acc: u128,
        w: &[u64],
    ) -> u128 {
        if pos == flag.l() {
            return acc;
        }
        let mut total = 0u128;
        for &x in &self.support {
            let next = self.step_alive(flag, tuple, pos, x, alive);
            if next != 0 {
                tuple[pos] = x;
                total += self.dfs_int(flag, tuple, pos + 1, next, acc * w[x] as u128, w);
            }
        }
        total
    }

    fn dfs_big(
        &self,
        flag: &Flag,
        tuple: &mut Vec<usize>,
        pos: usize,
        alive: u128,
        acc: Rational,
    ) -> Rational {
        if pos == flag.l() {
            return acc;
        }
        let mut total = Rational::zero();
        for &x in &self.support {
            let next = self.step_alive(flag, tuple, pos, x, alive);
            if next != 0 {
                tuple[pos] = x;
                total += self.dfs_big(flag, tuple, pos + 1, next, &acc * self.g.weight(x));
            }
        }
        total
    }

    /// Value of `expr` at a tuple spanning `sigma` (0 otherwise).
    pub fn eval(&self, expr: &Expr, sigma: &FlagType, tuple: &[usize]) -> Result<Rational, FlagError> {
        if tuple.len() != sigma.k() {
            return Err(FlagError::AnchorArityMismatch {
                expected: sigma.k(),
                got: tuple.len(),
            });
        }
        if !self.induces(sigma, tuple) {
            return Ok(Rational::zero());
        }
        self.eval_at(expr, sigma, tuple)
    }

    fn eval_at(&self, expr: &Expr, sigma: &FlagType, tuple: &[usize]) -> Result<Rational, FlagError> {
        Ok(match expr {
            Expr::Const(c) => c.clone(),
            Expr::Flag(f) => {
                if !f.flag_type().same_shape(sigma) {
                    return Err(FlagError::TypeMismatch {
                        flag: f.name().to_string(),
                        expected: sigma.name().to_string(),
                    });
                }
                self.density_unchecked(f, tuple)
            }
            Expr::Lift { flag, eta } => {
                let sub: Vec<usize> = eta.iter().map(|&i| tuple[i]).collect();
                self.density(flag, &sub)?
            }
            Expr::Sum(terms) => {
                let mut s = Rational::zero();
                for (c, e) in terms {
                    if !c.is_zero() {
                        s += c * self.eval_at(e, sigma, tuple)?;
                    }
                }
                s
            }
            Expr::Product(a, b) => {
                let x = self.eval_at(a, sigma, tuple)?;
                if x.is_zero() {
                    x
                } else {
                    x * self.eval_at(b, sigma, tuple)?
                }
            }
            Expr::Average {
                inner,
                sigma: outer,
                eta,
            } => {
                if eta.len() != tuple.len() {
                    return Err(FlagError::AnchorArityMismatch {
                        expected: eta.len(),
                        got: tuple.len(),
                    });
                }
                self.average(inner, outer, eta, tuple)?
            }
        })
    }

    /// `[[f]]_{sigma,eta}(anchors)`: the expectation of `f` over tuples that
    /// agree with `anchors` on `eta` and are otherwise `mu`-random, with
    /// tuples not spanning `sigma` contributing 0.
    pub fn average(
        &self,
        f: &Expr,
        sigma: &FlagType,
        eta: &[usize],
        anchors: &[usize],
    ) -> Result<Rational, FlagError> {
        if anchors.len() != eta.len() {
            return Err(FlagError::AnchorArityMismatch {
                expected: eta.len(),
                got: anchors.len(),
            });
        }
        let mut seen = vec![false; sigma.k()];
        for &e in eta {
            if e >= sigma.k() || std::mem::replace(&mut seen[e], true) {
                return Err(FlagError::InvalidInjection(eta.to_vec()));
            }
        }
        let free: Vec<usize> = (0..sigma.k()).filter(|&i| !seen[i]).collect();
        let mut tuple = vec![0usize; sigma.k()];
        for (&pos, &v) in eta.iter().zip(anchors) {
            tuple[pos] = v;
        }
        if !self.partial_induces(sigma, &tuple, &seen) {
            return Ok(Rational::zero());
        }
        let mut total = Rational::zero();
        self.fill(f, sigma, &free, 0, &mut tuple, &mut seen, BigInt::from(1), &mut total)?;
        let scale = num_traits::pow(self.denom.clone(), free.len());
        Ok(total / Rational::from_integer(scale))
    }

    fn partial_induces(&self, sigma: &FlagType, tuple: &[usize], set: &[bool]) -> bool {
        (0..tuple.len()).all(|j| {
            !set[j]
                || (0..j).all(|i| !set[i] || self.g.adjacent(tuple[i], tuple[j]) == sigma.has_edge(i, j))
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn fill(
        &self,
        f: &Expr,
        sigma: &FlagType,
        free: &[usize],
        idx: usize,
        tuple: &mut Vec<usize>,
        set: &mut Vec<bool>,
        weight: BigInt,
        total: &mut Rational,
    ) -> Result<(), FlagError> {
        if idx == free.len() {
            let v = self.eval_at(f, sigma, tuple)?;
            if !v.is_zero() {
                *total += v * Rational::from_integer(weight);
            }
            return Ok(());
        }
        let pos = free[idx];
        set[pos] = true;
        for &x in &self.support {
            tuple[pos] = x;
            let ok = (0..sigma.k())
                .all(|i| i == pos || !set[i] || self.g.adjacent(tuple[i], x) == sigma.has_edge(i, pos));
            if ok {
                let wx = &weight * &self.nums[x];
                self.fill(f, sigma, free, idx + 1, tuple, set, wx, total)?;
            }
        }
        set[pos] = false;
        Ok(())
    }

    /// `[[f g]]_{sigma,eta}(anchors)` with the product taken pointwise.
    pub fn average_of_product(
        &self,
        f: &Expr,
        g: &Expr,
        sigma: &FlagType,
        eta: &[usize],
        anchors: &[usize],
    ) -> Result<Rational, FlagError> {
        let prod = Expr::Product(Box::new(f.clone()), Box::new(g.clone()));
        self.average(&prod, sigma, eta, anchors)
    }

    /// All tuples of vertices in the support (repetitions allowed) that
    /// span `ty`.
    pub fn anchors_of(&self, ty: &FlagType) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut tuple = vec![0usize; ty.k()];
        self.collect_anchors(ty, 0, &mut tuple, &mut out);
        out
    }

    fn collect_anchors(&self, ty: &FlagType, pos: usize, tuple: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == ty.k() {
            out.push(tuple.clone());
            return;
        }
        for &x in &self.support {
            if (0..pos).all(|i| self.g.adjacent(tuple[i], x) == ty.has_edge(i, pos)) {
                tuple[pos] = x;
                self.collect_anchors(ty, pos + 1, tuple, out);
            }
        }
    }
}
