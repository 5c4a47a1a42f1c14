use std::fmt;

use num_traits::Zero;

use super::quad::{quad_sign, QuadElem};
use super::rational::Rational;

/// Univariate polynomial with coefficients in a single quadratic field
/// `Q(sqrt(radicand))`, stored in ascending order of degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<QuadElem>,
    radicand: i64,
}

impl UniPoly {
    pub fn new(coeffs: Vec<QuadElem>, radicand: i64) -> Self {
        let mut p = UniPoly {
            coeffs: coeffs
                .into_iter()
                .map(|c| QuadElem {
                    radicand: if c.coeff.is_zero() { radicand } else { c.radicand },
                    ..c
                })
                .collect(),
            radicand,
        };
        for c in &p.coeffs {
            assert!(
                c.radicand == radicand,
                "coefficient over sqrt({}) in a polynomial over sqrt({radicand})",
                c.radicand
            );
        }
        p.trim();
        p
    }

    pub fn from_rationals(coeffs: &[Rational], radicand: i64) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|r| QuadElem::rational(r.clone(), radicand))
                .collect(),
            radicand,
        )
    }

    pub fn zero(radicand: i64) -> Self {
        UniPoly {
            coeffs: Vec::new(),
            radicand,
        }
    }

    pub fn constant(c: QuadElem) -> Self {
        let d = c.radicand;
        Self::new(vec![c], d)
    }

    /// The monomial `x`.
    pub fn x(radicand: i64) -> Self {
        Self::new(vec![QuadElem::zero(radicand), QuadElem::one(radicand)], radicand)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn radicand(&self) -> i64 {
        self.radicand
    }

    pub fn coeffs(&self) -> &[QuadElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> QuadElem {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| QuadElem::zero(self.radicand))
    }

    pub fn coeff(&self, k: usize) -> QuadElem {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| QuadElem::zero(self.radicand))
    }

    pub fn has_rational_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_rational())
    }

    pub fn eval(&self, x: &QuadElem) -> QuadElem {
        let mut acc = QuadElem::zero(self.radicand);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational) -> QuadElem {
        self.eval(&QuadElem::rational(x.clone(), self.radicand))
    }

    /// Exact sign of `p(x)`.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        quad_sign(&self.eval_rational(x))
    }

    pub fn sign_at_quad(&self, x: &QuadElem) -> i32 {
        quad_sign(&self.eval(x))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&Rational::from_integer((k as i64).into())))
            .collect();
        Self::new(coeffs, self.radicand)
    }

    pub fn scale(&self, c: &QuadElem) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect(), self.field(c))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(QuadElem::one(self.radicand));
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Polynomial long division over the coefficient field.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let d = self.field_poly(divisor);
        let lead_inv = divisor.leading().inverse().unwrap();
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        if rem.len() < divisor.coeffs.len() {
            return (UniPoly::zero(d), self.clone());
        }
        let mut quot = vec![QuadElem::zero(d); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&c * dc);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot, d), UniPoly::new(rem, d))
    }

    /// Standard Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.clone()];
        if self.is_zero() {
            return seq;
        }
        let d = self.derivative();
        if d.is_zero() {
            return seq;
        }
        seq.push(d);
        loop {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn root_count(&self, lo: &Rational, hi: &Rational) -> usize {
        let seq = self.sturm_sequence();
        let vl = sign_variations(&seq, lo);
        let vh = sign_variations(&seq, hi);
        vl.saturating_sub(vh)
    }

    fn field(&self, c: &QuadElem) -> i64 {
        if c.is_rational() {
            self.radicand
        } else {
            c.radicand
        }
    }

    fn field_poly(&self, other: &UniPoly) -> i64 {
        if self.has_rational_coeffs() {
            other.radicand
        } else {
            self.radicand
        }
    }
}

/// Sign changes in a Sturm sequence evaluated at `x`, zeros skipped.
pub fn sign_variations(seq: &[UniPoly], x: &Rational) -> usize {
    let mut last = 0;
    let mut count = 0;
    for p in seq {
        let s = p.sign_at(x);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

fn combine(a: &UniPoly, b: &UniPoly, sub: bool) -> UniPoly {
    let d = a.field_poly(b);
    let len = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..len)
        .map(|k| {
            let (x, y) = (a.coeff(k), b.coeff(k));
            if sub {
                &x - &y
            } else {
                &x + &y
            }
        })
        .collect();
    UniPoly::new(coeffs, d)
}

impl std::ops::Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        combine(self, rhs, false)
    }
}

impl std::ops::Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        combine(self, rhs, true)
    }
}

impl std::ops::Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let d = self.field_poly(rhs);
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(d);
        }
        let mut out = vec![QuadElem::zero(d); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out, d)
    }
}

impl std::ops::Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect(), self.radicand)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Polynomial in two variables `(x, y)`, stored as a list of polynomials in
/// `x` indexed by the power of `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    by_second: Vec<UniPoly>,
    radicand: i64,
}

impl BiPoly {
    pub fn new(by_second: Vec<UniPoly>, radicand: i64) -> Self {
        let mut p = BiPoly {
            by_second,
            radicand,
        };
        while p.by_second.last().is_some_and(|c| c.is_zero()) {
            p.by_second.pop();
        }
        p
    }

    /// Builds from a table `rows[j][i]` = coefficient of `x^i y^j`.
    pub fn from_table(rows: Vec<Vec<QuadElem>>, radicand: i64) -> Self {
        Self::new(
            rows.into_iter().map(|r| UniPoly::new(r, radicand)).collect(),
            radicand,
        )
    }

    pub fn radicand(&self) -> i64 {
        self.radicand
    }

    pub fn degree_second(&self) -> usize {
        self.by_second.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.by_second.is_empty()
    }

    pub fn eval(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        self.specialize_first(x).eval(y)
    }

    /// Fixes `x`, leaving a polynomial in `y`.
    pub fn specialize_first(&self, x: &QuadElem) -> UniPoly {
        let d = if x.is_rational() { self.radicand } else { x.radicand };
        UniPoly::new(self.by_second.iter().map(|c| c.eval(x)).collect(), d)
    }

    /// Fixes `y`, leaving a polynomial in `x`.
    pub fn specialize_second(&self, y: &QuadElem) -> UniPoly {
        let mut acc = UniPoly::zero(self.radicand);
        let mut power = UniPoly::constant(QuadElem::one(self.radicand));
        let ypoly = UniPoly::constant(y.clone());
        for c in &self.by_second {
            acc = &acc + &(c * &power);
            power = &power * &ypoly;
        }
        acc
    }

    /// Substitutes `y = num(x) / den(x)` and clears denominators:
    /// returns `sum_k c_k(x) num(x)^k den(x)^(deg - k)`.
    pub fn substitute_second_fraction(&self, num: &UniPoly, den: &UniPoly) -> UniPoly {
        let deg = self.degree_second() as u32;
        let mut acc = UniPoly::zero(self.radicand);
        for (k, c) in self.by_second.iter().enumerate() {
            let term = &(c * &num.pow(k as u32)) * &den.pow(deg - k as u32);
            acc = &acc + &term;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::{int, rat};
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_rationals(&c.iter().map(|&x| int(x)).collect::<Vec<_>>(), 2)
    }

    #[test]
    fn sign_of_x_squared_minus_two() {
        let q = p(&[-2, 0, 1]);
        assert_eq!(q.sign_at(&int(1)), -1);
        assert_eq!(q.sign_at(&int(2)), 1);
        assert_eq!(q.sign_at_quad(&QuadElem::sqrt_d(2)), 0);
    }

    #[test]
    fn division_reconstructs_dividend() {
        let a = p(&[1, -3, 0, 2, 5]);
        let b = p(&[-1, 2, 1]);
        let (q, r) = a.div_rem(&b);
        assert!(r.degree() < b.degree() || r.is_zero());
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn sturm_counts_roots() {
        // (x-1)(x-2)(x-3)
        let c = p(&[-6, 11, -6, 1]);
        assert_eq!(c.root_count(&int(0), &int(4)), 3);
        assert_eq!(c.root_count(&rat(3, 2), &rat(5, 2)), 1);
        assert_eq!(c.root_count(&int(1), &int(2)), 1);
        let sq = p(&[-2, 0, 1]);
        assert_eq!(sq.root_count(&int(-2), &int(2)), 2);
    }

    #[test]
    fn sturm_over_sqrt_two() {
        // x - sqrt2
        let lin = UniPoly::new(vec![-QuadElem::sqrt_d(2), QuadElem::one(2)], 2);
        assert_eq!(lin.root_count(&int(1), &int(2)), 1);
        assert_eq!(lin.root_count(&int(2), &int(3)), 0);
    }

    #[test]
    fn bivariate_substitution() {
        // x*y - 1 at y = 1/x  ->  x*1 - x = 0
        let b = BiPoly::new(vec![p(&[-1]), p(&[0, 1])], 2);
        let s = b.substitute_second_fraction(&p(&[1]), &p(&[0, 1]));
        assert!(s.is_zero());
        let v = b.eval(&QuadElem::rational(int(3), 2), &QuadElem::rational(rat(1, 3), 2));
        assert!(v.is_zero());
    }
}
