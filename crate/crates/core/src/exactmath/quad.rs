use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{int, Rational};

/// Element `base + coeff * sqrt(radicand)` of a real quadratic field.
///
/// Elements with `coeff == 0` are plain rationals and combine freely with
/// elements of any field; two irrational elements over different radicands
/// must never meet in one operation.
#[derive(Clone, Debug)]
pub struct QuadElem {
    pub base: Rational,
    pub coeff: Rational,
    pub radicand: i64,
}

impl QuadElem {
    pub fn new(base: Rational, coeff: Rational, radicand: i64) -> Self {
        assert!(radicand > 1, "radicand must be a squarefree integer > 1");
        QuadElem {
            base,
            coeff,
            radicand,
        }
    }

    pub fn rational(r: Rational, radicand: i64) -> Self {
        Self::new(r, Rational::zero(), radicand)
    }

    pub fn zero(radicand: i64) -> Self {
        Self::rational(Rational::zero(), radicand)
    }

    pub fn one(radicand: i64) -> Self {
        Self::rational(Rational::one(), radicand)
    }

    /// `sqrt(radicand)` itself.
    pub fn sqrt_d(radicand: i64) -> Self {
        Self::new(Rational::zero(), Rational::one(), radicand)
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.coeff.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.base)
    }

    pub fn conjugate(&self) -> Self {
        QuadElem {
            base: self.base.clone(),
            coeff: -self.coeff.clone(),
            radicand: self.radicand,
        }
    }

    /// `base^2 - radicand * coeff^2`.
    pub fn norm(&self) -> Rational {
        &self.base * &self.base - int(self.radicand) * &self.coeff * &self.coeff
    }

    pub fn sign(&self) -> i32 {
        quad_sign(self)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conjugate();
        Some(QuadElem {
            base: c.base / &n,
            coeff: c.coeff / n,
            radicand: self.radicand,
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadElem {
            base: &self.base * r,
            coeff: &self.coeff * r,
            radicand: self.radicand,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QuadElem::one(self.radicand);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Comparison against a rational, exactly.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        let d = self - &QuadElem::rational(r.clone(), self.radicand);
        d.sign().cmp(&0)
    }

    /// Rational bounds `lo <= self <= hi` with `hi - lo <= width`.
    pub fn enclose(&self, width: &Rational) -> (Rational, Rational) {
        if self.is_rational() {
            return (self.base.clone(), self.base.clone());
        }
        let c_abs = self.coeff.abs();
        let target = width / &c_abs;
        let (s_lo, s_hi) = sqrt_enclosure(self.radicand, &target);
        if self.coeff.is_positive() {
            (&self.base + &c_abs * s_lo, &self.base + &c_abs * s_hi)
        } else {
            (&self.base - &c_abs * s_hi, &self.base - &c_abs * s_lo)
        }
    }

    pub fn to_f64(&self) -> f64 {
        super::rational::to_f64(&self.base)
            + super::rational::to_f64(&self.coeff) * (self.radicand as f64).sqrt()
    }

    fn field(&self, other: &QuadElem) -> i64 {
        if self.radicand == other.radicand || other.coeff.is_zero() {
            self.radicand
        } else if self.coeff.is_zero() {
            other.radicand
        } else {
            panic!(
                "mixed quadratic fields: sqrt({}) and sqrt({})",
                self.radicand, other.radicand
            )
        }
    }
}

/// Exact sign of `base + coeff * sqrt(radicand)`.
///
/// When base and coeff have opposite signs the comparison is made between
/// the squares `base^2` and `radicand * coeff^2`.
pub fn quad_sign(x: &QuadElem) -> i32 {
    let sb = sign_of(&x.base);
    let sc = sign_of(&x.coeff);
    if sb == sc || sc == 0 {
        return sb;
    }
    if sb == 0 {
        return sc;
    }
    let lhs = &x.base * &x.base;
    let rhs = int(x.radicand) * &x.coeff * &x.coeff;
    match lhs.cmp(&rhs) {
        Ordering::Greater => sb,
        Ordering::Less => sc,
        // only reachable for a perfect-square radicand
        Ordering::Equal => 0,
    }
}

fn sign_of(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Rational bracket of `sqrt(d)` of width at most `width`.
pub fn sqrt_enclosure(d: i64, width: &Rational) -> (Rational, Rational) {
    let dr = int(d);
    let mut lo = Rational::zero();
    let mut hi = int(d.max(1));
    let two = int(2);
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        if &mid * &mid <= dr {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

impl PartialEq for QuadElem {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && self.coeff == other.coeff
            && (self.coeff.is_zero() || self.radicand == other.radicand)
    }
}

impl Eq for QuadElem {}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            write!(f, "{}", self.base)
        } else if self.base.is_zero() {
            write!(f, "({})*sqrt({})", self.coeff, self.radicand)
        } else {
            write!(f, "{} + ({})*sqrt({})", self.base, self.coeff, self.radicand)
        }
    }
}

impl<'a> Add<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: &'a QuadElem) -> QuadElem {
        QuadElem {
            radicand: self.field(rhs),
            base: &self.base + &rhs.base,
            coeff: &self.coeff + &rhs.coeff,
        }
    }
}

impl<'a> Sub<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: &'a QuadElem) -> QuadElem {
        QuadElem {
            radicand: self.field(rhs),
            base: &self.base - &rhs.base,
            coeff: &self.coeff - &rhs.coeff,
        }
    }
}

impl<'a> Mul<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: &'a QuadElem) -> QuadElem {
        let d = self.field(rhs);
        QuadElem {
            radicand: d,
            base: &self.base * &rhs.base + int(d) * &self.coeff * &rhs.coeff,
            coeff: &self.base * &rhs.coeff + &self.coeff * &rhs.base,
        }
    }
}

impl<'a> Div<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn div(self, rhs: &'a QuadElem) -> QuadElem {
        let inv = rhs.inverse().expect("division by zero in quadratic field");
        self * &inv
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem {
            base: -self.base.clone(),
            coeff: -self.coeff.clone(),
            radicand: self.radicand,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $m(self, rhs: QuadElem) -> QuadElem {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $m(self, rhs: &'a QuadElem) -> QuadElem {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::rat;
    use super::*;

    fn q(b: Rational, c: Rational, d: i64) -> QuadElem {
        QuadElem::new(b, c, d)
    }

    #[test]
    fn sign_of_zero_and_simple_elements() {
        assert_eq!(quad_sign(&QuadElem::zero(2)), 0);
        assert_eq!(quad_sign(&q(int(10), int(-1), 2)), 1);
        assert_eq!(quad_sign(&q(int(1), int(-1), 2)), -1);
        assert_eq!(quad_sign(&q(int(-3), int(2), 2)), -1);
        assert_eq!(quad_sign(&q(int(-2), int(2), 2)), 1);
    }

    #[test]
    fn rho2_exceeds_decimal_approximation() {
        // (66 + 2 sqrt 13)/269 - 272/1000
        let rho2 = q(rat(66, 269), rat(2, 269), 13);
        let diff = &rho2 - &QuadElem::rational(rat(272, 1000), 13);
        assert_eq!(quad_sign(&diff), 1);
        // oracle: sqrt(13) ~ 3.60555, so rho2 ~ 0.27216
        let approx = (66.0 + 2.0 * 3.605_551_275_463_989_f64) / 269.0;
        assert!(approx > 0.272);
        assert!((rho2.to_f64() - approx).abs() < 1e-12);
    }

    #[test]
    fn inverse_and_norm() {
        let x = q(int(3), int(2), 2);
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, QuadElem::one(2));
        assert_eq!(x.norm(), int(1));
        assert!(QuadElem::zero(13).inverse().is_none());
    }

    #[test]
    fn enclosure_contains_value() {
        let rho0 = q(rat(15, 49), rat(-3, 98), 2);
        let (lo, hi) = rho0.enclose(&rat(1, 1_000_000));
        assert!(&hi - &lo <= rat(1, 1_000_000));
        assert_eq!(rho0.cmp_rational(&lo), Ordering::Greater);
        assert_eq!(rho0.cmp_rational(&hi), Ordering::Less);
    }

    #[test]
    fn rationals_mix_across_fields() {
        let half = QuadElem::rational(rat(1, 2), 2);
        let s13 = QuadElem::sqrt_d(13);
        let sum = &half + &s13;
        assert_eq!(sum.radicand, 13);
        assert_eq!(sum, q(rat(1, 2), int(1), 13));
    }

    #[test]
    #[should_panic(expected = "mixed quadratic fields")]
    fn mixing_irrational_fields_panics() {
        let _ = &QuadElem::sqrt_d(2) + &QuadElem::sqrt_d(13);
    }
}
