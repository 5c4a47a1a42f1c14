use std::cmp::Ordering;
use std::fmt;

use super::poly::UniPoly;
use super::quad::QuadElem;
use super::rational::{decimal_ceil, decimal_floor, digits_for_width, int, simplest_between, Rational};
use super::ExactError;

/// How the unique root inside `[lo, hi]` is certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsolationMode {
    /// `poly(lo)` and `poly(hi)` have opposite nonzero signs.
    SignChange,
    /// Exactly one root in `(lo, hi]` by Sturm count, `poly(lo) != 0`.
    Sturm,
    /// `lo == hi` is the root itself.
    Exact,
}

/// A real algebraic number: a defining polynomial together with an
/// isolating rational interval.
#[derive(Clone, Debug)]
pub struct AlgebraicValue {
    poly: UniPoly,
    lo: Rational,
    hi: Rational,
    mode: IsolationMode,
}

impl AlgebraicValue {
    /// Certifies that `p` has exactly one real root in `[lo, hi]`.
    pub fn isolate_unique_root(p: UniPoly, lo: Rational, hi: Rational) -> Result<Self, ExactError> {
        if lo > hi {
            return Err(ExactError::DegenerateInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        let no_root = |lo: &Rational, hi: &Rational| ExactError::NoSignChange {
            lo: lo.to_string(),
            hi: hi.to_string(),
        };
        if p.is_zero() {
            return Err(no_root(&lo, &hi));
        }
        let sl = p.sign_at(&lo);
        if lo == hi {
            return if sl == 0 {
                Ok(Self::exact_root(p, lo))
            } else {
                Err(no_root(&lo, &hi))
            };
        }
        let sh = p.sign_at(&hi);
        let count = || p.root_count(&lo, &hi);
        match (sl, sh) {
            (0, 0) => Err(no_root(&lo, &hi)),
            (0, _) => {
                if count() == 0 {
                    Ok(Self::exact_root(p, lo))
                } else {
                    Err(no_root(&lo, &hi))
                }
            }
            (_, 0) => {
                if count() == 1 {
                    Ok(Self::exact_root(p, hi))
                } else {
                    Err(no_root(&lo, &hi))
                }
            }
            _ if sl != sh && count() == 1 => Ok(AlgebraicValue {
                poly: p,
                lo,
                hi,
                mode: IsolationMode::SignChange,
            }),
            _ if sl == sh && count() == 1 => Ok(AlgebraicValue {
                poly: p,
                lo,
                hi,
                mode: IsolationMode::Sturm,
            }),
            _ => Err(no_root(&lo, &hi)),
        }
    }

    /// Fast path for callers that already know `p(lo)` and `p(hi)` have
    /// opposite signs and that the root is unique.
    pub fn from_sign_change(p: UniPoly, lo: Rational, hi: Rational) -> Result<Self, ExactError> {
        if lo > hi {
            return Err(ExactError::DegenerateInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        let (sl, sh) = (p.sign_at(&lo), p.sign_at(&hi));
        if sl == 0 {
            return Ok(Self::exact_root(p, lo));
        }
        if sh == 0 {
            return Ok(Self::exact_root(p, hi));
        }
        if sl == sh {
            return Err(ExactError::NoSignChange {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(AlgebraicValue {
            poly: p,
            lo,
            hi,
            mode: IsolationMode::SignChange,
        })
    }

    pub fn rational(r: Rational) -> Self {
        let p = UniPoly::from_rationals(&[-r.clone(), int(1)], 2);
        Self::exact_root(p, r)
    }

    fn exact_root(poly: UniPoly, r: Rational) -> Self {
        AlgebraicValue {
            poly,
            lo: r.clone(),
            hi: r,
            mode: IsolationMode::Exact,
        }
    }

    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn mode(&self) -> IsolationMode {
        self.mode
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn is_exact(&self) -> bool {
        self.mode == IsolationMode::Exact
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_exact().then_some(&self.lo)
    }

    /// One bisection step, also trying the simplest rational in the interval
    /// as an exact root.
    fn step(&mut self) {
        if self.is_exact() {
            return;
        }
        let pin = simplest_between(&self.lo, &self.hi);
        if pin != self.lo && pin != self.hi && self.poly.sign_at(&pin) == 0 {
            self.collapse(pin);
            return;
        }
        let mid = self.midpoint();
        let sm = self.poly.sign_at(&mid);
        if sm == 0 {
            self.collapse(mid);
            return;
        }
        let root_below = match self.mode {
            IsolationMode::SignChange => sm != self.poly.sign_at(&self.lo),
            _ => self.poly.root_count(&self.lo, &mid) == 1,
        };
        if root_below {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
        if self.mode == IsolationMode::Sturm
            && self.poly.sign_at(&self.lo) != self.poly.sign_at(&self.hi)
        {
            self.mode = IsolationMode::SignChange;
        }
    }

    fn collapse(&mut self, r: Rational) {
        self.lo = r.clone();
        self.hi = r;
        self.mode = IsolationMode::Exact;
    }

    /// Bisects until the enclosure is no wider than `width`.
    pub fn refine(&self, width: &Rational) -> Self {
        assert!(*width > int(0), "refinement width must be positive");
        let mut v = self.clone();
        while !v.is_exact() && v.width() > *width {
            v.step();
        }
        v
    }

    pub fn refine_in_place(&mut self, width: &Rational) {
        *self = self.refine(width);
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        let mut v = self.clone();
        loop {
            if v.is_exact() {
                return v.lo.cmp(r);
            }
            if *r < v.lo {
                return Ordering::Greater;
            }
            if *r > v.hi {
                return Ordering::Less;
            }
            if v.poly.sign_at(r) == 0 {
                return Ordering::Equal;
            }
            v.step();
        }
    }

    /// Exact comparison with a quadratic irrational; the zero test is only
    /// available when the fields are compatible.
    pub fn cmp_quad(&self, q: &QuadElem) -> Ordering {
        if let Some(r) = q.as_rational() {
            return self.cmp_rational(r);
        }
        let mut v = self.clone();
        let compatible = v.poly.has_rational_coeffs() || v.poly.radicand() == q.radicand;
        loop {
            if v.is_exact() {
                return q.cmp_rational(&v.lo).reverse();
            }
            if q.cmp_rational(&v.lo) == Ordering::Less {
                return Ordering::Greater;
            }
            if q.cmp_rational(&v.hi) == Ordering::Greater {
                return Ordering::Less;
            }
            if compatible && v.poly.sign_at_quad(q) == 0 {
                return Ordering::Equal;
            }
            v.step();
        }
    }

    /// Enclosure as decimals, widened outward, e.g. `[0.2710,0.2711]`.
    pub fn enclosure_string(&self, width: &Rational) -> String {
        let d = digits_for_width(width);
        format!(
            "[{},{}]",
            decimal_floor(&self.lo, d),
            decimal_ceil(&self.hi, d)
        )
    }

    pub fn to_f64(&self) -> f64 {
        super::rational::to_f64(&self.midpoint())
    }
}

impl fmt::Display for AlgebraicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "root of {} in [{}, {}]", self.poly, self.lo, self.hi)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::{rat, ten_to_minus};
    use super::*;

    fn x2m2() -> UniPoly {
        UniPoly::from_rationals(&[int(-2), int(0), int(1)], 2)
    }

    #[test]
    fn sqrt_two_refines_below_1e12() {
        let v = AlgebraicValue::isolate_unique_root(x2m2(), int(1), int(2)).unwrap();
        let w = v.refine(&ten_to_minus(12));
        assert!(w.width() <= ten_to_minus(12));
        let s = std::f64::consts::SQRT_2;
        assert!(w.to_f64() - s < 1e-12 && s - w.to_f64() < 1e-12);
        let r3 = v.refine(&ten_to_minus(3));
        assert!(r3.width() <= ten_to_minus(3));
        assert_eq!(r3.cmp_rational(&rat(1414, 1000)), Ordering::Greater);
        let r4 = v.refine(&ten_to_minus(4));
        assert!(*r4.lo() >= rat(1414, 1000) && *r4.hi() <= rat(14145, 10000));
    }

    #[test]
    fn rational_root_is_pinned() {
        // (x - 3/50)(x + 1)
        let p = UniPoly::from_rationals(&[rat(-3, 50), rat(47, 50), int(1)], 2);
        let v = AlgebraicValue::isolate_unique_root(p, rat(1, 100), rat(1, 10)).unwrap();
        let w = v.refine(&ten_to_minus(20));
        assert_eq!(w.as_rational(), Some(&rat(3, 50)));
    }

    #[test]
    fn degenerate_and_missing_roots() {
        assert!(matches!(
            AlgebraicValue::isolate_unique_root(x2m2(), int(2), int(1)),
            Err(ExactError::DegenerateInterval { .. })
        ));
        assert!(matches!(
            AlgebraicValue::isolate_unique_root(x2m2(), int(2), int(3)),
            Err(ExactError::NoSignChange { .. })
        ));
        assert!(matches!(
            AlgebraicValue::isolate_unique_root(x2m2(), int(-2), int(2)),
            Err(ExactError::NoSignChange { .. })
        ));
        let x = UniPoly::x(2);
        let z = AlgebraicValue::isolate_unique_root(x, int(0), int(0)).unwrap();
        assert_eq!(z.as_rational(), Some(&int(0)));
    }

    #[test]
    fn sturm_mode_for_double_root() {
        // (x-1)^2 (x-3): no sign change on [0, 2]
        let p = UniPoly::from_rationals(&[int(-3), int(7), int(-5), int(1)], 2);
        let v = AlgebraicValue::isolate_unique_root(p, int(0), int(2)).unwrap();
        let w = v.refine(&ten_to_minus(6));
        assert_eq!(w.as_rational(), Some(&int(1)));
    }

    #[test]
    fn comparisons() {
        let v = AlgebraicValue::isolate_unique_root(x2m2(), int(1), int(2)).unwrap();
        assert_eq!(v.cmp_rational(&rat(141, 100)), Ordering::Greater);
        assert_eq!(v.cmp_rational(&rat(142, 100)), Ordering::Less);
        assert_eq!(v.cmp_quad(&QuadElem::sqrt_d(2)), Ordering::Equal);
        let s13 = QuadElem::new(int(0), rat(1, 2), 13);
        assert_eq!(v.cmp_quad(&s13), Ordering::Less);
    }
}
