use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactError;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q`, a plain integer, a decimal (`0.45`) or scientific notation
/// (`1e-12`) into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let s = text.trim();
    let bad = || ExactError::Parse(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], i32::from_str(&s[i + 1..]).map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{whole}{frac}");
    let mut value = Rational::from_integer(BigInt::from_str(&all).map_err(|_| bad())?);
    let shift = exponent - frac.len() as i32;
    let ten = int(10);
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, (-shift) as usize);
    }
    Ok(if negative { -value } else { value })
}

/// `10^-k` as a rational.
pub fn ten_to_minus(k: u32) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), k as usize))
}

pub fn floor_div(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

/// Decimal rendering with `digits` fractional digits, rounded towards
/// negative infinity.
pub fn decimal_floor(r: &Rational, digits: u32) -> String {
    render_scaled(&floor_div(&(r * scale(digits))), digits)
}

/// Decimal rendering rounded towards positive infinity.
pub fn decimal_ceil(r: &Rational, digits: u32) -> String {
    let scaled = r * scale(digits);
    render_scaled(&(-floor_div(&(-scaled))), digits)
}

fn scale(digits: u32) -> Rational {
    Rational::from_integer(num_traits::pow(BigInt::from(10), digits as usize))
}

fn render_scaled(n: &BigInt, digits: u32) -> String {
    let negative = n.sign() == Sign::Minus;
    let mut s = n.abs().to_string();
    let digits = digits as usize;
    if digits == 0 {
        return if negative { format!("-{s}") } else { s };
    }
    while s.len() <= digits {
        s.insert(0, '0');
    }
    let point = s.len() - digits;
    s.insert(point, '.');
    if negative {
        s.insert(0, '-');
    }
    s
}

/// Number of fractional decimal digits needed so that one unit in the last
/// place is at most `width`.
pub fn digits_for_width(width: &Rational) -> u32 {
    let mut d = 0;
    while d < 60 && ten_to_minus(d) > *width {
        d += 1;
    }
    d
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// The rational with the smallest denominator in the closed interval
/// `[lo, hi]` (ties broken by smallest absolute numerator).
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if lo.is_positive() {
        simplest_positive(lo, hi)
    } else if hi.is_negative() {
        -simplest_positive(&-hi, &-lo)
    } else {
        Rational::zero()
    }
}

fn simplest_positive(lo: &Rational, hi: &Rational) -> Rational {
    let fl = floor_div(lo);
    let fl_r = Rational::from_integer(fl.clone());
    if fl_r == *lo {
        return fl_r;
    }
    let next = &fl_r + Rational::one();
    if next <= *hi {
        return next;
    }
    let inner = simplest_positive(&(hi - &fl_r).recip(), &(lo - &fl_r).recip());
    fl_r + inner.recip()
}

/// Exact square root of a non-negative rational, if it exists.
pub fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rational("3/10").unwrap(), rat(3, 10));
        assert_eq!(parse_rational("6/20").unwrap(), rat(3, 10));
        assert_eq!(parse_rational("0.45").unwrap(), rat(9, 20));
        assert_eq!(parse_rational("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_rational("-2").unwrap(), int(-2));
        assert_eq!(parse_rational("2.5E1").unwrap(), int(25));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn decimal_rounding_brackets_value() {
        let third = rat(1, 3);
        assert_eq!(decimal_floor(&third, 4), "0.3333");
        assert_eq!(decimal_ceil(&third, 4), "0.3334");
        assert_eq!(decimal_floor(&-third.clone(), 2), "-0.34");
        assert_eq!(decimal_ceil(&rat(1, 4), 2), "0.25");
        assert_eq!(decimal_floor(&rat(3, 50), 3), "0.060");
    }

    #[test]
    fn simplest_rational_in_interval() {
        assert_eq!(simplest_between(&rat(59, 1000), &rat(61, 1000)), rat(2, 33));
        assert_eq!(simplest_between(&rat(599, 10000), &rat(601, 10000)), rat(3, 50));
        assert_eq!(simplest_between(&rat(1, 3), &rat(1, 2)), rat(1, 2));
        assert_eq!(simplest_between(&rat(-7, 10), &rat(-6, 10)), rat(-2, 3));
        assert_eq!(simplest_between(&rat(-1, 10), &rat(1, 10)), int(0));
        assert_eq!(simplest_between(&rat(5, 2), &rat(5, 2)), rat(5, 2));
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(exact_sqrt(&rat(225, 256)), Some(rat(15, 16)));
        assert_eq!(exact_sqrt(&rat(2, 1)), None);
        assert_eq!(exact_sqrt(&rat(-1, 4)), None);
    }
}
