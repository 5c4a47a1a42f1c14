use std::sync::OnceLock;

use num_traits::{Signed, Zero};

use super::BoundsError;
use crate::exactmath::{exact_sqrt, int, rat, AlgebraicValue, BiPoly, QuadElem, Rational, UniPoly};

fn q(base: i64, coeff: i64) -> QuadElem {
    QuadElem::new(int(base), int(coeff), 2)
}

fn z() -> QuadElem {
    QuadElem::zero(2)
}

/// `f_K(rho, a) = a^3 + (3 rho - 4) a^2 + (5 rho - 1) a - 4 rho^3 + rho^2` as a
/// polynomial in `(x, y) = (rho, a)`.
pub fn f_k_poly() -> &'static BiPoly {
    static P: OnceLock<BiPoly> = OnceLock::new();
    P.get_or_init(|| {
        BiPoly::from_table(
            vec![
                vec![z(), z(), q(1, 0), q(-4, 0)],
                vec![q(-1, 0), q(5, 0)],
                vec![q(-4, 0), q(3, 0)],
                vec![q(1, 0)],
            ],
            2,
        )
    })
}

/// The quartic `g_K(rho, a)` over `Q(sqrt 2)` in `(x, y) = (rho, a)`.
pub fn g_k_poly() -> &'static BiPoly {
    static P: OnceLock<BiPoly> = OnceLock::new();
    P.get_or_init(|| {
        BiPoly::from_table(
            vec![
                vec![z(), z(), z(), q(3, -2), q(-12, 8)],
                vec![z(), q(-3, 2), q(15, -10), q(1, 0)],
                vec![z(), q(-13, 8), q(6, -4)],
                vec![q(7, -4), q(-8, 4)],
                vec![q(1, 0)],
            ],
            2,
        )
    })
}

fn qr(r: &Rational) -> QuadElem {
    QuadElem::rational(r.clone(), 2)
}

pub fn f_k(rho: &Rational, a: &Rational) -> Rational {
    f_k_poly()
        .eval(&qr(rho), &qr(a))
        .as_rational()
        .cloned()
        .expect("f_K has rational coefficients")
}

pub fn g_k(rho: &Rational, a: &Rational) -> QuadElem {
    g_k_poly().eval(&qr(rho), &qr(a))
}

pub fn f_k_quad(rho: &QuadElem, a: &QuadElem) -> QuadElem {
    f_k_poly().eval(rho, a)
}

pub fn g_k_quad(rho: &QuadElem, a: &QuadElem) -> QuadElem {
    g_k_poly().eval(rho, a)
}

fn krein_interval(rho: &Rational) -> (Rational, Rational) {
    let sq = rho * rho;
    let hi = &sq / (int(1) - rho);
    (sq, hi)
}

fn check_range(rho: &Rational) -> Result<(), BoundsError> {
    if rho.is_negative() || *rho > rat(1, 3) {
        return Err(BoundsError::RhoOutOfRange(rho.clone()));
    }
    Ok(())
}

fn isolate(p: UniPoly, rho: &Rational) -> Result<AlgebraicValue, BoundsError> {
    if rho.is_zero() {
        return Ok(AlgebraicValue::rational(Rational::zero()));
    }
    let (lo, hi) = krein_interval(rho);
    let v = AlgebraicValue::isolate_unique_root(p, lo, hi).map_err(|e| BoundsError::Isolation(e.to_string()))?;
    Ok(v.refine(&pin_width()))
}

/// Width to which isolated roots are refined on construction, so that
/// rational roots with small denominators are pinned exactly.
fn pin_width() -> Rational {
    Rational::new(1.into(), num_bigint::BigInt::from(1u64 << 30))
}

/// The unique root of `f_K(rho, .)` in `[rho^2, rho^2 / (1 - rho)]`.
pub fn krein(rho: &Rational) -> Result<AlgebraicValue, BoundsError> {
    check_range(rho)?;
    isolate(f_k_poly().specialize_first(&qr(rho)), rho)
}

/// The unique root of `g_K(rho, .)` in `[rho^2, rho^2 / (1 - rho)]`.
pub fn hat_krein(rho: &Rational) -> Result<AlgebraicValue, BoundsError> {
    check_range(rho)?;
    isolate(g_k_poly().specialize_first(&qr(rho)), rho)
}

/// Isolates the root of `poly(rho, .)` in the Krein interval for an
/// irrational `rho` in `Q(sqrt 2)`, using rational outer bounds for the
/// interval endpoints.
pub fn root_at_quad(poly: &BiPoly, rho: &QuadElem) -> Result<AlgebraicValue, BoundsError> {
    let w = rat(1, 1_000_000_000);
    let sq = rho * rho;
    let top = &sq * &(QuadElem::one(rho.radicand) - rho).inverse().expect("rho != 1");
    let (lo, _) = sq.enclose(&w);
    let (_, hi) = top.enclose(&w);
    AlgebraicValue::isolate_unique_root(poly.specialize_first(rho), lo, hi)
        .map_err(|e| BoundsError::Isolation(e.to_string()))
}

/// Discriminant `242 rho - 27 - 508 rho^2` of the improved bound.
pub fn improved_discriminant(rho: &Rational) -> Rational {
    int(242) * rho - int(27) - int(508) * rho * rho
}

/// `(15 - 22 rho - 2 sqrt(242 rho - 27 - 508 rho^2)) / 74`, the smaller root of
/// `(74 x - 15 + 22 rho)^2 - 4 D`.
pub fn improved(rho: &Rational) -> Result<AlgebraicValue, BoundsError> {
    let d = improved_discriminant(rho);
    if d.is_negative() {
        return Err(BoundsError::NegativeDiscriminant(rho.clone()));
    }
    let center = (int(15) - int(22) * rho) / int(74);
    if let Some(s) = exact_sqrt(&d) {
        return Ok(AlgebraicValue::rational(&center - int(2) * s / int(74)));
    }
    let c0 = int(22) * rho - int(15);
    let p = UniPoly::from_rationals(
        &[&c0 * &c0 - int(4) * &d, int(148) * &c0, int(74 * 74)],
        2,
    );
    let bound = (&d + int(1)) / int(2);
    let lo = &center - int(2) * bound / int(74);
    AlgebraicValue::isolate_unique_root(p, lo, center).map_err(|e| BoundsError::Isolation(e.to_string()))
}

/// `rho0 = (3/98)(10 - sqrt 2)`.
pub fn rho0() -> QuadElem {
    QuadElem::new(rat(15, 49), rat(-3, 98), 2)
}

/// `rho2 = (66 + 2 sqrt 13) / 269`.
pub fn rho2() -> QuadElem {
    QuadElem::new(rat(66, 269), rat(2, 269), 13)
}

/// `2^4 g_K(rho, (1 - 3 rho) / 2)` as a polynomial in `rho`.
pub fn rho1_poly() -> UniPoly {
    let num = UniPoly::from_rationals(&[int(1), int(-3)], 2);
    let den = UniPoly::from_rationals(&[int(2)], 2);
    g_k_poly().substitute_second_fraction(&num, &den)
}

/// The root of `g_K(rho, (1 - 3 rho) / 2)` near `0.271`.
pub fn rho1() -> &'static AlgebraicValue {
    static R: OnceLock<AlgebraicValue> = OnceLock::new();
    R.get_or_init(|| {
        AlgebraicValue::isolate_unique_root(rho1_poly(), rat(27, 100), rat(272, 1000))
            .expect("rho1 is isolated in [0.270, 0.272]")
    })
}

/// Value of the improved bound at `rho2`, computed in `Q(sqrt 13)` from the
/// certified square root `sqrt D(rho2) = (89 rho2 - 22) / 2`.
pub fn improved_at_rho2() -> QuadElem {
    let r = rho2();
    let d = &(&r.scale(&int(242)) - &QuadElem::rational(int(27), 13)) - &(&r * &r).scale(&int(508));
    let s = (&r.scale(&int(89)) - &QuadElem::rational(int(22), 13)).scale(&rat(1, 2));
    assert!(&s * &s == d && s.sign() >= 0, "certified square root");
    (&(&QuadElem::rational(int(15), 13) - &r.scale(&int(22))) - &s.scale(&int(2))).scale(&rat(1, 74))
}
