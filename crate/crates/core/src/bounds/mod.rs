//! The upper bound `a0(rho)` on the common-neighbourhood density of
//! triangle-free regular graphs, its pieces and breakpoints, and the simpler
//! bounds valid for larger densities.

mod curves;

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

pub use curves::{
    f_k, f_k_poly, f_k_quad, g_k, g_k_poly, g_k_quad, hat_krein, improved, improved_at_rho2,
    improved_discriminant, krein, rho0, rho1, rho1_poly, rho2, root_at_quad,
};

use crate::exactmath::{decimal_ceil, decimal_floor, digits_for_width, int, rat, AlgebraicValue, QuadElem, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("rho = {0} is outside the domain of this bound")]
    RhoOutOfRange(Rational),
    #[error("improved bound undefined at rho = {0}: negative discriminant")]
    NegativeDiscriminant(Rational),
    #[error("root isolation failed: {0}")]
    Isolation(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Piece {
    Krein,
    HatKrein,
    OneMinusThreeRhoHalf,
    Improved,
    RhoThird,
    TwoRhoMinusHalf,
    TwoFifthsRho,
    ThreeRhoMinusOne,
    Zero,
}

impl Piece {
    pub fn label(self) -> &'static str {
        match self {
            Piece::Krein => "Krein",
            Piece::HatKrein => "HatKrein",
            Piece::OneMinusThreeRhoHalf => "(1-3rho)/2",
            Piece::Improved => "Improved",
            Piece::RhoThird => "rho/3",
            Piece::TwoRhoMinusHalf => "2rho-1/2",
            Piece::TwoFifthsRho => "2rho/5",
            Piece::ThreeRhoMinusOne => "3rho-1",
            Piece::Zero => "zero",
        }
    }

    /// Evaluates this piece's formula at `rho`.
    pub fn eval(self, rho: &Rational) -> Result<AlgebraicValue, BoundsError> {
        let exact = |r: Rational| Ok(AlgebraicValue::rational(r));
        match self {
            Piece::Krein => krein(rho),
            Piece::HatKrein => hat_krein(rho),
            Piece::Improved => improved(rho),
            Piece::OneMinusThreeRhoHalf => exact((int(1) - int(3) * rho) / int(2)),
            Piece::RhoThird => exact(rho / int(3)),
            Piece::TwoRhoMinusHalf => exact(int(2) * rho - rat(1, 2)),
            Piece::TwoFifthsRho => exact(rat(2, 5) * rho),
            Piece::ThreeRhoMinusOne => exact(int(3) * rho - int(1)),
            Piece::Zero => exact(Rational::zero()),
        }
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A bound value together with the formula(s) it comes from; at a rational
/// breakpoint both adjacent pieces are listed.
#[derive(Clone, Debug)]
pub struct BoundValue {
    pub value: AlgebraicValue,
    pub pieces: Vec<Piece>,
}

impl BoundValue {
    fn of(rho: &Rational, pieces: Vec<Piece>) -> Result<Self, BoundsError> {
        Ok(BoundValue {
            value: pieces[0].eval(rho)?,
            pieces,
        })
    }

    pub fn piece_label(&self) -> String {
        let v: Vec<&str> = self.pieces.iter().map(|p| p.label()).collect();
        v.join("|")
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.value.as_rational()
    }

    /// `(lo, hi)` with `hi - lo <= width`, or a repeated exact value.
    pub fn enclosure(&self, width: &Rational) -> (Rational, Rational) {
        let v = self.value.refine(width);
        (v.lo().clone(), v.hi().clone())
    }

    /// `value=3/50 (exact)` or `value=[lo,hi]`.
    pub fn describe(&self, width: &Rational) -> String {
        let v = self.value.refine(width);
        match v.as_rational() {
            Some(r) => format!("value={r} (exact)"),
            None => format!("value={}", v.enclosure_string(width)),
        }
    }
}

/// The irrational breakpoints of `a0`.
#[derive(Clone, Debug)]
pub struct Breakpoints {
    pub rho0: QuadElem,
    pub rho1: AlgebraicValue,
    pub rho2: QuadElem,
}

impl Default for Breakpoints {
    fn default() -> Self {
        Breakpoints {
            rho0: rho0(),
            rho1: rho1().clone(),
            rho2: rho2(),
        }
    }
}

impl Breakpoints {
    /// `rho0 < rho1 < rho2 < 9/32 < 3/10 < 5/16 < 1/3`, decided exactly.
    pub fn is_ordered(&self) -> bool {
        self.rho1.cmp_quad(&self.rho0) == Ordering::Greater
            && self.rho1.cmp_quad(&self.rho2) == Ordering::Less
            && self.rho2.cmp_rational(&rat(9, 32)) == Ordering::Less
            && rat(9, 32) < rat(3, 10)
            && rat(3, 10) < rat(5, 16)
            && rat(5, 16) < rat(1, 3)
    }
}

/// The piecewise bound `a0(rho)` for `0 <= rho <= 1/3`.
pub fn a0(rho: &Rational) -> Result<BoundValue, BoundsError> {
    if rho.is_negative() || *rho > rat(1, 3) {
        return Err(BoundsError::RhoOutOfRange(rho.clone()));
    }
    use Piece::*;
    if rho0().cmp_rational(rho) == Ordering::Greater {
        return BoundValue::of(rho, vec![Krein]);
    }
    match rho1().cmp_rational(rho) {
        Ordering::Greater => return BoundValue::of(rho, vec![HatKrein]),
        Ordering::Equal => return BoundValue::of(rho, vec![HatKrein, OneMinusThreeRhoHalf]),
        Ordering::Less => {}
    }
    if rho2().cmp_rational(rho) == Ordering::Greater {
        return BoundValue::of(rho, vec![OneMinusThreeRhoHalf]);
    }
    let cuts = [
        (rat(9, 32), Improved, RhoThird),
        (rat(3, 10), RhoThird, TwoRhoMinusHalf),
        (rat(5, 16), TwoRhoMinusHalf, TwoFifthsRho),
    ];
    for (cut, below, above) in cuts {
        match rho.cmp(&cut) {
            Ordering::Less => return BoundValue::of(rho, vec![below]),
            Ordering::Equal => return BoundValue::of(rho, vec![below, above]),
            Ordering::Greater => {}
        }
    }
    BoundValue::of(rho, vec![TwoFifthsRho])
}

/// Bounds for `1/3 <= rho < 1/2`: `rho/3` up to `3/8`, `3 rho - 1` up to
/// `2/5`, and 0 beyond.
pub fn large_rho_bound(rho: &Rational) -> Result<BoundValue, BoundsError> {
    use Piece::*;
    if *rho < rat(1, 3) || *rho >= rat(1, 2) {
        return Err(BoundsError::RhoOutOfRange(rho.clone()));
    }
    let pieces = match (rho.cmp(&rat(3, 8)), rho.cmp(&rat(2, 5))) {
        (Ordering::Less, _) => vec![RhoThird],
        (Ordering::Equal, _) => vec![RhoThird, ThreeRhoMinusOne],
        (_, Ordering::Less | Ordering::Equal) => vec![ThreeRhoMinusOne],
        _ => vec![Zero],
    };
    BoundValue::of(rho, pieces)
}

/// `a0` on `[0, 1/3]` and the large-density bound on `(1/3, 1/2)`.
pub fn bound(rho: &Rational) -> Result<BoundValue, BoundsError> {
    if *rho <= rat(1, 3) {
        a0(rho)
    } else {
        large_rho_bound(rho)
    }
}

/// `rho^2 / (1 - rho)`.
pub fn trivial_bound(rho: &Rational) -> Result<Rational, BoundsError> {
    if *rho >= int(1) {
        return Err(BoundsError::RhoOutOfRange(rho.clone()));
    }
    Ok(rho * rho / (int(1) - rho))
}

/// The factors `(k - 1, k - c, k^2 - k(3c + 1) - c^3 + 4c^2 - c)`.
pub fn krein_product_factor(k: i64, c: i64) -> (i128, i128, i128) {
    let (k, c) = (k as i128, c as i128);
    (k - 1, k - c, k * k - k * (3 * c + 1) - c * c * c + 4 * c * c - c)
}

/// Parameters `(n, k, c)` of the known triangle-free strongly regular graphs.
pub const KNOWN_TFSR: [(i64, i64, i64); 7] = [
    (5, 2, 1),
    (10, 3, 1),
    (16, 5, 2),
    (50, 7, 1),
    (56, 10, 2),
    (77, 16, 4),
    (100, 22, 6),
];

#[derive(Clone, Debug)]
pub struct KreinRow {
    pub n: i64,
    pub k: i64,
    pub c: i64,
    pub factors: (i128, i128, i128),
    pub product: i128,
    pub f_k: Rational,
}

/// Compares the sign of the integer factor product with `f_K(k/n, c/n)` on
/// the known parameter sets; the two are reported side by side.
pub fn krein_discrepancy_report() -> Vec<KreinRow> {
    KNOWN_TFSR
        .iter()
        .map(|&(n, k, c)| {
            let factors = krein_product_factor(k, c);
            KreinRow {
                n,
                k,
                c,
                factors,
                product: factors.0 * factors.1 * factors.2,
                f_k: f_k(&rat(k, n), &rat(c, n)),
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct CurveRow {
    pub rho: Rational,
    pub lo: Rational,
    pub hi: Rational,
    pub exact: bool,
    pub piece: String,
}

impl CurveRow {
    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }
}

/// Grid `0, step, 2 step, ...` up to `1/3`.
pub fn grid(step: &Rational) -> Result<Vec<Rational>, BoundsError> {
    if !step.is_positive() {
        return Err(BoundsError::RhoOutOfRange(step.clone()));
    }
    let mut out = Vec::new();
    let mut k = 0i64;
    loop {
        let r = step * int(k);
        if r > rat(1, 3) {
            return Ok(out);
        }
        out.push(r);
        k += 1;
    }
}

/// `a0` along a grid of densities in `[0, 1/3]`, enclosures no wider than
/// `precision`.
pub fn curve_samples(grid: &[Rational], precision: &Rational) -> Result<Vec<CurveRow>, BoundsError> {
    grid.par_iter()
        .map(|rho| {
            let b = a0(rho)?;
            let (lo, hi) = b.enclosure(precision);
            Ok(CurveRow {
                rho: rho.clone(),
                exact: lo == hi,
                lo,
                hi,
                piece: b.piece_label(),
            })
        })
        .collect()
}

/// CSV with header `rho,a0_lo,a0_hi,piece`.
pub fn curve_csv(rows: &[CurveRow], precision: &Rational) -> String {
    let d = digits_for_width(precision);
    let mut s = String::from("rho,a0_lo,a0_hi,piece\n");
    for r in rows {
        let (lo, hi) = if r.exact {
            (r.lo.to_string(), r.hi.to_string())
        } else {
            (decimal_floor(&r.lo, d), decimal_ceil(&r.hi, d))
        };
        s.push_str(&format!("{},{},{},{}\n", r.rho, lo, hi, r.piece));
    }
    s
}
