//! Circle reductions: fractional part, distance to the nearest integer, and
//! the signed representative in `[-1/2, 1/2)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::real::Real;

/// The three 1-periodic reductions of a number, plus its integer part.
///
/// Invariants: `dist = |signed|`, `frac - signed ∈ {0, 1}`, and
/// `frac + int_part` encloses the input exactly.
#[derive(Clone, Debug)]
pub struct CircleValue {
    pub frac: Real,
    pub dist: Real,
    pub signed: Real,
    pub int_part: BigInt,
}

/// Full reduction. Errors when the enclosure straddles an integer (which
/// makes `frac` ambiguous) or a half-integer (which makes `signed`
/// ambiguous); callers should then retry at higher precision.
pub fn reduce(x: &Real) -> Result<CircleValue> {
    let int_part = {
        let lo = x.lo().floor().to_integer();
        let hi = x.hi().floor().to_integer();
        if lo != hi {
            return Err(Error::Ambiguous(
                "interval straddles an integer; fractional part undefined".into(),
            ));
        }
        lo
    };
    let nearest = {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let lo = (x.lo() + &half).floor().to_integer();
        let hi = (x.hi() + &half).floor().to_integer();
        if lo != hi {
            return Err(Error::Ambiguous(
                "interval straddles a half-integer; signed part undefined".into(),
            ));
        }
        lo
    };
    let frac = x.add_rat(&BigRational::from_integer(-&int_part));
    let signed = x.add_rat(&BigRational::from_integer(-nearest));
    let dist = signed.abs();
    Ok(CircleValue {
        frac,
        dist,
        signed,
        int_part,
    })
}

/// Distance to the nearest integer, `‖x‖ ∈ [0, 1/2]`.
///
/// Total: `‖·‖` is 1-Lipschitz, so the enclosure `(‖v‖, r)` is sound even
/// when the ball straddles a reduction boundary.
pub fn dist(x: &Real) -> Real {
    let n = x.nearest_int();
    x.add_rat(&BigRational::from_integer(-n)).abs()
}

/// Distance to the nearest integer of an exact rational.
pub fn dist_rat(x: &BigRational) -> BigRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let n = (x + &half).floor().to_integer();
    (x - BigRational::from_integer(n)).abs()
}

/// Fractional part of an exact rational, in `[0, 1)`.
pub fn frac_rat(x: &BigRational) -> BigRational {
    x - BigRational::from_integer(x.floor().to_integer())
}
