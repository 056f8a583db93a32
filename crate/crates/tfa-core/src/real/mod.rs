//! Exact-rational ball arithmetic.
//!
//! A [`Real`] is a certified enclosure of a real number: an exact rational
//! `value` together with a non-negative rational `radius` such that the true
//! number lies in `[value - radius, value + radius]`. The basic operations
//! propagate radii exactly (outward); [`Real::round`] trades exactness for
//! bounded representation size by snapping the value to the dyadic grid of a
//! [`Precision`] and absorbing the snap error into the radius.
//!
//! Every number remembers its [`Source`]. Sources with a finite description
//! (rationals, quadratic surds, synthetic continued fractions) can be
//! re-materialized at higher precision, which is what the doubling strategy
//! on ambiguous reductions relies on.

mod complex;
pub(crate) mod fixed;
pub(crate) mod functions;
mod parse;

pub use complex::Complex;
pub use functions::{
    acos_turns, atan2_turns, cos2pi, exp, ln, ln2, ln_big_int, pi, sin2pi, sincos2pi, sqrt,
};
pub use parse::{parse_complex, parse_rational, parse_real};

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::precision::Precision;

/// Description of where a number came from, sufficient to re-materialize it
/// at a different precision when the description is finite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    /// Exact rational input.
    Rational,
    /// Exact decimal literal with the number of fractional digits it carried.
    Decimal { digits: u32 },
    /// Quadratic surd `(p + q sqrt(d)) / r` with `d` a non-square positive
    /// integer and `r != 0`.
    Surd {
        p: BigInt,
        q: BigInt,
        r: BigInt,
        d: BigUint,
    },
    /// Synthetic continued fraction `[a0; a1, a2, ...]`, finite or with the
    /// listed tail repeated periodically.
    Cf {
        a0: BigInt,
        tail: Vec<BigUint>,
        periodic: bool,
    },
    /// Result of arithmetic; not re-materializable.
    Derived,
}

/// Exact rational midpoint plus certified radius.
#[derive(Clone, Debug)]
pub struct Real {
    value: BigRational,
    radius: BigRational,
    source: Source,
}

impl Real {
    pub fn exact(value: BigRational) -> Self {
        Real {
            value,
            radius: BigRational::zero(),
            source: Source::Rational,
        }
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Real::exact(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio<T: Into<BigInt>, U: Into<BigInt>>(num: T, den: U) -> Self {
        Real::exact(BigRational::new(num.into(), den.into()))
    }

    pub fn zero() -> Self {
        Real::from_int(0)
    }

    pub fn one() -> Self {
        Real::from_int(1)
    }

    /// Enclosure with explicit midpoint and radius.
    pub fn with_radius(value: BigRational, radius: BigRational) -> Self {
        debug_assert!(!radius.is_negative());
        Real {
            value,
            radius,
            source: Source::Derived,
        }
    }

    /// Enclosure from certified lower and upper bounds.
    pub fn from_bounds(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        let two = BigRational::from_integer(BigInt::from(2));
        Real {
            value: (&lo + &hi) / &two,
            radius: (&hi - &lo) / two,
            source: Source::Derived,
        }
    }

    pub(crate) fn with_source(mut self, source: Source) -> Self {
        self.source = source;
        self
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn radius(&self) -> &BigRational {
        &self.radius
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn lo(&self) -> BigRational {
        &self.value - &self.radius
    }

    pub fn hi(&self) -> BigRational {
        &self.value + &self.radius
    }

    pub fn is_exact(&self) -> bool {
        self.radius.is_zero()
    }

    /// Midpoint as f64; for diagnostics and the uncertified fast paths only.
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }

    // ----- exact arithmetic -------------------------------------------------

    pub fn add(&self, other: &Real) -> Real {
        Real {
            value: &self.value + &other.value,
            radius: &self.radius + &other.radius,
            source: Source::Derived,
        }
    }

    pub fn sub(&self, other: &Real) -> Real {
        Real {
            value: &self.value - &other.value,
            radius: &self.radius + &other.radius,
            source: Source::Derived,
        }
    }

    pub fn neg(&self) -> Real {
        Real {
            value: -&self.value,
            radius: self.radius.clone(),
            source: Source::Derived,
        }
    }

    /// Absolute value; sound even when the ball straddles zero because
    /// `| |x| - |v| | <= |x - v|`.
    pub fn abs(&self) -> Real {
        Real {
            value: self.value.abs(),
            radius: self.radius.clone(),
            source: Source::Derived,
        }
    }

    pub fn mul(&self, other: &Real) -> Real {
        let value = &self.value * &other.value;
        let radius = self.value.abs() * &other.radius
            + other.value.abs() * &self.radius
            + &self.radius * &other.radius;
        Real {
            value,
            radius,
            source: Source::Derived,
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Real {
        let kr = BigRational::from_integer(k.clone());
        Real {
            value: &self.value * &kr,
            radius: &self.radius * kr.abs(),
            source: Source::Derived,
        }
    }

    pub fn mul_rat(&self, k: &BigRational) -> Real {
        Real {
            value: &self.value * k,
            radius: &self.radius * k.abs(),
            source: Source::Derived,
        }
    }

    pub fn add_rat(&self, k: &BigRational) -> Real {
        Real {
            value: &self.value + k,
            radius: self.radius.clone(),
            source: Source::Derived,
        }
    }

    pub fn square(&self) -> Real {
        self.mul(self)
    }

    /// Reciprocal; requires the ball to exclude zero.
    pub fn recip(&self) -> Result<Real> {
        let av = self.value.abs();
        if av <= self.radius {
            return Err(Error::Precision(
                "reciprocal of an interval containing zero".into(),
            ));
        }
        // max |1/x - 1/v| over |x - v| <= r is r / (|v| (|v| - r))
        let value = self.value.recip();
        let radius = &self.radius / (&av * (&av - &self.radius));
        Ok(Real {
            value,
            radius,
            source: Source::Derived,
        })
    }

    pub fn div(&self, other: &Real) -> Result<Real> {
        Ok(self.mul(&other.recip()?))
    }

    // ----- rounding ---------------------------------------------------------

    /// Snap the midpoint to the dyadic grid `Z / 2^bits` and round the radius
    /// up onto the same grid. Keeps representation sizes bounded in long
    /// computations at the cost of `<= 2^-bits` extra radius.
    pub fn round(&self, prec: Precision) -> Real {
        let scale = BigInt::one() << prec.bits();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        // nearest dyadic to value
        let scaled = &self.value * BigRational::from_integer(scale.clone());
        let snapped = (scaled + half).floor().to_integer();
        let value = BigRational::new(snapped, scale.clone());
        let snap_err = (&value - &self.value).abs();
        let r = &self.radius + snap_err;
        // radius rounded up to the grid
        let r_scaled = &r * BigRational::from_integer(scale.clone());
        let r_up = r_scaled.ceil().to_integer();
        let radius = BigRational::new(r_up, scale);
        Real {
            value,
            radius,
            source: self.source.clone(),
        }
    }

    pub fn mul_round(&self, other: &Real, prec: Precision) -> Real {
        self.mul(other).round(prec)
    }

    pub fn add_round(&self, other: &Real, prec: Precision) -> Real {
        self.add(other).round(prec)
    }

    // ----- certified queries ------------------------------------------------

    /// Certified comparison: `Some(ordering)` when the balls are disjoint or
    /// both exact and equal, `None` when they overlap.
    pub fn cmp_certified(&self, other: &Real) -> Option<Ordering> {
        if self.is_exact() && other.is_exact() {
            return Some(self.value.cmp(&other.value));
        }
        if self.hi() < other.lo() {
            Some(Ordering::Less)
        } else if self.lo() > other.hi() {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    /// Certified sign of the enclosed number.
    pub fn sign_certified(&self) -> Option<Sign> {
        if self.value.is_zero() && self.radius.is_zero() {
            Some(Sign::NoSign)
        } else if self.lo().is_positive() {
            Some(Sign::Plus)
        } else if self.hi().is_negative() {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo().is_positive() && !self.hi().is_negative()
    }

    pub fn contains_rat(&self, x: &BigRational) -> bool {
        self.lo() <= *x && *x <= self.hi()
    }

    /// `true` when the whole ball is `< x`.
    pub fn certainly_lt_rat(&self, x: &BigRational) -> bool {
        self.hi() < *x
    }

    /// `true` when the whole ball is `<= x`.
    pub fn certainly_le_rat(&self, x: &BigRational) -> bool {
        self.hi() <= *x
    }

    /// `true` when the whole ball is `>= x`.
    pub fn certainly_ge_rat(&self, x: &BigRational) -> bool {
        self.lo() >= *x
    }

    /// Certified floor; errors when the enclosure straddles an integer.
    pub fn floor_certified(&self) -> Result<BigInt> {
        let lo = self.lo().floor().to_integer();
        let hi = self.hi().floor().to_integer();
        if lo == hi {
            Ok(lo)
        } else {
            Err(Error::Ambiguous(format!(
                "floor straddles an integer: [{}, {}]",
                self.lo(),
                self.hi()
            )))
        }
    }

    /// Nearest integer to the midpoint (no certification).
    pub fn nearest_int(&self) -> BigInt {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        (&self.value + half).floor().to_integer()
    }

    // ----- re-materialization -----------------------------------------------

    /// Whether [`Real::refine`] can produce a tighter enclosure.
    pub fn refinable(&self) -> bool {
        !matches!(self.source, Source::Derived)
    }

    /// Re-materialize this number at the given precision if its source
    /// carries a finite description; `None` for derived values.
    pub fn refine(&self, prec: Precision) -> Option<Real> {
        match &self.source {
            Source::Rational | Source::Decimal { .. } => Some(self.clone()),
            Source::Surd { p, q, r, d } => {
                Some(materialize_surd(p, q, r, d, prec).expect("surd re-materialization"))
            }
            Source::Cf { a0, tail, periodic } => {
                Some(materialize_cf(a0, tail, *periodic, prec).expect("cf re-materialization"))
            }
            Source::Derived => None,
        }
    }

    /// Quadratic surd `(p + q sqrt(d)) / r`.
    pub fn surd(p: BigInt, q: BigInt, r: BigInt, d: BigUint, prec: Precision) -> Result<Real> {
        materialize_surd(&p, &q, &r, &d, prec)
    }

    /// Golden ratio `(1 + sqrt(5)) / 2`.
    pub fn golden(prec: Precision) -> Real {
        Real::surd(
            BigInt::one(),
            BigInt::one(),
            BigInt::from(2),
            BigUint::from(5u32),
            prec,
        )
        .expect("golden ratio")
    }

    pub fn sqrt_int(d: u64, prec: Precision) -> Result<Real> {
        Real::surd(
            BigInt::zero(),
            BigInt::one(),
            BigInt::one(),
            BigUint::from(d),
            prec,
        )
    }

    /// Decimal string of the midpoint with `digits` fractional digits,
    /// rounded toward zero.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        rational_to_decimal(&self.value, digits)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.value)
        } else {
            write!(
                f,
                "{} ± {:.3e}",
                rational_to_decimal(&self.value, 30),
                self.radius.to_f64().unwrap_or(f64::NAN)
            )
        }
    }
}

/// Floor integer square root.
pub(crate) fn isqrt_floor(n: &BigUint) -> BigUint {
    n.sqrt()
}

fn materialize_surd(
    p: &BigInt,
    q: &BigInt,
    r: &BigInt,
    d: &BigUint,
    prec: Precision,
) -> Result<Real> {
    if r.is_zero() {
        return Err(Error::Parse("surd with zero denominator".into()));
    }
    let root = isqrt_floor(d);
    if &root * &root == *d {
        return Err(Error::Parse(format!(
            "sqrt argument {d} is a perfect square; use a rational instead"
        )));
    }
    // sqrt(d) in [t / 2^k, (t+1) / 2^k] with t = isqrt(d * 4^k)
    let k = prec.bits() + 8;
    let scaled: BigUint = d << (2 * k);
    let t = isqrt_floor(&scaled);
    let denom = BigInt::one() << k;
    let lo = BigRational::new(BigInt::from(t.clone()), denom.clone());
    let hi = BigRational::new(BigInt::from(t + BigUint::one()), denom);
    let sq = Real::from_bounds(lo, hi);
    let qs = sq.mul_rat(&BigRational::from_integer(q.clone()));
    let num = qs.add_rat(&BigRational::from_integer(p.clone()));
    let out = num.mul_rat(&BigRational::new(BigInt::one(), r.clone()));
    Ok(out.with_source(Source::Surd {
        p: p.clone(),
        q: q.clone(),
        r: r.clone(),
        d: d.clone(),
    }))
}

/// Value of a finite or periodic continued fraction.
///
/// For the periodic case the listed tail `a1..am` repeats forever. Writing
/// `y` for the purely periodic tail value, `y` solves the quadratic fixed
/// point of its own convergent matrix and the result is `a0 + 1/y`.
fn materialize_cf(a0: &BigInt, tail: &[BigUint], periodic: bool, prec: Precision) -> Result<Real> {
    for a in tail {
        if a.is_zero() {
            return Err(Error::Parse("continued-fraction quotient must be >= 1".into()));
        }
    }
    let a0r = BigRational::from_integer(a0.clone());
    if tail.is_empty() {
        return Ok(Real::exact(a0r).with_source(Source::Cf {
            a0: a0.clone(),
            tail: vec![],
            periodic,
        }));
    }
    let value = if !periodic {
        // exact rational: fold from the back
        let mut acc = BigRational::from_integer(BigInt::from(tail[tail.len() - 1].clone()));
        for a in tail[..tail.len() - 1].iter().rev() {
            acc = BigRational::from_integer(BigInt::from(a.clone())) + acc.recip();
        }
        Real::exact(a0r + acc.recip())
    } else {
        // tail matrix M = prod [[a_i, 1], [1, 0]]; y = (m11 y + m12)/(m21 y + m22)
        let (mut m11, mut m12, mut m21, mut m22) = (
            BigInt::one(),
            BigInt::zero(),
            BigInt::zero(),
            BigInt::one(),
        );
        for a in tail {
            let a = BigInt::from(a.clone());
            let (n11, n12) = (&m11 * &a + &m12, m11.clone());
            let (n21, n22) = (&m21 * &a + &m22, m21.clone());
            m11 = n11;
            m12 = n12;
            m21 = n21;
            m22 = n22;
        }
        // m21 y^2 + (m22 - m11) y - m12 = 0, take the root > 1
        let a = BigRational::from_integer(m21);
        let b = BigRational::from_integer(&m22 - &m11);
        let c = BigRational::from_integer(-m12);
        let disc = &b * &b - BigRational::from_integer(BigInt::from(4)) * &a * &c;
        debug_assert!(disc.is_positive());
        let sd = sqrt_rational(&disc, prec)?;
        let y = sd
            .add_rat(&-&b)
            .mul_rat(&(BigRational::new(BigInt::one(), BigInt::from(2)) / &a));
        let inv = y.recip().map_err(|_| {
            Error::Precision("periodic continued fraction too close to zero".into())
        })?;
        inv.add_rat(&a0r)
    };
    Ok(value.with_source(Source::Cf {
        a0: a0.clone(),
        tail: tail.to_vec(),
        periodic,
    }))
}

/// Certified sqrt of a non-negative rational.
pub(crate) fn sqrt_rational(x: &BigRational, prec: Precision) -> Result<Real> {
    if x.is_negative() {
        return Err(Error::Precision("sqrt of a negative rational".into()));
    }
    if x.is_zero() {
        return Ok(Real::zero());
    }
    // sqrt(n/m) = sqrt(n m) / m
    let n = x.numer().magnitude().clone();
    let m = x.denom().magnitude().clone();
    let k = prec.bits() + 8;
    let scaled = (&n * &m) << (2 * k);
    let t = isqrt_floor(&scaled);
    let denom = BigRational::from_integer(BigInt::from(m)) * BigRational::from_integer(BigInt::one() << k);
    let lo = BigRational::from_integer(BigInt::from(t.clone())) / &denom;
    let hi = BigRational::from_integer(BigInt::from(t + BigUint::one())) / denom;
    Ok(Real::from_bounds(lo, hi))
}

/// Decimal rendering of a rational, truncated toward zero at `digits`
/// fractional digits; exact while it fits.
pub(crate) fn rational_to_decimal(x: &BigRational, digits: u32) -> String {
    let neg = x.is_negative();
    let ax = x.abs();
    let int = ax.floor().to_integer();
    let frac = &ax - BigRational::from_integer(int.clone());
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (&frac * BigRational::from_integer(scale.clone())).floor().to_integer();
    let mut frac_str = scaled.to_string();
    while frac_str.len() < digits as usize {
        frac_str.insert(0, '0');
    }
    // trim trailing zeros but keep at least one digit
    while frac_str.len() > 1 && frac_str.ends_with('0') {
        frac_str.pop();
    }
    let sign = if neg { "-" } else { "" };
    if digits == 0 || frac_str == "0" {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac_str}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn exact_arithmetic_keeps_zero_radius() {
        let a = Real::from_ratio(3, 7);
        let b = Real::from_ratio(2, 5);
        let c = a.mul(&b).add(&a.sub(&b));
        assert!(c.is_exact());
        assert_eq!(*c.value(), rat(3, 7) * rat(2, 5) + rat(3, 7) - rat(2, 5));
    }

    #[test]
    fn sqrt2_squared_contains_two() {
        let prec = Precision::from_digits(100);
        let s = Real::sqrt_int(2, prec).unwrap();
        let sq = s.square();
        assert!(sq.contains_rat(&rat(2, 1)));
        assert!(sq.radius() < &rat(1, 10).pow(90));
    }

    #[test]
    fn golden_satisfies_quadratic() {
        let prec = Precision::from_digits(80);
        let g = Real::golden(prec);
        // x^2 - x - 1 = 0
        let res = g.square().sub(&g).sub(&Real::one());
        assert!(res.contains_zero());
        assert!(res.radius() < &rat(1, 10).pow(70));
    }

    #[test]
    fn periodic_cf_all_ones_is_inverse_golden() {
        let prec = Precision::from_digits(80);
        let x = Real::surd(
            BigInt::from(-1),
            BigInt::one(),
            BigInt::from(2),
            BigUint::from(5u32),
            prec,
        )
        .unwrap(); // (sqrt(5) - 1)/2
        let cf = super::materialize_cf(&BigInt::zero(), &[BigUint::one()], true, prec).unwrap();
        let diff = cf.sub(&x);
        assert!(diff.contains_zero());
        assert!(diff.radius() < &rat(1, 10).pow(70));
    }

    #[test]
    fn finite_cf_is_exact_rational() {
        let prec = Precision::default();
        let cf = super::materialize_cf(
            &BigInt::from(4),
            &[2u32.into(), 6u32.into(), 7u32.into()],
            false,
            prec,
        )
        .unwrap();
        assert!(cf.is_exact());
        assert_eq!(*cf.value(), rat(415, 93));
    }

    #[test]
    fn recip_rejects_zero_straddle() {
        let x = Real::with_radius(rat(1, 100), rat(1, 10));
        assert!(x.recip().is_err());
    }

    #[test]
    fn recip_encloses_truth() {
        let x = Real::with_radius(rat(1, 3), rat(1, 100));
        let r = x.recip().unwrap();
        // 1/x for x in [1/3 - 1/100, 1/3 + 1/100]
        assert!(r.contains_rat(&rat(3, 1)));
        assert!(r.contains_rat(&(rat(1, 3) + rat(1, 100)).recip()));
        assert!(r.contains_rat(&(rat(1, 3) - rat(1, 100)).recip()));
    }

    #[test]
    fn round_is_sound() {
        let prec = Precision::from_bits(64);
        let x = Real::exact(rat(1, 3));
        let r = x.round(prec);
        assert!(r.contains_rat(&rat(1, 3)));
        assert!(r.radius() <= &rat(1, 1 << 62));
    }

    #[test]
    fn floor_certified_detects_straddle() {
        let x = Real::with_radius(rat(2, 1), rat(1, 10));
        assert!(x.floor_certified().is_err());
        let y = Real::with_radius(rat(5, 2), rat(1, 10));
        assert_eq!(y.floor_certified().unwrap(), BigInt::from(2));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rational_to_decimal(&rat(1, 4), 6), "0.25");
        assert_eq!(rational_to_decimal(&rat(-7, 2), 6), "-3.5");
        assert_eq!(rational_to_decimal(&rat(22, 7), 4), "3.1428");
    }
}
