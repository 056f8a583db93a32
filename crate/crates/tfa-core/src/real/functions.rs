//! Certified elementary functions on balls: sqrt, exp, ln, the circle
//! functions `sin(2πx)`/`cos(2πx)`, and inverse tangent in turns.
//!
//! Every kernel returns an enclosure of the true value. The series run on
//! the internal fixed-point representation ([`super::fixed`]) at a guarded
//! working precision; truncation remainders are absorbed into the radius
//! explicitly, in ulps.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::fixed::{Fx, FxCtx};
use super::{sqrt_rational, Real};
use crate::error::{Error, Result};
use crate::precision::Precision;

const GUARD: u32 = 32;

/// Stop a series once the term midpoint is this many ulps or smaller.
const STOP_ULP_BITS: u64 = 16;

fn working(prec: Precision) -> Precision {
    Precision::from_bits(prec.bits() + GUARD)
}

fn rat_i(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Tail slack in ulps once a term passed the stop test.
fn tail_ulps(ctx: &FxCtx, term: &Fx) -> BigInt {
    ctx.abs_hi_ulps(term) + (BigInt::one() << STOP_ULP_BITS)
}

// ---------------------------------------------------------------------------
// cached constants
// ---------------------------------------------------------------------------

#[derive(Copy, Clone, PartialEq, Eq, Hash)]
enum Const {
    Pi,
    Ln2,
}

fn const_cache() -> &'static Mutex<HashMap<(Const, u32), Real>> {
    static CACHE: OnceLock<Mutex<HashMap<(Const, u32), Real>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached_const(which: Const, prec: Precision, compute: fn(u32) -> Real) -> Real {
    let key = (which, prec.bits());
    if let Some(v) = const_cache().lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = compute(prec.bits());
    const_cache().lock().unwrap().insert(key, v.clone());
    v
}

/// Integer-scaled arctangent of `1/m`: returns `(sum, error_units)` with
/// `atan(1/m) = sum / 2^shift ± error_units / 2^shift`.
fn atan_inv_scaled(m: u64, shift: u32) -> (BigInt, u64) {
    let m2 = BigInt::from(m) * BigInt::from(m);
    let mut term = (BigInt::one() << shift) / BigInt::from(m);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    let mut terms: u64 = 0;
    loop {
        let contrib = &term / BigInt::from(2 * k + 1);
        if contrib.is_zero() {
            break;
        }
        if k % 2 == 0 {
            sum += contrib;
        } else {
            sum -= contrib;
        }
        term /= &m2;
        k += 1;
        terms += 1;
    }
    // one unit of floor error per term plus truncation slack
    (sum, terms + 2)
}

fn compute_pi(bits: u32) -> Real {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    let shift = bits + 24;
    let (a5, e5) = atan_inv_scaled(5, shift);
    let (a239, e239) = atan_inv_scaled(239, shift);
    let num = BigInt::from(16) * a5 - BigInt::from(4) * a239;
    let err = BigInt::from(16 * e5 + 4 * e239);
    let denom = BigInt::one() << shift;
    Real::with_radius(
        BigRational::new(num, denom.clone()),
        BigRational::new(err, denom),
    )
}

fn compute_ln2(bits: u32) -> Real {
    // ln 2 = 2 atanh(1/3)
    let shift = bits + 24;
    let mut term = (BigInt::one() << shift) / BigInt::from(3);
    let nine = BigInt::from(9);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    let mut terms: u64 = 0;
    loop {
        let contrib = &term / BigInt::from(2 * k + 1);
        if contrib.is_zero() {
            break;
        }
        sum += contrib;
        term /= &nine;
        k += 1;
        terms += 1;
    }
    let denom = BigInt::one() << shift;
    Real::with_radius(
        BigRational::new(BigInt::from(2) * sum, denom.clone()),
        BigRational::new(BigInt::from(2 * (terms + 2)), denom),
    )
}

pub fn pi(prec: Precision) -> Real {
    cached_const(Const::Pi, working(prec), compute_pi)
}

pub fn ln2(prec: Precision) -> Real {
    cached_const(Const::Ln2, working(prec), compute_ln2)
}

/// π in a fixed-point context (cached per scale).
pub(crate) fn pi_fx(ctx: &FxCtx) -> Fx {
    static CACHE: OnceLock<Mutex<HashMap<u32, (BigInt, BigInt)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some((m, r)) = cache.lock().unwrap().get(&ctx.bits) {
        return Fx {
            m: m.clone(),
            r: r.clone(),
        };
    }
    let p = ctx.from_real(&compute_pi(ctx.bits));
    cache
        .lock()
        .unwrap()
        .insert(ctx.bits, (p.m.clone(), p.r.clone()));
    p
}

// ---------------------------------------------------------------------------
// sqrt
// ---------------------------------------------------------------------------

/// Certified square root. Negative dips of the enclosure below zero are
/// clamped (quantities like `re^2 + im^2` may verge on zero from above); a
/// certainly-negative input is an error.
pub fn sqrt(x: &Real, prec: Precision) -> Result<Real> {
    let hi = x.hi();
    if hi.is_negative() {
        return Err(Error::Precision("sqrt of a certainly negative ball".into()));
    }
    let lo = x.lo();
    let lo = if lo.is_negative() { BigRational::zero() } else { lo };
    let wp = working(prec);
    let lo_root = sqrt_rational(&lo, wp)?;
    let hi_root = sqrt_rational(&hi, wp)?;
    Ok(Real::from_bounds(lo_root.lo(), hi_root.hi()))
}

// ---------------------------------------------------------------------------
// exp and ln
// ---------------------------------------------------------------------------

/// `e^r` for a fixed-point ball with `|r| <= 2/5`.
pub(crate) fn exp_reduced_fx(ctx: &FxCtx, r: &Fx) -> Fx {
    let mut term = ctx.from_i64(1);
    let mut sum = ctx.from_i64(1);
    let mut j: u64 = 1;
    loop {
        term = ctx.div_u64(&ctx.mul(&term, r), j);
        sum = ctx.add(&sum, &term);
        if ctx.mag_bits(&term) <= STOP_ULP_BITS {
            // tail <= |term| |r| / (1 - |r|) <= |term| for |r| <= 2/5
            sum.r += tail_ulps(ctx, &term);
            return sum;
        }
        j += 1;
    }
}

/// Certified `e^x`.
pub fn exp(x: &Real, prec: Precision) -> Result<Real> {
    let wp = working(prec);
    if x.value().abs() > rat_i(1 << 30, 1) {
        return Err(Error::Precision("exp argument magnitude too large".into()));
    }
    let l2 = ln2(wp);
    let k = (x.value() / l2.value() + rat_i(1, 2)).floor().to_integer();
    let r = x.sub(&l2.mul_rat(&BigRational::from_integer(k.clone())));
    if r.abs().hi() > rat_i(2, 5) {
        return Err(Error::Internal("exp range reduction failed".into()));
    }
    let ctx = FxCtx::new(wp.bits());
    let sum = exp_reduced_fx(&ctx, &ctx.from_real(&r));
    let out = ctx.to_real(&sum);
    use num_traits::ToPrimitive;
    let k_small = k
        .to_i64()
        .filter(|v| v.unsigned_abs() < 1 << 24)
        .ok_or_else(|| Error::Precision("exp result exponent too large to represent".into()))?;
    let scale = if k_small >= 0 {
        BigRational::from_integer(BigInt::one() << k_small as u64)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-k_small) as u64)
    };
    Ok(out.mul_rat(&scale).round(prec))
}

/// atanh-series log of a mantissa ball near 1 plus `e · ln 2`, fixed-point.
/// Requires `m` within `[1/2, 3/2]`-ish so that `|y| <= 1/3`.
fn ln_near_one_fx(ctx: &FxCtx, m: &Fx) -> Result<Fx> {
    let one = ctx.from_i64(1);
    let num = ctx.sub(m, &one);
    let den = ctx.add(m, &one);
    let y = ctx.div(&num, &den)?;
    let y2 = ctx.mul(&y, &y);
    let mut term = y.clone();
    let mut sum = y.clone();
    let mut k: u64 = 1;
    loop {
        term = ctx.mul(&term, &y2);
        let contrib = ctx.div_u64(&term, 2 * k + 1);
        sum = ctx.add(&sum, &contrib);
        if ctx.mag_bits(&contrib) <= STOP_ULP_BITS {
            sum.r += tail_ulps(ctx, &contrib);
            return Ok(ctx.mul_i64(&sum, 2));
        }
        k += 1;
        if k > 1_000_000 {
            return Err(Error::Internal("ln series failed to converge".into()));
        }
    }
}

/// Certified natural logarithm; the ball must be certainly positive.
pub fn ln(x: &Real, prec: Precision) -> Result<Real> {
    let lo = x.lo();
    if !lo.is_positive() {
        return Err(Error::Precision("ln of a ball touching zero".into()));
    }
    let wp = working(prec);
    let v = x.value().clone();
    // normalize v = m * 2^e with m in [2/3, 4/3]
    let mut e: i64 = (v.numer().bits() as i64) - (v.denom().bits() as i64);
    let two = rat_i(2, 1);
    let mut m = if e >= 0 {
        &v / BigRational::from_integer(BigInt::one() << e as u64)
    } else {
        &v * BigRational::from_integer(BigInt::one() << (-e) as u64)
    };
    while m > rat_i(4, 3) {
        m /= &two;
        e += 1;
    }
    while m < rat_i(2, 3) {
        m *= &two;
        e -= 1;
    }
    let ctx = FxCtx::new(wp.bits());
    let ln_m = ln_near_one_fx(&ctx, &ctx.from_real(&Real::exact(m)))?;
    let result = ctx
        .to_real(&ln_m)
        .add(&ln2(wp).mul_rat(&BigRational::from_integer(BigInt::from(e))));
    // input radius: |ln x - ln v| <= r / lo
    let extra = x.radius() / &lo;
    Ok(Real::with_radius(result.value().clone(), result.radius() + extra).round(prec))
}

/// Certified `ln n` for a positive integer.
pub fn ln_big_int(n: &BigInt, prec: Precision) -> Result<Real> {
    if !n.is_positive() {
        return Err(Error::Precision("ln of a non-positive integer".into()));
    }
    ln(&Real::exact(BigRational::from_integer(n.clone())), prec)
}

// ---------------------------------------------------------------------------
// circle functions
// ---------------------------------------------------------------------------

/// Argument reduced to `[-1/2, 1/2]` by subtracting the nearest integer;
/// exact because the circle functions have period 1.
fn reduce_turns(x: &Real) -> Real {
    let n = x.nearest_int();
    x.add_rat(&BigRational::from_integer(-n))
}

/// Alternating sin series on a fixed-point ball (radians, |t| <= ~0.9).
pub(crate) fn sin_kernel_fx(ctx: &FxCtx, t: &Fx) -> Fx {
    let t2 = ctx.mul(t, t);
    let mut term = t.clone();
    let mut sum = t.clone();
    let mut k: u64 = 0;
    loop {
        term = ctx.neg(&ctx.div_u64(&ctx.mul(&term, &t2), (2 * k + 2) * (2 * k + 3)));
        sum = ctx.add(&sum, &term);
        if ctx.mag_bits(&term) <= STOP_ULP_BITS {
            // alternating, decreasing: remainder <= next term
            sum.r += tail_ulps(ctx, &term);
            return sum;
        }
        k += 1;
    }
}

pub(crate) fn cos_kernel_fx(ctx: &FxCtx, t: &Fx) -> Fx {
    let t2 = ctx.mul(t, t);
    let mut term = ctx.from_i64(1);
    let mut sum = ctx.from_i64(1);
    let mut k: u64 = 0;
    loop {
        term = ctx.neg(&ctx.div_u64(&ctx.mul(&term, &t2), (2 * k + 1) * (2 * k + 2)));
        sum = ctx.add(&sum, &term);
        if ctx.mag_bits(&term) <= STOP_ULP_BITS {
            sum.r += tail_ulps(ctx, &term);
            return sum;
        }
        k += 1;
    }
}

/// `(sin 2πx, cos 2πx)` in fixed point for a reduced ball `s` (turns,
/// `|s| <= 1/2` and narrow). The quadrant identities hold globally, so the
/// branch may be chosen by the midpoint.
pub(crate) fn sincos2pi_fx(ctx: &FxCtx, s: &Fx) -> (Fx, Fx) {
    let quarter = BigInt::one() << (ctx.bits - 2);
    let eighth = BigInt::one() << (ctx.bits - 3);
    let three_eighth = &quarter + &eighth;
    let (arg, which) = if s.m.abs() <= eighth {
        (s.clone(), 0u8) // sin = sin_k, cos = cos_k
    } else if s.m > three_eighth {
        (
            Fx {
                m: &s.m - (BigInt::one() << (ctx.bits - 1)),
                r: s.r.clone(),
            },
            1,
        ) // sin = -sin_k, cos = -cos_k
    } else if s.m > eighth {
        (
            Fx {
                m: &s.m - &quarter,
                r: s.r.clone(),
            },
            2,
        ) // sin = cos_k, cos = -sin_k
    } else if s.m < -&three_eighth {
        (
            Fx {
                m: &s.m + (BigInt::one() << (ctx.bits - 1)),
                r: s.r.clone(),
            },
            1,
        )
    } else {
        (
            Fx {
                m: &s.m + &quarter,
                r: s.r.clone(),
            },
            3,
        ) // sin = -cos_k, cos = sin_k
    };
    let theta = ctx.mul_i64(&ctx.mul(&arg, &pi_fx(ctx)), 2);
    let sk = sin_kernel_fx(ctx, &theta);
    let ck = cos_kernel_fx(ctx, &theta);
    match which {
        0 => (sk, ck),
        1 => (ctx.neg(&sk), ctx.neg(&ck)),
        2 => (ck, ctx.neg(&sk)),
        _ => (ctx.neg(&ck), sk),
    }
}

fn sincos2pi_impl(x: &Real, prec: Precision) -> (Real, Real) {
    let wp = working(prec);
    let s = reduce_turns(x);
    if s.radius() > &rat_i(1, 16) {
        // wide ball: the trivial enclosure is the best cheap answer
        let unit = Real::with_radius(BigRational::zero(), BigRational::one());
        return (unit.clone(), unit);
    }
    let ctx = FxCtx::new(wp.bits());
    let (sin, cos) = sincos2pi_fx(&ctx, &ctx.from_real(&s));
    (ctx.to_real(&sin), ctx.to_real(&cos))
}

pub fn sin2pi(x: &Real, prec: Precision) -> Real {
    sincos2pi_impl(x, prec).0
}

pub fn cos2pi(x: &Real, prec: Precision) -> Real {
    sincos2pi_impl(x, prec).1
}

/// Both circle functions at once (shares the reduction).
pub fn sincos2pi(x: &Real, prec: Precision) -> (Real, Real) {
    sincos2pi_impl(x, prec)
}

// ---------------------------------------------------------------------------
// inverse tangent, in turns
// ---------------------------------------------------------------------------

/// atan on a fixed-point ball, radians, for |z| bounded by ~1.1.
fn atan_kernel_fx(ctx: &FxCtx, z: &Fx) -> Result<Fx> {
    // two halvings: atan z = 4 atan(z / (1 + sqrt(1 + z^2)))∘2
    let one = ctx.from_i64(1);
    let mut cur = z.clone();
    for _ in 0..2 {
        let denom = ctx.add(&one, &ctx.sqrt(&ctx.add(&one, &ctx.mul(&cur, &cur)))?);
        cur = ctx.div(&cur, &denom)?;
    }
    let z2 = ctx.mul(&cur, &cur);
    let mut term = cur.clone();
    let mut sum = cur.clone();
    let mut k: u64 = 1;
    loop {
        term = ctx.neg(&ctx.mul(&term, &z2));
        let contrib = ctx.div_u64(&term, 2 * k + 1);
        sum = ctx.add(&sum, &contrib);
        if ctx.mag_bits(&contrib) <= STOP_ULP_BITS {
            sum.r += tail_ulps(ctx, &contrib);
            return Ok(ctx.mul_i64(&sum, 4));
        }
        k += 1;
        if k > 1_000_000 {
            return Err(Error::Internal("atan series failed to converge".into()));
        }
    }
}

/// Angle of the vector `(x, y)` in turns, in `(-1/2, 1/2]`.
///
/// Requires at least one coordinate certainly nonzero; near the negative
/// real axis the sign of `y` must also be certified because the turns
/// representation wraps there.
pub fn atan2_turns(y: &Real, x: &Real, prec: Precision) -> Result<Real> {
    let wp = working(prec);
    let x_sign = x.sign_certified();
    let y_sign = y.sign_certified();

    // exact-axis fast paths
    if y.is_exact() && y.value().is_zero() {
        return match x_sign {
            Some(Sign::Plus) => Ok(Real::zero()),
            Some(Sign::Minus) => Ok(Real::from_ratio(1, 2)),
            _ => Err(Error::Ambiguous("atan2 of the zero vector".into())),
        };
    }
    if x.is_exact() && x.value().is_zero() {
        return match y_sign {
            Some(Sign::Plus) => Ok(Real::from_ratio(1, 4)),
            Some(Sign::Minus) => Ok(Real::from_ratio(-1, 4)),
            _ => Err(Error::Ambiguous("atan2 of the zero vector".into())),
        };
    }

    let ctx = FxCtx::new(wp.bits());
    let fx_x = ctx.from_real(x);
    let fx_y = ctx.from_real(y);
    let two_pi = ctx.mul_i64(&pi_fx(&ctx), 2);

    let prefer_tan = x.value().abs() >= y.value().abs();
    let x_nonzero = matches!(x_sign, Some(Sign::Plus) | Some(Sign::Minus));
    let y_nonzero = matches!(y_sign, Some(Sign::Plus) | Some(Sign::Minus));

    let out = if x_nonzero && (prefer_tan || !y_nonzero) {
        let t = ctx.div(&atan_kernel_fx(&ctx, &ctx.div(&fx_y, &fx_x)?)?, &two_pi)?;
        let t = ctx.to_real(&t);
        match x_sign.unwrap() {
            Sign::Plus => t,
            _ => match y_sign {
                Some(Sign::Plus) => t.add_rat(&rat_i(1, 2)),
                Some(Sign::Minus) => t.add_rat(&rat_i(-1, 2)),
                _ => {
                    return Err(Error::Ambiguous(
                        "atan2 near the negative real axis needs the sign of y".into(),
                    ))
                }
            },
        }
    } else if y_nonzero {
        let t = ctx.div(&atan_kernel_fx(&ctx, &ctx.div(&fx_x, &fx_y)?)?, &two_pi)?;
        let t = ctx.to_real(&t);
        match y_sign.unwrap() {
            Sign::Plus => Real::from_ratio(1, 4).sub(&t),
            _ => Real::from_ratio(-1, 4).sub(&t),
        }
    } else {
        return Err(Error::Ambiguous(
            "atan2 needs one coordinate certified nonzero".into(),
        ));
    };
    Ok(out.round(prec))
}

/// Inverse cosine in turns, in `[0, 1/2]`, for `|c| <= 1`.
pub fn acos_turns(c: &Real, prec: Precision) -> Result<Real> {
    let wp = working(prec);
    let one_minus = Real::one().sub(&c.square());
    let s = sqrt(&one_minus, wp)?;
    atan2_turns(&s, c, prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        rat_i(n, d)
    }

    /// Exact rational value of a decimal string like "3.14159".
    fn dec(s: &str) -> BigRational {
        let (int_part, frac_part) = s.split_once('.').unwrap_or((s, ""));
        let mut v = BigRational::from_integer(int_part.parse::<BigInt>().unwrap());
        if !frac_part.is_empty() {
            let f: BigInt = frac_part.parse().unwrap();
            let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
            v += BigRational::new(f, scale);
        }
        v
    }

    fn close_to(x: &Real, target: &BigRational, tol_num: i64, tol_den_pow10: u32) {
        let tol = rat(tol_num, 1) / rat(10, 1).pow(tol_den_pow10 as i32);
        let lo = target - &tol;
        let hi = target + &tol;
        assert!(
            x.lo() >= lo && x.hi() <= hi,
            "value {} not within {} of {}",
            x,
            tol,
            target
        );
    }

    #[test]
    fn pi_matches_reference() {
        let p = Precision::from_digits(50);
        let v = pi(p);
        let reference = dec("3.14159265358979323846264338327950288419716939937510");
        close_to(&v, &reference, 1, 45);
    }

    #[test]
    fn ln2_matches_reference() {
        let p = Precision::from_digits(50);
        let v = ln2(p);
        let reference = dec("0.69314718055994530941723212145817656807550013436026");
        close_to(&v, &reference, 1, 45);
    }

    #[test]
    fn sincos_known_points() {
        let p = Precision::from_digits(60);
        // sin(2π/12) = 1/2, cos(2π/12) = sqrt(3)/2
        let x = Real::from_ratio(1, 12);
        let (s, c) = sincos2pi(&x, p);
        close_to(&s, &rat(1, 2), 1, 55);
        let c2 = c.square();
        assert!(c2.contains_rat(&rat(3, 4)));
        // sin(2π·1/4) = 1, cos = 0
        let (s, c) = sincos2pi(&Real::from_ratio(1, 4), p);
        close_to(&s, &rat(1, 1), 1, 55);
        close_to(&c, &rat(0, 1), 1, 55);
        // periodicity: x and x+3 agree
        let (s1, _) = sincos2pi(&Real::from_ratio(2, 7), p);
        let (s2, _) = sincos2pi(&Real::from_ratio(2 + 21, 7), p);
        let d = s1.sub(&s2);
        assert!(d.contains_zero());
    }

    #[test]
    fn pythagorean_identity_random_points() {
        let p = Precision::from_digits(40);
        for k in 1..40i64 {
            let x = Real::from_ratio(3 * k + 1, 97);
            let (s, c) = sincos2pi(&x, p);
            let sum = s.square().add(&c.square());
            assert!(sum.contains_rat(&rat(1, 1)), "failed at k={k}");
            assert!(sum.radius() < &rat(1, 10).pow(30));
        }
    }

    #[test]
    fn exp_ln_round_trip() {
        let p = Precision::from_digits(50);
        let x = Real::from_ratio(7, 3);
        let e = exp(&x, p).unwrap();
        let back = ln(&e, p).unwrap();
        let d = back.sub(&x);
        assert!(d.contains_zero());
        assert!(d.radius() < &rat(1, 10).pow(40));
        // exp(ln 2) = 2
        let l = ln(&Real::from_int(2), p).unwrap();
        let two = exp(&l, p).unwrap();
        assert!(two.contains_rat(&rat(2, 1)));
    }

    #[test]
    fn exp_handles_negative_and_large() {
        let p = Precision::from_digits(30);
        let e = exp(&Real::from_int(-20), p).unwrap();
        assert!(e.lo().is_positive());
        assert!(e.hi() < rat(1, 100_000_000));
        let big = exp(&Real::from_int(30), p).unwrap();
        assert!(big.lo() > rat(10_000_000_000, 1));
    }

    #[test]
    fn ln_of_integer_growth() {
        let p = Precision::from_digits(30);
        let a = ln_big_int(&BigInt::from(8), p).unwrap();
        let three_ln2 = ln2(p).mul_rat(&rat(3, 1));
        let d = a.sub(&three_ln2);
        assert!(d.contains_zero());
    }

    #[test]
    fn atan2_quadrants() {
        let p = Precision::from_digits(40);
        let one = Real::one();
        let neg = Real::from_int(-1);
        // (1,1) -> 1/8 turn
        let t = atan2_turns(&one, &one, p).unwrap();
        close_to(&t, &rat(1, 8), 1, 35);
        // (1,-1) -> 3/8 turn
        let t = atan2_turns(&one, &neg, p).unwrap();
        close_to(&t, &rat(3, 8), 1, 35);
        // (-1,-1) -> -3/8 turn
        let t = atan2_turns(&neg, &neg, p).unwrap();
        close_to(&t, &rat(-3, 8), 1, 35);
        // axes
        let t = atan2_turns(&Real::zero(), &neg, p).unwrap();
        close_to(&t, &rat(1, 2), 1, 35);
        let t = atan2_turns(&neg, &Real::zero(), p).unwrap();
        close_to(&t, &rat(-1, 4), 1, 35);
    }

    #[test]
    fn acos_known_values() {
        let p = Precision::from_digits(40);
        let t = acos_turns(&Real::from_ratio(-1, 2), p).unwrap();
        close_to(&t, &rat(1, 3), 1, 35);
        let t = acos_turns(&Real::from_ratio(1, 2), p).unwrap();
        close_to(&t, &rat(1, 6), 1, 35);
        let t = acos_turns(&Real::one(), p).unwrap();
        close_to(&t, &rat(0, 1), 1, 35);
        let t = acos_turns(&Real::from_int(-1), p).unwrap();
        close_to(&t, &rat(1, 2), 1, 35);
    }

    #[test]
    fn sincos_consistency_with_atan2() {
        let p = Precision::from_digits(40);
        for k in [1i64, 2, 3, 5, 7, 11] {
            let x = Real::from_ratio(k, 23);
            let (s, c) = sincos2pi(&x, p);
            let back = atan2_turns(&s, &c, p).unwrap();
            let n = x.nearest_int();
            let reduced = x.add_rat(&BigRational::from_integer(-n));
            let d = back.sub(&reduced);
            assert!(d.contains_zero(), "k={k}");
        }
    }
}
