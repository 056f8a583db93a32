//! Internal fixed-point ball arithmetic on the dyadic grid `Z · 2^-S`.
//!
//! `BigRational` reduces through a gcd on every operation, which is two to
//! three orders of magnitude slower than the underlying integer multiply at
//! our working sizes. The series kernels and long product loops therefore
//! run on this representation: a mantissa integer `m` (value `m · 2^-S`) and
//! a radius in ulps. All rounding is outward by at least the stated slack.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{isqrt_floor, Real};
use crate::error::{Error, Result};

/// Fixed-point context: the shared scale exponent.
#[derive(Copy, Clone, Debug)]
pub(crate) struct FxCtx {
    pub bits: u32,
}

/// Ball `m·2^-S ± r·2^-S` in the context's scale `S`.
#[derive(Clone, Debug)]
pub(crate) struct Fx {
    pub m: BigInt,
    pub r: BigInt,
}

/// Round-half-up shift; error at most one ulp of the result.
fn shift_round(x: &BigInt, s: u32) -> BigInt {
    (x + (BigInt::one() << (s - 1))) >> s
}

/// Shift with ceiling for non-negative quantities.
fn shift_ceil(x: &BigInt, s: u32) -> BigInt {
    debug_assert!(!x.is_negative());
    (x + ((BigInt::one() << s) - BigInt::one())) >> s
}

impl FxCtx {
    pub fn new(bits: u32) -> Self {
        FxCtx { bits }
    }

    pub fn from_real(&self, x: &Real) -> Fx {
        let num = x.value().numer();
        let den = x.value().denom();
        debug_assert!(den.is_positive());
        let scaled = (num << (self.bits + 1)) / den;
        let m = shift_round(&scaled, 1);
        let rn = x.radius().numer();
        let rd = x.radius().denom();
        let r = ((rn << self.bits) + rd - BigInt::one()) / rd + BigInt::from(2);
        Fx { m, r }
    }

    pub fn from_i64(&self, v: i64) -> Fx {
        Fx {
            m: BigInt::from(v) << self.bits,
            r: BigInt::zero(),
        }
    }

    pub fn to_real(&self, f: &Fx) -> Real {
        let denom = BigInt::one() << self.bits;
        Real::with_radius(
            BigRational::new_raw(f.m.clone(), denom.clone()),
            BigRational::new_raw(f.r.clone(), denom),
        )
    }

    pub fn zero(&self) -> Fx {
        Fx {
            m: BigInt::zero(),
            r: BigInt::zero(),
        }
    }

    pub fn add(&self, a: &Fx, b: &Fx) -> Fx {
        Fx {
            m: &a.m + &b.m,
            r: &a.r + &b.r,
        }
    }

    pub fn sub(&self, a: &Fx, b: &Fx) -> Fx {
        Fx {
            m: &a.m - &b.m,
            r: &a.r + &b.r,
        }
    }

    pub fn neg(&self, a: &Fx) -> Fx {
        Fx {
            m: -&a.m,
            r: a.r.clone(),
        }
    }

    pub fn mul(&self, a: &Fx, b: &Fx) -> Fx {
        let m = shift_round(&(&a.m * &b.m), self.bits);
        let cross = a.m.abs() * &b.r + b.m.abs() * &a.r + shift_ceil(&(&a.r * &b.r), self.bits);
        let r = shift_ceil(&cross, self.bits) + BigInt::from(2);
        Fx { m, r }
    }

    /// Exact scaling by a machine integer.
    pub fn mul_i64(&self, a: &Fx, k: i64) -> Fx {
        Fx {
            m: &a.m * k,
            r: &a.r * k.unsigned_abs(),
        }
    }

    /// Division by a positive machine integer; one ulp of rounding slack.
    pub fn div_u64(&self, a: &Fx, k: u64) -> Fx {
        debug_assert!(k > 0);
        let kk = BigInt::from(k);
        let m = shift_round(&((&a.m << 1) / &kk), 1);
        let r = &a.r / kk + BigInt::from(2);
        Fx { m, r }
    }

    /// Reciprocal; requires the ball to exclude zero.
    pub fn recip(&self, a: &Fx) -> Result<Fx> {
        let am = a.m.abs();
        if am <= a.r {
            return Err(Error::Precision(
                "fixed-point reciprocal of a ball containing zero".into(),
            ));
        }
        let one_scaled = BigInt::one() << (2 * self.bits);
        let m = {
            let q = (&one_scaled << 1) / &a.m;
            shift_round(&q, 1)
        };
        // true radius in ulps: r·2^{2S} / (|m| (|m| - r)), outward
        let denom = &am * (&am - &a.r);
        let r = (&a.r * &one_scaled + &denom - BigInt::one()) / denom + BigInt::from(2);
        Ok(Fx { m, r })
    }

    pub fn div(&self, a: &Fx, b: &Fx) -> Result<Fx> {
        Ok(self.mul(a, &self.recip(b)?))
    }

    /// Certified square root via integer square roots of the endpoint
    /// mantissas. Negative dips of the enclosure are clamped at zero; a
    /// certainly negative ball is an error.
    pub fn sqrt(&self, a: &Fx) -> Result<Fx> {
        let hi = &a.m + &a.r;
        if hi.is_negative() {
            return Err(Error::Precision("sqrt of a certainly negative ball".into()));
        }
        let lo = &a.m - &a.r;
        let lo = if lo.is_negative() { BigInt::zero() } else { lo };
        let lo_mag = lo.magnitude() << self.bits;
        let hi_mag = hi.magnitude() << self.bits;
        let s_lo = BigInt::from(isqrt_floor(&lo_mag));
        let s_hi = BigInt::from(isqrt_floor(&hi_mag)) + BigInt::one();
        let m = shift_round(&(&s_lo + &s_hi), 1);
        let r = shift_ceil(&(&s_hi - &s_lo), 1) + BigInt::from(2);
        Ok(Fx { m, r })
    }

    /// Number of significant bits of the midpoint magnitude.
    pub fn mag_bits(&self, a: &Fx) -> u64 {
        a.m.bits()
    }

    /// Lower bound of |ball| in ulps (zero if it straddles).
    pub fn abs_lo_ulps(&self, a: &Fx) -> BigInt {
        let lo = a.m.abs() - &a.r;
        if lo.is_negative() {
            BigInt::zero()
        } else {
            lo
        }
    }

    /// Upper bound of |ball| in ulps.
    pub fn abs_hi_ulps(&self, a: &Fx) -> BigInt {
        a.m.abs() + &a.r
    }
}

/// Complex fixed-point ball: a disc of radius `r` ulps around the center
/// `(re + i·im)·2^-S`.
///
/// A single disc radius is essential for long rotation chains: with
/// component-wise radii every complex multiply adds the two cross terms into
/// each component, doubling the error per step, while the disc recurrence
/// `r' = |w| r_z + |z| r_w + r_z r_w` stays linear when `|w| ≈ 1`.
#[derive(Clone, Debug)]
pub(crate) struct FxComplex {
    pub re: BigInt,
    pub im: BigInt,
    pub r: BigInt,
}

impl FxComplex {
    pub fn new(re: Fx, im: Fx) -> Self {
        FxComplex {
            re: re.m,
            im: im.m,
            r: re.r + im.r + BigInt::one(),
        }
    }

    /// Upper bound of the center modulus in ulps (ℓ1 over-estimate).
    fn center_hi_ulps(&self) -> BigInt {
        self.re.abs() + self.im.abs()
    }

    pub fn mul(&self, o: &FxComplex, ctx: &FxCtx) -> FxComplex {
        let s = ctx.bits;
        let re = shift_round(&(&self.re * &o.re - &self.im * &o.im), s);
        let im = shift_round(&(&self.re * &o.im + &self.im * &o.re), s);
        // r' = |z| r_w + |w| r_z + r_z r_w (ulps), plus rounding slack
        let cross = self.center_hi_ulps() * &o.r
            + o.center_hi_ulps() * &self.r
            + shift_ceil(&(&self.r * &o.r), s);
        let r = shift_ceil(&cross, s) + BigInt::from(4);
        FxComplex { re, im, r }
    }

    pub fn add(&self, o: &FxComplex, _ctx: &FxCtx) -> FxComplex {
        FxComplex {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
            r: &self.r + &o.r,
        }
    }

    pub fn conj(&self) -> FxComplex {
        FxComplex {
            re: self.re.clone(),
            im: -&self.im,
            r: self.r.clone(),
        }
    }

    /// `|z|²` as a real ball.
    pub fn abs_sq(&self, ctx: &FxCtx) -> Fx {
        let s = ctx.bits;
        let m = shift_round(&(&self.re * &self.re + &self.im * &self.im), s);
        // |(z+e)|² - |z|² bounded by 2|z| r + r²
        let err = BigInt::from(2) * self.center_hi_ulps() * &self.r + &self.r * &self.r;
        let r = shift_ceil(&err, s) + BigInt::from(4);
        Fx { m, r }
    }

    /// Certified modulus. The center modulus is `isqrt(re² + im²)` exactly
    /// at the working scale; the disc radius bounds the rest.
    pub fn abs(&self, _ctx: &FxCtx) -> Result<Fx> {
        let sq = &self.re * &self.re + &self.im * &self.im;
        let root = BigInt::from(isqrt_floor(sq.magnitude()));
        Ok(Fx {
            m: root,
            r: &self.r + BigInt::from(2),
        })
    }

    /// Largest component magnitude in bits (for renormalization decisions).
    pub fn mag_bits(&self) -> u64 {
        self.re.bits().max(self.im.bits())
    }

    pub fn scale_pow2(&self, shift: i64) -> FxComplex {
        let sh = |x: &BigInt| -> BigInt {
            if shift >= 0 {
                x << shift as u64
            } else {
                x >> (-shift) as u64
            }
        };
        let r = if shift >= 0 {
            &self.r << shift as u64
        } else {
            (&self.r >> (-shift) as u64) + BigInt::from(2)
        };
        FxComplex {
            re: sh(&self.re),
            im: sh(&self.im),
            r,
        }
    }

    pub fn re_ball(&self) -> Fx {
        Fx {
            m: self.re.clone(),
            r: self.r.clone(),
        }
    }

    pub fn im_ball(&self) -> Fx {
        Fx {
            m: self.im.clone(),
            r: self.r.clone(),
        }
    }
}
