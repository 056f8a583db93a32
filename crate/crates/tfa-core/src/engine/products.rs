//! Long products of `P(x+j)` in log space, orbit traces, and reciprocal
//! sums over integer translates.
//!
//! The recursion `f(x+1) = f(x) P(x)` composes to `f(x+n) = f(x) ·
//! Π_{j=0}^{n-1} P(x+j)` and `f(x-n) = f(x) · (Π_{j=-n}^{-1} P(x+j))^{-1}`;
//! all products here take `count` factors `j = 0..count-1` so the recursion
//! identity telescopes exactly.
//!
//! Factors are evaluated incrementally: `e^{2πiα(x+j+1)}` is the previous
//! rotation times the fixed unit `e^{2πiα}`, one complex fixed-point multiply
//! per step instead of a fresh series evaluation. Magnitudes are accumulated
//! as a complex mantissa with a separate power-of-two exponent, so products
//! of`10^5` factors neither overflow nor lose the certified radius.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::precision::Precision;
use crate::real::fixed::{FxCtx, FxComplex};
use crate::real::{atan2_turns, ln2, Real};
use crate::trigpoly::TrigPoly;

const GUARD_BITS: u32 = 32;

/// Incremental evaluator of `P(x+j)` along integer translates.
pub(crate) struct TranslateScan {
    pub ctx: FxCtx,
    c0: FxComplex,
    c1: FxComplex,
    c2: FxComplex,
    za: FxComplex,
    zb: FxComplex,
    wa: FxComplex,
    wb: FxComplex,
}

fn unit_fx(ctx: &FxCtx, turns: &Real) -> Result<FxComplex> {
    // exact periodic reduction, then the fixed-point circle kernel
    let n = turns.nearest_int();
    let reduced = turns.add_rat(&BigRational::from_integer(-n));
    if reduced.radius() > &BigRational::new(BigInt::from(1), BigInt::from(16)) {
        return Err(Error::Precision(
            "rotation angle too wide for the circle kernel".into(),
        ));
    }
    let s = ctx.from_real(&reduced);
    let (sin, cos) = crate::real::functions::sincos2pi_fx(ctx, &s);
    Ok(FxComplex::new(cos, sin))
}

impl TranslateScan {
    pub fn new(poly: &TrigPoly, x: &Real, prec: Precision) -> Result<Self> {
        let ctx = FxCtx::new(prec.bits() + GUARD_BITS);
        let from_c = |c: &crate::real::Complex| {
            FxComplex::new(ctx.from_real(&c.re), ctx.from_real(&c.im))
        };
        Ok(TranslateScan {
            c0: from_c(&poly.c0),
            c1: from_c(&poly.c1),
            c2: from_c(&poly.c2),
            za: unit_fx(&ctx, &poly.alpha.mul(x))?,
            zb: unit_fx(&ctx, &poly.beta.mul(x))?,
            wa: unit_fx(&ctx, &poly.alpha)?,
            wb: unit_fx(&ctx, &poly.beta)?,
            ctx,
        })
    }

    /// `P(x+j)` at the current position.
    pub fn factor(&self) -> FxComplex {
        let t1 = self.c1.mul(&self.za, &self.ctx);
        let t2 = self.c2.mul(&self.zb, &self.ctx);
        self.c0.add(&t1, &self.ctx).add(&t2, &self.ctx)
    }

    pub fn step_forward(&mut self) {
        self.za = self.za.mul(&self.wa, &self.ctx);
        self.zb = self.zb.mul(&self.wb, &self.ctx);
    }

    pub fn step_backward(&mut self) {
        self.za = self.za.mul(&self.wa.conj(), &self.ctx);
        self.zb = self.zb.mul(&self.wb.conj(), &self.ctx);
    }
}

/// Complex accumulator with a separate power-of-two exponent.
struct NormalizedProduct {
    acc: FxComplex,
    exp2: i64,
    bits: u32,
}

impl NormalizedProduct {
    fn one(ctx: &FxCtx) -> Self {
        NormalizedProduct {
            acc: FxComplex::new(ctx.from_i64(1), ctx.from_i64(0)),
            exp2: 0,
            bits: ctx.bits,
        }
    }

    fn multiply(&mut self, f: &FxComplex, ctx: &FxCtx) {
        self.acc = self.acc.mul(f, ctx);
        let mag = self.acc.mag_bits();
        let target = self.bits as u64;
        if mag > target + 2 {
            let shift = (mag - target) as i64;
            self.acc = self.acc.scale_pow2(-shift);
            self.exp2 += shift;
        } else if mag > 0 && mag + 2 < target {
            let shift = (target - mag) as i64;
            self.acc = self.acc.scale_pow2(shift);
            self.exp2 -= shift;
        }
    }

    /// `log |acc · 2^exp2|` as a certified real.
    fn log_magnitude(&self, ctx: &FxCtx, prec: Precision) -> Result<Real> {
        let asq = self.acc.abs_sq(ctx);
        let asq_real = ctx.to_real(&asq);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let ln_m = crate::real::ln(&asq_real, prec)?.mul_rat(&half);
        let shift = ln2(prec).mul_rat(&BigRational::from_integer(BigInt::from(self.exp2)));
        Ok(ln_m.add(&shift).round(prec))
    }

    fn phase_turns(&self, ctx: &FxCtx, prec: Precision) -> Result<Real> {
        let re = ctx.to_real(&self.acc.re_ball());
        let im = ctx.to_real(&self.acc.im_ball());
        atan2_turns(&im, &re, prec)
    }
}

/// Result of a log-space product of `count` factors.
#[derive(Clone, Debug)]
pub struct ProductLog {
    pub count: u64,
    /// `Σ_{j<count} log |P(x+j)|`
    pub log_magnitude: Real,
    /// Wrapped phase of the product, in turns.
    pub phase_turns: Real,
    /// Indices whose factor could not be certified above the clamp floor;
    /// such factors contribute nothing to the accumulated log.
    pub clamp_events: Vec<u64>,
}

/// The clamp floor: a factor is an event when its modulus cannot be
/// certified to exceed this.
pub fn clamp_floor() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(10).pow(300))
}

fn factor_above_clamp(ctx: &FxCtx, f: &FxComplex, floor_sq_ulps: &BigInt) -> bool {
    let asq = f.abs_sq(ctx);
    ctx.abs_lo_ulps(&asq) > *floor_sq_ulps
}

fn floor_sq_ulps(ctx: &FxCtx) -> BigInt {
    // clamp floor squared, in ulps of the fixed-point grid; at least one ulp
    let f = clamp_floor();
    let fsq = &f * &f;
    let scaled = fsq * BigRational::from_integer(BigInt::from(1) << ctx.bits);
    let c = scaled.ceil().to_integer();
    if c.is_zero() {
        BigInt::from(1)
    } else {
        c
    }
}

/// `Σ_{j<count} log |P(x+j)|` plus the accumulated phase.
pub fn product_log(poly: &TrigPoly, x: &Real, count: u64, prec: Precision) -> Result<ProductLog> {
    let mut scan = TranslateScan::new(poly, x, prec)?;
    let ctx = scan.ctx;
    let floor_ulps = floor_sq_ulps(&ctx);
    let mut prod = NormalizedProduct::one(&ctx);
    let mut clamp_events = Vec::new();
    for j in 0..count {
        let f = scan.factor();
        if factor_above_clamp(&ctx, &f, &floor_ulps) {
            prod.multiply(&f, &ctx);
        } else {
            clamp_events.push(j);
        }
        scan.step_forward();
    }
    Ok(ProductLog {
        count,
        log_magnitude: prod.log_magnitude(&ctx, prec)?,
        phase_turns: prod.phase_turns(&ctx, prec)?,
        clamp_events,
    })
}

/// Certified `Σ_{j<count} 1/|P(x+j)|`; clamped factors are reported, not
/// summed.
pub fn translate_reciprocal_sum(
    poly: &TrigPoly,
    x: &Real,
    count: u64,
    prec: Precision,
) -> Result<(Real, Vec<u64>)> {
    let mut scan = TranslateScan::new(poly, x, prec)?;
    let ctx = scan.ctx;
    let floor_ulps = floor_sq_ulps(&ctx);
    let mut sum = ctx.zero();
    let mut clamp_events = Vec::new();
    for j in 0..count {
        let f = scan.factor();
        if factor_above_clamp(&ctx, &f, &floor_ulps) {
            let modulus = f.abs(&ctx)?;
            sum = ctx.add(&sum, &ctx.recip(&modulus)?);
        } else {
            clamp_events.push(j);
        }
        scan.step_forward();
    }
    Ok((ctx.to_real(&sum).round(prec), clamp_events))
}

/// One entry of an orbit trace.
#[derive(Clone, Debug)]
pub struct OrbitEntry {
    pub n: i64,
    /// `log |f(x+n)|` relative to `log |f(x)| = 0`.
    pub log_magnitude: Real,
    pub phase_turns: Real,
}

/// Two-sided orbit of the recursion, `n ∈ [-M, M]`.
#[derive(Clone, Debug)]
pub struct OrbitTrace {
    pub entries: Vec<OrbitEntry>,
}

impl OrbitTrace {
    pub fn entry(&self, n: i64) -> &OrbitEntry {
        let m = (self.entries.len() as i64 - 1) / 2;
        &self.entries[(n + m) as usize]
    }
}

/// Forward entries by multiplication, backward entries by division. A factor
/// below the clamp floor aborts with the offending index.
pub fn orbit(poly: &TrigPoly, x: &Real, m: u64, prec: Precision) -> Result<OrbitTrace> {
    let mut entries = Vec::with_capacity(2 * m as usize + 1);
    entries.push(OrbitEntry {
        n: 0,
        log_magnitude: Real::zero(),
        phase_turns: Real::zero(),
    });

    // forward: f(x+n) = f(x) Π_{j<n} P(x+j)
    let mut scan = TranslateScan::new(poly, x, prec)?;
    let ctx = scan.ctx;
    let floor_ulps = floor_sq_ulps(&ctx);
    let mut prod = NormalizedProduct::one(&ctx);
    for j in 0..m {
        let f = scan.factor();
        if !factor_above_clamp(&ctx, &f, &floor_ulps) {
            return Err(Error::Precision(format!(
                "factor at translate index {j} breaches the clamp floor"
            )));
        }
        prod.multiply(&f, &ctx);
        scan.step_forward();
        entries.push(OrbitEntry {
            n: j as i64 + 1,
            log_magnitude: prod.log_magnitude(&ctx, prec)?,
            phase_turns: prod.phase_turns(&ctx, prec)?,
        });
    }

    // backward: f(x-n) = f(x) (Π_{j=-n}^{-1} P(x+j))^{-1}
    let mut scan_b = TranslateScan::new(poly, x, prec)?;
    let mut prod_b = NormalizedProduct::one(&ctx);
    for j in 0..m {
        scan_b.step_backward();
        let f = scan_b.factor();
        if !factor_above_clamp(&ctx, &f, &floor_ulps) {
            return Err(Error::Precision(format!(
                "factor at translate index -{} breaches the clamp floor",
                j + 1
            )));
        }
        prod_b.multiply(&f, &ctx);
        entries.push(OrbitEntry {
            n: -(j as i64) - 1,
            log_magnitude: prod_b.log_magnitude(&ctx, prec)?.neg(),
            phase_turns: prod_b.phase_turns(&ctx, prec)?.neg(),
        });
    }

    entries.sort_by_key(|e| e.n);
    Ok(OrbitTrace { entries })
}

/// Certified `Σ 1/|P(x+j)|` restricted to an explicit index list.
#[cfg(test)]
pub(crate) fn reciprocal_sum_at_indices(
    poly: &TrigPoly,
    x: &Real,
    indices: &[u64],
    prec: Precision,
) -> Result<Real> {
    let mut sum = Real::zero();
    for &j in indices {
        let xj = x.add_rat(&BigRational::from_integer(BigInt::from(j)));
        let v = poly.eval(&xj, prec);
        let m = crate::real::sqrt(&v.abs_sq(), prec)?;
        sum = sum.add(&m.recip()?);
    }
    Ok(sum.round(prec))
}
