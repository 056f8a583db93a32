//! Reciprocal sums of `1/|P(x+n)|` over `n < Q` at an admissible scale `Q`,
//! with an exceptional set built from the zero geometry of the polynomial.
//!
//! `Q` must sit inside `[γ_lo q, γ_hi q]` for a convergent denominator `q`
//! of the frequency ratio. Each torus zero contributes one case, decided by
//! the certified sign of the discriminant `α + tβ`:
//!
//! - nonzero (shifted-lattice case): the linear term of the zero bound
//!   unfolds into the family `‖(α+tβ)x + y_s‖` over `O(Q)` explicit shifts;
//!   a scaled exceptional set caps its reciprocal sum by its construction
//!   threshold.
//! - zero (degenerate-ratio case): the linear term collapses onto multiples
//!   of the ratio; far terms obey the windowed reciprocal-sum bound with no
//!   exceptional set at all, while the `O(1)` near indices fall back to the
//!   quadratic term, protected by small balls around their solutions.
//!
//! The empirical floor constant of the zero bound converts the per-case
//! thresholds into a bound on `Σ 1/|P(x+n)|` itself; sampled sums outside
//! the set are reported against it with the fitted constant over `Q ln Q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circle;
use crate::contfrac::{expand, ContinuedFraction};
use crate::engine::products::translate_reciprocal_sum;
use crate::error::{Error, Result};
use crate::precision::Precision;
use crate::real::{ln_big_int, Real};
use crate::trigpoly::{find_torus_zeros, lower_bound_constant, TrigPoly, ZeroClass};

use super::exceptional::build_scaled_exceptional_set;
use super::gaps::window_bound;
use super::interval_union::IntervalUnion;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CaseKind {
    /// `α + tβ != 0`: shifted-lattice exceptional set.
    LinearShift,
    /// `α + tβ = 0`: windowed far bound plus quadratic near fallback.
    RatioDegenerate,
}

/// Per-zero case analysis.
#[derive(Clone, Debug)]
pub struct CaseReport {
    pub zero_index: usize,
    pub kind: CaseKind,
    pub discriminant: Real,
    /// Shift count entering the scaled set (LinearShift).
    pub shift_count: usize,
    /// Near indices handled by the quadratic fallback (RatioDegenerate).
    pub near_set: Vec<u64>,
    /// This case's contribution to the bound on `Σ 1/A_n`.
    pub threshold: BigRational,
}

#[derive(Clone, Debug)]
pub struct ProductSumReport {
    pub q_index: usize,
    pub q_n: BigInt,
    pub scale: BigInt,
    pub zero_class: ZeroClass,
    pub cases: Vec<CaseReport>,
    pub exceptional: IntervalUnion,
    pub exceptional_measure: BigRational,
    /// Certified floor of the zero bound at the scan argmin (zero case) or
    /// the reverse-triangle minimum modulus (zero-free case).
    pub modulus_floor: BigRational,
    pub max_sum: Option<Real>,
    pub bound: BigRational,
    /// `max_sum / (Q ln Q)`
    pub constant_fit: Option<Real>,
    pub samples: usize,
    pub seed: u64,
    pub clamped_terms: usize,
    pub pass: bool,
}

/// Locate the largest convergent index whose denominator admits `Q` in
/// `[γ_lo q_n, γ_hi q_n]`.
fn admissible_index(
    ratio: &Real,
    q: &BigInt,
    gamma_lo: &BigRational,
    gamma_hi: &BigRational,
) -> Result<(usize, BigInt, ContinuedFraction)> {
    let qr = BigRational::from_integer(q.clone());
    let cf = expand(ratio, 200)?;
    let mut found: Option<usize> = None;
    for k in 0..cf.convergents.len() {
        let qk = BigRational::from_integer(cf.q(k).clone());
        if &qk * gamma_lo <= qr && qr <= &qk * gamma_hi {
            found = Some(k);
        }
        if qk > &qr / gamma_lo {
            break;
        }
    }
    match found {
        Some(k) => Ok((k, cf.q(k).clone(), cf)),
        None => Err(Error::WindowViolation(format!(
            "scale {q} is not within [{gamma_lo}, {gamma_hi}] of any certified convergent denominator"
        ))),
    }
}

/// Integer values taken by `[β(x+n) - γ2]` for `x ∈ [0, 1)`.
fn integer_part_candidates(u: &Real, beta: &Real) -> Vec<BigInt> {
    let lo = u.lo().min(&u.lo() + beta.lo());
    let hi = u.hi().max(&u.hi() + beta.hi());
    let k_lo = lo.floor().to_integer();
    let k_hi = hi.floor().to_integer();
    let mut out = Vec::new();
    let mut k = k_lo;
    while k <= k_hi {
        out.push(k.clone());
        k += BigInt::one();
    }
    out
}

struct CaseOutcome {
    report: CaseReport,
    set: IntervalUnion,
}

/// Shifted-lattice case: enumerate the shifts of the linear form and build
/// the scaled exceptional set at budget `delta_case`.
fn linear_shift_case(
    zero_index: usize,
    poly: &TrigPoly,
    gamma1: &Real,
    gamma2: &Real,
    slope: &Real,
    discriminant: &Real,
    q_count: u64,
    delta_case: &BigRational,
    prec: Precision,
) -> Result<CaseOutcome> {
    let mut shifts = Vec::new();
    let t_g2 = slope.mul(gamma2);
    for n in 0..q_count {
        let nb = BigInt::from(n);
        // u = βn - γ2; K runs over the integer parts reachable for x ∈ [0,1)
        let u = poly.beta.mul_int(&nb).sub(gamma2);
        for k in integer_part_candidates(&u, &poly.beta) {
            for m in [0i64, -1] {
                // y = (α+tβ)n - γ1 - tγ2 + t(m - K)
                let shift = discriminant
                    .mul_int(&nb)
                    .sub(gamma1)
                    .sub(&t_g2)
                    .add(&slope.mul_int(&(BigInt::from(m) - &k)));
                shifts.push(shift.round(prec));
            }
        }
    }
    let set = build_scaled_exceptional_set(discriminant, &shifts, delta_case, prec)?;
    Ok(CaseOutcome {
        report: CaseReport {
            zero_index,
            kind: CaseKind::LinearShift,
            discriminant: discriminant.clone(),
            shift_count: shifts.len(),
            near_set: vec![],
            threshold: set.linear_threshold.clone(),
        },
        set: set.set,
    })
}

/// Near-index cap for the degenerate case, from the scale window.
fn near_cap(gamma_lo: &BigRational, gamma_hi: &BigRational) -> usize {
    let ratio = gamma_hi / gamma_lo + BigRational::one();
    let cap = BigRational::from_integer(8.into()) * ratio;
    cap.ceil().to_integer().to_usize().unwrap_or(usize::MAX)
}

/// Degenerate-ratio case: windowed far bound plus quadratic near fallback.
#[allow(clippy::too_many_arguments)]
fn ratio_degenerate_case(
    zero_index: usize,
    poly: &TrigPoly,
    ratio: &Real,
    gamma1: &Real,
    gamma2: &Real,
    slope: &Real,
    discriminant: &Real,
    q_n: &BigInt,
    q_count: u64,
    near_limit: usize,
    delta_case: &BigRational,
    prec: Precision,
) -> Result<CaseOutcome> {
    // both candidate offsets: ξ = γ1 + tγ2 and γ1 + tγ2 + t
    let xi0 = gamma1.add(&slope.mul(gamma2));
    let xi1 = xi0.add(slope);
    let sep = BigRational::new(BigInt::one(), BigInt::from(4) * q_n);

    // K range over all n and x
    let mut k_values: Vec<BigInt> = Vec::new();
    let mut near: Vec<u64> = Vec::new();
    for n in 0..q_count {
        let nb = BigInt::from(n);
        let u = poly.beta.mul_int(&nb).sub(gamma2);
        let mut is_near = false;
        for k in integer_part_candidates(&u, &poly.beta) {
            for xi in [&xi0, &xi1] {
                let d = circle::dist(&ratio.mul_int(&k).sub(xi));
                if !d.certainly_ge_rat(&sep) {
                    is_near = true;
                }
            }
            k_values.push(k);
        }
        if is_near {
            near.push(n);
        }
    }
    if near.len() > near_limit {
        return Err(Error::Internal(format!(
            "near set has {} indices, above the cap {near_limit}",
            near.len()
        )));
    }

    // far bound: split the K range into windows below q_n and apply the
    // explicit windowed bound, once per ξ candidate
    let k_min = k_values.iter().min().cloned().unwrap_or_else(BigInt::zero);
    let k_max = k_values.iter().max().cloned().unwrap_or_else(BigInt::zero);
    let span = &k_max - &k_min + BigInt::one();
    let windows = (&span + q_n - BigInt::one()) / q_n;
    let per_window = window_bound(q_n)?;
    let far = BigRational::from_integer(BigInt::from(2) * windows) * per_window;

    // near fallback: A_n >= ‖αx + (αn - γ1)‖²; protect with scaled balls
    let mut near_threshold = BigRational::zero();
    let set = if near.is_empty() {
        IntervalUnion::empty()
    } else {
        let shifts: Vec<Real> = near
            .iter()
            .map(|&n| poly.alpha.mul_int(&BigInt::from(n)).sub(gamma1).round(prec))
            .collect();
        let scaled = build_scaled_exceptional_set(&poly.alpha, &shifts, delta_case, prec)?;
        near_threshold = BigRational::from_integer(BigInt::from(near.len() as u64))
            * &scaled.term_cap
            * &scaled.term_cap;
        scaled.set
    };

    Ok(CaseOutcome {
        report: CaseReport {
            zero_index,
            kind: CaseKind::RatioDegenerate,
            discriminant: discriminant.clone(),
            shift_count: 0,
            near_set: near,
            threshold: far + near_threshold,
        },
        set,
    })
}

/// Full analysis at scale `q` with sampling outside the constructed set.
pub fn product_reciprocal_sum(
    poly: &TrigPoly,
    q: &BigInt,
    gamma_lo: &BigRational,
    gamma_hi: &BigRational,
    delta: &BigRational,
    samples: usize,
    seed: u64,
    prec: Precision,
) -> Result<ProductSumReport> {
    product_reciprocal_sum_impl(
        poly, q, gamma_lo, gamma_hi, delta, samples, seed, prec, None,
    )
}

/// Entry point with an injected slope per zero, for exercising the
/// degenerate-ratio case on synthetic data.
#[allow(clippy::too_many_arguments)]
pub(crate) fn product_reciprocal_sum_impl(
    poly: &TrigPoly,
    q: &BigInt,
    gamma_lo: &BigRational,
    gamma_hi: &BigRational,
    delta: &BigRational,
    samples: usize,
    seed: u64,
    prec: Precision,
    slope_override: Option<&[Real]>,
) -> Result<ProductSumReport> {
    if !gamma_lo.is_positive() || gamma_hi < gamma_lo {
        return Err(Error::Parse("need 0 < gamma_lo <= gamma_hi".into()));
    }
    if !q.is_positive() {
        return Err(Error::Parse("scale must be positive".into()));
    }
    let ratio = poly.alpha.div(&poly.beta)?;
    let (q_index, q_n, _cf) = admissible_index(&ratio, q, gamma_lo, gamma_hi)?;
    let q_count = q
        .to_u64()
        .ok_or_else(|| Error::CapExceeded(format!("scale {q} too large to scan")))?;

    let zeros = find_torus_zeros(&poly.c0, &poly.c1, &poly.c2, prec)?;

    let (cases, union, floor) = if zeros.class == ZeroClass::None {
        let m = poly.min_modulus_lower_bound(prec)?;
        if !m.lo().is_positive() {
            return Err(Error::Internal(
                "zero-free polynomial without a positive modulus floor".into(),
            ));
        }
        (Vec::new(), IntervalUnion::empty(), m.lo())
    } else {
        // empirical floor constant from the grid scan
        let lb = lower_bound_constant(&poly.c0, &poly.c1, &poly.c2, 128, prec)?;
        let floor = lb.certified_at_argmin.lo();
        if !floor.is_positive() {
            return Err(Error::Precision(
                "empirical floor constant not certainly positive".into(),
            ));
        }
        let delta_case =
            delta / BigRational::from_integer(BigInt::from(zeros.zeros.len() as u64));
        let mut cases = Vec::new();
        let mut union = IntervalUnion::empty();
        for (idx, z) in zeros.zeros.iter().enumerate() {
            let slope = match slope_override {
                Some(list) => list
                    .get(idx)
                    .cloned()
                    .ok_or_else(|| Error::Parse("slope override list too short".into()))?,
                None => z.slope.clone(),
            };
            let disc = poly.alpha.add(&slope.mul(&poly.beta));
            let outcome = match disc.sign_certified() {
                Some(num_bigint::Sign::Plus) | Some(num_bigint::Sign::Minus) => {
                    linear_shift_case(
                        idx,
                        poly,
                        &z.gamma1,
                        &z.gamma2,
                        &slope,
                        &disc,
                        q_count,
                        &delta_case,
                        prec,
                    )?
                }
                Some(num_bigint::Sign::NoSign) => ratio_degenerate_case(
                    idx,
                    poly,
                    &ratio,
                    &z.gamma1,
                    &z.gamma2,
                    &slope,
                    &disc,
                    &q_n,
                    q_count,
                    near_cap(gamma_lo, gamma_hi),
                    &delta_case,
                    prec,
                )?,
                None => {
                    return Err(Error::UnresolvedCase(format!(
                        "discriminant α + tβ of zero {idx} straddles zero at this precision"
                    )))
                }
            };
            union = union.union(&outcome.set);
            cases.push(outcome.report);
        }
        (cases, union, floor)
    };

    let measure = union.measure();
    if measure > *delta {
        return Err(Error::BudgetInfeasible(format!(
            "combined exceptional measure {measure} exceeds {delta}"
        )));
    }

    // bound on Σ 1/|P(x+n)| outside the set
    let bound = if zeros.class == ZeroClass::None {
        BigRational::from_integer(q.clone()) / &floor
    } else {
        cases
            .iter()
            .fold(BigRational::zero(), |acc, c| acc + &c.threshold)
            / &floor
    };

    // sampling
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_sum: Option<Real> = None;
    let mut clamped = 0usize;
    for _ in 0..samples {
        let u = union.scale_unit(rng.gen::<u64>());
        let x = union
            .sample_complement(&u)
            .ok_or_else(|| Error::BudgetInfeasible("empty complement".into()))?;
        let (s, clamp) = translate_reciprocal_sum(poly, &Real::exact(x), q_count, prec)?;
        clamped += clamp.len();
        max_sum = Some(match max_sum {
            Some(cur) if cur.value() >= s.value() => cur,
            _ => s,
        });
    }

    let constant_fit = match &max_sum {
        Some(s) if q_count >= 2 => {
            let lnq = ln_big_int(q, prec)?;
            Some(s.div(&lnq.mul_int(q))?)
        }
        _ => None,
    };
    let pass = match &max_sum {
        Some(s) => s.certainly_le_rat(&bound),
        None => true,
    };

    Ok(ProductSumReport {
        q_index,
        q_n,
        scale: q.clone(),
        zero_class: zeros.class,
        cases,
        exceptional: union,
        exceptional_measure: measure,
        modulus_floor: floor,
        max_sum,
        bound,
        constant_fit,
        samples,
        seed,
        clamped_terms: clamped,
        pass,
    })
}
