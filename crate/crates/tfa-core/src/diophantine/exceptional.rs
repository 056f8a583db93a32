//! Exceptional sets on the circle.
//!
//! Given points `x_1..x_N` and a budget `δ`, [`build_exceptional_set`]
//! produces a set `E` of measure at most `δ` outside which both
//! `Σ 1/‖x-x_n‖ <= T1` and `Σ 1/‖x-x_n‖² <= T2` hold, with the explicit
//! thresholds
//!
//! - stage-1 balls of radius `δ/(4N)` around each point (measure ≤ δ/2),
//!   giving the term-wise cap `1/‖x-x_n‖ <= 4N/δ` outside,
//! - `T1 = (16N/δ) ln(4N/δ)` and `T2 = 32N²/δ²`, whose superlevel sets have
//!   measure at most `δ/2` combined by Markov's inequality applied to the
//!   capped integrands (`∫ Σ min(4N/δ, 1/‖x-x_n‖) <= N(2 ln(4N/δ)+1)` and
//!   `∫ Σ min((4N/δ)², 1/‖x-x_n‖²) <= 16N²/δ`).
//!
//! The superlevel sets are localized by certified adaptive bisection: a cell
//! is discarded only when the interval upper bound of the capped sum clears
//! the threshold, and included whenever the lower bound exceeds it, so the
//! result is an outer cover of the true superlevel set.
//!
//! A scaled variant covering families `‖c·x + y_s‖` (used by the product
//! analysis, where the shifts come in `O(Q_k)` copies and the scale is a
//! certified real) shares the same machinery with wrap-factor-adjusted
//! constants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circle;
use crate::error::{Error, Result};
use crate::precision::Precision;
use crate::real::{ln, ln_big_int, Real};

use super::interval_union::IntervalUnion;

/// One term `x ↦ ‖c·x + y‖` with outward rational bounds on `c` and `y`.
/// The scale is normalized positive (`‖-u‖ = ‖u‖`).
#[derive(Clone, Debug)]
pub(crate) struct AffineTerm {
    c_lo: BigRational,
    c_hi: BigRational,
    y_lo: BigRational,
    y_hi: BigRational,
}

/// Outward rounding of a rational to the dyadic grid, to keep the cell
/// arithmetic below working-precision sizes.
fn coarsen(x: &BigRational, bits: u32, up: bool) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = x * BigRational::from_integer(scale.clone());
    let snapped = if up {
        scaled.ceil().to_integer()
    } else {
        scaled.floor().to_integer()
    };
    BigRational::new(snapped, scale)
}

const COARSE_BITS: u32 = 96;

impl AffineTerm {
    fn from_balls(c: &Real, y: &Real) -> Result<Self> {
        let (c, y) = match c.sign_certified() {
            Some(num_bigint::Sign::Plus) => (c.clone(), y.clone()),
            Some(num_bigint::Sign::Minus) => (c.neg(), y.neg()),
            _ => {
                return Err(Error::Precision(
                    "affine term scale is not certainly nonzero".into(),
                ))
            }
        };
        Ok(AffineTerm {
            c_lo: coarsen(&c.lo(), COARSE_BITS, false),
            c_hi: coarsen(&c.hi(), COARSE_BITS, true),
            y_lo: coarsen(&y.lo(), COARSE_BITS, false),
            y_hi: coarsen(&y.hi(), COARSE_BITS, true),
        })
    }

    fn unit(point_neg: &Real) -> Self {
        AffineTerm {
            c_lo: BigRational::one(),
            c_hi: BigRational::one(),
            y_lo: coarsen(&point_neg.lo(), COARSE_BITS, false),
            y_hi: coarsen(&point_neg.hi(), COARSE_BITS, true),
        }
    }

    /// Outer image interval of `c·x + y` over `x ∈ [a, b] ⊆ [0, 1]`.
    fn image(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
        debug_assert!(!a.is_negative() && b >= a);
        (&self.c_lo * a + &self.y_lo, &self.c_hi * b + &self.y_hi)
    }
}

/// Min of `‖u‖` over `u ∈ [lo, hi]`: zero when the interval spans an
/// integer, otherwise attained at an endpoint.
fn circle_dist_lo(lo: &BigRational, hi: &BigRational) -> BigRational {
    if lo.floor() != hi.floor() || lo.is_integer() {
        return BigRational::zero();
    }
    circle::dist_rat(lo).min(circle::dist_rat(hi))
}

/// Max of `‖u‖` over `u ∈ [lo, hi]`: 1/2 when a half-integer is inside.
fn circle_dist_hi(lo: &BigRational, hi: &BigRational) -> BigRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let lo2 = lo * BigRational::from_integer(BigInt::from(2));
    let hi2 = hi * BigRational::from_integer(BigInt::from(2));
    // a half-integer u = k + 1/2 lies inside iff 2u spans an odd integer
    let (f_lo, f_hi) = (lo2.floor().to_integer(), hi2.floor().to_integer());
    if f_lo != f_hi || lo2.is_integer() {
        // conservative: some odd integer may be inside
        return half;
    }
    circle::dist_rat(lo).max(circle::dist_rat(hi))
}

/// Exceptional set with its construction constants.
#[derive(Clone, Debug)]
pub struct ExceptionalSet {
    pub set: IntervalUnion,
    pub delta: BigRational,
    pub term_count: usize,
    /// Term-wise cap `1/dist` outside stage 1.
    pub term_cap: BigRational,
    /// Threshold for the linear sum outside the set.
    pub linear_threshold: BigRational,
    /// Threshold for the quadratic sum outside the set (when constructed).
    pub quadratic_threshold: Option<BigRational>,
    pub stage1_measure: BigRational,
    pub stage2_measure: BigRational,
}

/// Rational upper bound of `ln(x)` for rational `x > 0`.
fn ln_hi(x: &BigRational, prec: Precision) -> Result<BigRational> {
    Ok(ln(&Real::exact(x.clone()), prec)?.hi())
}

fn rat_u(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Stage-1 ball intervals for a family of terms at radius `rho`.
fn stage1_intervals(terms: &[AffineTerm], rho: &BigRational) -> Vec<(BigRational, BigRational)> {
    let mut out = Vec::new();
    for t in terms {
        // k range from the image of [0,1]
        let (img_lo, img_hi) = t.image(&BigRational::zero(), &BigRational::one());
        let k_lo = (&img_lo - rho).floor().to_integer();
        let k_hi = (&img_hi + rho).ceil().to_integer();
        let mut k = k_lo;
        while k <= k_hi {
            let kr = BigRational::from_integer(k.clone());
            // c x + y ∈ [k - rho, k + rho]  =>  x ∈ [(k-rho-y_hi)/c?, ...]
            let num_lo = &kr - rho - &t.y_hi;
            let num_hi = &kr + rho - &t.y_lo;
            let cands_lo = [&num_lo / &t.c_lo, &num_lo / &t.c_hi];
            let cands_hi = [&num_hi / &t.c_lo, &num_hi / &t.c_hi];
            let a = cands_lo.iter().min().unwrap().clone();
            let b = cands_hi.iter().max().unwrap().clone();
            if b > BigRational::zero() && a < BigRational::one() {
                out.push((a.max(BigRational::zero()), b.min(BigRational::one())));
            }
            k += BigInt::one();
        }
    }
    out
}

/// Capped sum bounds of the family over a cell.
/// Returns `(f_lo, f_hi, g_lo, g_hi)`: linear and squared capped sums.
fn cell_bounds(
    terms: &[AffineTerm],
    cap: &BigRational,
    with_quad: bool,
    a: &BigRational,
    b: &BigRational,
) -> (BigRational, BigRational, BigRational, BigRational) {
    let cap_sq = cap * cap;
    let mut f_lo = BigRational::zero();
    let mut f_hi = BigRational::zero();
    let mut g_lo = BigRational::zero();
    let mut g_hi = BigRational::zero();
    for t in terms {
        let (img_lo, img_hi) = t.image(a, b);
        let d_lo = circle_dist_lo(&img_lo, &img_hi);
        let d_hi = circle_dist_hi(&img_lo, &img_hi);
        // upper bound of min(cap, 1/dist)
        let term_hi = if d_lo.is_zero() {
            cap.clone()
        } else {
            cap.clone().min(d_lo.recip())
        };
        // lower bound of min(cap, 1/dist)
        let term_lo = if d_hi.is_zero() {
            cap.clone()
        } else {
            cap.clone().min(d_hi.recip())
        };
        f_hi += &term_hi;
        f_lo += &term_lo;
        if with_quad {
            g_hi += cap_sq.clone().min(&term_hi * &term_hi);
            g_lo += cap_sq.clone().min(&term_lo * &term_lo);
        }
    }
    (f_lo, f_hi, g_lo, g_hi)
}

/// Outer cover of the capped-sum superlevel sets over the given root cells.
fn superlevel_cover(
    roots: &[(BigRational, BigRational)],
    terms: &[AffineTerm],
    cap: &BigRational,
    t1: &BigRational,
    t2: Option<&BigRational>,
    eps_min: &BigRational,
) -> Vec<(BigRational, BigRational)> {
    let mut out = Vec::new();
    let mut work: Vec<(BigRational, BigRational)> = roots.to_vec();
    let two = BigRational::from_integer(BigInt::from(2));
    while let Some((a, b)) = work.pop() {
        if b <= a {
            continue;
        }
        let (f_lo, f_hi, g_lo, g_hi) = cell_bounds(terms, cap, t2.is_some(), &a, &b);
        let quad_clean = t2.map_or(true, |t| &g_hi <= t);
        if &f_hi <= t1 && quad_clean {
            continue;
        }
        let quad_deep = t2.map_or(false, |t| &g_lo > t);
        if &f_lo > t1 || quad_deep || (&b - &a) <= *eps_min {
            out.push((a, b));
            continue;
        }
        let mid = (&a + &b) / &two;
        work.push((a, mid.clone()));
        work.push((mid, b));
    }
    out
}

/// Two-stage exceptional set for points on the circle, with the documented
/// constants: stage-1 radius `δ/(4N)`, thresholds `T1 = (16N/δ) ln(4N/δ)`
/// and `T2 = 32N²/δ²`.
pub fn build_exceptional_set(
    points: &[Real],
    delta: &BigRational,
    prec: Precision,
) -> Result<ExceptionalSet> {
    if points.is_empty() {
        return Err(Error::Parse("exceptional set needs at least one point".into()));
    }
    if !delta.is_positive() || *delta >= BigRational::one() {
        return Err(Error::Parse("delta must lie in (0, 1)".into()));
    }
    let n = points.len() as u64;
    let rho = delta / rat_u(4 * n);
    let cap = rho.recip();
    let t1 = rat_u(16 * n) / delta * ln_hi(&cap, prec)?;
    let t2 = rat_u(32 * n * n) / (delta * delta);
    let terms: Vec<AffineTerm> = points.iter().map(|p| AffineTerm::unit(&p.neg())).collect();
    assemble(terms, delta, &rho, &cap, &t1, Some(&t2), n)
}

/// Scaled variant for a family `‖c·x + y_s‖` (linear threshold only). The
/// wrap factor `W = (⌊|c|⌋+1)/|c|` enters both the ball radius and the
/// Markov budget: stage 1 uses `ρ = δ/(8 N W)` (measure ≤ δ/4) and
/// `T1 = (8 N W / δ)(2 ln(1/ρ) + 1)` (superlevel measure ≤ δ/8).
pub(crate) fn build_scaled_exceptional_set(
    scale: &Real,
    shifts: &[Real],
    delta: &BigRational,
    prec: Precision,
) -> Result<ExceptionalSet> {
    if shifts.is_empty() {
        // nothing to exclude
        return Ok(ExceptionalSet {
            set: IntervalUnion::empty(),
            delta: delta.clone(),
            term_count: 0,
            term_cap: BigRational::zero(),
            linear_threshold: BigRational::zero(),
            quadratic_threshold: None,
            stage1_measure: BigRational::zero(),
            stage2_measure: BigRational::zero(),
        });
    }
    if !delta.is_positive() || *delta >= BigRational::one() {
        return Err(Error::Parse("delta must lie in (0, 1)".into()));
    }
    let n = shifts.len() as u64;
    let terms: Vec<AffineTerm> = shifts
        .iter()
        .map(|y| AffineTerm::from_balls(scale, y))
        .collect::<Result<_>>()?;
    // wrap factor from the coarsened scale bounds
    let c_lo = terms
        .iter()
        .map(|t| t.c_lo.clone())
        .min()
        .expect("nonempty");
    let c_hi = terms
        .iter()
        .map(|t| t.c_hi.clone())
        .max()
        .expect("nonempty");
    if !c_lo.is_positive() {
        return Err(Error::Precision("scale not certainly nonzero".into()));
    }
    let wrap = (BigRational::from_integer(c_hi.floor().to_integer()) + BigRational::one()) / &c_lo;
    let rho = delta / (rat_u(8 * n) * &wrap);
    let cap = rho.recip();
    let t1 = rat_u(8 * n) * &wrap / delta
        * (rat_u(2) * ln_hi(&cap, prec)? + BigRational::one());
    assemble(terms, delta, &rho, &cap, &t1, None, n)
}

fn assemble(
    terms: Vec<AffineTerm>,
    delta: &BigRational,
    rho: &BigRational,
    cap: &BigRational,
    t1: &BigRational,
    t2: Option<&BigRational>,
    n: u64,
) -> Result<ExceptionalSet> {
    let stage1 = IntervalUnion::from_raw(stage1_intervals(&terms, rho));
    let stage1_measure = stage1.measure();
    let eps_min = delta / rat_u(4096 * n.max(1));
    let roots = stage1.complement_gaps();
    let stage2_cells = superlevel_cover(&roots, &terms, cap, t1, t2, &eps_min);
    let stage2 = IntervalUnion::from_raw(stage2_cells);
    let stage2_measure = stage2.measure();
    let set = stage1.union(&stage2);
    if set.measure() > *delta {
        return Err(Error::BudgetInfeasible(format!(
            "exceptional set measure {} exceeds budget {}",
            set.measure(),
            delta
        )));
    }
    Ok(ExceptionalSet {
        set,
        delta: delta.clone(),
        term_count: terms.len(),
        term_cap: cap.clone(),
        linear_threshold: t1.clone(),
        quadratic_threshold: t2.cloned(),
        stage1_measure,
        stage2_measure,
    })
}

/// Report of sampled reciprocal-distance sums outside an exceptional set.
#[derive(Clone, Debug)]
pub struct OutsideSumsReport {
    pub samples: usize,
    pub seed: u64,
    /// Max over samples of `Σ 1/‖x-x_n‖` and `Σ 1/‖x-x_n‖²`.
    pub max_linear: Option<Real>,
    pub max_quadratic: Option<Real>,
    /// Fitted constants `max/(N ln N)` and `max/N²` (absent for N = 1).
    pub fit_linear: Option<Real>,
    pub fit_quadratic: Option<Real>,
    /// Design constants `T1/(N ln N)` and `T2/N²`.
    pub design_linear: Option<BigRational>,
    pub design_quadratic: Option<BigRational>,
    /// Every sampled term satisfied the stage-1 cap `1/‖x-x_n‖ <= 4N/δ`.
    pub termwise_cap_ok: bool,
    pub pass: bool,
}

/// Sample uniformly outside the set and compare both sums against the
/// construction thresholds.
pub fn sum_bounds_outside(
    points: &[Real],
    set: &ExceptionalSet,
    samples: usize,
    seed: u64,
    prec: Precision,
) -> Result<OutsideSumsReport> {
    let n = points.len();
    if n != set.term_count {
        return Err(Error::Parse(
            "point list does not match the exceptional set".into(),
        ));
    }
    let t2 = set
        .quadratic_threshold
        .clone()
        .ok_or_else(|| Error::Parse("set was built without a quadratic threshold".into()))?;
    if samples == 0 {
        return Ok(OutsideSumsReport {
            samples: 0,
            seed,
            max_linear: None,
            max_quadratic: None,
            fit_linear: None,
            fit_quadratic: None,
            design_linear: None,
            design_quadratic: None,
            termwise_cap_ok: true,
            pass: true,
        });
    }
    if set.set.measure() >= BigRational::one() {
        return Err(Error::BudgetInfeasible("empty complement".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_lin: Option<Real> = None;
    let mut max_quad: Option<Real> = None;
    let mut termwise_ok = true;
    for _ in 0..samples {
        let u = set.set.scale_unit(rng.gen::<u64>());
        let x = set
            .set
            .sample_complement(&u)
            .ok_or_else(|| Error::Internal("complement sampling failed".into()))?;
        let xr = Real::exact(x);
        let mut lin = Real::zero();
        let mut quad = Real::zero();
        for p in points {
            let d = circle::dist(&xr.sub(p));
            if !d.certainly_ge_rat(&set.term_cap.recip()) {
                termwise_ok = false;
            }
            let r = d.recip()?;
            quad = quad.add(&r.square());
            lin = lin.add(&r);
        }
        max_lin = Some(match max_lin {
            Some(cur) if cur.value() >= lin.value() => cur,
            _ => lin,
        });
        max_quad = Some(match max_quad {
            Some(cur) if cur.value() >= quad.value() => cur,
            _ => quad,
        });
    }
    let max_lin = max_lin.unwrap();
    let max_quad = max_quad.unwrap();
    let pass = termwise_ok
        && max_lin.certainly_le_rat(&set.linear_threshold)
        && max_quad.certainly_le_rat(&t2);

    // fitted and design constants relative to N ln N and N²
    let (fit_linear, fit_quadratic, design_linear, design_quadratic) = if n >= 2 {
        let nb = BigInt::from(n as u64);
        let ln_n = ln_big_int(&nb, prec)?;
        let n_ln_n = ln_n.mul_int(&nb);
        let n_sq = BigRational::from_integer(&nb * &nb);
        (
            Some(max_lin.div(&n_ln_n)?),
            Some(max_quad.mul_rat(&n_sq.recip())),
            Some(&set.linear_threshold / (n_ln_n.lo())),
            Some(&t2 / &n_sq),
        )
    } else {
        (None, None, None, None)
    };

    Ok(OutsideSumsReport {
        samples,
        seed,
        max_linear: Some(max_lin),
        max_quadratic: Some(max_quad),
        fit_linear,
        fit_quadratic,
        design_linear,
        design_quadratic,
        termwise_cap_ok: termwise_ok,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec() -> Precision {
        Precision::from_digits(64)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn single_point_stage1_ball() {
        let points = vec![Real::from_ratio(1, 2)];
        let delta = rat(1, 10);
        let set = build_exceptional_set(&points, &delta, prec()).unwrap();
        // contains (0.475, 0.525)
        assert!(set.set.contains(&rat(19, 40)));
        assert!(set.set.contains(&rat(21, 40)));
        assert!(set.set.contains(&rat(1, 2)));
        assert!(!set.set.contains(&rat(1, 4)));
        assert!(set.set.measure() <= delta);
        // term cap 4N/δ = 40
        assert_eq!(set.term_cap, rat(40, 1));
    }

    #[test]
    fn coincident_points_scale_like_single() {
        let delta = rat(1, 10);
        let p = Real::from_ratio(1, 3);
        let single = build_exceptional_set(&[p.clone()], &delta, prec()).unwrap();
        let multi =
            build_exceptional_set(&vec![p.clone(); 5], &delta, prec()).unwrap();
        // five coincident balls of radius δ/20 = one ball of radius δ/20;
        // the single-point ball has radius δ/4
        assert!(multi.set.measure() < single.set.measure());
        assert!(multi.set.measure() <= delta);
        assert!(multi.set.contains(p.value()));
    }

    #[test]
    fn measure_budget_holds_for_clusters() {
        // 40 coincident points force a nonempty superlevel stage
        let delta = rat(1, 20);
        let points: Vec<Real> = (0..40).map(|_| Real::from_ratio(2, 7)).collect();
        let set = build_exceptional_set(&points, &delta, prec()).unwrap();
        assert!(set.set.measure() <= delta);
    }

    #[test]
    fn outside_sums_single_point() {
        let points = vec![Real::from_ratio(1, 2)];
        let delta = rat(1, 10);
        let set = build_exceptional_set(&points, &delta, prec()).unwrap();
        let rep = sum_bounds_outside(&points, &set, 200, 7, prec()).unwrap();
        assert!(rep.pass);
        assert!(rep.termwise_cap_ok);
        // single point: every term <= 40, squared <= 1600
        assert!(rep.max_linear.unwrap().certainly_le_rat(&rat(40, 1)));
        assert!(rep.max_quadratic.unwrap().certainly_le_rat(&rat(1600, 1)));
    }

    #[test]
    fn zero_samples_degenerate_pass() {
        let points = vec![Real::from_ratio(1, 7)];
        let set = build_exceptional_set(&points, &rat(1, 10), prec()).unwrap();
        let rep = sum_bounds_outside(&points, &set, 0, 1, prec()).unwrap();
        assert!(rep.pass);
        assert!(rep.max_linear.is_none());
    }

    #[test]
    fn scaled_family_covers_near_solutions() {
        let p = prec();
        let scale = Real::sqrt_int(2, p).unwrap(); // c = sqrt(2)
        let shifts = vec![Real::from_ratio(-1, 3)];
        let delta = rat(1, 10);
        let set = build_scaled_exceptional_set(&scale, &shifts, &delta, p).unwrap();
        assert!(set.set.measure() <= delta);
        // x = (1/3)/sqrt(2) solves ‖sqrt(2)x - 1/3‖ = 0 and must be covered
        let x_zero = Real::from_ratio(1, 3).div(&scale).unwrap();
        let covered = set
            .set
            .intervals()
            .iter()
            .any(|(a, b)| x_zero.certainly_ge_rat(a) && x_zero.certainly_le_rat(b));
        assert!(covered);
    }

    #[test]
    fn deterministic_sampling() {
        let points: Vec<Real> = (1..20).map(|k| Real::from_ratio(k, 23)).collect();
        let delta = rat(1, 10);
        let set = build_exceptional_set(&points, &delta, prec()).unwrap();
        let a = sum_bounds_outside(&points, &set, 50, 42, prec()).unwrap();
        let b = sum_bounds_outside(&points, &set, 50, 42, prec()).unwrap();
        assert_eq!(
            a.max_linear.unwrap().value(),
            b.max_linear.unwrap().value()
        );
    }
}
