//! Certified scale construction: integers `N = m q_n` whose rotation
//! distance `‖N α/β‖` is small relative to `1/(N ln N)` and whose fractional
//! part over `β` is below a target `s`.
//!
//! Index selection filters on `q_{n+1} >= c · q_n ln q_n`. Two guards make
//! the filter meaningful: `q_n >= 2` (the threshold is vacuous at `q_n = 1`)
//! and `c · ln q_n >= 2` — since `q_{n+1} < 2 q_n` always holds when
//! `a_{n+1} = 1`, a threshold below `2 q_n` could be passed without any
//! spike in the quotients.
//!
//! The multiplier scan takes the smallest `m <= ⌈1/s⌉ + 1` whose fractional
//! part certifies below `s`; indices where no multiplier certifies are
//! recorded as misses rather than guessed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::circle;
use crate::contfrac::{expand_exact, ContinuedFraction};
use crate::error::{Error, Result};
use crate::precision::Precision;
use crate::real::{ln_big_int, Real};

/// One certified scale.
#[derive(Clone, Debug)]
pub struct ScaleCertificate {
    /// Convergent index `n` with `N = m q_n`.
    pub index: usize,
    pub multiplier: u64,
    /// `N = m q_n`, exact.
    pub scale: BigInt,
    /// `‖N α/β‖`
    pub dist_ratio: Real,
    /// `{N/β}`
    pub frac_over_beta: Real,
    /// `N ln N · ‖N α/β‖`
    pub growth_product: Real,
    /// `q_{n+1} / (q_n ln q_n)` at the selected index.
    pub quotient_ratio: Real,
}

#[derive(Clone, Debug)]
pub struct ScaleSearchReport {
    pub certificates: Vec<ScaleCertificate>,
    /// Indices that passed the quotient filter but produced no certificate,
    /// with the reason.
    pub misses: Vec<(usize, String)>,
    pub depth: usize,
}

/// Scan convergent indices up to `depth` and emit certificates.
pub fn construct_scale_certificates(
    alpha: &Real,
    beta: &Real,
    s: &BigRational,
    depth: usize,
    c: &BigRational,
    prec: Precision,
) -> Result<ScaleSearchReport> {
    if !s.is_positive() || *s >= BigRational::one() {
        return Err(Error::Parse("target s must lie in (0, 1)".into()));
    }
    if !c.is_positive() {
        return Err(Error::Parse("quotient threshold c must be positive".into()));
    }
    let ratio = alpha.div(beta)?;
    let cf = expand_exact(&ratio, depth + 1, prec)?;
    if cf.terminal {
        return Err(Error::Terminal(
            "frequency ratio is rational; no certificate sequence exists".into(),
        ));
    }
    let m_cap = (BigRational::one() / s).ceil().to_integer().to_u64().unwrap_or(u64::MAX) + 1;

    let mut certificates = Vec::new();
    let mut misses = Vec::new();
    let two = BigRational::from_integer(BigInt::from(2));
    for n in 1..cf.convergents.len().saturating_sub(1) {
        let q_n = cf.q(n);
        if *q_n < BigInt::from(2) {
            continue;
        }
        let ln_q = ln_big_int(q_n, prec)?;
        // informative-threshold guard: require c ln q_n >= 2
        let c_ln = ln_q.mul_rat(c);
        if !c_ln.certainly_ge_rat(&two) {
            continue;
        }
        // filter: q_{n+1} >= c q_n ln q_n
        let q_next = cf.q(n + 1);
        let threshold = c_ln.mul_int(q_n);
        let q_next_r = Real::exact(BigRational::from_integer(q_next.clone()));
        if !q_next_r.certainly_ge_rat(&threshold.hi()) {
            if threshold.contains_rat(&BigRational::from_integer(q_next.clone())) {
                misses.push((n, "quotient filter not certified at this precision".into()));
            }
            continue;
        }
        let quotient_ratio = q_next_r.div(&ln_q.mul_int(q_n))?;

        match pigeonhole_multiplier(&cf, n, beta, s, m_cap, prec)? {
            Some((m, frac)) => {
                let scale = BigInt::from(m) * q_n;
                let dist = circle::dist(&ratio.mul_int(&scale));
                let ln_scale = ln_big_int(&scale, prec)?;
                let growth = dist.mul(&ln_scale).mul_int(&scale);
                certificates.push(ScaleCertificate {
                    index: n,
                    multiplier: m,
                    scale,
                    dist_ratio: dist,
                    frac_over_beta: frac,
                    growth_product: growth,
                    quotient_ratio,
                });
            }
            None => {
                misses.push((
                    n,
                    format!("no multiplier m <= {m_cap} certified {{m q_n/β}} <= s"),
                ));
            }
        }
    }
    Ok(ScaleSearchReport {
        certificates,
        misses,
        depth,
    })
}

/// Smallest multiplier whose fractional part over `β` certifies below `s`.
fn pigeonhole_multiplier(
    cf: &ContinuedFraction,
    n: usize,
    beta: &Real,
    s: &BigRational,
    m_cap: u64,
    prec: Precision,
) -> Result<Option<(u64, Real)>> {
    let q_n = cf.q(n);
    let beta_inv = beta.recip()?;
    let mut ambiguous = false;
    for m in 1..=m_cap {
        let scale = BigInt::from(m) * q_n;
        let value = beta_inv.mul_int(&scale);
        match circle::reduce(&value) {
            Ok(cv) => {
                if cv.frac.certainly_le_rat(s) {
                    return Ok(Some((m, cv.frac)));
                }
                if !cv.frac.certainly_ge_rat(s) {
                    ambiguous = true;
                }
            }
            Err(_) => ambiguous = true,
        }
    }
    if ambiguous {
        Err(Error::Ambiguous(format!(
            "fractional parts at index {n} straddle the target at precision {}",
            prec.bits()
        )))
    } else {
        Ok(None)
    }
}
