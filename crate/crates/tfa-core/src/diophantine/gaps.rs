//! Windowed gap and reciprocal-sum estimates along an irrational rotation.
//!
//! Both operations live below a convergent denominator window: for integers
//! `k_1 < ... < k_m` with `k_m - k_1 < q_n`, distinct pairs satisfy
//! `‖(k_i - k_j)α‖ >= 1/(2 q_n)`, and under the separation hypothesis
//! `min_j ‖k_j α - x‖ >= 1/(4 q_n)` the reciprocal-distance sum is bounded
//! by the explicit sign-class expression `2 (4 q_n + Σ_{j<=q_n} 2 q_n / j)`.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::circle;
use crate::contfrac::expand_exact;
use crate::error::{Error, Result};
use crate::precision::Precision;
use crate::real::{ln_big_int, Real};

use super::SumReport;

/// Report of the pairwise-gap verification.
#[derive(Clone, Debug)]
pub struct GapReport {
    pub q_n: BigInt,
    /// `min_{i<j} ‖(k_i - k_j) α‖`; `None` when fewer than two points.
    pub min_pairwise: Option<Real>,
    /// `1 / (2 q_n)`
    pub bound: BigRational,
    pub pass: bool,
}

fn check_strictly_increasing(ks: &[BigInt]) -> Result<()> {
    for w in ks.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::Parse("index list must be strictly increasing".into()));
        }
    }
    Ok(())
}

/// Verify the pairwise gap bound for a window of integers.
pub fn gap_check(ks: &[BigInt], alpha: &Real, n: usize, prec: Precision) -> Result<GapReport> {
    check_strictly_increasing(ks)?;
    let cf = expand_exact(alpha, n + 1, prec)?;
    if cf.convergents.len() < n + 1 {
        return Err(Error::Terminal(format!(
            "expansion terminates before index {n}"
        )));
    }
    let q_n = cf.q(n).clone();
    let bound = BigRational::new(BigInt::one(), BigInt::from(2) * &q_n);
    if ks.len() >= 2 {
        let span = &ks[ks.len() - 1] - &ks[0];
        if span >= q_n {
            return Err(Error::WindowViolation(format!(
                "window span {span} is not below q_n = {q_n}"
            )));
        }
    }
    if ks.len() < 2 {
        return Ok(GapReport {
            q_n,
            min_pairwise: None,
            bound,
            pass: true,
        });
    }

    // all pairwise differences, deduplicated
    let mut diffs: BTreeSet<BigInt> = BTreeSet::new();
    for i in 0..ks.len() {
        for j in 0..i {
            diffs.insert(&ks[i] - &ks[j]);
        }
    }
    let mut min: Option<Real> = None;
    let mut pass = true;
    for d in diffs {
        let dist = circle::dist(&alpha.mul_int(&d));
        if !dist.certainly_ge_rat(&bound) {
            if dist.certainly_lt_rat(&bound) {
                pass = false;
            } else {
                return Err(Error::Ambiguous(format!(
                    "gap ‖{d}·α‖ cannot be compared against 1/(2q_n) at this precision"
                )));
            }
        }
        min = Some(match min {
            Some(cur) if cur.value() <= dist.value() => cur,
            _ => dist,
        });
    }
    Ok(GapReport {
        q_n,
        min_pairwise: min,
        bound,
        pass,
    })
}

/// Exact harmonic number `H_m`, memoized. Capped to keep the exact rational
/// arithmetic reasonable.
pub fn harmonic_exact(m: u64) -> Result<BigRational> {
    const CAP: u64 = 20_000;
    if m > CAP {
        return Err(Error::CapExceeded(format!(
            "exact harmonic number requested for m = {m} > {CAP}"
        )));
    }
    static CACHE: OnceLock<Mutex<HashMap<u64, BigRational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&m) {
        return Ok(v.clone());
    }
    let mut acc = BigRational::zero();
    for j in 1..=m {
        acc += BigRational::new(BigInt::one(), BigInt::from(j));
    }
    cache.lock().unwrap().insert(m, acc.clone());
    Ok(acc)
}

/// The explicit window bound `2 (4 q_n + 2 q_n H_{q_n})`.
pub fn window_bound(q_n: &BigInt) -> Result<BigRational> {
    let q_u = u64::try_from(q_n).map_err(|_| {
        Error::CapExceeded(format!("q_n = {q_n} too large for the explicit bound"))
    })?;
    let h = harmonic_exact(q_u)?;
    let qr = BigRational::from_integer(q_n.clone());
    Ok(BigRational::from_integer(BigInt::from(2))
        * (BigRational::from_integer(BigInt::from(4)) * &qr
            + BigRational::from_integer(BigInt::from(2)) * &qr * h))
}

/// Verify `Σ_j 1/‖k_j α - x‖ <= 2 (4 q_n + Σ_{j<=q_n} 2 q_n / j)` under the
/// window and separation hypotheses.
pub fn reciprocal_sum_bound(
    ks: &[BigInt],
    alpha: &Real,
    x: &Real,
    n: usize,
    prec: Precision,
) -> Result<SumReport> {
    check_strictly_increasing(ks)?;
    let cf = expand_exact(alpha, n + 1, prec)?;
    if cf.convergents.len() < n + 1 {
        return Err(Error::Terminal(format!(
            "expansion terminates before index {n}"
        )));
    }
    let q_n = cf.q(n).clone();
    let bound = window_bound(&q_n)?;

    if ks.is_empty() {
        return Ok(SumReport {
            sum: Real::zero(),
            bound: Real::exact(bound),
            pass: true,
            constant_fit: None,
            witnesses: vec![],
        });
    }
    let span = &ks[ks.len() - 1] - &ks[0];
    if span >= q_n {
        return Err(Error::WindowViolation(format!(
            "window span {span} is not below q_n = {q_n}"
        )));
    }
    let separation = BigRational::new(BigInt::one(), BigInt::from(4) * &q_n);

    let mut sum = Real::zero();
    let mut witnesses = Vec::new();
    for k in ks {
        let dist = circle::dist(&alpha.mul_int(k).sub(x));
        if dist.certainly_lt_rat(&separation) {
            return Err(Error::SeparationViolation(format!(
                "‖{k}α - x‖ < 1/(4 q_n)"
            )));
        }
        if !dist.certainly_ge_rat(&separation) {
            return Err(Error::Ambiguous(format!(
                "separation of index {k} not certified at this precision"
            )));
        }
        let term = dist.recip()?;
        if witnesses.len() < 16 {
            witnesses.push((k.clone(), term.clone()));
        }
        sum = sum.add(&term);
    }
    let pass = sum.certainly_le_rat(&bound);
    // fitted constant against q_n ln q_n (not defined at q_n = 1)
    let constant_fit = if q_n > BigInt::one() {
        let lnq = ln_big_int(&q_n, prec)?;
        Some(sum.div(&lnq.mul_int(&q_n))?)
    } else {
        None
    };
    Ok(SumReport {
        sum,
        bound: Real::exact(bound),
        pass,
        constant_fit,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::Real;

    fn prec() -> Precision {
        Precision::from_digits(80)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn golden_small_window_passes() {
        // golden: q_4 = 5
        let g = Real::golden(prec());
        let rep = gap_check(&ints(&[0, 1, 2, 3]), &g, 4, prec()).unwrap();
        assert_eq!(rep.q_n, BigInt::from(5));
        assert!(rep.pass);
        let m = rep.min_pairwise.unwrap();
        assert!(m.certainly_ge_rat(&BigRational::new(1.into(), 10.into())));
    }

    #[test]
    fn exhaustive_pairwise_oracle_agrees() {
        // brute force over all pairs must give the same minimum as the
        // dedup-by-difference path
        let s = Real::sqrt_int(2, prec()).unwrap();
        let ks = ints(&[3, 5, 8, 9, 11]);
        let cf = expand_exact(&s, 6, prec()).unwrap();
        let q5 = cf.q(5).clone();
        assert!(BigInt::from(11 - 3) < q5);
        let rep = gap_check(&ks, &s, 5, prec()).unwrap();
        let mut brute: Option<BigRational> = None;
        for i in 0..ks.len() {
            for j in 0..i {
                let d = circle::dist(&s.mul_int(&(&ks[i] - &ks[j])));
                let v = d.value().clone();
                brute = Some(match brute {
                    Some(b) if b <= v => b,
                    _ => v,
                });
            }
        }
        assert_eq!(rep.min_pairwise.unwrap().value(), &brute.unwrap());
        assert!(rep.pass);
    }

    #[test]
    fn single_element_vacuous() {
        let g = Real::golden(prec());
        let rep = gap_check(&ints(&[7]), &g, 4, prec()).unwrap();
        assert!(rep.pass);
        assert!(rep.min_pairwise.is_none());
    }

    #[test]
    fn window_violation_detected() {
        let g = Real::golden(prec());
        let err = gap_check(&ints(&[0, 5]), &g, 4, prec());
        assert!(matches!(err, Err(Error::WindowViolation(_))));
    }

    #[test]
    fn reciprocal_sum_within_bound() {
        let g = Real::golden(prec());
        let x = Real::from_ratio(1, 2);
        let rep = reciprocal_sum_bound(&ints(&[0, 1, 2, 3]), &g, &x, 4, prec()).unwrap();
        assert!(rep.pass);
        // bound = 2(4·5 + 2·5·H_5) with H_5 = 137/60
        let h5 = BigRational::new(137.into(), 60.into());
        let expected =
            BigRational::from_integer(2.into()) * (BigRational::from_integer(20.into())
                + BigRational::from_integer(10.into()) * h5);
        assert_eq!(rep.bound.value(), &expected);
    }

    #[test]
    fn empty_list_passes() {
        let g = Real::golden(prec());
        let rep =
            reciprocal_sum_bound(&[], &g, &Real::from_ratio(1, 3), 4, prec()).unwrap();
        assert!(rep.pass);
        assert!(rep.sum.value().is_zero());
    }

    #[test]
    fn exact_hit_violates_separation() {
        let g = Real::golden(prec());
        // x = 2α exactly: distance 0 at k = 2
        let x = g.mul_int(&BigInt::from(2));
        let err = reciprocal_sum_bound(&ints(&[1, 2, 3]), &g, &x, 4, prec());
        assert!(matches!(err, Err(Error::SeparationViolation(_))));
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic_exact(1).unwrap(), BigRational::one());
        assert_eq!(
            harmonic_exact(5).unwrap(),
            BigRational::new(137.into(), 60.into())
        );
    }
}
