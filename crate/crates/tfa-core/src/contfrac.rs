//! Continued-fraction expansion with certified quotients, convergents, and
//! the best-approximation verification operations.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::circle;
use crate::error::{Error, Result};
use crate::precision::Precision;
use crate::real::Real;

/// Partial quotients `a_0..a_D` with exact convergents `(p_k, q_k)`.
///
/// A quotient is emitted only while the certified interval of the remainder
/// reciprocal is narrower than 1/4 and does not straddle an integer, so every
/// listed quotient is correct for the true underlying number.
#[derive(Clone, Debug)]
pub struct ContinuedFraction {
    pub quotients: Vec<BigInt>,
    pub convergents: Vec<(BigInt, BigInt)>,
    /// The input is rational and the expansion ended exactly.
    pub terminal: bool,
}

impl ContinuedFraction {
    /// Largest certified index.
    pub fn valid_depth(&self) -> usize {
        self.quotients.len().saturating_sub(1)
    }

    pub fn p(&self, k: usize) -> &BigInt {
        &self.convergents[k].0
    }

    pub fn q(&self, k: usize) -> &BigInt {
        &self.convergents[k].1
    }

    /// `p_k q_{k-1} - p_{k-1} q_k = (-1)^{k-1}` for all certified k.
    pub fn determinant_identity_holds(&self) -> bool {
        for k in 1..self.convergents.len() {
            let (pk, qk) = &self.convergents[k];
            let (pk1, qk1) = &self.convergents[k - 1];
            let det = pk * qk1 - pk1 * qk;
            let expected = if (k - 1) % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            if det != expected {
                return false;
            }
        }
        true
    }
}

/// Best-effort expansion: emits as many certified quotients as the input's
/// radius allows, up to `depth` quotient terms in total.
pub fn expand(x: &Real, depth: usize) -> Result<ContinuedFraction> {
    if depth == 0 {
        return Err(Error::Parse("expansion depth must be >= 1".into()));
    }
    let mut lo = x.lo();
    let mut hi = x.hi();
    let exact = x.is_exact();
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));

    let mut quotients: Vec<BigInt> = Vec::new();
    let mut convergents: Vec<(BigInt, BigInt)> = Vec::new();
    // seeds p_{-1} = 1, p_{-2} = 0; q_{-1} = 0, q_{-2} = 1
    let (mut p_prev, mut p_prev2) = (BigInt::one(), BigInt::zero());
    let (mut q_prev, mut q_prev2) = (BigInt::zero(), BigInt::one());
    let mut terminal = false;

    for k in 0..depth {
        if k > 0 {
            // remainder in (0, 1): invert (order swaps)
            let new_lo = hi.recip();
            let new_hi = lo.recip();
            lo = new_lo;
            hi = new_hi;
            if !exact && (&hi - &lo) >= quarter {
                break;
            }
        }
        let flo = lo.floor().to_integer();
        let fhi = hi.floor().to_integer();
        if flo != fhi {
            break;
        }
        let a = flo;
        let p = &a * &p_prev + &p_prev2;
        let q = &a * &q_prev + &q_prev2;
        quotients.push(a.clone());
        convergents.push((p.clone(), q.clone()));
        p_prev2 = std::mem::replace(&mut p_prev, p);
        q_prev2 = std::mem::replace(&mut q_prev, q);

        let ar = BigRational::from_integer(a);
        lo -= &ar;
        hi -= &ar;
        if exact && lo.is_zero() {
            terminal = true;
            break;
        }
        if !lo.is_positive() {
            break;
        }
    }

    if quotients.is_empty() {
        return Err(Error::Precision(
            "interval too wide to certify even the integer part".into(),
        ));
    }
    Ok(ContinuedFraction {
        quotients,
        convergents,
        terminal,
    })
}

/// Expansion that must reach `depth` quotients (or terminate exactly).
/// Re-materializes re-materializable inputs at doubled precision as needed;
/// fails with [`Error::DepthExhausted`] otherwise.
pub fn expand_exact(x: &Real, depth: usize, prec: Precision) -> Result<ContinuedFraction> {
    let mut cur = x.clone();
    let mut bits = prec.bits();
    for _ in 0..8 {
        let cf = expand(&cur, depth)?;
        if cf.terminal || cf.quotients.len() == depth {
            return Ok(cf);
        }
        bits = bits.saturating_mul(2);
        match x.refine(Precision::from_bits(bits)) {
            Some(nx) => cur = nx,
            None => {
                return Err(Error::DepthExhausted {
                    valid_depth: cf.valid_depth(),
                })
            }
        }
    }
    let cf = expand(&cur, depth)?;
    if cf.terminal || cf.quotients.len() == depth {
        Ok(cf)
    } else {
        Err(Error::DepthExhausted {
            valid_depth: cf.valid_depth(),
        })
    }
}

/// Report of the exhaustive best-approximation scan below `q_{n+1}`.
#[derive(Clone, Debug)]
pub struct BestApproxReport {
    pub n: usize,
    pub q_n: BigInt,
    pub q_next: BigInt,
    /// `‖q_n α‖`
    pub dist_at_qn: Real,
    /// exhaustive `min_{1<=k<q_{n+1}} ‖k α‖`
    pub min_dist: Real,
    pub argmin: BigInt,
    pub pass: bool,
}

/// Exhaustively verify that `q_n` minimizes `‖k α‖` over `1 <= k < q_{n+1}`.
pub fn best_approx_check(
    x: &Real,
    n: usize,
    cap: u64,
    prec: Precision,
) -> Result<BestApproxReport> {
    let cf = expand_exact(x, n + 2, prec)?;
    if cf.convergents.len() < n + 2 {
        return Err(Error::Terminal(format!(
            "expansion terminates at index {}, need q_{}",
            cf.valid_depth(),
            n + 1
        )));
    }
    let q_n = cf.q(n).clone();
    let q_next = cf.q(n + 1).clone();
    if q_next > BigInt::from(cap) {
        return Err(Error::CapExceeded(format!(
            "q_{} = {} exceeds brute-force cap {}",
            n + 1,
            q_next,
            cap
        )));
    }
    let q_next_u = u64::try_from(&q_next).expect("cap-checked");

    // vacuous range: q_{n+1} = 1 leaves no k to scan
    if q_next_u <= 1 {
        let d = circle::dist(&x.mul_int(&q_n));
        return Ok(BestApproxReport {
            n,
            q_n: q_n.clone(),
            q_next,
            dist_at_qn: d.clone(),
            min_dist: d,
            argmin: q_n,
            pass: true,
        });
    }

    // incremental k·x mod 1 on the midpoint, exact; radius grows linearly
    let v = x.value();
    let r = x.radius();
    let mut frac = circle::frac_rat(v);
    let mut best: Option<(BigInt, Real)> = None;
    for k in 1..q_next_u {
        if k > 1 {
            frac += v;
            frac = circle::frac_rat(&frac);
        }
        let dist_val = circle::dist_rat(&frac);
        let ball = Real::with_radius(dist_val, r * BigRational::from_integer(BigInt::from(k)));
        match &best {
            None => best = Some((BigInt::from(k), ball)),
            Some((_, cur)) => match ball.cmp_certified(cur) {
                Some(std::cmp::Ordering::Less) => best = Some((BigInt::from(k), ball)),
                Some(_) => {}
                None => {
                    return Err(Error::Ambiguous(format!(
                        "cannot order ‖{k}α‖ against the current minimum at this precision"
                    )))
                }
            },
        }
    }
    let (argmin, min_dist) = best.expect("non-empty scan");
    let dist_at_qn = circle::dist(&x.mul_int(&q_n));
    let pass = argmin == q_n;
    Ok(BestApproxReport {
        n,
        q_n,
        q_next,
        dist_at_qn,
        min_dist,
        argmin,
        pass,
    })
}

/// Report of the two-sided approximation quality sandwich.
#[derive(Clone, Debug)]
pub struct QualityReport {
    pub n: usize,
    pub q_n: BigInt,
    pub q_next: BigInt,
    /// `‖q_n α‖`
    pub dist: Real,
    /// `1 / (2 q_{n+1})`
    pub lower: BigRational,
    /// `1 / q_{n+1}`
    pub upper: BigRational,
    pub pass: bool,
}

/// Certify `1/(2 q_{n+1}) <= ‖q_n α‖ <= 1/q_{n+1}`.
pub fn quality_bounds(x: &Real, n: usize, prec: Precision) -> Result<QualityReport> {
    let cf = expand_exact(x, n + 2, prec)?;
    if cf.convergents.len() < n + 2 {
        return Err(Error::Terminal(format!(
            "expansion terminates at index {}; no q_{} exists",
            cf.valid_depth(),
            n + 1
        )));
    }
    let q_n = cf.q(n).clone();
    let q_next = cf.q(n + 1).clone();
    let dist = circle::dist(&x.mul_int(&q_n));
    let upper = BigRational::new(BigInt::one(), q_next.clone());
    let lower = BigRational::new(BigInt::one(), BigInt::from(2) * &q_next);
    let pass = dist.certainly_ge_rat(&lower) && dist.certainly_le_rat(&upper);
    Ok(QualityReport {
        n,
        q_n,
        q_next,
        dist,
        lower,
        upper,
        pass,
    })
}

/// Certified sign of `p_k/q_k - x` for each convergent; used to check the
/// alternation property.
pub fn convergent_signs(cf: &ContinuedFraction, x: &Real) -> Result<Vec<Sign>> {
    let mut out = Vec::with_capacity(cf.convergents.len());
    for (p, q) in &cf.convergents {
        let diff = Real::exact(BigRational::new(p.clone(), q.clone())).sub(x);
        match diff.sign_certified() {
            Some(s) => out.push(s),
            None => {
                if cf.terminal && diff.contains_zero() {
                    out.push(Sign::NoSign);
                } else {
                    return Err(Error::Ambiguous(
                        "convergent difference sign not certified".into(),
                    ));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::parse_real;

    fn prec() -> Precision {
        Precision::from_digits(80)
    }

    #[test]
    fn golden_expansion_is_all_ones() {
        let g = Real::golden(prec());
        let cf = expand(&g, 10).unwrap();
        assert_eq!(cf.quotients.len(), 10);
        for a in &cf.quotients {
            assert_eq!(*a, BigInt::one());
        }
        let q: Vec<i64> = vec![1, 1, 2, 3, 5, 8, 13, 21, 34, 55];
        for (k, expected) in q.iter().enumerate() {
            assert_eq!(*cf.q(k), BigInt::from(*expected));
        }
        assert!(!cf.terminal);
        assert!(cf.determinant_identity_holds());
    }

    #[test]
    fn sqrt2_expansion() {
        let s = Real::sqrt_int(2, prec()).unwrap();
        let cf = expand(&s, 6).unwrap();
        let expected: Vec<i64> = vec![1, 2, 2, 2, 2, 2];
        for (k, e) in expected.iter().enumerate() {
            assert_eq!(cf.quotients[k], BigInt::from(*e));
        }
    }

    /// Independent oracle: plain Euclidean algorithm on the fraction.
    fn euclid_cf(mut num: i64, mut den: i64) -> Vec<i64> {
        let mut out = Vec::new();
        loop {
            let a = num.div_euclid(den);
            out.push(a);
            let rem = num - a * den;
            if rem == 0 {
                break;
            }
            num = den;
            den = rem;
        }
        out
    }

    #[test]
    fn rational_terminates_canonically() {
        let x = parse_real("rat:415/93", Precision::default()).unwrap();
        let cf = expand(&x, 32).unwrap();
        assert!(cf.terminal);
        let expected = euclid_cf(415, 93);
        assert_eq!(expected, vec![4, 2, 6, 7]);
        let got: Vec<i64> = cf
            .quotients
            .iter()
            .map(|a| i64::try_from(a).unwrap())
            .collect();
        assert_eq!(got, expected);
        // canonical form: last quotient >= 2 whenever length > 1
        assert!(cf.quotients.last().unwrap() >= &BigInt::from(2));
    }

    #[test]
    fn canonical_form_on_random_rationals() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let num = rng.gen_range(-10_000i64..10_000);
            let den = rng.gen_range(1i64..10_000);
            let x = Real::from_ratio(num, den);
            let cf = expand(&x, 64).unwrap();
            assert!(cf.terminal);
            assert!(cf.determinant_identity_holds());
            if cf.quotients.len() > 1 {
                assert!(cf.quotients.last().unwrap() >= &BigInt::from(2));
            }
            // value round-trip
            let mut acc = BigRational::from_integer(cf.quotients.last().unwrap().clone());
            for a in cf.quotients[..cf.quotients.len() - 1].iter().rev() {
                acc = BigRational::from_integer(a.clone()) + acc.recip();
            }
            assert_eq!(acc, *x.value());
        }
    }

    #[test]
    fn expansion_depth_tracks_precision() {
        // a deliberately wide ball certifies only a few quotients
        let wide = Real::with_radius(
            BigRational::new(BigInt::from(577), BigInt::from(408)),
            BigRational::new(BigInt::one(), BigInt::from(100_000)),
        );
        let cf = expand(&wide, 30).unwrap();
        assert!(cf.quotients.len() < 12);
        // but sqrt(2) itself refines automatically through expand_exact
        let s = Real::sqrt_int(2, Precision::from_digits(20)).unwrap();
        let cf = expand_exact(&s, 60, Precision::from_digits(20)).unwrap();
        assert_eq!(cf.quotients.len(), 60);
    }

    #[test]
    fn best_approx_golden_n4() {
        let g = Real::golden(prec());
        let rep = best_approx_check(&g, 4, 1_000_000, prec()).unwrap();
        assert_eq!(rep.q_n, BigInt::from(5));
        assert_eq!(rep.q_next, BigInt::from(8));
        assert!(rep.pass);
        assert_eq!(rep.argmin, BigInt::from(5));
    }

    #[test]
    fn best_approx_sqrt2_n3() {
        let s = Real::sqrt_int(2, prec()).unwrap();
        let rep = best_approx_check(&s, 3, 1_000_000, prec()).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.argmin, rep.q_n);
    }

    #[test]
    fn best_approx_vacuous_range() {
        // golden: q_0 = q_1 = 1, so n = 0 scans an empty range
        let g = Real::golden(prec());
        let rep = best_approx_check(&g, 0, 100, prec()).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn best_approx_cap() {
        let g = Real::golden(Precision::from_digits(200));
        let err = best_approx_check(&g, 40, 1000, Precision::from_digits(200));
        assert!(matches!(err, Err(Error::CapExceeded(_))));
    }

    #[test]
    fn quality_bounds_golden_n5() {
        let g = Real::golden(prec());
        let rep = quality_bounds(&g, 5, prec()).unwrap();
        assert_eq!(rep.q_n, BigInt::from(8));
        assert_eq!(rep.q_next, BigInt::from(13));
        assert!(rep.pass);
        assert_eq!(rep.lower, BigRational::new(BigInt::one(), BigInt::from(26)));
    }

    #[test]
    fn quality_bounds_terminal_error() {
        let x = Real::from_ratio(1, 3);
        let res = quality_bounds(&x, 3, Precision::default());
        assert!(matches!(res, Err(Error::Terminal(_))));
    }

    #[test]
    fn convergents_alternate_around_sqrt3() {
        let s = Real::sqrt_int(3, prec()).unwrap();
        let cf = expand(&s, 20).unwrap();
        let signs = convergent_signs(&cf, &s).unwrap();
        for w in signs.windows(2) {
            assert_ne!(w[0], w[1]);
        }
    }
}
