//! Finite-depth growth classification of a frequency ratio.
//!
//! Reports the sequences `a_k / ln q_k` and `q_{k+1} / (q_k ln q_k)` with
//! running maxima, a finite-depth growth verdict, a power-law probe
//! (existence of `k` with `q_{k+1} >= q_k^γ` over a grid of exponents), and
//! rationality detection. All verdicts are labeled finite-depth evidence; no
//! limit statement is ever claimed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::contfrac::expand_exact;
use crate::error::Result;
use crate::precision::Precision;
use crate::real::{ln_big_int, Real};

#[derive(Clone, Debug)]
pub struct GrowthEntry {
    pub k: usize,
    pub quotient: BigInt,
    pub denominator: BigInt,
    /// `a_k / ln q_k` (absent while `q_k = 1`).
    pub quotient_over_log: Option<Real>,
    /// `q_{k+1} / (q_k ln q_k)` (absent while `q_k = 1` or at the last index).
    pub growth_ratio: Option<Real>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GrowthVerdict {
    /// Tail maxima stay above the threshold: finite-depth evidence for
    /// persistent spikes.
    PositiveEvidence,
    /// Ratios decay across the computed range.
    DecayEvidence,
    /// The ratio is rational; the lattice-type condition applies instead.
    Rational,
}

#[derive(Clone, Debug)]
pub struct GrowthClassification {
    pub depth: usize,
    pub terminal: bool,
    pub entries: Vec<GrowthEntry>,
    pub max_growth_ratio: Option<Real>,
    /// Max of the growth ratio over the second half of the computed range.
    pub tail_max_growth_ratio: Option<Real>,
    pub first_half_max_growth_ratio: Option<Real>,
    pub verdict: GrowthVerdict,
    /// For each probed exponent `γ`, the first `k` with `q_{k+1} >= q_k^γ`
    /// beyond `q_k >= 2`, if any.
    pub power_law_hits: Vec<(BigRational, Option<usize>)>,
    /// Always true: everything above is finite-depth evidence.
    pub finite_depth_evidence: bool,
}

pub const DEFAULT_GAMMA_GRID: [(i64, i64); 4] = [(11, 10), (6, 5), (3, 2), (2, 1)];

/// Classify the growth of the partial quotients of `ratio` up to `depth`.
pub fn classify_growth(
    ratio: &Real,
    depth: usize,
    threshold: &BigRational,
    gamma_grid: &[BigRational],
    prec: Precision,
) -> Result<GrowthClassification> {
    let cf = expand_exact(ratio, depth + 1, prec)?;
    let terminal = cf.terminal;
    let top = cf.convergents.len();

    let mut entries = Vec::new();
    for k in 0..top {
        let q_k = cf.q(k).clone();
        let a_k = cf.quotients[k].clone();
        let (qol, gr) = if q_k >= BigInt::from(2) {
            let ln_q = ln_big_int(&q_k, prec)?;
            let qol = Real::exact(BigRational::from_integer(a_k.clone())).div(&ln_q)?;
            let gr = if k + 1 < top {
                let q_next = Real::exact(BigRational::from_integer(cf.q(k + 1).clone()));
                Some(q_next.div(&ln_q.mul_int(&q_k))?)
            } else {
                None
            };
            (Some(qol), gr)
        } else {
            (None, None)
        };
        entries.push(GrowthEntry {
            k,
            quotient: a_k,
            denominator: q_k,
            quotient_over_log: qol,
            growth_ratio: gr,
        });
    }

    let ratios: Vec<(usize, &Real)> = entries
        .iter()
        .filter_map(|e| e.growth_ratio.as_ref().map(|r| (e.k, r)))
        .collect();
    let max_of = |slice: &[(usize, &Real)]| -> Option<Real> {
        slice
            .iter()
            .map(|(_, r)| (*r).clone())
            .max_by(|a, b| a.value().cmp(b.value()))
    };
    let max_growth = max_of(&ratios);
    let mid = top / 2;
    let first_half: Vec<_> = ratios.iter().filter(|(k, _)| *k < mid).cloned().collect();
    let second_half: Vec<_> = ratios.iter().filter(|(k, _)| *k >= mid).cloned().collect();
    let first_half_max = max_of(&first_half);
    let tail_max = max_of(&second_half);

    let verdict = if terminal {
        GrowthVerdict::Rational
    } else {
        let positive = match (&tail_max, &first_half_max) {
            (Some(t), Some(f)) => {
                let quarter = f.value() / BigRational::from_integer(BigInt::from(4));
                t.value() >= threshold && t.value() >= &quarter
            }
            (Some(t), None) => t.value() >= threshold,
            _ => false,
        };
        if positive {
            GrowthVerdict::PositiveEvidence
        } else {
            GrowthVerdict::DecayEvidence
        }
    };

    // power-law probe: q_{k+1}^den >= q_k^num, exact integer comparison
    let mut power_law_hits = Vec::new();
    for gamma in gamma_grid {
        let num = gamma.numer().to_u32().unwrap_or(u32::MAX);
        let den = gamma.denom().to_u32().unwrap_or(u32::MAX);
        let mut hit = None;
        for k in 0..top.saturating_sub(1) {
            let q_k = cf.q(k);
            if *q_k < BigInt::from(2) {
                continue;
            }
            if cf.q(k + 1).pow(den) >= q_k.pow(num) {
                hit = Some(k);
                break;
            }
        }
        power_law_hits.push((gamma.clone(), hit));
    }

    Ok(GrowthClassification {
        depth,
        terminal,
        entries,
        max_growth_ratio: max_growth,
        tail_max_growth_ratio: tail_max,
        first_half_max_growth_ratio: first_half_max,
        verdict,
        power_law_hits,
        finite_depth_evidence: true,
    })
}

pub fn default_gamma_grid() -> Vec<BigRational> {
    DEFAULT_GAMMA_GRID
        .iter()
        .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
        .collect()
}

/// Default tail-max threshold for the growth verdict.
pub fn default_threshold() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::parse_real;

    fn prec() -> Precision {
        Precision::from_digits(200)
    }

    #[test]
    fn golden_decays() {
        // all quotients 1: a_k / ln q_k -> 0 along the computed range
        let g = Real::golden(prec());
        let cls = classify_growth(&g, 40, &default_threshold(), &default_gamma_grid(), prec())
            .unwrap();
        assert_eq!(cls.verdict, GrowthVerdict::DecayEvidence);
        assert!(cls.finite_depth_evidence);
        // the last quotient-over-log values are small
        let last = cls
            .entries
            .iter()
            .rev()
            .find_map(|e| e.quotient_over_log.as_ref())
            .unwrap();
        assert!(last.hi() < BigRational::new(1.into(), 10.into()));
        // bounded quotients never double the denominator: no hit at γ = 2
        let gamma2 = cls
            .power_law_hits
            .iter()
            .find(|(g, _)| *g == BigRational::from_integer(2.into()))
            .unwrap();
        assert!(gamma2.1.is_none());
    }

    #[test]
    fn geometric_quotients_report_positive() {
        // a_k = 2^{k-1} along the computed range (periodically extended
        // beyond it to stay irrational): ln q_k grows like k² ln 2 / 2 while
        // a_k is geometric
        let p = prec();
        let spec = format!(
            "cf:[0;{},...]",
            (0..24).map(|i| (1u64 << i).to_string()).collect::<Vec<_>>().join(",")
        );
        let x = parse_real(&spec, p).unwrap();
        let cls =
            classify_growth(&x, 23, &default_threshold(), &default_gamma_grid(), p).unwrap();
        assert_eq!(cls.verdict, GrowthVerdict::PositiveEvidence);
        // growth is strong enough to hit every probed power law
        for (_, hit) in &cls.power_law_hits {
            assert!(hit.is_some());
        }
    }

    #[test]
    fn rational_is_terminal() {
        let x = Real::from_ratio(5, 7);
        let cls = classify_growth(&x, 20, &default_threshold(), &default_gamma_grid(), prec())
            .unwrap();
        assert_eq!(cls.verdict, GrowthVerdict::Rational);
        assert!(cls.terminal);
    }

    #[test]
    fn sqrt2_decays() {
        let s = Real::sqrt_int(2, prec()).unwrap();
        let cls = classify_growth(&s, 40, &default_threshold(), &default_gamma_grid(), prec())
            .unwrap();
        assert_eq!(cls.verdict, GrowthVerdict::DecayEvidence);
    }
}
