//! Comparison of the product over `[P]` translates at `x` against the same
//! product at `y = x - P`, where `P = ±N/β` comes from a scale certificate.
//!
//! Because `β y = β x - N`, the `β`-rotation is untouched by the shift; the
//! `α`-rotation moves by exactly `e^{2πiNα/β}`, so each factor differs by at
//! most `|C1| · |e^{2πiNα/β} - 1|`. Chaining `1 + u <= e^u` over the factors
//! gives the certified bound
//! `|Π P(y+n)| <= |Π P(x+n)| · exp(perturbation · Σ 1/|P(x+n)|)`,
//! which is checked per sample on the log scale. The reindexing identity
//! `Π_{n<[P]} P(y+n) = Π_{1<=n<=[P]} P(x'-n)` with `x' = y + [P]` is verified
//! factor by factor, not just at product level.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::circle;
use crate::diophantine::{product_reciprocal_sum, IntervalUnion};
use crate::engine::products::{product_log, translate_reciprocal_sum};
use crate::engine::scales::ScaleCertificate;
use crate::error::{Error, Result};
use crate::precision::Precision;
use crate::real::{exp, sin2pi, sqrt, Real};
use crate::trigpoly::TrigPoly;

#[derive(Clone, Debug)]
pub struct SampleComparison {
    pub x: BigRational,
    /// `log |Π P(y+n)| - log |Π P(x+n)|`
    pub log_ratio: Real,
    /// `perturbation · Σ_{n<[P]} 1/|P(x+n)|`
    pub log_bound: Real,
    pub ratio: Real,
    pub bound: Real,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct ShiftComparisonReport {
    /// The certificate scale `N`.
    pub scale: BigInt,
    /// `P = ±N/β`, positive.
    pub period_shift: Real,
    /// `[P]`, the number of factors in each product.
    pub steps: u64,
    /// `|e^{2πiNα/β} - 1|`
    pub perturbation_base: Real,
    /// `|C1| · |e^{2πiNα/β} - 1|`
    pub perturbation: Real,
    pub samples: Vec<SampleComparison>,
    /// The two factor lists are the same multiset, checked exactly.
    pub index_identity_ok: bool,
    pub exceptional_measure: BigRational,
    pub pass: bool,
}

/// Compare shifted products at the given sample points, which must lie
/// outside the exceptional set of the product analysis at budget `delta`.
pub fn compare_shifted_products(
    poly: &TrigPoly,
    cert: &ScaleCertificate,
    xs: &[BigRational],
    delta: &BigRational,
    prec: Precision,
) -> Result<ShiftComparisonReport> {
    let (report, xs_owned);
    {
        // the exceptional set at this scale, from the product analysis
        let gamma = window_for_scale(cert);
        report = product_reciprocal_sum(poly, &cert.scale, &gamma.0, &gamma.1, delta, 0, 0, prec)?;
        xs_owned = xs.to_vec();
    }
    compare_with_exceptional(poly, cert, &xs_owned, &report.exceptional, prec)
}

/// The admissibility window used when rebuilding the exceptional set for a
/// certificate: `N = m q_n` sits inside `[q_n, (m+1) q_n]`.
fn window_for_scale(cert: &ScaleCertificate) -> (BigRational, BigRational) {
    (
        BigRational::new(BigInt::from(1), BigInt::from(cert.multiplier + 1)),
        BigRational::from_integer(BigInt::from(cert.multiplier + 1)),
    )
}

pub fn compare_with_exceptional(
    poly: &TrigPoly,
    cert: &ScaleCertificate,
    xs: &[BigRational],
    exceptional: &IntervalUnion,
    prec: Precision,
) -> Result<ShiftComparisonReport> {
    // P = N/β for β > 0, -N/β for β < 0
    let n_over_beta = Real::exact(BigRational::from_integer(cert.scale.clone())).div(&poly.beta)?;
    let period_shift = match poly.beta.sign_certified() {
        Some(num_bigint::Sign::Plus) => n_over_beta,
        Some(num_bigint::Sign::Minus) => n_over_beta.neg(),
        _ => {
            return Err(Error::Precision(
                "sign of β not certified".into(),
            ))
        }
    };
    let steps_big = period_shift.floor_certified()?;
    let steps = steps_big
        .to_u64()
        .ok_or_else(|| Error::CapExceeded("shift too large to scan".into()))?;

    // perturbation: |e^{2πiθ} - 1| = 2 sin(π ‖θ‖) with θ = N α/β
    let ratio = poly.alpha.div(&poly.beta)?;
    let theta_dist = circle::dist(&ratio.mul_int(&cert.scale));
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let perturbation_base = sin2pi(&theta_dist.mul_rat(&half), prec)
        .mul_rat(&BigRational::from_integer(BigInt::from(2)))
        .abs();
    let c1_mod = sqrt(&poly.c1.abs_sq(), prec)?;
    let perturbation = perturbation_base.mul(&c1_mod);

    let mut samples = Vec::with_capacity(xs.len());
    let mut all_pass = true;
    let mut index_identity_ok = true;
    for x in xs {
        if exceptional.contains(&circle::frac_rat(x)) {
            return Err(Error::SampleInExceptionalSet(format!(
                "sample {x} lies inside the exceptional set"
            )));
        }
        let xr = Real::exact(x.clone());
        let yr = xr.sub(&period_shift);

        let lx = product_log(poly, &xr, steps, prec)?;
        let ly = product_log(poly, &yr, steps, prec)?;
        if !lx.clamp_events.is_empty() || !ly.clamp_events.is_empty() {
            return Err(Error::Precision(
                "clamped factor inside the comparison products".into(),
            ));
        }
        let (recip_sum, clamps) = translate_reciprocal_sum(poly, &xr, steps, prec)?;
        if !clamps.is_empty() {
            return Err(Error::Precision(
                "clamped factor inside the reciprocal sum".into(),
            ));
        }

        let log_ratio = ly.log_magnitude.sub(&lx.log_magnitude);
        let log_bound = perturbation.mul(&recip_sum);
        let pass = log_ratio.hi() <= log_bound.lo();
        all_pass &= pass;

        // reindexing: Π_{n<s} P(y+n) = Π_{1<=n<=s} P(x'-n) with x' = y + s;
        // the factor arguments must agree exactly as ball values
        index_identity_ok &= index_identity_holds(&yr, steps);

        samples.push(SampleComparison {
            x: x.clone(),
            ratio: exp(&log_ratio, prec)?,
            bound: exp(&log_bound, prec)?,
            log_ratio,
            log_bound,
            pass,
        });
    }

    Ok(ShiftComparisonReport {
        scale: cert.scale.clone(),
        period_shift,
        steps,
        perturbation_base,
        perturbation,
        samples,
        index_identity_ok,
        exceptional_measure: exceptional.measure(),
        pass: all_pass && index_identity_ok,
    })
}

/// Exact multiset equality of the two factor argument lists.
fn index_identity_holds(y: &Real, steps: u64) -> bool {
    let x_prime = y.add_rat(&BigRational::from_integer(BigInt::from(steps)));
    for n in 0..steps {
        let left = y.add_rat(&BigRational::from_integer(BigInt::from(n)));
        let right = x_prime.add_rat(&BigRational::from_integer(-BigInt::from(steps - n)));
        if left.value() != right.value() || left.radius() != right.radius() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::scales::construct_scale_certificates;
    use crate::real::{parse_real, Complex};

    fn prec() -> Precision {
        Precision::from_digits(48)
    }

    fn c(re: i64, im: i64) -> Complex {
        Complex::new(Real::from_int(re), Real::from_int(im))
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn spiky_poly_and_cert() -> (TrigPoly, ScaleCertificate) {
        let p = prec();
        let alpha = parse_real("cf:[0;1,50,1,50,...]", Precision::from_digits(128)).unwrap();
        let poly = TrigPoly::new(c(1, 0), c(1, 0), c(1, 0), alpha.clone(), Real::one()).unwrap();
        let rep = construct_scale_certificates(
            &alpha,
            &Real::one(),
            &rat(1, 2),
            40,
            &rat(2, 1),
            Precision::from_digits(128),
        )
        .unwrap();
        let cert = rep.certificates[0].clone();
        (poly, cert)
    }

    #[test]
    fn integral_shift_for_unit_beta() {
        let (poly, cert) = spiky_poly_and_cert();
        // β = 1: the shift is the integer N itself
        let rep = compare_shifted_products(
            &poly,
            &cert,
            &[rat(1, 7), rat(2, 5)],
            &rat(1, 10),
            prec(),
        )
        .unwrap();
        assert_eq!(BigInt::from(rep.steps), cert.scale);
        assert!(rep.period_shift.contains_rat(&BigRational::from_integer(cert.scale.clone())));
        assert!(rep.index_identity_ok);
        assert!(rep.pass, "sample log ratios should certify below the bound");
    }

    #[test]
    fn zero_free_polynomial_bound() {
        // C = (3,1,1): |P| >= 1, so the bound is directly checkable
        let p = prec();
        let alpha = parse_real("cf:[0;1,50,1,50,...]", Precision::from_digits(128)).unwrap();
        let poly = TrigPoly::new(c(3, 0), c(1, 0), c(1, 0), alpha.clone(), Real::one()).unwrap();
        let rep_sc = construct_scale_certificates(
            &alpha,
            &Real::one(),
            &rat(1, 2),
            40,
            &rat(2, 1),
            Precision::from_digits(128),
        )
        .unwrap();
        let cert = rep_sc.certificates[0].clone();
        let rep = compare_shifted_products(&poly, &cert, &[rat(3, 11)], &rat(1, 10), p).unwrap();
        assert!(rep.pass);
        let sample = &rep.samples[0];
        // ratio <= exp(perturbation · steps / min|p|) with min|p| >= 1
        let crude = rep
            .perturbation
            .mul_rat(&BigRational::from_integer(BigInt::from(rep.steps)));
        assert!(sample.log_bound.hi() <= crude.hi());
    }

    #[test]
    fn sample_inside_set_rejected() {
        let (poly, cert) = spiky_poly_and_cert();
        let p = prec();
        let gamma = super::window_for_scale(&cert);
        let ps = product_reciprocal_sum(
            &poly,
            &cert.scale,
            &gamma.0,
            &gamma.1,
            &rat(1, 10),
            0,
            0,
            prec(),
        )
        .unwrap();
        let inside = ps
            .exceptional
            .intervals()
            .first()
            .map(|(a, b)| (a + b) / rat(2, 1));
        if let Some(bad) = inside {
            let err = compare_with_exceptional(&poly, &cert, &[bad], &ps.exceptional, p);
            assert!(matches!(err, Err(Error::SampleInExceptionalSet(_))));
        }
    }
}
