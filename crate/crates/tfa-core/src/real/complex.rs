//! Complex balls: pairs of certified reals.

use num_rational::BigRational;
use num_traits::Signed;

use super::functions::{atan2_turns, sincos2pi, sqrt};
use super::Real;
use crate::error::{Error, Result};
use crate::precision::Precision;

#[derive(Clone, Debug)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn zero() -> Self {
        Complex::new(Real::zero(), Real::zero())
    }

    pub fn one() -> Self {
        Complex::new(Real::one(), Real::zero())
    }

    pub fn from_real(re: Real) -> Self {
        Complex::new(re, Real::zero())
    }

    /// `e^{2πi·turns}`.
    pub fn unit(turns: &Real, prec: Precision) -> Self {
        let (s, c) = sincos2pi(turns, prec);
        Complex::new(c, s)
    }

    pub fn add(&self, o: &Complex) -> Complex {
        Complex::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &Complex) -> Complex {
        Complex::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn neg(&self) -> Complex {
        Complex::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> Complex {
        Complex::new(self.re.clone(), self.im.neg())
    }

    pub fn mul(&self, o: &Complex) -> Complex {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        Complex::new(re, im)
    }

    pub fn mul_round(&self, o: &Complex, prec: Precision) -> Complex {
        let z = self.mul(o);
        Complex::new(z.re.round(prec), z.im.round(prec))
    }

    pub fn scale(&self, k: &Real) -> Complex {
        Complex::new(self.re.mul(k), self.im.mul(k))
    }

    pub fn round(&self, prec: Precision) -> Complex {
        Complex::new(self.re.round(prec), self.im.round(prec))
    }

    /// `re^2 + im^2`, exact.
    pub fn abs_sq(&self) -> Real {
        self.re.square().add(&self.im.square())
    }

    /// Certified modulus.
    pub fn abs(&self, prec: Precision) -> Result<Real> {
        sqrt(&self.abs_sq(), prec)
    }

    /// Whether the ball certainly excludes the origin.
    pub fn certainly_nonzero(&self) -> bool {
        self.abs_sq().lo().is_positive()
    }

    pub fn recip(&self, prec: Precision) -> Result<Complex> {
        let d = self.abs_sq();
        if !d.lo().is_positive() {
            return Err(Error::Precision(
                "complex reciprocal of a ball containing zero".into(),
            ));
        }
        let inv = d.recip()?;
        Ok(self.conj().scale(&inv).round(prec))
    }

    pub fn div(&self, o: &Complex, prec: Precision) -> Result<Complex> {
        Ok(self.mul(&o.recip(prec)?).round(prec))
    }

    /// Argument in turns, in `(-1/2, 1/2]`.
    pub fn phase_turns(&self, prec: Precision) -> Result<Real> {
        atan2_turns(&self.im, &self.re, prec)
    }

    /// Argument in turns with the branch point moved away from the value:
    /// when the midpoint sits in the left half-plane the reflected vector is
    /// evaluated instead and a half turn is added, so values near the
    /// negative real axis stay certifiable.
    pub(crate) fn phase_turns_robust(&self, prec: Precision) -> Result<Real> {
        if self.re.value().is_negative() {
            let reflected = self.neg().phase_turns(prec)?;
            Ok(reflected.add_rat(&BigRational::new(1.into(), 2.into())))
        } else {
            self.phase_turns(prec)
        }
    }

    pub fn is_exact(&self) -> bool {
        self.re.is_exact() && self.im.is_exact()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Midpoint distance to another complex, exact.
    pub fn dist_sq(&self, o: &Complex) -> Real {
        self.sub(o).abs_sq()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cube_roots_of_unity_sum_to_zero() {
        let p = Precision::from_digits(60);
        let w1 = Complex::unit(&Real::from_ratio(1, 3), p);
        let w2 = Complex::unit(&Real::from_ratio(2, 3), p);
        let sum = Complex::one().add(&w1).add(&w2);
        assert!(sum.re.contains_zero());
        assert!(sum.im.contains_zero());
        assert!(sum.abs_sq().hi() < rat(1, 10).pow(100));
    }

    #[test]
    fn unit_circle_has_modulus_one() {
        let p = Precision::from_digits(40);
        let z = Complex::unit(&Real::from_ratio(5, 17), p);
        let m = z.abs_sq();
        assert!(m.contains_rat(&rat(1, 1)));
    }

    #[test]
    fn division_round_trip() {
        let p = Precision::from_digits(40);
        let a = Complex::new(Real::from_ratio(3, 5), Real::from_ratio(-2, 7));
        let b = Complex::new(Real::from_ratio(1, 3), Real::from_ratio(4, 9));
        let q = a.div(&b, p).unwrap();
        let back = q.mul(&b);
        assert!(back.re.contains_rat(&rat(3, 5)));
        assert!(back.im.contains_rat(&rat(-2, 7)));
    }

    #[test]
    fn phase_of_unit_matches_input() {
        let p = Precision::from_digits(40);
        let t = Real::from_ratio(3, 17);
        let z = Complex::unit(&t, p);
        let phase = z.phase_turns(p).unwrap();
        let d = phase.sub(&t);
        assert!(d.contains_zero());
    }
}
