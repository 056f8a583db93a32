//! Working precision, expressed in bits with a decimal-digit front end.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// log2(10), rounded up at the fourth decimal.
const LOG2_10: f64 = 3.3220;

/// Working precision for rounded ball arithmetic.
///
/// Values are kept on the dyadic grid `Z / 2^bits`; every rounding step adds
/// at most `2^-(bits+1)` to the certified radius. The default corresponds to
/// 256 decimal digits and can be doubled when a reduction turns out
/// ambiguous.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Precision {
    bits: u32,
}

impl Precision {
    pub const DEFAULT_DIGITS: u32 = 256;

    /// Guard bits added on top of the digit request so that intermediate
    /// rounding does not eat into the promised digits.
    const GUARD_BITS: u32 = 32;

    pub fn from_digits(digits: u32) -> Self {
        let digits = digits.max(1);
        let bits = (digits as f64 * LOG2_10).ceil() as u32 + Self::GUARD_BITS;
        Precision { bits }
    }

    pub fn from_bits(bits: u32) -> Self {
        Precision { bits: bits.max(16) }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn digits(&self) -> u32 {
        ((self.bits.saturating_sub(Self::GUARD_BITS)) as f64 / LOG2_10).floor() as u32
    }

    pub fn double(&self) -> Self {
        Precision {
            bits: self.bits.saturating_mul(2),
        }
    }

    /// 2^-bits as an exact rational.
    pub fn eps(&self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::one() << self.bits)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::from_digits(Self::DEFAULT_DIGITS)
    }
}
