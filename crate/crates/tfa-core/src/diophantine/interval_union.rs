//! Unions of closed subintervals of the circle `[0, 1)` with exact rational
//! endpoints and exact total measure.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Sorted, pairwise-disjoint closed intervals inside `[0, 1)`.
#[derive(Clone, Debug, Default)]
pub struct IntervalUnion {
    intervals: Vec<(BigRational, BigRational)>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion { intervals: vec![] }
    }

    /// Build from raw intervals on the real line; each is wrapped onto the
    /// circle (splitting at 1 as needed), then the set is normalized.
    pub fn from_raw(raw: Vec<(BigRational, BigRational)>) -> Self {
        let one = BigRational::one();
        let mut pieces: Vec<(BigRational, BigRational)> = Vec::new();
        for (a, b) in raw {
            if b <= a {
                continue;
            }
            if &b - &a >= one {
                // covers the whole circle
                pieces.clear();
                pieces.push((BigRational::zero(), one.clone()));
                break;
            }
            let fa = &a - BigRational::from_integer(a.floor().to_integer());
            let len = &b - &a;
            let fb = &fa + len;
            if fb <= one {
                pieces.push((fa, fb));
            } else {
                pieces.push((fa, one.clone()));
                pieces.push((BigRational::zero(), fb - &one));
            }
        }
        Self::normalize(pieces)
    }

    fn normalize(mut pieces: Vec<(BigRational, BigRational)>) -> Self {
        pieces.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(BigRational, BigRational)> = Vec::new();
        for (a, b) in pieces {
            match merged.last_mut() {
                Some((_, last_b)) if a <= *last_b => {
                    if b > *last_b {
                        *last_b = b;
                    }
                }
                _ => merged.push((a, b)),
            }
        }
        IntervalUnion { intervals: merged }
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut all = self.intervals.clone();
        all.extend(other.intervals.iter().cloned());
        Self::normalize(all)
    }

    pub fn intervals(&self) -> &[(BigRational, BigRational)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Exact total length.
    pub fn measure(&self) -> BigRational {
        self.intervals
            .iter()
            .fold(BigRational::zero(), |acc, (a, b)| acc + (b - a))
    }

    /// Membership of a point of `[0, 1)`.
    pub fn contains(&self, x: &BigRational) -> bool {
        debug_assert!(!x.is_negative() && *x < BigRational::one());
        // binary search on the sorted starts
        let mut lo = 0usize;
        let mut hi = self.intervals.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.intervals[mid].0 <= *x {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        if lo == 0 {
            return false;
        }
        let (a, b) = &self.intervals[lo - 1];
        a <= x && x <= b
    }

    /// Complement gaps (open) inside `[0, 1)`, as closed rational intervals.
    pub fn complement_gaps(&self) -> Vec<(BigRational, BigRational)> {
        let one = BigRational::one();
        let mut gaps = Vec::new();
        let mut cursor = BigRational::zero();
        for (a, b) in &self.intervals {
            if *a > cursor {
                gaps.push((cursor.clone(), a.clone()));
            }
            if *b > cursor {
                cursor = b.clone();
            }
        }
        if cursor < one {
            gaps.push((cursor, one));
        }
        gaps
    }

    /// Map `u ∈ [0, 1 - measure)` to the point of the complement at offset
    /// `u`; uniform sampling of `u` gives uniform sampling outside the set.
    pub fn sample_complement(&self, u: &BigRational) -> Option<BigRational> {
        let mut remaining = u.clone();
        for (a, b) in self.complement_gaps() {
            let len = &b - &a;
            if remaining < len {
                return Some(a + remaining);
            }
            remaining -= len;
        }
        None
    }

    /// A `u` suitable for [`Self::sample_complement`] from a uniform u64.
    pub fn scale_unit(&self, raw: u64) -> BigRational {
        let free = BigRational::one() - self.measure();
        let frac = BigRational::new(BigInt::from(raw), BigInt::one() << 64);
        frac * free
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn wrap_and_merge() {
        let u = IntervalUnion::from_raw(vec![
            (rat(9, 10), rat(11, 10)), // wraps: [0.9, 1) u [0, 0.1]
            (rat(1, 20), rat(3, 20)),  // merges with [0, 0.1]
        ]);
        assert_eq!(u.intervals().len(), 2);
        assert_eq!(u.measure(), rat(3, 20) + rat(1, 10));
        assert!(u.contains(&rat(19, 20)));
        assert!(u.contains(&rat(2, 20)));
        assert!(!u.contains(&rat(1, 2)));
    }

    #[test]
    fn complement_and_sampling() {
        let u = IntervalUnion::from_raw(vec![(rat(1, 4), rat(1, 2))]);
        let gaps = u.complement_gaps();
        assert_eq!(gaps.len(), 2);
        assert_eq!(u.measure(), rat(1, 4));
        // offset 0 lands at 0; offset just below 1/4 stays in first gap
        assert_eq!(u.sample_complement(&rat(0, 1)).unwrap(), rat(0, 1));
        assert_eq!(u.sample_complement(&rat(1, 4)).unwrap(), rat(1, 2));
        let x = u.sample_complement(&rat(1, 2)).unwrap();
        assert_eq!(x, rat(3, 4));
        assert!(u.sample_complement(&rat(3, 4)).is_none());
    }

    #[test]
    fn whole_circle() {
        let u = IntervalUnion::from_raw(vec![(rat(-1, 2), rat(3, 2))]);
        assert_eq!(u.measure(), rat(1, 1));
        assert!(u.complement_gaps().is_empty());
    }

    #[test]
    fn degenerate_inputs_ignored() {
        let u = IntervalUnion::from_raw(vec![(rat(1, 2), rat(1, 2)), (rat(3, 4), rat(1, 4))]);
        assert!(u.is_empty());
        assert_eq!(u.measure(), rat(0, 1));
    }
}
