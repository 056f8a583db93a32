//! Quantitative reciprocal-distance estimates: windowed gap and sum bounds,
//! exceptional sets on the circle, and the product reciprocal-sum analysis.

mod exceptional;
mod gaps;
mod interval_union;
mod product_sum;

pub use exceptional::{
    build_exceptional_set, sum_bounds_outside, ExceptionalSet, OutsideSumsReport,
};
pub use gaps::{gap_check, harmonic_exact, reciprocal_sum_bound, window_bound, GapReport};
pub use interval_union::IntervalUnion;
pub use product_sum::{
    product_reciprocal_sum, CaseKind, CaseReport, ProductSumReport,
};

use crate::real::Real;

/// Common sum-versus-bound report shape.
#[derive(Clone, Debug)]
pub struct SumReport {
    pub sum: Real,
    pub bound: Real,
    pub pass: bool,
    /// Sum divided by its reference growth term, when defined.
    pub constant_fit: Option<Real>,
    /// Leading per-term contributions, capped.
    pub witnesses: Vec<(crate::BigInt, Real)>,
}
