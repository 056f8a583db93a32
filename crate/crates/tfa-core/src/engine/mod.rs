//! The analysis pipeline: configuration normalization, growth
//! classification, scale certificates, long products and orbits, and the
//! shifted product comparison.

mod classify;
mod comparison;
mod configuration;
pub(crate) mod products;
mod scales;

pub use classify::{
    classify_growth, default_gamma_grid, default_threshold, GrowthClassification, GrowthEntry,
    GrowthVerdict,
};
pub use comparison::{
    compare_shifted_products, compare_with_exceptional, SampleComparison, ShiftComparisonReport,
};
pub use configuration::{
    normalize_configuration, Configuration, NormalizationReport, TransformStep,
};
pub use products::{
    clamp_floor, orbit, product_log, translate_reciprocal_sum, OrbitEntry, OrbitTrace, ProductLog,
};
pub use scales::{construct_scale_certificates, ScaleCertificate, ScaleSearchReport};
