//! Certified-interval computations for time-frequency translate analysis.
//!
//! The crate is organized around one numeric substrate and four subject
//! areas built on top of it:
//!
//! - [`real`]: exact-rational ball arithmetic ([`Real`]), the input grammar,
//!   and certified elementary functions (sqrt, exp, ln, sin/cos on the
//!   circle, atan2). No floating point enters any certified verdict.
//! - [`contfrac`]: continued-fraction expansion with certified partial
//!   quotients, convergents, and the best-approximation checks.
//! - [`trigpoly`]: the three-term exponential polynomial
//!   `P(x) = C0 + C1 e^{2πiαx} + C2 e^{2πiβx}`, its torus zeros in closed
//!   form, the per-zero slope parameter, and an empirical lower-bound scan.
//! - [`diophantine`]: reciprocal-distance sum bounds, exceptional-set
//!   construction on the circle, and the product-reciprocal-sum analysis.
//! - [`engine`]: configuration normalization, growth classification, scale
//!   certificates, long products in log space, orbits, and the shifted
//!   product comparison.

pub mod circle;
pub mod contfrac;
pub mod diophantine;
pub mod engine;
pub mod error;
pub mod precision;
pub mod real;
pub mod trigpoly;

pub use error::{Error, Result};
pub use precision::Precision;
pub use real::{Complex, Real};

// Re-export the exact number types so downstream crates do not need to
// depend on the num stack directly.
pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
