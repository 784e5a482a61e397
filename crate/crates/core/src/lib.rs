//! Classification of the `l`-primary groups of rational points in an isogeny
//! class of abelian varieties of dimension at most three.
//!
//! The crate is layered bottom-up:
//!
//! - [`partition`], [`poly`], [`polygon`]: exponent tuples, integer
//!   polynomials, Newton and Hodge polygons;
//! - [`horn`]: Horn triple sets, their on-disk cache, and redundancy reduction;
//! - [`lp`]: an exact simplex used to decide implication between inequalities;
//! - [`smith`]: feasibility of Smith-invariant triples for block matrices;
//! - [`oracle`]: brute-force cross-checks (LR coefficients, Smith form, matrix sweeps);
//! - [`weil`]: validation and factorization of Weil polynomials;
//! - [`classify`]: the admissible groups per prime;
//! - [`verify`]: machine re-derivation of the published inequality lists.
//!
//! Geometry and LP code is generic over [`Scalar`]; the aliases below fix the
//! exact types used by the rest of the crate.

pub mod classify;
pub mod error;
pub mod horn;
pub mod lp;
pub mod oracle;
pub mod partition;
pub mod poly;
pub mod polygon;
pub mod scalar;
pub mod smith;
pub mod verify;
pub mod weil;

pub use error::Error;
pub use partition::Partition;
pub use poly::IntPoly;
pub use scalar::Scalar;

/// Exact rational with machine-word components; polygon ordinates fit easily.
pub type Rational = num_rational::Ratio<i64>;
/// Arbitrary-precision rational used for pivoting.
pub use num_rational::BigRational;
/// Polygon with exact rational ordinates.
pub type Polygon = polygon::LatticePolygon<Rational>;
/// Root valuations as exact rationals.
pub type Valuations = polygon::ValuationProfile<Rational>;
