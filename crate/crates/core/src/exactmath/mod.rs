//! Exact arithmetic substrate: arbitrary-precision rationals, exact
//! polynomials in t, sparse weighted multivariate polynomials over Q and
//! finite fields, univariate factorization, and linear algebra over fields
//! and fraction fields. Nothing here knows about geometry.

pub mod field;
pub mod fracfield;
pub mod linalg;
pub mod linexpr;
pub mod multipoly;
pub mod rng;
pub mod series;
pub mod unipoly;

pub use field::{rat, rat_int, ExtField, Field, FiniteField, PrimeField, Rat, RationalField};
pub use linexpr::LinExpr;
pub use multipoly::{MultiPoly, PolyRing};
pub use rng::Rng;
pub use series::{complete_homogeneous, geometric_slices, series_mul, SeriesError, SeriesPoly};
