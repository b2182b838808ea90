//! Exact-arithmetic toolkit for graded rings of weighted projective
//! varieties: Hilbert series of Gorenstein formats, orbifold
//! Riemann-Roch over cyclic quotient singularities, quasismoothness
//! certification over finite fields, and mechanical execution of
//! type-I unprojection cascades between model families.

pub mod cascade;
pub mod catalog;
pub mod exactmath;
pub mod formats;
pub mod invariants;
pub mod quasismooth;
pub mod wps;
