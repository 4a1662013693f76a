//! Exact computation with finite matrix groups over cyclotomic fields and
//! classification of the quotient singularities they define.
//!
//! Entries live in `Q(ζ_m)` ([`Cyclotomic`]). [`group::FiniteMatrixGroup`]
//! closes a generator list under multiplication, [`classify::classify`]
//! reports pseudo-reflections, Gorenstein status, the singular locus and
//! cyclicity, and [`construct`] builds non-cyclic fixed-point-free groups in
//! even and odd composite dimension. Group specs are read and written by
//! [`format`].

pub mod cyclotomic;
pub mod classify;
pub mod construct;
pub mod error;
pub mod format;
pub mod intpoly;
pub mod group;
pub mod linalg;
pub mod number;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod suites;

pub use error::{Error, Result};
pub use cyclotomic::{lift_common, CyclotomicField, CyclotomicNumber};
pub use linalg::{eigen_multiset, EigenMultiset, Matrix};
pub use poly::Poly;

pub type Rational = num_rational::BigRational;
pub type Cyclotomic = CyclotomicNumber<num_bigint::BigInt>;
pub type CycMatrix = Matrix<Cyclotomic>;
pub type CycPoly = Poly<Cyclotomic>;
pub type CycGroup = group::FiniteMatrixGroup<Cyclotomic>;
pub type RatMatrix = Matrix<Rational>;
pub type IntPoly = intpoly::IntegerPoly<num_bigint::BigInt>;
