//! Numeric traits the exact linear algebra is written against.
//!
//! [`Integer`] is the coefficient ring behind rationals and cyclotomic
//! numbers; any arbitrary-precision signed integer implementing the
//! `num-traits` family qualifies. [`Scalar`] is the field interface used by
//! matrices, polynomials and the group engine. Field elements carry a
//! context (the cyclotomic order for [`crate::CyclotomicNumber`], nothing
//! for rationals) so that constants such as zero and one can be produced
//! in the right field.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_rational::Ratio;
use num_traits::{FromPrimitive, NumAssignRef, One, Signed, ToPrimitive, Zero};

/// Signed integers usable as exact coefficients.
pub trait Integer:
    num_integer::Integer
    + NumAssignRef
    + Signed
    + Clone
    + Hash
    + Debug
    + Display
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> Integer for T where
    T: num_integer::Integer
        + NumAssignRef
        + Signed
        + Clone
        + Hash
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// An exact field element of characteristic zero.
pub trait Scalar: Clone + Eq + Hash + Debug + Send + Sync {
    /// Data identifying the ambient field.
    type Ctx: Copy + Eq + Hash + Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: Self::Ctx) -> Self;
    fn one(ctx: Self::Ctx) -> Self;
    fn from_i64(value: i64, ctx: Self::Ctx) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one(self.ctx())
    }

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// `self += a * b`.
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }

    /// Multiplicative inverse, `None` for zero.
    fn try_inv(&self) -> Option<Self>;

    /// Inverse when it is cheap to obtain; elimination routines fall back to
    /// division-free row updates otherwise.
    fn cheap_inv(&self) -> Option<Self> {
        self.try_inv()
    }

    /// Exact division by a nonzero integer.
    fn div_int(&self, k: i64) -> Self;

    /// Rescale a row by a nonzero constant to keep coefficients small.
    /// Must not change which entries are zero.
    fn normalize_row(_row: &mut [Self]) {}
}

impl<I: Integer> Scalar for Ratio<I> {
    type Ctx = ();

    fn ctx(&self) {}

    fn zero(_: ()) -> Self {
        <Ratio<I> as Zero>::zero()
    }

    fn one(_: ()) -> Self {
        <Ratio<I> as One>::one()
    }

    fn from_i64(value: i64, _: ()) -> Self {
        Ratio::from_integer(I::from_i64(value).expect("i64 fits the integer type"))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self.clone()
    }

    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn div_int(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero");
        self / Ratio::from_integer(I::from_i64(k).expect("i64 fits the integer type"))
    }
}
