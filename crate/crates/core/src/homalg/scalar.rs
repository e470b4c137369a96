//! Integer scalars for the elimination kernels.
//!
//! Every elimination routine is written once over [`Scalar`] and run first
//! with machine words; if any intermediate value overflows the whole run is
//! repeated with [`BigInt`], which never overflows.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Raised by the machine-word path when a value leaves the `i64` range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Overflow;

pub(crate) type Checked<T> = Result<T, Overflow>;

pub(crate) trait Scalar: Clone + PartialEq + Debug + Zero + One {
    fn from_big(v: &BigInt) -> Checked<Self>;
    fn to_big(&self) -> BigInt;
    fn is_negative(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// Compares absolute values.
    fn cmp_abs(&self, other: &Self) -> Ordering;
    fn try_neg(&self) -> Checked<Self>;
    fn try_add(&self, other: &Self) -> Checked<Self>;
    fn try_mul(&self, other: &Self) -> Checked<Self>;
    /// Floor quotient `self div other`; `other` is nonzero.
    fn div_floor(&self, other: &Self) -> Checked<Self>;
    /// Whether `self` divides `other`; `self` is nonzero.
    fn divides(&self, other: &Self) -> bool;

    /// `self - q * other`
    fn sub_mul(&self, q: &Self, other: &Self) -> Checked<Self> {
        self.try_add(&q.try_mul(other)?.try_neg()?)
    }
}

impl Scalar for i64 {
    fn from_big(v: &BigInt) -> Checked<Self> {
        v.to_i64().ok_or(Overflow)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn try_neg(&self) -> Checked<Self> {
        self.checked_neg().ok_or(Overflow)
    }
    fn try_add(&self, other: &Self) -> Checked<Self> {
        self.checked_add(*other).ok_or(Overflow)
    }
    fn try_mul(&self, other: &Self) -> Checked<Self> {
        self.checked_mul(*other).ok_or(Overflow)
    }
    fn div_floor(&self, other: &Self) -> Checked<Self> {
        if *self == i64::MIN && *other == -1 {
            return Err(Overflow);
        }
        Ok(Integer::div_floor(self, other))
    }
    fn divides(&self, other: &Self) -> bool {
        other.checked_rem(*self).map_or(true, |r| r == 0)
    }
}

impl Scalar for BigInt {
    fn from_big(v: &BigInt) -> Checked<Self> {
        Ok(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn try_neg(&self) -> Checked<Self> {
        Ok(-self)
    }
    fn try_add(&self, other: &Self) -> Checked<Self> {
        Ok(self + other)
    }
    fn try_mul(&self, other: &Self) -> Checked<Self> {
        Ok(self * other)
    }
    fn div_floor(&self, other: &Self) -> Checked<Self> {
        Ok(Integer::div_floor(self, other))
    }
    fn divides(&self, other: &Self) -> bool {
        Zero::is_zero(&(other % self))
    }
}

/// Runs `f` over `i64`, falling back to `BigInt` on overflow.
pub(crate) fn with_fallback<T>(
    fast: impl FnOnce() -> Checked<T>,
    exact: impl FnOnce() -> Checked<T>,
) -> T {
    match fast() {
        Ok(v) => v,
        Err(Overflow) => exact().expect("arbitrary-precision path cannot overflow"),
    }
}
