//! Max-plus scalars and the semiring abstraction shared by all matrix types.
//!
//! [`Trop<T>`] adjoins the absorbing element `NegInf` to a finite weight
//! type `T`. Addition is `max`, multiplication is checked `+`; the
//! additive identity `NegInf` is neutral under ⊕ and absorbing under ⊙.
//! The same [`Semiring`] trait is implemented by the triad elements in
//! [`crate::triad`], which is what lets one generic matrix type carry the
//! whole computation.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// An additively idempotent semiring element.
///
/// `add` is total; `mul` reports overflow instead of wrapping.
pub trait Semiring: Copy + Eq + fmt::Debug + Send + Sync {
    /// Additive identity (absorbing under `mul`).
    fn zero() -> Self;
    /// Multiplicative identity.
    fn one() -> Self;
    fn add(self, rhs: Self) -> Self;
    fn mul(self, rhs: Self) -> Result<Self>;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

/// A finite arc weight: totally ordered, with exact checked arithmetic.
///
/// Implemented by `i64` (protocol matrices) and [`Rational`] (spectral
/// quantities, where cycle means force fractions).
pub trait Weight: Copy + Ord + Eq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn checked_plus(self, rhs: Self) -> Option<Self>;
    fn checked_minus(self, rhs: Self) -> Option<Self>;
    fn to_rational(self) -> Rational;
}

impl Weight for i64 {
    fn zero() -> Self {
        0
    }

    fn checked_plus(self, rhs: Self) -> Option<Self> {
        self.checked_add(rhs)
    }

    fn checked_minus(self, rhs: Self) -> Option<Self> {
        self.checked_sub(rhs)
    }

    fn to_rational(self) -> Rational {
        Rational::from_int(self)
    }
}

impl Weight for Rational {
    fn zero() -> Self {
        Rational::zero()
    }

    fn checked_plus(self, rhs: Self) -> Option<Self> {
        self.checked_add(&rhs).ok()
    }

    fn checked_minus(self, rhs: Self) -> Option<Self> {
        self.checked_sub(&rhs).ok()
    }

    fn to_rational(self) -> Rational {
        self
    }
}

/// A max-plus scalar: minus infinity, or a finite weight.
///
/// `NegInf` is a distinguished sentinel rather than a large negative
/// number, so it can never overflow or masquerade as a maximum.
/// The derived order puts `NegInf` below every finite value, which makes
/// `Ord::max` the tropical ⊕.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Trop<T> {
    NegInf,
    Fin(T),
}

/// Scalar of the integer tropical semiring.
pub type TropScalar = Trop<i64>;
/// Scalar of the rational tropical semiring.
pub type RatScalar = Trop<Rational>;

impl<T: Weight> Trop<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, Trop::Fin(_))
    }

    pub fn finite(&self) -> Option<T> {
        match self {
            Trop::Fin(v) => Some(*v),
            Trop::NegInf => None,
        }
    }

    /// Tropical difference `self − rhs` on finite values; `NegInf − x`
    /// is `NegInf`, and subtracting `NegInf` from a finite value has no
    /// meaning here, so it is an error.
    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        match (self, rhs) {
            (Trop::NegInf, _) => Ok(Trop::NegInf),
            (Trop::Fin(_), Trop::NegInf) => Err(Error::Overflow),
            (Trop::Fin(a), Trop::Fin(b)) => {
                a.checked_minus(b).map(Trop::Fin).ok_or(Error::Overflow)
            }
        }
    }

    pub fn to_rational(self) -> Trop<Rational> {
        match self {
            Trop::NegInf => Trop::NegInf,
            Trop::Fin(v) => Trop::Fin(v.to_rational()),
        }
    }
}

impl TropScalar {
    /// Finite integer scalar. Shorthand used pervasively in tests.
    pub const fn fin(v: i64) -> Self {
        Trop::Fin(v)
    }
}

impl<T: Weight> Semiring for Trop<T> {
    fn zero() -> Self {
        Trop::NegInf
    }

    fn one() -> Self {
        Trop::Fin(T::zero())
    }

    fn add(self, rhs: Self) -> Self {
        self.max(rhs)
    }

    fn mul(self, rhs: Self) -> Result<Self> {
        match (self, rhs) {
            (Trop::Fin(a), Trop::Fin(b)) => a.checked_plus(b).map(Trop::Fin).ok_or(Error::Overflow),
            _ => Ok(Trop::NegInf),
        }
    }
}

impl<T: Weight> fmt::Display for Trop<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Trop::NegInf => write!(f, "-inf"),
            Trop::Fin(v) => write!(f, "{v}"),
        }
    }
}

impl From<i64> for TropScalar {
    fn from(v: i64) -> Self {
        Trop::Fin(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_is_max() {
        assert_eq!(
            TropScalar::fin(3).add(TropScalar::fin(5)),
            TropScalar::fin(5)
        );
        assert_eq!(Trop::NegInf.add(TropScalar::fin(7)), TropScalar::fin(7));
        assert_eq!(
            TropScalar::fin(4).add(TropScalar::fin(4)),
            TropScalar::fin(4)
        );
    }

    #[test]
    fn mul_is_plus() {
        assert_eq!(
            TropScalar::fin(3).mul(TropScalar::fin(5)).unwrap(),
            TropScalar::fin(8)
        );
        assert_eq!(
            Trop::NegInf.mul(TropScalar::fin(7)).unwrap(),
            TropScalar::NegInf
        );
        assert_eq!(
            TropScalar::fin(0).mul(TropScalar::fin(9)).unwrap(),
            TropScalar::fin(9)
        );
    }

    #[test]
    fn mul_overflow_is_detected() {
        assert_eq!(
            TropScalar::fin(i64::MAX).mul(TropScalar::fin(1)),
            Err(Error::Overflow)
        );
    }

    #[test]
    fn neg_inf_orders_below_everything() {
        assert!(TropScalar::NegInf < TropScalar::fin(i64::MIN));
    }

    #[test]
    fn checked_sub_rules() {
        assert_eq!(
            TropScalar::fin(5).checked_sub(TropScalar::fin(2)).unwrap(),
            TropScalar::fin(3)
        );
        assert_eq!(
            TropScalar::NegInf.checked_sub(TropScalar::fin(2)).unwrap(),
            TropScalar::NegInf
        );
        assert!(TropScalar::fin(5).checked_sub(TropScalar::NegInf).is_err());
    }
}
