//! Exact rational arithmetic for spectral quantities.
//!
//! Cycle means are averages of integer arc weights, so they are rational
//! in general. Everything downstream of a cycle mean (normalized matrices,
//! Kleene stars, CSR factors, the residue constant) therefore runs on
//! [`Rational`] values; equality checks stay exact. Integer-only call
//! sites keep using plain `i64` tropical scalars.

use std::fmt;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub};

use crate::error::{Error, Result};

/// A reduced fraction with positive denominator, backed by `Ratio<i64>`.
///
/// Arithmetic is overflow-checked; intermediate reductions keep the
/// numerator/denominator within `i64` at the scales this crate works at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<i64>);

impl Rational {
    /// Reduced fraction `num/den`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        Rational(Ratio::new(num, den))
    }

    pub const fn zero() -> Self {
        Rational(Ratio::new_raw(0, 1))
    }

    pub fn from_int(v: i64) -> Self {
        Rational(Ratio::from_integer(v))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The integer value, if the denominator is 1.
    pub fn as_integer(&self) -> Option<i64> {
        self.is_integer().then(|| self.numer())
    }

    pub fn checked_add(&self, rhs: &Rational) -> Result<Rational> {
        self.0
            .checked_add(&rhs.0)
            .map(Rational)
            .ok_or(Error::Overflow)
    }

    pub fn checked_sub(&self, rhs: &Rational) -> Result<Rational> {
        self.0
            .checked_sub(&rhs.0)
            .map(Rational)
            .ok_or(Error::Overflow)
    }

    pub fn checked_mul_int(&self, k: i64) -> Result<Rational> {
        self.0
            .checked_mul(&Ratio::from_integer(k))
            .map(Rational)
            .ok_or(Error::Overflow)
    }

    /// Exact division by a nonzero integer.
    pub fn checked_div_int(&self, k: i64) -> Result<Rational> {
        if k == 0 {
            return Err(Error::Overflow);
        }
        let num = (self.numer() as i128, self.denom() as i128 * k as i128);
        let (n, d) = reduce_i128(num.0, num.1)?;
        Ok(Rational::new(n, d))
    }

    pub fn checked_neg(&self) -> Result<Rational> {
        self.numer()
            .checked_neg()
            .map(|n| Rational(Ratio::new_raw(n, self.denom())))
            .ok_or(Error::Overflow)
    }

    pub fn is_negative(&self) -> bool {
        self.numer() < 0
    }
}

/// Reduce `n/d` (d != 0) to lowest terms with positive denominator,
/// erroring if the result does not fit in `i64`.
fn reduce_i128(mut n: i128, mut d: i128) -> Result<(i64, i64)> {
    if d < 0 {
        n = -n;
        d = -d;
    }
    let g = num_integer::gcd(n.unsigned_abs(), d.unsigned_abs()) as i128;
    if g > 1 {
        n /= g;
        d /= g;
    }
    let n = i64::try_from(n).map_err(|_| Error::Overflow)?;
    let d = i64::try_from(d).map_err(|_| Error::Overflow)?;
    Ok((n, d))
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_on_construction() {
        let r = Rational::new(6, -4);
        assert_eq!(r.numer(), -3);
        assert_eq!(r.denom(), 2);
    }

    #[test]
    fn ordering_is_by_value() {
        assert!(Rational::new(1, 3) < Rational::new(1, 2));
        assert!(Rational::new(-7, 2) < Rational::from_int(0));
        assert_eq!(Rational::new(4, 2), Rational::from_int(2));
    }

    #[test]
    fn checked_ops() {
        let a = Rational::new(1, 2);
        let b = Rational::new(1, 3);
        assert_eq!(a.checked_add(&b).unwrap(), Rational::new(5, 6));
        assert_eq!(a.checked_sub(&b).unwrap(), Rational::new(1, 6));
        assert_eq!(a.checked_mul_int(4).unwrap(), Rational::from_int(2));
        assert_eq!(a.checked_div_int(2).unwrap(), Rational::new(1, 4));
        assert!(Rational::from_int(i64::MAX)
            .checked_add(&Rational::from_int(1))
            .is_err());
    }

    #[test]
    fn integer_detection() {
        assert_eq!(Rational::new(8, 4).as_integer(), Some(2));
        assert_eq!(Rational::new(1, 4).as_integer(), None);
    }
}
