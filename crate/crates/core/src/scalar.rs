//! Exact scalars.
//!
//! Everything numeric in this crate is exact. Turning times, path values and
//! degree sums are fractions over a machine integer type chosen by the caller;
//! the crate root fixes the default to `i64` via [`crate::Rational`].

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Machine integer usable as the numerator/denominator of a [`Frac`].
pub trait ExactInt:
    Integer
    + Signed
    + Copy
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + CheckedDiv
    + FromPrimitive
    + ToPrimitive
    + Hash
    + fmt::Debug
    + fmt::Display
    + FromStr
    + Send
    + Sync
    + 'static
{
}

impl<T> ExactInt for T where
    T: Integer
        + Signed
        + Copy
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + CheckedDiv
        + FromPrimitive
        + ToPrimitive
        + Hash
        + fmt::Debug
        + fmt::Display
        + FromStr
        + Send
        + Sync
        + 'static
{
}

/// A fraction in lowest terms with positive denominator.
///
/// Arithmetic is checked: every operation returns `Err(Error::Overflow)`
/// instead of wrapping.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Frac<I: ExactInt>(Ratio<I>);

impl<I: ExactInt> Frac<I> {
    pub fn new(numer: I, denom: I) -> Result<Self, Error> {
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        // Ratio::new normalizes the sign with a plain negation.
        if denom.is_negative() {
            let n = I::zero().checked_sub(&numer).ok_or(Error::Overflow)?;
            let d = I::zero().checked_sub(&denom).ok_or(Error::Overflow)?;
            return Ok(Frac(Ratio::new(n, d)));
        }
        Ok(Frac(Ratio::new(numer, denom)))
    }

    pub fn from_int(n: I) -> Self {
        Frac(Ratio::from_integer(n))
    }

    pub fn zero() -> Self {
        Self::from_int(I::zero())
    }

    pub fn one() -> Self {
        Self::from_int(I::one())
    }

    pub fn numer(&self) -> I {
        *self.0.numer()
    }

    pub fn denom(&self) -> I {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.numer().is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<I> {
        self.is_integer().then(|| self.numer())
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, Error> {
        self.0.checked_add(&rhs.0).map(Frac).ok_or(Error::Overflow)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, Error> {
        self.0.checked_sub(&rhs.0).map(Frac).ok_or(Error::Overflow)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, Error> {
        self.0.checked_mul(&rhs.0).map(Frac).ok_or(Error::Overflow)
    }

    pub fn checked_mul_int(&self, rhs: I) -> Result<Self, Error> {
        self.checked_mul(&Self::from_int(rhs))
    }

    pub fn checked_neg(&self) -> Result<Self, Error> {
        Self::zero().checked_sub(self)
    }

    /// `self * k` is an integer.
    pub fn scales_to_integer(&self, k: I) -> bool {
        // lowest terms: (a/b)·k ∈ ℤ ⟺ b | k
        k.is_multiple_of(&self.denom())
    }
}

impl<I: ExactInt> PartialOrd for Frac<I> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<I: ExactInt> Ord for Frac<I> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl<I: ExactInt> fmt::Display for Frac<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl<I: ExactInt> fmt::Debug for Frac<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<I: ExactInt> FromStr for Frac<I> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a fraction: {s:?}"));
        match s.split_once('/') {
            None => s.parse::<I>().map(Self::from_int).map_err(|_| bad()),
            Some((n, d)) => {
                let n = n.trim().parse::<I>().map_err(|_| bad())?;
                let d = d.trim().parse::<I>().map_err(|_| bad())?;
                Self::new(n, d)
            }
        }
    }
}

impl<I: ExactInt> Serialize for Frac<I> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de, I: ExactInt> Deserialize<'de> for Frac<I> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A vector of fractions, coordinates in the fundamental-weight basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct FracVector<I: ExactInt>(pub Vec<Frac<I>>);

impl<I: ExactInt> FracVector<I> {
    pub fn zero(rank: usize) -> Self {
        FracVector(vec![Frac::zero(); rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Frac::is_zero)
    }

    /// `self += coeff · v` for an integer vector `v`.
    pub fn add_scaled(&mut self, coeff: &Frac<I>, v: &[i64]) -> Result<(), Error> {
        debug_assert_eq!(self.0.len(), v.len());
        for (c, &x) in self.0.iter_mut().zip(v) {
            let x = I::from_i64(x).ok_or(Error::Overflow)?;
            *c = c.checked_add(&coeff.checked_mul_int(x)?)?;
        }
        Ok(())
    }
}

impl<I: ExactInt> fmt::Display for FracVector<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type Q = Frac<i64>;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d).unwrap()
    }

    #[test]
    fn lowest_terms_and_sign() {
        let x = q(4, -6);
        assert_eq!((x.numer(), x.denom()), (-2, 3));
        assert_eq!(q(0, 5), Q::zero());
        assert!(matches!(Q::new(1, 0), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn overflow_is_an_error() {
        let big = Q::from_int(i64::MAX);
        assert!(matches!(big.checked_add(&Q::one()), Err(Error::Overflow)));
        assert!(matches!(big.checked_mul_int(2), Err(Error::Overflow)));
        let small = Frac::<i32>::from_int(i32::MIN);
        assert!(matches!(small.checked_neg(), Err(Error::Overflow)));
        assert!(matches!(Frac::<i32>::new(1, i32::MIN), Err(Error::Overflow)));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("2/3".parse::<Q>().unwrap(), q(2, 3));
        assert_eq!(" 4 / 6 ".parse::<Q>().unwrap(), q(2, 3));
        assert_eq!("7".parse::<Q>().unwrap(), Q::from_int(7));
        assert!("1/x".parse::<Q>().is_err());
        assert!("1/0".parse::<Q>().is_err());
        assert_eq!(q(-1, 2).to_string(), "-1/2");
        assert_eq!(q(6, 3).to_string(), "2");
    }

    #[test]
    fn integrality_scaling() {
        assert!(q(1, 3).scales_to_integer(3));
        assert!(q(2, 3).scales_to_integer(6));
        assert!(!q(1, 2).scales_to_integer(3));
        assert!(q(1, 2).scales_to_integer(0));
    }

    proptest! {
        #[test]
        fn display_parse_roundtrip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let x = q(n, d);
            prop_assert_eq!(x.to_string().parse::<Q>().unwrap(), x);
        }

        #[test]
        fn add_sub_inverse(a in -1000i64..1000, b in 1i64..100, c in -1000i64..1000, d in 1i64..100) {
            let x = q(a, b);
            let y = q(c, d);
            prop_assert_eq!(x.checked_add(&y).unwrap().checked_sub(&y).unwrap(), x);
        }

        #[test]
        fn generic_widths_agree(a in -1000i32..1000, b in 1i32..100, c in -1000i32..1000, d in 1i32..100) {
            let narrow = Frac::<i32>::new(a, b).unwrap().checked_mul(&Frac::new(c, d).unwrap()).unwrap();
            let wide = Frac::<i128>::new(a.into(), b.into()).unwrap()
                .checked_mul(&Frac::new(c.into(), d.into()).unwrap()).unwrap();
            prop_assert_eq!(i128::from(narrow.numer()), wide.numer());
            prop_assert_eq!(i128::from(narrow.denom()), wide.denom());
        }
    }
}
