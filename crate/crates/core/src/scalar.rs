//! Scalar types for distances and vertex labels.
//!
//! Every algorithm in the crate is generic over [`Scalar`]. The exact
//! rational type [`Rational`] is the one the crate is built around: weak
//! similarity and generator verification compare distances for equality and
//! strict order, which floating point cannot do reliably. `f32`/`f64` are
//! supported for convenience when the inputs are known to be exactly
//! representable.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Num;

/// Exact rational number with 64-bit numerator and denominator, always kept
/// in lowest terms by `num-rational`.
pub type Rational = Ratio<i64>;

/// Arbitrary-precision exact rational.
pub type BigRatio = BigRational;

/// Numeric type usable as a distance or a vertex label.
pub trait Scalar: Num + Clone + PartialOrd + Debug + Display + Send + Sync {
    /// Builds `num / den`. `den` must be positive.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(value: i64) -> Self {
        Self::from_ratio(value, 1)
    }

    /// Total order used for sorting; incomparable values (NaN) compare equal.
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).unwrap_or(Ordering::Equal)
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    fn max_of(a: &Self, b: &Self) -> Self {
        if a.total_cmp(b) == Ordering::Less {
            b.clone()
        } else {
            a.clone()
        }
    }

    fn half(&self) -> Self {
        self.clone() / (Self::one() + Self::one())
    }
}

impl Scalar for Rational {
    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }
}

impl Scalar for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(BigInt::from(num), BigInt::from(den))
    }
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
}

impl Scalar for f32 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f32 / den as f32
    }
}

/// Sorts and removes duplicates.
pub(crate) fn sorted_distinct<S: Scalar>(mut values: Vec<S>) -> Vec<S> {
    values.sort_by(|a, b| a.total_cmp(b));
    values.dedup_by(|a, b| a == b);
    values
}

/// Position of `value` in a sorted distinct list.
pub(crate) fn rank_of<S: Scalar>(sorted: &[S], value: &S) -> Option<usize> {
    sorted.binary_search_by(|probe| probe.total_cmp(value)).ok()
}

/// Infimum of a set of nonnegative scalars, with `+∞` for the empty set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Infimum<S> {
    Finite(S),
    PositiveInfinity,
}

impl<S: Scalar> Infimum<S> {
    pub fn finite(&self) -> Option<&S> {
        match self {
            Infimum::Finite(v) => Some(v),
            Infimum::PositiveInfinity => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Infimum::Finite(v) if v.is_zero())
    }

    /// `true` iff `value` is strictly below the infimum.
    pub fn exceeds(&self, value: &S) -> bool {
        match self {
            Infimum::Finite(v) => value < v,
            Infimum::PositiveInfinity => true,
        }
    }
}

impl<S: Display> Display for Infimum<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Infimum::Finite(v) => write!(f, "{v}"),
            Infimum::PositiveInfinity => write!(f, "+inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let q = Rational::from_ratio(6, 4);
        assert_eq!(*q.numer(), 3);
        assert_eq!(*q.denom(), 2);
        assert_eq!(q.half(), Rational::from_ratio(3, 4));
    }

    #[test]
    fn sorted_distinct_and_rank() {
        let v = sorted_distinct(vec![
            Rational::from_int(3),
            Rational::from_ratio(1, 2),
            Rational::from_int(3),
            Rational::from_int(0),
        ]);
        assert_eq!(
            v,
            vec![Rational::from_int(0), Rational::from_ratio(1, 2), Rational::from_int(3)]
        );
        assert_eq!(rank_of(&v, &Rational::from_int(3)), Some(2));
        assert_eq!(rank_of(&v, &Rational::from_int(2)), None);
    }

    #[test]
    fn infimum_order() {
        let inf: Infimum<Rational> = Infimum::PositiveInfinity;
        assert!(inf.exceeds(&Rational::from_int(1_000_000)));
        let one = Infimum::Finite(Rational::from_int(1));
        assert!(one.exceeds(&Rational::from_ratio(1, 2)));
        assert!(!one.exceeds(&Rational::from_int(1)));
        assert!(Infimum::Finite(Rational::from_int(0)).is_zero());
        assert_eq!(inf.to_string(), "+inf");
    }

    #[test]
    fn float_scalars() {
        assert_eq!(f64::from_ratio(1, 4), 0.25);
        assert_eq!(f64::max_of(&1.0, &2.0), 2.0);
        assert_eq!(BigRational::from_ratio(2, 4).half(), BigRational::from_ratio(1, 4));
    }
}
