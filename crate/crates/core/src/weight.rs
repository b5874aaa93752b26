use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact rational number in canonical form.
///
/// Used for link weights, external fields, utilities and degrees alike.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(BigRational);

impl Weight {
    pub fn zero() -> Self {
        Weight(BigRational::zero())
    }

    pub fn one() -> Self {
        Weight(BigRational::one())
    }

    pub fn from_integer(value: i64) -> Self {
        Weight(BigRational::from_integer(BigInt::from(value)))
    }

    /// `num / den`, reduced. Returns `None` when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        Some(Weight(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    pub fn from_rational(value: BigRational) -> Self {
        Weight(value)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Weight(self.0.abs())
    }

    /// Sign as an ordering against zero.
    pub fn sign(&self) -> Ordering {
        self.0.cmp(&BigRational::zero())
    }

    /// `self * s` for `s` in `{+1, -1}`.
    pub fn signed(&self, negate: bool) -> Self {
        if negate {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// The value as an `i64`, if it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Failure to read a weight from text.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational {text:?}: {reason}")]
pub struct ParseWeightError {
    pub text: String,
    pub reason: &'static str,
}

fn parse_int(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix('+').unwrap_or(text);
    let unsigned = digits.strip_prefix('-').unwrap_or(digits);
    if unsigned.is_empty() || !unsigned.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::parse_bytes(digits.as_bytes(), 10)
}

impl FromStr for Weight {
    type Err = ParseWeightError;

    /// Accepts `"p"` or `"p/q"` with decimal integers and `q != 0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| ParseWeightError {
            text: s.into(),
            reason,
        };
        let text = s.trim();
        match text.split_once('/') {
            None => parse_int(text)
                .map(|n| Weight(BigRational::from_integer(n)))
                .ok_or_else(|| err("expected an integer or p/q")),
            Some((num, den)) => {
                let num = parse_int(num.trim()).ok_or_else(|| err("bad numerator"))?;
                let den = parse_int(den.trim()).ok_or_else(|| err("bad denominator"))?;
                if den.is_zero() {
                    return Err(err("zero denominator"));
                }
                Ok(Weight(BigRational::new(num, den)))
            }
        }
    }
}

impl From<i64> for Weight {
    fn from(value: i64) -> Self {
        Weight::from_integer(value)
    }
}

impl From<i32> for Weight {
    fn from(value: i32) -> Self {
        Weight::from_integer(value.into())
    }
}

impl From<BigRational> for Weight {
    fn from(value: BigRational) -> Self {
        Weight(value)
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident) => {
        impl $trait for Weight {
            type Output = Weight;
            fn $method(self, rhs: Weight) -> Weight {
                Weight(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Weight> for Weight {
            type Output = Weight;
            fn $method(self, rhs: &'a Weight) -> Weight {
                Weight(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Weight> for &'a Weight {
            type Output = Weight;
            fn $method(self, rhs: &'a Weight) -> Weight {
                Weight((&self.0).$method(&rhs.0))
            }
        }
    };
}

binary_op!(Add, add);
binary_op!(Sub, sub);
binary_op!(Mul, mul);

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Weight {
    fn add_assign(&mut self, rhs: Weight) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Weight> for Weight {
    fn sub_assign(&mut self, rhs: &Weight) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(-self.0)
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(-self.0.clone())
    }
}

impl Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::zero(), |acc, w| acc + w)
    }
}

impl<'a> Sum<&'a Weight> for Weight {
    fn sum<I: Iterator<Item = &'a Weight>>(iter: I) -> Weight {
        iter.fold(Weight::zero(), |acc, w| acc + w)
    }
}

#[cfg(feature = "serde")]
mod serde_impl {
    use super::Weight;
    use alloc::string::ToString;
    use core::fmt;
    use serde::de::{self, Visitor};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    /// Integers that fit in `i64` are written bare, everything else as `"p/q"`.
    impl Serialize for Weight {
        fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
            match self.to_i64() {
                Some(v) => serializer.serialize_i64(v),
                None => serializer.serialize_str(&self.to_string()),
            }
        }
    }

    struct WeightVisitor;

    impl<'de> Visitor<'de> for WeightVisitor {
        type Value = Weight;

        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("an integer or a \"p/q\" string")
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Weight, E> {
            Ok(Weight::from_integer(v))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Weight, E> {
            let v =
                i64::try_from(v).map_err(|_| E::custom("integer out of range, use a string"))?;
            Ok(Weight::from_integer(v))
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<Weight, E> {
            v.parse().map_err(E::custom)
        }
    }

    impl<'de> Deserialize<'de> for Weight {
        fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Weight, D::Error> {
            deserializer.deserialize_any(WeightVisitor)
        }
    }
}
