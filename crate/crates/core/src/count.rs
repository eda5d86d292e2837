use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact non-negative count. Serialized as a decimal string so that
/// downstream tools never see a truncated float.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactCount(BigUint);

impl ExactCount {
    pub fn zero() -> Self {
        ExactCount(BigUint::zero())
    }

    pub fn pow2(exp: usize) -> Self {
        ExactCount(BigUint::one() << exp)
    }

    /// Binomial coefficient `C(n, 2)`.
    pub fn choose2(n: u64) -> Self {
        let n = BigUint::from(n);
        if n < BigUint::from(2u8) {
            return Self::zero();
        }
        ExactCount(&n * (&n - 1u8) / 2u8)
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.0).ok()
    }
}

impl From<u64> for ExactCount {
    fn from(v: u64) -> Self {
        ExactCount(BigUint::from(v))
    }
}

impl From<usize> for ExactCount {
    fn from(v: usize) -> Self {
        ExactCount(BigUint::from(v))
    }
}

impl From<u32> for ExactCount {
    fn from(v: u32) -> Self {
        ExactCount(BigUint::from(v))
    }
}

impl From<BigUint> for ExactCount {
    fn from(v: BigUint) -> Self {
        ExactCount(v)
    }
}

impl fmt::Display for ExactCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for ExactCount {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse().map(ExactCount)
    }
}

impl Add for ExactCount {
    type Output = ExactCount;
    fn add(self, rhs: ExactCount) -> ExactCount {
        ExactCount(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a ExactCount> for ExactCount {
    type Output = ExactCount;
    fn add(self, rhs: &'a ExactCount) -> ExactCount {
        ExactCount(self.0 + &rhs.0)
    }
}

impl AddAssign for ExactCount {
    fn add_assign(&mut self, rhs: ExactCount) {
        self.0 += rhs.0;
    }
}

impl<'a> AddAssign<&'a ExactCount> for ExactCount {
    fn add_assign(&mut self, rhs: &'a ExactCount) {
        self.0 += &rhs.0;
    }
}

impl Mul for ExactCount {
    type Output = ExactCount;
    fn mul(self, rhs: ExactCount) -> ExactCount {
        ExactCount(self.0 * rhs.0)
    }
}

impl Sum for ExactCount {
    fn sum<I: Iterator<Item = ExactCount>>(iter: I) -> Self {
        iter.fold(ExactCount::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ExactCount> for ExactCount {
    fn sum<I: Iterator<Item = &'a ExactCount>>(iter: I) -> Self {
        iter.fold(ExactCount::zero(), |acc, x| acc + x)
    }
}

impl PartialEq<u64> for ExactCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl Serialize for ExactCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for ExactCount {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow2_and_choose2() {
        assert_eq!(ExactCount::pow2(10), 1024u64);
        assert_eq!(ExactCount::choose2(5), 10u64);
        assert_eq!(ExactCount::choose2(1), 0u64);
        assert_eq!(ExactCount::pow2(100).to_string(), "1267650600228229401496703205376");
    }

    #[test]
    fn serializes_as_decimal_string() {
        let c = ExactCount::pow2(70);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, "\"1180591620717411303424\"");
        let back: ExactCount = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }
}
