//! Extended integers and extended naturals.
//!
//! `ExtInt` is `ℤ ∪ {−∞, +∞}` and `ExtNat` is `ℕ ∪ {∞}`. Addition of two
//! infinities of opposite sign and `∞ − ∞` are errors rather than values.
//! Multiplication treats `±∞ · 0 = 0`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("undefined infinite arithmetic: {0}")]
    Undefined(&'static str),
    #[error("integer overflow")]
    Overflow,
    #[error("negative value where a natural number is required")]
    Negative,
}

/// An element of `ℤ ∪ {−∞, +∞}`. The derived order places `NegInf` below
/// every finite value and `PosInf` above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
    PosInf,
}

/// An element of `ℕ ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Fin(u64),
    Inf,
}

/// Arithmetic shared by the two extended value types.
pub trait ExtArith: Copy + Ord + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn ext_add(self, rhs: Self) -> Result<Self, ArithError>;
    fn ext_sub(self, rhs: Self) -> Result<Self, ArithError>;
    fn ext_mul(self, rhs: Self) -> Result<Self, ArithError>;
}

impl ExtInt {
    pub const ZERO: ExtInt = ExtInt::Fin(0);
    pub const ONE: ExtInt = ExtInt::Fin(1);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Fin(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Fin(v) => Some(v),
            _ => None,
        }
    }

    pub fn checked_neg(self) -> Result<ExtInt, ArithError> {
        match self {
            ExtInt::NegInf => Ok(ExtInt::PosInf),
            ExtInt::PosInf => Ok(ExtInt::NegInf),
            ExtInt::Fin(v) => v.checked_neg().map(ExtInt::Fin).ok_or(ArithError::Overflow),
        }
    }

    pub fn add(self, rhs: ExtInt) -> Result<ExtInt, ArithError> {
        use ExtInt::*;
        match (self, rhs) {
            (PosInf, NegInf) | (NegInf, PosInf) => Err(ArithError::Undefined("(+inf) + (-inf)")),
            (PosInf, _) | (_, PosInf) => Ok(PosInf),
            (NegInf, _) | (_, NegInf) => Ok(NegInf),
            (Fin(a), Fin(b)) => a.checked_add(b).map(Fin).ok_or(ArithError::Overflow),
        }
    }

    pub fn sub(self, rhs: ExtInt) -> Result<ExtInt, ArithError> {
        use ExtInt::*;
        match (self, rhs) {
            (PosInf, PosInf) | (NegInf, NegInf) => Err(ArithError::Undefined("inf - inf")),
            _ => self.add(rhs.checked_neg()?),
        }
    }

    pub fn mul(self, rhs: ExtInt) -> Result<ExtInt, ArithError> {
        use ExtInt::*;
        match (self, rhs) {
            (Fin(a), Fin(b)) => a.checked_mul(b).map(Fin).ok_or(ArithError::Overflow),
            (Fin(0), _) | (_, Fin(0)) => Ok(Fin(0)),
            (a, b) => {
                let positive = (a > Fin(0)) == (b > Fin(0));
                Ok(if positive { PosInf } else { NegInf })
            }
        }
    }

    /// `self + 1`, saturating at the ends of the finite range.
    pub fn succ(self) -> ExtInt {
        match self {
            ExtInt::Fin(v) => ExtInt::Fin(v.saturating_add(1)),
            inf => inf,
        }
    }

    /// `self - 1`, saturating at the ends of the finite range.
    pub fn pred(self) -> ExtInt {
        match self {
            ExtInt::Fin(v) => ExtInt::Fin(v.saturating_sub(1)),
            inf => inf,
        }
    }

    /// Adds a finite offset; never fails on infinite values.
    pub fn offset(self, k: i64) -> Result<ExtInt, ArithError> {
        self.add(ExtInt::Fin(k))
    }
}

impl ExtNat {
    pub const ZERO: ExtNat = ExtNat::Fin(0);
    pub const ONE: ExtNat = ExtNat::Fin(1);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Fin(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Fin(v) => Some(v),
            ExtNat::Inf => None,
        }
    }

    pub fn to_ext_int(self) -> Result<ExtInt, ArithError> {
        match self {
            ExtNat::Inf => Ok(ExtInt::PosInf),
            ExtNat::Fin(v) => i64::try_from(v).map(ExtInt::Fin).map_err(|_| ArithError::Overflow),
        }
    }
}

impl ExtArith for ExtInt {
    fn zero() -> Self {
        ExtInt::ZERO
    }
    fn one() -> Self {
        ExtInt::ONE
    }
    fn ext_add(self, rhs: Self) -> Result<Self, ArithError> {
        self.add(rhs)
    }
    fn ext_sub(self, rhs: Self) -> Result<Self, ArithError> {
        self.sub(rhs)
    }
    fn ext_mul(self, rhs: Self) -> Result<Self, ArithError> {
        self.mul(rhs)
    }
}

impl ExtArith for ExtNat {
    fn zero() -> Self {
        ExtNat::ZERO
    }
    fn one() -> Self {
        ExtNat::ONE
    }
    fn ext_add(self, rhs: Self) -> Result<Self, ArithError> {
        match (self, rhs) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => a.checked_add(b).map(ExtNat::Fin).ok_or(ArithError::Overflow),
            _ => Ok(ExtNat::Inf),
        }
    }
    fn ext_sub(self, rhs: Self) -> Result<Self, ArithError> {
        match (self, rhs) {
            (ExtNat::Inf, ExtNat::Inf) => Err(ArithError::Undefined("inf - inf")),
            (ExtNat::Inf, ExtNat::Fin(_)) => Ok(ExtNat::Inf),
            (ExtNat::Fin(_), ExtNat::Inf) => Err(ArithError::Negative),
            (ExtNat::Fin(a), ExtNat::Fin(b)) => a.checked_sub(b).map(ExtNat::Fin).ok_or(ArithError::Negative),
        }
    }
    fn ext_mul(self, rhs: Self) -> Result<Self, ArithError> {
        match (self, rhs) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => a.checked_mul(b).map(ExtNat::Fin).ok_or(ArithError::Overflow),
            (ExtNat::Fin(0), _) | (_, ExtNat::Fin(0)) => Ok(ExtNat::ZERO),
            _ => Ok(ExtNat::Inf),
        }
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Fin(v)
    }
}

impl From<u64> for ExtNat {
    fn from(v: u64) -> Self {
        ExtNat::Fin(v)
    }
}

impl TryFrom<ExtInt> for ExtNat {
    type Error = ArithError;

    fn try_from(v: ExtInt) -> Result<Self, Self::Error> {
        match v {
            ExtInt::PosInf => Ok(ExtNat::Inf),
            ExtInt::NegInf => Err(ArithError::Negative),
            ExtInt::Fin(x) => u64::try_from(x).map(ExtNat::Fin).map_err(|_| ArithError::Negative),
        }
    }
}

impl PartialEq<ExtNat> for ExtInt {
    fn eq(&self, other: &ExtNat) -> bool {
        other.to_ext_int().map(|o| o == *self).unwrap_or(false)
    }
}

impl PartialOrd<ExtNat> for ExtInt {
    fn partial_cmp(&self, other: &ExtNat) -> Option<Ordering> {
        match other.to_ext_int() {
            Ok(o) => self.partial_cmp(&o),
            Err(_) => Some(Ordering::Less),
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => f.write_str("-inf"),
            ExtInt::Fin(v) => write!(f, "{v}"),
            ExtInt::PosInf => f.write_str("inf"),
        }
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(v) => write!(f, "{v}"),
            ExtNat::Inf => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse extended value {0:?}")]
pub struct ParseExtError(pub String);

impl FromStr for ExtInt {
    type Err = ParseExtError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "+inf" => Ok(ExtInt::PosInf),
            "-inf" => Ok(ExtInt::NegInf),
            t => t.parse::<i64>().map(ExtInt::Fin).map_err(|_| ParseExtError(s.to_string())),
        }
    }
}

impl FromStr for ExtNat {
    type Err = ParseExtError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" => Ok(ExtNat::Inf),
            t => t.parse::<u64>().map(ExtNat::Fin).map_err(|_| ParseExtError(s.to_string())),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Wire {
    Int(i64),
    Text(String),
}

impl Serialize for ExtInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtInt::Fin(v) => s.serialize_i64(*v),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for ExtInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Wire::deserialize(d)? {
            Wire::Int(v) => Ok(ExtInt::Fin(v)),
            Wire::Text(t) => t.parse().map_err(de::Error::custom),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtNat::Fin(v) => s.serialize_u64(*v),
            ExtNat::Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Wire::deserialize(d)? {
            Wire::Int(v) => u64::try_from(v).map(ExtNat::Fin).map_err(de::Error::custom),
            Wire::Text(t) => t.parse().map_err(de::Error::custom),
        }
    }
}
