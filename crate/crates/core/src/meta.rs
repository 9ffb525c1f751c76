use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Weight, level and order at `i∞` of a form in the multiplicative group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormMeta {
    pub weight: Rational,
    pub level: u64,
    pub order: i64,
}

impl FormMeta {
    pub fn new(weight: Rational, level: u64, order: i64) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidArgument("level must be >= 1".into()));
        }
        Ok(Self { weight, level, order })
    }

    pub fn integral(weight: i64, level: u64, order: i64) -> Result<Self> {
        Self::new(Rational::from_integer(BigInt::from(weight)), level, order)
    }

    /// Meta of a product of two forms on the same level.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.level, other.level);
        Self {
            weight: &self.weight + &other.weight,
            level: self.level,
            order: self.order + other.order,
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        Self {
            weight: &self.weight * Rational::from_integer(BigInt::from(e)),
            level: self.level,
            order: self.order * e,
        }
    }
}

impl fmt::Display for FormMeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "weight {}, level {}, order {}", self.weight, self.level, self.order)
    }
}
