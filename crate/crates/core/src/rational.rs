//! The coefficient domain: exact rationals backed by `num_rational::BigRational`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Canonical wire form: `"num/den"`, or just `"num"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `base^e` for a possibly negative exponent.
pub fn pow_i64(base: i64, e: i64) -> Rational {
    let p = num_traits::pow(BigInt::from(base), e.unsigned_abs() as usize);
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Reduces an integral rational modulo `m`, returning a value in `[0, m)`.
pub fn mod_int(r: &Rational, m: u64) -> Option<u64> {
    if !is_integer(r) {
        return None;
    }
    let m = BigInt::from(m);
    let mut x = r.numer() % &m;
    if x.is_negative() {
        x += &m;
    }
    u64::try_from(x).ok()
}

/// Sum-of-products accumulator. Products of two integers are summed in a
/// `BigInt` so the hot loops avoid a gcd per term.
#[derive(Default)]
pub(crate) struct Accum {
    int: BigInt,
    frac: Option<Rational>,
}

impl Accum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_prod(&mut self, a: &Rational, b: &Rational) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        if a.denom().is_one() && b.denom().is_one() {
            self.int += a.numer() * b.numer();
        } else {
            self.push_frac(a * b);
        }
    }

    pub fn add_scaled(&mut self, a: &Rational, k: &BigInt) {
        if a.is_zero() || k.is_zero() {
            return;
        }
        if a.denom().is_one() {
            self.int += a.numer() * k;
        } else {
            self.push_frac(a * Rational::from_integer(k.clone()));
        }
    }

    pub fn add(&mut self, a: &Rational) {
        if a.is_zero() {
            return;
        }
        if a.denom().is_one() {
            self.int += a.numer();
        } else {
            self.push_frac(a.clone());
        }
    }

    fn push_frac(&mut self, t: Rational) {
        match &mut self.frac {
            Some(f) => *f += t,
            None => self.frac = Some(t),
        }
    }

    pub fn finish(self) -> Rational {
        let whole = Rational::from_integer(self.int);
        match self.frac {
            Some(f) => f + whole,
            None => whole,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_format_is_canonical() {
        assert_eq!(format_rational(&frac(6, -4)), "-3/2");
        assert_eq!(format_rational(&int(0)), "0");
        assert_eq!(format_rational(&int(-744)), "-744");
        assert_eq!(parse_rational("2/4").unwrap(), frac(1, 2));
        assert_eq!(parse_rational(" -17 ").unwrap(), int(-17));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn accumulator_mixes_integer_and_fraction_terms() {
        let mut acc = Accum::new();
        acc.add_prod(&int(3), &int(4));
        acc.add_prod(&frac(1, 2), &int(3));
        acc.add(&frac(-1, 2));
        acc.add_scaled(&int(2), &BigInt::from(5));
        assert_eq!(acc.finish(), int(23));
    }

    #[test]
    fn residues() {
        assert_eq!(mod_int(&int(-240), 3), Some(0));
        assert_eq!(mod_int(&int(-7), 5), Some(3));
        assert_eq!(mod_int(&frac(1, 2), 5), None);
        assert_eq!(pow_i64(2, -3), frac(1, 8));
    }
}
