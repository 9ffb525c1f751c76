//! Eisenstein series, Δ, j and eta quotients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::meta::FormMeta;
use crate::prodform::ProductForm;
use crate::qseries::QSeries;
use crate::rational::{int, Rational};

pub use crate::arith::sigma;

/// `E_k` for `k ∈ {2, 4, 6}`, normalized with constant term 1.
pub fn eisenstein(k: i64, prec: i64) -> Result<QSeries> {
    let (scale, power) = match k {
        2 => (-24, 1),
        4 => (240, 3),
        6 => (-504, 5),
        _ => return Err(Error::UnsupportedWeight(k)),
    };
    let scale = BigInt::from(scale);
    let coeffs = (0..prec.max(0))
        .map(|n| {
            if n == 0 {
                int(1)
            } else {
                Rational::from_integer(&scale * sigma(power, n as u64))
            }
        })
        .collect();
    QSeries::new(0, coeffs, prec)
}

/// `∏_{n>=1} (1 - q^n) + O(q^prec)` by the pentagonal number theorem.
pub fn euler_product(prec: i64) -> QSeries {
    let len = prec.max(0) as usize;
    let mut coeffs = vec![Rational::zero(); len];
    let mut k: i64 = 0;
    loop {
        let mut touched = false;
        for g in [k * (3 * k - 1) / 2, k * (3 * k + 1) / 2] {
            if (g as usize) < len {
                coeffs[g as usize] = int(if k % 2 == 0 { 1 } else { -1 });
                touched = true;
            }
        }
        if !touched {
            break;
        }
        k += 1;
    }
    QSeries::normalized(0, coeffs, prec)
}

/// Δ = q ∏ (1 - q^n)^24, known below `q^prec`.
pub fn delta(prec: i64) -> QSeries {
    euler_product(prec - 1)
        .pow_int(24)
        .expect("positive power")
        .shift(1)
}

/// j = E_4^3 / Δ = q^-1 + 744 + 196884 q + ..., known below `q^prec`.
pub fn j_invariant(prec: i64) -> QSeries {
    let e4 = eisenstein(4, prec + 1).expect("weight 4");
    let cube = e4.pow_int(3).expect("positive power");
    cube.div(&delta(prec + 2)).expect("Δ is invertible")
}

pub fn delta_meta() -> FormMeta {
    FormMeta::integral(12, 1, 1).expect("level 1")
}

pub fn j_meta() -> FormMeta {
    FormMeta::integral(0, 1, -1).expect("level 1")
}

pub fn eisenstein_meta(k: i64) -> Result<FormMeta> {
    match k {
        4 | 6 => FormMeta::integral(k, 1, 0),
        _ => Err(Error::UnsupportedWeight(k)),
    }
}

/// `∏_{δ|N} η(δτ)^{r_δ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotient {
    level: u64,
    exps: BTreeMap<u64, i64>,
}

impl EtaQuotient {
    /// Zero exponents are dropped; every key must divide `level`.
    pub fn new(level: u64, exps: impl IntoIterator<Item = (u64, i64)>) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidArgument("eta quotient level must be >= 1".into()));
        }
        let mut map = BTreeMap::new();
        for (delta, r) in exps {
            if delta == 0 || !level.is_multiple_of(delta) {
                return Err(Error::InvalidArgument(format!("{delta} does not divide level {level}")));
            }
            *map.entry(delta).or_insert(0) += r;
        }
        map.retain(|_, r| *r != 0);
        Ok(Self { level, exps: map })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn exps(&self) -> &BTreeMap<u64, i64> {
        &self.exps
    }

    pub fn r(&self, delta: u64) -> i64 {
        self.exps.get(&delta).copied().unwrap_or(0)
    }

    /// `(1/2) Σ r_δ`.
    pub fn weight(&self) -> Rational {
        Rational::new(BigInt::from(self.exps.values().sum::<i64>()), BigInt::from(2))
    }

    /// `(1/24) Σ δ r_δ`, which must be an integer.
    pub fn order(&self) -> Result<i64> {
        let s: i64 = self.exps.iter().map(|(&d, &r)| d as i64 * r).sum();
        if s % 24 != 0 {
            return Err(Error::NonIntegralOrder(format!("({s})/24")));
        }
        Ok(s / 24)
    }

    pub fn meta(&self) -> Result<FormMeta> {
        FormMeta::new(self.weight(), self.level, self.order()?)
    }

    /// `c(n) = Σ_{δ | gcd(n, N)} r_δ`.
    pub fn exponent(&self, n: u64) -> i64 {
        self.exps.iter().filter(|(&d, _)| n.is_multiple_of(d)).map(|(_, &r)| r).sum()
    }

    /// Newman's sufficient conditions for modularity on Γ0(N):
    /// `Σ δ r_δ ≡ 0` and `Σ (N/δ) r_δ ≡ 0 (mod 24)`.
    pub fn newman_check(&self) -> bool {
        let a: i64 = self.exps.iter().map(|(&d, &r)| d as i64 * r).sum();
        let b: i64 = self.exps.iter().map(|(&d, &r)| (self.level / d) as i64 * r).sum();
        a.rem_euclid(24) == 0 && b.rem_euclid(24) == 0
    }

    /// Product expansion with exponent precision `prec`.
    pub fn product_form(&self, prec: i64) -> Result<ProductForm> {
        ProductForm::from_fn(self.order()?, prec, |n| int(self.exponent(n as u64)))
    }
}

impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exps.iter().map(|(d, r)| format!("{d}:{r}")).collect();
        write!(f, "etaq {} {}", self.level, parts.join(","))
    }
}

/// Product form of an eta quotient (see [`EtaQuotient::product_form`]).
pub fn eta_quotient(e: &EtaQuotient, prec: i64) -> Result<ProductForm> {
    e.product_form(prec)
}

pub fn newman_check(e: &EtaQuotient) -> bool {
    e.newman_check()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eisenstein_coefficients() {
        let e4 = eisenstein(4, 5).unwrap();
        let want = [1, 240, 2160, 6720, 17520];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(e4.coeff(n as i64), Some(int(*w)));
        }
        assert_eq!(eisenstein(2, 2).unwrap(), QSeries::from_ints(0, &[1, -24], 2).unwrap());
        assert_eq!(eisenstein(6, 2).unwrap().coeff(1), Some(int(-504)));
        assert_eq!(eisenstein(8, 2), Err(Error::UnsupportedWeight(8)));
    }

    #[test]
    fn delta_and_j_leading_terms() {
        let d = delta(4);
        assert_eq!(d.valuation(), Ok(1));
        assert_eq!(d.coeff(1), Some(int(1)));
        assert_eq!(d.coeff(2), Some(int(-24)));
        let j = j_invariant(3);
        assert_eq!(j.valuation(), Ok(-1));
        assert_eq!(j.prec(), 3);
        assert_eq!(j.coeff(-1), Some(int(1)));
        assert_eq!(j.coeff(0), Some(int(744)));
        assert_eq!(j.coeff(1), Some(int(196884)));
        assert_eq!(j.coeff(2), Some(int(21493760)));
    }

    #[test]
    fn eta_quotient_bookkeeping() {
        let f = EtaQuotient::new(4, [(2, -4), (4, 8)]).unwrap();
        assert_eq!(f.order(), Ok(1));
        assert_eq!(f.weight(), int(2));
        let p = f.product_form(6).unwrap();
        let c: Vec<_> = (1..6).map(|n| p.exponent(n).unwrap().clone()).collect();
        assert_eq!(c, vec![int(0), int(-4), int(0), int(4), int(0)]);
        assert!(f.newman_check());

        let g = EtaQuotient::new(5, [(1, -1), (5, 5)]).unwrap();
        assert_eq!(g.order(), Ok(1));
        assert_eq!(g.exponent(3), -1);
        assert_eq!(g.exponent(10), 4);
        assert!(g.newman_check());

        let d = EtaQuotient::new(1, [(1, 24)]).unwrap();
        assert_eq!(d.product_form(5).unwrap(), ProductForm::constant(1, 24, 5).unwrap());
        assert!(d.newman_check());

        let bad = EtaQuotient::new(2, [(1, 1), (2, 0)]).unwrap();
        assert!(!bad.newman_check());
        assert!(matches!(bad.order(), Err(Error::NonIntegralOrder(_))));
        assert!(EtaQuotient::new(4, [(3, 1)]).is_err());
    }
}
