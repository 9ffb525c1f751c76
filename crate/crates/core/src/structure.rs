//! The logarithmic-derivative map 𝔇, multiplicative eigenforms and
//! eta-quotient recognition.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{self, gcd, is_prime, moebius};
use crate::classical::{eisenstein, EtaQuotient};
use crate::error::{short_prec, Error, Result};
use crate::heckeadd::hecke_add;
use crate::heckemult::{mult_hecke, mult_hecke_to};
use crate::meta::FormMeta;
use crate::prodform::{log_derivative_series, ProductForm};
use crate::qseries::QSeries;
use crate::rational::{int, Rational};

/// `𝔇(f) = Θ(f)/f - (k/12) E₂` below `q^prec`.
pub fn log_derivative(f: &ProductForm, meta: &FormMeta, prec: i64) -> Result<QSeries> {
    f.check_meta(meta)?;
    if prec > f.prec() {
        return Err(short_prec(format!("𝔇 to O(q^{prec}) needs exponent precision {prec}, have {}", f.prec())));
    }
    let theta = log_derivative_series(f).truncate(prec)?;
    let e2 = eisenstein(2, prec)?.scale(&(&meta.weight / int(12)));
    Ok(theta.sub(&e2))
}

#[derive(Clone, Debug)]
pub struct LogDerivReport {
    pub holds: bool,
    pub first_difference: Option<i64>,
    pub prec: i64,
    /// `𝔇(f|𝒯(n))`.
    pub hecke_side: QSeries,
    /// `𝔇(f)|T₂(n)`.
    pub additive_side: QSeries,
}

/// Compares `𝔇(f|𝒯(n))` with `𝔇(f)|T₂(n)` below `q^prec`, for `(n, N) = 1`.
pub fn logderiv_equivariance(f: &ProductForm, meta: &FormMeta, n: u64, prec: i64) -> Result<LogDerivReport> {
    if n == 0 || gcd(n as i64, meta.level as i64) != 1 {
        return Err(Error::InvalidArgument(format!("n = {n} must be coprime to level {}", meta.level)));
    }
    let image = mult_hecke_to(f, meta, n, prec)?;
    let hecke_side = log_derivative(&image.form, &image.meta, prec)?;
    let need = crate::heckemult::required_prec(n, prec);
    let additive_side = hecke_add(&log_derivative(f, meta, need)?, 2, meta.level, n)?;
    let first = hecke_side.first_difference(&additive_side).filter(|&i| i < prec);
    Ok(LogDerivReport { holds: first.is_none(), first_difference: first, prec, hecke_side, additive_side })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenReport {
    pub is_eigenform: bool,
    pub tested_primes: Vec<u64>,
    /// `λ(p) = σ(p)` for every prime that passed.
    pub lambda: BTreeMap<u64, u64>,
    /// First `(p, n)` with `c(n) != c(pn)`.
    pub first_violation: Option<(u64, i64)>,
    /// Pairs with `pn < tested_below` were checked.
    pub tested_below: i64,
}

/// Tests `c(n) = c(pn)` for each prime `p ∤ N` and all `pn < prec`, then
/// confirms `f|𝒯(p) = f^{σ(p)}` on the passing primes.
pub fn is_mult_eigenform(f: &ProductForm, level: u64, primes: &[u64], prec: i64) -> Result<EigenReport> {
    if prec > f.prec() {
        return Err(short_prec(format!("need exponent precision {prec}, have {}", f.prec())));
    }
    for &p in primes {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if level.is_multiple_of(p) {
            return Err(Error::InvalidArgument(format!("prime {p} divides level {level}")));
        }
    }
    let meta = FormMeta::new(Rational::zero(), level, f.order())?;
    let base = f.truncate(prec)?;
    let mut lambda = BTreeMap::new();
    let mut first_violation = None;
    for &p in primes {
        let pi = p as i64;
        let bad = (1..).take_while(|n| pi * n < prec).find(|&n| f.exponent(n) != f.exponent(pi * n));
        if let Some(n) = bad {
            first_violation.get_or_insert((p, n));
            continue;
        }
        let s = arith::sigma1(p);
        let image = mult_hecke(&base, &meta, p)?.form;
        let power = base.prod_pow(s as i64).truncate(image.prec())?;
        if let Some(n) = image.first_difference(&power) {
            first_violation.get_or_insert((p, n));
            continue;
        }
        lambda.insert(p, s);
    }
    Ok(EigenReport {
        is_eigenform: first_violation.is_none(),
        tested_primes: primes.to_vec(),
        lambda,
        first_violation,
        tested_below: prec,
    })
}

/// Why a product form was not recognized as an eta quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    Exponent { n: i64, expected: i64, found: Rational },
    Order { expected: i64, found: String },
    Weight { expected: Rational, found: Rational },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exponent { n, expected, found } => write!(f, "c({n}) = {found}, eta quotient predicts {expected}"),
            Self::Order { expected, found } => write!(f, "order {expected}, eta quotient gives {found}"),
            Self::Weight { expected, found } => write!(f, "weight {expected}, eta quotient gives {found}"),
        }
    }
}

/// Inverts `c(n) = Σ_{δ|(n,N)} r_δ` and checks it on every `n < f.prec()`.
/// The order always has to match; the weight only when given.
pub fn eta_recognize(
    f: &ProductForm,
    level: u64,
    weight: Option<&Rational>,
) -> Result<std::result::Result<EtaQuotient, Rejection>> {
    if let Some(n) = f.first_non_integral() {
        return Err(Error::NonIntegralExponents(n));
    }
    if level == 0 {
        return Err(Error::InvalidArgument("level must be >= 1".into()));
    }
    if f.prec() <= level as i64 {
        return Err(short_prec(format!("recognition at level {level} needs exponent precision > {level}")));
    }
    let c = |n: i64| -> i64 {
        f.exponent(n).unwrap().to_integer().to_i64().expect("exponent fits in i64")
    };
    let mut r = Vec::new();
    for delta in arith::divisors(level) {
        let rd: i64 = arith::divisors(delta).into_iter().map(|e| moebius(delta / e) * c(e as i64)).sum();
        r.push((delta, rd));
    }
    let eta = EtaQuotient::new(level, r)?;
    for n in 1..f.prec() {
        let expected = eta.exponent(n as u64);
        if c(n) != expected {
            return Ok(Err(Rejection::Exponent { n, expected, found: f.exponent(n).unwrap().clone() }));
        }
    }
    match eta.order() {
        Ok(h) if h == f.order() => {}
        Ok(h) => return Ok(Err(Rejection::Order { expected: f.order(), found: h.to_string() })),
        Err(_) => {
            let s: i64 = eta.exps().iter().map(|(&d, &r)| d as i64 * r).sum();
            return Ok(Err(Rejection::Order { expected: f.order(), found: format!("{s}/24") }));
        }
    }
    if let Some(w) = weight {
        if *w != eta.weight() {
            return Ok(Err(Rejection::Weight { expected: w.clone(), found: eta.weight() }));
        }
    }
    Ok(Ok(eta))
}

/// `σ(m) σ(n) = Σ_{d|(m,n)} d σ(mn/d²)` for all `1 <= m, n <= max`; returns
/// the first failing pair.
pub fn sigma_identity_check(max: u64) -> Option<(u64, u64)> {
    let sig: Vec<u64> = (0..=max * max).map(|n| if n == 0 { 0 } else { arith::sigma1(n) }).collect();
    for m in 1..=max {
        for n in 1..=max {
            let rhs: u64 = arith::divisors(gcd(m as i64, n as i64))
                .into_iter()
                .map(|d| d * sig[(m * n / (d * d)) as usize])
                .sum();
            if sig[m as usize] * sig[n as usize] != rhs {
                return Some((m, n));
            }
        }
    }
    None
}

/// `E₂|T₂(n) - σ(n) E₂` vanishes below `q^prec`.
pub fn e2_eigen_check(n: u64, prec: i64) -> Result<bool> {
    let need = crate::heckemult::required_prec(n, prec);
    let e2 = eisenstein(2, need)?;
    let lhs = hecke_add(&e2, 2, 1, n)?;
    let rhs = e2.truncate(prec)?.scale(&Rational::from_integer(BigInt::from(arith::sigma1(n))));
    Ok(lhs.first_difference(&rhs).filter(|&i| i < prec).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{delta, delta_meta};
    use crate::prodform::fourier_to_product;
    use crate::rational::frac;

    #[test]
    fn delta_is_in_the_kernel() {
        let d = ProductForm::constant(1, 24, 30).unwrap();
        assert!(log_derivative(&d, &delta_meta(), 30).unwrap().is_zero());
        let one = ProductForm::constant(0, 0, 10).unwrap();
        let m = FormMeta::integral(0, 1, 0).unwrap();
        assert!(log_derivative(&one, &m, 10).unwrap().is_zero());
    }

    #[test]
    fn e4_log_derivative_constant_term() {
        let e4 = fourier_to_product(&eisenstein(4, 12).unwrap()).unwrap();
        let m = FormMeta::integral(4, 1, 0).unwrap();
        let d = log_derivative(&e4, &m, 12).unwrap();
        assert_eq!(d.coeff(0), Some(frac(-1, 3)));
    }

    #[test]
    fn eigenform_detection() {
        let d = fourier_to_product(&delta(41)).unwrap();
        let rep = is_mult_eigenform(&d, 1, &[2, 3, 5], 40).unwrap();
        assert!(rep.is_eigenform);
        assert_eq!(rep.lambda.get(&5), Some(&6));

        let e4 = fourier_to_product(&eisenstein(4, 20).unwrap()).unwrap();
        let rep = is_mult_eigenform(&e4, 1, &[2], 20).unwrap();
        assert!(!rep.is_eigenform);
        assert_eq!(rep.first_violation, Some((2, 1)));
        assert!(is_mult_eigenform(&e4, 2, &[2], 20).is_err());
    }

    #[test]
    fn recognition() {
        let d = ProductForm::constant(1, 24, 10).unwrap();
        let eta = eta_recognize(&d, 1, Some(&int(12))).unwrap().unwrap();
        assert_eq!(eta.r(1), 24);

        let g = ProductForm::from_fn(1, 20, |n| int(if n % 5 == 0 { 4 } else { -1 })).unwrap();
        let eta = eta_recognize(&g, 5, Some(&int(2))).unwrap().unwrap();
        assert_eq!((eta.r(1), eta.r(5)), (-1, 5));

        let e4 = fourier_to_product(&eisenstein(4, 10).unwrap()).unwrap();
        let rej = eta_recognize(&e4, 1, None).unwrap().unwrap_err();
        assert!(matches!(rej, Rejection::Exponent { n: 2, .. }));

        let half = ProductForm::new(0, vec![frac(1, 2), int(0)]).unwrap();
        assert_eq!(eta_recognize(&half, 1, None).unwrap_err(), Error::NonIntegralExponents(1));
    }

    #[test]
    fn sigma_identity_small() {
        assert_eq!(sigma_identity_check(30), None);
        assert!(e2_eigen_check(4, 10).unwrap());
    }
}
