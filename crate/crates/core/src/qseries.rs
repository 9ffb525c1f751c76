//! Truncated Laurent series in `q` with exact rational coefficients.
//!
//! A [`QSeries`] stores the coefficients of `q^n` for `valuation <= n < prec`
//! densely. Everything at or above `prec` is unknown. A series whose known
//! coefficients all vanish is the zero series `O(q^prec)`; it has no valuation.
//!
//! Precision propagates pessimistically:
//!
//! * `a + b` is known below `min(prec_a, prec_b)`;
//! * `a * b` is known below `min(v_a + prec_b, v_b + prec_a)`, where the
//!   "valuation" of a zero series is taken to be its precision;
//! * `inv`, `log_series`, `exp_series` and `pow_int` keep the relative
//!   precision `prec - valuation`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{short_prec, Error, Result};
use crate::rational::{is_integer, Accum, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    /// Exponent of `coeffs[0]`. Equal to `prec` for the zero series.
    start: i64,
    prec: i64,
    /// Empty exactly for the zero series; otherwise `coeffs[0] != 0`.
    coeffs: Vec<Rational>,
}

impl QSeries {
    /// Builds `Σ coeffs[i] q^(start+i) + O(q^prec)`. Missing trailing
    /// coefficients are zero; leading zeros are stripped.
    pub fn new(start: i64, coeffs: Vec<Rational>, prec: i64) -> Result<Self> {
        if start + coeffs.len() as i64 > prec {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients from q^{start} exceed precision O(q^{prec})",
                coeffs.len()
            )));
        }
        Ok(Self::normalized(start, coeffs, prec))
    }

    pub fn from_ints(start: i64, coeffs: &[i64], prec: i64) -> Result<Self> {
        Self::new(start, coeffs.iter().map(|&c| crate::rational::int(c)).collect(), prec)
    }

    /// Truncating constructor used internally: keeps only exponents below `prec`.
    pub(crate) fn normalized(start: i64, mut coeffs: Vec<Rational>, prec: i64) -> Self {
        let keep = (prec - start).max(0) as usize;
        coeffs.truncate(keep);
        match coeffs.iter().position(|c| !c.is_zero()) {
            None => Self::zero(prec),
            Some(lead) => {
                coeffs.drain(..lead);
                let start = start + lead as i64;
                coeffs.resize((prec - start) as usize, Rational::zero());
                Self { start, prec, coeffs }
            }
        }
    }

    pub fn zero(prec: i64) -> Self {
        Self { start: prec, prec, coeffs: Vec::new() }
    }

    /// `1 + O(q^prec)`.
    pub fn one(prec: i64) -> Self {
        Self::monomial(Rational::one(), 0, prec)
    }

    /// `c q^e + O(q^prec)`.
    pub fn monomial(c: Rational, e: i64, prec: i64) -> Self {
        if e >= prec || c.is_zero() {
            return Self::zero(prec);
        }
        let mut coeffs = vec![Rational::zero(); (prec - e) as usize];
        coeffs[0] = c;
        Self { start: e, prec, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn valuation(&self) -> Result<i64> {
        if self.is_zero() {
            Err(Error::ZeroSeries)
        } else {
            Ok(self.start)
        }
    }

    /// Valuation, or the precision for the zero series. Used in precision algebra.
    fn effective_valuation(&self) -> i64 {
        self.start
    }

    /// `prec - valuation`; zero for the zero series.
    pub fn relative_prec(&self) -> i64 {
        self.prec - self.start
    }

    pub fn leading_coefficient(&self) -> Result<&Rational> {
        self.coeffs.first().ok_or(Error::ZeroSeries)
    }

    /// Coefficient of `q^n`, or `None` when `n >= prec`.
    pub fn coeff(&self, n: i64) -> Option<Rational> {
        if n >= self.prec {
            None
        } else if n < self.start {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[(n - self.start) as usize].clone())
        }
    }

    pub(crate) fn coeff_ref(&self, n: i64) -> Option<&Rational> {
        if n < self.start || n >= self.prec {
            None
        } else {
            Some(&self.coeffs[(n - self.start) as usize])
        }
    }

    /// Dense coefficients starting at the valuation.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `(exponent, coefficient)` for every known nonzero term.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.start + i as i64, c))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(is_integer)
    }

    /// Drops everything at or above `prec`.
    pub fn truncate(&self, prec: i64) -> Result<Self> {
        if prec > self.prec {
            return Err(short_prec(format!(
                "requested O(q^{prec}) but series is only known to O(q^{})",
                self.prec
            )));
        }
        Ok(Self::normalized(self.start, self.coeffs.clone(), prec))
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { start: self.start + k, prec: self.prec + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::normalized(self.start, self.coeffs.iter().map(|c| c * s).collect(), self.prec)
    }

    /// First exponent below the common precision where `self` and `other`
    /// differ, or `None` if they agree there.
    pub fn first_difference(&self, other: &Self) -> Option<i64> {
        let prec = self.prec.min(other.prec);
        let lo = self.start.min(other.start);
        (lo..prec).find(|&n| self.coeff(n) != other.coeff(n))
    }

    /// Exact agreement on every exponent below `prec`; false if either side
    /// is not known that far.
    pub fn agrees_to(&self, other: &Self, prec: i64) -> bool {
        self.prec >= prec
            && other.prec >= prec
            && self.first_difference(other).is_none_or(|n| n >= prec)
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        let start = self.start.min(other.start);
        if start >= prec {
            return Self::zero(prec);
        }
        let coeffs = (start..prec)
            .map(|n| match (self.coeff_ref(n), other.coeff_ref(n)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => Rational::zero(),
            })
            .collect();
        Self::normalized(start, coeffs, prec)
    }

    pub fn neg(&self) -> Self {
        Self { start: self.start, prec: self.prec, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Cauchy product (schoolbook).
    pub fn mul(&self, other: &Self) -> Self {
        let start = self.effective_valuation() + other.effective_valuation();
        let prec = (self.effective_valuation() + other.prec)
            .min(other.effective_valuation() + self.prec);
        if self.is_zero() || other.is_zero() {
            return Self::zero(prec);
        }
        let len = (prec - start) as usize;
        let (a, b) = (&self.coeffs, &other.coeffs);
        let coeffs = (0..len)
            .map(|k| {
                let mut acc = Accum::new();
                for i in 0..=k {
                    acc.add_prod(&a[i], &b[k - i]);
                }
                acc.finish()
            })
            .collect();
        Self::normalized(start, coeffs, prec)
    }

    /// Multiplicative inverse to the same relative precision.
    pub fn inv(&self) -> Result<Self> {
        let a = &self.coeffs;
        let a0 = a.first().ok_or(Error::ZeroSeries)?;
        let len = a.len();
        let unit = a0.is_one();
        let a0_inv = a0.recip();
        let mut b: Vec<Rational> = Vec::with_capacity(len);
        b.push(a0_inv.clone());
        for n in 1..len {
            let mut acc = Accum::new();
            for k in 1..=n {
                acc.add_prod(&a[k], &b[n - k]);
            }
            let s = acc.finish();
            b.push(if unit { -s } else { -s * &a0_inv });
        }
        let v = self.start;
        Ok(Self::normalized(-v, b, -v + len as i64))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Exact integer power by repeated squaring; negative powers go through `inv`.
    pub fn pow_int(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow_int(-e);
        }
        if e == 0 {
            if self.is_zero() {
                return Err(Error::ZeroSeries);
            }
            return Ok(Self::one(self.relative_prec()));
        }
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc.expect("e > 0"))
    }

    /// Substitution `q -> q^m`.
    pub fn rescale_q(&self, m: u64) -> Self {
        assert!(m >= 1, "rescale_q needs m >= 1");
        let m = m as i64;
        if self.is_zero() {
            return Self::zero(self.prec * m);
        }
        let mut coeffs = vec![Rational::zero(); (self.relative_prec() * m) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m as usize] = c.clone();
        }
        Self::normalized(self.start * m, coeffs, self.prec * m)
    }

    /// Θ = q d/dq.
    pub fn theta_op(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(self.start + i as i64)))
            .collect();
        Self::normalized(self.start, coeffs, self.prec)
    }

    /// `log(a)` for `a = 1 + O(q)`, computed as `∫ Θ(a)/a dq/q`.
    pub fn log_series(&self) -> Result<Self> {
        let a = &self.coeffs;
        if self.is_zero() || self.start != 0 || !a[0].is_one() {
            return Err(Error::BadLeadingTerm("log needs a series 1 + O(q)".into()));
        }
        let x = theta_quotient(a);
        let coeffs = x
            .into_iter()
            .enumerate()
            .map(|(n, xn)| if n == 0 { xn } else { xn / Rational::from_integer(BigInt::from(n)) })
            .collect();
        Ok(Self::normalized(0, coeffs, self.prec))
    }

    /// `exp(a)` for `a = O(q)`.
    pub fn exp_series(&self) -> Result<Self> {
        if (!self.is_zero() && self.start < 1) || self.prec < 1 {
            return Err(Error::BadLeadingTerm("exp needs a series O(q)".into()));
        }
        let len = self.prec as usize;
        let x: Vec<Rational> = (0..len)
            .map(|n| self.coeff(n as i64).unwrap() * Rational::from_integer(BigInt::from(n)))
            .collect();
        Ok(Self::normalized(0, exp_from_theta_log(&x), self.prec))
    }
}

/// Given `a` with `a[0] = 1`, returns `x` with `a * x = Θ(a)`, i.e. the
/// coefficients of `Θ(a)/a`. Integral whenever `a` is.
pub(crate) fn theta_quotient(a: &[Rational]) -> Vec<Rational> {
    let mut x: Vec<Rational> = Vec::with_capacity(a.len());
    for n in 0..a.len() {
        let mut acc = Accum::new();
        acc.add_scaled(&a[n], &BigInt::from(n));
        let mut sub = Accum::new();
        for k in 1..=n {
            sub.add_prod(&a[k], &x[n - k]);
        }
        x.push(acc.finish() - sub.finish());
    }
    x
}

/// Given `x = Θ(log b)` with `x[0] = 0`, rebuilds `b` with `b[0] = 1` from
/// `n b(n) = Σ_{k=1..n} x(k) b(n-k)`.
pub(crate) fn exp_from_theta_log(x: &[Rational]) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(x.len());
    if x.is_empty() {
        return b;
    }
    b.push(Rational::one());
    for n in 1..x.len() {
        let mut acc = Accum::new();
        for k in 1..=n {
            acc.add_prod(&x[k], &b[n - k]);
        }
        let s = acc.finish();
        let n = BigInt::from(n);
        let bn = if s.denom().is_one() && (s.numer() % &n).is_zero() {
            Rational::from_integer(s.numer() / &n)
        } else {
            s / Rational::from_integer(n)
        };
        b.push(bn);
    }
    b
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries::add(self, rhs)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries::sub(self, rhs)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::neg(self)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.terms() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mono = match n {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{n}"),
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else if is_integer(&mag) {
                write!(f, "{mag}{mono}")?;
            } else {
                write!(f, "({mag}){mono}")?;
            }
        }
        if first {
            write!(f, "O(q^{})", self.prec)
        } else {
            write!(f, " + O(q^{})", self.prec)
        }
    }
}
