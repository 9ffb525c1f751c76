//! Infinite-product form `q^h ∏_{n>=1} (1 - q^n)^{c(n)}`.
//!
//! A [`ProductForm`] of precision `P` knows `c(n)` for `1 <= n < P` and so
//! determines the Fourier expansion through `q^{h+P-1}`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{short_prec, Error, Result};
use crate::meta::FormMeta;
use crate::qseries::{exp_from_theta_log, theta_quotient, QSeries};
use crate::rational::{is_integer, Accum, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductForm {
    order: i64,
    /// `exponents[i]` is `c(i + 1)`.
    exponents: Vec<Rational>,
}

impl ProductForm {
    /// `exponents` lists `c(1), c(2), ...`; at least one is required.
    pub fn new(order: i64, exponents: Vec<Rational>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(short_prec("a product form needs prec >= 2 (at least c(1))"));
        }
        Ok(Self { order, exponents })
    }

    pub fn from_fn(order: i64, prec: i64, mut c: impl FnMut(i64) -> Rational) -> Result<Self> {
        Self::new(order, (1..prec).map(&mut c).collect())
    }

    /// Constant exponent sequence, e.g. Δ = `constant(1, 24, P)`.
    pub fn constant(order: i64, c: i64, prec: i64) -> Result<Self> {
        Self::from_fn(order, prec, |_| crate::rational::int(c))
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn prec(&self) -> i64 {
        self.exponents.len() as i64 + 1
    }

    /// `c(n)` for `1 <= n < prec`.
    pub fn exponent(&self, n: i64) -> Option<&Rational> {
        if n < 1 {
            None
        } else {
            self.exponents.get((n - 1) as usize)
        }
    }

    pub fn exponents(&self) -> &[Rational] {
        &self.exponents
    }

    pub fn truncate(&self, prec: i64) -> Result<Self> {
        if prec > self.prec() {
            return Err(short_prec(format!(
                "requested exponent precision {prec}, have {}",
                self.prec()
            )));
        }
        Self::new(self.order, self.exponents[..(prec - 1).max(0) as usize].to_vec())
    }

    /// True iff every stored exponent is an integer.
    pub fn is_integral(&self) -> bool {
        self.exponents.iter().all(is_integer)
    }

    /// First `n` with a non-integral `c(n)`.
    pub fn first_non_integral(&self) -> Option<i64> {
        self.exponents.iter().position(|c| !is_integer(c)).map(|i| i as i64 + 1)
    }

    /// First `n` below the common precision where the exponents differ.
    pub fn first_difference(&self, other: &Self) -> Option<i64> {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .position(|(a, b)| a != b)
            .map(|i| i as i64 + 1)
    }

    /// Orders add and exponents add pointwise; precision is the minimum.
    pub fn prod_mul(&self, other: &Self) -> Self {
        let exponents = self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect();
        Self { order: self.order + other.order, exponents }
    }

    pub fn prod_pow(&self, e: i64) -> Self {
        let k = Rational::from_integer(BigInt::from(e));
        Self {
            order: self.order * e,
            exponents: self.exponents.iter().map(|c| c * &k).collect(),
        }
    }

    pub fn prod_div(&self, other: &Self) -> Self {
        self.prod_mul(&other.prod_pow(-1))
    }

    /// `D(n) = Σ_{d|n} d c(d)` for `1 <= n < prec`, indexed from 0 (`D(0) = 0`).
    pub fn divisor_weighted_sums(&self) -> Vec<Rational> {
        let p = self.prec() as usize;
        let mut acc: Vec<Accum> = (0..p).map(|_| Accum::new()).collect();
        for d in 1..p {
            let w = BigInt::from(d);
            for m in (d..p).step_by(d) {
                acc[m].add_scaled(&self.exponents[d - 1], &w);
            }
        }
        acc.into_iter().map(Accum::finish).collect()
    }

    /// Meta-data consistency: the stored order must equal `meta.order`.
    pub fn check_meta(&self, meta: &FormMeta) -> Result<()> {
        if meta.order != self.order {
            return Err(Error::InvalidArgument(format!(
                "product order {} disagrees with meta order {}",
                self.order, meta.order
            )));
        }
        Ok(())
    }
}

fn normalized_part(f: &QSeries) -> Result<(i64, &[Rational])> {
    let v = f.valuation()?;
    let lead = f.leading_coefficient()?;
    if !lead.is_one() {
        return Err(Error::NotNormalized(lead.to_string()));
    }
    if f.relative_prec() < 2 {
        return Err(short_prec("need at least the q^(v+1) coefficient to get c(1)"));
    }
    Ok((v, f.coeffs()))
}

/// Solves `D(m) = Σ_{d|m} d c(d)` for `c`, given `D(1..P)` (index 0 ignored).
fn exponents_from_divisor_sums(d_sums: &[Rational]) -> Vec<Rational> {
    let p = d_sums.len();
    let mut partial: Vec<Accum> = (0..p).map(|_| Accum::new()).collect();
    let mut c = Vec::with_capacity(p.saturating_sub(1));
    for m in 1..p {
        let lower = std::mem::take(&mut partial[m]).finish();
        let num = &d_sums[m] - lower;
        let mb = BigInt::from(m);
        let cm = if num.denom().is_one() && (num.numer() % &mb).is_zero() {
            Rational::from_integer(num.numer() / &mb)
        } else {
            num / Rational::from_integer(mb.clone())
        };
        for k in (2 * m..p).step_by(m) {
            partial[k].add_scaled(&cm, &mb);
        }
        c.push(cm);
    }
    c
}

/// Fourier expansion to infinite product via the logarithm:
/// `log(f q^-h) = -Σ_m (Σ_{d|m} d c(d)/m) q^m`.
pub fn fourier_to_product(f: &QSeries) -> Result<ProductForm> {
    let (v, a) = normalized_part(f)?;
    let g = QSeries::new(0, a.to_vec(), a.len() as i64)?;
    let log = g.log_series()?;
    // m log(m) = -D(m)
    let d_sums: Vec<Rational> = (0..a.len() as i64)
        .map(|m| -(log.coeff(m).unwrap() * Rational::from_integer(BigInt::from(m))))
        .collect();
    ProductForm::new(v, exponents_from_divisor_sums(&d_sums))
}

/// Same conversion through the direct recursion
/// `c(n) = -a(n) - (1/n)(Σ_{u|n,u<n} u c(u) + Σ_{1<=s<n} a(n-s) Σ_{u|s} u c(u))`.
pub fn fourier_to_product_recursive(f: &QSeries) -> Result<ProductForm> {
    let (v, a) = normalized_part(f)?;
    let p = a.len();
    // proper[n] = Σ_{u|n,u<n} u c(u); full[s] = Σ_{u|s} u c(u)
    let mut proper: Vec<Accum> = (0..p).map(|_| Accum::new()).collect();
    let mut full: Vec<Rational> = vec![Rational::zero(); p];
    let mut c: Vec<Rational> = Vec::with_capacity(p - 1);
    for n in 1..p {
        let prop = std::mem::take(&mut proper[n]).finish();
        let mut conv = Accum::new();
        for s in 1..n {
            conv.add_prod(&a[n - s], &full[s]);
        }
        let inner = &prop + conv.finish();
        let cn = -&a[n] - inner / Rational::from_integer(BigInt::from(n));
        let nb = BigInt::from(n);
        let mut nc = Accum::new();
        nc.add_scaled(&cn, &nb);
        let nc = nc.finish();
        full[n] = &prop + &nc;
        for k in (2 * n..p).step_by(n) {
            proper[k].add(&nc);
        }
        c.push(cn);
    }
    ProductForm::new(v, c)
}

/// Expands `q^h ∏ (1 - q^n)^{c(n)}` through `O(q^prec)`.
pub fn product_to_fourier(p: &ProductForm, prec: i64) -> Result<QSeries> {
    let rel = prec - p.order;
    if rel > p.prec() {
        return Err(short_prec(format!(
            "O(q^{prec}) needs exponent precision {rel}, have {}",
            p.prec()
        )));
    }
    if rel < 1 {
        return Ok(QSeries::zero(prec));
    }
    let d_sums = p.divisor_weighted_sums();
    let x: Vec<Rational> = d_sums[..rel as usize].iter().map(|d| -d).collect();
    let b = exp_from_theta_log(&x);
    Ok(QSeries::normalized(p.order, b, prec))
}

/// `Θ(f)/f` of a product form: `h - Σ_n (Σ_{d|n} d c(d)) q^n`, known below `prec()`.
pub fn log_derivative_series(p: &ProductForm) -> QSeries {
    let mut coeffs: Vec<Rational> = p.divisor_weighted_sums().into_iter().map(|d| -d).collect();
    coeffs[0] = Rational::from_integer(BigInt::from(p.order));
    QSeries::normalized(0, coeffs, p.prec())
}

/// Cross-check helper: recomputes `Θ(f)/f` from a Fourier expansion.
pub fn theta_over_f(f: &QSeries) -> Result<QSeries> {
    let (v, a) = normalized_part(f)?;
    let mut x = theta_quotient(a);
    x[0] = Rational::from_integer(BigInt::from(v));
    Ok(QSeries::normalized(0, x, a.len() as i64))
}
