//! Multiplicative Hecke operators `𝒯(n)` acting on infinite-product forms.
//!
//! The operators are realized directly on the exponent sequence `c(n)`. The
//! normalizing constant of the slash-product definition only fixes the leading
//! coefficient, and product forms are monic by construction, so it is never
//! computed. Multiplier systems are not tracked.
//!
//! For `p ∤ N` the exponents of `f|𝒯(p^r)` are
//!
//! ```text
//! c_{p^r}(n) = Σ_{i=0..r} p^i ĉ(p^i, n/p^{r-i})
//!            + Σ_{k=0..r-1} Σ_{i=0..k} χ_p(n/p^{r-k-1}) p^i ĉ(p^i, n/p^{r-k-1})
//! ```
//!
//! and the order becomes `h σ(p^r)`. For `p | N` they are
//! `p^r ĉ(p^r, n) + Σ_{i<r} χ_p(n) p^i ĉ(p^i, n)` and the order is unchanged.
//! Here `ĉ(X, Y/Z) = c(XY/Z)` when `Z | Y` and 0 otherwise.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{self, gcd, is_prime};
use crate::error::{short_prec, Error, Result};
use crate::meta::FormMeta;
use crate::prodform::ProductForm;
use crate::rational::{mod_int, Accum, Rational};

/// Image of a form under a multiplicative Hecke operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultHeckeResult {
    pub form: ProductForm,
    pub meta: FormMeta,
}

impl MultHeckeResult {
    /// Pairs the new exponents with the lifted weight and order of `𝒯(p^r)`.
    fn lifted(form: ProductForm, base: &FormMeta, p: u64, r: u32) -> Self {
        let pr = p.pow(r);
        let meta = if base.level.is_multiple_of(p) {
            FormMeta {
                weight: &base.weight * Rational::from_integer(BigInt::from(pr)),
                level: base.level,
                order: base.order,
            }
        } else {
            let s = arith::sigma1(pr);
            FormMeta {
                weight: &base.weight * Rational::from_integer(BigInt::from(s)),
                level: base.level,
                order: base.order * s as i64,
            }
        };
        assert_eq!(form.order(), meta.order, "order lift disagrees with exponent formula");
        Self { form, meta }
    }

    pub fn identity(form: &ProductForm, meta: &FormMeta) -> Self {
        Self { form: form.clone(), meta: meta.clone() }
    }
}

/// Trivial Dirichlet character modulo `m`: 1 if `gcd(x, m) = 1`, else 0.
pub fn chi_triv(m: u64, x: i64) -> u8 {
    u8::from(gcd(x, m as i64) == 1)
}

/// `ĉ(X, Y/Z)`: `c(XY/Z)` if `Z | Y`, else 0. Indices `<= 0` give 0.
pub fn c_hat(c: &ProductForm, x: i64, y: i64, z: i64) -> Result<Rational> {
    if z == 0 || y % z != 0 {
        return Ok(Rational::zero());
    }
    let idx = x * (y / z);
    if idx <= 0 {
        return Ok(Rational::zero());
    }
    c.exponent(idx)
        .cloned()
        .ok_or_else(|| short_prec(format!("c({idx}) needed, exponents known below {}", c.prec())))
}

/// Exponent precision of `f|𝒯(n)` given input precision `prec_in`.
pub fn output_prec(prec_in: i64, n: u64) -> i64 {
    (prec_in - 1) / n as i64 + 1
}

/// Input exponent precision needed for `f|𝒯(n)` to have precision `prec_out`.
pub fn required_prec(n: u64, prec_out: i64) -> i64 {
    n as i64 * (prec_out - 1) + 1
}

/// `f|𝒯(p^r)` with the largest output precision the input supports.
pub fn mult_hecke_prime_power(f: &ProductForm, meta: &FormMeta, p: u64, r: u32) -> Result<MultHeckeResult> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    f.check_meta(meta)?;
    if r == 0 {
        return Ok(MultHeckeResult::identity(f, meta));
    }
    let pr = p.pow(r);
    let prec_out = output_prec(f.prec(), pr);
    if prec_out < 2 {
        return Err(short_prec(format!(
            "𝒯({pr}) needs exponent precision > {pr}, have {}",
            f.prec()
        )));
    }
    let pi = p as i64;
    let pow = |e: u32| pi.pow(e);
    let divides_level = meta.level.is_multiple_of(p);
    let mut exps = Vec::with_capacity(prec_out as usize - 1);
    for n in 1..prec_out {
        let mut acc = Accum::new();
        if divides_level {
            acc.add_scaled(&c_hat(f, pow(r), n, 1)?, &BigInt::from(pow(r)));
            if chi_triv(p, n) == 1 {
                for i in 0..r {
                    acc.add_scaled(&c_hat(f, pow(i), n, 1)?, &BigInt::from(pow(i)));
                }
            }
        } else {
            for i in 0..=r {
                acc.add_scaled(&c_hat(f, pow(i), n, pow(r - i))?, &BigInt::from(pow(i)));
            }
            for k in 0..r {
                let z = pow(r - k - 1);
                // χ_p of a non-integer annihilates the term, like ĉ does
                if n % z != 0 || chi_triv(p, n / z) == 0 {
                    continue;
                }
                for i in 0..=k {
                    acc.add_scaled(&c_hat(f, pow(i), n, z)?, &BigInt::from(pow(i)));
                }
            }
        }
        exps.push(acc.finish());
    }
    let order = if divides_level { f.order() } else { f.order() * arith::sigma1(pr) as i64 };
    let form = ProductForm::new(order, exps)?;
    Ok(MultHeckeResult::lifted(form, meta, p, r))
}

/// `f|𝒯(n)`: prime-power factors applied in ascending prime order.
pub fn mult_hecke(f: &ProductForm, meta: &FormMeta, n: u64) -> Result<MultHeckeResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("𝒯(0) is undefined".into()));
    }
    mult_hecke_factors(f, meta, &arith::factorize(n))
}

/// Applies `𝒯(p^r)` for each `(p, r)` in the given order.
pub fn mult_hecke_factors(f: &ProductForm, meta: &FormMeta, factors: &[(u64, u32)]) -> Result<MultHeckeResult> {
    f.check_meta(meta)?;
    let mut cur = MultHeckeResult::identity(f, meta);
    for &(p, r) in factors {
        cur = mult_hecke_prime_power(&cur.form, &cur.meta, p, r)?;
    }
    Ok(cur)
}

/// `f|𝒯(n)` truncated to exponent precision `prec`, or an error if the input
/// does not reach `n (prec - 1) + 1`.
pub fn mult_hecke_to(f: &ProductForm, meta: &FormMeta, n: u64, prec: i64) -> Result<MultHeckeResult> {
    let need = required_prec(n, prec);
    if f.prec() < need {
        return Err(short_prec(format!(
            "𝒯({n}) to precision {prec} needs input precision {need}, have {}",
            f.prec()
        )));
    }
    let res = mult_hecke(&f.truncate(need)?, meta, n)?;
    Ok(MultHeckeResult { form: res.form.truncate(prec)?, meta: res.meta })
}

/// Where two sides of a Hecke identity first disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Discrepancy {
    Exponent { n: i64, left: Rational, right: Rational },
    Weight { left: Rational, right: Rational },
    Order { left: i64, right: i64 },
}

impl std::fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Exponent { n, left, right } => write!(f, "c({n}): {left} != {right}"),
            Self::Weight { left, right } => write!(f, "weight: {left} != {right}"),
            Self::Order { left, right } => write!(f, "order: {left} != {right}"),
        }
    }
}

/// Compares two results exponent-by-exponent below `prec`, then weight and order.
pub fn compare(left: &MultHeckeResult, right: &MultHeckeResult, prec: i64) -> Option<Discrepancy> {
    let n_max = prec.min(left.form.prec()).min(right.form.prec());
    for n in 1..n_max {
        let (a, b) = (left.form.exponent(n).unwrap(), right.form.exponent(n).unwrap());
        if a != b {
            return Some(Discrepancy::Exponent { n, left: a.clone(), right: b.clone() });
        }
    }
    if left.meta.weight != right.meta.weight {
        return Some(Discrepancy::Weight { left: left.meta.weight.clone(), right: right.meta.weight.clone() });
    }
    if left.meta.order != right.meta.order || left.form.order() != right.form.order() {
        return Some(Discrepancy::Order { left: left.form.order(), right: right.form.order() });
    }
    None
}

#[derive(Clone, Debug)]
pub struct RelationReport {
    pub holds: bool,
    /// Which comparison failed (`"commutativity"` or `"relation"`) and where.
    pub witness: Option<(&'static str, Discrepancy)>,
    pub prec: i64,
}

/// Checks `f|𝒯(m)𝒯(n) = f|𝒯(n)𝒯(m) = ∏_{d|(m,n)} (χ_N(d) f|𝒯(mn/d²))^d`
/// on exponents below `prec`. A factor with `χ_N(d) = 0` is omitted.
pub fn verify_algebra_relation(f: &ProductForm, meta: &FormMeta, m: u64, n: u64, prec: i64) -> Result<RelationReport> {
    let need = required_prec(m * n, prec);
    if f.prec() < need {
        return Err(short_prec(format!(
            "relation for (m, n) = ({m}, {n}) at precision {prec} needs input precision {need}, have {}",
            f.prec()
        )));
    }
    let f = f.truncate(need)?;
    let mn = {
        let t = mult_hecke(&f, meta, m)?;
        mult_hecke(&t.form, &t.meta, n)?
    };
    let nm = {
        let t = mult_hecke(&f, meta, n)?;
        mult_hecke(&t.form, &t.meta, m)?
    };
    let mut rhs: Option<MultHeckeResult> = None;
    for d in arith::divisors(gcd(m as i64, n as i64)) {
        if chi_triv(meta.level, d as i64) == 0 {
            continue;
        }
        let t = mult_hecke(&f, meta, m * n / (d * d))?;
        let factor = MultHeckeResult { form: t.form.prod_pow(d as i64), meta: t.meta.pow(d as i64) };
        rhs = Some(match rhs {
            None => factor,
            Some(acc) => MultHeckeResult { form: acc.form.prod_mul(&factor.form), meta: acc.meta.mul(&factor.meta) },
        });
    }
    let rhs = rhs.expect("d = 1 always contributes");
    let witness = compare(&mn, &nm, prec)
        .map(|d| ("commutativity", d))
        .or_else(|| compare(&mn, &rhs, prec).map(|d| ("relation", d)));
    Ok(RelationReport { holds: witness.is_none(), witness, prec })
}

#[derive(Clone, Debug)]
pub struct CongruenceReport {
    pub holds: bool,
    /// First `n` where the congruence fails.
    pub first_failure: Option<i64>,
    pub prec: i64,
}

/// Checks `c_{p^r}(n) ≡ c(e)` (if `n = p^m e`, `p ∤ e`, `m < r`) and
/// `c_{p^r}(n) ≡ c(n/p^r)` (if `m >= r`) modulo `p` for `1 <= n < prec`.
pub fn congruence_check(f: &ProductForm, meta: &FormMeta, p: u64, r: u32, prec: i64) -> Result<CongruenceReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if meta.level.is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!("{p} divides the level {}", meta.level)));
    }
    if let Some(n) = f.first_non_integral() {
        return Err(Error::NonIntegralExponents(n));
    }
    let res = mult_hecke_to(f, meta, p.pow(r), prec)?;
    let pi = p as i64;
    for n in 1..prec {
        let mut e = n;
        let mut m = 0;
        while e % pi == 0 {
            e /= pi;
            m += 1;
        }
        let reference = if m < r {
            f.exponent(e).cloned().unwrap()
        } else {
            f.exponent(n / pi.pow(r)).cloned().unwrap()
        };
        let lhs = res.form.exponent(n).unwrap();
        if mod_int(lhs, p) != mod_int(&reference, p) {
            return Ok(CongruenceReport { holds: false, first_failure: Some(n), prec });
        }
    }
    Ok(CongruenceReport { holds: true, first_failure: None, prec })
}
