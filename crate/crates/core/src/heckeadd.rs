//! Additive Hecke operators: `T_k(n)` on q-expansions of integral weight and
//! `T_{1/2}(p^{2r})` on Kohnen plus-space coefficient sequences.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{self, exact_sqrt, gcd, is_prime};
use crate::error::{short_prec, Error, Result};
use crate::heckemult::chi_triv;
use crate::qseries::QSeries;
use crate::rational::{pow_i64, Accum, Rational};

/// `f|T_k(n) = Σ_m (Σ_{d|(m,n)} χ_N(d) d^{k-1} a(mn/d²)) q^m` with
/// `gcd(0, n) = n`. Output precision is `(prec - 1) div n + 1`.
pub fn hecke_add(f: &QSeries, k: i64, level: u64, n: u64) -> Result<QSeries> {
    if n == 0 {
        return Err(Error::InvalidArgument("T(0) is undefined".into()));
    }
    if n == 1 {
        return Ok(f.clone());
    }
    let ni = n as i64;
    let prec_out = (f.prec() - 1).div_euclid(ni) + 1;
    let v = match f.valuation() {
        Ok(v) => v,
        Err(_) => return Ok(QSeries::zero(prec_out)),
    };
    let start = (v * ni).min(0);
    if prec_out <= start {
        return Err(short_prec(format!("T({n}) leaves no known coefficients")));
    }
    let weights: BTreeMap<u64, Rational> = arith::divisors(n)
        .into_iter()
        .filter(|&d| chi_triv(level, d as i64) == 1)
        .map(|d| (d, pow_i64(d as i64, k - 1)))
        .collect();
    let coeffs = (start..prec_out)
        .map(|m| {
            let g = if m == 0 { n } else { gcd(m, ni) };
            let mut acc = Accum::new();
            for (&d, w) in &weights {
                if g % d != 0 {
                    continue;
                }
                let idx = m * ni / (d * d) as i64;
                if let Some(a) = f.coeff(idx) {
                    acc.add_prod(w, &a);
                }
            }
            acc.finish()
        })
        .collect();
    Ok(QSeries::normalized(start, coeffs, prec_out))
}

#[derive(Clone, Debug)]
pub struct AddRelationReport {
    pub holds: bool,
    pub first_difference: Option<i64>,
    pub prec: i64,
}

/// Checks `f|T(m)T(n) = Σ_{d|(m,n)} χ_N(d) d^{k-1} f|T(mn/d²)` below `q^prec`.
pub fn hecke_add_relation_check(k: i64, level: u64, m: u64, n: u64, f: &QSeries, prec: i64) -> Result<AddRelationReport> {
    let lhs = hecke_add(&hecke_add(f, k, level, m)?, k, level, n)?;
    let mut rhs: Option<QSeries> = None;
    for d in arith::divisors(gcd(m as i64, n as i64)) {
        if chi_triv(level, d as i64) == 0 {
            continue;
        }
        let term = hecke_add(f, k, level, m * n / (d * d))?.scale(&pow_i64(d as i64, k - 1));
        rhs = Some(match rhs {
            None => term,
            Some(acc) => acc.add(&term),
        });
    }
    let rhs = rhs.expect("d = 1 always contributes");
    if lhs.prec() < prec || rhs.prec() < prec {
        return Err(short_prec(format!(
            "relation to O(q^{prec}) needs input known to O(q^{})",
            (m * n) as i64 * (prec - 1) + 1
        )));
    }
    let first = lhs.first_difference(&rhs).filter(|&i| i < prec);
    Ok(AddRelationReport { holds: first.is_none(), first_difference: first, prec })
}

/// Which positive indices of a plus-space sequence are known.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Support {
    /// Every `n < prec`.
    Full,
    /// Only perfect squares `n < prec` (plus all `n <= 0`).
    Squares,
}

/// Coefficients `a(n)` of a weight-1/2 form in the Kohnen plus space, with a
/// finite principal part. Indices `n <= 0` are always fully known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlusSpaceSeq {
    coeffs: BTreeMap<i64, Rational>,
    prec: i64,
    support: Support,
}

fn plus_index(n: i64) -> bool {
    matches!(n.rem_euclid(4), 0 | 1)
}

impl PlusSpaceSeq {
    pub fn new(coeffs: impl IntoIterator<Item = (i64, Rational)>, prec: i64, support: Support) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (n, c) in coeffs {
            if c.is_zero() {
                continue;
            }
            if !plus_index(n) {
                return Err(Error::InvalidArgument(format!("index {n} is not 0 or 1 mod 4")));
            }
            if n >= prec {
                return Err(Error::InvalidArgument(format!("index {n} is beyond precision {prec}")));
            }
            if support == Support::Squares && n > 0 && exact_sqrt(n).is_none() {
                return Err(Error::InvalidArgument(format!("index {n} is not a square")));
            }
            map.insert(n, c);
        }
        Ok(Self { coeffs: map, prec, support })
    }

    /// Sequence known only at `n <= 0` and squares: `a(k²) = c(k)` for the
    /// exponents of `exps`, plus the given principal part and constant term.
    pub fn from_square_exponents(
        principal: impl IntoIterator<Item = (i64, Rational)>,
        constant: Rational,
        exps: &crate::prodform::ProductForm,
    ) -> Result<Self> {
        let mut all: Vec<(i64, Rational)> = principal.into_iter().collect();
        if all.iter().any(|(n, _)| *n >= 0) {
            return Err(Error::InvalidArgument("principal part indices must be negative".into()));
        }
        all.push((0, constant));
        for (i, c) in exps.exponents().iter().enumerate() {
            let k = i as i64 + 1;
            all.push((k * k, c.clone()));
        }
        let top = exps.prec() - 1;
        Self::new(all, top * top + 1, Support::Squares)
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn support(&self) -> Support {
        self.support
    }

    /// Nonzero stored coefficients.
    pub fn coeffs(&self) -> &BTreeMap<i64, Rational> {
        &self.coeffs
    }

    pub fn is_known(&self, n: i64) -> bool {
        n < self.prec && (n <= 0 || self.support == Support::Full || exact_sqrt(n).is_some())
    }

    pub fn get(&self, n: i64) -> Result<Rational> {
        if !self.is_known(n) {
            return Err(short_prec(format!("a({n}) is not available")));
        }
        Ok(self.coeffs.get(&n).cloned().unwrap_or_else(Rational::zero))
    }

    /// Principal part `{n < 0: a(n)}`.
    pub fn principal_part(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.range(..0).map(|(&n, c)| (n, c))
    }

    pub fn constant_term(&self) -> Rational {
        self.coeffs.get(&0).cloned().unwrap_or_else(Rational::zero)
    }

    fn lowest_index(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(0).min(0)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|(&n, c)| (n, c * s)).filter(|(_, c)| !c.is_zero()).collect();
        Self { coeffs, prec: self.prec, support: self.support }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        let support = if self.support == Support::Full && other.support == Support::Full {
            Support::Full
        } else {
            Support::Squares
        };
        let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
        for (&n, c) in self.coeffs.iter().chain(&other.coeffs) {
            if n < prec {
                *coeffs.entry(n).or_insert_with(Rational::zero) += c;
            }
        }
        coeffs.retain(|&n, c| !c.is_zero() && (n <= 0 || support == Support::Full || exact_sqrt(n).is_some()));
        Self { coeffs, prec, support }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Output indices for an operator that needs `a(p² n)`.
    fn output_indices(&self, p2: i64, prec_out: i64) -> Vec<i64> {
        let lo = self.lowest_index() * p2;
        match self.support {
            Support::Full => (lo..prec_out).filter(|&n| plus_index(n)).collect(),
            Support::Squares => {
                let mut idx: Vec<i64> = (lo..=0).filter(|&n| plus_index(n)).collect();
                idx.extend((1..).map(|k: i64| k * k).take_while(|&s| s < prec_out));
                idx
            }
        }
    }
}

/// One application of `T_{1/2}(p²)`:
/// `b(n) = a(p² n) + p^{-1} (n|p) a(n) + p^{-1} a(n/p²)`.
fn hecke_half_p2(f: &PlusSpaceSeq, p: u64, legendre: &[i8]) -> Result<PlusSpaceSeq> {
    let pi = p as i64;
    let p2 = pi * pi;
    let prec_out = (f.prec - 1).div_euclid(p2) + 1;
    if prec_out < 1 {
        return Err(short_prec(format!("T_1/2({p}²) needs a(n) for n < {p2}")));
    }
    let inv_p = Rational::new(BigInt::one(), BigInt::from(p));
    let mut out = Vec::new();
    for n in f.output_indices(p2, prec_out) {
        let mut b = f.get(p2 * n)?;
        let leg = legendre[n.rem_euclid(pi) as usize];
        if leg != 0 {
            let a = f.get(n)?;
            if leg > 0 {
                b += &a * &inv_p;
            } else {
                b -= &a * &inv_p;
            }
        }
        if n % p2 == 0 {
            b += f.get(n / p2)? * &inv_p;
        }
        out.push((n, b));
    }
    PlusSpaceSeq::new(out, prec_out, f.support)
}

/// `f|T_{1/2}(p^{2r})` via `T(p^{2r}) = T(p^{2r-2}) T(p²) - p^{-1} T(p^{2r-4})`.
pub fn hecke_half(f: &PlusSpaceSeq, p: u64, r: u32) -> Result<PlusSpaceSeq> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if r == 0 {
        return Ok(f.clone());
    }
    let legendre = arith::legendre_table(p);
    let inv_p = Rational::new(BigInt::one(), BigInt::from(p));
    let mut prev = f.clone();
    let mut cur = hecke_half_p2(f, p, &legendre)?;
    for _ in 1..r {
        let next = hecke_half_p2(&cur, p, &legendre)?.sub(&prev.scale(&inv_p));
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `∏ T_{1/2}(p_i^{2 r_i})` over the factorization of odd `n`, ascending primes.
/// The caller applies the scaling by `n`.
pub fn hecke_half_composite(f: &PlusSpaceSeq, n: u64) -> Result<PlusSpaceSeq> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("T_1/2(n²) needs odd n, got {n}")));
    }
    let mut cur = f.clone();
    for (p, r) in arith::factorize(n) {
        cur = hecke_half(&cur, p, r)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::delta;
    use crate::rational::{frac, int};

    #[test]
    fn delta_is_a_t2_eigenform() {
        let d = delta(40);
        let t2 = hecke_add(&d, 12, 1, 2).unwrap();
        assert_eq!(t2.prec(), 20);
        assert_eq!(t2.coeff(1), Some(int(-24)));
        assert_eq!(t2, d.scale(&int(-24)).truncate(20).unwrap());
        assert_eq!(hecke_add(&d, 12, 1, 1).unwrap(), d);
    }

    #[test]
    fn constant_term_uses_gcd_zero_n_equals_n() {
        let one = QSeries::one(20);
        let t = hecke_add(&one, 2, 1, 6).unwrap();
        assert_eq!(t.coeff(0), Some(int(12)));
        let t = hecke_add(&one, 2, 2, 6).unwrap();
        assert_eq!(t.coeff(0), Some(int(4)));
    }

    #[test]
    fn negative_exponents_are_handled() {
        // q^-1 under T_0(2): coefficient of q^-2 is a(-1) with d = 1... only
        // m n / d² = -1 with m = -2, d = 2 gives 2^-1 a(-1).
        let f = QSeries::from_ints(-1, &[1], 10).unwrap();
        let t = hecke_add(&f, 0, 1, 2).unwrap();
        assert_eq!(t.coeff(-2), Some(frac(1, 2)));
        assert_eq!(t.coeff(-1), Some(int(0)));
    }

    #[test]
    fn half_integral_base_cases() {
        let f = PlusSpaceSeq::new([(0, int(3)), (1, int(2)), (4, int(5)), (9, int(7))], 100, Support::Full).unwrap();
        let t = hecke_half(&f, 3, 1).unwrap();
        assert_eq!(t.get(0).unwrap(), int(4));
        // b(1) = a(9) + (1/3)(1|3) a(1)
        assert_eq!(t.get(1).unwrap(), int(7) + frac(2, 3));
        assert_eq!(hecke_half(&f, 3, 0).unwrap(), f);
        assert_eq!(hecke_half(&f, 2, 1), Err(Error::NotOddPrime(2)));
        assert_eq!(hecke_half_composite(&f, 3).unwrap(), t);
        assert_eq!(hecke_half_composite(&f, 1).unwrap(), f);
    }

    #[test]
    fn plus_space_rejects_bad_indices() {
        assert!(PlusSpaceSeq::new([(2, int(1))], 10, Support::Full).is_err());
        assert!(PlusSpaceSeq::new([(5, int(1))], 10, Support::Squares).is_err());
        let sq = PlusSpaceSeq::new([(4, int(1))], 10, Support::Squares).unwrap();
        assert!(sq.get(5).is_err());
        assert_eq!(sq.get(9).unwrap(), int(0));
        assert!(sq.get(10).is_err());
    }
}
