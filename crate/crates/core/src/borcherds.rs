//! Hurwitz class numbers, the level-1 Borcherds exponent map and its Hecke
//! equivariance.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::classical::{eisenstein, j_invariant};
use crate::error::{short_prec, Error, Result};
use crate::heckeadd::{hecke_half_composite, PlusSpaceSeq};
use crate::heckemult::{compare, mult_hecke_to, Discrepancy, MultHeckeResult};
use crate::meta::FormMeta;
use crate::prodform::{fourier_to_product, ProductForm};
use crate::rational::{frac, int, is_integer, Rational};

/// `H(n)` for discriminant `-n`, counting reduced forms directly.
fn hurwitz_direct(n: u64) -> Rational {
    if n == 0 {
        return frac(-1, 12);
    }
    if !matches!(n % 4, 0 | 3) {
        return Rational::zero();
    }
    let n = n as i64;
    // 6 H(n) is an integer: weights 1, 1/2, 1/3 become 6, 3, 2.
    let mut six_h: i64 = 0;
    let mut a: i64 = 1;
    while 3 * a * a <= n {
        for b in -a..=a {
            let disc = b * b + n;
            if disc % (4 * a) != 0 {
                continue;
            }
            let c = disc / (4 * a);
            if c < a || (b < 0 && (-b == a || a == c)) {
                continue;
            }
            six_h += if a == b && b == c {
                2
            } else if b == 0 && a == c {
                3
            } else {
                6
            };
        }
        a += 1;
    }
    frac(six_h, 6)
}

/// Values `H(0), ..., H(bound)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HurwitzTable {
    values: Vec<Rational>,
}

impl HurwitzTable {
    pub fn build(bound: u64) -> Self {
        let mut t = Self::default();
        t.extend_to(bound);
        t
    }

    pub fn bound(&self) -> Option<u64> {
        (self.values.len() as u64).checked_sub(1)
    }

    pub fn get(&self, n: u64) -> Option<&Rational> {
        self.values.get(n as usize)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    fn extend_to(&mut self, bound: u64) {
        for n in self.values.len() as u64..=bound {
            self.values.push(hurwitz_direct(n));
        }
    }
}

fn cache() -> &'static RwLock<HurwitzTable> {
    static CACHE: OnceLock<RwLock<HurwitzTable>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HurwitzTable::default()))
}

/// Hurwitz class number of discriminant `-n`, with `H(0) = -1/12`.
pub fn hurwitz(n: u64) -> Rational {
    if let Some(v) = cache().read().unwrap().get(n) {
        return v.clone();
    }
    let mut table = cache().write().unwrap();
    let target = n.max(2 * table.bound().unwrap_or(0));
    table.extend_to(target);
    table.get(n).unwrap().clone()
}

/// Constant term of `f ℋ⁺`: `-a(0)/12 + Σ_{d>0} a(-d) H(d)`.
pub fn h_pairing(f: &PlusSpaceSeq) -> Rational {
    let mut h = -f.constant_term() / int(12);
    for (n, a) in f.principal_part() {
        h += a * hurwitz((-n) as u64);
    }
    h
}

/// `B(f) = q^{-h} ∏ (1 - q^n)^{a(n²)}` with exponents below `prec`, weight
/// `a(0)` and level 1.
pub fn borcherds_lift(f: &PlusSpaceSeq, prec: i64) -> Result<(ProductForm, FormMeta)> {
    let h = h_pairing(f);
    if !is_integer(&h) {
        return Err(Error::NonIntegralOrder(h.to_string()));
    }
    let order: i64 = (-h.to_integer())
        .try_into()
        .map_err(|_| Error::InvalidArgument("order does not fit in i64".into()))?;
    let exps = (1..prec).map(|n| f.get(n * n)).collect::<Result<Vec<_>>>()?;
    let form = ProductForm::new(order, exps)?;
    let meta = FormMeta::new(f.constant_term(), 1, order)?;
    Ok((form, meta))
}

/// Plus-space data whose lift is `form`: squares from the exponents, the
/// given principal part, and `a(0)` solved from the h-pairing.
pub fn plus_space_from_product(form: &ProductForm, principal: &[(i64, Rational)]) -> Result<PlusSpaceSeq> {
    let mut paired = Rational::zero();
    for (n, a) in principal {
        if *n >= 0 {
            return Err(Error::InvalidArgument(format!("principal index {n} is not negative")));
        }
        paired += a * hurwitz((-n) as u64);
    }
    let a0 = (paired + int(form.order())) * int(12);
    PlusSpaceSeq::from_square_exponents(principal.iter().cloned(), a0, form)
}

/// Data for `E₄ = B(f₃ + 4f₀)` with exponents below `prec`.
pub fn e4_plus_space(prec: i64) -> Result<PlusSpaceSeq> {
    let e4 = fourier_to_product(&eisenstein(4, prec)?)?;
    plus_space_from_product(&e4, &[(-3, int(1))])
}

/// Data for `j = B(3f₃)` with exponents below `prec`.
pub fn j_plus_space(prec: i64) -> Result<PlusSpaceSeq> {
    let j = fourier_to_product(&j_invariant(prec - 1))?;
    plus_space_from_product(&j, &[(-3, int(3))])
}

#[derive(Clone, Debug)]
pub struct EquivarianceReport {
    pub holds: bool,
    pub witness: Option<Discrepancy>,
    pub prec: i64,
    /// `B(f)|𝒯(n)`.
    pub hecke_side: MultHeckeResult,
    /// `B(n f|T_{1/2}(n²))`.
    pub lift_side: MultHeckeResult,
}

/// Compares `B(f)|𝒯(n)` with `B(n · f|T_{1/2}(n²))` below exponent `prec`.
pub fn equivariance_check(f: &PlusSpaceSeq, n: u64, prec: i64) -> Result<EquivarianceReport> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("n must be a positive odd integer, got {n}")));
    }
    let need = crate::heckemult::required_prec(n, prec);
    let (b, meta) = borcherds_lift(f, need)
        .map_err(|e| short_prec(format!("B(f) to precision {need}: {e}")))?;
    let hecke_side = mult_hecke_to(&b, &meta, n, prec)?;
    let g = hecke_half_composite(f, n)?.scale(&Rational::from_integer(BigInt::from(n)));
    let (form, meta) = borcherds_lift(&g, prec)?;
    let lift_side = MultHeckeResult { form, meta };
    let witness = compare(&hecke_side, &lift_side, prec);
    Ok(EquivarianceReport { holds: witness.is_none(), witness, prec, hecke_side, lift_side })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heckeadd::Support;

    #[test]
    fn small_class_numbers() {
        assert_eq!(hurwitz(0), frac(-1, 12));
        assert_eq!(hurwitz(1), int(0));
        assert_eq!(hurwitz(2), int(0));
        assert_eq!(hurwitz(3), frac(1, 3));
        assert_eq!(hurwitz(4), frac(1, 2));
        assert_eq!(hurwitz(7), int(1));
        assert_eq!(hurwitz(8), int(1));
        assert_eq!(hurwitz(12), frac(4, 3));
        assert_eq!(hurwitz(15), int(2));
        assert_eq!(hurwitz(27), frac(4, 3));
        assert_eq!(hurwitz(75), frac(7, 3));
    }

    #[test]
    fn e4_and_j_pairings() {
        let e4 = e4_plus_space(6).unwrap();
        assert_eq!(e4.constant_term(), int(4));
        let (form, meta) = borcherds_lift(&e4, 6).unwrap();
        assert_eq!(form.order(), 0);
        assert_eq!(meta.weight, int(4));
        assert_eq!(form.exponent(1), Some(&int(-240)));

        let j = j_plus_space(6).unwrap();
        assert_eq!(j.constant_term(), int(0));
        let (form, meta) = borcherds_lift(&j, 6).unwrap();
        assert_eq!(form.order(), -1);
        assert_eq!(meta.weight, int(0));
    }

    #[test]
    fn constant_only_input() {
        let f = PlusSpaceSeq::new([(0, int(12))], 50, Support::Full).unwrap();
        let (form, meta) = borcherds_lift(&f, 5).unwrap();
        assert_eq!(form, ProductForm::constant(1, 0, 5).unwrap());
        assert_eq!(meta.weight, int(12));
        let g = PlusSpaceSeq::new([(0, int(6))], 50, Support::Full).unwrap();
        assert!(matches!(borcherds_lift(&g, 5), Err(Error::NonIntegralOrder(_))));
    }

    #[test]
    fn trivial_equivariance() {
        let f = e4_plus_space(10).unwrap();
        assert!(equivariance_check(&f, 1, 10).unwrap().holds);
        assert!(equivariance_check(&f, 2, 10).is_err());
        assert!(matches!(equivariance_check(&f, 3, 10), Err(Error::InsufficientPrecision(_))));
    }
}
