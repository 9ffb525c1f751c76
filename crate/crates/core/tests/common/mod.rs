#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use qhecke::prodform::fourier_to_product;
use qhecke::rational::{frac, int};
use qhecke::{ProductForm, QSeries, Rational};
use rand::Rng;

/// `f|𝒯(p^r)` computed on the Fourier side from the coset product
/// `∏_{ad=p^r, b mod d} f((aτ+b)/d)`: with `log(f q^-h) = Σ L(m) q^m`,
/// the image has `log = Σ_i p^i Σ_m L(p^i m) q^(p^(r-i) m)` (only `i = r`
/// when `p | N`).
pub fn slash_oracle(f: &QSeries, level: u64, p: u64, r: u32, prec_out: i64) -> ProductForm {
    let h = f.valuation().unwrap();
    let log = f.shift(-h).log_series().unwrap();
    let pr = p.pow(r) as i64;
    let mut g = vec![Rational::zero(); prec_out as usize];
    let range: Vec<u32> = if level.is_multiple_of(p) { vec![r] } else { (0..=r).collect() };
    for i in range {
        let d = p.pow(i) as i64;
        let a = pr / d;
        let mut m = 1;
        while a * m < prec_out {
            let l = log.coeff(d * m).expect("input precision for the oracle");
            g[(a * m) as usize] += l * int(d);
            m += 1;
        }
    }
    let order = if level.is_multiple_of(p) { h } else { h * (1..=r).fold(1, |s, i| s + p.pow(i) as i64) };
    let series = QSeries::new(0, g, prec_out).unwrap().exp_series().unwrap();
    fourier_to_product(&series.shift(order)).unwrap()
}

/// Input Fourier precision the oracle needs for exponent precision `prec_out`.
pub fn slash_oracle_input_prec(h: i64, p: u64, r: u32, prec_out: i64) -> i64 {
    h + p.pow(r) as i64 * prec_out + 1
}

fn reduce(mut a: i64, mut b: i64, mut c: i64) -> (i64, i64, i64) {
    loop {
        if b.abs() > a {
            // b -> b - 2ka lands in (-a, a]
            let k = (b + a - 1).div_euclid(2 * a);
            let nb = b - 2 * k * a;
            c = (nb * nb - (b * b - 4 * a * c)) / (4 * a);
            b = nb;
        } else if c < a {
            (a, b, c) = (c, -b, a);
        } else {
            break;
        }
    }
    if b < 0 && (-b == a || a == c) {
        b = -b;
    }
    (a, b, c)
}

/// Hurwitz class number of discriminant `-n`: reduce every form with
/// `0 < a, c <= n` and weight the distinct classes.
pub fn hurwitz_oracle(n: u64) -> Rational {
    if n == 0 {
        return frac(-1, 12);
    }
    let n = n as i64;
    let mut classes = BTreeSet::new();
    for a in 1..=n {
        for c in 1..=n {
            let b2 = 4 * a * c - n;
            if b2 < 0 {
                continue;
            }
            let b = (b2 as f64).sqrt().round() as i64;
            for b in [b - 1, b, b + 1] {
                if b >= 0 && b * b == b2 {
                    classes.insert(reduce(a, b, c));
                    classes.insert(reduce(a, -b, c));
                }
            }
        }
    }
    classes
        .into_iter()
        .map(|(a, b, c)| {
            if a == b && b == c {
                frac(1, 3)
            } else if b == 0 && a == c {
                frac(1, 2)
            } else {
                int(1)
            }
        })
        .sum()
}

pub fn sigma_brute(n: u64) -> u64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).sum()
}

/// Random small rational with denominator up to `den`.
pub fn small_rational(rng: &mut impl Rng, bound: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(rng.gen_range(-bound..=bound)), BigInt::from(rng.gen_range(1..=den)))
}

/// Random product form with small integer exponents.
pub fn random_integral_product(rng: &mut impl Rng, prec: i64) -> ProductForm {
    let order = rng.gen_range(-3..=3);
    ProductForm::from_fn(order, prec, |_| int(rng.gen_range(-30..=30))).unwrap()
}

/// Random product form with rational exponents.
pub fn random_product(rng: &mut impl Rng, prec: i64) -> ProductForm {
    let order = rng.gen_range(-3..=3);
    ProductForm::from_fn(order, prec, |_| small_rational(rng, 20, 6)).unwrap()
}
