//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qhecke::borcherds::{e4_plus_space, equivariance_check, hurwitz, j_plus_space};
use qhecke::classical::{delta, delta_meta, eisenstein, j_invariant, j_meta, EtaQuotient};
use qhecke::heckemult::{compare, congruence_check, mult_hecke_to, verify_algebra_relation, MultHeckeResult};
use qhecke::prodform::{fourier_to_product, product_to_fourier};
use qhecke::rational::{frac, int};
use qhecke::structure::{e2_eigen_check, is_mult_eigenform, log_derivative, logderiv_equivariance, sigma_identity_check};
use qhecke::{FormMeta, ProductForm, QSeries};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (u32, &'static str, Box<dyn Fn() -> Outcome + 'a>);

/// `j(3ρ) = -2^15 · 3 · 5^3`.
const J_3RHO: i64 = -12_288_000;

struct Shared {
    /// E₄ exponents to the largest precision any criterion needs.
    e4: ProductForm,
    e4_meta: FormMeta,
    j: ProductForm,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e4_delta_j_shift(prec: i64) -> ProductForm {
    // E₄ · Δ · (j - j(3ρ)) on the Fourier side
    let series = eisenstein(4, prec + 1)
        .unwrap()
        .mul(&delta(prec + 2))
        .mul(&j_invariant(prec + 1).add(&QSeries::monomial(int(-J_3RHO), 0, prec + 1)));
    fourier_to_product(&series.truncate(prec).unwrap()).unwrap()
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let p = fourier_to_product(&eisenstein(4, 50).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let want = [-240, 26760, -4096240, 708938760];
    for (i, w) in want.iter().enumerate() {
        let n = i as i64 + 1;
        ensure(p.exponent(n) == Some(&int(*w)), || format!("c({n}) = {:?}, expected {w}", p.exponent(n)))?;
    }
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}, limit 1s"))?;
    Ok("c(1..4) exact at prec 50".to_string())
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let prec = 40;
    let e4 = fourier_to_product(&eisenstein(4, 3 * (prec - 1) + 1).unwrap()).unwrap();
    let image = mult_hecke_to(&e4, &FormMeta::integral(4, 1, 0).unwrap(), 3, prec).map_err(|e| e.to_string())?;
    let rhs = e4_delta_j_shift(prec);
    let elapsed = t.elapsed();
    ensure(rhs.prec() == prec, || format!("reference has prec {}", rhs.prec()))?;
    if let Some(n) = image.form.first_difference(&rhs) {
        return Err(format!("exponent c({n}) differs"));
    }
    ensure(image.form.order() == 0 && rhs.order() == 0, || format!("order {}", image.form.order()))?;
    ensure(image.meta.weight == int(16), || format!("weight {}", image.meta.weight))?;
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}, limit 5s"))?;
    Ok(format!("E4|T(3) = E4·Δ·(j+12288000), weight 16, order 0, prec {prec}"))
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let prec = 40;
    let j = fourier_to_product(&j_invariant(3 * (prec - 1))).unwrap();
    let image = mult_hecke_to(&j, &j_meta(), 3, prec).map_err(|e| e.to_string())?;
    // j (j - j(3ρ))^3 has order -4; its exponents below `prec` need O(q^(prec - 4)).
    let j = j_invariant(prec + 4);
    let shifted = j.add(&QSeries::monomial(int(-J_3RHO), 0, j.prec()));
    let series = j.mul(&shifted.pow_int(3).unwrap()).truncate(prec - 4).unwrap();
    let rhs = fourier_to_product(&series).unwrap();
    let elapsed = t.elapsed();
    ensure(rhs.prec() == prec, || format!("reference has prec {}", rhs.prec()))?;
    if let Some(n) = image.form.first_difference(&rhs) {
        return Err(format!("exponent c({n}) differs"));
    }
    ensure(image.form.order() == -4 && rhs.order() == -4, || format!("order {}", image.form.order()))?;
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}, limit 5s"))?;
    Ok(format!("j|T(3) = j(j+12288000)^3 to prec {prec}"))
}

fn criterion_4(s: &Shared) -> Outcome {
    let prec = 20;
    let d = ProductForm::constant(1, 24, 64 * (prec - 1) + 1).unwrap();
    let mut count = 0;
    for (name, f, meta) in [("Δ", &d, &delta_meta()), ("E4", &s.e4, &s.e4_meta)] {
        for m in 1..=8 {
            for n in 1..=8 {
                let rep = verify_algebra_relation(f, meta, m, n, prec).map_err(|e| e.to_string())?;
                if let Some((which, w)) = rep.witness {
                    return Err(format!("{name}, (m, n) = ({m}, {n}): {which} fails at {w}"));
                }
                count += 1;
            }
        }
    }
    let eta = EtaQuotient::new(4, [(4, 8), (2, -4)]).unwrap();
    let f = eta.product_form(81 * (prec - 1) + 1).unwrap();
    let meta = eta.meta().unwrap();
    let set = [2, 3, 4, 6, 9];
    for m in set {
        for n in set {
            let rep = verify_algebra_relation(&f, &meta, m, n, prec).map_err(|e| e.to_string())?;
            if let Some((which, w)) = rep.witness {
                return Err(format!("η(4τ)^8/η(2τ)^4, (m, n) = ({m}, {n}): {which} fails at {w}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} relations exponent-exact at prec {prec}"))
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let failure = sigma_identity_check(200);
    let elapsed = t.elapsed();
    if let Some((m, n)) = failure {
        return Err(format!("fails at (m, n) = ({m}, {n})"));
    }
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}, limit 1s"))?;
    Ok("all m, n <= 200".to_string())
}

fn power_check(name: &str, f: &ProductForm, meta: &FormMeta, p: u64, prec: i64) -> Result<(), String> {
    let image = mult_hecke_to(f, meta, p, prec).map_err(|e| e.to_string())?;
    let s = common::sigma_brute(p) as i64;
    let power = MultHeckeResult { form: f.prod_pow(s), meta: meta.pow(s) };
    match compare(&image, &power, prec) {
        None => Ok(()),
        Some(w) => Err(format!("{name}|T({p}) != {name}^{s}: {w}")),
    }
}

fn criterion_6(s: &Shared) -> Outcome {
    let prec = 60;
    let d = ProductForm::constant(1, 24, 5 * prec).unwrap();
    for p in [2, 3, 5] {
        power_check("Δ", &d, &delta_meta(), p, prec)?;
    }
    let eta4 = EtaQuotient::new(4, [(4, 8), (2, -4)]).unwrap();
    let f4 = eta4.product_form(7 * prec).unwrap();
    for p in [3, 5, 7] {
        power_check("η(4τ)^8/η(2τ)^4", &f4, &eta4.meta().unwrap(), p, prec)?;
    }
    let eta5 = EtaQuotient::new(5, [(5, 5), (1, -1)]).unwrap();
    let f5 = eta5.product_form(3 * prec).unwrap();
    power_check("η(5τ)^5/η(τ)", &f5, &eta5.meta().unwrap(), 3, prec)?;

    for (name, f, level, primes) in [("Δ", &d, 1, [2, 3, 5]), ("η(4τ)^8/η(2τ)^4", &f4, 4, [3, 5, 7])] {
        let rep = is_mult_eigenform(f, level, &primes, prec).map_err(|e| e.to_string())?;
        ensure(rep.is_eigenform, || format!("{name} not detected: {:?}", rep.first_violation))?;
    }
    let rep = is_mult_eigenform(&s.e4, 1, &[2], prec).map_err(|e| e.to_string())?;
    ensure(!rep.is_eigenform && rep.first_violation == Some((2, 1)), || {
        format!("E4 witness {:?}, expected (2, 1)", rep.first_violation)
    })?;
    Ok(format!("eigenforms confirmed and E4 rejected at (2, 1), prec {prec}"))
}

fn criterion_7(s: &Shared) -> Outcome {
    let prec = 40;
    let d = ProductForm::constant(1, 24, 5 * prec).unwrap();
    let cases: [(&str, &ProductForm, FormMeta, u64, u32); 4] = [
        ("E4", &s.e4, s.e4_meta.clone(), 3, 1),
        ("E4", &s.e4, s.e4_meta.clone(), 3, 2),
        ("Δ", &d, delta_meta(), 5, 1),
        ("j", &s.j, j_meta(), 2, 2),
    ];
    for (name, f, meta, p, r) in cases {
        let rep = congruence_check(f, &meta, p, r, prec).map_err(|e| e.to_string())?;
        ensure(rep.holds, || format!("({name}, {p}, {r}) fails at n = {:?}", rep.first_failure))?;
    }
    Ok(format!("4 congruences hold for n < {prec}"))
}

fn criterion_8(s: &Shared) -> Outcome {
    let prec = 40;
    let d = ProductForm::constant(1, 24, 9 * prec).unwrap();
    let eta4 = EtaQuotient::new(4, [(4, 8), (2, -4)]).unwrap();
    let eta5 = EtaQuotient::new(5, [(5, 5), (1, -1)]).unwrap();
    let f4 = eta4.product_form(9 * prec).unwrap();
    let f5 = eta5.product_form(9 * prec).unwrap();
    let cases: [(&str, &ProductForm, FormMeta); 4] = [
        ("Δ", &d, delta_meta()),
        ("E4", &s.e4, s.e4_meta.clone()),
        ("η(4τ)^8/η(2τ)^4", &f4, eta4.meta().unwrap()),
        ("η(5τ)^5/η(τ)", &f5, eta5.meta().unwrap()),
    ];
    let mut count = 0;
    for (name, f, meta) in &cases {
        for n in [2u64, 3, 4, 6, 9] {
            if qhecke::arith::gcd(n as i64, meta.level as i64) != 1 {
                continue;
            }
            let rep = logderiv_equivariance(f, meta, n, prec).map_err(|e| e.to_string())?;
            ensure(rep.holds, || format!("{name}, n = {n}: first difference at q^{:?}", rep.first_difference))?;
            count += 1;
        }
    }
    ensure(log_derivative(&d, &delta_meta(), prec).map_err(|e| e.to_string())?.is_zero(), || "𝔇(Δ) != 0".into())?;
    for n in 1..=10 {
        ensure(e2_eigen_check(n, prec).map_err(|e| e.to_string())?, || format!("T2({n}) E2 != σ({n}) E2"))?;
    }
    Ok(format!("{count} equivariance checks, 𝔇(Δ) = 0, E2 eigen for n <= 10, prec {prec}"))
}

fn criterion_9() -> Outcome {
    for n in 0..=500 {
        let (h, o) = (hurwitz(n), common::hurwitz_oracle(n));
        ensure(h == o, || format!("H({n}) = {h}, oracle {o}"))?;
    }
    ensure(hurwitz(0) == frac(-1, 12) && hurwitz(3) == frac(1, 3) && hurwitz(4) == frac(1, 2), || {
        "H(0), H(3), H(4) mismatch".into()
    })?;
    let prec = 30;
    let need = 3 * (prec - 1) + 1;
    for (name, data) in [("E4", e4_plus_space(need)), ("j", j_plus_space(need))] {
        let data = data.map_err(|e| e.to_string())?;
        let rep = equivariance_check(&data, 3, prec).map_err(|e| e.to_string())?;
        if let Some(w) = rep.witness {
            return Err(format!("{name}: {w}"));
        }
        if name == "E4" {
            let reference = e4_delta_j_shift(prec);
            ensure(rep.lift_side.form == reference, || "B(f27 + 16 f0) != E4·Δ·(j+12288000)".into())?;
            ensure(rep.lift_side.meta.weight == int(16), || format!("weight {}", rep.lift_side.meta.weight))?;
        }
    }
    Ok(format!("H(n) = oracle for n <= 500; E4 and j equivariant at n = 3, prec {prec}"))
}

fn criterion_10(start: Instant) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let prec = 16;
    for i in 0..50 {
        let f = common::random_product(&mut rng, prec);
        let g = common::random_product(&mut rng, prec);
        let ff = product_to_fourier(&f, f.order() + prec).map_err(|e| e.to_string())?;
        let gf = product_to_fourier(&g, g.order() + prec).map_err(|e| e.to_string())?;
        let back = fourier_to_product(&ff).map_err(|e| e.to_string())?;
        ensure(back == f, || format!("form {i}: fourier_to_product ∘ product_to_fourier != id"))?;
        let recursive = qhecke::prodform::fourier_to_product_recursive(&ff).map_err(|e| e.to_string())?;
        ensure(recursive == f, || format!("form {i}: recursive conversion differs"))?;
        let fg = product_to_fourier(&f.prod_mul(&g), f.order() + g.order() + prec).map_err(|e| e.to_string())?;
        ensure(fg == ff.mul(&gf), || format!("form {i}: product_to_fourier is not multiplicative"))?;
        let again = product_to_fourier(&back, back.order() + prec).map_err(|e| e.to_string())?;
        ensure(again == ff, || format!("form {i}: product_to_fourier ∘ fourier_to_product != id"))?;
    }
    let total = start.elapsed();
    ensure(total < Duration::from_secs(60), || format!("suite took {total:?}, limit 60s"))?;
    Ok(format!("50 random forms round-trip and multiply; suite total {total:.2?}"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let e4 = fourier_to_product(&eisenstein(4, 64 * 19 + 1).unwrap()).unwrap();
    let shared = Shared {
        e4,
        e4_meta: FormMeta::integral(4, 1, 0).unwrap(),
        j: fourier_to_product(&j_invariant(9 * 40)).unwrap(),
    };
    let criteria: Vec<Criterion> = vec![
        (1, "E4 product exponents", Box::new(criterion_1)),
        (2, "E4|T(3) closed form", Box::new(criterion_2)),
        (3, "j|T(3) closed form", Box::new(criterion_3)),
        (4, "Hecke algebra relation", Box::new(|| criterion_4(&shared))),
        (5, "sigma identity", Box::new(criterion_5)),
        (6, "eigenform suite", Box::new(|| criterion_6(&shared))),
        (7, "congruence suite", Box::new(|| criterion_7(&shared))),
        (8, "log-derivative equivariance", Box::new(|| criterion_8(&shared))),
        (9, "Borcherds suite", Box::new(criterion_9)),
        (10, "round trips and total runtime", Box::new(|| criterion_10(start))),
    ];
    let mut failed = 0;
    for (n, name, run) in criteria {
        let t = Instant::now();
        let outcome = run();
        let elapsed = t.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {n:>2} {name}: {detail} [{elapsed:.2?}]"),
            Err(why) => {
                failed += 1;
                println!("FAIL {n:>2} {name}: {why} [{elapsed:.2?}]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
