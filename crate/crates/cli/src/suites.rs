//! `qhecke verify <suite>`.

use std::io::Write;

use clap::{Args, ValueEnum};
use qhecke::arith::{factorize, gcd};
use qhecke::borcherds::{e4_plus_space, equivariance_check, j_plus_space};
use qhecke::classical::{delta, eisenstein, j_invariant};
use qhecke::heckemult::{congruence_check, mult_hecke_to, required_prec, verify_algebra_relation};
use qhecke::json;
use qhecke::prodform::{fourier_to_product, product_to_fourier};
use qhecke::rational::{format_rational, int};
use qhecke::structure::{e2_eigen_check, log_derivative, logderiv_equivariance, sigma_identity_check};
use qhecke::{FormMeta, FormSpec, ProductForm, QSeries};

use crate::{parse_form, Case, CliError, CliResult, Source, Verdict, DEFAULT_PREC};

/// `-j(3ρ) = 2^15 · 3 · 5^3`.
const MINUS_J_3RHO: i64 = 12_288_000;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Suite {
    Algebra,
    Sigma,
    #[value(name = "e4-t3")]
    E4T3,
    #[value(name = "j-t3")]
    JT3,
    Logderiv,
    BorcherdsEquivariance,
    Congruence,
    Roundtrip,
}

#[derive(Args, Debug)]
pub(crate) struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[command(flatten)]
    src: Source,
    #[arg(long)]
    level: Option<u64>,
    #[arg(long)]
    weight: Option<String>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    prec: Option<i64>,
    #[arg(long)]
    max: Option<u64>,
    #[arg(long, value_enum)]
    case: Option<Case>,
}

struct Log<'a> {
    out: &'a mut dyn Write,
}

impl Log<'_> {
    fn line(&mut self, s: impl AsRef<str>) -> CliResult<()> {
        writeln!(self.out, "{}", s.as_ref()).map_err(|e| CliError::Usage(format!("cannot write output: {e}")))
    }
}

pub(crate) fn run(args: VerifyArgs, out: &mut dyn Write) -> CliResult<Verdict> {
    let mut log = Log { out };
    let name = args.suite.to_possible_value().expect("named variant").get_name().to_string();
    log.line(format!("suite: {name}"))?;
    match args.suite {
        Suite::Algebra => algebra(&args, &mut log),
        Suite::Sigma => sigma(&args, &mut log),
        Suite::E4T3 => e4_t3(&args, &mut log),
        Suite::JT3 => j_t3(&args, &mut log),
        Suite::Logderiv => logderiv(&args, &mut log),
        Suite::BorcherdsEquivariance => borcherds(&args, &mut log),
        Suite::Congruence => congruence(&args, &mut log),
        Suite::Roundtrip => roundtrip(&args, &mut log),
    }
}

fn named(s: &str) -> FormSpec {
    s.parse().expect("built-in form")
}

/// The form under test with meta data, exponents to precision `prec`.
fn subject(args: &VerifyArgs, default: &str, prec: i64) -> CliResult<(String, ProductForm, FormMeta)> {
    let label = args.src.form.clone().unwrap_or_else(|| {
        args.src.input.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| default.to_string())
    });
    let src = if args.src.form.is_none() && args.src.input.is_none() {
        Source { form: Some(default.to_string()), ..args.src.clone() }
    } else {
        args.src.clone()
    };
    let (p, meta) = src.product(prec)?;
    let meta = crate::resolve_meta(&p, meta, args.level, args.weight.as_deref())?;
    Ok((label, p, meta))
}

fn algebra(args: &VerifyArgs, log: &mut Log) -> CliResult<Verdict> {
    let prec = args.prec.unwrap_or(DEFAULT_PREC);
    let pairs: Vec<(u64, u64)> = match (args.m, args.n) {
        (Some(m), Some(n)) => vec![(m, n)],
        (None, None) => {
            let max = args.max.unwrap_or(8);
            (1..=max).flat_map(|m| (1..=max).map(move |n| (m, n))).collect()
        }
        _ => return Err(CliError::Usage("give both --m and --n, or neither".into())),
    };
    let top = pairs.iter().map(|(m, n)| m * n).max().unwrap_or(1);
    let (label, f, meta) = subject(args, "delta", required_prec(top, prec))?;
    log.line(format!("precision: {prec}"))?;
    for &(m, n) in &pairs {
        let rep = verify_algebra_relation(&f, &meta, m, n, prec)?;
        if let Some((which, w)) = rep.witness {
            return Ok(Verdict::Failed(format!("{label}, (m, n) = ({m}, {n}): {which}: {w}")));
        }
    }
    log.line(format!("{label}: {} relations hold", pairs.len()))?;
    Ok(Verdict::Ok)
}

fn sigma(args: &VerifyArgs, log: &mut Log) -> CliResult<Verdict> {
    let max = args.max.unwrap_or(200);
    log.line(format!("range: 1 <= m, n <= {max}"))?;
    Ok(match sigma_identity_check(max) {
        None => {
            log.line("σ(m)σ(n) = Σ d σ(mn/d²) holds")?;
            Verdict::Ok
        }
        Some((m, n)) => Verdict::Failed(format!("identity fails at (m, n) = ({m}, {n})")),
    })
}

fn shift_by(f: &QSeries, c: i64) -> QSeries {
    f.add(&QSeries::monomial(int(c), 0, f.prec()))
}

fn e4_t3(args: &VerifyArgs, log: &mut Log) -> CliResult<Verdict> {
    let prec = args.prec.unwrap_or(DEFAULT_PREC);
    log.line(format!("precision: {prec}"))?;
    let e4 = fourier_to_product(&eisenstein(4, required_prec(3, prec))?)?;
    let image = mult_hecke_to(&e4, &FormMeta::integral(4, 1, 0)?, 3, prec)?;
    let series = eisenstein(4, prec + 1)?
        .mul(&delta(prec + 2))
        .mul(&shift_by(&j_invariant(prec + 1), MINUS_J_3RHO))
        .truncate(prec)?;
    let rhs = fourier_to_product(&series)?;
    if let Some(n) = image.form.first_difference(&rhs) {
        return Ok(Verdict::Failed(format!(
            "c({n}): {} != {}",
            format_rational(image.form.exponent(n).unwrap()),
            format_rational(rhs.exponent(n).unwrap())
        )));
    }
    if image.meta.weight != int(16) || image.meta.order != 0 || rhs.order() != 0 {
        return Ok(Verdict::Failed(format!("weight {} order {}", image.meta.weight, image.meta.order)));
    }
    log.line("E4|T(3) = E4·Δ·(j + 12288000), weight 16, order 0")?;
    Ok(Verdict::Ok)
}

fn j_t3(args: &VerifyArgs, log: &mut Log) -> CliResult<Verdict> {
    let prec = args.prec.unwrap_or(DEFAULT_PREC);
    log.line(format!("precision: {prec}"))?;
    let j = fourier_to_product(&j_invariant(required_prec(3, prec) - 1))?;
    let image = mult_hecke_to(&j, &FormMeta::integral(0, 1, -1)?, 3, prec)?;
    let js = j_invariant(prec + 4);
    let series = js.mul(&shift_by(&js, MINUS_J_3RHO).pow_int(3)?).truncate(prec - 4)?;
    let rhs = fourier_to_product(&series)?;
    if let Some(n) = image.form.first_difference(&rhs) {
        return Ok(Verdict::Failed(format!(
            "c({n}): {} != {}",
            format_rational(image.form.exponent(n).unwrap()),
            format_rational(rhs.exponent(n).unwrap())
        )));
    }
    if image.meta.order != -4 || rhs.order() != -4 {
        return Ok(Verdict::Failed(format!("order {} != -4", image.meta.order)));
    }
    log.line("j|T(3) = j·(j + 12288000)^3, order -4")?;
    Ok(Verdict::Ok)
}

fn logderiv(args: &VerifyArgs, log: &mut Log) -> CliResult<Verdict> {
    let prec = args.prec.unwrap_or(DEFAULT_PREC);
    let ns: Vec<u64> = match args.n {
        Some(n) => vec![n],
        None => vec![2, 3, 4, 6, 9],
    };
    let top = ns.iter().copied().max().unwrap_or(1);
    let need = required_prec(top, prec);
    log.line(format!("precision: {prec}"))?;
    let subjects: Vec<(String, ProductForm, FormMeta)> = if args.src.form.is_some() || args.src.input.is_some() {
        vec![subject(args, "delta", need)?]
    } else {
        ["delta", "E4", "etaq 4 2:-4,4:8", "etaq 5 1:-1,5:5"]
            .iter()
            .map(|s| {
                let spec = named(s);
                Ok((s.to_string(), spec.product(need)?, spec.meta()?))
            })
            .collect::<CliResult<_>>()?
    };
    for (label, f, meta) in &subjects {
        for &n in &ns {
            if gcd(n as i64, meta.level as i64) != 1 {
                continue;
            }
            let rep = logderiv_equivariance(f, meta, n, prec)?;
            if let Some(i) = rep.first_difference {
                return Ok(Verdict::Failed(format!(
                    "{label}, n = {n}: q^{i}: {} != {}",
                    format_rational(&rep.hecke_side.coeff(i).unwrap()),
                    format_rational(&rep.additive_side.coeff(i).unwrap())
                )));
            }
        }
        log.line(format!("{label}: 𝔇(f|𝒯(n)) = 𝔇(f)|T₂(n)"))?;
    }
    let d = ProductForm::constant(1, 24, prec)?;
    if !log_derivative(&d, &FormMeta::integral(12, 1, 1)?, prec)?.is_zero() {
        return Ok(Verdict::Failed("𝔇(Δ) != 0".into()));
    }
    for n in 1..=10 {
        if !e2_eigen_check(n, prec)? {
            return Ok(Verdict::Failed(format!("E2|T2({n}) != σ({n}) E2")));
        }
    }
    log.line("𝔇(Δ) = 0 and E2|T2(n) = σ(n) E2 for n <= 10")?;
    Ok(Verdict::Ok)
}

fn borcherds(args: &VerifyArgs, log: &mut Log) -> CliResult<Verdict> {
    let prec = args.prec.unwrap_or(DEFAULT_PREC);
    let n = args.n.unwrap_or(3);
    let case = args.case.unwrap_or(Case::E4);
    log.line(format!("precision: {prec}"))?;
    let need = required_prec(n, prec);
    let data = match case {
        Case::E4 => e4_plus_space(need)?,
        Case::J => j_plus_space(need)?,
    };
    let rep = equivariance_check(&data, n, prec)?;
    if let Some(w) = rep.witness {
        return Ok(Verdict::Failed(format!("B(f)|𝒯({n}) vs B({n} f|T_1/2({n}²)): {w}")));
    }
    let name = if case == Case::E4 { "E4" } else { "j" };
    log.line(format!(
        "{name}: B(f)|𝒯({n}) = B({n} f|T_1/2({n}²)), order {}, weight {}",
        rep.lift_side.meta.order,
        format_rational(&rep.lift_side.meta.weight)
    ))?;
    Ok(Verdict::Ok)
}

fn congruence(args: &VerifyArgs, log: &mut Log) -> CliResult<Verdict> {
    let prec = args.prec.unwrap_or(DEFAULT_PREC);
    log.line(format!("precision: {prec}"))?;
    let cases: Vec<(String, u64, u32)> = match (&args.src.form, &args.src.input, args.n) {
        (None, None, None) => vec![("E4".into(), 3, 1), ("E4".into(), 3, 2), ("delta".into(), 5, 1), ("j".into(), 2, 2)],
        (_, _, Some(q)) => match factorize(q).as_slice() {
            [(p, r)] => vec![(String::new(), *p, *r)],
            _ => return Err(CliError::Usage(format!("--n {q} is not a prime power"))),
        },
        _ => return Err(CliError::Usage("--n p^r is required with --form or --input".into())),
    };
    for (name, p, r) in cases {
        let need = required_prec(p.pow(r), prec);
        let (label, f, meta) = if name.is_empty() {
            subject(args, "delta", need)?
        } else {
            let spec = parse_form(&name)?;
            (name.clone(), spec.product(need)?, spec.meta()?)
        };
        let rep = congruence_check(&f, &meta, p, r, prec)?;
        if let Some(n) = rep.first_failure {
            return Ok(Verdict::Failed(format!("{label}, 𝒯({p}^{r}): congruence fails at n = {n}")));
        }
        log.line(format!("{label}, 𝒯({p}^{r}): congruence holds for n < {prec}"))?;
    }
    Ok(Verdict::Ok)
}

fn roundtrip(args: &VerifyArgs, log: &mut Log) -> CliResult<Verdict> {
    let prec = args.prec.unwrap_or(DEFAULT_PREC);
    log.line(format!("precision: {prec}"))?;
    let labels: Vec<String> = match &args.src.form {
        Some(s) => vec![s.clone()],
        None => ["E4", "E6", "delta", "j", "etaq 4 2:-4,4:8", "etaq 5 1:-1,5:5"].iter().map(|s| s.to_string()).collect(),
    };
    for label in labels {
        let spec = parse_form(&label)?;
        let f = spec.series(prec)?;
        let p = fourier_to_product(&f)?;
        let back = product_to_fourier(&p, f.prec())?;
        if back != f {
            return Ok(Verdict::Failed(format!("{label}: series -> product -> series differs at q^{:?}", back.first_difference(&f))));
        }
        if fourier_to_product(&back)? != p {
            return Ok(Verdict::Failed(format!("{label}: product -> series -> product differs")));
        }
        if json::series_from_json(&json::series_to_json(&f))? != f {
            return Ok(Verdict::Failed(format!("{label}: series JSON round trip differs")));
        }
        let text = json::product_to_json(&p);
        let reread = json::product_from_json(&text)?;
        if reread != p || json::product_to_json(&reread) != text {
            return Ok(Verdict::Failed(format!("{label}: product JSON round trip differs")));
        }
        log.line(format!("{label}: round trips exact"))?;
    }
    Ok(Verdict::Ok)
}
