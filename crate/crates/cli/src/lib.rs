//! `qhecke` command-line interface.
//!
//! Exit codes: 0 on success, 1 when a verification suite finds a
//! discrepancy (witness on stderr), 2 on usage or precision errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qhecke::borcherds::{borcherds_lift, e4_plus_space, hurwitz, j_plus_space};
use qhecke::heckeadd::{hecke_add, hecke_half_composite, PlusSpaceSeq};
use qhecke::heckemult::{mult_hecke_to, required_prec, MultHeckeResult};
use qhecke::json::{self, Document};
use qhecke::prodform::{fourier_to_product, product_to_fourier};
use qhecke::rational::{format_rational, parse_rational};
use qhecke::structure::{eta_recognize, is_mult_eigenform};
use qhecke::{FormMeta, FormSpec, ProductForm, QSeries, Rational};

mod suites;

pub const DEFAULT_PREC: i64 = 40;

#[derive(Parser, Debug)]
#[command(name = "qhecke", version, about = "Multiplicative Hecke operators on infinite products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub(crate) struct Source {
    /// E2, E4, E6, delta, j, or "etaq N d:r,d:r,..."
    #[arg(long)]
    form: Option<String>,
    /// JSON file holding a series, a product, or plus-space data
    #[arg(long, conflicts_with = "form")]
    input: Option<PathBuf>,
    /// Divide a series by its leading coefficient before converting
    #[arg(long)]
    normalize: bool,
}

#[derive(Args, Debug, Clone, Default)]
struct Output {
    /// JSON output (the default)
    #[arg(long)]
    json: bool,
    /// Aligned plain-text output
    #[arg(long, conflicts_with = "json")]
    text: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Case {
    E4,
    J,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fourier expansion of a form
    Expand {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = DEFAULT_PREC)]
        prec: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Infinite-product exponents of a form
    ToProduct {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = DEFAULT_PREC)]
        prec: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Fourier expansion of a product form, through O(q^prec)
    ToFourier {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = DEFAULT_PREC)]
        prec: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Multiplicative Hecke operator 𝒯(n); prec is the output exponent precision
    HeckeMult {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        level: Option<u64>,
        #[arg(long)]
        weight: Option<String>,
        #[arg(long, default_value_t = DEFAULT_PREC)]
        prec: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Additive Hecke operator T_k(n); prec is the output precision
    HeckeAdd {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        weight: Option<i64>,
        #[arg(long)]
        level: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_PREC)]
        prec: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Half-integral weight operator T_{1/2}(n²) on plus-space data, n odd
    HeckeHalf {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: u64,
        /// Precision for a bare coefficient map
        #[arg(long)]
        prec: Option<i64>,
    },
    /// Hurwitz class numbers H(0), ..., H(max)
    Hurwitz {
        #[arg(long)]
        max: u64,
    },
    /// Borcherds lift of plus-space data
    Borcherds {
        #[arg(long, conflicts_with = "case")]
        input: Option<PathBuf>,
        /// Built-in data for E4 or j instead of a file
        #[arg(long, value_enum)]
        case: Option<Case>,
        #[arg(long, default_value_t = DEFAULT_PREC)]
        prec: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Multiplicative eigenform test c(n) = c(pn)
    Eigen {
        #[command(flatten)]
        src: Source,
        /// Defaults to the level of a named form, else 1
        #[arg(long)]
        level: Option<u64>,
        /// Defaults to the primes below 12 not dividing the level
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        #[arg(long, default_value_t = DEFAULT_PREC)]
        prec: i64,
    },
    /// Recognize a product form as an eta quotient of the given level
    Recognize {
        #[command(flatten)]
        src: Source,
        /// Defaults to the level of a named form, else 1
        #[arg(long)]
        level: Option<u64>,
        #[arg(long)]
        weight: Option<String>,
        #[arg(long, default_value_t = DEFAULT_PREC)]
        prec: i64,
    },
    /// Run a verification suite
    Verify(suites::VerifyArgs),
}

pub(crate) enum CliError {
    Usage(String),
    Math(qhecke::Error),
}

impl From<qhecke::Error> for CliError {
    fn from(e: qhecke::Error) -> Self {
        Self::Math(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Usage(m) => write!(f, "{m}"),
            Self::Math(e) => write!(f, "{e}"),
        }
    }
}

pub(crate) type CliResult<T> = Result<T, CliError>;

/// Result of a command that ran to completion.
pub(crate) enum Verdict {
    Ok,
    Failed(String),
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match run(cli.command, out) {
        Ok(Verdict::Ok) => 0,
        Ok(Verdict::Failed(witness)) => {
            let _ = writeln!(err, "verification failed: {witness}");
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> CliResult<Verdict> {
    writeln!(out, "{text}").map_err(|e| CliError::Usage(format!("cannot write output: {e}")))?;
    Ok(Verdict::Ok)
}

fn read_input(path: &PathBuf) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

pub(crate) fn parse_form(s: &str) -> CliResult<FormSpec> {
    s.parse().map_err(|e: qhecke::Error| CliError::Usage(e.to_string()))
}

fn normalize(f: QSeries) -> CliResult<QSeries> {
    let lead = f.leading_coefficient()?.clone();
    Ok(f.scale(&(Rational::from_integer(1.into()) / lead)))
}

impl Source {
    fn document(&self) -> CliResult<Option<Document>> {
        match &self.input {
            Some(path) => Ok(Some(json::parse_document(&read_input(path)?)?)),
            None => Ok(None),
        }
    }

    fn spec(&self) -> CliResult<FormSpec> {
        match &self.form {
            Some(s) => parse_form(s),
            None => Err(CliError::Usage("one of --form or --input is required".into())),
        }
    }

    /// A Fourier expansion known below `q^prec` for named forms, or as stored.
    fn series(&self, prec: i64) -> CliResult<QSeries> {
        let f = match self.document()? {
            Some(Document::Series(f)) => f,
            Some(Document::Product(p, _)) => product_to_fourier(&p, p.order() + p.prec())?,
            Some(Document::PlusSpace(_)) => return Err(CliError::Usage("expected a series or product".into())),
            None => self.spec()?.series(prec)?,
        };
        if self.normalize {
            normalize(f)
        } else {
            Ok(f)
        }
    }

    /// A product form of exponent precision `prec` for named forms, or as
    /// stored, together with its meta data when known.
    fn product(&self, prec: i64) -> CliResult<(ProductForm, Option<FormMeta>)> {
        match self.document()? {
            Some(Document::Product(p, meta)) => Ok((p, meta)),
            Some(Document::Series(f)) => {
                let f = if self.normalize { normalize(f)? } else { f };
                Ok((fourier_to_product(&f)?, None))
            }
            Some(Document::PlusSpace(_)) => Err(CliError::Usage("expected a series or product".into())),
            None => {
                let spec = self.spec()?;
                let meta = match spec {
                    FormSpec::Eisenstein(2) => None,
                    _ => Some(spec.meta()?),
                };
                Ok((spec.product(prec)?, meta))
            }
        }
    }
}

fn series_text(f: &QSeries) -> String {
    let start = f.valuation().unwrap_or(f.prec());
    let rows: Vec<(String, String)> = (start..f.prec())
        .map(|n| (n.to_string(), format_rational(&f.coeff(n).unwrap())))
        .collect();
    let w = rows.iter().map(|(n, _)| n.len()).max().unwrap_or(1).max(1);
    let mut s = String::new();
    for (n, c) in rows {
        s.push_str(&format!("{n:>w$}  {c}\n"));
    }
    s.push_str(&format!("O(q^{})", f.prec()));
    s
}

fn product_text(p: &ProductForm, meta: Option<&FormMeta>) -> String {
    let mut s = format!("order {}\n", p.order());
    if let Some(m) = meta {
        s.push_str(&format!("weight {}\nlevel {}\n", format_rational(&m.weight), m.level));
    }
    let w = (p.prec() - 1).to_string().len();
    for (i, c) in p.exponents().iter().enumerate() {
        s.push_str(&format!("{:>w$}  {}\n", i + 1, format_rational(c)));
    }
    s.push_str(&format!("prec {}", p.prec()));
    s
}

fn resolve_meta(
    p: &ProductForm,
    known: Option<FormMeta>,
    level: Option<u64>,
    weight: Option<&str>,
) -> CliResult<FormMeta> {
    let mut meta = known.unwrap_or(FormMeta { weight: Rational::from_integer(0.into()), level: 1, order: p.order() });
    if let Some(l) = level {
        meta.level = l;
    }
    if let Some(w) = weight {
        meta.weight = parse_rational(w)?;
    }
    meta.order = p.order();
    Ok(FormMeta::new(meta.weight, meta.level, meta.order)?)
}

fn load_plus_space(path: &PathBuf, prec: Option<i64>) -> CliResult<PlusSpaceSeq> {
    Ok(json::plus_space_from_json(&read_input(path)?, prec)?)
}

fn run(command: Command, out: &mut dyn Write) -> CliResult<Verdict> {
    match command {
        Command::Expand { src, prec, out: fmt } => {
            let f = src.series(prec)?;
            let f = if f.prec() > prec { f.truncate(prec)? } else { f };
            emit(out, &if fmt.text { series_text(&f) } else { json::series_to_json(&f) })
        }
        Command::ToProduct { src, prec, out: fmt } => {
            let (p, meta) = src.product(prec)?;
            let p = if p.prec() > prec { p.truncate(prec)? } else { p };
            emit(out, &if fmt.text { product_text(&p, meta.as_ref()) } else { json::product_to_json(&p) })
        }
        Command::ToFourier { src, prec, out: fmt } => {
            let (p, _) = match &src.form {
                Some(s) => {
                    let spec = parse_form(s)?;
                    let h = spec.product(2)?.order();
                    (spec.product((prec - h).max(2))?, None)
                }
                None => src.product(prec)?,
            };
            let f = product_to_fourier(&p, prec)?;
            emit(out, &if fmt.text { series_text(&f) } else { json::series_to_json(&f) })
        }
        Command::HeckeMult { src, n, level, weight, prec, out: fmt } => {
            let (p, meta) = src.product(required_prec(n, prec))?;
            let meta = resolve_meta(&p, meta, level, weight.as_deref())?;
            let res = mult_hecke_to(&p, &meta, n, prec)?;
            emit(out, &hecke_output(&res, fmt.text))
        }
        Command::HeckeAdd { src, n, weight, level, prec, out: fmt } => {
            let (k, l) = match &src.form {
                Some(s) => {
                    let meta = parse_form(s)?.meta()?;
                    let k = qhecke::rational::is_integer(&meta.weight).then(|| meta.weight.to_integer());
                    (k.and_then(|k| i64::try_from(k).ok()), Some(meta.level))
                }
                None => (None, None),
            };
            let k = weight.or(k).ok_or_else(|| CliError::Usage("--weight is required".into()))?;
            let level = level.or(l).unwrap_or(1);
            let f = src.series(required_prec(n, prec))?;
            let t = hecke_add(&f, k, level, n)?;
            let t = if t.prec() > prec { t.truncate(prec)? } else { t };
            emit(out, &if fmt.text { series_text(&t) } else { json::series_to_json(&t) })
        }
        Command::HeckeHalf { input, n, prec } => {
            let f = load_plus_space(&input, prec)?;
            emit(out, &json::plus_space_to_json(&hecke_half_composite(&f, n)?))
        }
        Command::Hurwitz { max } => {
            let values: Vec<String> = (0..=max).map(|n| format_rational(&hurwitz(n))).collect();
            emit(out, &serde_json::to_string(&values).expect("strings serialize"))
        }
        Command::Borcherds { input, case, prec, out: fmt } => {
            let f = match (input, case) {
                (Some(path), _) => load_plus_space(&path, None)?,
                (None, Some(Case::E4)) => e4_plus_space(prec)?,
                (None, Some(Case::J)) => j_plus_space(prec)?,
                (None, None) => return Err(CliError::Usage("one of --input or --case is required".into())),
            };
            let (form, meta) = borcherds_lift(&f, prec)?;
            emit(out, &hecke_output(&MultHeckeResult { form, meta }, fmt.text))
        }
        Command::Eigen { src, level, primes, prec } => {
            let (p, meta) = src.product(prec)?;
            let level = level.or(meta.map(|m| m.level)).unwrap_or(1);
            let primes = primes
                .unwrap_or_else(|| [2, 3, 5, 7, 11].into_iter().filter(|q| level % q != 0).collect());
            let rep = is_mult_eigenform(&p, level, &primes, prec)?;
            let lambda: serde_json::Map<String, serde_json::Value> =
                rep.lambda.iter().map(|(p, l)| (p.to_string(), (*l).into())).collect();
            let v = serde_json::json!({
                "is_eigenform": rep.is_eigenform,
                "tested_primes": rep.tested_primes,
                "lambda": lambda,
                "first_violation": rep.first_violation.map(|(p, n)| serde_json::json!({"p": p, "n": n})),
                "tested_below": rep.tested_below,
            });
            emit(out, &serde_json::to_string_pretty(&v).expect("json value"))
        }
        Command::Recognize { src, level, weight, prec } => {
            let (p, meta) = src.product(prec)?;
            let level = level.or(meta.as_ref().map(|m| m.level)).unwrap_or(1);
            let weight = match weight {
                Some(w) => Some(parse_rational(&w)?),
                None => meta.map(|m| m.weight),
            };
            let v = match eta_recognize(&p, level, weight.as_ref())? {
                Ok(eta) => serde_json::json!({
                    "recognized": true,
                    "form": eta.to_string(),
                    "weight": format_rational(&eta.weight()),
                    "order": eta.order()?,
                }),
                Err(why) => serde_json::json!({"recognized": false, "reason": why.to_string()}),
            };
            emit(out, &serde_json::to_string_pretty(&v).expect("json value"))
        }
        Command::Verify(args) => suites::run(args, out),
    }
}

fn hecke_output(res: &MultHeckeResult, text: bool) -> String {
    if text {
        product_text(&res.form, Some(&res.meta))
    } else {
        json::hecke_to_json(res)
    }
}
