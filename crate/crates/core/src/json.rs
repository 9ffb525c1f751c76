//! JSON wire formats. Rationals always travel as strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heckeadd::{PlusSpaceSeq, Support};
use crate::heckemult::MultHeckeResult;
use crate::meta::FormMeta;
use crate::prodform::ProductForm;
use crate::qseries::QSeries;
use crate::rational::{format_rational, parse_rational, Rational};

/// `{"valuation", "prec", "coeffs"}` with coefficients of `q^valuation, ..., q^(prec-1)`.
/// The zero series has `valuation = prec` and no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub valuation: i64,
    pub prec: i64,
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductJson {
    pub order: i64,
    pub prec: i64,
    pub exponents: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetaJson {
    pub weight: String,
    pub level: u64,
    pub order: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeJson {
    pub form: ProductJson,
    pub meta: MetaJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SupportJson {
    Full,
    Squares,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlusSpaceJson {
    pub prec: i64,
    pub support: SupportJson,
    pub coeffs: BTreeMap<String, String>,
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn rationals(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

fn parse<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

fn render<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes")
}

impl From<&QSeries> for SeriesJson {
    fn from(f: &QSeries) -> Self {
        Self { valuation: f.valuation().unwrap_or(f.prec()), prec: f.prec(), coeffs: strings(f.coeffs()) }
    }
}

impl TryFrom<&SeriesJson> for QSeries {
    type Error = Error;

    fn try_from(j: &SeriesJson) -> Result<Self> {
        QSeries::new(j.valuation, rationals(&j.coeffs)?, j.prec)
    }
}

impl From<&ProductForm> for ProductJson {
    fn from(p: &ProductForm) -> Self {
        Self { order: p.order(), prec: p.prec(), exponents: strings(p.exponents()) }
    }
}

impl TryFrom<&ProductJson> for ProductForm {
    type Error = Error;

    fn try_from(j: &ProductJson) -> Result<Self> {
        if j.exponents.len() as i64 + 1 != j.prec {
            return Err(Error::Parse(format!(
                "prec {} needs {} exponents, got {}",
                j.prec,
                j.prec - 1,
                j.exponents.len()
            )));
        }
        ProductForm::new(j.order, rationals(&j.exponents)?)
    }
}

impl From<&FormMeta> for MetaJson {
    fn from(m: &FormMeta) -> Self {
        Self { weight: format_rational(&m.weight), level: m.level, order: m.order }
    }
}

impl TryFrom<&MetaJson> for FormMeta {
    type Error = Error;

    fn try_from(j: &MetaJson) -> Result<Self> {
        FormMeta::new(parse_rational(&j.weight)?, j.level, j.order)
    }
}

impl From<&MultHeckeResult> for HeckeJson {
    fn from(r: &MultHeckeResult) -> Self {
        Self { form: (&r.form).into(), meta: (&r.meta).into() }
    }
}

impl From<&PlusSpaceSeq> for PlusSpaceJson {
    fn from(f: &PlusSpaceSeq) -> Self {
        let support = match f.support() {
            Support::Full => SupportJson::Full,
            Support::Squares => SupportJson::Squares,
        };
        let coeffs = f.coeffs().iter().map(|(n, c)| (n.to_string(), format_rational(c))).collect();
        Self { prec: f.prec(), support, coeffs }
    }
}

impl TryFrom<&PlusSpaceJson> for PlusSpaceSeq {
    type Error = Error;

    fn try_from(j: &PlusSpaceJson) -> Result<Self> {
        let support = match j.support {
            SupportJson::Full => Support::Full,
            SupportJson::Squares => Support::Squares,
        };
        let mut coeffs = Vec::new();
        for (n, c) in &j.coeffs {
            let n: i64 = n.trim().parse().map_err(|_| Error::Parse(format!("bad index {n:?}")))?;
            coeffs.push((n, parse_rational(c)?));
        }
        PlusSpaceSeq::new(coeffs, j.prec, support)
    }
}

pub fn series_to_json(f: &QSeries) -> String {
    render(&SeriesJson::from(f))
}

pub fn series_from_json(s: &str) -> Result<QSeries> {
    QSeries::try_from(&parse::<SeriesJson>(s)?)
}

pub fn product_to_json(p: &ProductForm) -> String {
    render(&ProductJson::from(p))
}

pub fn product_from_json(s: &str) -> Result<ProductForm> {
    ProductForm::try_from(&parse::<ProductJson>(s)?)
}

pub fn hecke_to_json(r: &MultHeckeResult) -> String {
    render(&HeckeJson::from(r))
}

pub fn hecke_from_json(s: &str) -> Result<MultHeckeResult> {
    let j: HeckeJson = parse(s)?;
    let form = ProductForm::try_from(&j.form)?;
    let meta = FormMeta::try_from(&j.meta)?;
    form.check_meta(&meta)?;
    Ok(MultHeckeResult { form, meta })
}

pub fn plus_space_to_json(f: &PlusSpaceSeq) -> String {
    render(&PlusSpaceJson::from(f))
}

/// Accepts the full object or a bare sparse map `{"n": "a(n)"}`; the latter
/// needs a precision from the caller and is read with full support.
pub fn plus_space_from_json(s: &str, prec: Option<i64>) -> Result<PlusSpaceSeq> {
    if let Ok(j) = serde_json::from_str::<PlusSpaceJson>(s) {
        return PlusSpaceSeq::try_from(&j);
    }
    let coeffs: BTreeMap<String, String> = parse(s)?;
    let prec = prec.ok_or_else(|| Error::Parse("a bare coefficient map needs an explicit precision".into()))?;
    PlusSpaceSeq::try_from(&PlusSpaceJson { prec, support: SupportJson::Full, coeffs })
}

/// A `--input` document: a series, a product (optionally with meta) or plus-space data.
#[derive(Clone, Debug)]
pub enum Document {
    Series(QSeries),
    Product(ProductForm, Option<FormMeta>),
    PlusSpace(PlusSpaceSeq),
}

pub fn parse_document(s: &str) -> Result<Document> {
    let v: serde_json::Value = parse(s)?;
    let obj = v.as_object().ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    if obj.contains_key("valuation") {
        series_from_json(s).map(Document::Series)
    } else if obj.contains_key("exponents") {
        product_from_json(s).map(|p| Document::Product(p, None))
    } else if obj.contains_key("form") && obj.contains_key("meta") {
        hecke_from_json(s).map(|r| Document::Product(r.form, Some(r.meta)))
    } else if obj.contains_key("support") {
        plus_space_from_json(s, None).map(Document::PlusSpace)
    } else {
        Err(Error::Parse("unrecognized document; expected a series, product, or plus-space object".into()))
    }
}
