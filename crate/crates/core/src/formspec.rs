//! Named forms: `E2`, `E4`, `E6`, `delta`, `j` and `etaq N d:r,d:r,...`.

use std::fmt;
use std::str::FromStr;

use crate::classical::{delta_meta, eisenstein, j_invariant, j_meta, EtaQuotient};
use crate::error::{Error, Result};
use crate::meta::FormMeta;
use crate::prodform::{fourier_to_product, product_to_fourier, ProductForm};
use crate::qseries::QSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormSpec {
    Eisenstein(i64),
    Delta,
    J,
    Eta(EtaQuotient),
}

impl FormSpec {
    /// Fourier expansion known below `q^prec`.
    pub fn series(&self, prec: i64) -> Result<QSeries> {
        match self {
            Self::Eisenstein(k) => eisenstein(*k, prec),
            Self::Delta => Ok(crate::classical::delta(prec)),
            Self::J => Ok(j_invariant(prec)),
            Self::Eta(e) => {
                let h = e.order()?;
                product_to_fourier(&e.product_form((prec - h).max(2))?, prec)
            }
        }
    }

    /// Product expansion with exponent precision `prec`.
    pub fn product(&self, prec: i64) -> Result<ProductForm> {
        match self {
            Self::Eisenstein(k) => fourier_to_product(&eisenstein(*k, prec)?),
            Self::Delta => ProductForm::constant(1, 24, prec),
            Self::J => fourier_to_product(&j_invariant(prec - 1)),
            Self::Eta(e) => e.product_form(prec),
        }
    }

    pub fn meta(&self) -> Result<FormMeta> {
        match self {
            Self::Eisenstein(k) if [2, 4, 6].contains(k) => FormMeta::integral(*k, 1, 0),
            Self::Eisenstein(k) => Err(Error::UnsupportedWeight(*k)),
            Self::Delta => Ok(delta_meta()),
            Self::J => Ok(j_meta()),
            Self::Eta(e) => e.meta(),
        }
    }
}

impl FromStr for FormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "E2" => return Ok(Self::Eisenstein(2)),
            "E4" => return Ok(Self::Eisenstein(4)),
            "E6" => return Ok(Self::Eisenstein(6)),
            "delta" | "Delta" => return Ok(Self::Delta),
            "j" => return Ok(Self::J),
            _ => {}
        }
        let bad = || Error::Parse(format!("unknown form {s:?}; expected E2, E4, E6, delta, j or 'etaq N d:r,...'"));
        let rest = s.strip_prefix("etaq").ok_or_else(bad)?.trim();
        let (level, exps) = rest.split_once(char::is_whitespace).ok_or_else(bad)?;
        let level: u64 = level.parse().map_err(|_| bad())?;
        let mut pairs = Vec::new();
        for part in exps.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (d, r) = part.split_once(':').ok_or_else(bad)?;
            let d: u64 = d.trim().parse().map_err(|_| bad())?;
            let r: i64 = r.trim().parse().map_err(|_| bad())?;
            pairs.push((d, r));
        }
        Ok(Self::Eta(EtaQuotient::new(level, pairs)?))
    }
}

impl fmt::Display for FormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Eisenstein(k) => write!(f, "E{k}"),
            Self::Delta => write!(f, "delta"),
            Self::J => write!(f, "j"),
            Self::Eta(e) => write!(f, "{e}"),
        }
    }
}
