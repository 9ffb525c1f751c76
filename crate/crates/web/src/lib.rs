//! Browser bindings for the `qhecke` demo page.
//!
//! Each entry point takes a form name as accepted by the CLI (`E4`,
//! `delta`, `etaq 4 2:-4,4:8`, ...) and returns JSON text.

use qhecke::heckemult::{mult_hecke_to, required_prec};
use qhecke::{json, FormSpec};
use wasm_bindgen::prelude::*;

/// Largest precision the page accepts.
pub const MAX_PREC: i64 = 400;

/// Largest input precision a Hecke image may need.
pub const MAX_WORK: i64 = 20_000;

fn parse(form: &str, prec: i64) -> Result<FormSpec, String> {
    if !(1..=MAX_PREC).contains(&prec) {
        return Err(format!("precision must lie in 1..={MAX_PREC}"));
    }
    form.trim().parse().map_err(|e: qhecke::Error| e.to_string())
}

/// Fourier coefficients below `q^prec`.
pub fn expand_json(form: &str, prec: i64) -> Result<String, String> {
    let f = parse(form, prec)?.series(prec).map_err(|e| e.to_string())?;
    let f = if f.prec() > prec { f.truncate(prec).map_err(|e| e.to_string())? } else { f };
    Ok(json::series_to_json(&f))
}

/// Product exponents `c(1), ..., c(prec - 1)`.
pub fn product_json(form: &str, prec: i64) -> Result<String, String> {
    let p = parse(form, prec)?.product(prec).map_err(|e| e.to_string())?;
    Ok(json::product_to_json(&p))
}

/// The image under `𝒯(n)`, exponents known below `prec`.
pub fn mult_hecke_json(form: &str, n: u32, prec: i64) -> Result<String, String> {
    let spec = parse(form, prec)?;
    if n == 0 {
        return Err("n must be positive".into());
    }
    let need = required_prec(n.into(), prec);
    if need > MAX_WORK {
        return Err(format!("n(prec - 1) + 1 = {need} exceeds {MAX_WORK}"));
    }
    let meta = spec.meta().map_err(|e| e.to_string())?;
    let p = spec.product(need).map_err(|e| e.to_string())?;
    let res = mult_hecke_to(&p, &meta, n.into(), prec).map_err(|e| e.to_string())?;
    Ok(json::hecke_to_json(&res))
}

#[wasm_bindgen]
pub fn expand(form: &str, prec: i32) -> Result<String, JsError> {
    expand_json(form, prec.into()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn product_exponents(form: &str, prec: i32) -> Result<String, JsError> {
    product_json(form, prec.into()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn mult_hecke(form: &str, n: u32, prec: i32) -> Result<String, JsError> {
    mult_hecke_json(form, n, prec.into()).map_err(|e| JsError::new(&e))
}
