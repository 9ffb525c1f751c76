//! Exact arithmetic for multiplicative Hecke operators on infinite-product
//! expansions `q^h ∏ (1 - q^n)^{c(n)}` of meromorphic modular forms.

pub mod arith;
pub mod borcherds;
pub mod classical;
pub mod error;
pub mod formspec;
pub mod heckeadd;
pub mod heckemult;
pub mod json;
pub mod meta;
pub mod prodform;
pub mod qseries;
pub mod rational;
pub mod structure;

pub use error::{Error, Result};
pub use formspec::FormSpec;
pub use meta::FormMeta;
pub use prodform::ProductForm;
pub use qseries::QSeries;
pub use rational::Rational;
