//! Exact polynomial arithmetic: univariate `T[x]`, bivariate `T[x][y]`,
//! and the text syntax shared by the CLI and the JSON bundles.

mod bipoly;
mod parse;
mod unipoly;

pub use bipoly::BiPoly;
pub use parse::{parse_bipoly, parse_unipoly, parse_univariate};
pub use unipoly::{cmp_right, precedes_right, UniPoly};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// `precedes_right` is undefined on equal polynomials.
    #[error("the two polynomials are equal")]
    EqualPolynomials,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}
