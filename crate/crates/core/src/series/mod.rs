//! Truncated power series over Z_p in one and two variables, and the
//! specialization machinery that restricts a two-variable characteristic
//! series to a single Z_p-extension.
//!
//! Coordinates: `X` is the cyclotomic-direction variable and `Y` the
//! anticyclotomic one, so the cyclotomic line (1 : 0) is cut out by `X = 0`.

mod bivariate;
mod invariants;
mod json;
mod line;
mod univariate;
mod zmod;

pub use bivariate::BivariateSeries;
pub use invariants::{excluded_line, mu_lambda, IwasawaInvariants};
pub use line::{
    binomial_integer, binomial_precision_loss, implicit_solve, line_series, specialize_line, substitute_x, substitute_y,
};
pub use univariate::UnivariateSeries;

use thiserror::Error;

use crate::padic::PadicError;

/// Default total-degree cap for series.
pub const DEFAULT_CAP: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error("both line coordinates are divisible by p = {0}")]
    InvalidLine(u64),
    #[error("line not parametrizable by Y: a is not a p-adic unit")]
    NotParametrizable,
    #[error("series is zero at working precision: not cotorsion at this precision")]
    NotCotorsion,
    #[error("cyclotomic hypotheses not met: {0}")]
    CyclotomicHypotheses(String),
    #[error("substituted series must have zero constant term")]
    NonzeroConstant,
    #[error("series mismatch: {0}")]
    Mismatch(String),
    #[error("invalid series data: {0}")]
    Invalid(String),
}
