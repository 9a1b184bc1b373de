//! Hypothesis checks, density formulas and 3-isogeny Selmer ratios.

mod density;
mod euler;
mod kriz_li;
mod scan;
mod selmer;
mod verdict;

use thiserror::Error;

pub use density::{isogeny3_density, kriz_li_density, kriz_li_density_formula};
pub use euler::{euler_char_check, EulerCharReport, EulerOutcome};
pub use kriz_li::{kriz_li_preconditions, kriz_li_s_test, s_primes};
pub use scan::{scan, IsogenyScanSummary, RowStatus, ScanReport, ScanRow};
pub use selmer::{
    isogeny_twist, selmer_ratio_local, selmer_ratios, t0prime_membership, t_invariant, tzero_report, IsogenyTwist,
    LocalRatio, Place, SelmerRatio, TInvariant, TZeroReport,
};
pub use verdict::{h10_check, H10Gen, HypothesisStatus, Status, Verdict};

use crate::curves::CurveError;
use crate::ingest::IngestError;
use crate::quad::QuadError;
use crate::series::SeriesError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriteriaError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
