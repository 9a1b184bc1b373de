use serde::Serialize;

use super::bivariate::BivariateSeries;
use super::univariate::UnivariateSeries;
use super::SeriesError;
use crate::padic::{FpElement, ProjectiveLineFp, Valuation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IwasawaInvariants {
    pub mu: u32,
    pub lambda: usize,
    /// False when the witnessing coefficient sits at the degree cap.
    pub certified: bool,
}

/// Reads mu and lambda off the coefficients: mu is the least valuation, lambda
/// the first index where it is attained.
pub fn mu_lambda(h: &UnivariateSeries) -> Result<IwasawaInvariants, SeriesError> {
    let mut best: Option<(u32, usize)> = None;
    for i in 0..=h.cap() {
        if let Valuation::Finite(v) = h.coeff(i).valuation() {
            if best.is_none_or(|(m, _)| v < m) {
                best = Some((v, i));
            }
        }
    }
    let (mu, lambda) = best.ok_or(SeriesError::NotCotorsion)?;
    Ok(IwasawaInvariants { mu, lambda, certified: mu < h.precision() && lambda < h.cap() })
}

/// The unique line mod p along which the specialization of F fails to have
/// (mu, lambda) = (0, 1), given a_{0,0} = 0 mod p and a_{0,1} a unit.
pub fn excluded_line(f: &BivariateSeries) -> Result<ProjectiveLineFp, SeriesError> {
    let p = f.prime();
    if f.cap() < 1 {
        return Err(SeriesError::CyclotomicHypotheses("degree cap below 1".into()));
    }
    let a00 = f.coeff(0, 0);
    let a01 = f.coeff(0, 1);
    if a00.reduce_mod_p() != 0 {
        return Err(SeriesError::CyclotomicHypotheses(format!("a_(0,0) is a unit mod {p}")));
    }
    if a01.reduce_mod_p() == 0 {
        return Err(SeriesError::CyclotomicHypotheses(format!("a_(0,1) is divisible by {p}")));
    }
    let a10 = f.coeff(1, 0).reduce_mod_p();
    let line = ProjectiveLineFp::new(FpElement::new(p, a10 as i64)?, FpElement::new(p, a01.reduce_mod_p() as i64)?)?;
    Ok(line)
}
