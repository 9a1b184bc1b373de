//! Residues mod p^N, the prime field F_p, the projective line P^1(F_p), and
//! quadratic residue symbols.

mod field;
mod number;
mod symbols;

pub use field::{FpElement, ProjectiveLineFp};
pub use number::{PadicNumber, Valuation, DEFAULT_PRECISION};
pub use symbols::{is_square_mod, kronecker, legendre_euler};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PadicError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("mismatched primes {0} and {1}")]
    PrimeMismatch(u64, u64),
    #[error("not invertible at this precision (p = {prime}, N = {precision})")]
    NotInvertible { prime: u64, precision: u32 },
    #[error("(0 : 0) is not a point of the projective line")]
    ZeroLine,
    #[error("cannot parse {0:?}")]
    Parse(String),
}
