//! Verification tools for Iwasawa-theoretic criteria on Hilbert's tenth
//! problem over Z_p-extensions of imaginary quadratic fields.

pub mod arith;
pub mod cli;
pub mod criteria;
pub mod curves;
pub mod ingest;
pub mod json;
pub mod padic;
pub mod quad;
pub mod series;
