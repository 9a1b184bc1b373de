use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::univariate::render_terms;
use super::zmod::Zmod;
use super::SeriesError;
use crate::padic::PadicNumber;

/// Position of (i, j) in the triangular grid i + j <= cap, ordered by total
/// degree and then by the power of Y.
#[inline]
pub(crate) fn tri_index(i: usize, j: usize) -> usize {
    let t = i + j;
    t * (t + 1) / 2 + j
}

/// A truncated element sum a_{i,j} X^i Y^j (i + j <= D) of Z_p[[X, Y]].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    pub(crate) ring: Zmod,
    pub(crate) cap: usize,
    pub(crate) coeffs: Vec<BigUint>,
}

impl BivariateSeries {
    pub fn zero(prime: u64, precision: u32, cap: usize) -> Result<Self, SeriesError> {
        PadicNumber::zero(prime, precision)?;
        let len = tri_index(0, cap) + 1;
        Ok(Self { ring: Zmod::new(prime, precision), cap, coeffs: vec![BigUint::zero(); len] })
    }

    /// Builds a series from sparse integer entries (i, j, a_{i,j}); entries
    /// beyond the cap are ignored.
    pub fn from_entries(
        prime: u64,
        precision: u32,
        cap: usize,
        entries: &[(usize, usize, BigInt)],
    ) -> Result<Self, SeriesError> {
        let mut s = Self::zero(prime, precision, cap)?;
        for (i, j, c) in entries {
            if i + j <= cap {
                let v = s.ring.reduce_int(c);
                s.coeffs[tri_index(*i, *j)] = v;
            }
        }
        Ok(s)
    }

    pub fn from_i64_entries(
        prime: u64,
        precision: u32,
        cap: usize,
        entries: &[(usize, usize, i64)],
    ) -> Result<Self, SeriesError> {
        let big: Vec<_> = entries.iter().map(|&(i, j, c)| (i, j, BigInt::from(c))).collect();
        Self::from_entries(prime, precision, cap, &big)
    }

    pub fn prime(&self) -> u64 {
        self.ring.prime
    }

    pub fn precision(&self) -> u32 {
        self.ring.precision
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub(crate) fn raw(&self, i: usize, j: usize) -> &BigUint {
        &self.coeffs[tri_index(i, j)]
    }

    pub(crate) fn set_raw(&mut self, i: usize, j: usize, v: BigUint) {
        let idx = tri_index(i, j);
        self.coeffs[idx] = self.ring.reduce(v);
    }

    /// Coefficient a_{i,j}; zero outside the grid.
    pub fn coeff(&self, i: usize, j: usize) -> PadicNumber {
        let r = if i + j <= self.cap { self.raw(i, j).clone() } else { BigUint::zero() };
        PadicNumber::from_parts_unchecked(self.ring.prime, self.ring.precision, r)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero entries in grid order.
    pub fn entries(&self) -> Vec<(usize, usize, BigUint)> {
        let mut out = Vec::new();
        for t in 0..=self.cap {
            for j in 0..=t {
                let c = self.raw(t - j, j);
                if !c.is_zero() {
                    out.push((t - j, j, c.clone()));
                }
            }
        }
        out
    }

    /// Swaps the roles of X and Y.
    pub fn transpose(&self) -> Self {
        let mut out = Self { ring: self.ring.clone(), cap: self.cap, coeffs: self.coeffs.clone() };
        for t in 0..=self.cap {
            for j in 0..=t {
                out.coeffs[tri_index(j, t - j)] = self.raw(t - j, j).clone();
            }
        }
        out
    }

    /// Human-readable form with balanced residues, e.g. `2*X + Y + X^2 + 2*X*Y`.
    pub fn to_poly_string(&self) -> String {
        let terms: Vec<(BigInt, String)> = self
            .entries()
            .into_iter()
            .map(|(i, j, c)| {
                let mut parts = Vec::new();
                match i {
                    0 => {}
                    1 => parts.push("X".to_string()),
                    _ => parts.push(format!("X^{i}")),
                }
                match j {
                    0 => {}
                    1 => parts.push("Y".to_string()),
                    _ => parts.push(format!("Y^{j}")),
                }
                (self.ring.signed(&c), parts.join("*"))
            })
            .collect();
        render_terms(&terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangular_layout_is_dense() {
        let cap = 6;
        let mut seen = vec![false; tri_index(0, cap) + 1];
        for t in 0..=cap {
            for j in 0..=t {
                let k = tri_index(t - j, j);
                assert!(!seen[k]);
                seen[k] = true;
            }
        }
        assert!(seen.iter().all(|&b| b));
    }

    #[test]
    fn transpose_swaps_variables() {
        let f = BivariateSeries::from_i64_entries(5, 3, 3, &[(1, 0, 2), (0, 2, 7), (2, 1, 1)]).unwrap();
        let t = f.transpose();
        assert_eq!(t.coeff(0, 1).residue(), &BigUint::from(2u32));
        assert_eq!(t.coeff(2, 0).residue(), &BigUint::from(7u32));
        assert_eq!(t.coeff(1, 2).residue(), &BigUint::from(1u32));
        assert_eq!(t.transpose(), f);
    }
}
