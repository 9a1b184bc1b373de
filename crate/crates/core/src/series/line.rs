use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::bivariate::BivariateSeries;
use super::univariate::UnivariateSeries;
use super::zmod::Zmod;
use super::SeriesError;
use crate::padic::{PadicError, PadicNumber};

/// Exact binomial coefficient C(a, k) for an integer a (any sign).
pub fn binomial_integer(a: &BigInt, k: usize) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * (a - BigInt::from(i)) / BigInt::from(i + 1);
    }
    c
}

/// Number of p-adic digits lost by the division by k! for k <= cap, i.e.
/// v_p(cap!).
pub fn binomial_precision_loss(prime: u64, cap: usize) -> u32 {
    let mut loss = 0u32;
    let mut q = prime as u128;
    while q <= cap as u128 {
        loss += (cap as u128 / q) as u32;
        q *= prime as u128;
    }
    loss
}

fn common_ring(a: &PadicNumber, b: &PadicNumber) -> Result<Zmod, SeriesError> {
    if a.prime() != b.prime() {
        return Err(PadicError::PrimeMismatch(a.prime(), b.prime()).into());
    }
    Ok(Zmod::new(a.prime(), a.precision().min(b.precision())))
}

fn binomial_row(ring: &Zmod, a: &BigInt, cap: usize) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(cap + 1);
    let mut c = BigInt::one();
    row.push(ring.reduce_int(&c));
    for i in 0..cap {
        c = c * (a - BigInt::from(i)) / BigInt::from(i + 1);
        row.push(ring.reduce_int(&c));
    }
    row
}

/// f_{a,b} = (1+X)^a (1+Y)^b - 1 truncated to total degree `cap`.
///
/// The exponents are taken through their balanced residues mod p^N, so the
/// coefficients of total degree k are exact to N - v_p(k!) digits; see
/// [`binomial_precision_loss`].
#[allow(clippy::needless_range_loop)]
pub fn line_series(a: &PadicNumber, b: &PadicNumber, cap: usize) -> Result<BivariateSeries, SeriesError> {
    let ring = common_ring(a, b)?;
    if !a.is_unit() && !b.is_unit() {
        return Err(SeriesError::InvalidLine(ring.prime));
    }
    let xa = binomial_row(&ring, &a.signed_residue(), cap);
    let yb = binomial_row(&ring, &b.signed_residue(), cap);
    let mut f = BivariateSeries::zero(ring.prime, ring.precision, cap)?;
    for i in 0..=cap {
        for j in 0..=cap - i {
            if i + j == 0 {
                continue;
            }
            f.set_raw(i, j, &xa[i] * &yb[j]);
        }
    }
    Ok(f)
}

/// Solves f_{a,b}(g(Y), Y) = 0 for g in Y Z_p[[Y]] coefficient by coefficient.
///
/// Keeps the table P[k][n] = [Y^n] g^k; P[k][n] only involves c_1..c_{n-k+1},
/// so every entry needed for c_n is known once c_1..c_{n-1} are.
#[allow(clippy::needless_range_loop)]
pub fn implicit_solve(a: &PadicNumber, b: &PadicNumber, cap: usize) -> Result<UnivariateSeries, SeriesError> {
    if !a.is_unit() {
        return Err(SeriesError::NotParametrizable);
    }
    let f = line_series(a, b, cap)?;
    let ring = f.ring.clone();
    let neg_inv = ring.neg(&ring.inv(f.raw(1, 0)).ok_or(SeriesError::NotParametrizable)?);

    let mut c = vec![BigUint::zero(); cap + 1];
    let mut powers = vec![vec![BigUint::zero(); cap + 1]; cap + 1];
    powers[0][0] = BigUint::one();

    for n in 1..=cap {
        for k in 2..=n {
            let mut acc = BigUint::zero();
            for m in 1..=(n + 1 - k) {
                if c[m].is_zero() {
                    continue;
                }
                acc += &c[m] * &powers[k - 1][n - m];
            }
            powers[k][n] = ring.reduce(acc);
        }
        let mut acc = BigUint::zero();
        for j in 0..=n {
            for i in 0..=(n - j).min(cap - j) {
                if (i, j) == (0, 0) || (i, j) == (1, 0) {
                    continue;
                }
                let p = &powers[i][n - j];
                if p.is_zero() {
                    continue;
                }
                acc += f.raw(i, j) * p;
            }
        }
        c[n] = ring.mul(&neg_inv, &ring.reduce(acc));
        powers[1][n] = c[n].clone();
    }
    Ok(UnivariateSeries::from_raw(ring, cap, c))
}

fn power_table(g: &UnivariateSeries, ring: &Zmod, cap: usize) -> Vec<Vec<BigUint>> {
    let mut table = vec![vec![BigUint::zero(); cap + 1]; cap + 1];
    table[0][0] = BigUint::one();
    for k in 1..=cap {
        for n in k..=cap {
            let mut acc = BigUint::zero();
            for m in 1..=(n + 1 - k) {
                let gm = &g.coeffs[m];
                if gm.is_zero() {
                    continue;
                }
                acc += gm * &table[k - 1][n - m];
            }
            table[k][n] = ring.reduce(acc);
        }
    }
    table
}

/// F(g(Y), Y), truncated to the cap of F. `g` must have zero constant term.
pub fn substitute_x(f: &BivariateSeries, g: &UnivariateSeries) -> Result<UnivariateSeries, SeriesError> {
    if f.prime() != g.prime() {
        return Err(PadicError::PrimeMismatch(f.prime(), g.prime()).into());
    }
    if !g.coeffs[0].is_zero() {
        return Err(SeriesError::NonzeroConstant);
    }
    let ring = Zmod::new(f.prime(), f.precision().min(g.precision()));
    let cap = f.cap.min(g.cap);
    let table = power_table(g, &ring, cap);
    let mut out = vec![BigUint::zero(); cap + 1];
    for (n, slot) in out.iter_mut().enumerate() {
        let mut acc = BigUint::zero();
        for j in 0..=n {
            for (i, row) in table.iter().enumerate().take(n - j + 1) {
                let a = f.raw(i, j);
                if a.is_zero() || row[n - j].is_zero() {
                    continue;
                }
                acc += a * &row[n - j];
            }
        }
        *slot = ring.reduce(acc);
    }
    Ok(UnivariateSeries::from_raw(ring, cap, out))
}

/// F(X, g(X)), truncated to the cap of F. `g` must have zero constant term.
pub fn substitute_y(f: &BivariateSeries, g: &UnivariateSeries) -> Result<UnivariateSeries, SeriesError> {
    substitute_x(&f.transpose(), g)
}

/// Restriction of F to the line (a : b).
///
/// For a unit a this is F(g(Y), Y) with g from [`implicit_solve`]; otherwise
/// b is a unit and the roles of X and Y are swapped, giving F(X, g~(X)).
pub fn specialize_line(f: &BivariateSeries, a: &PadicNumber, b: &PadicNumber) -> Result<UnivariateSeries, SeriesError> {
    common_ring(a, b)?;
    if a.prime() != f.prime() {
        return Err(PadicError::PrimeMismatch(f.prime(), a.prime()).into());
    }
    if a.is_unit() {
        let g = implicit_solve(a, b, f.cap)?;
        substitute_x(f, &g)
    } else if b.is_unit() {
        let g = implicit_solve(b, a, f.cap)?;
        substitute_y(f, &g)
    } else {
        Err(SeriesError::InvalidLine(f.prime()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pn(p: u64, n: u32, x: i64) -> PadicNumber {
        PadicNumber::from_i64(p, n, x).unwrap()
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial_integer(&BigInt::from(5), 2), BigInt::from(10));
        assert_eq!(binomial_integer(&BigInt::from(-1), 3), BigInt::from(-1));
        assert_eq!(binomial_integer(&BigInt::from(3), 5), BigInt::zero());
        assert_eq!(binomial_precision_loss(3, 12), 5);
        assert_eq!(binomial_precision_loss(13, 12), 0);
    }

    #[test]
    fn coordinate_lines() {
        let x = line_series(&pn(5, 6, 1), &pn(5, 6, 0), 6).unwrap();
        assert_eq!(x.to_poly_string(), "X");
        let y = line_series(&pn(5, 6, 0), &pn(5, 6, 1), 6).unwrap();
        assert_eq!(y.to_poly_string(), "Y");
    }

    #[test]
    fn line_two_one() {
        let f = line_series(&pn(7, 5, 2), &pn(7, 5, 1), 2).unwrap();
        assert_eq!(f.to_poly_string(), "2*X + Y + X^2 + 2*X*Y");
    }

    #[test]
    fn rejects_degenerate_line() {
        let err = line_series(&pn(3, 5, 3), &pn(3, 5, 6), 4).unwrap_err();
        assert_eq!(err, SeriesError::InvalidLine(3));
    }

    #[test]
    fn cyclotomic_solution_is_zero() {
        let g = implicit_solve(&pn(5, 8, 1), &pn(5, 8, 0), 8).unwrap();
        assert!(g.is_zero());
    }

    #[test]
    fn linear_coefficient_divisible_when_b_is() {
        let g = implicit_solve(&pn(5, 8, 1), &pn(5, 8, 5), 6).unwrap();
        assert_eq!(g.coeff(1).signed_residue(), BigInt::from(-5));
    }

    #[test]
    fn non_unit_a_is_not_parametrizable() {
        let err = implicit_solve(&pn(5, 8, 5), &pn(5, 8, 1), 6).unwrap_err();
        assert_eq!(err, SeriesError::NotParametrizable);
    }

    #[test]
    fn specialize_coordinate_lines() {
        let f = BivariateSeries::from_i64_entries(
            5,
            6,
            4,
            &[(0, 0, 5), (1, 0, 2), (0, 1, 3), (2, 0, 7), (0, 2, 11), (1, 1, 13)],
        )
        .unwrap();
        let cyc = specialize_line(&f, &pn(5, 6, 1), &pn(5, 6, 0)).unwrap();
        assert_eq!(cyc.to_poly_string("Y"), "5 + 3*Y + 11*Y^2");
        let anti = specialize_line(&f, &pn(5, 6, 0), &pn(5, 6, 1)).unwrap();
        assert_eq!(anti.to_poly_string("X"), "5 + 2*X + 7*X^2");
    }
}
