//! Small dense polynomials over F_p, enough to count roots of cubics.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

type Poly = Vec<BigInt>;

fn reduce(p: &BigInt, mut f: Poly) -> Poly {
    for c in f.iter_mut() {
        *c = c.mod_floor(p);
    }
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

fn inv_mod(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    e.x.mod_floor(p)
}

fn rem(p: &BigInt, mut a: Poly, b: &Poly) -> Poly {
    let db = b.len() - 1;
    let lead_inv = inv_mod(&b[db], p);
    while a.len() > db {
        let da = a.len() - 1;
        let q = (&a[da] * &lead_inv).mod_floor(p);
        for (k, bk) in b.iter().enumerate() {
            let idx = da - db + k;
            a[idx] = (&a[idx] - &q * bk).mod_floor(p);
        }
        a = reduce(p, a);
    }
    a
}

fn mul_rem(p: &BigInt, a: &Poly, b: &Poly, m: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rem(p, reduce(p, out), m)
}

fn gcd(p: &BigInt, mut a: Poly, mut b: Poly) -> Poly {
    while !b.is_empty() {
        let r = rem(p, a, &b);
        a = b;
        b = r;
    }
    a
}

/// Number of distinct roots in F_p of the integer polynomial with
/// coefficients `coeffs` (constant term first). The zero polynomial mod p
/// has all p residues as roots.
pub(crate) fn count_roots(coeffs: &[BigInt], prime: &BigUint) -> BigUint {
    let p = BigInt::from_biguint(Sign::Plus, prime.clone());
    let f = reduce(&p, coeffs.to_vec());
    if f.is_empty() {
        return prime.clone();
    }
    if f.len() == 1 {
        return BigUint::zero();
    }
    // x^p mod f by square and multiply
    let x: Poly = rem(&p, vec![BigInt::zero(), BigInt::one()], &f);
    let mut acc: Poly = rem(&p, vec![BigInt::one()], &f);
    let bits = prime.bits();
    for i in (0..bits).rev() {
        acc = mul_rem(&p, &acc, &acc, &f);
        if prime.bit(i) {
            acc = mul_rem(&p, &acc, &x, &f);
        }
    }
    // x^p - x
    let mut xp = acc;
    xp.resize(xp.len().max(2), BigInt::zero());
    xp[1] -= BigInt::one();
    let xp = reduce(&p, xp);
    let g = gcd(&p, f, xp);
    BigUint::from(g.len() - 1)
}

pub(crate) fn has_root(coeffs: &[BigInt], prime: &BigUint) -> bool {
    !count_roots(coeffs, prime).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(coeffs: &[i64], p: u64) -> u64 {
        (0..p as i64)
            .filter(|&x| {
                let mut v: i128 = 0;
                for &c in coeffs.iter().rev() {
                    v = v * x as i128 + c as i128;
                }
                v.rem_euclid(p as i128) == 0
            })
            .count() as u64
    }

    #[test]
    fn matches_enumeration() {
        let polys: [&[i64]; 6] = [&[1, 0, 1], &[-1, 0, 1], &[-2, 0, 0, 1], &[6, -11, 6, -1], &[3, 5, 0, 4], &[0, 0, 7]];
        for p in [2u64, 3, 5, 7, 11, 13, 37, 101] {
            for f in polys {
                let big: Vec<BigInt> = f.iter().map(|&c| BigInt::from(c)).collect();
                assert_eq!(count_roots(&big, &BigUint::from(p)), BigUint::from(brute(f, p)), "{f:?} mod {p}");
            }
        }
    }
}
