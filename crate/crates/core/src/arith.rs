//! Integer helpers shared by the curve and field code: primality, factoring,
//! sieving and valuations.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Modular exponentiation on machine words.
pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin on arbitrary integers. Deterministic below 3.3e24, a strong
/// probable-prime test above that.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    const BASES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    for &p in &BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Sieve of Eratosthenes: all primes strictly below `bound`.
pub fn primes_below(bound: u64) -> Vec<u64> {
    if bound < 3 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j < n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

fn pollard_brent(n: &BigUint, seed: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let c = BigUint::from(seed);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(seed.wrapping_mul(7) + 2) % n;
    let m = 64u32;
    let mut g = one.clone();
    let mut r = 1u64;
    let mut q = one.clone();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0u64;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min((r - k) as u32) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m as u64;
        }
        r *= 2;
        if r > (1 << 22) {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g > one {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn split_into(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    let r = n.sqrt();
    if &r * &r == n {
        split_into(r.clone(), out);
        split_into(r, out);
        return;
    }
    for seed in 1..200u64 {
        if let Some(d) = pollard_brent(&n, seed) {
            let other = &n / &d;
            split_into(d, out);
            split_into(other, out);
            return;
        }
    }
    panic!("failed to factor {n}");
}

/// Prime factorization of |n| as ascending (prime, exponent) pairs. Zero and
/// units factor as the empty list.
pub fn factor(n: &BigInt) -> Vec<(BigUint, u32)> {
    let mut m = n.magnitude().clone();
    let mut primes: Vec<BigUint> = Vec::new();
    if m.is_zero() {
        return Vec::new();
    }
    for p in 2u64..2000 {
        if p > 2 && p % 2 == 0 {
            continue;
        }
        while (&m % p).is_zero() {
            primes.push(BigUint::from(p));
            m /= p;
        }
        if m.is_one() {
            break;
        }
    }
    split_into(m, &mut primes);
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Distinct prime divisors of |n|.
pub fn prime_divisors(n: &BigInt) -> Vec<BigUint> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

/// Factorization of a machine integer.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    factor(&BigInt::from(n)).into_iter().map(|(p, e)| (p.to_u64().expect("factor of u64 fits"), e)).collect()
}

/// p-adic valuation of a nonzero integer; `None` for zero.
pub fn valuation(n: &BigInt, p: &BigUint) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let mut m = n.magnitude().clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

pub fn valuation_u64(n: &BigInt, p: u64) -> Option<u32> {
    valuation(n, &BigUint::from(p))
}

/// True iff n is the square of an integer (negative numbers never are).
pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

pub fn is_squarefree_i64(n: i64) -> bool {
    n != 0 && factor_u64(n.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

/// Writes n = s * m^2 with s squarefree and returns s (sign preserved).
pub fn squarefree_part_i64(n: i64) -> i64 {
    assert!(n != 0, "squarefree part of zero");
    let mut s: i64 = n.signum();
    for (p, e) in factor_u64(n.unsigned_abs()) {
        if e % 2 == 1 {
            s *= p as i64;
        }
    }
    s
}

/// Reduces `n` into [0, modulus).
pub fn mod_floor_u64(n: &BigInt, modulus: u64) -> u64 {
    let m = BigInt::from(modulus);
    n.mod_floor(&m).to_u64().expect("residue fits")
}

pub fn to_bigint(n: &BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, n.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let ps = primes_below(30);
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        for n in 0..2000u64 {
            assert_eq!(is_prime_u64(n), ps_contains(n), "{n}");
        }
    }

    fn ps_contains(n: u64) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn factors_discriminant() {
        let d = BigInt::from(-646_232_256i64);
        let f = factor(&d);
        let f: Vec<(u64, u32)> = f.into_iter().map(|(p, e)| (p.to_u64().unwrap(), e)).collect();
        assert_eq!(f, vec![(2, 6), (3, 12), (19, 1)]);
    }

    #[test]
    fn factors_large_semiprime() {
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(998_244_353u64);
        let n = to_bigint(&(&p * &q * &p));
        let f = factor(&n);
        assert_eq!(f, vec![(q, 1), (p, 2)]);
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part_i64(-12), -3);
        assert_eq!(squarefree_part_i64(50), 2);
        assert!(is_squarefree_i64(-7));
        assert!(!is_squarefree_i64(18));
    }

    #[test]
    fn squares() {
        assert!(is_perfect_square(&BigInt::from(1369)));
        assert!(!is_perfect_square(&BigInt::from(-4)));
        assert!(!is_perfect_square(&BigInt::from(37)));
    }
}
