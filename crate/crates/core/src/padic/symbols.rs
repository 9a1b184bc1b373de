use crate::arith::{factor_u64, pow_mod};

/// Kronecker symbol (d / n) for any integer d and positive n.
pub fn kronecker(d: i64, n: u64) -> i8 {
    assert!(n > 0, "kronecker symbol needs n > 0");
    let mut n = n;
    let mut sign: i8 = 1;
    let twos = n.trailing_zeros();
    if twos > 0 {
        if d % 2 == 0 {
            return 0;
        }
        // (d/2) = 1 if d = ±1 mod 8, -1 if d = ±3 mod 8
        let r = d.rem_euclid(8);
        if twos % 2 == 1 && (r == 3 || r == 5) {
            sign = -sign;
        }
        n >>= twos;
    }
    // Jacobi symbol (d mod n / n) for odd n
    let mut a = d.rem_euclid(n as i64) as u64;
    let mut m = n;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            let r = m % 8;
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            sign = -sign;
        }
        a %= m;
    }
    if m == 1 {
        sign
    } else {
        0
    }
}

/// Legendre symbol via Euler's criterion, for odd primes.
pub fn legendre_euler(a: i64, p: u64) -> i8 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Whether `a` is a square modulo `q`, where q is a prime power (including
/// powers of 2). Zero counts as a square.
pub fn is_square_mod(a: i64, q: u64) -> bool {
    assert!(q >= 2, "modulus must be at least 2");
    let factors = factor_u64(q);
    assert!(factors.len() == 1, "modulus {q} is not a prime power");
    let (p, k) = factors[0];
    let r = a.rem_euclid(q as i64) as u64;
    if r == 0 {
        return true;
    }
    let mut v = 0u32;
    let mut u = r;
    while u.is_multiple_of(p) {
        u /= p;
        v += 1;
    }
    if v % 2 == 1 {
        return false;
    }
    let rest = k - v;
    if p == 2 {
        match rest {
            0 | 1 => true,
            2 => u % 4 == 1,
            _ => u % 8 == 1,
        }
    } else {
        legendre_euler(u as i64, p) == 1
    }
}
