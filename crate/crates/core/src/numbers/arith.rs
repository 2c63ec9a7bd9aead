//! Small-integer number theory used for moduli, orders and coset bookkeeping.

use crate::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Trial-division factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut p: u128 = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n as u128) {
        let p = p as u64;
        let current = divs.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            divs.extend(current.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    divs
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n as u128)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p as u64 * (p as u64 - 1))
}

pub fn mobius(n: u64) -> i64 {
    let mut sign = 1;
    for (_, e) in factorize(n as u128) {
        if e > 1 {
            return 0;
        }
        sign = -sign;
    }
    sign
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n as u128).len() == 1 && factorize(n as u128)[0].1 == 1
}

/// Splits a prime power `q = p^r` into `(p, r)`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    let f = factorize(q as u128);
    match f.as_slice() {
        [(p, r)] => Ok((*p as u64, *r)),
        _ => Err(Error::invalid(format!("{q} is not a prime power"))),
    }
}

pub fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp)
        .ok_or_else(|| Error::capacity(format!("{base}^{exp} overflows 64 bits")))
}

pub fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
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
    base = acc as u64;
    base
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(24), 8);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(7), -1);
        assert_eq!(prime_power(4).unwrap(), (2, 2));
        assert!(prime_power(6).is_err());
        assert!(prime_power(1).is_err());
        assert_eq!(mod_inverse(5, 24), Some(5));
        assert_eq!(mod_inverse(4, 24), None);
        assert_eq!(mod_pow(3, 4, 80), 1);
        assert!(is_prime(241));
        assert!(!is_prime(1));
    }
}
