use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use super::arith::divisors;

type PolyCache = Mutex<HashMap<u64, Arc<Vec<i64>>>>;

fn cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (low to high) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial index must be positive");
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    // x^n - 1 divided by every Φ_d with d | n, d < n.
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let divisor = cyclotomic_poly(d);
        poly = exact_div(&poly, &divisor);
    }
    let poly = Arc::new(poly);
    cache().lock().unwrap().insert(n, Arc::clone(&poly));
    poly
}

/// Exact division by a monic polynomial.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Value of the `s`-th cyclotomic polynomial at the integer `p`.
pub fn cyclotomic_poly_value(s: u64, p: i64) -> BigInt {
    let poly = cyclotomic_poly(s);
    let x = BigInt::from(p);
    poly.iter()
        .rev()
        .fold(BigInt::from(0), |acc, &c| acc * &x + BigInt::from(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_polynomials() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn values() {
        assert_eq!(cyclotomic_poly_value(1, 2), BigInt::from(1));
        assert_eq!(cyclotomic_poly_value(2, 2), BigInt::from(3));
        assert_eq!(cyclotomic_poly_value(6, 2), BigInt::from(3));
    }

    #[test]
    fn product_over_divisors_is_p_pow_m_minus_one() {
        for p in [2i64, 3, 5] {
            for m in 1..=6u64 {
                let prod = divisors(m)
                    .into_iter()
                    .fold(BigInt::from(1), |acc, s| acc * cyclotomic_poly_value(s, p));
                assert_eq!(prod, BigInt::from(p).pow(m as u32) - 1, "p={p} m={m}");
            }
        }
    }
}
