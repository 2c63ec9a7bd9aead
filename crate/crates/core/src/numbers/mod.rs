//! Exact arithmetic, group orders and Galois residue sets.

pub mod arith;
mod cyclotomic;
mod cycnum;
pub mod linalg;
mod rational;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

pub use cyclotomic::{cyclotomic_poly, cyclotomic_poly_value};
pub use cycnum::{CycNumber, MAX_ORDER};
pub use rational::{
    int, is_nonnegative_integer, parse_rational, rat, rational_to_string, serde_string, Rational,
};

use crate::{Error, Result};
use arith::{checked_pow, divisors, gcd, lcm, prime_power};

/// `|GL_n(F_q)| = ∏_{i<n} (q^n - q^i)`.
pub fn gl_order(n: u32, q: u64) -> Result<BigUint> {
    prime_power(q)?;
    let qn = BigUint::from(q).pow(n);
    Ok((0..n).fold(BigUint::one(), |acc, i| {
        acc * (&qn - BigUint::from(q).pow(i))
    }))
}

/// Exponent of `GL_n(F_q)`: `p^⌈log_p n⌉ · lcm(q^m - 1 : 1 ≤ m ≤ n)`.
pub fn effective_modulus(n: u32, q: u64) -> Result<u64> {
    let (p, _) = prime_power(q)?;
    let mut unipotent = 1u64;
    while unipotent < n as u64 {
        unipotent *= p;
    }
    Ok(unipotent * semisimple_modulus(n, q)?)
}

/// `lcm(q^m - 1 : 1 ≤ m ≤ n)`: the part of the exponent that acts on Φ and Θ.
pub fn semisimple_modulus(n: u32, q: u64) -> Result<u64> {
    let mut l = 1u64;
    for m in 1..=n {
        l = lcm(l, checked_pow(q, m)? - 1);
        if l > MODULUS_LIMIT {
            return Err(Error::capacity(format!(
                "modulus for n={n}, q={q} exceeds {MODULUS_LIMIT}"
            )));
        }
    }
    Ok(l)
}

/// Number of monic irreducible polynomials of degree `n` over `F_q` other
/// than `t`, equivalently Frobenius orbits of size exactly `n` on `F_{q^n}^×`.
pub fn necklace_count(n: u32, q: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid("degree must be positive"));
    }
    let mut total: i128 = 0;
    for m in divisors(n as u64) {
        total += arith::mobius(n as u64 / m) as i128 * (checked_pow(q, m as u32)? as i128 - 1);
    }
    Ok((total / n as i128) as u64)
}

/// Largest Galois modulus handled.
pub const MODULUS_LIMIT: u64 = 10_000_000;

/// All `d` with `|GL_k| | d | |GL_{k+1}|` for some `0 ≤ k < n_max`.
pub fn admissible_d(q: u64, n_max: u32) -> Result<BTreeSet<BigUint>> {
    if n_max == 0 {
        return Err(Error::invalid("n_max must be at least 1"));
    }
    prime_power(q)?;
    let mut out = BTreeSet::new();
    for k in 0..n_max {
        let lower = gl_order(k, q)?;
        let upper = gl_order(k + 1, q)?;
        let ratio = (&upper / &lower)
            .to_u64()
            .ok_or_else(|| Error::capacity("order ratio exceeds 64 bits"))?;
        for t in divisors(ratio) {
            out.insert(&lower * BigUint::from(t));
        }
    }
    Ok(out)
}

pub(crate) fn display_string<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn display_vec<T: std::fmt::Display, S: serde::Serializer>(
    v: &[T],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// One candidate of the closed-form enumeration `p^{r(n-1)+i} ∏_{s∈A} Φ_s(p)`
/// together with whether it satisfies the divisibility predicate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisplayCandidate {
    pub n: u32,
    pub i: u32,
    pub subset: Vec<u64>,
    #[serde(serialize_with = "display_string")]
    pub value: BigUint,
    pub satisfies_predicate: bool,
}

/// Expands the closed-form candidate set for `1 ≤ n ≤ n_max` and flags the
/// values that fail `|GL_k| | d | |GL_{k+1}|` for every `k < n_max`.
pub fn admissible_d_display_set(q: u64, n_max: u32) -> Result<Vec<DisplayCandidate>> {
    let (p, r) = prime_power(q)?;
    let admissible = admissible_d(q, n_max)?;
    let mut out = Vec::new();
    for n in 1..=n_max {
        let divs = divisors(r as u64 * n as u64);
        if divs.len() > 16 {
            return Err(Error::capacity("too many divisor subsets"));
        }
        for i in 1..=r {
            for mask in 0u32..(1 << divs.len()) {
                let subset: Vec<u64> = divs
                    .iter()
                    .enumerate()
                    .filter(|(bit, _)| mask >> bit & 1 == 1)
                    .map(|(_, &s)| s)
                    .collect();
                let mut value = BigUint::from(p).pow(r * (n - 1) + i);
                for &s in &subset {
                    let v = cyclotomic_poly_value(s, p as i64);
                    value *= v.to_biguint().expect("Φ_s(p) > 0 for p ≥ 2");
                }
                let satisfies_predicate = admissible.contains(&value);
                out.push(DisplayCandidate {
                    n,
                    i,
                    subset,
                    value,
                    satisfies_predicate,
                });
            }
        }
    }
    Ok(out)
}

/// The residues `r mod L` representing `Gal(Q(ζ_N)/Q(ζ_d))` acting through
/// an exponent-relevant modulus `L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaloisSpec {
    #[serde(serialize_with = "display_string")]
    pub group_order: BigUint,
    pub effective_modulus: u64,
    pub conductor: u64,
    pub residues: Vec<u64>,
}

pub fn galois_residues(group_order: &BigUint, modulus: u64, d: u64) -> Result<GaloisSpec> {
    if d == 0 || modulus == 0 {
        return Err(Error::invalid("d and the modulus must be positive"));
    }
    if !(group_order % BigUint::from(d)).is_zero() {
        return Err(Error::invalid(format!(
            "d = {d} does not divide {group_order}"
        )));
    }
    if !(group_order % BigUint::from(modulus)).is_zero() {
        return Err(Error::invalid(format!(
            "modulus {modulus} does not divide {group_order}"
        )));
    }
    Ok(residues_unchecked(group_order.clone(), modulus, d))
}

fn residues_unchecked(group_order: BigUint, modulus: u64, d: u64) -> GaloisSpec {
    // r ≡ 1 (mod d) on residues mod lcm(L, d), reduced mod L, is the same set
    // as units mod L that are ≡ 1 modulo gcd(d, L).
    let g = gcd(d, modulus);
    let residues = (0..modulus.max(1))
        .filter(|&r| gcd(r, modulus) == 1 && (modulus == 1 || r % g == 1 % g))
        .map(|r| if modulus == 1 { 1 } else { r })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    GaloisSpec {
        group_order,
        effective_modulus: modulus,
        conductor: d,
        residues,
    }
}

impl GaloisSpec {
    /// `Gal(|GL_n(F_q)|, d)` acting through the exponent of `GL_n(F_q)`; `d` must
    /// divide the group order.
    pub fn for_gl(n: u32, q: u64, d: u64) -> Result<Self> {
        let order = gl_order(n, q)?;
        galois_residues(&order, effective_modulus(n, q)?, d)
    }

    /// Like [`GaloisSpec::for_gl`], but a `d` that does not divide the group order
    /// is replaced by `gcd(d, |GL_n|)`; a multiple of the group order gives the
    /// trivial group. This is the convention used inside graded towers where
    /// one `d` serves every degree.
    pub fn for_gl_graded(n: u32, q: u64, d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::invalid("d must be positive"));
        }
        let order = gl_order(n, q)?;
        let reduced = num_integer::Integer::gcd(&order, &BigUint::from(d))
            .to_u64()
            .expect("gcd with a u64 fits in u64");
        let mut spec = residues_unchecked(order, effective_modulus(n, q)?, reduced);
        spec.conductor = d;
        Ok(spec)
    }

    pub fn is_trivial(&self) -> bool {
        self.residues.len() == 1
    }

    /// Distinct residues modulo `m` (a divisor of the effective modulus).
    pub fn residues_mod(&self, m: u64) -> Vec<u64> {
        self.residues
            .iter()
            .map(|r| r % m.max(1))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }
}
