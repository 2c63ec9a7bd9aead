//! Finite fields `F_q ⊂ F_{q^2} ⊂ …` in discrete-log form, and q-cyclotomic cosets.
//!
//! Elements of `F_{q^m}^×` are named by exponents of a fixed generator `g_m`,
//! with `g_{m'}^{(q^{m'}-1)/(q^m-1)} = g_m` whenever `m | m'`. All levels are
//! realized inside one field `F_{q^D}`, `D = lcm(1..=M)`, built from a primitive
//! polynomial over `F_q`; `g_m` is the matching power of the root `G` of that
//! polynomial. The same exponent arithmetic indexes both Frobenius orbits on
//! elements (Φ) and on characters (Θ).

use serde::{Deserialize, Serialize};

use crate::numbers::arith::{checked_pow, factorize, lcm, prime_power};
use crate::{Error, Result};

/// Largest field `F_{q^D}` materialized for discrete-log tables.
pub const FIELD_SIZE_LIMIT: u64 = 1 << 20;

/// The prime-power field `F_q`, elements coded `0..q` as base-`p` digit strings
/// of their residue modulo a fixed irreducible polynomial (plain integers mod
/// `p` when `q` is prime).
#[derive(Debug, Clone)]
pub struct Fq {
    q: u32,
    p: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl Fq {
    pub fn new(q: u64) -> Result<Self> {
        let (p, r) = prime_power(q)?;
        if q > 256 {
            return Err(Error::capacity(format!(
                "F_{q} exceeds the small-field table limit"
            )));
        }
        let (q, p) = (q as u32, p as u32);
        let modulus = if r == 1 {
            vec![0, 1]
        } else {
            primitive_polynomial(&PrimeField(p), r as usize)?
        };
        let digits = |mut x: u32| -> Vec<u32> {
            (0..r)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let code = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &d| acc * p + d);
        let prime = PrimeField(p);
        let mut add = vec![0; (q * q) as usize];
        let mut mul = vec![0; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = code(&sum);
                let prod = if r == 1 {
                    vec![a * b % p]
                } else {
                    poly_mulmod(&prime, &da, &db, &modulus)
                };
                mul[(a * q + b) as usize] = code(&prod);
            }
        }
        let mut neg = vec![0; q as usize];
        let mut inv = vec![0; q as usize];
        for a in 0..q {
            for b in 0..q {
                if add[(a * q + b) as usize] == 0 {
                    neg[a as usize] = b;
                }
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b;
                }
            }
        }
        Ok(Fq {
            q,
            p,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut acc, mut b) = (1, a);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// The image of the integer `n` in `F_q`.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
}

/// Minimal field interface for the polynomial helpers below.
trait Field {
    fn size(&self) -> u32;
    fn add(&self, a: u32, b: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn neg(&self, a: u32) -> u32;
}

struct PrimeField(u32);

impl Field for PrimeField {
    fn size(&self) -> u32 {
        self.0
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.0
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        a * b % self.0
    }
    fn neg(&self, a: u32) -> u32 {
        (self.0 - a) % self.0
    }
}

impl Field for Fq {
    fn size(&self) -> u32 {
        self.q
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        Fq::add(self, a, b)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        Fq::mul(self, a, b)
    }
    fn neg(&self, a: u32) -> u32 {
        Fq::neg(self, a)
    }
}

/// Product of two residues (length `deg`) modulo a monic polynomial of degree `deg`.
fn poly_mulmod<F: Field>(f: &F, a: &[u32], b: &[u32], modulus: &[u32]) -> Vec<u32> {
    let deg = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * deg];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = f.add(prod[i + j], f.mul(x, y));
        }
    }
    for i in (deg..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..deg {
            prod[i - deg + j] = f.add(prod[i - deg + j], f.neg(f.mul(c, modulus[j])));
        }
    }
    prod.truncate(deg);
    prod
}

fn poly_powmod<F: Field>(f: &F, base: &[u32], mut e: u64, modulus: &[u32]) -> Vec<u32> {
    let deg = modulus.len() - 1;
    let mut acc = vec![0u32; deg];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(f, &acc, &b, modulus);
        }
        b = poly_mulmod(f, &b, &b, modulus);
        e >>= 1;
    }
    acc
}

/// First monic polynomial of degree `deg` (in lexicographic coefficient order)
/// whose root `x` has multiplicative order `size^deg - 1`. Such a polynomial is
/// irreducible, since a ring with a unit of that order is a field.
fn primitive_polynomial<F: Field>(f: &F, deg: usize) -> Result<Vec<u32>> {
    let s = f.size() as u64;
    let big = checked_pow(s, deg as u32)?;
    let order = big - 1;
    let primes: Vec<u64> = factorize(order as u128)
        .into_iter()
        .map(|(p, _)| p as u64)
        .collect();
    let mut x = vec![0u32; deg];
    if deg == 1 {
        // x is the constant residue -c_0; search over primitive roots directly.
        for c in 1..s as u32 {
            let root = vec![f.neg(c)];
            let modulus = vec![c, 1];
            if is_primitive(f, &root, order, &primes, &modulus) {
                return Ok(modulus);
            }
        }
        return Err(Error::invalid("no primitive element found"));
    }
    x[1] = 1;
    for idx in 0..big {
        let mut modulus: Vec<u32> = (0..deg)
            .map(|i| (idx / s.pow(i as u32) % s) as u32)
            .collect();
        if modulus[0] == 0 {
            continue;
        }
        modulus.push(1);
        if is_primitive(f, &x, order, &primes, &modulus) {
            return Ok(modulus);
        }
    }
    Err(Error::invalid("no primitive polynomial found"))
}

fn is_primitive<F: Field>(f: &F, x: &[u32], order: u64, primes: &[u64], modulus: &[u32]) -> bool {
    let deg = modulus.len() - 1;
    let mut one = vec![0u32; deg];
    one[0] = 1;
    if poly_powmod(f, x, order, modulus) != one {
        return false;
    }
    primes
        .iter()
        .all(|&l| poly_powmod(f, x, order / l, modulus) != one)
}

/// Frobenius orbits live on elements (Φ) or on characters (Θ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Phi,
    Theta,
}

/// A q-cyclotomic coset `{e q^i mod q^m - 1}` that does not descend to a
/// smaller level, named by its minimal member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CyclotomicCoset {
    pub side: Side,
    pub level: u32,
    pub rep: u64,
}

/// Canonical coset of the exponent `e` at level `m`, descended to the minimal
/// level containing it.
pub fn frobenius_coset(side: Side, q: u64, m: u32, e: u64) -> Result<CyclotomicCoset> {
    if m == 0 {
        return Err(Error::invalid("level must be positive"));
    }
    let modulus = checked_pow(q, m)? - 1;
    let e = if modulus == 0 { 0 } else { e % modulus };
    let mut level = m;
    let mut exp = e;
    for m0 in 1..m {
        if !m.is_multiple_of(m0) {
            continue;
        }
        let step = modulus / (q.pow(m0) - 1);
        if exp % step == 0 {
            level = m0;
            exp /= step;
            break;
        }
    }
    let modulus = q.pow(level) - 1;
    let rep = orbit(q, level, exp).into_iter().min().unwrap_or(0);
    debug_assert!(modulus == 0 || rep < modulus);
    Ok(CyclotomicCoset { side, level, rep })
}

fn orbit(q: u64, level: u32, e: u64) -> Vec<u64> {
    let modulus = q.pow(level) - 1;
    if modulus <= 1 {
        return vec![0];
    }
    let mut out = vec![e % modulus];
    let mut x = e % modulus * q % modulus;
    while x != out[0] {
        out.push(x);
        x = x * q % modulus;
    }
    out
}

impl CyclotomicCoset {
    /// The coset of the identity element (Φ) or of the trivial character (Θ).
    pub fn identity(side: Side) -> Self {
        CyclotomicCoset {
            side,
            level: 1,
            rep: 0,
        }
    }

    /// All exponents in the coset, at its own level.
    pub fn members(&self, q: u64) -> Vec<u64> {
        let mut m = orbit(q, self.level, self.rep);
        m.sort_unstable();
        m
    }

    /// Degree of the Frobenius orbit: `deg f` on Φ, `|φ|` on Θ.
    pub fn degree(&self) -> u32 {
        self.level
    }

    /// The representative exponent re-expressed at a multiple level.
    pub fn exponent_at(&self, q: u64, level: u32) -> u64 {
        assert!(level.is_multiple_of(self.level));
        let step = (q.pow(level) - 1) / (q.pow(self.level) - 1);
        self.rep * step
    }
}

/// Every coset of size at most `max_degree`, ordered by level then representative.
pub fn enumerate_cosets(q: u64, side: Side, max_degree: u32) -> Result<Vec<CyclotomicCoset>> {
    prime_power(q)?;
    let mut out = Vec::new();
    for m in 1..=max_degree {
        let modulus = checked_pow(q, m)? - 1;
        if modulus > crate::numbers::MODULUS_LIMIT {
            return Err(Error::capacity(format!(
                "q^{m} - 1 exceeds the modulus limit"
            )));
        }
        for e in 0..modulus.max(1) {
            let c = frobenius_coset(side, q, m, e)?;
            if c.level == m && c.rep == e {
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// `F_{q^D}` with discrete-log tables, hosting every level `1..=M`.
#[derive(Debug, Clone)]
pub struct FieldTower {
    q: u64,
    fq: Fq,
    max_level: u32,
    degree: u32,
    size: u64,
    /// exp[k] = code of G^k
    exp: Vec<u32>,
    /// log[code] = k, with log[0] unused
    log: Vec<u32>,
}

impl FieldTower {
    pub fn new(q: u64, max_level: u32) -> Result<Self> {
        let fq = Fq::new(q)?;
        if max_level == 0 {
            return Err(Error::invalid("tower depth must be positive"));
        }
        let degree = (1..=max_level as u64).fold(1, lcm) as u32;
        let size = q
            .checked_pow(degree)
            .filter(|&s| s <= FIELD_SIZE_LIMIT)
            .ok_or_else(|| {
                Error::capacity(format!(
                    "F_{q}^{degree} exceeds the discrete-log table limit"
                ))
            })?;
        let modulus = primitive_polynomial(&fq, degree as usize)?;
        let deg = degree as usize;
        let mut exp = Vec::with_capacity(size as usize - 1);
        let mut log = vec![0u32; size as usize];
        let mut cur = vec![0u32; deg];
        cur[0] = 1;
        let encode = |v: &[u32]| v.iter().rev().fold(0u64, |acc, &d| acc * q + d as u64) as u32;
        for k in 0..size - 1 {
            let code = encode(&cur);
            exp.push(code);
            log[code as usize] = k as u32;
            // multiply by x
            let top = cur[deg - 1];
            for i in (1..deg).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (i, c) in cur.iter_mut().enumerate() {
                    *c = fq.sub(*c, fq.mul(top, modulus[i]));
                }
            }
        }
        Ok(FieldTower {
            q,
            fq,
            max_level,
            degree,
            size,
            exp,
            log,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn fq(&self) -> &Fq {
        &self.fq
    }

    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    fn check_level(&self, m: u32) -> Result<()> {
        if m == 0 || !self.degree.is_multiple_of(m) || m > self.max_level {
            return Err(Error::capacity(format!(
                "level {m} is outside a tower of depth {}",
                self.max_level
            )));
        }
        Ok(())
    }

    fn step(&self, m: u32) -> u64 {
        (self.size - 1) / (self.q.pow(m) - 1)
    }

    /// Code in `F_{q^D}` of `g_m^e`.
    pub fn element(&self, m: u32, e: u64) -> Result<u32> {
        self.check_level(m)?;
        let modulus = self.q.pow(m) - 1;
        let k = (e % modulus) * self.step(m);
        Ok(self.exp[k as usize])
    }

    /// Exponent of a nonzero `F_q` element with respect to `g_1`.
    pub fn fq_log(&self, c: u32) -> Option<u64> {
        if c == 0 || c as u64 >= self.q {
            return None;
        }
        let k = self.log[c as usize] as u64;
        Some(k / self.step(1))
    }

    /// `g_1^e` as an `F_q` code.
    pub fn fq_element(&self, e: u64) -> u32 {
        self.element(1, e).expect("level 1 always exists")
    }

    fn big_add(&self, a: u32, b: u32) -> u32 {
        let q = self.q as u32;
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.degree {
            out += self.fq.add(a % q, b % q) * place;
            a /= q;
            b /= q;
            place = place.wrapping_mul(q);
        }
        out
    }

    fn big_mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.size - 1);
        self.exp[k as usize]
    }

    fn big_neg(&self, a: u32) -> u32 {
        let q = self.q as u32;
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.degree {
            out += self.fq.neg(a % q) * place;
            a /= q;
            place = place.wrapping_mul(q);
        }
        out
    }

    /// Monic minimal polynomial over `F_q` (low-to-high `F_q` codes) of the
    /// elements in a Φ-side coset: `∏_i (t - g_m^{e q^i})`.
    pub fn minimal_polynomial(&self, c: &CyclotomicCoset) -> Result<Vec<u32>> {
        if c.side != Side::Phi {
            return Err(Error::invalid(
                "minimal polynomials are defined for Φ-side cosets",
            ));
        }
        self.check_level(c.level)?;
        let mut poly = vec![1u32];
        for e in c.members(self.q) {
            let root = self.element(c.level, e)?;
            let neg_root = self.big_neg(root);
            let mut next = vec![0u32; poly.len() + 1];
            for (i, &a) in poly.iter().enumerate() {
                next[i + 1] = self.big_add(next[i + 1], a);
                next[i] = self.big_add(next[i], self.big_mul(a, neg_root));
            }
            poly = next;
        }
        if poly.iter().any(|&a| a as u64 >= self.q) {
            return Err(Error::Falsification(format!(
                "minimal polynomial of {c:?} has coefficients outside F_q"
            )));
        }
        Ok(poly)
    }
}
