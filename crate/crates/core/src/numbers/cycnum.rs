//! Exact arithmetic in cyclotomic fields `Q(ζ_E)`.
//!
//! An element is stored in the power basis `1, ζ, …, ζ^{φ(E)-1}` as integer
//! numerators over one common positive denominator. Rational elements are
//! always normalized to order 1, so the rational fast paths are taken
//! whenever possible. Mixed-order arithmetic lifts both operands to the lcm
//! of their orders.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::arith::{euler_phi, gcd, lcm};
use super::cyclotomic::cyclotomic_poly;
use super::rational::{parse_rational, rational_to_string, Rational};
use crate::{Error, Result};

#[derive(Clone)]
pub struct CycNumber {
    order: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNumber {
    pub fn zero() -> Self {
        CycNumber {
            order: 1,
            num: vec![BigInt::zero()],
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        CycNumber {
            order: 1,
            num: vec![BigInt::from(n)],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        CycNumber {
            order: 1,
            num: vec![r.numer().clone()],
            den: r.denom().clone(),
        }
    }

    /// `ζ_order^k`.
    pub fn root_of_unity(order: u64, k: i64) -> Self {
        assert!(order >= 1);
        let k = k.rem_euclid(order as i64) as usize;
        let mut poly = vec![BigInt::zero(); order as usize];
        poly[k] = BigInt::one();
        Self::from_poly(order, poly, BigInt::one())
    }

    /// Builds `Σ coeffs[i] ζ_order^i` for a coefficient list of any length.
    pub fn from_coeffs(order: u64, coeffs: &[Rational]) -> Self {
        assert!(order >= 1);
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let poly = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_poly(order, poly, den)
    }

    /// Reduces a polynomial in `ζ_order` (any length) to canonical form.
    fn from_poly(order: u64, mut poly: Vec<BigInt>, den: BigInt) -> Self {
        let e = order as usize;
        if poly.len() > e {
            for i in e..poly.len() {
                let c = std::mem::take(&mut poly[i]);
                if !c.is_zero() {
                    poly[i % e] += c;
                }
            }
            poly.truncate(e);
        }
        let phi = cyclotomic_poly(order);
        let deg = phi.len() - 1;
        for i in (deg..poly.len()).rev() {
            let c = std::mem::take(&mut poly[i]);
            if c.is_zero() {
                continue;
            }
            for (j, &pj) in phi.iter().enumerate().take(deg) {
                if pj != 0 {
                    poly[i - deg + j] -= &c * pj;
                }
            }
        }
        poly.resize(deg, BigInt::zero());
        let mut out = CycNumber {
            order,
            num: poly,
            den,
        };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        let g = self.num.iter().fold(self.den.clone(), |acc, c| acc.gcd(c));
        if !g.is_one() && !g.is_zero() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
        if self.order != 1 && self.num.iter().skip(1).all(Zero::is_zero) {
            let c0 = self.num.first().cloned().unwrap_or_default();
            self.order = 1;
            self.num = vec![c0];
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Coefficients in the power basis of `Q(ζ_order)`, length `φ(order)`.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        (self.order == 1).then(|| Rational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Re-expresses the element in `Q(ζ_target)`; `order` must divide `target`.
    pub fn lift(&self, target: u64) -> Self {
        assert!(
            target.is_multiple_of(self.order),
            "cannot lift order {} to {}",
            self.order,
            target
        );
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut poly = vec![BigInt::zero(); target as usize];
        for (i, c) in self.num.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Self::from_poly(target, poly, self.den.clone())
    }

    /// Coefficient vector in `Q(ζ_target)` without collapsing to order 1.
    fn dense(&self, target: u64) -> Vec<BigInt> {
        let phi = euler_phi(target) as usize;
        if self.order == target {
            return self.num.clone();
        }
        let lifted = self.lift(target);
        let mut v = vec![BigInt::zero(); phi];
        if lifted.order == 1 {
            v[0] = lifted.num[0].clone();
        } else {
            v.clone_from(&lifted.num);
        }
        v
    }

    /// Applies `σ_r : ζ ↦ ζ^r`; `r` must be coprime to the order.
    pub fn galois(&self, r: i64) -> Result<Self> {
        let e = self.order;
        let r = r.rem_euclid(e as i64) as u64;
        if gcd(r, e) != 1 && e != 1 {
            return Err(Error::InvalidResidue {
                residue: r,
                modulus: e,
            });
        }
        if e == 1 {
            return Ok(self.clone());
        }
        let mut poly = vec![BigInt::zero(); e as usize];
        for (i, c) in self.num.iter().enumerate() {
            poly[(i as u64 * r % e) as usize] += c;
        }
        Ok(Self::from_poly(e, poly, self.den.clone()))
    }

    /// Complex conjugate, `σ_{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is always a unit")
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = CycNumber {
            order: self.order,
            num: self.num.iter().map(|c| c * r.numer()).collect(),
            den: &self.den * r.denom(),
        };
        out.normalize();
        out
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::invalid("inverse of zero"));
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(&r.recip()));
        }
        let e = self.order;
        let mut others = CycNumber::one();
        for r in 2..e {
            if gcd(r, e) == 1 {
                others = &others * &self.galois(r as i64)?;
            }
        }
        let norm = (&others * self)
            .as_rational()
            .expect("the field norm is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let den = big_to_f64(&self.den);
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.num.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / self.order as f64;
            let c = big_to_f64(c) / den;
            re += c * theta.cos();
            im += c * theta.sin();
        }
        (re, im)
    }

    /// A real non-negative rational number.
    pub fn is_nonnegative_rational(&self) -> bool {
        self.as_rational().is_some_and(|r| !r.is_negative())
    }
}

fn big_to_f64(b: &BigInt) -> f64 {
    b.to_string().parse().unwrap_or(f64::NAN)
}

impl Default for CycNumber {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CycNumber {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for CycNumber {
    fn from(r: Rational) -> Self {
        Self::from_rational(&r)
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.den == other.den && self.num == other.num;
        }
        if self.order == 1 || other.order == 1 {
            // normalized rationals always carry order 1
            return false;
        }
        let target = lcm(self.order, other.order);
        let a = self.dense(target);
        let b = other.dense(target);
        a.iter()
            .zip(&b)
            .all(|(x, y)| x * &other.den == y * &self.den)
    }
}

impl Eq for CycNumber {}

impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: &CycNumber) -> CycNumber {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let target = lcm(self.order, rhs.order);
        let a = self.dense(target);
        let b = rhs.dense(target);
        let den = &self.den * &rhs.den;
        let num = a
            .iter()
            .zip(&b)
            .map(|(x, y)| x * &rhs.den + y * &self.den)
            .collect();
        let mut out = CycNumber {
            order: target,
            num,
            den,
        };
        out.normalize();
        out
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;

    fn sub(self, rhs: &CycNumber) -> CycNumber {
        self + &(-rhs)
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;

    fn neg(self) -> CycNumber {
        CycNumber {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;

    fn neg(self) -> CycNumber {
        -&self
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;

    fn mul(self, rhs: &CycNumber) -> CycNumber {
        if self.is_zero() || rhs.is_zero() {
            return CycNumber::zero();
        }
        if self.order == 1 {
            return rhs.scale(&Rational::new(self.num[0].clone(), self.den.clone()));
        }
        if rhs.order == 1 {
            return self.scale(&Rational::new(rhs.num[0].clone(), rhs.den.clone()));
        }
        let target = lcm(self.order, rhs.order);
        let a = self.dense(target);
        let b = rhs.dense(target);
        let mut poly = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        CycNumber::from_poly(target, poly, &self.den * &rhs.den)
    }
}

impl AddAssign<&CycNumber> for CycNumber {
    fn add_assign(&mut self, rhs: &CycNumber) {
        *self = &*self + rhs;
    }
}

impl Add for CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: CycNumber) -> CycNumber {
        &self + &rhs
    }
}

impl Sub for CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: CycNumber) -> CycNumber {
        &self - &rhs
    }
}

impl Mul for CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: CycNumber) -> CycNumber {
        &self * &rhs
    }
}

impl std::iter::Sum for CycNumber {
    fn sum<I: Iterator<Item = CycNumber>>(iter: I) -> Self {
        iter.fold(CycNumber::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                _ => write!(f, "({c})z{}^{i}", self.order)?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycJson {
    order: u64,
    coeffs: Vec<String>,
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycJson {
            order: self.order,
            coeffs: self.coeffs().iter().map(rational_to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CycJson::deserialize(d)?;
        CycNumber::from_json_parts(raw.order, &raw.coeffs).map_err(serde::de::Error::custom)
    }
}

/// Largest cyclotomic order accepted from external input.
pub const MAX_ORDER: u64 = 1 << 16;

impl CycNumber {
    fn from_json_parts(order: u64, coeffs: &[String]) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::Parse(format!(
                "cyclotomic order {order} out of range"
            )));
        }
        if coeffs.len() as u64 != euler_phi(order) {
            return Err(Error::Parse(format!(
                "order {order} needs {} coefficients, got {}",
                euler_phi(order),
                coeffs.len()
            )));
        }
        let parsed = coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycNumber::from_coeffs(order, &parsed))
    }
}
