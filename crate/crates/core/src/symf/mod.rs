//! Symmetric functions in one alphabet per Frobenius orbit.
//!
//! Each Θ-coset `φ` carries an alphabet `Y_φ` and each Φ-coset `f` an alphabet
//! `X_f`; the power sums `p_r(c)` of all alphabets are free polynomial
//! generators of degree `r·level(c)`. Elements are stored in any of three
//! bases (power sums, Schur `S_λ`, Hall-Littlewood `P̃_μ`) and converted
//! through the power-sum basis, where product and coproduct are trivial.

mod single;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize};

use crate::combin::{Partition, PartitionFn};
use crate::ffield::{frobenius_coset, CyclotomicCoset, Side};
use crate::numbers::arith::checked_pow;
use crate::numbers::{CycNumber, Rational};
use crate::{Error, Result};

pub use single::{
    hall_littlewood, hl_monomial_coeff, power_monomial_coeff, transition, z, Family, Transition,
};

/// One generator `p_r(c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PowerFactor {
    pub coset: CyclotomicCoset,
    pub r: u32,
}

impl PowerFactor {
    pub fn degree(&self) -> u32 {
        self.r * self.coset.level
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BasisKind {
    PowerSum,
    Schur,
    PTilde,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BasisLabel {
    /// A product of generators, sorted.
    PowerSum { factors: Vec<PowerFactor> },
    /// `S_λ = ∏_φ s_{λ(φ)}(Y_φ)` for a Θ-side parameter.
    Schur { param: PartitionFn },
    /// `P̃_μ = ∏_f P̃_{μ(f)}(X_f)` for a Φ-side parameter.
    Ptilde { param: PartitionFn },
}

impl BasisLabel {
    pub fn kind(&self) -> BasisKind {
        match self {
            BasisLabel::PowerSum { .. } => BasisKind::PowerSum,
            BasisLabel::Schur { .. } => BasisKind::Schur,
            BasisLabel::Ptilde { .. } => BasisKind::PTilde,
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            BasisLabel::PowerSum { factors } => factors.iter().map(PowerFactor::degree).sum(),
            BasisLabel::Schur { param } | BasisLabel::Ptilde { param } => param.weight(),
        }
    }

    fn check(&self) -> Result<()> {
        match self {
            BasisLabel::PowerSum { factors } => {
                if factors.iter().any(|f| f.r == 0 || f.coset.level == 0) {
                    return Err(Error::invalid(
                        "power-sum factors need positive r and level",
                    ));
                }
            }
            BasisLabel::Schur { param } => {
                if param.side() == Some(Side::Phi) {
                    return Err(Error::invalid("Schur labels live on Θ"));
                }
            }
            BasisLabel::Ptilde { param } => {
                if param.side() == Some(Side::Theta) {
                    return Err(Error::invalid("P̃ labels live on Φ"));
                }
            }
        }
        Ok(())
    }
}

type Monomial = Vec<PowerFactor>;
type Poly = BTreeMap<Monomial, CycNumber>;

/// A finite linear combination of basis labels with cyclotomic coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymElement {
    terms: BTreeMap<BasisLabel, CycNumber>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    label: BasisLabel,
    coeff: CycNumber,
}

impl SymElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_label(BasisLabel::PowerSum {
            factors: Vec::new(),
        })
    }

    pub fn from_label(label: BasisLabel) -> Self {
        Self::from_terms([(label, CycNumber::one())])
    }

    /// Sums repeated labels and drops zeros; power-sum factors are sorted.
    pub fn from_terms(terms: impl IntoIterator<Item = (BasisLabel, CycNumber)>) -> Self {
        let mut out = SymElement::zero();
        for (mut label, c) in terms {
            if let BasisLabel::PowerSum { factors } = &mut label {
                factors.sort();
            }
            out.add_term(label, &c);
        }
        out
    }

    fn add_term(&mut self, label: BasisLabel, c: &CycNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(label) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// `p_r(c)`.
    pub fn power_sum(r: u32, coset: CyclotomicCoset) -> Self {
        Self::from_label(BasisLabel::PowerSum {
            factors: vec![PowerFactor { coset, r }],
        })
    }

    pub fn schur(param: PartitionFn) -> Self {
        Self::from_label(BasisLabel::Schur { param })
    }

    pub fn ptilde(param: PartitionFn) -> Self {
        Self::from_label(BasisLabel::Ptilde { param })
    }

    pub fn terms(&self) -> &BTreeMap<BasisLabel, CycNumber> {
        &self.terms
    }

    pub fn coeff(&self, label: &BasisLabel) -> CycNumber {
        self.terms
            .get(label)
            .cloned()
            .unwrap_or_else(CycNumber::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common basis kind, or `None` for zero or mixed elements.
    pub fn kind(&self) -> Option<BasisKind> {
        let mut kinds = self.terms.keys().map(BasisLabel::kind);
        let first = kinds.next()?;
        kinds.all(|k| k == first).then_some(first)
    }

    /// The degree if all terms share one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(BasisLabel::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, other: &SymElement) -> SymElement {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &SymElement) -> SymElement {
        self.add(&other.scale(&CycNumber::from_integer(-1)))
    }

    pub fn scale(&self, c: &CycNumber) -> SymElement {
        if c.is_zero() {
            return SymElement::zero();
        }
        SymElement {
            terms: self.terms.iter().map(|(l, x)| (l.clone(), x * c)).collect(),
        }
    }

    /// Applies the field automorphism `ζ ↦ ζ^r` to every coefficient.
    pub fn galois_coeffs(&self, r: i64) -> Result<SymElement> {
        let terms = self
            .terms
            .iter()
            .map(|(l, c)| Ok((l.clone(), c.galois(r)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SymElement::from_terms(terms))
    }

    fn to_poly(&self, q: u64) -> Result<Poly> {
        let mut out = Poly::new();
        for (label, c) in &self.terms {
            label.check()?;
            match label {
                BasisLabel::PowerSum { factors } => {
                    poly_add_term(&mut out, factors.clone(), c.clone())
                }
                BasisLabel::Schur { param } | BasisLabel::Ptilde { param } => {
                    for (m, x) in label_poly(param, label.kind(), q)? {
                        poly_add_term(&mut out, m, &x * c);
                    }
                }
            }
        }
        Ok(out)
    }

    fn from_poly(p: Poly) -> SymElement {
        SymElement {
            terms: p
                .into_iter()
                .map(|(m, c)| (BasisLabel::PowerSum { factors: m }, c))
                .collect(),
        }
    }

    /// Re-expresses the element in the power-sum basis.
    pub fn to_power_sums(&self, q: u64) -> Result<SymElement> {
        Ok(Self::from_poly(self.to_poly(q)?))
    }

    /// Re-expresses the element in the given basis. Schur labels need every
    /// alphabet on Θ, `P̃` labels every alphabet on Φ.
    pub fn in_basis(&self, kind: BasisKind, q: u64) -> Result<SymElement> {
        let poly = self.to_poly(q)?;
        match kind {
            BasisKind::PowerSum => Ok(Self::from_poly(poly)),
            BasisKind::Schur => expand_poly(&poly, Side::Theta, q),
            BasisKind::PTilde => expand_poly(&poly, Side::Phi, q),
        }
    }

    /// The algebra morphism sending each generator `p_r(c)` to `image(r, c)`.
    pub fn substitute<F>(&self, q: u64, mut image: F) -> Result<SymElement>
    where
        F: FnMut(&PowerFactor) -> Result<SymElement>,
    {
        let mut memo: BTreeMap<PowerFactor, Poly> = BTreeMap::new();
        let mut out = Poly::new();
        for (m, c) in self.to_poly(q)? {
            let mut acc: Poly = Poly::from([(Vec::new(), c)]);
            for f in &m {
                if !memo.contains_key(f) {
                    memo.insert(*f, image(f)?.to_poly(q)?);
                }
                acc = poly_mul(&acc, &memo[f]);
            }
            for (k, v) in acc {
                poly_add_term(&mut out, k, v);
            }
        }
        Ok(Self::from_poly(out))
    }
}

impl Serialize for SymElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (label, coeff) in &self.terms {
            seq.serialize_element(&TermJson {
                label: label.clone(),
                coeff: coeff.clone(),
            })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for SymElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<TermJson>::deserialize(d)?;
        for t in &raw {
            t.label.check().map_err(serde::de::Error::custom)?;
        }
        Ok(SymElement::from_terms(
            raw.into_iter().map(|t| (t.label, t.coeff)),
        ))
    }
}

fn poly_add_term(p: &mut Poly, m: Monomial, c: CycNumber) {
    if c.is_zero() {
        return;
    }
    match p.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

fn merge(a: &[PowerFactor], b: &[PowerFactor]) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            poly_add_term(&mut out, merge(ma, mb), ca * cb);
        }
    }
    out
}

fn family(kind: BasisKind, c: &CyclotomicCoset, q: u64) -> Result<Family> {
    Ok(match kind {
        BasisKind::Schur => Family::Schur,
        BasisKind::PTilde => Family::PTilde(checked_pow(q, c.level)?),
        BasisKind::PowerSum => unreachable!("power sums need no transition"),
    })
}

/// Power-sum expansion of a Schur or `P̃` label.
fn label_poly(param: &PartitionFn, kind: BasisKind, q: u64) -> Result<Poly> {
    let mut acc: Poly = Poly::from([(Vec::new(), CycNumber::one())]);
    for (c, lam) in param.entries() {
        let t = transition(&family(kind, c, q)?, lam.size());
        let row = &t.to_p[t.index[lam]];
        let mut factor = Poly::new();
        for (rho, x) in t.partitions.iter().zip(row) {
            if x.is_zero() {
                continue;
            }
            let m: Monomial = rho
                .parts()
                .iter()
                .rev()
                .map(|&r| PowerFactor { coset: *c, r })
                .collect();
            factor.insert(m, CycNumber::from_rational(x));
        }
        acc = poly_mul(&acc, &factor);
    }
    Ok(acc)
}

/// Rewrites a power-sum polynomial in the Schur (Θ) or `P̃` (Φ) basis.
fn expand_poly(poly: &Poly, side: Side, q: u64) -> Result<SymElement> {
    let kind = if side == Side::Theta {
        BasisKind::Schur
    } else {
        BasisKind::PTilde
    };
    let mut out = SymElement::zero();
    for (m, coeff) in poly {
        if m.iter().any(|f| f.coset.side != side) {
            return Err(Error::invalid(format!(
                "{kind:?} expansion needs every alphabet on {side:?}"
            )));
        }
        // group generators by alphabet
        let mut by_coset: BTreeMap<CyclotomicCoset, Vec<u32>> = BTreeMap::new();
        for f in m {
            by_coset.entry(f.coset).or_default().push(f.r);
        }
        let mut acc: Vec<(Vec<(CyclotomicCoset, Partition)>, Rational)> =
            vec![(Vec::new(), Rational::one())];
        for (c, rs) in by_coset {
            let rho = Partition::new(rs)?;
            let t = transition(&family(kind, &c, q)?, rho.size());
            let row = &t.from_p[t.index[&rho]];
            let mut next = Vec::new();
            for (entries, x) in &acc {
                for (lam, y) in t.partitions.iter().zip(row) {
                    if y.is_zero() {
                        continue;
                    }
                    let mut e = entries.clone();
                    e.push((c, lam.clone()));
                    next.push((e, x * y));
                }
            }
            acc = next;
        }
        for (entries, x) in acc {
            let param = PartitionFn::new(entries)?;
            let label = match kind {
                BasisKind::Schur => BasisLabel::Schur { param },
                _ => BasisLabel::Ptilde { param },
            };
            out.add_term(label, &(coeff * &CycNumber::from_rational(&x)));
        }
    }
    Ok(out)
}

/// `∏_f q_f^{-n(μ(f))} P_{μ(f)}(X_f; q_f^{-1})` in power sums.
pub fn ptilde_in_power_sums(mu: &PartitionFn, q: u64) -> Result<SymElement> {
    SymElement::ptilde(mu.clone()).to_power_sums(q)
}

/// `∏_φ s_{λ(φ)}(Y_φ)` in power sums.
pub fn schur_in_power_sums(lam: &PartitionFn) -> Result<SymElement> {
    SymElement::schur(lam.clone()).to_power_sums(2)
}

/// Product, returned in power sums.
pub fn multiply(a: &SymElement, b: &SymElement, q: u64) -> Result<SymElement> {
    Ok(SymElement::from_poly(poly_mul(
        &a.to_poly(q)?,
        &b.to_poly(q)?,
    )))
}

/// An element of `Sym ⊗ Sym`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tensor {
    terms: BTreeMap<(BasisLabel, BasisLabel), CycNumber>,
}

#[derive(Serialize)]
struct TensorTermJson<'a> {
    left: &'a BasisLabel,
    right: &'a BasisLabel,
    coeff: &'a CycNumber,
}

impl Serialize for Tensor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for ((left, right), coeff) in &self.terms {
            seq.serialize_element(&TensorTermJson { left, right, coeff })?;
        }
        seq.end()
    }
}

impl Tensor {
    pub fn terms(&self) -> &BTreeMap<(BasisLabel, BasisLabel), CycNumber> {
        &self.terms
    }

    pub fn from_terms(
        terms: impl IntoIterator<Item = ((BasisLabel, BasisLabel), CycNumber)>,
    ) -> Self {
        let mut out = Tensor::default();
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    fn add_term(&mut self, key: (BasisLabel, BasisLabel), c: &CycNumber) {
        if c.is_zero() {
            return;
        }
        let s = self.terms.get(&key).map_or_else(|| c.clone(), |x| x + c);
        if s.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, s);
        }
    }

    /// `a ⊗ b`.
    pub fn pure(a: &SymElement, b: &SymElement) -> Self {
        let mut out = Tensor::default();
        for (la, ca) in &a.terms {
            for (lb, cb) in &b.terms {
                out.add_term((la.clone(), lb.clone()), &(ca * cb));
            }
        }
        out
    }

    pub fn coeff(&self, left: &BasisLabel, right: &BasisLabel) -> CycNumber {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(CycNumber::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), &-c);
        }
        out
    }

    /// Re-expresses both tensor factors in the given basis.
    pub fn in_basis(&self, kind: BasisKind, q: u64) -> Result<Tensor> {
        let mut out = Tensor::default();
        for ((l, r), c) in &self.terms {
            let left = SymElement::from_label(l.clone()).in_basis(kind, q)?;
            let right = SymElement::from_label(r.clone()).in_basis(kind, q)?;
            for (ll, cl) in &left.terms {
                for (rl, cr) in &right.terms {
                    out.add_term((ll.clone(), rl.clone()), &(&(c * cl) * cr));
                }
            }
        }
        Ok(out)
    }
}

/// `Δ`, with every `p_r(c)` primitive; result in power sums.
pub fn comultiply(a: &SymElement, q: u64) -> Result<Tensor> {
    let mut out = Tensor::default();
    for (m, c) in a.to_poly(q)? {
        // distinct generators with multiplicities
        let mut groups: Vec<(PowerFactor, u32)> = Vec::new();
        for f in &m {
            match groups.last_mut() {
                Some((g, k)) if g == f => *k += 1,
                _ => groups.push((*f, 1)),
            }
        }
        let mut acc: Vec<(Monomial, Monomial, BigInt)> =
            vec![(Vec::new(), Vec::new(), BigInt::one())];
        for (g, k) in groups {
            let mut next = Vec::new();
            for (l, r, w) in &acc {
                let mut binom = BigInt::one();
                for j in 0..=k {
                    let mut l2 = l.clone();
                    l2.extend(std::iter::repeat_n(g, j as usize));
                    let mut r2 = r.clone();
                    r2.extend(std::iter::repeat_n(g, (k - j) as usize));
                    next.push((l2, r2, w * &binom));
                    binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
                }
            }
            acc = next;
        }
        for (l, r, w) in acc {
            let coeff = &c * &CycNumber::from_rational(&Rational::from_integer(w));
            out.add_term(
                (
                    BasisLabel::PowerSum { factors: l },
                    BasisLabel::PowerSum { factors: r },
                ),
                &coeff,
            );
        }
    }
    Ok(out)
}

/// The generator paired with `g`: itself on Θ, the inverse orbit on Φ.
fn dual_factor(g: &PowerFactor, q: u64) -> Result<PowerFactor> {
    if g.coset.side == Side::Theta {
        return Ok(*g);
    }
    let modulus = checked_pow(q, g.coset.level)? - 1;
    let e = if modulus == 0 {
        0
    } else {
        (modulus - g.coset.rep % modulus) % modulus
    };
    Ok(PowerFactor {
        coset: frobenius_coset(Side::Phi, q, g.coset.level, e)?,
        r: g.r,
    })
}

/// `⟨g, dual(g)⟩`: `r` on Θ, `r/(q^{r·level} - 1)` on Φ.
fn generator_norm(g: &PowerFactor, q: u64) -> Result<Rational> {
    match g.coset.side {
        Side::Theta => Ok(Rational::from_integer(BigInt::from(g.r))),
        Side::Phi => {
            let n = checked_pow(q, g.degree())? - 1;
            Ok(Rational::new(BigInt::from(g.r), BigInt::from(n)))
        }
    }
}

fn monomial_pairing(a: &[PowerFactor], b: &[PowerFactor], q: u64) -> Result<Rational> {
    if a.len() != b.len() {
        return Ok(Rational::zero());
    }
    let mut dual: Vec<PowerFactor> = a.iter().map(|g| dual_factor(g, q)).collect::<Result<_>>()?;
    dual.sort();
    if dual != b {
        return Ok(Rational::zero());
    }
    let mut out = Rational::one();
    let mut i = 0;
    while i < a.len() {
        let mut k = 1u64;
        while i + (k as usize) < a.len() && a[i + k as usize] == a[i] {
            k += 1;
        }
        let norm = generator_norm(&a[i], q)?;
        for j in 1..=k {
            out *= &norm * Rational::from_integer(BigInt::from(j));
        }
        i += k as usize;
    }
    Ok(out)
}

/// The bilinear Hall pairing. Schur labels are orthonormal; on Φ-alphabets the
/// pairing is the one carried over from the Θ side along the characteristic
/// map, so that `⟨P̃_μ, P̃_ν⟩ = δ_{ν,μ*}/a_μ` with `μ*` the inverse class.
pub fn pairing(a: &SymElement, b: &SymElement, q: u64) -> Result<CycNumber> {
    let (pa, pb) = (a.to_poly(q)?, b.to_poly(q)?);
    let mut out = CycNumber::zero();
    for (ma, ca) in &pa {
        for (mb, cb) in &pb {
            let w = monomial_pairing(ma, mb, q)?;
            if !w.is_zero() {
                out += &(&(ca * cb) * &CycNumber::from_rational(&w));
            }
        }
    }
    Ok(out)
}

/// `⟨a ⊗ b, T⟩ = Σ ⟨a, l⟩⟨b, r⟩`.
pub fn tensor_pairing(a: &Tensor, b: &Tensor, q: u64) -> Result<CycNumber> {
    let mut out = CycNumber::zero();
    for ((la, ra), ca) in &a.terms {
        for ((lb, rb), cb) in &b.terms {
            let left = pairing(
                &SymElement::from_label(la.clone()),
                &SymElement::from_label(lb.clone()),
                q,
            )?;
            if left.is_zero() {
                continue;
            }
            let right = pairing(
                &SymElement::from_label(ra.clone()),
                &SymElement::from_label(rb.clone()),
                q,
            )?;
            out += &(&(&left * &right) * &(ca * cb));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::enumerate_params;
    use crate::numbers::{int, rat};
    use proptest::prelude::*;

    fn theta(level: u32, rep: u64) -> CyclotomicCoset {
        CyclotomicCoset {
            side: Side::Theta,
            level,
            rep,
        }
    }

    fn phi(level: u32, rep: u64) -> CyclotomicCoset {
        CyclotomicCoset {
            side: Side::Phi,
            level,
            rep,
        }
    }

    fn pf(r: u32, c: CyclotomicCoset) -> PowerFactor {
        PowerFactor { coset: c, r }
    }

    fn pmono(fs: &[PowerFactor]) -> BasisLabel {
        let mut v = fs.to_vec();
        v.sort();
        BasisLabel::PowerSum { factors: v }
    }

    fn r(x: Rational) -> CycNumber {
        CycNumber::from_rational(&x)
    }

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn schur_expansions() {
        let c = theta(1, 0);
        let s1 = schur_in_power_sums(&PartitionFn::single(c, part(&[1]))).unwrap();
        assert_eq!(s1, SymElement::power_sum(1, c));
        let s2 = schur_in_power_sums(&PartitionFn::single(c, part(&[2]))).unwrap();
        let expected = SymElement::from_terms([
            (pmono(&[pf(1, c), pf(1, c)]), r(rat(1, 2))),
            (pmono(&[pf(2, c)]), r(rat(1, 2))),
        ]);
        assert_eq!(s2, expected);
        let s11 = schur_in_power_sums(&PartitionFn::single(c, part(&[1, 1]))).unwrap();
        assert_eq!(s11.coeff(&pmono(&[pf(2, c)])), r(rat(-1, 2)));
    }

    #[test]
    fn ptilde_expansions() {
        let f = phi(1, 0);
        let p11 = ptilde_in_power_sums(&PartitionFn::single(f, part(&[1, 1])), 2).unwrap();
        assert_eq!(p11.coeff(&pmono(&[pf(1, f), pf(1, f)])), r(rat(1, 4)));
        assert_eq!(p11.coeff(&pmono(&[pf(2, f)])), r(rat(-1, 4)));
        let p2 = ptilde_in_power_sums(&PartitionFn::single(f, part(&[2])), 2).unwrap();
        assert_eq!(p2.coeff(&pmono(&[pf(1, f), pf(1, f)])), r(rat(1, 4)));
        assert_eq!(p2.coeff(&pmono(&[pf(2, f)])), r(rat(3, 4)));
        // q_f = q^level for a degree-2 alphabet
        let g = phi(2, 1);
        let pg = ptilde_in_power_sums(&PartitionFn::single(g, part(&[1, 1])), 2).unwrap();
        assert_eq!(pg.coeff(&pmono(&[pf(1, g), pf(1, g)])), r(rat(1, 8)));
    }

    #[test]
    fn products_and_basis_change() {
        let c = theta(1, 0);
        let s1 = SymElement::schur(PartitionFn::single(c, part(&[1])));
        let sq = multiply(&s1, &s1, 2)
            .unwrap()
            .in_basis(BasisKind::Schur, 2)
            .unwrap();
        let expected = SymElement::from_terms([
            (
                BasisLabel::Schur {
                    param: PartitionFn::single(c, part(&[2])),
                },
                CycNumber::one(),
            ),
            (
                BasisLabel::Schur {
                    param: PartitionFn::single(c, part(&[1, 1])),
                },
                CycNumber::one(),
            ),
        ]);
        assert_eq!(sq, expected);
        let f = phi(1, 0);
        let prod = multiply(
            &SymElement::power_sum(1, f),
            &SymElement::power_sum(2, f),
            2,
        )
        .unwrap();
        assert_eq!(prod, SymElement::from_label(pmono(&[pf(1, f), pf(2, f)])));
        let one = SymElement::one();
        assert_eq!(
            multiply(&one, &sq, 2).unwrap(),
            sq.to_power_sums(2).unwrap()
        );
        assert!(sq
            .to_power_sums(2)
            .unwrap()
            .in_basis(BasisKind::PTilde, 2)
            .is_err());
    }

    #[test]
    fn coproduct_examples() {
        let c = theta(1, 0);
        let p1 = SymElement::power_sum(1, c);
        let d = comultiply(&p1, 2).unwrap();
        let one = BasisLabel::PowerSum { factors: vec![] };
        assert_eq!(
            d,
            Tensor::from_terms([
                ((pmono(&[pf(1, c)]), one.clone()), CycNumber::one()),
                ((one.clone(), pmono(&[pf(1, c)])), CycNumber::one()),
            ])
        );
        let d2 = comultiply(&multiply(&p1, &p1, 2).unwrap(), 2).unwrap();
        assert_eq!(
            d2.coeff(&pmono(&[pf(1, c)]), &pmono(&[pf(1, c)])),
            CycNumber::from_integer(2)
        );
        assert_eq!(d2.terms().len(), 3);
        let s2 = SymElement::schur(PartitionFn::single(c, part(&[2])));
        let ds2 = comultiply(&s2, 2)
            .unwrap()
            .in_basis(BasisKind::Schur, 2)
            .unwrap();
        let s = |p: &[u32]| BasisLabel::Schur {
            param: if p.is_empty() {
                PartitionFn::empty()
            } else {
                PartitionFn::single(c, part(p))
            },
        };
        assert_eq!(
            ds2,
            Tensor::from_terms([
                ((s(&[2]), s(&[])), CycNumber::one()),
                ((s(&[1]), s(&[1])), CycNumber::one()),
                ((s(&[]), s(&[2])), CycNumber::one()),
            ])
        );
    }

    #[test]
    fn pairing_examples() {
        let c = theta(1, 0);
        for p in enumerate_params(3, 2, Side::Theta).unwrap() {
            let s = SymElement::schur(p.clone());
            assert_eq!(pairing(&s, &s, 2).unwrap(), CycNumber::one());
        }
        let s2 = SymElement::schur(PartitionFn::single(c, part(&[2])));
        let s11 = SymElement::schur(PartitionFn::single(c, part(&[1, 1])));
        assert!(pairing(&s2, &s11, 2).unwrap().is_zero());
        let id = SymElement::ptilde(PartitionFn::single(phi(1, 0), part(&[1, 1])));
        assert_eq!(pairing(&id, &id, 2).unwrap(), r(rat(1, 6)));
        // GL_1(F_3): the class of 2 = g^1 is its own inverse; ⟨π, π⟩ = 1/2
        let x = SymElement::ptilde(PartitionFn::single(phi(1, 1), part(&[1])));
        assert_eq!(pairing(&x, &x, 3).unwrap(), r(rat(1, 2)));
        // GL_1(F_4): classes g and g^2 are mutually inverse
        let a = SymElement::ptilde(PartitionFn::single(phi(1, 1), part(&[1])));
        let b = SymElement::ptilde(PartitionFn::single(phi(1, 2), part(&[1])));
        assert!(pairing(&a, &a, 4).unwrap().is_zero());
        assert_eq!(pairing(&a, &b, 4).unwrap(), r(rat(1, 3)));
    }

    #[test]
    fn ptilde_pairing_gives_inverse_centralizer_orders_gl2_f3() {
        // a_μ for GL_2(F_3): identity 48, transvection 6, central -1 48,
        // -J_2 6, diag(1,-1) 4, elliptic classes 8
        let params = enumerate_params(2, 3, Side::Phi).unwrap();
        let mut total = Rational::zero();
        for mu in &params {
            let e = SymElement::ptilde(mu.clone());
            let mut best = Rational::zero();
            for nu in &params {
                let v = pairing(&e, &SymElement::ptilde(nu.clone()), 3).unwrap();
                if let Some(x) = v.as_rational() {
                    if !x.is_zero() {
                        best = x;
                    }
                }
            }
            total += Rational::from_integer(48.into()) * best;
        }
        // Σ |G|/a_μ = Σ class sizes = |G|
        assert_eq!(total, int(48));
    }

    #[test]
    fn adjointness_on_small_basis() {
        let q = 3;
        let mut labels = Vec::new();
        for n in 0..=3 {
            for p in enumerate_params(n, q, Side::Theta).unwrap() {
                labels.push(SymElement::schur(p));
            }
        }
        for a in labels
            .iter()
            .filter(|a| a.homogeneous_degree().unwrap() <= 1)
        {
            for b in labels
                .iter()
                .filter(|b| b.homogeneous_degree().unwrap() <= 2)
            {
                for c in &labels {
                    let da = a.homogeneous_degree().unwrap();
                    let db = b.homogeneous_degree().unwrap();
                    if c.homogeneous_degree().unwrap() != da + db {
                        continue;
                    }
                    let lhs = pairing(&multiply(a, b, q).unwrap(), c, q).unwrap();
                    let rhs =
                        tensor_pairing(&Tensor::pure(a, b), &comultiply(c, q).unwrap(), q).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn json_shape() {
        let c = theta(1, 0);
        let e = SymElement::schur(PartitionFn::single(c, part(&[2])));
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(
            s,
            r#"[{"label":{"kind":"schur","param":[{"coset":{"side":"theta","level":1,"rep":0},"partition":[2]}]},"coeff":{"order":1,"coeffs":["1/1"]}}]"#
        );
        let back: SymElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        let p = SymElement::power_sum(2, phi(1, 0)).scale(&r(rat(-3, 2)));
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains(r#""kind":"power_sum""#));
        assert_eq!(serde_json::from_str::<SymElement>(&s).unwrap(), p);
        let bad = r#"[{"label":{"kind":"schur","param":[{"coset":{"side":"phi","level":1,"rep":0},"partition":[1]}]},"coeff":{"order":1,"coeffs":["1/1"]}}]"#;
        assert!(serde_json::from_str::<SymElement>(bad).is_err());
    }

    fn arb_element() -> impl Strategy<Value = SymElement> {
        let gens = [
            pf(1, theta(1, 0)),
            pf(2, theta(1, 0)),
            pf(1, theta(1, 1)),
            pf(1, theta(2, 1)),
        ];
        proptest::collection::vec(
            (proptest::collection::vec(0usize..4, 0..3), -3i64..=3),
            1..4,
        )
        .prop_map(move |terms| {
            SymElement::from_terms(terms.into_iter().map(|(idx, c)| {
                (
                    pmono(&idx.iter().map(|&i| gens[i]).collect::<Vec<_>>()),
                    CycNumber::from_integer(c),
                )
            }))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn multiply_is_associative_and_commutative(a in arb_element(), b in arb_element(), c in arb_element()) {
            let ab = multiply(&a, &b, 3).unwrap();
            prop_assert_eq!(&ab, &multiply(&b, &a, 3).unwrap());
            prop_assert_eq!(multiply(&ab, &c, 3).unwrap(), multiply(&a, &multiply(&b, &c, 3).unwrap(), 3).unwrap());
        }

        #[test]
        fn schur_round_trip(a in arb_element()) {
            let s = a.in_basis(BasisKind::Schur, 3).unwrap();
            prop_assert_eq!(s.to_power_sums(3).unwrap(), a);
        }
    }
}
