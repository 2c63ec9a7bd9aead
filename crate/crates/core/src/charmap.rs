//! The characteristic map, the power-sum bridge between Θ- and Φ-alphabets,
//! character values of `GL_n(F_q)`, and Galois character decomposition.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::combin::{all_partitions, enumerate_params, n_stat, Partition, PartitionFn};
use crate::ffield::{frobenius_coset, CyclotomicCoset, Side};
use crate::galois::{
    block_index, galois_classes, galois_irr_indices, CharacterValues, GaloisOrbit,
};
use crate::numbers::arith::checked_pow;
use crate::numbers::linalg::rank;
use crate::numbers::{CycNumber, Rational, MODULUS_LIMIT};
use crate::symf::{BasisKind, BasisLabel, PowerFactor, SymElement};
use crate::{Error, Result};

/// Which form of the `p_i(φ)` bridge to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BridgeVariant {
    /// `(-1)^{N-1} Σ_x ξ(x) Σ_{|λ|=N/deg f_x} ∏_j (1 - q_{f_x}^{-j}) π_{(λ, f_x)}`, in the `P̃` basis.
    Literal,
    /// `(-1)^{N-1} Σ_x ξ(x) p_{N/deg f_x}(f_x)`, in power sums.
    Calibrated,
}

fn level_modulus(q: u64, n: u32) -> Result<u64> {
    let m = checked_pow(q, n)? - 1;
    if m > MODULUS_LIMIT {
        return Err(Error::capacity(format!(
            "q^{n} - 1 exceeds {MODULUS_LIMIT}"
        )));
    }
    Ok(m)
}

fn sign(n: u32) -> CycNumber {
    CycNumber::from_integer(if n % 2 == 1 { 1 } else { -1 })
}

/// `Σ_{x ∈ k_N^×} ξ(x) [f_x]` grouped by Φ-coset, with `ξ` the character of
/// exponent `j` at level `N`.
fn character_sums_by_class(j: u64, n: u32, q: u64) -> Result<BTreeMap<CyclotomicCoset, CycNumber>> {
    let modulus = level_modulus(q, n)?;
    let mut sums: BTreeMap<CyclotomicCoset, CycNumber> = BTreeMap::new();
    for e in 0..modulus.max(1) {
        let f = frobenius_coset(Side::Phi, q, n, e)?;
        let k = (j as u128 * e as u128 % modulus.max(1) as u128) as i64;
        *sums.entry(f).or_insert_with(CycNumber::zero) +=
            &CycNumber::root_of_unity(modulus.max(1), k);
    }
    Ok(sums)
}

/// The image of `p_i(φ)` on the Φ side.
pub fn bridge_power_sum(
    i: u32,
    phi: &CyclotomicCoset,
    q: u64,
    variant: BridgeVariant,
) -> Result<SymElement> {
    if phi.side != Side::Theta {
        return Err(Error::invalid("the bridge starts from a Θ-coset"));
    }
    if i == 0 {
        return Err(Error::invalid("power-sum index must be positive"));
    }
    let n = i * phi.level;
    let j = phi.exponent_at(q, n);
    let sums = character_sums_by_class(j, n, q)?;
    let mut out = SymElement::zero();
    for (f, s) in sums {
        let k = n / f.level;
        let c = &sign(n) * &s;
        let term = match variant {
            BridgeVariant::Calibrated => SymElement::power_sum(k, f),
            BridgeVariant::Literal => {
                let qf = checked_pow(q, f.level)?;
                let w = (1..=k as u64).fold(Rational::one(), |acc, jj| {
                    acc * (Rational::one()
                        - Rational::new(BigInt::one(), BigInt::from(qf).pow(jj as u32)))
                });
                let mut e = SymElement::zero();
                for lam in all_partitions(k) {
                    e = e.add(&SymElement::ptilde(PartitionFn::single(f, lam)));
                }
                e.scale(&CycNumber::from_rational(&w))
            }
        };
        out = out.add(&term.scale(&c));
    }
    Ok(out)
}

/// The image of `p_k(f)` on the Θ side, inverting the calibrated bridge:
/// `(-1)^{N-1}/(q^N - 1) Σ_{|φ| | N} p_{N/|φ|}(φ) Σ_{ξ∈φ} ξ(y)^{-1}`, `N = k·deg f`.
pub fn inverse_bridge_power_sum(k: u32, f: &CyclotomicCoset, q: u64) -> Result<SymElement> {
    if f.side != Side::Phi || k == 0 {
        return Err(Error::invalid(
            "the inverse bridge starts from p_k(f), k ≥ 1, f on Φ",
        ));
    }
    let n = k * f.level;
    let modulus = level_modulus(q, n)?;
    let e = f.exponent_at(q, n);
    let mut sums: BTreeMap<CyclotomicCoset, CycNumber> = BTreeMap::new();
    for j in 0..modulus.max(1) {
        let phi = frobenius_coset(Side::Theta, q, n, j)?;
        let x = (j as u128 * e as u128 % modulus.max(1) as u128) as i64;
        *sums.entry(phi).or_insert_with(CycNumber::zero) +=
            &CycNumber::root_of_unity(modulus.max(1), -x);
    }
    let scale = CycNumber::from_rational(&Rational::new(BigInt::one(), BigInt::from(modulus)));
    let mut out = SymElement::zero();
    for (phi, s) in sums {
        out =
            out.add(&SymElement::power_sum(n / phi.level, phi).scale(&(&(&sign(n) * &s) * &scale)));
    }
    Ok(out)
}

/// Transports an element over Θ-alphabets to Φ-alphabets along the calibrated bridge.
pub fn y_to_x(e: &SymElement, q: u64) -> Result<SymElement> {
    e.substitute(q, |g: &PowerFactor| {
        if g.coset.side == Side::Phi {
            return Ok(SymElement::power_sum(g.r, g.coset));
        }
        bridge_power_sum(g.r, &g.coset, q, BridgeVariant::Calibrated)
    })
}

/// Transports an element over Φ-alphabets to Θ-alphabets.
pub fn x_to_y(e: &SymElement, q: u64) -> Result<SymElement> {
    e.substitute(q, |g: &PowerFactor| {
        if g.coset.side == Side::Theta {
            return Ok(SymElement::power_sum(g.r, g.coset));
        }
        inverse_bridge_power_sum(g.r, &g.coset, q)
    })
}

/// `a_λ(q) = q^{|λ|+2n(λ)} ∏_i ∏_{k=1}^{m_i} (1 - q^{-k})`.
pub fn centralizer_order_single(lam: &Partition, q: u64) -> BigUint {
    let qb = BigInt::from(q);
    let mut num = qb.pow(lam.size() + 2 * n_stat(lam) as u32);
    let mut den = BigInt::one();
    for &m in &lam.multiplicities() {
        for k in 1..=m {
            let qk = qb.pow(k);
            num *= &qk - 1;
            den *= qk;
        }
    }
    (num / den)
        .to_biguint()
        .expect("centralizer order is positive")
}

/// Order of the centralizer of an element of class `μ`.
pub fn centralizer_order(mu: &PartitionFn, q: u64) -> Result<BigUint> {
    let mut out = BigUint::one();
    for (c, lam) in mu.entries() {
        out *= centralizer_order_single(lam, checked_pow(q, c.level)?);
    }
    Ok(out)
}

/// A class function of `GL_n(F_q)`, indexed by class parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassFunction {
    pub n: u32,
    pub q: u64,
    pub values: BTreeMap<PartitionFn, CycNumber>,
}

impl ClassFunction {
    pub fn zero(n: u32, q: u64) -> Self {
        ClassFunction {
            n,
            q,
            values: BTreeMap::new(),
        }
    }

    /// `π_μ`, the indicator of one class.
    pub fn indicator(mu: &PartitionFn, q: u64) -> Self {
        ClassFunction {
            n: mu.weight(),
            q,
            values: BTreeMap::from([(mu.clone(), CycNumber::one())]),
        }
    }

    pub fn value(&self, mu: &PartitionFn) -> CycNumber {
        self.values.get(mu).cloned().unwrap_or_else(CycNumber::zero)
    }

    fn check(&self) -> Result<()> {
        for mu in self.values.keys() {
            if mu.weight() != self.n || mu.side() == Some(Side::Theta) {
                return Err(Error::invalid(format!(
                    "{mu:?} is not a class parameter of weight {}",
                    self.n
                )));
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        let mut values = self.values.clone();
        for (k, v) in &other.values {
            let s = &values.get(k).cloned().unwrap_or_else(CycNumber::zero) + v;
            if s.is_zero() {
                values.remove(k);
            } else {
                values.insert(k.clone(), s);
            }
        }
        ClassFunction {
            n: self.n,
            q: self.q,
            values,
        }
    }

    pub fn scale(&self, c: &CycNumber) -> ClassFunction {
        let values = self
            .values
            .iter()
            .map(|(k, v)| (k.clone(), v * c))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        ClassFunction {
            n: self.n,
            q: self.q,
            values,
        }
    }
}

/// `ch(f) = Σ_μ f(μ) P̃_μ`.
pub fn ch(cf: &ClassFunction) -> Result<SymElement> {
    cf.check()?;
    Ok(SymElement::from_terms(cf.values.iter().map(|(mu, v)| {
        (BasisLabel::Ptilde { param: mu.clone() }, v.clone())
    })))
}

/// The class function of degree `n` whose image under `ch` is `e`.
pub fn ch_inverse(e: &SymElement, n: u32, q: u64) -> Result<ClassFunction> {
    let e = if e.kind() == Some(BasisKind::PTilde) || e.is_zero() {
        e.clone()
    } else {
        y_to_x(e, q)?.in_basis(BasisKind::PTilde, q)?
    };
    let mut values = BTreeMap::new();
    for (label, c) in e.terms() {
        let BasisLabel::Ptilde { param } = label else {
            unreachable!("P̃ basis")
        };
        if param.weight() != n {
            return Err(Error::invalid(format!(
                "element has a component of degree {}",
                param.weight()
            )));
        }
        values.insert(param.clone(), c.clone());
    }
    Ok(ClassFunction { n, q, values })
}

/// Class-side image of `S_λ`, in the `P̃` basis.
pub fn character_image(lam: &PartitionFn, q: u64) -> Result<SymElement> {
    if lam.side() == Some(Side::Phi) {
        return Err(Error::invalid("character parameters live on Θ"));
    }
    y_to_x(&SymElement::schur(lam.clone()), q)?.in_basis(BasisKind::PTilde, q)
}

/// The irreducible character `χ^λ` as a class function.
pub fn character(lam: &PartitionFn, q: u64) -> Result<ClassFunction> {
    ch_inverse(&character_image(lam, q)?, lam.weight(), q)
}

/// `χ^λ(c_μ)`.
pub fn char_value(lam: &PartitionFn, mu: &PartitionFn, q: u64) -> Result<CycNumber> {
    if lam.weight() != mu.weight() {
        return Err(Error::invalid(format!(
            "weights differ: ‖λ‖ = {}, ‖μ‖ = {}",
            lam.weight(),
            mu.weight()
        )));
    }
    Ok(character(lam, q)?.value(mu))
}

/// The unipotent parameter `λ(φ₀) = p` on the trivial-character orbit.
pub fn unipotent_param(p: Partition) -> PartitionFn {
    PartitionFn::single(CyclotomicCoset::identity(Side::Theta), p)
}

/// Parameter of the trivial character, `λ(φ₀) = (1^n)` in this labeling.
pub fn trivial_param(n: u32) -> PartitionFn {
    if n == 0 {
        PartitionFn::empty()
    } else {
        unipotent_param(Partition::column(n))
    }
}

/// Parameter of the Steinberg character, `λ(φ₀) = (n)` in this labeling.
pub fn steinberg_param(n: u32) -> PartitionFn {
    if n == 0 {
        PartitionFn::empty()
    } else {
        unipotent_param(Partition::row(n))
    }
}

/// The full character table of `GL_n(F_q)` by parameters.
#[derive(Debug, Clone, Serialize)]
pub struct ParamTable {
    pub n: u32,
    pub q: u64,
    pub classes: Vec<PartitionFn>,
    #[serde(serialize_with = "crate::numbers::display_vec")]
    pub centralizers: Vec<BigUint>,
    pub chars: Vec<PartitionFn>,
    pub values: Vec<Vec<CycNumber>>,
    #[serde(skip)]
    class_index: HashMap<PartitionFn, usize>,
    #[serde(skip)]
    char_index: HashMap<PartitionFn, usize>,
}

impl ParamTable {
    pub fn new(n: u32, q: u64) -> Result<Self> {
        let classes = enumerate_params(n, q, Side::Phi)?;
        let chars = enumerate_params(n, q, Side::Theta)?;
        let centralizers = classes
            .iter()
            .map(|mu| centralizer_order(mu, q))
            .collect::<Result<_>>()?;
        let mut values = Vec::with_capacity(chars.len());
        for lam in &chars {
            let cf = character(lam, q)?;
            values.push(classes.iter().map(|mu| cf.value(mu)).collect());
        }
        let class_index = classes
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let char_index = chars
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        Ok(ParamTable {
            n,
            q,
            classes,
            centralizers,
            chars,
            values,
            class_index,
            char_index,
        })
    }

    pub fn class_position(&self, mu: &PartitionFn) -> Option<usize> {
        self.class_index.get(mu).copied()
    }

    pub fn char_position(&self, lam: &PartitionFn) -> Option<usize> {
        self.char_index.get(lam).copied()
    }

    pub fn row(&self, lam: &PartitionFn) -> Option<&[CycNumber]> {
        self.char_position(lam).map(|i| self.values[i].as_slice())
    }

    pub fn character(&self, lam: &PartitionFn) -> Result<ClassFunction> {
        let row = self
            .row(lam)
            .ok_or_else(|| Error::invalid(format!("{lam:?} is not a character parameter")))?;
        let values = self
            .classes
            .iter()
            .zip(row)
            .filter(|(_, v)| !v.is_zero())
            .map(|(mu, v)| (mu.clone(), v.clone()))
            .collect();
        Ok(ClassFunction {
            n: self.n,
            q: self.q,
            values,
        })
    }

    /// `⟨a, b⟩ = Σ_μ a(μ) conj(b(μ)) / a_μ`.
    pub fn inner_product(&self, a: &ClassFunction, b: &ClassFunction) -> CycNumber {
        let mut out = CycNumber::zero();
        for (mu, cen) in self.classes.iter().zip(&self.centralizers) {
            let (x, y) = (a.value(mu), b.value(mu));
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let w = Rational::new(BigInt::one(), BigInt::from(cen.clone()));
            out += &(&x * &y.conj()).scale(&w);
        }
        out
    }

    /// `χ^{O}` = sum of the characters in an orbit.
    pub fn orbit_character(&self, orbit: &GaloisOrbit) -> Result<ClassFunction> {
        let mut out = ClassFunction::zero(self.n, self.q);
        for lam in &orbit.members {
            out = out.add(&self.character(lam)?);
        }
        Ok(out)
    }
}

impl CharacterValues for ParamTable {
    fn value(&self, lam: &PartitionFn, mu: &PartitionFn) -> Result<CycNumber> {
        let i = self
            .char_position(lam)
            .ok_or_else(|| Error::invalid(format!("unknown character {lam:?}")))?;
        let j = self
            .class_position(mu)
            .ok_or_else(|| Error::invalid(format!("unknown class {mu:?}")))?;
        Ok(self.values[i][j].clone())
    }
}

/// Orbit-sum bases on both sides of `ch_d` and whether they span one space.
#[derive(Debug, Clone, Serialize)]
pub struct ChDReport {
    pub n: u32,
    pub q: u64,
    pub d: u64,
    pub class_orbits: Vec<GaloisOrbit>,
    pub char_orbits: Vec<GaloisOrbit>,
    /// `P̃_{O(μ)}` per class orbit.
    pub class_basis: Vec<SymElement>,
    /// `ch(χ^{O(λ)})` per character orbit, in the `P̃` basis.
    pub char_basis: Vec<SymElement>,
    pub dimension: usize,
    pub same_span: bool,
}

/// The `d`-Galois characteristic map bases for `GL_n(F_q)`.
pub fn ch_d(table: &ParamTable, d: u64) -> Result<ChDReport> {
    let (n, q) = (table.n, table.q);
    let class_orbits = galois_classes(n, q, d)?;
    let char_orbits = galois_irr_indices(n, q, d)?;
    let class_basis: Vec<SymElement> = class_orbits
        .iter()
        .map(|o| {
            SymElement::from_terms(
                o.members
                    .iter()
                    .map(|m| (BasisLabel::Ptilde { param: m.clone() }, CycNumber::one())),
            )
        })
        .collect();
    let char_basis: Vec<SymElement> = char_orbits
        .iter()
        .map(|o| ch(&table.orbit_character(o)?))
        .collect::<Result<_>>()?;
    let coords = |e: &SymElement| -> Vec<CycNumber> {
        table
            .classes
            .iter()
            .map(|mu| e.coeff(&BasisLabel::Ptilde { param: mu.clone() }))
            .collect()
    };
    let a: Vec<Vec<CycNumber>> = class_basis.iter().map(coords).collect();
    let b: Vec<Vec<CycNumber>> = char_basis.iter().map(coords).collect();
    let mut both = a.clone();
    both.extend(b.iter().cloned());
    let (ra, rb, rab) = (rank(&a), rank(&b), rank(&both));
    Ok(ChDReport {
        n,
        q,
        d,
        dimension: ra,
        same_span: ra == rb && rb == rab && ra == class_orbits.len() && ra == char_orbits.len(),
        class_orbits,
        char_orbits,
        class_basis,
        char_basis,
    })
}

/// Coefficients of a Galois-stable class function on the orbit characters.
#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    pub d: u64,
    pub coefficients: Vec<(GaloisOrbit, CycNumber)>,
    pub nonnegative_integral: bool,
}

/// Decomposes `cf` into `d`-Galois irreducibles. With `require_character`, a
/// coefficient that is not a non-negative integer is a falsification.
pub fn decompose_galois_character(
    table: &ParamTable,
    cf: &ClassFunction,
    d: u64,
    require_character: bool,
) -> Result<Decomposition> {
    cf.check()?;
    if cf.n != table.n || cf.q != table.q {
        return Err(Error::invalid(
            "class function and table disagree on (n, q)",
        ));
    }
    let classes = galois_classes(table.n, table.q, d)?;
    let idx = block_index(&classes);
    for block in &classes {
        let v = cf.value(block.representative());
        if block.members.iter().any(|m| cf.value(m) != v) {
            return Err(Error::invalid(format!(
                "class function is not constant on the Galois class of {:?}",
                block.representative()
            )));
        }
    }
    debug_assert_eq!(idx.len(), table.classes.len());
    let mut coefficients = Vec::new();
    let mut reconstructed = ClassFunction::zero(table.n, table.q);
    for orbit in galois_irr_indices(table.n, table.q, d)? {
        let chi = table.orbit_character(&orbit)?;
        let c = table
            .inner_product(cf, &chi)
            .scale(&Rational::new(BigInt::one(), BigInt::from(orbit.len())));
        reconstructed = reconstructed.add(&chi.scale(&c));
        coefficients.push((orbit, c));
    }
    if reconstructed.values != cf.values {
        return Err(Error::Falsification(
            "orbit characters do not span the Galois-stable class functions".into(),
        ));
    }
    let nonnegative_integral = coefficients.iter().all(|(_, c)| {
        c.as_rational()
            .is_some_and(|r| r.is_integer() && !r.is_negative())
    });
    if require_character && !nonnegative_integral {
        return Err(Error::Falsification(format!(
            "a Galois-stable character has a coefficient outside Z≥0: {:?}",
            coefficients
                .iter()
                .map(|(_, c)| c.to_string())
                .collect::<Vec<_>>()
        )));
    }
    Ok(Decomposition {
        d,
        coefficients,
        nonnegative_integral,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{act_on_param, sct_axioms_check};
    use crate::numbers::{gl_order, rat, GaloisSpec};
    use crate::symf::pairing;

    fn phi(level: u32, rep: u64) -> CyclotomicCoset {
        CyclotomicCoset {
            side: Side::Phi,
            level,
            rep,
        }
    }

    fn theta(level: u32, rep: u64) -> CyclotomicCoset {
        CyclotomicCoset {
            side: Side::Theta,
            level,
            rep,
        }
    }

    fn cf_vec(table: &ParamTable, lam: &PartitionFn) -> Vec<CycNumber> {
        table.row(lam).unwrap().to_vec()
    }

    fn ints(v: &[i64]) -> Vec<CycNumber> {
        v.iter().map(|&x| CycNumber::from_integer(x)).collect()
    }

    #[test]
    fn bridge_examples() {
        let e = bridge_power_sum(1, &theta(1, 0), 2, BridgeVariant::Calibrated).unwrap();
        assert_eq!(e, SymElement::power_sum(1, phi(1, 0)));
        let literal = bridge_power_sum(1, &theta(1, 0), 2, BridgeVariant::Literal).unwrap();
        assert_eq!(
            literal,
            SymElement::ptilde(PartitionFn::single(phi(1, 0), Partition::row(1)))
                .scale(&CycNumber::from_rational(&rat(1, 2)))
        );
        // sign character of F_3^×: p_1(t-1) - p_1(t+1); t+1 has root 2 = g^1
        let s = bridge_power_sum(1, &theta(1, 1), 3, BridgeVariant::Calibrated).unwrap();
        let expected =
            SymElement::power_sum(1, phi(1, 0)).sub(&SymElement::power_sum(1, phi(1, 1)));
        assert_eq!(s, expected);
    }

    #[test]
    fn bridges_are_mutually_inverse_and_isometric() {
        for q in [2u64, 3, 4] {
            for n in 1..=3u32 {
                if checked_pow(q, n).unwrap() > 100 {
                    continue;
                }
                for c in crate::ffield::enumerate_cosets(q, Side::Theta, n).unwrap() {
                    if n % c.level != 0 {
                        continue;
                    }
                    let i = n / c.level;
                    let y = SymElement::power_sum(i, c);
                    let x = y_to_x(&y, q).unwrap();
                    assert_eq!(x_to_y(&x, q).unwrap(), y, "q={q} φ={c:?}");
                    assert_eq!(pairing(&x, &x, q).unwrap(), pairing(&y, &y, q).unwrap());
                }
            }
        }
    }

    #[test]
    fn gl2_f2_values() {
        let t = ParamTable::new(2, 2).unwrap();
        // classes in order: identity (1,1), transvection (2), elliptic
        let id = crate::galois::identity_param(2);
        let tv = PartitionFn::single(phi(1, 0), Partition::row(2));
        let el = PartitionFn::single(phi(2, 1), Partition::row(1));
        assert_eq!(t.classes, vec![tv.clone(), id.clone(), el.clone()]);
        assert_eq!(cf_vec(&t, &trivial_param(2)), ints(&[1, 1, 1]));
        assert_eq!(cf_vec(&t, &steinberg_param(2)), ints(&[0, 2, -1]));
        let cusp = PartitionFn::single(theta(2, 1), Partition::row(1));
        assert_eq!(cf_vec(&t, &cusp), ints(&[-1, 1, 1]));
        assert_eq!(
            t.centralizers,
            vec![
                BigUint::from(2u32),
                BigUint::from(6u32),
                BigUint::from(3u32)
            ]
        );
        assert!(char_value(&cusp, &crate::galois::identity_param(1), 2).is_err());
    }

    #[test]
    fn first_orthogonality_and_degrees() {
        for (n, q) in [(1u32, 2u64), (1, 5), (2, 2), (2, 3), (3, 2)] {
            let t = ParamTable::new(n, q).unwrap();
            let order = gl_order(n, q).unwrap();
            let chars: Vec<ClassFunction> =
                t.chars.iter().map(|l| t.character(l).unwrap()).collect();
            for (i, a) in chars.iter().enumerate() {
                for (j, b) in chars.iter().enumerate() {
                    let ip = t.inner_product(a, b);
                    assert_eq!(ip, CycNumber::from_integer((i == j) as i64), "n={n} q={q}");
                }
            }
            let class_sum: BigUint = t.centralizers.iter().map(|a| &order / a).sum();
            assert_eq!(class_sum, order);
            let id = t.class_position(&crate::galois::identity_param(n)).unwrap();
            let degree_sq: Rational = t
                .values
                .iter()
                .map(|row| {
                    let d = row[id].as_rational().unwrap();
                    &d * &d
                })
                .sum();
            assert_eq!(degree_sq, Rational::from_integer(BigInt::from(order)));
            assert!(t
                .row(&trivial_param(n))
                .unwrap()
                .iter()
                .all(|v| *v == CycNumber::one()));
        }
    }

    #[test]
    fn galois_equivariance() {
        for (n, q) in [(1u32, 3u64), (1, 5), (2, 2), (2, 3)] {
            let t = ParamTable::new(n, q).unwrap();
            let spec = GaloisSpec::for_gl(n, q, 1).unwrap();
            for &r in &spec.residues {
                for lam in &t.chars {
                    let moved = act_on_param(r, lam, q).unwrap();
                    for mu in &t.classes {
                        let v = t.value(lam, mu).unwrap();
                        let conj = v.galois(r as i64).unwrap();
                        assert_eq!(t.value(&moved, mu).unwrap(), conj);
                        let mu_r = act_on_param(r, mu, q).unwrap();
                        assert_eq!(t.value(lam, &mu_r).unwrap(), conj);
                    }
                }
            }
        }
    }

    #[test]
    fn supercharacter_axioms() {
        for (n, q, d) in [
            (2u32, 2u64, 1u64),
            (2, 3, 1),
            (2, 3, 2),
            (1, 5, 1),
            (1, 5, 2),
        ] {
            let t = ParamTable::new(n, q).unwrap();
            let report = sct_axioms_check(n, q, d, &t).unwrap();
            assert!(report.passed(), "{report:?}");
        }
        let t = ParamTable::new(2, 3).unwrap();
        let r = sct_axioms_check(2, 3, 1, &t).unwrap();
        assert_eq!((r.class_block_count, r.char_block_count), (7, 7));
    }

    #[test]
    fn ch_is_linear_and_invertible() {
        let t = ParamTable::new(2, 3).unwrap();
        for mu in &t.classes {
            let e = ch(&ClassFunction::indicator(mu, 3)).unwrap();
            assert_eq!(e, SymElement::ptilde(mu.clone()));
            assert_eq!(
                ch_inverse(&e, 2, 3).unwrap(),
                ClassFunction::indicator(mu, 3)
            );
        }
        assert!(ch(&ClassFunction::zero(2, 3)).unwrap().is_zero());
    }

    #[test]
    fn ch_d_spans() {
        for (n, q, d, dim) in [(2u32, 2u64, 1u64, 3usize), (2, 3, 1, 7), (2, 3, 48, 8)] {
            let t = ParamTable::new(n, q).unwrap();
            let r = ch_d(&t, d).unwrap();
            assert!(r.same_span);
            assert_eq!(r.dimension, dim);
        }
    }

    #[test]
    fn regular_character_of_gl2_f2() {
        let t = ParamTable::new(2, 2).unwrap();
        let reg = ClassFunction {
            n: 2,
            q: 2,
            values: BTreeMap::from([(
                crate::galois::identity_param(2),
                CycNumber::from_integer(6),
            )]),
        };
        let dec = decompose_galois_character(&t, &reg, 1, true).unwrap();
        let coeff = |lam: &PartitionFn| {
            dec.coefficients
                .iter()
                .find(|(o, _)| o.contains(lam))
                .unwrap()
                .1
                .clone()
        };
        assert_eq!(coeff(&trivial_param(2)), CycNumber::from_integer(1));
        assert_eq!(
            coeff(&PartitionFn::single(theta(2, 1), Partition::row(1))),
            CycNumber::from_integer(1)
        );
        assert_eq!(coeff(&steinberg_param(2)), CycNumber::from_integer(2));
        let half = reg.scale(&CycNumber::from_rational(&rat(1, 2)));
        assert!(matches!(
            decompose_galois_character(&t, &half, 1, true),
            Err(Error::Falsification(_))
        ));
        // not Galois-stable: a single cuspidal of GL_2(F_3) at d = 1
        let t3 = ParamTable::new(2, 3).unwrap();
        let cusp = t3
            .character(&PartitionFn::single(theta(2, 1), Partition::row(1)))
            .unwrap();
        assert!(matches!(
            decompose_galois_character(&t3, &cusp, 1, false),
            Err(Error::InvalidInput(_))
        ));
    }
}
