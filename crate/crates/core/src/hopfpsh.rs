//! The graded Hopf algebra of `d`-Galois class functions on `GL_*(F_q)`:
//! structure constants on the orbit basis, self-duality and positivity,
//! primitives, cuspidals, and the decomposition into one factor per cuspidal.
//!
//! The degree-`n` basis is the set of `d`-Galois orbits of Θ-parameters of
//! weight `n`, each orbit `O` standing for `S_O = Σ_{λ∈O} S_λ`; the PSH
//! basis element is `S_O/√|O|`. The irrational normalization is carried
//! symbolically and all verification is done on the orbit sums `S_O`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::combin::{enumerate_params, Partition, PartitionFn};
use crate::ffield::{enumerate_cosets, Side};
use crate::galois::{orbits, GaloisOrbit};
use crate::numbers::{CycNumber, GaloisSpec, Rational};
use crate::symf::{comultiply, multiply, BasisKind, BasisLabel, SymElement, Tensor};
use crate::{Error, Result};

/// The symbolic scalar `√(numerator/denominator)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SqrtRatio {
    pub numerator: u64,
    pub denominator: u64,
}

impl SqrtRatio {
    /// `1/√k`.
    pub fn inverse_sqrt(k: u64) -> Self {
        SqrtRatio {
            numerator: 1,
            denominator: k,
        }
    }

    /// The square of the scalar.
    pub fn squared(&self) -> Rational {
        Rational::new(BigInt::from(self.numerator), BigInt::from(self.denominator))
    }
}

/// A basis element `S_O/√|O|` of the orbit PSH basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedBasisElement {
    pub orbit: GaloisOrbit,
    pub degree: u32,
    pub normalization: SqrtRatio,
}

impl GradedBasisElement {
    pub fn new(orbit: GaloisOrbit) -> Self {
        let degree = orbit.weight();
        let normalization = SqrtRatio::inverse_sqrt(orbit.len() as u64);
        GradedBasisElement {
            orbit,
            degree,
            normalization,
        }
    }

    /// The unnormalized orbit sum `S_O`.
    pub fn orbit_sum(&self) -> SymElement {
        orbit_sum(&self.orbit)
    }
}

pub fn orbit_sum(o: &GaloisOrbit) -> SymElement {
    SymElement::from_terms(
        o.members
            .iter()
            .map(|m| (BasisLabel::Schur { param: m.clone() }, CycNumber::one())),
    )
}

/// The Galois group acting in degree `n`, restricted from one group for all degrees.
pub fn graded_spec(n: u32, q: u64, d: u64) -> Result<GaloisSpec> {
    GaloisSpec::for_gl_graded(n.max(1), q, d)
}

/// Degree-`n` orbit basis labels.
pub fn orbit_basis(n: u32, q: u64, d: u64) -> Result<Vec<GaloisOrbit>> {
    if n == 0 {
        return Ok(vec![GaloisOrbit {
            members: vec![PartitionFn::empty()],
            d,
        }]);
    }
    orbits(
        &enumerate_params(n, q, Side::Theta)?,
        q,
        &graded_spec(n, q, d)?,
    )
}

/// One product structure constant: `S_α S_β = Σ_γ coefficient·S_γ`, and for
/// the normalized basis `c = coefficient·normalization`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductConstant {
    pub gamma: GaloisOrbit,
    pub coefficient: CycNumber,
    pub normalization: SqrtRatio,
}

fn orbit_of<'a>(label_orbits: &'a [GaloisOrbit], param: &PartitionFn) -> Option<&'a GaloisOrbit> {
    label_orbits.iter().find(|o| o.contains(param))
}

/// Expands `S_α S_β` on the degree-`deg α + deg β` orbit sums.
pub fn product_constants(
    alpha: &GaloisOrbit,
    beta: &GaloisOrbit,
    q: u64,
    d: u64,
) -> Result<Vec<ProductConstant>> {
    let n = alpha.weight() + beta.weight();
    let basis = orbit_basis(n, q, d)?;
    let prod = multiply(&orbit_sum(alpha), &orbit_sum(beta), q)?.in_basis(BasisKind::Schur, q)?;
    let mut out: BTreeMap<GaloisOrbit, CycNumber> = BTreeMap::new();
    for (label, c) in prod.terms() {
        let BasisLabel::Schur { param } = label else {
            unreachable!("Schur basis")
        };
        let gamma = orbit_of(&basis, param)
            .ok_or_else(|| Error::Falsification(format!("{param:?} has no orbit in degree {n}")))?;
        match out.get(gamma) {
            Some(prev) if prev != c => {
                return Err(Error::Falsification(format!(
                    "product of orbit sums is not constant on the orbit of {:?}",
                    gamma.representative()
                )))
            }
            _ => {
                out.insert(gamma.clone(), c.clone());
            }
        }
    }
    for (gamma, c) in &out {
        if prod.coeff(&BasisLabel::Schur {
            param: gamma.members.last().unwrap().clone(),
        }) != *c
        {
            return Err(Error::Falsification(
                "product of orbit sums is not Galois stable".into(),
            ));
        }
    }
    Ok(out
        .into_iter()
        .map(|(gamma, coefficient)| ProductConstant {
            normalization: SqrtRatio {
                numerator: gamma.len() as u64,
                denominator: (alpha.len() * beta.len()) as u64,
            },
            gamma,
            coefficient,
        })
        .collect())
}

/// One coproduct constant, read by pairing: `⟨Δ S_γ, S_α ⊗ S_β⟩/(|α||β|)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoproductConstant {
    pub alpha: GaloisOrbit,
    pub beta: GaloisOrbit,
    pub coefficient: CycNumber,
    pub normalization: SqrtRatio,
}

fn schur_coproduct(gamma: &GaloisOrbit, q: u64) -> Result<Tensor> {
    comultiply(&orbit_sum(gamma), q)?.in_basis(BasisKind::Schur, q)
}

fn pair_with_orbits(t: &Tensor, alpha: &GaloisOrbit, beta: &GaloisOrbit) -> CycNumber {
    let mut s = CycNumber::zero();
    for a in &alpha.members {
        for b in &beta.members {
            s += &t.coeff(
                &BasisLabel::Schur { param: a.clone() },
                &BasisLabel::Schur { param: b.clone() },
            );
        }
    }
    s
}

/// Coproduct constants of `S_γ` over all splittings of its degree.
pub fn coproduct_constants(gamma: &GaloisOrbit, q: u64, d: u64) -> Result<Vec<CoproductConstant>> {
    let n = gamma.weight();
    let t = schur_coproduct(gamma, q)?;
    let mut out = Vec::new();
    for i in 0..=n {
        for alpha in orbit_basis(i, q, d)? {
            for beta in orbit_basis(n - i, q, d)? {
                let s = pair_with_orbits(&t, &alpha, &beta);
                let (alpha, beta) = (&alpha, &beta);
                if s.is_zero() {
                    continue;
                }
                let k = (alpha.len() * beta.len()) as i64;
                let coefficient = s.scale(&Rational::new(BigInt::one(), BigInt::from(k)));
                let normalization = SqrtRatio {
                    numerator: k as u64,
                    denominator: gamma.len() as u64,
                };
                out.push(CoproductConstant {
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                    coefficient,
                    normalization,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub alpha: PartitionFn,
    pub beta: PartitionFn,
    pub gamma: PartitionFn,
    pub detail: String,
}

/// Self-duality, positivity and closure of the orbit basis up to a degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfDualityReport {
    pub n_max: u32,
    pub q: u64,
    pub d: u64,
    pub triples_checked: usize,
    pub self_duality_violations: Vec<Violation>,
    pub positivity_violations: Vec<Violation>,
    /// Whether `Δ S_γ` lies in the span of the `S_α ⊗ S_β` for every `γ`.
    pub coproduct_closed: bool,
}

impl SelfDualityReport {
    pub fn passed(&self) -> bool {
        self.self_duality_violations.is_empty() && self.positivity_violations.is_empty()
    }
}

/// Checks `c_{αβ}^γ = d_{αβ}^γ` through `|γ|·C = |α||β|·D` on orbit sums, and
/// that every product constant is a non-negative rational.
pub fn self_duality_check(n_max: u32, q: u64, d: u64) -> Result<SelfDualityReport> {
    let bases: Vec<Vec<GaloisOrbit>> = (0..=n_max)
        .map(|n| orbit_basis(n, q, d))
        .collect::<Result<_>>()?;
    let mut report = SelfDualityReport {
        n_max,
        q,
        d,
        triples_checked: 0,
        self_duality_violations: Vec::new(),
        positivity_violations: Vec::new(),
        coproduct_closed: true,
    };
    let mut products: BTreeMap<(&GaloisOrbit, &GaloisOrbit), SymElement> = BTreeMap::new();
    for i in 0..=n_max as usize {
        for j in 0..=(n_max as usize - i) {
            for alpha in &bases[i] {
                for beta in &bases[j] {
                    let prod = multiply(&orbit_sum(alpha), &orbit_sum(beta), q)?
                        .in_basis(BasisKind::Schur, q)?;
                    products.insert((alpha, beta), prod);
                }
            }
        }
    }
    for (n, basis) in bases.iter().enumerate() {
        for gamma in basis {
            let coproduct = schur_coproduct(gamma, q)?;
            let mut spanned = Vec::new();
            for i in 0..=n {
                for alpha in &bases[i] {
                    for beta in &bases[n - i] {
                        report.triples_checked += 1;
                        let pairing = pair_with_orbits(&coproduct, alpha, beta);
                        if !pairing.is_zero() {
                            let k = (alpha.len() * beta.len()) as i64;
                            let coef =
                                pairing.scale(&Rational::new(BigInt::one(), BigInt::from(k)));
                            for a in &alpha.members {
                                for b in &beta.members {
                                    let key = (
                                        BasisLabel::Schur { param: a.clone() },
                                        BasisLabel::Schur { param: b.clone() },
                                    );
                                    spanned.push((key, coef.clone()));
                                }
                            }
                        }
                        let c_val = products[&(alpha, beta)].coeff(&BasisLabel::Schur {
                            param: gamma.representative().clone(),
                        });
                        let lhs = c_val.scale(&Rational::from_integer(BigInt::from(gamma.len())));
                        let violation = |detail: String| Violation {
                            alpha: alpha.representative().clone(),
                            beta: beta.representative().clone(),
                            gamma: gamma.representative().clone(),
                            detail,
                        };
                        if lhs != pairing {
                            report
                                .self_duality_violations
                                .push(violation(format!("|γ|·c = {lhs}, pairing = {pairing}")));
                        }
                        if !c_val.is_nonnegative_rational() {
                            report
                                .positivity_violations
                                .push(violation(format!("c = {c_val}")));
                        }
                    }
                }
            }
            if Tensor::from_terms(spanned) != coproduct {
                report.coproduct_closed = false;
            }
        }
    }
    Ok(report)
}

/// Whether `Δe = e⊗1 + 1⊗e`.
pub fn primitive_check(e: &SymElement, q: u64) -> Result<bool> {
    match e.homogeneous_degree() {
        Some(n) if n > 0 => {}
        _ => {
            return Err(Error::invalid(
                "primitivity needs a homogeneous element of positive degree",
            ))
        }
    }
    let p = e.to_power_sums(q)?;
    let one = SymElement::one();
    let expected = Tensor::pure(&p, &one);
    let expected = Tensor::from_terms(
        expected
            .terms()
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .chain(
                Tensor::pure(&one, &p)
                    .terms()
                    .iter()
                    .map(|(k, v)| (k.clone(), v.clone())),
            ),
    );
    Ok(comultiply(&p, q)?.sub(&expected).is_zero())
}

/// `(□, φ)` for every Θ-coset of size exactly `n`.
pub fn cuspidals(n: u32, q: u64) -> Result<Vec<PartitionFn>> {
    Ok(enumerate_cosets(q, Side::Theta, n)?
        .into_iter()
        .filter(|c| c.level == n)
        .map(|c| PartitionFn::single(c, Partition::row(1)))
        .collect())
}

/// One normalized orbit sum per `d`-orbit of cuspidals of degree `n`.
pub fn galois_cuspidals(n: u32, q: u64, d: u64) -> Result<Vec<GradedBasisElement>> {
    Ok(orbits(&cuspidals(n, q)?, q, &graded_spec(n, q, d)?)?
        .into_iter()
        .map(GradedBasisElement::new)
        .collect())
}

fn is_cuspidal_orbit(rho: &GaloisOrbit) -> bool {
    !rho.is_empty()
        && rho.members.iter().all(|m| {
            m.entries().len() == 1
                && m.entries()[0].1 == Partition::row(1)
                && m.side() == Some(Side::Theta)
        })
}

/// Orbit labels `β` of degree `≤ degree_bound` with `⟨S_β, S_ρ^k⟩ ≠ 0` for some `k ≥ 1`.
pub fn zelevinsky_component(
    rho: &GaloisOrbit,
    degree_bound: u32,
    q: u64,
    d: u64,
) -> Result<Vec<GaloisOrbit>> {
    if !is_cuspidal_orbit(rho) {
        return Err(Error::invalid(format!(
            "{:?} is not a cuspidal orbit",
            rho.representative()
        )));
    }
    let deg = rho.weight();
    let s_rho = orbit_sum(rho);
    let mut power = SymElement::one();
    let mut out = Vec::new();
    let mut k = 1;
    while k * deg <= degree_bound {
        power = multiply(&power, &s_rho, q)?;
        let schur = power.in_basis(BasisKind::Schur, q)?;
        let support: BTreeSet<&PartitionFn> = schur
            .terms()
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, _)| match l {
                BasisLabel::Schur { param } => param,
                _ => unreachable!("Schur basis"),
            })
            .collect();
        for beta in orbit_basis(k * deg, q, d)? {
            if beta.members.iter().any(|m| support.contains(m)) {
                out.push(beta);
            }
        }
        k += 1;
    }
    Ok(out)
}

/// Per degree, the number of orbit labels against the dimension predicted by
/// the tensor product of the cuspidal components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TensorReport {
    pub n_max: u32,
    pub q: u64,
    pub d: u64,
    pub basis_counts: Vec<usize>,
    pub tensor_counts: Vec<usize>,
    pub components_disjoint: bool,
    pub single_support_covered: bool,
}

impl TensorReport {
    pub fn passed(&self) -> bool {
        self.basis_counts == self.tensor_counts
            && self.components_disjoint
            && self.single_support_covered
    }
}

pub fn tensor_decomposition_check(n_max: u32, q: u64, d: u64) -> Result<TensorReport> {
    let mut components: Vec<(u32, Vec<usize>)> = Vec::new();
    let mut seen: BTreeMap<GaloisOrbit, usize> = BTreeMap::new();
    let mut components_disjoint = true;
    for deg in 1..=n_max {
        for rho in galois_cuspidals(deg, q, d)? {
            let comp = zelevinsky_component(&rho.orbit, n_max, q, d)?;
            let mut dims = vec![0usize; (n_max / deg) as usize + 1];
            dims[0] = 1;
            for beta in comp {
                dims[(beta.weight() / deg) as usize] += 1;
                if seen.insert(beta, components.len()).is_some() {
                    components_disjoint = false;
                }
            }
            components.push((deg, dims));
        }
    }
    // graded dimension of the tensor product: multiply generating series
    let mut series = vec![0usize; n_max as usize + 1];
    series[0] = 1;
    for (deg, dims) in &components {
        let mut next = vec![0usize; n_max as usize + 1];
        for (i, &a) in series.iter().enumerate() {
            for (k, &b) in dims.iter().enumerate() {
                let j = i + k * *deg as usize;
                if j <= n_max as usize {
                    next[j] += a * b;
                }
            }
        }
        series = next;
    }
    let mut basis_counts = Vec::new();
    let mut single_support_covered = true;
    for n in 0..=n_max {
        let basis = orbit_basis(n, q, d)?;
        basis_counts.push(basis.len());
        for beta in &basis {
            let single = beta.members.iter().all(|m| {
                let cosets: BTreeSet<_> = m.entries().iter().map(|(c, _)| *c).collect();
                cosets.len() == 1
            });
            if n > 0 && single && !seen.contains_key(beta) {
                single_support_covered = false;
            }
        }
    }
    Ok(TensorReport {
        n_max,
        q,
        d,
        basis_counts,
        tensor_counts: series,
        components_disjoint,
        single_support_covered,
    })
}
