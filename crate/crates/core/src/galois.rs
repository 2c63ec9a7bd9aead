//! Galois action on cosets and partition-valued functions, orbit enumeration,
//! d-Galois classes and irreducible index sets, and the supercharacter axioms.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::combin::{enumerate_params, Partition, PartitionFn};
use crate::ffield::{frobenius_coset, CyclotomicCoset, Side};
use crate::numbers::arith::{checked_pow, gcd, mod_inverse};
use crate::numbers::{semisimple_modulus, CycNumber, GaloisSpec};
use crate::{Error, Result};

/// `σ_r` applied to a coset: the coset of `r·e`.
pub fn act_on_coset(r: u64, c: &CyclotomicCoset, q: u64) -> Result<CyclotomicCoset> {
    let modulus = checked_pow(q, c.level)? - 1;
    if modulus > 1 && gcd(r % modulus, modulus) != 1 {
        return Err(Error::InvalidResidue {
            residue: r,
            modulus,
        });
    }
    let e = if modulus <= 1 {
        0
    } else {
        (r % modulus) as u128 * c.rep as u128 % modulus as u128
    };
    frobenius_coset(c.side, q, c.level, e as u64)
}

/// `σ_r.f = f ∘ σ_r^{-1}`: the value at `c` moves to `σ_r.c`.
pub fn act_on_param(r: u64, f: &PartitionFn, q: u64) -> Result<PartitionFn> {
    let moved = f
        .entries()
        .iter()
        .map(|(c, p)| Ok((act_on_coset(r, c, q)?, p.clone())))
        .collect::<Result<Vec<_>>>()?;
    PartitionFn::new(moved)
}

/// A Galois orbit of parameters, sorted, tagged with the conductor `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GaloisOrbit {
    pub members: Vec<PartitionFn>,
    pub d: u64,
}

impl GaloisOrbit {
    pub fn representative(&self) -> &PartitionFn {
        &self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.members[0].weight()
    }

    pub fn contains(&self, f: &PartitionFn) -> bool {
        self.members.binary_search(f).is_ok()
    }
}

fn action_residues(spec: &GaloisSpec, weight: u32, q: u64) -> Result<Vec<u64>> {
    Ok(spec.residues_mod(semisimple_modulus(weight.max(1), q)?))
}

/// The orbit of `f` under every residue of `spec`.
pub fn orbit_of_param(f: &PartitionFn, q: u64, spec: &GaloisSpec) -> Result<GaloisOrbit> {
    let residues = action_residues(spec, f.weight(), q)?;
    let mut members = BTreeSet::new();
    for r in residues {
        members.insert(act_on_param(r, f, q)?);
    }
    Ok(GaloisOrbit {
        members: members.into_iter().collect(),
        d: spec.conductor,
    })
}

/// Partitions `params` (all of one weight) into orbits, ordered by minimal member.
pub fn orbits(params: &[PartitionFn], q: u64, spec: &GaloisSpec) -> Result<Vec<GaloisOrbit>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut sorted = params.to_vec();
    sorted.sort();
    for f in &sorted {
        if seen.contains(f) {
            continue;
        }
        let orbit = orbit_of_param(f, q, spec)?;
        seen.extend(orbit.members.iter().cloned());
        out.push(orbit);
    }
    Ok(out)
}

/// d-Galois classes of `GL_n(F_q)` as orbits of Φ-side parameters.
pub fn galois_classes(n: u32, q: u64, d: u64) -> Result<Vec<GaloisOrbit>> {
    let spec = GaloisSpec::for_gl(n, q, d)?;
    orbits(&enumerate_params(n, q, Side::Phi)?, q, &spec)
}

/// d-Galois irreducible characters of `GL_n(F_q)` as orbits of Θ-side parameters.
pub fn galois_irr_indices(n: u32, q: u64, d: u64) -> Result<Vec<GaloisOrbit>> {
    let spec = GaloisSpec::for_gl(n, q, d)?;
    orbits(&enumerate_params(n, q, Side::Theta)?, q, &spec)
}

/// Parameter of the identity class, `μ(t-1) = (1^n)`.
pub fn identity_param(n: u32) -> PartitionFn {
    if n == 0 {
        return PartitionFn::empty();
    }
    PartitionFn::single(CyclotomicCoset::identity(Side::Phi), Partition::column(n))
}

/// Character values `χ^λ(c_μ)` indexed by parameters.
pub trait CharacterValues {
    fn value(&self, lam: &PartitionFn, mu: &PartitionFn) -> Result<CycNumber>;
}

/// Outcome of checking the supercharacter axioms for the Galois pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SctReport {
    pub n: u32,
    pub q: u64,
    pub d: u64,
    pub class_block_count: usize,
    pub char_block_count: usize,
    pub identity_singleton: bool,
    pub constancy: bool,
    pub violations: Vec<String>,
}

impl SctReport {
    pub fn passed(&self) -> bool {
        self.class_block_count == self.char_block_count
            && self.identity_singleton
            && self.constancy
            && self.violations.is_empty()
    }
}

/// Checks `|X| = |K|`, that `{1}` is a class block, and that each orbit sum of
/// characters is constant on each Galois class.
pub fn sct_axioms_check<V: CharacterValues>(
    n: u32,
    q: u64,
    d: u64,
    values: &V,
) -> Result<SctReport> {
    let classes = galois_classes(n, q, d)?;
    let chars = galois_irr_indices(n, q, d)?;
    let id = identity_param(n);
    let identity_singleton = classes.iter().any(|b| b.members == [id.clone()]);
    let mut violations = Vec::new();
    for x in &chars {
        for k in &classes {
            let mut first: Option<CycNumber> = None;
            for mu in &k.members {
                let mut s = CycNumber::zero();
                for lam in &x.members {
                    s += &values.value(lam, mu)?;
                }
                match &first {
                    None => first = Some(s),
                    Some(v) if *v != s => {
                        violations.push(format!(
                            "orbit sum at {:?} differs on {:?} and {:?}",
                            x.representative(),
                            k.representative(),
                            mu
                        ));
                        break;
                    }
                    _ => {}
                }
            }
        }
    }
    if !identity_singleton {
        violations.push("identity class is not a singleton block".into());
    }
    if classes.len() != chars.len() {
        violations.push(format!(
            "{} class blocks but {} character blocks",
            classes.len(),
            chars.len()
        ));
    }
    Ok(SctReport {
        n,
        q,
        d,
        class_block_count: classes.len(),
        char_block_count: chars.len(),
        identity_singleton,
        constancy: violations.iter().all(|v| !v.starts_with("orbit sum")),
        violations,
    })
}

/// Orbit blocks as a map from each parameter to its block index.
pub fn block_index(blocks: &[GaloisOrbit]) -> BTreeMap<PartitionFn, usize> {
    blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| b.members.iter().map(move |f| (f.clone(), i)))
        .collect()
}

/// `σ_r^{-1}` as a residue modulo `modulus`.
pub fn inverse_residue(r: u64, modulus: u64) -> Result<u64> {
    if modulus <= 1 {
        return Ok(0);
    }
    mod_inverse(r % modulus, modulus).ok_or(Error::InvalidResidue {
        residue: r,
        modulus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coset(side: Side, level: u32, rep: u64) -> CyclotomicCoset {
        CyclotomicCoset { side, level, rep }
    }

    #[test]
    fn coset_action_examples() {
        let c = coset(Side::Phi, 2, 1);
        assert_eq!(act_on_coset(1, &c, 3).unwrap(), c);
        assert_eq!(act_on_coset(5, &c, 3).unwrap(), coset(Side::Phi, 2, 5));
        assert_eq!(
            act_on_coset(5, &coset(Side::Theta, 2, 1), 2).unwrap(),
            coset(Side::Theta, 2, 1)
        );
        assert!(matches!(
            act_on_coset(2, &c, 3),
            Err(Error::InvalidResidue {
                residue: 2,
                modulus: 8
            })
        ));
    }

    #[test]
    fn param_action_examples() {
        let mu = PartitionFn::single(coset(Side::Phi, 2, 1), Partition::row(1));
        let image = act_on_param(5, &mu, 3).unwrap();
        assert_eq!(
            image,
            PartitionFn::single(coset(Side::Phi, 2, 5), Partition::row(1))
        );
        assert_eq!(act_on_param(1, &mu, 3).unwrap(), mu);
        let unipotent =
            PartitionFn::single(CyclotomicCoset::identity(Side::Phi), Partition::row(2));
        for r in [1, 5, 7, 11, 13] {
            assert_eq!(act_on_param(r, &unipotent, 3).unwrap(), unipotent);
        }
    }

    #[test]
    fn orbit_counts() {
        let count =
            |f: fn(u32, u64, u64) -> Result<Vec<GaloisOrbit>>, n, q, d| f(n, q, d).unwrap().len();
        assert_eq!(count(galois_classes, 2, 2, 1), 3);
        assert_eq!(count(galois_classes, 2, 3, 1), 7);
        assert_eq!(count(galois_classes, 2, 3, 48), 8);
        assert_eq!(count(galois_irr_indices, 2, 2, 1), 3);
        assert_eq!(count(galois_irr_indices, 2, 3, 1), 7);
        for q in [2u64, 3, 4, 5] {
            assert_eq!(count(galois_irr_indices, 1, q, q - 1), q as usize - 1);
        }
        assert!(galois_classes(2, 3, 5).is_err());
        assert!(galois_classes(2, 2, 1)
            .unwrap()
            .iter()
            .all(|b| b.len() == 1));
    }

    #[test]
    fn fused_cuspidal_orbit_for_gl2_f3() {
        let blocks = galois_irr_indices(2, 3, 1).unwrap();
        let fused: Vec<_> = blocks.iter().filter(|b| b.len() > 1).collect();
        assert_eq!(fused.len(), 1);
        let reps: Vec<u64> = fused[0]
            .members
            .iter()
            .map(|f| f.entries()[0].0.rep)
            .collect();
        assert_eq!(reps, vec![1, 5]);
    }

    #[test]
    fn inverse_convention_gives_same_orbits() {
        for (n, q, d) in [
            (2u32, 3u64, 1u64),
            (3, 2, 1),
            (2, 5, 1),
            (2, 5, 2),
            (2, 4, 1),
        ] {
            let spec = GaloisSpec::for_gl(n, q, d).unwrap();
            let m = semisimple_modulus(n, q).unwrap();
            for side in [Side::Phi, Side::Theta] {
                for f in enumerate_params(n, q, side).unwrap() {
                    let forward = orbit_of_param(&f, q, &spec).unwrap();
                    let mut backward = BTreeSet::new();
                    for r in spec.residues_mod(m) {
                        backward
                            .insert(act_on_param(inverse_residue(r, m).unwrap(), &f, q).unwrap());
                    }
                    assert_eq!(forward.members, backward.into_iter().collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn refinement_monotonicity_and_identity_singleton() {
        for (n, q) in [(2u32, 3u64), (2, 5), (3, 2), (2, 4)] {
            let order = crate::numbers::gl_order(n, q).unwrap();
            let divisors: Vec<u64> = crate::numbers::arith::divisors(order.try_into().unwrap());
            for &d in &divisors {
                let coarse = galois_classes(n, q, d).unwrap();
                let coarse_idx = block_index(&coarse);
                for &d2 in divisors.iter().filter(|&&d2| d2 % d == 0) {
                    for block in galois_classes(n, q, d2).unwrap() {
                        let i = coarse_idx[block.representative()];
                        assert!(block.members.iter().all(|f| coarse_idx[f] == i));
                    }
                }
                assert!(coarse.iter().any(|b| b.members == [identity_param(n)]));
                assert_eq!(coarse.len(), galois_irr_indices(n, q, d).unwrap().len());
            }
        }
    }
}
