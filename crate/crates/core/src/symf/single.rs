//! One-alphabet symmetric functions: monomial expansions and transition
//! matrices to and from power sums.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combin::{all_partitions, n_stat, Partition};
use crate::numbers::linalg::{invert, mat_mul, Matrix};
use crate::numbers::{int, Rational};
use crate::{Error, Result};

/// A family of bases of the degree-`k` symmetric functions in one alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    Schur,
    /// `P_λ(x; t)`
    HallLittlewood(Rational),
    /// `q_f^{-n(λ)} P_λ(x; q_f^{-1})`
    PTilde(u64),
}

/// Expansions between a family and power sums in degree `k`, rows and
/// columns indexed by `partitions` (reverse-lex order).
#[derive(Debug)]
pub struct Transition {
    pub partitions: Vec<Partition>,
    pub index: HashMap<Partition, usize>,
    /// `b_λ = Σ_ρ to_p[λ][ρ] p_ρ`
    pub to_p: Matrix<Rational>,
    /// `p_ρ = Σ_λ from_p[ρ][λ] b_λ`
    pub from_p: Matrix<Rational>,
}

type Cache = Mutex<HashMap<(Family, u32), Arc<Transition>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn transition(family: &Family, k: u32) -> Arc<Transition> {
    let key = (family.clone(), k);
    if let Some(t) = cache().lock().unwrap().get(&key) {
        return Arc::clone(t);
    }
    let t = Arc::new(build(family, k));
    cache().lock().unwrap().entry(key).or_insert(t).clone()
}

fn build(family: &Family, k: u32) -> Transition {
    let partitions = all_partitions(k);
    let index = partitions
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let p_to_m: Matrix<Rational> = partitions
        .iter()
        .map(|rho| {
            partitions
                .iter()
                .map(|lam| int(power_monomial_coeff(rho, lam) as i64))
                .collect()
        })
        .collect();
    let m_to_p = invert(&p_to_m).expect("p → m is unitriangular up to scaling");
    let b_to_m: Matrix<Rational> = match family {
        Family::Schur => hl_matrix(&partitions, &Rational::zero()),
        Family::HallLittlewood(t) => hl_matrix(&partitions, t),
        Family::PTilde(qf) => {
            let t = Rational::new(BigInt::one(), BigInt::from(*qf));
            let mut m = hl_matrix(&partitions, &t);
            for (row, lam) in m.iter_mut().zip(&partitions) {
                let scale = pow(&t, n_stat(lam));
                for x in row.iter_mut() {
                    *x = &*x * &scale;
                }
            }
            m
        }
    };
    let to_p = mat_mul(&b_to_m, &m_to_p);
    let from_p = invert(&to_p).expect("basis transition is invertible");
    Transition {
        partitions,
        index,
        to_p,
        from_p,
    }
}

fn hl_matrix(partitions: &[Partition], t: &Rational) -> Matrix<Rational> {
    partitions
        .iter()
        .map(|lam| {
            partitions
                .iter()
                .map(|mu| hl_monomial_coeff(lam, mu, t))
                .collect()
        })
        .collect()
}

fn pow(t: &Rational, e: u64) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * t)
}

/// Coefficient of `x^μ` in `p_ρ`: the ways to place the parts of `ρ` into
/// `ℓ(μ)` boxes so that box `i` sums to `μ_i`.
pub fn power_monomial_coeff(rho: &Partition, mu: &Partition) -> u64 {
    if rho.size() != mu.size() {
        return 0;
    }
    fn rec(parts: &[u32], rem: &mut Vec<u32>) -> u64 {
        let Some((&first, rest)) = parts.split_first() else {
            return rem.iter().all(|&r| r == 0) as u64;
        };
        let mut total = 0;
        for i in 0..rem.len() {
            if rem[i] >= first {
                rem[i] -= first;
                total += rec(rest, rem);
                rem[i] += first;
            }
        }
        total
    }
    rec(rho.parts(), &mut mu.parts().to_vec())
}

/// `ψ_{λ/κ}(t)` for a horizontal strip `λ/κ`.
fn psi(lam: &Partition, kappa: &Partition, t: &Rational) -> Rational {
    let (lc, kc) = (lam.conjugate(), kappa.conjugate());
    let theta = |j: usize| lc.part(j) - kc.part(j);
    let mut out = Rational::one();
    for j in 1..=lam.part(1) as usize {
        if theta(j) == 0 && theta(j + 1) == 1 {
            out *= Rational::one() - pow(t, kappa.multiplicity(j as u32) as u64);
        }
    }
    out
}

/// Partitions `κ ⊆ λ` with `λ/κ` a horizontal strip of size `s`.
fn strips_below(lam: &Partition, s: u32) -> Vec<Partition> {
    let parts = lam.parts();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts.len());
    fn rec(parts: &[u32], i: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == parts.len() {
            if rem == 0 {
                let v: Vec<u32> = cur.iter().copied().filter(|&x| x > 0).collect();
                out.push(Partition::new(v).expect("positive parts"));
            }
            return;
        }
        let lo = parts.get(i + 1).copied().unwrap_or(0);
        for k in (lo..=parts[i]).rev() {
            let removed = parts[i] - k;
            if removed > rem {
                break;
            }
            cur.push(k);
            rec(parts, i + 1, rem - removed, cur, out);
            cur.pop();
        }
    }
    rec(parts, 0, s, &mut cur, &mut out);
    out
}

/// Coefficient of `m_μ` in `P_λ(x; t)`, from the tableau formula.
pub fn hl_monomial_coeff(lam: &Partition, mu: &Partition, t: &Rational) -> Rational {
    if lam.size() != mu.size() {
        return Rational::zero();
    }
    fn rec(lam: &Partition, weights: &[u32], t: &Rational) -> Rational {
        let Some((&last, rest)) = weights.split_last() else {
            return if lam.is_empty() {
                Rational::one()
            } else {
                Rational::zero()
            };
        };
        let mut total = Rational::zero();
        for kappa in strips_below(lam, last) {
            let w = psi(lam, &kappa, t);
            if !w.is_zero() {
                total += w * rec(&kappa, rest, t);
            }
        }
        total
    }
    rec(lam, mu.parts(), t)
}

/// `P_λ(x_1, …, x_N; t)` as coefficients of monomial symmetric polynomials.
pub fn hall_littlewood(
    lam: &Partition,
    t: &Rational,
    num_vars: u32,
) -> Result<BTreeMap<Partition, Rational>> {
    if num_vars < lam.size() {
        return Err(Error::invalid(format!(
            "{num_vars} variables are fewer than |λ| = {}",
            lam.size()
        )));
    }
    Ok(all_partitions(lam.size())
        .into_iter()
        .filter(|mu| mu.len() <= num_vars as usize)
        .map(|mu| {
            let c = hl_monomial_coeff(lam, &mu, t);
            (mu, c)
        })
        .filter(|(_, c)| !c.is_zero())
        .collect())
}

/// `z_ρ = ∏ i^{m_i} m_i!`.
pub fn z(rho: &Partition) -> BigInt {
    rho.multiplicities()
        .iter()
        .enumerate()
        .fold(BigInt::one(), |acc, (i, &m)| {
            let fact: BigInt = (1..=m as u64).map(BigInt::from).product();
            acc * BigInt::from(i as u64 + 1).pow(m) * fact
        })
}
