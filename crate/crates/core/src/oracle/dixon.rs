//! Dixon's algorithm: irreducible characters from class multiplication
//! coefficients, split modulo a prime and lifted to cyclotomic integers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numbers::arith::{factorize, gcd, is_prime, mod_inverse, mod_pow};
use crate::numbers::CycNumber;
use crate::{Error, Result};

pub(super) struct ClassAlgebra<'a> {
    pub order: u64,
    pub exponent: u64,
    pub sizes: &'a [u64],
    pub element_orders: &'a [u64],
    /// `power_map[k][j]`: class of `g_k^j`, `j` mod the exponent.
    pub power_map: &'a [Vec<usize>],
    /// `coeffs[i][j][k]`: number of `x ∈ C_i` with `x⁻¹ g_k ∈ C_j`.
    pub coeffs: &'a [Vec<Vec<u64>>],
}

/// Smallest prime `ℓ ≡ 1 (mod e)` with `ℓ > 2√|G|` and `ℓ ∤ |G|`.
pub(super) fn dixon_prime(order: u64, exponent: u64) -> u64 {
    let mut l = exponent + 1;
    loop {
        if is_prime(l) && (l as u128) * (l as u128) > 4 * order as u128 && !order.is_multiple_of(l)
        {
            return l;
        }
        l += exponent;
    }
}

fn primitive_root(l: u64) -> u64 {
    let primes: Vec<u64> = factorize((l - 1) as u128)
        .into_iter()
        .map(|(p, _)| p as u64)
        .collect();
    (2..l)
        .find(|&g| primes.iter().all(|&p| mod_pow(g, (l - 1) / p, l) != 1))
        .unwrap_or(1)
}

fn inv(a: u64, l: u64) -> u64 {
    mod_inverse(a % l, l).expect("nonzero residue modulo a prime")
}

/// Null space of an `rows × cols` matrix mod `l`, as coefficient vectors.
fn nullspace(mut a: Vec<Vec<u64>>, cols: usize, l: u64) -> Vec<Vec<u64>> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let iv = inv(a[r][c], l);
        for x in a[r].iter_mut() {
            *x = *x * iv % l;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let k = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + l - k * a[r][j] % l) % l;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (l - a[row][fc]) % l;
            }
            v
        })
        .collect()
}

/// Splits the `M`-invariant subspace spanned by `basis` into eigenspaces.
fn eigen_split(m: &[Vec<u64>], basis: &[Vec<u64>], l: u64) -> Vec<Vec<Vec<u64>>> {
    let r = m.len();
    let d = basis.len();
    let mb: Vec<Vec<u64>> = (0..r)
        .map(|j| {
            (0..d)
                .map(|t| (0..r).fold(0, |s, k| (s + m[j][k] * basis[t][k]) % l))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut found = 0;
    for lam in 0..l {
        let a: Vec<Vec<u64>> = (0..r)
            .map(|j| {
                (0..d)
                    .map(|t| (mb[j][t] + l - lam * basis[t][j] % l) % l)
                    .collect()
            })
            .collect();
        let ns = nullspace(a, d, l);
        if ns.is_empty() {
            continue;
        }
        found += ns.len();
        out.push(
            ns.iter()
                .map(|c| {
                    (0..r)
                        .map(|k| (0..d).fold(0, |s, t| (s + c[t] * basis[t][k]) % l))
                        .collect()
                })
                .collect(),
        );
        if found == d {
            break;
        }
    }
    out
}

/// Irreducible characters as rows of values over the classes.
pub(super) fn dixon(alg: &ClassAlgebra<'_>, seed: u64) -> Result<(u64, Vec<Vec<CycNumber>>)> {
    let r = alg.sizes.len();
    let l = dixon_prime(alg.order, alg.exponent);
    let mats: Vec<Vec<Vec<u64>>> = alg
        .coeffs
        .iter()
        .map(|ci| {
            ci.iter()
                .map(|row| row.iter().map(|&c| c % l).collect())
                .collect()
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut queue = vec![identity];
    let mut lines = Vec::new();
    while let Some(w) = queue.pop() {
        if w.len() == 1 {
            lines.push(w.into_iter().next().unwrap());
            continue;
        }
        let mut split = None;
        for attempt in 0..64 + r {
            let m: Vec<Vec<u64>> = if attempt < 64 {
                let a: Vec<u64> = (0..r).map(|_| rng.gen_range(0..l)).collect();
                (0..r)
                    .map(|j| {
                        (0..r)
                            .map(|k| (0..r).fold(0, |s, i| (s + a[i] * mats[i][j][k]) % l))
                            .collect()
                    })
                    .collect()
            } else {
                mats[attempt - 64].clone()
            };
            let parts = eigen_split(&m, &w, l);
            if parts.len() > 1 {
                split = Some(parts);
                break;
            }
        }
        match split {
            Some(parts) => queue.extend(parts),
            None => {
                return Err(Error::Falsification(
                    "class algebra does not split into lines".into(),
                ))
            }
        }
    }
    if lines.len() != r {
        return Err(Error::Falsification(format!(
            "found {} characters for {r} classes",
            lines.len()
        )));
    }

    let inverse: Vec<usize> = alg
        .power_map
        .iter()
        .map(|pm| pm[(alg.exponent - 1) as usize])
        .collect();
    let z = mod_pow(primitive_root(l), (l - 1) / alg.exponent, l);
    let mut rows = Vec::with_capacity(r);
    for mut w in lines {
        if w[0] == 0 {
            return Err(Error::Falsification(
                "central character vanishes at the identity".into(),
            ));
        }
        let s = inv(w[0], l);
        for x in w.iter_mut() {
            *x = *x * s % l;
        }
        let norm = (0..r).fold(0, |acc, k| {
            (acc + w[k] * w[inverse[k]] % l * inv(alg.sizes[k], l)) % l
        });
        let target = alg.order % l * inv(norm, l) % l;
        let degree = (1..=alg.order)
            .take_while(|d| d * d <= alg.order)
            .find(|d| d * d % l == target)
            .ok_or_else(|| Error::Falsification("no admissible character degree".into()))?;
        let theta: Vec<u64> = (0..r)
            .map(|k| degree % l * w[k] % l * inv(alg.sizes[k], l) % l)
            .collect();
        let mut row = Vec::with_capacity(r);
        for k in 0..r {
            let o = alg.element_orders[k];
            let zo = mod_pow(z, alg.exponent / o, l);
            let io = inv(o, l);
            let mut value = CycNumber::zero();
            for s in 0..o {
                let mut m = 0;
                for j in 0..o {
                    let t = theta[alg.power_map[k][(j % alg.exponent) as usize]];
                    let e = (j * s) % o;
                    m = (m + t * mod_pow(zo, (o - e) % o, l)) % l;
                }
                m = m * io % l;
                if m > degree {
                    return Err(Error::Falsification(
                        "eigenvalue multiplicity exceeds the degree".into(),
                    ));
                }
                if m > 0 {
                    value += &(CycNumber::root_of_unity(o, s as i64)
                        * CycNumber::from_integer(m as i64));
                }
            }
            row.push(value);
        }
        rows.push(row);
    }
    let degree_sum: u64 = rows
        .iter()
        .map(|row| {
            row[0]
                .as_rational()
                .and_then(|x| x.to_integer().try_into().ok())
                .unwrap_or(0u64)
        })
        .map(|d| d * d)
        .sum();
    if degree_sum != alg.order {
        return Err(Error::Falsification(format!(
            "degrees square-sum to {degree_sum}, not {}",
            alg.order
        )));
    }
    debug_assert!(gcd(l, alg.order) == 1);
    Ok((l, rows))
}
