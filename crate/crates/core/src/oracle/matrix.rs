//! Small square matrices over `F_q` and Jordan blocks.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ffield::Fq;
use crate::{Error, Result};

/// Largest matrix size handled.
pub const MAX_DIM: usize = 4;

/// An `n×n` matrix over `F_q`, entries stored as `F_q` codes, row-major.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    n: u8,
    e: [u8; MAX_DIM * MAX_DIM],
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_DIM);
        Matrix {
            n: n as u8,
            e: [0; MAX_DIM * MAX_DIM],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > MAX_DIM || rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid(format!(
                "matrix must be square of size 1..={MAX_DIM}"
            )));
        }
        let mut m = Self::zero(n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x > u8::MAX as u32 {
                    return Err(Error::invalid("matrix entry out of range"));
                }
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.e[i * MAX_DIM + j] as u32
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.e[i * MAX_DIM + j] = x as u8;
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.n())
            .map(|i| (0..self.n()).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn mul(&self, other: &Matrix, f: &Fq) -> Matrix {
        let n = self.n();
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut s = 0;
                for k in 0..n {
                    s = f.add(s, f.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, s);
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix, f: &Fq) -> Matrix {
        let n = self.n();
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, f.add(self.get(i, j), other.get(i, j)));
            }
        }
        out
    }

    pub fn scale(&self, c: u32, f: &Fq) -> Matrix {
        let n = self.n();
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, f.mul(c, self.get(i, j)));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64, f: &Fq) -> Matrix {
        let mut acc = Matrix::identity(self.n());
        let mut b = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b, f);
            }
            b = b.mul(&b, f);
            e >>= 1;
        }
        acc
    }

    pub fn rank(&self, f: &Fq) -> usize {
        let n = self.n();
        let mut m = self.rows();
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..n).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, p);
            let inv = f.inv(m[r][c]);
            for x in m[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
            for i in 0..n {
                if i != r && m[i][c] != 0 {
                    let k = m[i][c];
                    for j in 0..n {
                        m[i][j] = f.sub(m[i][j], f.mul(k, m[r][j]));
                    }
                }
            }
            r += 1;
        }
        r
    }

    pub fn is_invertible(&self, f: &Fq) -> bool {
        self.rank(f) == self.n()
    }

    /// `p(A)` for a polynomial given low-to-high as `F_q` codes.
    pub fn eval_poly(&self, poly: &[u32], f: &Fq) -> Matrix {
        let n = self.n();
        let mut acc = Matrix::zero(n);
        for &c in poly.iter().rev() {
            acc = acc.mul(self, f).add(&Matrix::identity(n).scale(c, f), f);
        }
        acc
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[Matrix]) -> Result<Matrix> {
        let n: usize = blocks.iter().map(Matrix::n).sum();
        if n == 0 || n > MAX_DIM {
            return Err(Error::capacity(format!(
                "matrix size {n} outside 1..={MAX_DIM}"
            )));
        }
        let mut out = Matrix::zero(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n() {
                for j in 0..b.n() {
                    out.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.n();
        }
        Ok(out)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<u32>>::deserialize(d)?;
        Matrix::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// Companion matrix of a monic polynomial (low-to-high codes): ones on the
/// superdiagonal, last row `-a_0, …, -a_{d-1}`.
pub fn companion(poly: &[u32], f: &Fq) -> Result<Matrix> {
    let d = poly.len().saturating_sub(1);
    if d == 0 || d > MAX_DIM || poly[d] != 1 {
        return Err(Error::invalid(
            "companion matrix needs a monic polynomial of degree 1..=4",
        ));
    }
    let mut m = Matrix::zero(d);
    for i in 0..d - 1 {
        m.set(i, i + 1, 1);
    }
    for j in 0..d {
        m.set(d - 1, j, f.neg(poly[j]));
    }
    Ok(m)
}

/// `J_m(f)`: `m` companion blocks of `f` on the diagonal, identities above.
pub fn jordan_block(poly: &[u32], m: usize, f: &Fq) -> Result<Matrix> {
    let c = companion(poly, f)?;
    let d = c.n();
    if d * m > MAX_DIM {
        return Err(Error::capacity(format!(
            "J_{m} of a degree-{d} polynomial exceeds {MAX_DIM}×{MAX_DIM}"
        )));
    }
    let mut out = Matrix::zero(d * m);
    for b in 0..m {
        for i in 0..d {
            for j in 0..d {
                out.set(b * d + i, b * d + j, c.get(i, j));
            }
            if b + 1 < m {
                out.set(b * d + i, (b + 1) * d + i, 1);
            }
        }
    }
    Ok(out)
}

fn binomial_mod(l: u64, k: u64, p: u64) -> u64 {
    // Lucas' theorem
    let (mut l, mut k) = (l, k);
    let mut out = 1u64;
    while k > 0 || l > 0 {
        let (a, b) = (l % p, k % p);
        if b > a {
            return 0;
        }
        let mut c = 1u64;
        for i in 0..b {
            c = c * (a - i) % p;
        }
        let mut den = 1u64;
        for i in 1..=b {
            den = den * i % p;
        }
        out = out * c % p * crate::numbers::arith::mod_inverse(den, p).unwrap_or(1) % p;
        l /= p;
        k /= p;
    }
    out
}

/// `J_n(λ)^l` from the entry formula `a_{ij} = C(l, j-i) λ^{l-(j-i)}`.
pub fn jordan_power(n: usize, lam: u32, l: u64, f: &Fq) -> Result<Matrix> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::capacity(format!(
            "Jordan block size {n} outside 1..={MAX_DIM}"
        )));
    }
    let p = f.characteristic() as u64;
    let mut m = Matrix::zero(n);
    for i in 0..n {
        for j in i..n {
            let k = (j - i) as u64;
            if k > l {
                continue;
            }
            let b = binomial_mod(l, k, p);
            let c = f.mul(f.from_int(b as i64), f.pow(lam, l - k));
            m.set(i, j, c);
        }
    }
    Ok(m)
}

/// The single Jordan block `J_n(λ)` over `F_q`.
pub fn jordan_matrix(n: usize, lam: u32) -> Matrix {
    let mut m = Matrix::zero(n);
    for i in 0..n {
        m.set(i, i, lam);
        if i + 1 < n {
            m.set(i, i + 1, 1);
        }
    }
    m
}

/// The criterion for `J_n(λ)^l` to stay a single Jordan block: `gcd(l, p) = 1`.
pub fn jordan_form_preserved(l: u64, p: u64) -> bool {
    crate::numbers::arith::gcd(l, p) == 1
}

/// Whether `J_n(λ)^l` is a single Jordan block, read from `rank(A - λ^l I) = n - 1`.
pub fn jordan_form_preserved_by_rank(n: usize, lam: u32, l: u64, f: &Fq) -> Result<bool> {
    let a = jordan_power(n, lam, l, f)?;
    let shift = Matrix::identity(n).scale(f.neg(f.pow(lam, l)), f);
    Ok(a.add(&shift, f).rank(f) == n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn representatives() {
        let f2 = Fq::new(2).unwrap();
        assert_eq!(
            jordan_block(&[1, 1], 2, &f2).unwrap().rows(),
            vec![vec![1, 1], vec![0, 1]]
        );
        assert_eq!(
            companion(&[1, 1, 1], &f2).unwrap().rows(),
            vec![vec![0, 1], vec![1, 1]]
        );
        let id = Matrix::direct_sum(&[companion(&[1, 1], &f2).unwrap(); 2]).unwrap();
        assert_eq!(id, Matrix::identity(2));
    }

    #[test]
    fn jordan_power_examples() {
        let f2 = Fq::new(2).unwrap();
        assert_eq!(jordan_power(2, 1, 2, &f2).unwrap(), Matrix::identity(2));
        assert_eq!(
            jordan_power(2, 1, 3, &f2).unwrap().rows(),
            vec![vec![1, 1], vec![0, 1]]
        );
        let f5 = Fq::new(5).unwrap();
        // J_3(λ)^2: λ², 2λ, 1
        let a = jordan_power(3, 3, 2, &f5).unwrap();
        assert_eq!(a.rows(), vec![vec![4, 1, 1], vec![0, 4, 1], vec![0, 0, 4]]);
        assert!(jordan_form_preserved(3, 2));
        assert!(!jordan_form_preserved(2, 2));
        assert!(jordan_form_preserved(1, 7));
    }

    #[test]
    fn formula_matches_repeated_multiplication() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let q = [2u64, 3, 4][rng.gen_range(0..3)];
            let f = Fq::new(q).unwrap();
            let n = rng.gen_range(1..=4);
            let lam = rng.gen_range(0..q as u32);
            let l = rng.gen_range(1..=12);
            let j = jordan_matrix(n, lam);
            assert_eq!(jordan_power(n, lam, l, &f).unwrap(), j.pow(l, &f));
        }
    }

    #[test]
    fn jordan_preservation_grid() {
        for q in [2u64, 3, 4] {
            let f = Fq::new(q).unwrap();
            for n in 2..=3 {
                for lam in 1..q as u32 {
                    for l in 1..=12 {
                        assert_eq!(
                            jordan_form_preserved_by_rank(n, lam, l, &f).unwrap(),
                            jordan_form_preserved(l, f.characteristic() as u64),
                            "q={q} n={n} λ={lam} l={l}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn json_rows() {
        let m = Matrix::from_rows(&[vec![0, 1], vec![1, 1]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, "[[0,1],[1,1]]");
        assert_eq!(serde_json::from_str::<Matrix>(&s).unwrap(), m);
        assert!(serde_json::from_str::<Matrix>("[[0,1],[1]]").is_err());
        assert!(serde_json::from_str::<Matrix>("[]").is_err());
    }
}
