//! Brute-force character tables of small `GL_n(F_q)`, computed from matrices
//! alone, plus the matching back to parameters.

mod dixon;
pub mod matrix;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fs;
use std::path::{Path, PathBuf};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::charmap::ParamTable;
use crate::combin::{Partition, PartitionFn};
use crate::ffield::{enumerate_cosets, FieldTower, Fq, Side};
use crate::numbers::arith::lcm;
use crate::numbers::{galois_residues, gl_order, CycNumber};
use crate::{Error, Result};

pub use matrix::{
    companion, jordan_block, jordan_form_preserved, jordan_form_preserved_by_rank, jordan_matrix,
    jordan_power, Matrix,
};

/// Largest group order the oracle will enumerate.
pub const ORDER_LIMIT: u64 = 10_000;

/// Version tag written into cached tables.
pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Default seed for the random splitting in Dixon's algorithm.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// `GL_n(F_q)` as an explicit list of matrices.
pub struct MatrixGroup {
    n: u32,
    q: u64,
    fq: Fq,
    elements: Vec<Matrix>,
    index: HashMap<Matrix, usize>,
}

impl MatrixGroup {
    pub fn gl(n: u32, q: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n must be positive"));
        }
        let order = gl_order(n, q)?;
        if order > ORDER_LIMIT.into() || n as usize > matrix::MAX_DIM {
            return Err(Error::capacity(format!(
                "|GL_{n}(F_{q})| = {order} exceeds the oracle limit {ORDER_LIMIT}"
            )));
        }
        let fq = Fq::new(q)?;
        let n_us = n as usize;
        let cells = n_us * n_us;
        let total = q.pow(cells as u32);
        let mut elements = Vec::with_capacity(order.to_usize().unwrap_or(0));
        for code in 0..total {
            let mut m = Matrix::zero(n_us);
            let mut c = code;
            for cell in (0..cells).rev() {
                m.set(cell / n_us, cell % n_us, (c % q) as u32);
                c /= q;
            }
            if m.is_invertible(&fq) {
                elements.push(m);
            }
        }
        if order != elements.len().into() {
            return Err(Error::Falsification(format!(
                "enumerated {} invertible matrices, expected {order}",
                elements.len()
            )));
        }
        let index = elements.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Ok(MatrixGroup {
            n,
            q,
            fq,
            elements,
            index,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn fq(&self) -> &Fq {
        &self.fq
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn identity(&self) -> usize {
        self.index[&Matrix::identity(self.n as usize)]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].mul(&self.elements[b], &self.fq)]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index[&self.elements[a].pow(self.order() as u64 - 1, &self.fq)]
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let id = self.identity();
        let mut x = a;
        let mut k = 1;
        while x != id {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// A diagonal generator, a transvection and two permutation matrices.
    pub fn generators(&self) -> Vec<usize> {
        let n = self.n as usize;
        let gamma = (1..self.q as u32)
            .find(|&c| (1..self.q - 1).all(|e| self.fq.pow(c, e) != 1))
            .expect("F_q^× is cyclic");
        let mut gens = Vec::new();
        let mut d = Matrix::identity(n);
        d.set(0, 0, gamma);
        gens.push(d);
        if n >= 2 {
            let mut t = Matrix::identity(n);
            t.set(0, 1, 1);
            gens.push(t);
            let mut s = Matrix::identity(n);
            s.set(0, 0, 0);
            s.set(1, 1, 0);
            s.set(0, 1, 1);
            s.set(1, 0, 1);
            gens.push(s);
            let mut c = Matrix::zero(n);
            for i in 0..n {
                c.set(i, (i + 1) % n, 1);
            }
            gens.push(c);
        }
        gens.iter().map(|m| self.index[m]).collect()
    }

    /// Size of the subgroup generated by [`MatrixGroup::generators`].
    fn generated_order(&self) -> usize {
        let gens = self.generators();
        let mut seen = vec![false; self.order()];
        let id = self.identity();
        seen[id] = true;
        let mut queue = VecDeque::from([id]);
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count
    }
}

/// Conjugacy classes as a partition of the element indices; the identity
/// class comes first.
pub struct ConjugacyClasses {
    pub class_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn representative(&self, k: usize) -> usize {
        self.members[k][0]
    }
}

/// Classes as orbits under conjugation by a generating set; the generating set
/// and the class sizes are both checked against `|G|`.
pub fn conjugacy_classes(g: &MatrixGroup) -> Result<ConjugacyClasses> {
    if g.generated_order() != g.order() {
        return Err(Error::Falsification(
            "generators do not generate the group".into(),
        ));
    }
    let gens: Vec<(usize, usize)> = g
        .generators()
        .into_iter()
        .map(|s| (s, g.inverse(s)))
        .collect();
    let mut class_of = vec![usize::MAX; g.order()];
    let mut members = Vec::new();
    let starts = std::iter::once(g.identity()).chain(0..g.order());
    for start in starts {
        if class_of[start] != usize::MAX {
            continue;
        }
        let k = members.len();
        class_of[start] = k;
        let mut orbit = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &(s, si) in &gens {
                let y = g.mul(g.mul(s, x), si);
                if class_of[y] == usize::MAX {
                    class_of[y] = k;
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        if !g.order().is_multiple_of(orbit.len()) {
            return Err(Error::Falsification(format!(
                "class size {} does not divide |G|",
                orbit.len()
            )));
        }
        members.push(orbit);
    }
    let total: usize = members.iter().map(Vec::len).sum();
    if total != g.order() {
        return Err(Error::Falsification("class sizes do not sum to |G|".into()));
    }
    Ok(ConjugacyClasses { class_of, members })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleClass {
    pub representative: Matrix,
    pub size: u64,
    pub centralizer_order: u64,
    pub element_order: u64,
    pub param: Option<PartitionFn>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleCharacter {
    pub values: Vec<CycNumber>,
    pub param: Option<PartitionFn>,
}

impl OracleCharacter {
    pub fn degree(&self) -> u64 {
        self.values[0]
            .as_rational()
            .and_then(|r| r.to_integer().to_u64())
            .unwrap_or(0)
    }
}

/// A character table computed from the group alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharTable {
    pub format_version: u32,
    pub n: u32,
    pub q: u64,
    pub seed: u64,
    pub group_order: u64,
    pub exponent: u64,
    pub prime: u64,
    pub classes: Vec<OracleClass>,
    /// `power_map[k][r]`: class of `g_k^r` for `r` modulo the exponent.
    pub power_map: Vec<Vec<usize>>,
    pub characters: Vec<OracleCharacter>,
}

impl CharTable {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// `⟨a, b⟩ = |G|⁻¹ Σ_k |C_k| a_k conj(b_k)`.
    pub fn inner_product(&self, a: &[CycNumber], b: &[CycNumber]) -> CycNumber {
        let mut s = CycNumber::zero();
        for (k, c) in self.classes.iter().enumerate() {
            s += &(&(&a[k] * &b[k].conj()) * &CycNumber::from_integer(c.size as i64));
        }
        s * CycNumber::from_rational(&crate::numbers::rat(1, self.group_order as i64))
    }

    pub fn class_of_param(&self, mu: &PartitionFn) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.param.as_ref() == Some(mu))
    }

    pub fn char_of_param(&self, lam: &PartitionFn) -> Option<usize> {
        self.characters
            .iter()
            .position(|c| c.param.as_ref() == Some(lam))
    }
}

/// The character table of `GL_n(F_q)` by Dixon's algorithm, without parameter labels.
pub fn character_table(n: u32, q: u64, seed: u64) -> Result<CharTable> {
    let g = MatrixGroup::gl(n, q)?;
    let cls = conjugacy_classes(&g)?;
    table_from_group(&g, &cls, seed)
}

pub fn table_from_group(g: &MatrixGroup, cls: &ConjugacyClasses, seed: u64) -> Result<CharTable> {
    let r = cls.len();
    let element_orders: Vec<u64> = (0..r)
        .map(|k| g.element_order(cls.representative(k)))
        .collect();
    let exponent = element_orders.iter().fold(1, |e, &o| lcm(e, o));
    let power_map: Vec<Vec<usize>> = (0..r)
        .map(|k| {
            let x = g.element(cls.representative(k));
            (0..exponent)
                .map(|j| cls.class_of[g.index_of(&x.pow(j, g.fq())).unwrap()])
                .collect()
        })
        .collect();
    let sizes: Vec<u64> = cls.members.iter().map(|m| m.len() as u64).collect();
    let inverses: Vec<usize> = (0..g.order()).map(|x| g.inverse(x)).collect();
    let mut coeffs = vec![vec![vec![0u64; r]; r]; r];
    for k in 0..r {
        let z = cls.representative(k);
        for x in 0..g.order() {
            let y = g.mul(inverses[x], z);
            coeffs[cls.class_of[x]][cls.class_of[y]][k] += 1;
        }
    }
    let alg = dixon::ClassAlgebra {
        order: g.order() as u64,
        exponent,
        sizes: &sizes,
        element_orders: &element_orders,
        power_map: &power_map,
        coeffs: &coeffs,
    };
    let (prime, rows) = dixon::dixon(&alg, seed)?;
    let mut characters: Vec<OracleCharacter> = rows
        .into_iter()
        .map(|values| OracleCharacter {
            values,
            param: None,
        })
        .collect();
    characters.sort_by_cached_key(|c| {
        (
            c.degree(),
            c.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        )
    });
    let classes = (0..r)
        .map(|k| OracleClass {
            representative: *g.element(cls.representative(k)),
            size: sizes[k],
            centralizer_order: g.order() as u64 / sizes[k],
            element_order: element_orders[k],
            param: None,
        })
        .collect();
    Ok(CharTable {
        format_version: CACHE_FORMAT_VERSION,
        n: g.n(),
        q: g.q(),
        seed,
        group_order: g.order() as u64,
        exponent,
        prime,
        classes,
        power_map,
        characters,
    })
}

/// The class representative `⊕_f ⊕_i J_{λ_i}(f)` of a class parameter.
pub fn class_representative(mu: &PartitionFn, tower: &FieldTower) -> Result<Matrix> {
    if mu.side() != Some(Side::Phi) {
        return Err(Error::invalid(
            "class representatives need a nonempty Φ-side parameter",
        ));
    }
    let mut blocks = Vec::new();
    for (c, lam) in mu.entries() {
        let poly = tower.minimal_polynomial(c)?;
        for &part in lam.parts() {
            blocks.push(jordan_block(&poly, part as usize, tower.fq())?);
        }
    }
    Matrix::direct_sum(&blocks)
}

/// Reads the class parameter of `g` from `dim ker f(g)^k`.
pub fn class_param_of(g: &Matrix, tower: &FieldTower) -> Result<PartitionFn> {
    let f = tower.fq();
    let n = g.n();
    let mut entries = Vec::new();
    for c in enumerate_cosets(tower.q(), Side::Phi, n as u32)? {
        let poly = tower.minimal_polynomial(&c)?;
        let a = g.eval_poly(&poly, f);
        if a.is_invertible(f) {
            continue;
        }
        let deg = c.degree() as usize;
        let mut conj = Vec::new();
        let mut power = Matrix::identity(n);
        let mut prev = 0;
        for _ in 0..n {
            power = power.mul(&a, f);
            let dim = n - power.rank(f);
            if dim == prev {
                break;
            }
            conj.push(((dim - prev) / deg) as u32);
            prev = dim;
        }
        entries.push((c, Partition::new(conj)?.conjugate()));
    }
    let mu = PartitionFn::new(entries)?;
    if mu.weight() as usize != n {
        return Err(Error::Falsification(format!(
            "class parameter of {g:?} has weight {}",
            mu.weight()
        )));
    }
    Ok(mu)
}

/// Labels classes by kernel dimensions and characters by exact equality with
/// the parametrized table.
pub fn match_params(table: &mut CharTable) -> Result<()> {
    let tower = FieldTower::new(table.q, table.n)?;
    for c in table.classes.iter_mut() {
        c.param = Some(class_param_of(&c.representative, &tower)?);
    }
    let params = ParamTable::new(table.n, table.q)?;
    let seen: BTreeSet<&PartitionFn> = table
        .classes
        .iter()
        .filter_map(|c| c.param.as_ref())
        .collect();
    if seen.len() != params.classes.len() || table.classes.len() != params.classes.len() {
        return Err(Error::Falsification(
            "class parameters are not a bijection".into(),
        ));
    }
    let perm: Vec<usize> = table
        .classes
        .iter()
        .map(|c| params.class_position(c.param.as_ref().unwrap()).unwrap())
        .collect();
    let mut used = vec![false; params.chars.len()];
    for ch in table.characters.iter_mut() {
        let hit = (0..params.chars.len()).find(|&i| {
            !used[i]
                && perm
                    .iter()
                    .zip(&ch.values)
                    .all(|(&p, v)| params.values[i][p] == *v)
        });
        let Some(i) = hit else {
            return Err(Error::Falsification(format!(
                "oracle character {:?} has no parametrized match",
                ch.values
            )));
        };
        used[i] = true;
        ch.param = Some(params.chars[i].clone());
    }
    Ok(())
}

/// Blocks of classes and characters under `g ↦ g^r`, `r` in `Gal(|G|, d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleOrbits {
    pub class_blocks: Vec<Vec<usize>>,
    pub char_blocks: Vec<Vec<usize>>,
}

pub fn power_map_orbits(table: &CharTable, d: u64) -> Result<OracleOrbits> {
    let spec = galois_residues(&table.group_order.into(), table.exponent, d)?;
    let residues = spec.residues_mod(table.exponent);
    let r = table.len();
    let class_blocks = blocks(r, |k, out| {
        for &res in &residues {
            out.push(table.power_map[k][res as usize]);
        }
    });
    let char_blocks = blocks(table.characters.len(), |i, out| {
        for &res in &residues {
            let image: Vec<&CycNumber> = (0..r)
                .map(|k| &table.characters[i].values[table.power_map[k][res as usize]])
                .collect();
            let j = table
                .characters
                .iter()
                .position(|c| c.values.iter().zip(&image).all(|(a, b)| a == *b))
                .expect("power maps permute irreducible characters");
            out.push(j);
        }
    });
    Ok(OracleOrbits {
        class_blocks,
        char_blocks,
    })
}

fn blocks(count: usize, images: impl Fn(usize, &mut Vec<usize>)) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; count];
    let mut out = Vec::new();
    for i in 0..count {
        if assigned[i] {
            continue;
        }
        let mut imgs = Vec::new();
        images(i, &mut imgs);
        let block: BTreeSet<usize> = imgs.into_iter().chain([i]).collect();
        for &j in &block {
            assigned[j] = true;
        }
        out.push(block.into_iter().collect());
    }
    out
}

fn is_upper_triangular(m: &Matrix) -> bool {
    (0..m.n()).all(|i| (0..i).all(|j| m.get(i, j) == 0))
}

/// `Ind_B^G Inf` of `(a, b) ↦ chi(a, b)` from the diagonal torus of `GL_2`,
/// evaluated on each class.
pub fn borel_ind_inf(
    g: &MatrixGroup,
    cls: &ConjugacyClasses,
    chi: impl Fn(u32, u32) -> CycNumber,
) -> Result<Vec<CycNumber>> {
    if g.n() != 2 {
        return Err(Error::invalid("Borel induction is implemented for GL_2"));
    }
    let q = g.q() as i64;
    let borel = (q - 1) * (q - 1) * q;
    let inverses: Vec<usize> = (0..g.order()).map(|x| g.inverse(x)).collect();
    let mut out = Vec::with_capacity(cls.len());
    for k in 0..cls.len() {
        let z = cls.representative(k);
        let mut s = CycNumber::zero();
        for x in 0..g.order() {
            let h = g.element(g.mul(g.mul(x, z), inverses[x]));
            if is_upper_triangular(h) {
                s += &chi(h.get(0, 0), h.get(1, 1));
            }
        }
        out.push(s * CycNumber::from_rational(&crate::numbers::rat(1, borel)));
    }
    Ok(out)
}

/// `Defl Res_B` of a class function of `GL_2`: the average of
/// `[[a, c], [0, b]]` over `c`, for every pair of nonzero `(a, b)`.
pub fn borel_defl_res(
    g: &MatrixGroup,
    cls: &ConjugacyClasses,
    values: &[CycNumber],
) -> Result<Vec<((u32, u32), CycNumber)>> {
    if g.n() != 2 {
        return Err(Error::invalid("Borel restriction is implemented for GL_2"));
    }
    let q = g.q() as u32;
    let mut out = Vec::new();
    for a in 1..q {
        for b in 1..q {
            let mut s = CycNumber::zero();
            for c in 0..q {
                let m = Matrix::from_rows(&[vec![a, c], vec![0, b]])?;
                let idx = g
                    .index_of(&m)
                    .expect("upper triangular with nonzero diagonal");
                s += &values[cls.class_of[idx]];
            }
            out.push((
                (a, b),
                s * CycNumber::from_rational(&crate::numbers::rat(1, q as i64)),
            ));
        }
    }
    Ok(out)
}

/// Decodes a cached table, rejecting anything that is not a consistent
/// character table of the current format.
pub fn parse_cache(text: &str) -> Result<CharTable> {
    let t: CharTable = serde_json::from_str(text)?;
    let bad = |m: &str| Err(Error::Parse(format!("cached table: {m}")));
    if t.format_version != CACHE_FORMAT_VERSION {
        return bad("unknown format version");
    }
    let k = t.classes.len();
    if k == 0 || t.group_order == 0 || t.group_order > ORDER_LIMIT || t.exponent == 0 {
        return bad("empty or oversized group");
    }
    if t.exponent > t.group_order || !t.group_order.is_multiple_of(t.exponent) {
        return bad("exponent does not divide the order");
    }
    if t.characters.len() != k || t.characters.iter().any(|c| c.values.len() != k) {
        return bad("table is not square");
    }
    if t.power_map.len() != k
        || t.power_map
            .iter()
            .any(|row| row.len() as u64 != t.exponent || row.iter().any(|&j| j >= k))
    {
        return bad("malformed power map");
    }
    let mut total = 0u64;
    for c in &t.classes {
        if c.size == 0 || c.size.checked_mul(c.centralizer_order) != Some(t.group_order) {
            return bad("class size and centralizer disagree");
        }
        total += c.size;
    }
    if total != t.group_order {
        return bad("class sizes do not sum to the order");
    }
    for (i, a) in t.characters.iter().enumerate() {
        if a.values
            .iter()
            .any(|v| !t.exponent.is_multiple_of(v.order()))
        {
            return bad("value outside the exponent field");
        }
        for (j, b) in t.characters.iter().enumerate().skip(i) {
            if t.inner_product(&a.values, &b.values) != CycNumber::from_integer((i == j) as i64) {
                return bad("rows are not orthonormal");
            }
        }
    }
    Ok(t)
}

fn cache_file(dir: &Path, n: u32, q: u64, seed: u64) -> PathBuf {
    dir.join(format!("gl{n}_q{q}_seed{seed}.json"))
}

/// The labelled table, read from `cache_dir` when a valid copy exists and
/// written there otherwise.
pub fn load_or_compute(n: u32, q: u64, seed: u64, cache_dir: Option<&Path>) -> Result<CharTable> {
    if let Some(dir) = cache_dir {
        let path = cache_file(dir, n, q, seed);
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(t) = parse_cache(&text) {
                if t.n == n && t.q == q && t.seed == seed {
                    return Ok(t);
                }
            }
        }
    }
    let mut t = character_table(n, q, seed)?;
    match_params(&mut t)?;
    if let Some(dir) = cache_dir {
        fs::create_dir_all(dir)?;
        let text = serde_json::to_string(&t)?;
        fs::write(cache_file(dir, n, q, seed), text)?;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charmap::{steinberg_param, trivial_param};
    use crate::galois::galois_irr_indices;

    fn check_orthogonality(t: &CharTable) {
        for (i, a) in t.characters.iter().enumerate() {
            for (j, b) in t.characters.iter().enumerate() {
                let ip = t.inner_product(&a.values, &b.values);
                assert_eq!(ip, CycNumber::from_integer((i == j) as i64), "rows {i},{j}");
            }
        }
    }

    #[test]
    fn gl2_f2_is_s3() {
        let t = character_table(2, 2, DEFAULT_SEED).unwrap();
        assert_eq!(t.group_order, 6);
        let degrees: Vec<u64> = t.characters.iter().map(OracleCharacter::degree).collect();
        assert_eq!(degrees, vec![1, 1, 2]);
        let sizes: BTreeSet<u64> = t.classes.iter().map(|c| c.size).collect();
        assert_eq!(sizes, BTreeSet::from([1, 2, 3]));
        check_orthogonality(&t);
    }

    #[test]
    fn gl2_f3_degrees() {
        let t = character_table(2, 3, DEFAULT_SEED).unwrap();
        let degrees: Vec<u64> = t.characters.iter().map(OracleCharacter::degree).collect();
        assert_eq!(degrees, vec![1, 1, 2, 2, 2, 3, 3, 4]);
        check_orthogonality(&t);
    }

    #[test]
    fn seed_independent() {
        let a = character_table(2, 3, 1).unwrap();
        let b = character_table(2, 3, 99).unwrap();
        assert_eq!(a.characters, b.characters);
    }

    #[test]
    fn matching_gl2_f2() {
        let mut t = character_table(2, 2, DEFAULT_SEED).unwrap();
        match_params(&mut t).unwrap();
        let triv = t.char_of_param(&trivial_param(2)).unwrap();
        assert!(t.characters[triv]
            .values
            .iter()
            .all(|v| *v == CycNumber::one()));
        let st = t.char_of_param(&steinberg_param(2)).unwrap();
        assert_eq!(t.characters[st].degree(), 2);
    }

    #[test]
    fn representatives_round_trip() {
        for (n, q) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
            let tower = FieldTower::new(q, n).unwrap();
            for mu in crate::combin::enumerate_params(n, q, Side::Phi).unwrap() {
                let g = class_representative(&mu, &tower).unwrap();
                assert_eq!(class_param_of(&g, &tower).unwrap(), mu);
            }
        }
    }

    #[test]
    fn orbits_match_galois_blocks() {
        let mut t = character_table(2, 3, DEFAULT_SEED).unwrap();
        match_params(&mut t).unwrap();
        for d in [1, 2, 3, 4, 6, 8, 12, 16, 24, 48] {
            let o = power_map_orbits(&t, d).unwrap();
            let theory = galois_irr_indices(2, 3, d).unwrap();
            assert_eq!(o.char_blocks.len(), theory.len(), "d={d}");
            for block in &o.char_blocks {
                let params: BTreeSet<_> = block
                    .iter()
                    .map(|&i| t.characters[i].param.clone().unwrap())
                    .collect();
                assert!(theory.iter().any(|orb| orb
                    .members
                    .iter()
                    .cloned()
                    .collect::<BTreeSet<_>>()
                    == params));
            }
        }
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("galchar-oracle-test-{}", std::process::id()));
        let a = load_or_compute(2, 2, 3, Some(&dir)).unwrap();
        let b = load_or_compute(2, 2, 3, Some(&dir)).unwrap();
        assert_eq!(a, b);
        fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn cache_validation() {
        for (n, q) in [(1, 3), (2, 2), (2, 3)] {
            let t = load_or_compute(n, q, DEFAULT_SEED, None).unwrap();
            let text = serde_json::to_string(&t).unwrap();
            assert_eq!(parse_cache(&text).unwrap(), t);
        }
        let t = load_or_compute(2, 3, DEFAULT_SEED, None).unwrap();
        let mut swapped = t.clone();
        swapped.characters[1].values[2] = CycNumber::from_integer(5);
        assert!(parse_cache(&serde_json::to_string(&swapped).unwrap()).is_err());
        let mut short = t.clone();
        short.power_map[0].pop();
        assert!(parse_cache(&serde_json::to_string(&short).unwrap()).is_err());
        let mut old = t;
        old.format_version = 0;
        assert!(parse_cache(&serde_json::to_string(&old).unwrap()).is_err());
        assert!(parse_cache("{}").is_err());
    }

    #[test]
    #[ignore]
    fn larger_groups_match() {
        for (n, q) in [(1, 5), (3, 2), (2, 4), (2, 5)] {
            let start = std::time::Instant::now();
            let mut t = character_table(n, q, DEFAULT_SEED).unwrap();
            let dixon = start.elapsed();
            match_params(&mut t).unwrap();
            eprintln!(
                "({n},{q}) classes={} dixon={dixon:?} total={:?}",
                t.len(),
                start.elapsed()
            );
        }
    }

    #[test]
    fn capacity() {
        assert!(matches!(MatrixGroup::gl(3, 3), Err(Error::Capacity(_))));
    }
}
