//! Partitions and finitely supported partition-valued functions on Φ or Θ.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};

use crate::ffield::{enumerate_cosets, frobenius_coset, CyclotomicCoset, Side};
use crate::{Error, Result};

/// An integer partition, parts weakly decreasing and positive.
///
/// Partitions of equal size are ordered reverse-lexicographically, so `(n)`
/// comes first and `(1^n)` last; smaller sizes precede larger ones.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition `(n)` (empty for `n = 0`).
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition(vec![n])
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: u32) -> Self {
        Partition(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ_i` with 1-based `i`, zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            0
        } else {
            self.0.get(i - 1).copied().unwrap_or(0)
        }
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=width)
                .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
                .collect(),
        )
    }

    /// `m_i(λ)` for `i = 1..=λ_1`, as a vector indexed from 0 for `i = 1`.
    pub fn multiplicities(&self) -> Vec<u32> {
        let width = self.0.first().copied().unwrap_or(0) as usize;
        let mut m = vec![0; width];
        for &p in &self.0 {
            m[p as usize - 1] += 1;
        }
        m
    }

    /// `m_i(λ)` for a single `i ≥ 1`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.0.iter().filter(|&&p| p == i).count() as u32
    }

    /// `|λ| + |μ|` parts merged into one partition.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Whether `other ⊆ self` as Young diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }
}

/// `n(λ) = Σ (i-1) λ_i`.
pub fn n_stat(lam: &Partition) -> u64 {
    lam.0
        .iter()
        .enumerate()
        .map(|(i, &p)| i as u64 * p as u64)
        .sum()
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn all_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(serde::de::Error::custom(
                "partition must be weakly decreasing and positive",
            ));
        }
        Ok(Partition(parts))
    }
}

/// A finitely supported function from cosets of one side to nonempty partitions.
///
/// Entries are kept sorted by coset. The empty function has weight zero and
/// belongs to either side.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PartitionFn {
    entries: Vec<(CyclotomicCoset, Partition)>,
    weight: u32,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    coset: CyclotomicCoset,
    partition: Partition,
}

impl PartitionFn {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a function from `(coset, partition)` pairs; empty partitions are dropped.
    pub fn new(entries: impl IntoIterator<Item = (CyclotomicCoset, Partition)>) -> Result<Self> {
        let mut v: Vec<(CyclotomicCoset, Partition)> =
            entries.into_iter().filter(|(_, p)| !p.is_empty()).collect();
        v.sort_by_key(|a| a.0);
        if v.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::invalid(
                "duplicate coset in partition-valued function",
            ));
        }
        if v.windows(2).any(|w| w[0].0.side != w[1].0.side) {
            return Err(Error::invalid(
                "partition-valued function mixes Φ and Θ cosets",
            ));
        }
        let weight = v.iter().map(|(c, p)| p.size() * c.level).sum();
        Ok(PartitionFn { entries: v, weight })
    }

    /// The function supported on one coset.
    pub fn single(c: CyclotomicCoset, p: Partition) -> Self {
        Self::new([(c, p)]).expect("single entry is always valid")
    }

    pub fn entries(&self) -> &[(CyclotomicCoset, Partition)] {
        &self.entries
    }

    pub fn get(&self, c: &CyclotomicCoset) -> Option<&Partition> {
        self.entries
            .binary_search_by(|(k, _)| k.cmp(c))
            .ok()
            .map(|i| &self.entries[i].1)
    }

    /// `‖f‖ = Σ |f(c)|·level(c)`.
    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn side(&self) -> Option<Side> {
        self.entries.first().map(|(c, _)| c.side)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Pointwise union of parts; supports may overlap.
    pub fn union(&self, other: &PartitionFn) -> Result<PartitionFn> {
        let mut out = self.entries.clone();
        for (c, p) in &other.entries {
            match out.iter_mut().find(|(k, _)| k == c) {
                Some((_, q)) => *q = q.union(p),
                None => out.push((*c, p.clone())),
            }
        }
        PartitionFn::new(out)
    }

    /// Checks that every coset is canonical for the field size `q`.
    pub fn validate(&self, q: u64) -> Result<()> {
        for (c, _) in &self.entries {
            if frobenius_coset(c.side, q, c.level, c.rep)? != *c {
                return Err(Error::invalid(format!(
                    "{c:?} is not a canonical coset for q={q}"
                )));
            }
        }
        Ok(())
    }
}

impl Ord for PartitionFn {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight.cmp(&other.weight).then_with(|| {
            for (a, b) in self.entries.iter().zip(&other.entries) {
                let o = a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1));
                if o != Ordering::Equal {
                    return o;
                }
            }
            self.entries.len().cmp(&other.entries.len())
        })
    }
}

impl PartialOrd for PartitionFn {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PartitionFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (c, p)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let side = match c.side {
                Side::Phi => "f",
                Side::Theta => "φ",
            };
            write!(f, "{side}[{}:{}]↦{p:?}", c.level, c.rep)?;
        }
        write!(f, "}}")
    }
}

impl Serialize for PartitionFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (c, p) in &self.entries {
            seq.serialize_element(&EntryJson {
                coset: *c,
                partition: p.clone(),
            })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for PartitionFn {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<EntryJson>::deserialize(d)?;
        if raw
            .iter()
            .any(|e| e.partition.is_empty() || e.coset.level == 0)
        {
            return Err(serde::de::Error::custom(
                "entries need a positive level and a nonempty partition",
            ));
        }
        if raw.iter().any(|e| e.coset.level > 64) {
            return Err(serde::de::Error::custom("coset level out of range"));
        }
        PartitionFn::new(raw.into_iter().map(|e| (e.coset, e.partition)))
            .map_err(serde::de::Error::custom)
    }
}

/// Every partition-valued function of weight `n` on one side, in canonical order.
pub fn enumerate_params(n: u32, q: u64, side: Side) -> Result<Vec<PartitionFn>> {
    let cosets = enumerate_cosets(q, side, n.max(1))?;
    let mut out = Vec::new();
    let mut cur = Vec::new();
    distribute(&cosets, 0, n, &mut cur, &mut out);
    let mut out: Vec<PartitionFn> = out
        .into_iter()
        .map(|e| PartitionFn::new(e).expect("distinct cosets"))
        .collect();
    out.sort();
    Ok(out)
}

fn distribute(
    cosets: &[CyclotomicCoset],
    idx: usize,
    rem: u32,
    cur: &mut Vec<(CyclotomicCoset, Partition)>,
    out: &mut Vec<Vec<(CyclotomicCoset, Partition)>>,
) {
    if rem == 0 {
        out.push(cur.clone());
        return;
    }
    let Some(&c) = cosets.get(idx) else { return };
    distribute(cosets, idx + 1, rem, cur, out);
    for k in 1..=rem / c.level {
        for p in all_partitions(k) {
            cur.push((c, p));
            distribute(cosets, idx + 1, rem - k * c.level, cur, out);
            cur.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn n_stat_examples() {
        assert_eq!(n_stat(&part(&[2])), 0);
        assert_eq!(n_stat(&part(&[1, 1])), 1);
        assert_eq!(n_stat(&part(&[1, 1, 1])), 3);
        assert_eq!(n_stat(&part(&[3, 2, 1])), 4);
    }

    #[test]
    fn partitions_reverse_lex() {
        let p4: Vec<Vec<u32>> = all_partitions(4).into_iter().map(|p| p.0).collect();
        assert_eq!(
            p4,
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
        assert_eq!(all_partitions(0), vec![Partition::empty()]);
        let counts: Vec<usize> = (0..=8).map(|n| all_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        let sorted = {
            let mut v = all_partitions(6);
            v.sort();
            v
        };
        assert_eq!(sorted, all_partitions(6));
    }

    #[test]
    fn conjugate_and_multiplicities() {
        assert_eq!(part(&[3, 1]).conjugate(), part(&[2, 1, 1]));
        assert_eq!(part(&[2, 2, 1]).multiplicities(), vec![1, 2]);
        for n in 0..7 {
            for p in all_partitions(n) {
                assert_eq!(p.conjugate().conjugate(), p);
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_params(2, 2, Side::Phi).unwrap().len(), 3);
        assert_eq!(enumerate_params(2, 3, Side::Phi).unwrap().len(), 8);
        assert_eq!(enumerate_params(1, 3, Side::Theta).unwrap().len(), 2);
        assert_eq!(
            enumerate_params(0, 3, Side::Theta).unwrap(),
            vec![PartitionFn::empty()]
        );
    }

    #[test]
    fn both_sides_have_equal_counts() {
        for (n, q) in [
            (1, 2),
            (1, 5),
            (2, 2),
            (2, 3),
            (3, 2),
            (2, 4),
            (2, 5),
            (3, 3),
            (4, 2),
        ] {
            let a = enumerate_params(n, q, Side::Phi).unwrap();
            let b = enumerate_params(n, q, Side::Theta).unwrap();
            assert_eq!(a.len(), b.len(), "n={n} q={q}");
            assert!(a.iter().all(|f| f.weight() == n));
            assert!(a.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn class_count_of_gl3_f2() {
        // GL_3(F_2) has 6 conjugacy classes.
        assert_eq!(enumerate_params(3, 2, Side::Phi).unwrap().len(), 6);
    }

    #[test]
    fn json_round_trip() {
        let params = enumerate_params(3, 2, Side::Theta).unwrap();
        for f in &params {
            let s = serde_json::to_string(f).unwrap();
            let g: PartitionFn = serde_json::from_str(&s).unwrap();
            assert_eq!(&g, f);
            g.validate(2).unwrap();
        }
        let s = serde_json::to_string(&params[0]).unwrap();
        assert!(s.starts_with(r#"[{"coset":{"side":"theta""#), "{s}");
        assert!(serde_json::from_str::<PartitionFn>(
            r#"[{"coset":{"side":"phi","level":1,"rep":0},"partition":[1,2]}]"#
        )
        .is_err());
        assert!(serde_json::from_str::<PartitionFn>(
            r#"[{"coset":{"side":"phi","level":1,"rep":0},"partition":[]}]"#
        )
        .is_err());
        let bad: PartitionFn =
            serde_json::from_str(r#"[{"coset":{"side":"phi","level":2,"rep":2},"partition":[1]}]"#)
                .unwrap();
        assert!(bad.validate(2).is_err());
    }

    proptest! {
        #[test]
        fn weight_is_additive(a in 0usize..5, b in 0usize..8) {
            let left = &enumerate_params(1, 3, Side::Phi).unwrap()[a % 2];
            let all = enumerate_params(2, 3, Side::Phi).unwrap();
            let right = &all[b % all.len()];
            let u = left.union(right).unwrap();
            prop_assert_eq!(u.weight(), left.weight() + right.weight());
        }
    }
}
