//! Integer partitions, their block structure, wreath-stabilizer orders and
//! the poset of ordered tuples used to index tower diagrams.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An unordered partition, stored as its nondecreasing list of parts.
///
/// The derived ordering is lexicographic on the nondecreasing parts, which
/// is also the canonical enumeration order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("zero part in {parts:?}")));
        }
        parts.sort_unstable();
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// The partition `(1, ..., 1)` of `n`.
    pub fn ones(n: usize) -> Self {
        Self { parts: vec![1; n] }
    }

    /// The one-part partition `(n)`; empty for `n = 0`.
    pub fn single(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self { parts: vec![n] }
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiset union of parts (cycle type of a disjoint product).
    pub fn concat(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable();
        Partition { parts }
    }

    /// Multiplies every part by `m` (cycle type of the `m`-fold spread).
    pub fn scaled(&self, m: usize) -> Partition {
        Partition {
            parts: self.parts.iter().map(|p| p * m).collect(),
        }
    }

    /// `part -> multiplicity`.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &p in &self.parts {
            *out.entry(p).or_insert(0) += 1;
        }
        out
    }

    pub fn blocks(&self) -> BlockStructure {
        BlockStructure {
            blocks: self.multiplicities().into_iter().collect(),
        }
    }

    /// Parts in decreasing order (Young-diagram convention).
    pub fn decreasing(&self) -> Vec<usize> {
        self.parts.iter().rev().copied().collect()
    }

    /// `z_lambda = prod_m m^{a_m} a_m!`, the centralizer order of the class.
    pub fn z(&self) -> BigUint {
        self.multiplicities().into_iter().fold(BigUint::one(), |acc, (m, a)| {
            acc * BigUint::from(m).pow(a as u32) * factorial(a)
        })
    }

    /// Sign of a permutation with this cycle type.
    pub fn sign(&self) -> i64 {
        if (self.size() - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// A partition written as `n = k_1 l_1 + ... + k_r l_r` with
/// `l_1 < ... < l_r` and every `k_i >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockStructure {
    /// `(l_i, k_i)` pairs, strictly increasing in `l_i`.
    pub blocks: Vec<(usize, usize)>,
}

impl BlockStructure {
    pub fn new(blocks: Vec<(usize, usize)>) -> Result<Self> {
        if blocks.iter().any(|&(l, k)| l == 0 || k == 0) {
            return Err(Error::InvalidPartition(format!("zero entry in {blocks:?}")));
        }
        if blocks.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidPartition(format!(
                "part sizes not strictly increasing in {blocks:?}"
            )));
        }
        Ok(Self { blocks })
    }

    /// Number of parts `k = sum k_i`.
    pub fn k(&self) -> usize {
        self.blocks.iter().map(|b| b.1).sum()
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(|(l, k)| l * k).sum()
    }

    pub fn to_partition(&self) -> Partition {
        let mut parts = Vec::new();
        for &(l, k) in &self.blocks {
            parts.extend(std::iter::repeat_n(l, k));
        }
        Partition { parts }
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// All partitions of `n` in canonical (lexicographic, nondecreasing-parts)
/// order. `n = 0` yields the single empty partition.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, min_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in min_part..=remaining {
            // a part p must leave either nothing or something >= p
            if remaining - p != 0 && remaining - p < p {
                continue;
            }
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out
}

/// `|H(lambda)| = prod_i (l_i!)^{k_i} k_i!`, the order of the wreath
/// stabilizer.
pub fn stabilizer_order(lambda: &Partition) -> BigUint {
    lambda.blocks().blocks.iter().fold(BigUint::one(), |acc, &(l, k)| {
        acc * factorial(l).pow(k as u32) * factorial(k)
    })
}

/// Number of set partitions of an `n`-set, via Stirling numbers of the
/// second kind.
pub fn bell_number(n: usize) -> BigUint {
    // S(i, j) row by row
    let mut row = vec![BigUint::one()];
    for i in 1..=n {
        let mut next = vec![BigUint::from(0u32); i + 1];
        for j in 1..=i {
            let left = if j - 1 < row.len() {
                row[j - 1].clone()
            } else {
                BigUint::from(0u32)
            };
            let up = if j < row.len() {
                &row[j] * BigUint::from(j)
            } else {
                BigUint::from(0u32)
            };
            next[j] = left + up;
        }
        row = next;
    }
    row.into_iter().fold(BigUint::from(0u32), |a, b| a + b)
}

/// Checks that the cosets of the stabilizers `H(lambda)` account for every
/// set partition: `sum_lambda n!/|H(lambda)| = Bell(n)`.
pub fn set_partition_count_check(n: usize) -> bool {
    let nf = factorial(n);
    let total = enumerate_partitions(n)
        .iter()
        .fold(BigUint::from(0u32), |acc, l| acc + &nf / stabilizer_order(l));
    total == bell_number(n)
}

/// The poset of ordered `k`-tuples of positive integers with sum at most
/// `n`, with an arrow `r -> s` whenever `r_i >= s_i` for all `i`.
#[derive(Clone, Debug)]
pub struct PiPoset {
    pub k: usize,
    pub n: usize,
    pub objects: Vec<Vec<usize>>,
    /// Covering arrows `(from, to)` as object indices: `to` differs from
    /// `from` by decreasing one coordinate by one.
    pub covers: Vec<(usize, usize)>,
}

impl PiPoset {
    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.objects.iter().position(|o| o == tuple)
    }

    /// The (non-strict) arrow relation.
    pub fn arrow(&self, from: usize, to: usize) -> bool {
        self.objects[from].iter().zip(&self.objects[to]).all(|(r, s)| r >= s)
    }
}

/// Builds `Pi_k(n)`. When `n < k` there are no objects; this is reported
/// by an empty poset rather than an error.
pub fn build_pi_poset(k: usize, n: usize) -> PiPoset {
    let mut objects = Vec::new();
    fn rec(k: usize, budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let slots_left = k - cur.len() - 1;
        if budget < slots_left + 1 {
            return;
        }
        for v in 1..=(budget - slots_left) {
            cur.push(v);
            rec(k, budget - v, cur, out);
            cur.pop();
        }
    }
    if k >= 1 {
        rec(k, n, &mut Vec::new(), &mut objects);
    }
    let mut covers = Vec::new();
    for (i, o) in objects.iter().enumerate() {
        for c in 0..k {
            if o[c] > 1 {
                let mut t = o.clone();
                t[c] -= 1;
                let j = objects.iter().position(|x| *x == t).expect("down-closed");
                covers.push((i, j));
            }
        }
    }
    PiPoset { k, n, objects, covers }
}

/// All compositions (ordered tuples of positive integers) of `n` into `k`
/// parts.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    build_pi_poset(k, n)
        .objects
        .into_iter()
        .filter(|o| o.iter().sum::<usize>() == n)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    // p(n) via the p(n, largest part <= m) recurrence.
    fn partition_count_oracle(n: usize) -> u64 {
        let mut table = vec![vec![0u64; n + 1]; n + 1];
        for m in 0..=n {
            table[0][m] = 1;
        }
        for i in 1..=n {
            for m in 1..=n {
                table[i][m] = table[i][m - 1] + if m <= i { table[i - m][m] } else { 0 };
            }
        }
        table[n][n]
    }

    fn bell_triangle(n: usize) -> BigUint {
        let mut row = vec![BigUint::one()];
        for _ in 0..n {
            let mut next = vec![row.last().unwrap().clone()];
            for x in &row {
                let v = next.last().unwrap() + x;
                next.push(v);
            }
            row = next;
        }
        row[0].clone()
    }

    #[test]
    fn p3_in_canonical_order() {
        assert_eq!(enumerate_partitions(3), vec![p(&[1, 1, 1]), p(&[1, 2]), p(&[3])]);
        assert_eq!(enumerate_partitions(1), vec![p(&[1])]);
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(8).len(), 22);
    }

    #[test]
    fn partition_counts_match_recurrence() {
        for n in 0..=40 {
            let list = enumerate_partitions(n);
            assert_eq!(list.len() as u64, partition_count_oracle(n), "n = {n}");
            assert!(list.windows(2).all(|w| w[0] < w[1]));
            assert!(list.iter().all(|l| l.size() == n));
        }
    }

    #[test]
    fn stabilizer_orders() {
        assert_eq!(stabilizer_order(&p(&[1, 1, 1])), BigUint::from(6u32));
        assert_eq!(stabilizer_order(&p(&[3])), BigUint::from(6u32));
        assert_eq!(stabilizer_order(&p(&[1, 2])), BigUint::from(2u32));
    }

    #[test]
    fn bell_identity() {
        for n in 1..=12 {
            assert_eq!(bell_number(n), bell_triangle(n), "n = {n}");
            assert!(set_partition_count_check(n));
        }
        assert_eq!(bell_triangle(3), BigUint::from(5u32));
        assert_eq!(bell_triangle(6), BigUint::from(203u32));
    }

    #[test]
    fn block_structure_roundtrip() {
        let l = p(&[1, 1, 2, 4, 4, 4]);
        let b = l.blocks();
        assert_eq!(b.blocks, vec![(1, 2), (2, 1), (4, 3)]);
        assert_eq!(b.k(), 6);
        assert_eq!(b.n(), 16);
        assert_eq!(b.to_partition(), l);
        assert!(BlockStructure::new(vec![(2, 1), (1, 1)]).is_err());
    }

    #[test]
    fn pi_posets() {
        let c = build_pi_poset(1, 3);
        assert_eq!(c.objects, vec![vec![1], vec![2], vec![3]]);
        assert!(c.arrow(2, 0) && !c.arrow(0, 2));
        let q = build_pi_poset(2, 3);
        assert_eq!(q.objects, vec![vec![1, 1], vec![1, 2], vec![2, 1]]);
        assert_eq!(build_pi_poset(2, 4).objects.len(), 6);
        assert!(build_pi_poset(3, 2).is_empty());
        let m = build_pi_poset(3, 6);
        let min = m.index_of(&[1, 1, 1]).unwrap();
        assert!((0..m.objects.len()).all(|i| m.arrow(i, min)));
    }

    #[test]
    fn tuples_of_type_lambda() {
        // ordered tuples of type lambda number k!/(k_1! ... k_r!)
        for n in 1..=7 {
            for lambda in enumerate_partitions(n) {
                let k = lambda.len();
                let count = compositions(n, k)
                    .into_iter()
                    .filter(|t| Partition::new(t.clone()).unwrap() == lambda)
                    .count();
                let expected = lambda
                    .blocks()
                    .blocks
                    .iter()
                    .fold(factorial(k), |acc, &(_, ki)| acc / factorial(ki));
                assert_eq!(BigUint::from(count), expected);
            }
        }
    }

    #[test]
    fn json_form() {
        let l = p(&[2, 1]);
        assert_eq!(serde_json::to_string(&l).unwrap(), "[1,2]");
        let back: Partition = serde_json::from_str("[2,1]").unwrap();
        assert_eq!(back, l);
        assert!(serde_json::from_str::<Partition>("[0,1]").is_err());
    }
}
