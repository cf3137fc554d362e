//! Explicit permutations of `{0, ..., n-1}`, used by brute-force oracles.

use crate::partitions::Partition;

/// A permutation in one-line notation: `i -> self.0[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// A permutation of cycle type `lambda`, cycles on consecutive points.
    pub fn of_type(lambda: &Partition) -> Self {
        let mut out = Vec::with_capacity(lambda.size());
        for &c in lambda.parts() {
            let s = out.len();
            out.extend((0..c).map(|i| s + (i + 1) % c));
        }
        Perm(out)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// Cycles, each starting at its smallest element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = self.0[i];
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::new(self.cycles().iter().map(Vec::len).collect()).expect("cycle lengths are positive")
    }

    pub fn sign(&self) -> i64 {
        self.cycle_type().sign()
    }
}

/// All `n!` permutations in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![Perm(cur.clone())];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Perm(cur.clone()));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_and_types() {
        assert_eq!(all_perms(0).len(), 1);
        assert_eq!(all_perms(4).len(), 24);
        let p = Perm(vec![1, 2, 0, 4, 3]);
        assert_eq!(p.cycle_type(), Partition::new(vec![3, 2]).unwrap());
        assert_eq!(p.sign(), -1);
        assert_eq!(p.compose(&p.inverse()), Perm::identity(5));
        for lambda in crate::partitions::enumerate_partitions(5) {
            assert_eq!(Perm::of_type(&lambda).cycle_type(), lambda);
        }
    }
}
