//! Seeded generators of genuine instances in cell form.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::laurent::{GradedDim, Laurent, Rat};
use crate::partitions::factorial;
use crate::symseq::{Cell, SymSeq};

/// Shape limits for a generated sequence.
#[derive(Clone, Debug)]
pub struct SeqShape {
    pub max_arity: usize,
    /// Upper bound on the total dimension of each entry.
    pub max_entry_dim: u64,
    /// Cell degrees are drawn from this inclusive range.
    pub degrees: (i32, i32),
    /// Chance that a given arity gets a nonzero entry, in percent.
    pub density: u32,
    /// Largest constant term; 0 for reduced sequences.
    pub max_constant: u64,
}

impl SeqShape {
    pub fn reduced(max_arity: usize, max_entry_dim: u64) -> Self {
        Self {
            max_arity,
            max_entry_dim,
            degrees: (0, 1),
            density: 70,
            max_constant: 0,
        }
    }
}

fn composition_dim(c: &[usize]) -> u64 {
    let n: usize = c.iter().sum();
    let denom = c.iter().fold(BigUint::one(), |acc, &p| acc * factorial(p));
    (factorial(n) / denom).to_u64().expect("small dimension")
}

fn compositions_of(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (1..=n)
        .flat_map(|first| {
            compositions_of(n - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

pub struct InstanceGen {
    rng: ChaCha8Rng,
}

impl InstanceGen {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// An independent stream for `stream`, stable under reordering of the
    /// callers.
    pub fn for_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.rng.gen_range(0..n)
    }

    /// Cells for one entry of arity `n`, of total dimension at most `budget`.
    pub fn entry_cells(&mut self, n: usize, budget: u64, degrees: (i32, i32)) -> Vec<Cell> {
        let mut left = budget;
        let mut cells = Vec::new();
        let count = self.rng.gen_range(1..=2);
        for _ in 0..count {
            let options: Vec<Vec<usize>> = compositions_of(n)
                .into_iter()
                .filter(|c| composition_dim(c) <= left)
                .collect();
            let Some(c) = options.choose(&mut self.rng) else { break };
            let dim = composition_dim(c);
            let max_mult = (left / dim).min(2) as u32;
            let multiplicity = self.rng.gen_range(1..=max_mult);
            left -= dim * multiplicity as u64;
            cells.push(Cell {
                n,
                composition: c.clone(),
                signed: self.rng.gen_bool(0.5),
                degree: self.rng.gen_range(degrees.0..=degrees.1),
                multiplicity,
            });
        }
        cells
    }

    pub fn cells(&mut self, shape: &SeqShape) -> Vec<Cell> {
        let mut out = Vec::new();
        for n in 1..=shape.max_arity {
            if self.rng.gen_range(0..100) < shape.density {
                out.extend(self.entry_cells(n, shape.max_entry_dim, shape.degrees));
            }
        }
        if out.is_empty() {
            out.extend(self.entry_cells(1, shape.max_entry_dim, shape.degrees));
        }
        out
    }

    pub fn constant(&mut self, shape: &SeqShape) -> GradedDim {
        if shape.max_constant == 0 {
            return GradedDim::zero();
        }
        GradedDim::concentrated(
            self.rng.gen_range(shape.degrees.0..=shape.degrees.1),
            self.rng.gen_range(0..=shape.max_constant),
        )
    }

    /// A closed sequence with `bound` (at least its arity).
    pub fn seq(&mut self, shape: &SeqShape, bound: usize) -> SymSeq {
        let cells = self.cells(shape);
        let c = self.constant(shape);
        SymSeq::from_cells(bound.max(shape.max_arity), true, &cells)
            .expect("generated cells are valid")
            .with_constant(c.to_laurent())
    }

    /// Trivial-action dimensions `b_1, ..., b_max`.
    pub fn trivial_dims(&mut self, max_arity: usize, max_dim: i64, reduced: bool) -> Vec<i64> {
        let mut dims: Vec<i64> = (0..=max_arity).map(|_| self.rng.gen_range(0..=max_dim)).collect();
        if reduced {
            dims[0] = 0;
        }
        dims
    }

    /// A graded vector space of total dimension in `1..=max_total`.
    pub fn base(&mut self, max_total: u64, degrees: (i32, i32)) -> GradedDim {
        let total = self.rng.gen_range(1..=max_total);
        (0..total).fold(GradedDim::zero(), |acc, _| {
            acc.add(&GradedDim::concentrated(self.rng.gen_range(degrees.0..=degrees.1), 1))
        })
    }

    pub fn base_laurent(&mut self, max_total: u64, degrees: (i32, i32)) -> Laurent {
        self.base(max_total, degrees).to_laurent()
    }

    pub fn rational(&mut self, max: i64) -> Rat {
        Rat::from_integer(self.rng.gen_range(-max..=max).into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_genuine() {
        let shape = SeqShape::reduced(6, 3);
        let a: Vec<SymSeq> = (0..5).map(|_| InstanceGen::new(7).seq(&shape, 6)).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let mut g = InstanceGen::for_stream(7, 3);
        for _ in 0..50 {
            let s = g.seq(&shape, 6);
            assert!(s.is_reduced() && s.is_genuine());
            for (_, e) in s.entries() {
                assert!(e.dim().total() <= Rat::from_integer(3.into()));
            }
        }
        assert_ne!(
            InstanceGen::for_stream(7, 1).cells(&shape),
            InstanceGen::for_stream(7, 2).cells(&shape)
        );
    }

    #[test]
    fn composition_dims() {
        assert_eq!(composition_dim(&[2, 1]), 3);
        assert_eq!(composition_dim(&[1, 1, 1]), 6);
        assert_eq!(compositions_of(4).len(), 8);
    }
}
