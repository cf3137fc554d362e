//! Explicit realizations of polynomial functors.
//!
//! A cell `(c, signed, degree, mult)` is realized as `mult` copies of the
//! permutation module on words `w : [n] -> blocks` with block sizes `c`
//! (twisted by the block-wise sign when `signed`). `F(V)` is the image of
//! the averaging projector on `M (x) V^{(x) n}`, computed as orbit sums of
//! the monomial basis; maps `V -> W` act factorwise.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::holim::linalg::Matrix;
use crate::laurent::{GradedDim, Rat, SignMode};
use crate::perm::{all_perms, Perm};
use crate::symseq::{Cell, SymSeq};

/// A polynomial functor in generator form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub cells: Vec<Cell>,
    pub constant: GradedDim,
}

type Key = (Vec<usize>, Vec<usize>);

/// Invariant vectors of one cell in one output degree.
#[derive(Clone, Debug, Default)]
struct Block {
    index: HashMap<Key, usize>,
    keys: Vec<Key>,
    /// Orbit sums, sparse over `keys`.
    basis: Vec<Vec<(usize, Rat)>>,
}

/// `F(V)` with explicit bases, per output degree.
#[derive(Clone, Debug)]
pub struct Evaluated {
    /// Degrees of the basis of `V`.
    pub v: Vec<i32>,
    cells: Vec<BTreeMap<i32, Block>>,
    constant: GradedDim,
}

impl Evaluated {
    pub fn dim_in(&self, d: i32, r: &Realization) -> usize {
        let mut total = self.constant.get(d) as usize;
        for (c, blocks) in r.cells.iter().zip(&self.cells) {
            total += c.multiplicity as usize * blocks.get(&d).map_or(0, |b| b.basis.len());
        }
        total
    }

    pub fn degrees(&self) -> Vec<i32> {
        let mut ds: Vec<i32> = self.constant.pairs().map(|(d, _)| d).collect();
        for blocks in &self.cells {
            ds.extend(blocks.iter().filter(|(_, b)| !b.basis.is_empty()).map(|(d, _)| *d));
        }
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn dim(&self, r: &Realization) -> GradedDim {
        GradedDim::from_pairs(self.degrees().into_iter().map(|d| (d, self.dim_in(d, r) as u64)))
    }
}

fn words(composition: &[usize]) -> Vec<Vec<usize>> {
    let n: usize = composition.iter().sum();
    let mut out = Vec::new();
    let mut left = composition.to_vec();
    let mut cur = Vec::with_capacity(n);
    fn go(left: &mut [usize], cur: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..left.len() {
            if left[b] > 0 {
                left[b] -= 1;
                cur.push(b);
                go(left, cur, n, out);
                cur.pop();
                left[b] += 1;
            }
        }
    }
    go(&mut left, &mut cur, n, &mut out);
    out
}

fn tuples(dim: usize, n: usize) -> Vec<Vec<usize>> {
    (0..n).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|t| {
                (0..dim).map(move |i| {
                    let mut e = t.clone();
                    e.push(i);
                    e
                })
            })
            .collect()
    })
}

fn sort_sign(seq: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                odd = !odd;
            }
        }
    }
    odd
}

/// `sigma . (e_w (x) v_idx)` as `(negated, w', idx')`.
fn act(
    sigma: &Perm,
    w: &[usize],
    idx: &[usize],
    v: &[i32],
    signed_cell: bool,
    sign: SignMode,
) -> (bool, Vec<usize>, Vec<usize>) {
    let n = w.len();
    let mut w2 = vec![0; n];
    let mut idx2 = vec![0; n];
    for j in 0..n {
        w2[sigma.apply(j)] = w[j];
        idx2[sigma.apply(j)] = idx[j];
    }
    let mut neg = false;
    if signed_cell {
        let blocks = w.iter().max().map_or(0, |m| m + 1);
        for b in 0..blocks {
            let images: Vec<usize> = (0..n).filter(|&j| w[j] == b).map(|j| sigma.apply(j)).collect();
            neg ^= sort_sign(&images);
        }
    }
    if sign == SignMode::Signed {
        for j in 0..n {
            for k in j + 1..n {
                if sigma.apply(j) > sigma.apply(k) && v[idx[j]] % 2 != 0 && v[idx[k]] % 2 != 0 {
                    neg = !neg;
                }
            }
        }
    }
    (neg, w2, idx2)
}

impl Realization {
    /// Reads the generator form of a sequence file: `cells` plus an
    /// optional `constant`. Explicit `entries` have no realization.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let v = v.get("coefficients").unwrap_or(v);
        if v.get("entries")
            .and_then(|e| e.as_array())
            .is_some_and(|e| !e.is_empty())
        {
            return Err(Error::Unsupported(
                "explicit entries cannot be realized; give cells".into(),
            ));
        }
        let cells: Vec<Cell> = match v.get("cells") {
            Some(c) => serde_json::from_value(c.clone()).map_err(|e| Error::Malformed(e.to_string()))?,
            None => Vec::new(),
        };
        let constant = match v.get("constant") {
            Some(c) => {
                let l: crate::laurent::Laurent =
                    serde_json::from_value(c.clone()).map_err(|e| Error::Malformed(e.to_string()))?;
                GradedDim::from_laurent(&l)?
            }
            None => GradedDim::zero(),
        };
        Self::new(cells, constant)
    }

    pub fn new(cells: Vec<Cell>, constant: GradedDim) -> Result<Self> {
        for c in &cells {
            c.validate()?;
        }
        Ok(Self { cells, constant })
    }

    pub fn degree(&self) -> usize {
        self.cells.iter().map(|c| c.n).max().unwrap_or(0)
    }

    pub fn to_seq(&self, bound: usize) -> Result<SymSeq> {
        Ok(SymSeq::from_cells(bound.max(self.degree()), true, &self.cells)?.with_constant(self.constant.to_laurent()))
    }

    fn cell_blocks(&self, cell: &Cell, v: &[i32], sign: SignMode) -> BTreeMap<i32, Block> {
        let n = cell.n;
        let perms = all_perms(n);
        let mut by_degree: BTreeMap<i32, Block> = BTreeMap::new();
        for w in words(&cell.composition) {
            for idx in tuples(v.len(), n) {
                let d = cell.degree + idx.iter().map(|&i| v[i]).sum::<i32>();
                let b = by_degree.entry(d).or_default();
                b.index.insert((w.clone(), idx.clone()), b.keys.len());
                b.keys.push((w.clone(), idx));
            }
        }
        for b in by_degree.values_mut() {
            let mut seen = vec![false; b.keys.len()];
            for start in 0..b.keys.len() {
                if seen[start] {
                    continue;
                }
                let (w, idx) = b.keys[start].clone();
                let mut sum: BTreeMap<usize, Rat> = BTreeMap::new();
                for sigma in &perms {
                    let (neg, w2, idx2) = act(sigma, &w, &idx, v, cell.signed, sign);
                    let k = b.index[&(w2, idx2)];
                    seen[k] = true;
                    let e = sum.entry(k).or_insert_with(Rat::zero);
                    if neg {
                        *e -= Rat::one();
                    } else {
                        *e += Rat::one();
                    }
                }
                let vec: Vec<(usize, Rat)> = sum.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                if !vec.is_empty() {
                    b.basis.push(vec);
                }
            }
        }
        by_degree
    }

    /// `F(V)` for `V` with basis degrees `v`.
    pub fn evaluate(&self, v: &[i32], sign: SignMode) -> Evaluated {
        Evaluated {
            v: v.to_vec(),
            cells: self.cells.iter().map(|c| self.cell_blocks(c, v, sign)).collect(),
            constant: self.constant.clone(),
        }
    }

    /// `F(f) : F(V) -> F(W)` in degree `d`, for a degree-preserving `f`
    /// (`dim W x dim V`).
    pub fn induced(&self, src: &Evaluated, dst: &Evaluated, f: &Matrix, d: i32) -> Result<Matrix> {
        if f.cols() != src.v.len() || f.rows() != dst.v.len() {
            return Err(Error::Malformed("induced map has the wrong shape".into()));
        }
        for j in 0..f.cols() {
            for i in 0..f.rows() {
                if !f.get(i, j).is_zero() && src.v[j] != dst.v[i] {
                    return Err(Error::Malformed("induced map does not preserve degree".into()));
                }
            }
        }
        let (rows, cols) = (dst.dim_in(d, self), src.dim_in(d, self));
        let mut out = Matrix::zeros(rows, cols);
        let c0 = src.constant.get(d) as usize;
        for i in 0..c0 {
            out.set(i, i, Rat::one());
        }
        let (mut r0, mut k0) = (c0, c0);
        let empty = Block::default();
        for (ci, cell) in self.cells.iter().enumerate() {
            let sb = src.cells[ci].get(&d).unwrap_or(&empty);
            let db = dst.cells[ci].get(&d).unwrap_or(&empty);
            let block = Self::induced_block(sb, db, f)?;
            for _ in 0..cell.multiplicity {
                out.put_block(r0, k0, &block);
                r0 += db.basis.len();
                k0 += sb.basis.len();
            }
        }
        Ok(out)
    }

    fn induced_block(sb: &Block, db: &Block, f: &Matrix) -> Result<Matrix> {
        let mut m = Matrix::zeros(db.basis.len(), sb.basis.len());
        let mut owner: HashMap<usize, (usize, Rat)> = HashMap::new();
        for (t, vec) in db.basis.iter().enumerate() {
            for (k, c) in vec {
                owner.insert(*k, (t, c.clone()));
            }
        }
        for (s, vec) in sb.basis.iter().enumerate() {
            let mut image: HashMap<usize, Rat> = HashMap::new();
            for (k, c) in vec {
                let (w, idx) = &sb.keys[*k];
                let mut partial: Vec<(Vec<usize>, Rat)> = vec![(Vec::new(), c.clone())];
                for &i in idx {
                    partial = partial
                        .into_iter()
                        .flat_map(|(t, coef)| {
                            (0..f.rows()).filter(|&r| !f.get(r, i).is_zero()).map(move |r| {
                                let mut e = t.clone();
                                e.push(r);
                                (e, &coef * f.get(r, i))
                            })
                        })
                        .collect();
                }
                for (t, coef) in partial {
                    let key = db
                        .index
                        .get(&(w.clone(), t))
                        .ok_or_else(|| Error::Malformed("image outside target degree".into()))?;
                    *image.entry(*key).or_insert_with(Rat::zero) += coef;
                }
            }
            image.retain(|_, c| !c.is_zero());
            // image is invariant, so it is determined by one coordinate per orbit
            let mut coords = vec![Rat::zero(); db.basis.len()];
            let mut assigned = vec![false; db.basis.len()];
            for (k, c) in &image {
                let Some((t, oc)) = owner.get(k) else {
                    return Err(Error::NotFunctorial("induced vector is not invariant".into()));
                };
                let q = c / oc;
                if assigned[*t] && coords[*t] != q {
                    return Err(Error::NotFunctorial("induced vector is not invariant".into()));
                }
                coords[*t] = q;
                assigned[*t] = true;
            }
            let support: usize = (0..db.basis.len())
                .filter(|&t| assigned[t])
                .map(|t| db.basis[t].len())
                .sum();
            if support != image.len() {
                return Err(Error::NotFunctorial("induced vector is not invariant".into()));
            }
            for (t, q) in coords.into_iter().enumerate() {
                if !q.is_zero() {
                    m.set(t, s, q);
                }
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::Laurent;
    use crate::symseq::evaluate_seq;
    use crate::Ctx;
    use proptest::prelude::*;

    fn cell(composition: &[usize], signed: bool, degree: i32, multiplicity: u32) -> Cell {
        Cell {
            n: composition.iter().sum(),
            composition: composition.to_vec(),
            signed,
            degree,
            multiplicity,
        }
    }

    #[test]
    fn symmetric_and_exterior_powers() {
        let sym2 = Realization::new(vec![cell(&[2], false, 0, 1)], GradedDim::zero()).unwrap();
        let ext2 = Realization::new(vec![cell(&[2], true, 0, 1)], GradedDim::zero()).unwrap();
        let v = [0, 0, 0];
        assert_eq!(
            sym2.evaluate(&v, SignMode::Signed).dim(&sym2),
            GradedDim::concentrated(0, 6)
        );
        assert_eq!(
            ext2.evaluate(&v, SignMode::Signed).dim(&ext2),
            GradedDim::concentrated(0, 3)
        );
        // an odd line: Sym^2 vanishes, Lambda^2 does not
        assert!(sym2.evaluate(&[1], SignMode::Signed).dim(&sym2).is_zero());
        assert_eq!(
            ext2.evaluate(&[1], SignMode::Signed).dim(&ext2),
            GradedDim::concentrated(2, 1)
        );
        assert_eq!(
            sym2.evaluate(&[1], SignMode::Unsigned).dim(&sym2),
            GradedDim::concentrated(2, 1)
        );
    }

    #[test]
    fn induced_maps_are_functorial() {
        let r = Realization::new(
            vec![cell(&[2, 1], true, 0, 1), cell(&[1, 1], false, 1, 2)],
            GradedDim::concentrated(0, 1),
        )
        .unwrap();
        let v = [0, 0];
        let a = Matrix::from_ints(&[&[1, 2], &[0, 1], &[3, -1]]);
        let b = Matrix::from_ints(&[&[1, 0, 1], &[2, 1, 0]]);
        let (ev, ew) = (
            r.evaluate(&v, SignMode::Signed),
            r.evaluate(&[0, 0, 0], SignMode::Signed),
        );
        for d in [0, 1] {
            let fa = r.induced(&ev, &ew, &a, d).unwrap();
            let fb = r.induced(&ew, &ev, &b, d).unwrap();
            assert_eq!(fb.mul(&fa), r.induced(&ev, &ev, &b.mul(&a), d).unwrap());
            assert_eq!(
                r.induced(&ev, &ev, &Matrix::identity(2), d).unwrap(),
                Matrix::identity(ev.dim_in(d, &r))
            );
        }
    }

    proptest! {
        #[test]
        fn dimensions_match_evaluation(
            comps in proptest::collection::vec((proptest::sample::select(vec![vec![1usize], vec![2], vec![1, 1], vec![3], vec![2, 1], vec![1, 1, 1]]), any::<bool>(), 0i32..=1, 1u32..=2), 1..=3),
            v in proptest::collection::vec(-1i32..=2, 0..=3),
            signed in any::<bool>(),
        ) {
            let cells: Vec<Cell> = comps.iter().map(|(c, s, d, m)| cell(c, *s, *d, *m)).collect();
            let r = Realization::new(cells, GradedDim::concentrated(1, 2)).unwrap();
            let sign = if signed { SignMode::Signed } else { SignMode::Unsigned };
            let ctx = Ctx::new(sign, 3);
            let x = v.iter().fold(Laurent::zero(), |acc, &d| acc + Laurent::monomial(d, Rat::one()));
            let expect = evaluate_seq(&r.to_seq(3).unwrap(), &x, &ctx);
            prop_assert_eq!(r.evaluate(&v, sign).dim(&r).to_laurent(), expect);
        }
    }

    #[test]
    fn reads_generator_form() {
        let v = serde_json::json!({"bound": 2, "constant": [[0, "1"]], "cells": [{"n": 2, "composition": [2], "signed": false, "degree": 0, "multiplicity": 1}]});
        let r = Realization::from_json(&v).unwrap();
        assert_eq!(r.cells.len(), 1);
        assert_eq!(r.constant, GradedDim::concentrated(0, 1));
        let explicit = serde_json::json!({"bound": 1, "entries": [{"n": 1, "degrees": []}]});
        assert!(Realization::from_json(&explicit).is_err());
    }
}
