//! Polynomial functors of several variables, stored by multi-degree, and
//! their cross- and co-cross-effects.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::characters::{class_table, GradedCharacter};
use crate::error::{Error, Result};
use crate::laurent::{Laurent, Rat};
use crate::partitions::Partition;
use crate::symfun::{character_of, plethysm, PowerSumPoly};
use crate::symseq::SymSeq;
use crate::Ctx;

/// A class function on `Sigma_{n_1} x ... x Sigma_{n_r}` with Laurent
/// values, indexed by tuples of classes in mixed radix (first slot most
/// significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiCharacter {
    ns: Vec<usize>,
    values: Vec<Laurent>,
}

/// Every tuple of classes for `ns`, in storage order.
pub fn class_tuples(ns: &[usize]) -> Vec<Vec<Partition>> {
    ns.iter().fold(vec![Vec::new()], |acc, &n| {
        let t = class_table(n);
        acc.into_iter()
            .flat_map(|prefix| {
                t.classes.iter().map(move |c| {
                    let mut v = prefix.clone();
                    v.push(c.clone());
                    v
                })
            })
            .collect()
    })
}

impl MultiCharacter {
    pub fn zero(ns: &[usize]) -> Self {
        let len = ns.iter().map(|&n| class_table(n).len()).product();
        Self {
            ns: ns.to_vec(),
            values: vec![Laurent::zero(); len],
        }
    }

    pub fn from_fn(ns: &[usize], f: impl Fn(&[Partition]) -> Laurent) -> Self {
        Self {
            ns: ns.to_vec(),
            values: class_tuples(ns).iter().map(|t| f(t)).collect(),
        }
    }

    /// Restriction of `chi` on `Sigma_{sum ns}` to the Young subgroup.
    pub fn restrict(chi: &GradedCharacter, ns: &[usize]) -> Self {
        Self::from_fn(ns, |tuple| {
            let joined = tuple.iter().fold(Partition::empty(), |acc, p| acc.concat(p));
            chi.value(&joined).expect("class").clone()
        })
    }

    pub fn ns(&self) -> &[usize] {
        &self.ns
    }

    pub fn values(&self) -> &[Laurent] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Laurent::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.ns != other.ns {
            return Err(Error::SizeMismatch(format!("{:?} vs {:?}", self.ns, other.ns)));
        }
        Ok(Self {
            ns: self.ns.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Laurent) -> Self {
        Self {
            ns: self.ns.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// Restricts slot `k` along `Sigma_a x Sigma_b <= Sigma_{n_k}`.
    pub fn split_slot(&self, k: usize, a: usize) -> Self {
        let b = self.ns[k] - a;
        let mut ns = self.ns.clone();
        ns[k] = a;
        ns.insert(k + 1, b);
        let lookup: BTreeMap<Vec<Partition>, &Laurent> = class_tuples(&self.ns).into_iter().zip(&self.values).collect();
        Self::from_fn(&ns, |tuple| {
            let mut orig: Vec<Partition> = tuple.to_vec();
            let right = orig.remove(k + 1);
            orig[k] = orig[k].concat(&right);
            lookup[&orig].clone()
        })
    }

    /// Terms `(chi(rho), prod_i prod_{c in rho_i} f(i, c), 1 / prod z)` of
    /// the multi-variable Frobenius pairing against per-slot traces.
    fn pair<T: Clone>(
        &self,
        one: &T,
        per_cycle: &mut impl FnMut(usize, usize) -> T,
        mul: &impl Fn(&T, &T) -> T,
    ) -> Vec<(Laurent, T, Rat)> {
        let mut out = Vec::new();
        for (tuple, v) in class_tuples(&self.ns).iter().zip(&self.values) {
            if v.is_zero() {
                continue;
            }
            let mut z = BigUint::one();
            let mut acc = one.clone();
            for (i, rho) in tuple.iter().enumerate() {
                z *= rho.z();
                for &c in rho.parts() {
                    acc = mul(&acc, &per_cycle(i, c));
                }
            }
            out.push((v.clone(), acc, Rat::new(BigInt::one(), BigInt::from(z))));
        }
        out
    }
}

/// A functor of `arity` variables: `(n_1, ..., n_r) -> ` multi-character.
/// The all-zero multi-degree is the constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiFunctor {
    arity: usize,
    coeffs: BTreeMap<Vec<usize>, MultiCharacter>,
}

impl MultiFunctor {
    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            coeffs: BTreeMap::new(),
        }
    }

    /// The one-variable functor with the coefficients of `a` (closed
    /// sequences only contribute their nonzero entries).
    pub fn from_seq(a: &SymSeq) -> Self {
        let mut m = Self::zero(1);
        if !a.constant().is_zero() {
            m.insert(vec![0], MultiCharacter::from_fn(&[0], |_| a.constant().clone()));
        }
        for (n, e) in a.entries() {
            m.insert(vec![n], MultiCharacter::restrict(e, &[n]));
        }
        m
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&Vec<usize>, &MultiCharacter)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, ns: &[usize]) -> MultiCharacter {
        self.coeffs.get(ns).cloned().unwrap_or_else(|| MultiCharacter::zero(ns))
    }

    pub fn insert(&mut self, ns: Vec<usize>, c: MultiCharacter) {
        assert_eq!(ns.len(), self.arity);
        if c.is_zero() {
            self.coeffs.remove(&ns);
        } else {
            self.coeffs.insert(ns, c);
        }
    }

    fn accumulate(&mut self, ns: Vec<usize>, c: &MultiCharacter) {
        let sum = self.coeff(&ns).add(c).expect("same shape");
        self.insert(ns, sum);
    }

    /// `L(.., X_k (+) X'_k, ..)` as a functor of one more variable.
    pub fn split_slot(&self, k: usize) -> Self {
        let mut out = Self::zero(self.arity + 1);
        for (ns, c) in &self.coeffs {
            for a in 0..=ns[k] {
                let mut m = ns.clone();
                m[k] = a;
                m.insert(k + 1, ns[k] - a);
                out.accumulate(m, &c.split_slot(k, a));
            }
        }
        out
    }

    /// Drops every term of degree zero in slot `k`.
    pub fn reduce_slot(&self, k: usize) -> Self {
        Self {
            arity: self.arity,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(ns, _)| ns[k] > 0)
                .map(|(ns, c)| (ns.clone(), c.clone()))
                .collect(),
        }
    }

    /// Keeps terms with `n_i <= ks[i]` in every slot.
    pub fn truncate(&self, ks: &[usize]) -> Self {
        Self {
            arity: self.arity,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(ns, _)| ns.iter().zip(ks).all(|(n, k)| n <= k))
                .map(|(ns, c)| (ns.clone(), c.clone()))
                .collect(),
        }
    }

    /// Graded dimension of `L(V_1, ..., V_r)`.
    pub fn evaluate(&self, vs: &[Laurent], ctx: &Ctx) -> Result<Laurent> {
        if vs.len() != self.arity {
            return Err(Error::SizeMismatch(format!(
                "{} inputs for arity {}",
                vs.len(),
                self.arity
            )));
        }
        let mut out = Laurent::zero();
        let mut per_cycle = |i: usize, m: usize| vs[i].adams(m, ctx.sign);
        for c in self.coeffs.values() {
            for (v, acc, w) in c.pair(&Laurent::one(), &mut per_cycle, &|a, b| a * b) {
                out += &(&v * &acc).scale(&w);
            }
        }
        Ok(out)
    }

    /// `L(G_1, ..., G_r)` as a one-variable sequence, by multi-plethysm.
    /// Every `G_i` must be reduced.
    pub fn substitute(&self, gs: &[SymSeq], ctx: &Ctx) -> Result<SymSeq> {
        if gs.len() != self.arity {
            return Err(Error::SizeMismatch(format!(
                "{} inner functors for arity {}",
                gs.len(),
                self.arity
            )));
        }
        if gs.iter().any(|g| !g.is_reduced()) {
            return Err(Error::NotReduced);
        }
        let bound = ctx.bound;
        let chs: Vec<PowerSumPoly> = gs.iter().map(SymSeq::frobenius).collect();
        let mut cache: BTreeMap<(usize, usize), PowerSumPoly> = BTreeMap::new();
        for (i, ch) in chs.iter().enumerate() {
            for m in 1..=bound {
                cache.insert((i, m), plethysm(&PowerSumPoly::p(m), ch, bound, ctx.sign)?);
            }
        }
        let mut total = PowerSumPoly::zero();
        let mut per_cycle = |i: usize, m: usize| cache.get(&(i, m)).cloned().unwrap_or_default();
        let mul = |a: &PowerSumPoly, b: &PowerSumPoly| a.mul_truncated(b, bound);
        for c in self.coeffs.values() {
            for (v, acc, w) in c.pair(&PowerSumPoly::one(), &mut per_cycle, &mul) {
                total = total.add(&acc.scale(&v.scale(&w)));
            }
        }
        let closed = gs.iter().all(SymSeq::closed);
        let mut out = SymSeq::zero(bound, closed).with_constant(total.coeff(&Partition::empty()));
        for n in 1..=bound {
            out.set(n, character_of(&total.component(n), n))?;
        }
        Ok(out)
    }

    /// Trace-oracle pairing: `sum (1/prod z) psi^j(chi(rho)) prod_i
    /// prod_{c in rho_i} f(i, c)`, with the caller's polynomial type.
    pub fn trace_terms<T: Clone>(
        &self,
        j: usize,
        ctx: &Ctx,
        one: &T,
        mut per_cycle: impl FnMut(usize, usize) -> T,
        mul: impl Fn(&T, &T) -> T,
    ) -> Vec<(Laurent, T)> {
        let mut out = Vec::new();
        for c in self.coeffs.values() {
            for (v, acc, w) in c.pair(one, &mut per_cycle, &mul) {
                out.push((v.adams(j, ctx.sign).scale(&w), acc));
            }
        }
        out
    }
}

/// `cr_r(F)`: iterated fibres, splitting the last variable each time.
pub fn cross_effect(a: &SymSeq, r: usize) -> Result<MultiFunctor> {
    if r == 0 {
        return Err(Error::Malformed("cross-effects start at r = 1".into()));
    }
    let mut m = MultiFunctor::from_seq(a).reduce_slot(0);
    for k in 1..r {
        m = m.split_slot(k - 1).reduce_slot(k - 1).reduce_slot(k);
    }
    Ok(m)
}

/// `cr^r(F)`: the alternating sum over subsets `S` of
/// `F(sum_{i in S} X_i)`, computed on multi-degree coefficients.
pub fn co_cross_effect(a: &SymSeq, r: usize) -> Result<MultiFunctor> {
    if r == 0 {
        return Err(Error::Malformed("co-cross-effects start at r = 1".into()));
    }
    let single = MultiFunctor::from_seq(a);
    let mut out = MultiFunctor::zero(r);
    for s in 0u32..(1 << r) {
        let sign = if (r as u32 - s.count_ones()).is_multiple_of(2) {
            Laurent::one()
        } else {
            -&Laurent::one()
        };
        let slots: Vec<usize> = (0..r).filter(|i| s & (1 << i) != 0).collect();
        for (ns, c) in single.coeffs() {
            let n = ns[0];
            // every way to spread n over the slots in S
            for dist in spreads(n, slots.len()) {
                let mut full = vec![0; r];
                for (slot, d) in slots.iter().zip(&dist) {
                    full[*slot] = *d;
                }
                let chi = GradedCharacter::from_values(n, c.values().to_vec())?;
                let restricted = MultiCharacter::restrict(&chi, &full);
                out.accumulate(full, &restricted.scale(&sign));
            }
        }
    }
    Ok(out)
}

/// Ordered tuples of `len` nonnegative integers summing to `n`.
fn spreads(n: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in spreads(n - first, len - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::Character;
    use crate::laurent::{rat, SignMode};
    use crate::symseq::{evaluate_seq, Cell};
    use proptest::prelude::*;

    fn ctx() -> Ctx {
        Ctx::new(SignMode::Unsigned, 6)
    }

    fn sym(n: usize) -> SymSeq {
        let mut s = SymSeq::zero(n, true);
        s.set(n, GradedCharacter::concentrated(&Character::trivial(n), 0))
            .unwrap();
        s
    }

    #[test]
    fn first_cross_effect_is_reduction() {
        let a = SymSeq::trivial_dims(&[1, 2], true).with_constant(Laurent::one());
        let cr = cross_effect(&a, 1).unwrap();
        assert_eq!(cr, MultiFunctor::from_seq(&a.residual(0)));
    }

    #[test]
    fn sym2_cross_effects() {
        let cr2 = cross_effect(&sym(2), 2).unwrap();
        let keys: Vec<_> = cr2.coeffs().map(|(k, _)| k.clone()).collect();
        assert_eq!(keys, vec![vec![1, 1]]);
        let x1 = Laurent::from_pairs([(0, rat(2))]);
        let x2 = Laurent::from_pairs([(1, rat(3))]);
        assert_eq!(cr2.evaluate(&[x1.clone(), x2.clone()], &ctx()).unwrap(), &x1 * &x2);
        assert_eq!(cross_effect(&sym(2), 3).unwrap(), MultiFunctor::zero(3));
        assert_eq!(co_cross_effect(&sym(2), 2).unwrap(), cr2);
    }

    #[test]
    fn evaluation_matches_single_variable() {
        let a = SymSeq::from_cells(
            3,
            true,
            &[
                Cell {
                    n: 3,
                    composition: vec![2, 1],
                    signed: true,
                    degree: 1,
                    multiplicity: 1,
                },
                Cell {
                    n: 2,
                    composition: vec![2],
                    signed: false,
                    degree: 0,
                    multiplicity: 2,
                },
            ],
        )
        .unwrap();
        let v = Laurent::from_pairs([(0, rat(1)), (1, rat(2))]);
        for sign in [SignMode::Unsigned, SignMode::Signed] {
            let c = Ctx::new(sign, 6);
            assert_eq!(
                MultiFunctor::from_seq(&a)
                    .evaluate(std::slice::from_ref(&v), &c)
                    .unwrap(),
                evaluate_seq(&a, &v, &c)
            );
            // F(V (+) W) as a two-variable functor
            let w = Laurent::from_pairs([(2, rat(1))]);
            let split = MultiFunctor::from_seq(&a).split_slot(0);
            assert_eq!(
                split.evaluate(&[v.clone(), w.clone()], &c).unwrap(),
                evaluate_seq(&a, &(&v + &w), &c)
            );
        }
    }

    fn arb_seq() -> impl Strategy<Value = SymSeq> {
        prop::collection::vec((1usize..=4, any::<bool>(), -1i32..=1, 0usize..4), 1..=4).prop_map(|cs| {
            let cells: Vec<Cell> = cs
                .into_iter()
                .map(|(n, signed, degree, pick)| {
                    let composition = match (n, pick % 3) {
                        (1, _) => vec![1],
                        (_, 0) => vec![n],
                        (_, 1) => vec![1; n],
                        _ => vec![n - 1, 1],
                    };
                    Cell {
                        n,
                        composition,
                        signed,
                        degree,
                        multiplicity: 1,
                    }
                })
                .collect();
            SymSeq::from_cells(4, true, &cells)
                .unwrap()
                .with_constant(Laurent::one())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn cross_matches_co_cross(a in arb_seq(), r in 1usize..=3) {
            prop_assert_eq!(cross_effect(&a, r).unwrap(), co_cross_effect(&a, r).unwrap());
        }

        #[test]
        fn substitution_matches_evaluation(a in arb_seq(), v in 0i64..=2, signed in any::<bool>()) {
            let c = Ctx::new(if signed { SignMode::Signed } else { SignMode::Unsigned }, 12);
            let l = cross_effect(&a, 2).unwrap().truncate(&[2, 2]);
            let g1 = sym(1);
            let g2 = SymSeq::trivial_dims(&[1, 1], true);
            let x = Laurent::from_pairs([(0, rat(v)), (1, rat(1))]);
            let composite = l.substitute(&[g1.clone(), g2.clone()], &c).unwrap();
            let lhs = evaluate_seq(&composite, &x, &c);
            let rhs = l.evaluate(&[evaluate_seq(&g1, &x, &c), evaluate_seq(&g2, &x, &c)], &c).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
