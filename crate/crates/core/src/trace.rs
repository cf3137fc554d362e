//! Derivative extraction by twisted traces, independent of the composition
//! product.
//!
//! To read off `chi_{d_n H(X)}(sigma)`, evaluate `H` on `X (+) L_1 (+) ... (+) L_n`
//! where `sigma` permutes the lines `L_i` and each line carries a weight.
//! The trace of `sigma` on the part that is linear in every line is the
//! character value. Weights are tracked per cycle of `sigma` (the
//! multilinear part only ever sees each cycle once), so polynomials are
//! maps from bitmasks of cycles to Laurent polynomials, and only disjoint
//! masks multiply.
//!
//! `T_W(j)` denotes `psi^j` of the graded trace of `g^j` on `W`. For a
//! polynomial functor with coefficients `A`,
//! `T_{F(W)}(j) = psi^j(c) + sum_m sum_{tau |- m} psi^j(chi_{A_m}(tau)) / z_tau prod_{c in tau} T_W(j c)`.

use std::collections::{BTreeMap, HashMap};

use crate::characters::{class_table, GradedCharacter};
use crate::laurent::{rat, Laurent};
use crate::multi::MultiFunctor;
use crate::partitions::Partition;
use crate::symseq::SymSeq;
use crate::Ctx;

/// Multilinear polynomial in cycle weights with Laurent coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MPoly {
    terms: BTreeMap<u32, Laurent>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Laurent) -> Self {
        let mut p = Self::zero();
        p.add_term(0, c);
        p
    }

    pub fn one() -> Self {
        Self::constant(Laurent::one())
    }

    pub fn add_term(&mut self, mask: u32, c: Laurent) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn coeff(&self, mask: u32) -> Laurent {
        self.terms.get(&mask).cloned().unwrap_or_default()
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1 & m2 == 0 {
                    out.add_term(m1 | m2, c1 * c2);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Laurent) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(*m, x * c);
        }
        out
    }
}

/// One step of a functor expression.
#[derive(Clone, Debug)]
pub enum Node {
    /// The variable.
    Input,
    /// A one-variable polynomial functor applied to an earlier node.
    Apply { coeffs: SymSeq, arg: usize },
    /// A multi-variable functor applied to earlier nodes, one per slot.
    Multi { functor: MultiFunctor, args: Vec<usize> },
}

/// A functor built from polynomial pieces; the last node is the output.
#[derive(Clone, Debug)]
pub struct Circuit {
    nodes: Vec<Node>,
}

impl Default for Circuit {
    fn default() -> Self {
        Self::new()
    }
}

impl Circuit {
    /// The identity functor.
    pub fn new() -> Self {
        Self {
            nodes: vec![Node::Input],
        }
    }

    /// `F_1(F_2(... F_k(V)))`, listed outermost first.
    pub fn chain(seqs: &[&SymSeq]) -> Self {
        let mut c = Self::new();
        for s in seqs.iter().rev() {
            c.apply((*s).clone(), c.output());
        }
        c
    }

    pub fn output(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn apply(&mut self, coeffs: SymSeq, arg: usize) -> usize {
        assert!(arg < self.nodes.len());
        self.nodes.push(Node::Apply { coeffs, arg });
        self.output()
    }

    pub fn apply_multi(&mut self, functor: MultiFunctor, args: Vec<usize>) -> usize {
        assert_eq!(functor.arity(), args.len());
        assert!(args.iter().all(|&a| a < self.nodes.len()));
        self.nodes.push(Node::Multi { functor, args });
        self.output()
    }

    pub(crate) fn trace(
        &self,
        node: usize,
        j: usize,
        base: &dyn Fn(usize) -> MPoly,
        memo: &mut HashMap<(usize, usize), MPoly>,
        ctx: &Ctx,
    ) -> MPoly {
        if let Some(p) = memo.get(&(node, j)) {
            return p.clone();
        }
        let out = match &self.nodes[node] {
            Node::Input => base(j),
            Node::Apply { coeffs, arg } => {
                let mut acc = MPoly::constant(coeffs.constant().adams(j, ctx.sign));
                for (m, e) in coeffs.entries() {
                    let t = class_table(m);
                    for (i, tau) in t.classes.iter().enumerate() {
                        if e.at(i).is_zero() {
                            continue;
                        }
                        let mut prod = MPoly::constant(e.at(i).adams(j, ctx.sign).scale(&t.inv_z[i]));
                        for &c in tau.parts() {
                            prod = prod.mul(&self.trace(*arg, j * c, base, memo, ctx));
                            if prod.terms.is_empty() {
                                break;
                            }
                        }
                        acc.add_assign(&prod);
                    }
                }
                acc
            }
            Node::Multi { functor, args } => {
                let mut inner: HashMap<(usize, usize), MPoly> = HashMap::new();
                for &(slot, c) in &multi_cycles(functor) {
                    let v = self.trace(args[slot], j * c, base, memo, ctx);
                    inner.insert((slot, c), v);
                }
                let terms = functor.trace_terms(
                    j,
                    ctx,
                    &MPoly::one(),
                    |slot, c| inner[&(slot, c)].clone(),
                    |a, b| a.mul(b),
                );
                let mut acc = MPoly::zero();
                for (w, p) in terms {
                    acc.add_assign(&p.scale(&w));
                }
                acc
            }
        };
        memo.insert((node, j), out.clone());
        out
    }

    /// Graded dimension of the output at `V`.
    pub fn evaluate(&self, v: &Laurent, ctx: &Ctx) -> Laurent {
        let base = |j: usize| MPoly::constant(v.adams(j, ctx.sign));
        self.trace(self.output(), 1, &base, &mut HashMap::new(), ctx).coeff(0)
    }

    /// `d_n` of the output at base `X`, as a graded character.
    pub fn derivative_at(&self, x: &Laurent, n: usize, ctx: &Ctx) -> GradedCharacter {
        GradedCharacter::from_fn(n, |sigma| {
            let base = probe_base(x, sigma, ctx);
            self.trace(self.output(), 1, &base, &mut HashMap::new(), ctx)
                .coeff(full_mask(sigma))
        })
    }

    /// `d_1, ..., d_max` at base `X` as a reduced sequence.
    pub fn derivatives_at(&self, x: &Laurent, max_n: usize, ctx: &Ctx) -> SymSeq {
        let mut s = SymSeq::zero(max_n, false);
        for n in 1..=max_n {
            s.set(n, self.derivative_at(x, n, ctx)).expect("in range");
        }
        s
    }
}

/// Traces `T_{X (+) Z}(j)` for the permutation module `Z` of `sigma`, with
/// one weight per cycle.
pub(crate) fn probe_base<'a>(x: &'a Laurent, sigma: &Partition, ctx: &'a Ctx) -> impl Fn(usize) -> MPoly + 'a {
    let lens = sigma.parts().to_vec();
    move |j: usize| {
        let mut p = MPoly::constant(x.adams(j, ctx.sign));
        for (idx, &len) in lens.iter().enumerate() {
            if len == j {
                p.add_term(1 << idx, Laurent::constant(rat(len as i64)));
            }
        }
        p
    }
}

/// The mask with every cycle of `sigma` present.
pub(crate) fn full_mask(sigma: &Partition) -> u32 {
    (1u32 << sigma.len()) - 1
}

/// Every `(slot, cycle length)` pair that the multi-functor pairing needs.
fn multi_cycles(f: &MultiFunctor) -> Vec<(usize, usize)> {
    let mut out = std::collections::BTreeSet::new();
    for (ns, _) in f.coeffs() {
        for (slot, &n) in ns.iter().enumerate() {
            for c in 1..=n {
                out.insert((slot, c));
            }
        }
    }
    out.into_iter().collect()
}
