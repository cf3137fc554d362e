//! Polynomial functors: evaluation, towers, derivatives, the `(F,G)_lambda`
//! construction and the homogeneous-layer formulas for composites.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde_json::json;

use crate::characters::{class_table, GradedCharacter};
use crate::error::{Error, Result};
use crate::holim::split::{pi_diagram, split_limit, tuple_label, SplitLimit};
use crate::laurent::{GradedDim, Laurent, Rat};
use crate::multi::{co_cross_effect, MultiFunctor};
use crate::partitions::{factorial, Partition};
use crate::perm::all_perms;
use crate::symseq::{compose, evaluate_seq, shift_base, ShiftResult, SymSeq};
use crate::trace::{full_mask, probe_base, Circuit, MPoly};
use crate::Ctx;

/// A polynomial functor given by its coefficient sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFunctor {
    pub coeffs: SymSeq,
    pub label: String,
}

impl PolyFunctor {
    pub fn new(coeffs: SymSeq, label: impl Into<String>) -> Self {
        Self {
            coeffs,
            label: label.into(),
        }
    }

    pub fn identity(bound: usize) -> Self {
        Self::new(SymSeq::unit(bound), "id")
    }

    pub fn is_reduced(&self) -> bool {
        self.coeffs.is_reduced()
    }

    /// Graded dimension of `F(V)` as a Laurent polynomial.
    pub fn evaluate(&self, v: &Laurent, ctx: &Ctx) -> Laurent {
        evaluate_seq(&self.coeffs, v, ctx)
    }

    pub fn evaluate_dim(&self, v: &GradedDim, ctx: &Ctx) -> Result<GradedDim> {
        GradedDim::from_laurent(&self.evaluate(&v.to_laurent(), ctx))
    }

    /// `k` if the functor is homogeneous of degree `k >= 1`.
    pub fn homogeneous_degree(&self) -> Result<usize> {
        let degrees: Vec<usize> = self.coeffs.entries().map(|(n, _)| n).collect();
        if !self.coeffs.constant().is_zero() || degrees.len() != 1 {
            return Err(Error::NotHomogeneous(format!(
                "{}: constant {} and arities {degrees:?}",
                self.label,
                self.coeffs.constant()
            )));
        }
        Ok(degrees[0])
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({"label": self.label, "coefficients": self.coeffs.to_json()})
    }

    /// Accepts `{"label", "coefficients"}` or a bare sequence.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        match v.get("coefficients") {
            Some(c) => {
                let label = v.get("label").and_then(|l| l.as_str()).unwrap_or("").to_string();
                Ok(Self::new(SymSeq::from_json(c)?, label))
            }
            None => Ok(Self::new(SymSeq::from_json(v)?, "")),
        }
    }
}

/// `FG`; `G` must be reduced.
pub fn compose_functors(f: &PolyFunctor, g: &PolyFunctor, ctx: &Ctx) -> Result<PolyFunctor> {
    let c = compose(&f.coeffs, &g.coeffs, ctx)?;
    Ok(PolyFunctor::new(c, format!("{}({})", f.label, g.label)))
}

/// One stage of the Taylor tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerSlice {
    pub functor: PolyFunctor,
    pub n: usize,
    pub p: PolyFunctor,
    pub d: PolyFunctor,
}

impl TowerSlice {
    /// `D_n -> P_n -> P_{n-1}` is split exact on coefficients.
    pub fn is_split_exact(&self) -> bool {
        let below = self.p.coeffs.truncate(self.n.saturating_sub(1));
        let below = if self.n == 0 { SymSeq::zero(0, true) } else { below };
        match below.add(&self.d.coeffs) {
            Ok(sum) => sum.agrees_to(&self.p.coeffs, self.n),
            Err(_) => false,
        }
    }
}

pub fn taylor(f: &PolyFunctor, n: usize) -> Result<TowerSlice> {
    if !f.coeffs.defined(n) {
        return Err(Error::BoundExceeded(format!(
            "P_{n} needs arity {n}, bound is {}",
            f.coeffs.bound()
        )));
    }
    Ok(TowerSlice {
        functor: f.clone(),
        n,
        p: PolyFunctor::new(f.coeffs.truncate(n), format!("P_{n}{}", f.label)),
        d: PolyFunctor::new(f.coeffs.homogeneous(n), format!("D_{n}{}", f.label)),
    })
}

/// `d_n F = A_n`, checked against the multilinear part of `D_nF` on `n`
/// permuted lines.
pub fn derivative(f: &PolyFunctor, n: usize, ctx: &Ctx) -> Result<GradedCharacter> {
    let slice = taylor(f, n)?;
    let stored = f.coeffs.entry(n);
    if n == 0 {
        return Ok(GradedCharacter::scalar(f.coeffs.constant().clone()));
    }
    let extracted = Circuit::chain(&[&slice.d.coeffs]).derivative_at(&Laurent::zero(), n, ctx);
    if extracted != stored {
        return Err(Error::PathMismatch(format!(
            "derivative {n} of {} disagrees with extraction",
            f.label
        )));
    }
    Ok(stored)
}

/// `d_* F(X)`.
pub fn derivatives_at(f: &PolyFunctor, x: &Laurent, ctx: &Ctx) -> Result<ShiftResult> {
    shift_base(&f.coeffs, x, ctx)
}

/// `(F,G)_lambda = [P_{k_1} ... P_{k_r}] cr^r(F)(P_{l_1}G, ..., P_{l_r}G)`.
#[derive(Clone, Debug)]
pub struct Fgl {
    pub lambda: Partition,
    pub multi: MultiFunctor,
    pub inner: Vec<SymSeq>,
    pub functor: PolyFunctor,
}

impl Fgl {
    /// The same functor as an expression, for trace extraction.
    pub fn circuit(&self) -> Circuit {
        let mut c = Circuit::new();
        let args: Vec<usize> = self.inner.iter().map(|g| c.apply(g.clone(), 0)).collect();
        c.apply_multi(self.multi.clone(), args);
        c
    }

    /// `d_n` read off the circuit, without using its coefficients.
    pub fn derivative_extracted(&self, n: usize, ctx: &Ctx) -> GradedCharacter {
        self.circuit().derivative_at(&Laurent::zero(), n, ctx)
    }
}

pub fn fgl(f: &PolyFunctor, g: &PolyFunctor, lambda: &Partition, ctx: &Ctx) -> Result<Fgl> {
    if !g.is_reduced() {
        return Err(Error::NotReduced);
    }
    let n = lambda.size();
    if n > ctx.bound || !f.coeffs.defined(n) || !g.coeffs.defined(n) {
        return Err(Error::BoundExceeded(format!("(F,G)_{lambda} needs arity {n}")));
    }
    let blocks = lambda.blocks().blocks;
    let ks: Vec<usize> = blocks.iter().map(|b| b.1).collect();
    let multi = co_cross_effect(&f.coeffs, blocks.len())?.truncate(&ks);
    let inner: Vec<SymSeq> = blocks.iter().map(|&(l, _)| g.coeffs.truncate(l)).collect();
    let coeffs = multi.substitute(&inner, ctx)?;
    Ok(Fgl {
        lambda: lambda.clone(),
        multi,
        inner,
        functor: PolyFunctor::new(coeffs, format!("({},{})_{lambda}", f.label, g.label)),
    })
}

/// Compositions of `n` into parts `r_C >= 1` weighted by cycle lengths:
/// `sum_C len_C r_C = n`.
fn weighted_spreads(lens: &[usize], n: usize) -> Vec<Vec<usize>> {
    let Some((&first, rest)) = lens.split_first() else {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    };
    let mut out = Vec::new();
    let mut r = 1;
    while first * r <= n {
        for mut tail in weighted_spreads(rest, n - first * r) {
            tail.insert(0, r);
            out.push(tail);
        }
        r += 1;
    }
    out
}

/// `d_m` of `[prod_{r_1 + ... + r_k = n} d_kF (x) D_{r_1}G (x) ... (x) D_{r_k}G]_{h Sigma_k}`,
/// summing over every `pi` in `Sigma_k` and every `pi`-fixed tuple.
pub fn dn_product_probe(f: &PolyFunctor, g: &PolyFunctor, n: usize, m: usize, ctx: &Ctx) -> Result<GradedCharacter> {
    let k = f.homogeneous_degree()?;
    if !g.is_reduced() {
        return Err(Error::NotReduced);
    }
    let ak = f.coeffs.entry(k);
    let mut circuit = Circuit::new();
    let layers: Vec<usize> = (1..=n).map(|r| circuit.apply(g.coeffs.homogeneous(r), 0)).collect();
    let perms = all_perms(k);
    let kf = Rat::from_integer(BigInt::from(factorial(k)));
    let zero = Laurent::zero();
    Ok(GradedCharacter::from_fn(m, |sigma| {
        let base = probe_base(&zero, sigma, ctx);
        let mut memo: HashMap<(usize, usize), MPoly> = HashMap::new();
        let mut acc = MPoly::zero();
        for pi in &perms {
            let chi = ak.value(&pi.cycle_type()).expect("class");
            if chi.is_zero() {
                continue;
            }
            let lens: Vec<usize> = pi.cycles().iter().map(Vec::len).collect();
            for rs in weighted_spreads(&lens, n) {
                let mut prod = MPoly::constant(chi.clone());
                for (len, r) in lens.iter().zip(&rs) {
                    prod = prod.mul(&circuit.trace(layers[r - 1], *len, &base, &mut memo, ctx));
                }
                acc.add_assign(&prod);
            }
        }
        acc.coeff(full_mask(sigma)).scale(&(Rat::from_integer(1.into()) / &kf))
    }))
}

/// `d_n(FG)` for homogeneous `F`, by the product formula.
pub fn dn_product_formula(f: &PolyFunctor, g: &PolyFunctor, n: usize, ctx: &Ctx) -> Result<GradedCharacter> {
    dn_product_probe(f, g, n, n, ctx)
}

/// Value of the `Pi_k(n)` limit formula for `P_n(FG)(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PnLimit {
    pub k: usize,
    pub n: usize,
    pub limit: SplitLimit,
    pub value: Laurent,
}

/// `P_n(FG)(X) = [holim_{Pi_k(n)} d_kF (x) P_{r_1}G(X) (x) ... (x) P_{r_k}G(X)]_{h Sigma_k}`
/// for `F` homogeneous of degree `k`.
pub fn pn_limit_formula(f: &PolyFunctor, g: &PolyFunctor, n: usize, x: &Laurent, ctx: &Ctx) -> Result<PnLimit> {
    let k = f.homogeneous_degree()?;
    if !g.is_reduced() {
        return Err(Error::NotReduced);
    }
    let layer: Vec<Laurent> = (0..=n)
        .map(|r| evaluate_seq(&g.coeffs.homogeneous(r), x, ctx))
        .collect();
    let layer_dims: Vec<GradedDim> = layer.iter().map(GradedDim::from_laurent).collect::<Result<_>>()?;
    let diagram = pi_diagram(k, n, |s| {
        s.iter().fold(GradedDim::concentrated(0, 1), |acc, &r| {
            GradedDim::from_laurent(&(&acc.to_laurent() * &layer_dims[r].to_laurent())).expect("product of dims")
        })
    })?;
    let limit = split_limit(&diagram)?;
    // coinvariants: (1/k!) sum_pi chi(pi) sum_{pi-fixed s} copies(s) prod_C psi^{|C|}(W_{s_C})
    let ak = f.coeffs.entry(k);
    let mut value = Laurent::zero();
    for pi in all_perms(k) {
        let chi = ak.value(&pi.cycle_type())?;
        if chi.is_zero() {
            continue;
        }
        let cycles = pi.cycles();
        let lens: Vec<usize> = cycles.iter().map(Vec::len).collect();
        for total in k..=n {
            for rs in weighted_spreads(&lens, total) {
                let mut s = vec![0; k];
                for (cyc, r) in cycles.iter().zip(&rs) {
                    for &i in cyc {
                        s[i] = *r;
                    }
                }
                let copies = limit.copies_of(&tuple_label(&s));
                if copies == 0 {
                    continue;
                }
                let mut term = chi.scale(&Rat::from_integer(copies.into()));
                for (len, r) in lens.iter().zip(&rs) {
                    term = &term * &layer[*r].adams(*len, ctx.sign);
                }
                value += &term;
            }
        }
    }
    let value = value.scale(&(Rat::from_integer(1.into()) / Rat::from_integer(BigInt::from(factorial(k)))));
    Ok(PnLimit { k, n, limit, value })
}

/// A dimension comparison for one stage of the composite tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareReport {
    pub n: usize,
    pub lhs: Laurent,
    pub rhs: Laurent,
}

impl SquareReport {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `P_n(FG)(X)` against the `n`-th description of its tower in terms of the
/// towers of `F` and `G`: the chain-rule square for `n = 1`, the pullback for
/// `n = 2`, the seven-object limit for `n = 3`.
pub fn tower_of_composite_squares(
    f: &PolyFunctor,
    g: &PolyFunctor,
    n: usize,
    x: &Laurent,
    ctx: &Ctx,
) -> Result<SquareReport> {
    let fg = compose(&f.coeffs, &g.coeffs, ctx)?;
    if !fg.defined(n) {
        return Err(Error::BoundExceeded(format!("P_{n}(FG) needs arity {n}")));
    }
    let lhs = evaluate_seq(&fg.truncate(n), x, ctx);
    let pp = |i: usize, j: usize| Circuit::chain(&[&f.coeffs.truncate(i), &g.coeffs.truncate(j)]).evaluate(x, ctx);
    let rhs = match n {
        1 => pp(1, 1),
        2 => &(&pp(2, 1) + &pp(1, 2)) - &pp(1, 1),
        3 => crate::holim::section5::section5_p3_limit(&f.coeffs, &g.coeffs, x, ctx)?
            .1
            .total
            .to_laurent(),
        _ => return Err(Error::Unsupported(format!("no square description for n = {n}"))),
    };
    Ok(SquareReport { n, lhs, rhs })
}

/// `D_n(FG)` and its decomposition into `D_n((F,G)_lambda)`.
#[derive(Clone, Debug)]
pub struct LayerReport {
    pub n: usize,
    pub lhs: GradedCharacter,
    pub summands: Vec<(Partition, GradedCharacter)>,
}

impl LayerReport {
    pub fn sum(&self) -> GradedCharacter {
        self.summands
            .iter()
            .fold(GradedCharacter::zero(self.n), |acc, (_, c)| acc.add(c).expect("same n"))
    }

    pub fn passed(&self) -> bool {
        self.sum() == self.lhs
    }
}

pub fn delta_layer_decomposition(f: &PolyFunctor, g: &PolyFunctor, n: usize, ctx: &Ctx) -> Result<LayerReport> {
    let lhs = compose(&f.coeffs, &g.coeffs, ctx)?.entry(n);
    let summands = crate::partitions::enumerate_partitions(n)
        .into_iter()
        .map(|lambda| {
            let piece = fgl(f, g, &lambda, ctx)?;
            Ok((lambda, piece.derivative_extracted(n, ctx)))
        })
        .collect::<Result<_>>()?;
    Ok(LayerReport { n, lhs, summands })
}

/// Coefficient-level `P_n(FG) = P_n(F(P_nG))` and, for linear `F`,
/// `P_n(FG) = F(P_nG)`.
pub fn fundamental_truncation(f: &PolyFunctor, g: &PolyFunctor, n: usize, ctx: &Ctx) -> Result<bool> {
    let full = compose(&f.coeffs, &g.coeffs, ctx)?.truncate(n);
    let inner = compose(&f.coeffs, &g.coeffs.truncate(n), ctx)?.truncate(n);
    let outer = compose(&f.coeffs.truncate(n), &g.coeffs, ctx)?.truncate(n);
    Ok(full.agrees_to(&inner, n) && full.agrees_to(&outer, n))
}

/// Character sum `sum_sigma chi(sigma)` over classes weighted by size,
/// used in reports as a compact fingerprint.
pub fn character_total(c: &GradedCharacter) -> Laurent {
    let t = class_table(c.n());
    (0..t.len()).fold(Laurent::zero(), |acc, i| {
        acc + c.at(i).scale(&Rat::from_integer(BigInt::from(t.class_size(i))))
    })
}
