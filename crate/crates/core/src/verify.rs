//! The verification battery: every identity of the engine, checked on seeded
//! random instances through independent code paths.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::characters::GradedCharacter;
use crate::error::{Error, Result};
use crate::functor::{
    delta_layer_decomposition, dn_product_formula, fgl, fundamental_truncation, pn_limit_formula,
    tower_of_composite_squares, PolyFunctor,
};
use crate::holim::realize::Realization;
use crate::holim::tn::{check_oracle_range, t_n_oracle};
use crate::laurent::{rat, GradedDim, Laurent, SignMode};
use crate::multi::{co_cross_effect, cross_effect};
use crate::partitions::{enumerate_partitions, set_partition_count_check};
use crate::random::{InstanceGen, SeqShape};
use crate::symfun::{egf_compose, RationalSeries};
use crate::symseq::{compose, compose_induction, compose_plethysm, evaluate_seq, shift_base, Cell, SymSeq};
use crate::trace::Circuit;
use crate::wreath::{blocks_for, wreath_compose_character_brute};
use crate::Ctx;

/// Instances per check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub chain_rule_zero: usize,
    pub chain_rule_base: usize,
    pub paths: usize,
    pub faa_di_bruno: usize,
    pub fgl: usize,
    pub layers: usize,
    pub homogeneous: usize,
    pub squares: usize,
    pub truncation: usize,
    pub cross_effects: usize,
    pub tn: usize,
}

impl Default for Counts {
    fn default() -> Self {
        Self {
            chain_rule_zero: 100,
            chain_rule_base: 25,
            paths: 50,
            faa_di_bruno: 10,
            fgl: 25,
            layers: 10,
            homogeneous: 10,
            squares: 20,
            truncation: 50,
            cross_effects: 20,
            tn: 20,
        }
    }
}

impl Counts {
    /// Every count scaled down, for quick runs.
    pub fn smoke() -> Self {
        Self {
            chain_rule_zero: 5,
            chain_rule_base: 3,
            paths: 3,
            faa_di_bruno: 2,
            fgl: 2,
            layers: 2,
            homogeneous: 2,
            squares: 3,
            truncation: 5,
            cross_effects: 3,
            tn: 2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub bound: usize,
    #[serde(serialize_with = "sign_name")]
    pub sign: SignMode,
    pub counts: Counts,
    pub budget: usize,
    /// Run with the deliberately broken `compose`.
    pub mutate: bool,
    /// Restrict to the named checks.
    pub only: Vec<String>,
}

fn sign_name<S: serde::Serializer>(s: &SignMode, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(match s {
        SignMode::Unsigned => "unsigned",
        SignMode::Signed => "signed",
    })
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0x5eed,
            bound: 6,
            sign: SignMode::Unsigned,
            counts: Counts::default(),
            budget: crate::holim::tn::DEFAULT_BUDGET,
            mutate: false,
            only: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub instance: Value,
    pub detail: String,
    pub reproduce: String,
}

/// Failures kept verbatim per check; the rest are only counted.
const KEPT_FAILURES: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub criterion: u32,
    pub name: String,
    pub anchor: String,
    pub instances: usize,
    pub failed: usize,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub wall: Duration,
    #[serde(skip)]
    pub limit: Duration,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.failed == 0 && self.instances > 0
    }

    pub fn within_limit(&self) -> bool {
        self.wall <= self.limit
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    /// Deterministic serialization: timings are not included.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Derived characters checked for genuineness, per check.
#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<Failure>,
}

struct Run<'a> {
    cfg: &'a RunConfig,
    name: &'static str,
    instances: usize,
    failed: usize,
    failures: Vec<Failure>,
    genuine: Tally,
}

impl<'a> Run<'a> {
    fn new(cfg: &'a RunConfig, name: &'static str) -> Self {
        Self {
            cfg,
            name,
            instances: 0,
            failed: 0,
            failures: Vec::new(),
            genuine: Tally::default(),
        }
    }

    fn ctx(&self, bound: usize) -> Ctx {
        Ctx {
            sign: self.cfg.sign,
            bound,
            corrupt_compose: self.cfg.mutate,
        }
    }

    fn reproduce(&self, check: &str) -> String {
        let signed = if self.cfg.sign == SignMode::Signed {
            " --signed"
        } else {
            ""
        };
        let mutate = if self.cfg.mutate { " --mutate" } else { "" };
        let smoke = if self.cfg.counts == Counts::smoke() {
            " --smoke"
        } else {
            ""
        };
        format!(
            "gchain verify --seed {} --bound {}{signed}{mutate}{smoke} --check {check}",
            self.cfg.seed, self.cfg.bound
        )
    }

    fn fail(&mut self, instance: &Value, detail: impl Into<String>) {
        self.failed += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(Failure {
                instance: instance.clone(),
                detail: detail.into(),
                reproduce: self.reproduce(self.name),
            });
        }
    }

    /// Records `r`, returning its value if it is `Ok`.
    fn ok<T>(&mut self, instance: &Value, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.fail(instance, format!("error: {e}"));
                None
            }
        }
    }

    fn expect_eq<T: PartialEq + std::fmt::Debug>(&mut self, instance: &Value, what: &str, lhs: &T, rhs: &T) {
        if lhs != rhs {
            self.fail(instance, format!("{what}: {lhs:?} != {rhs:?}"));
        }
    }

    fn genuine(&mut self, instance: &Value, what: &str, c: &GradedCharacter) {
        self.genuine.checked += 1;
        if !c.is_genuine() {
            self.genuine.failures.push(Failure {
                instance: instance.clone(),
                detail: format!("{what} ({}) is not genuine", self.name),
                reproduce: self.reproduce("genuineness"),
            });
        }
    }

    fn finish(self, criterion: u32, anchor: &str, wall: Duration, limit_secs: u64) -> (CheckRecord, Tally) {
        (
            CheckRecord {
                criterion,
                name: self.name.to_string(),
                anchor: anchor.to_string(),
                instances: self.instances,
                failed: self.failed,
                failures: self.failures,
                wall,
                limit: Duration::from_secs(limit_secs),
            },
            self.genuine,
        )
    }
}

fn gen(cfg: &RunConfig, stream: u64) -> InstanceGen {
    InstanceGen::for_stream(cfg.seed, stream)
}

fn pair_json(a: &SymSeq, b: &SymSeq) -> Value {
    json!({"A": a.to_json(), "B": b.to_json()})
}

fn with_constant_shape(max_arity: usize, max_entry_dim: u64) -> SeqShape {
    SeqShape {
        max_constant: 1,
        ..SeqShape::reduced(max_arity, max_entry_dim)
    }
}

fn chain_rule_zero(run: &mut Run) {
    let n_max = run.cfg.bound;
    let ctx = run.ctx(n_max);
    let mut g = gen(run.cfg, 1);
    let shape = SeqShape::reduced(n_max, 3);
    for _ in 0..run.cfg.counts.chain_rule_zero {
        let (a, b) = (g.seq(&shape, n_max), g.seq(&shape, n_max));
        let inst = pair_json(&a, &b);
        run.instances += 1;
        let Some(ab) = run.ok(&inst, compose(&a, &b, &ctx)) else {
            continue;
        };
        let traced = Circuit::chain(&[&a, &b]).derivatives_at(&Laurent::zero(), n_max, &ctx);
        for n in 1..=n_max {
            run.expect_eq(&inst, &format!("d_{n}(FG)"), &ab.entry(n), &traced.entry(n));
            run.genuine(&inst, &format!("(A o B)_{n}"), &ab.entry(n));
        }
    }
}

fn chain_rule_base(run: &mut Run) {
    let n_max = 4;
    let mut g = gen(run.cfg, 2);
    for _ in 0..run.cfg.counts.chain_rule_base {
        // the composite must be exact, so the bound covers its full degree
        let a = g.seq(&with_constant_shape(3, 3), 9);
        let b = g.seq(&SeqShape::reduced(3, 3), 9);
        let ctx = run.ctx(9);
        let x = g.base(2, (0, 1));
        let xl = x.to_laurent();
        let inst = json!({"A": a.to_json(), "B": b.to_json(), "X": x});
        run.instances += 1;
        let gx = evaluate_seq(&b, &xl, &ctx);
        let Some(ab) = run.ok(&inst, compose(&a, &b, &ctx)) else {
            continue;
        };
        let Some(lhs) = run.ok(&inst, shift_base(&ab, &xl, &ctx)) else {
            continue;
        };
        let Some(fgx) = run.ok(&inst, shift_base(&a, &gx, &ctx)) else {
            continue;
        };
        let Some(gxs) = run.ok(&inst, shift_base(&b, &xl, &ctx)) else {
            continue;
        };
        let g_at_x = gxs.seq.with_constant(Laurent::zero());
        let Some(rhs) = run.ok(&inst, compose(&fgx.seq, &g_at_x, &ctx)) else {
            continue;
        };
        let traced = Circuit::chain(&[&a, &b]).derivatives_at(&xl, n_max, &ctx);
        run.expect_eq(
            &inst,
            "(FG)(X) vs F(G(X))",
            &evaluate_seq(&ab, &xl, &ctx),
            &evaluate_seq(&a, &gx, &ctx),
        );
        run.expect_eq(&inst, "F_GX o G_X is reduced", rhs.constant(), &Laurent::zero());
        for n in 1..=n_max {
            run.expect_eq(
                &inst,
                &format!("d_{n}(FG)(X) vs composite"),
                &lhs.seq.entry(n),
                &rhs.entry(n),
            );
            run.expect_eq(
                &inst,
                &format!("d_{n}(FG)(X) vs trace"),
                &lhs.seq.entry(n),
                &traced.entry(n),
            );
            run.genuine(&inst, &format!("d_{n}(FG)(X)"), &lhs.seq.entry(n));
            run.genuine(&inst, &format!("(F_GX o G_X)_{n}"), &rhs.entry(n));
        }
    }
}

fn composition_paths(run: &mut Run) {
    let big = 8;
    let ctx8 = run.ctx(big);
    let ctx6 = run.ctx(6);
    let mut g = gen(run.cfg, 3);
    for _ in 0..run.cfg.counts.paths {
        let a = g.seq(&with_constant_shape(4, 3), big);
        let b = g.seq(&SeqShape::reduced(4, 3), big);
        let c = g.seq(&SeqShape::reduced(3, 2), 6);
        let inst = json!({"A": a.to_json(), "B": b.to_json(), "C": c.to_json()});
        run.instances += 1;
        let Some(ab) = run.ok(&inst, compose(&a, &b, &ctx8)) else {
            continue;
        };
        let Some(brute) = run.ok(&inst, compose_induction(&a, &b, &ctx8, true)) else {
            continue;
        };
        let Some(pleth) = run.ok(&inst, compose_plethysm(&a, &b, &ctx8)) else {
            continue;
        };
        run.expect_eq(&inst, "constant", ab.constant(), brute.constant());
        for n in 1..=big {
            run.expect_eq(
                &inst,
                &format!("induction vs compose, n = {n}"),
                &brute.entry(n),
                &ab.entry(n),
            );
            run.expect_eq(
                &inst,
                &format!("induction vs plethysm, n = {n}"),
                &brute.entry(n),
                &pleth.entry(n),
            );
            run.genuine(&inst, &format!("(A o B)_{n}"), &ab.entry(n));
        }
        let (a6, b6) = (a.truncate(6), b.truncate(6));
        let unit = SymSeq::unit(6);
        if let Some(l) = run.ok(&inst, compose(&unit, &b6, &ctx6)) {
            if !l.agrees_to(&b6, 6) {
                run.fail(&inst, "1 o B != B");
            }
        }
        if let Some(r) = run.ok(&inst, compose(&a6, &unit, &ctx6)) {
            if !r.agrees_to(&a6, 6) {
                run.fail(&inst, "A o 1 != A");
            }
        }
        let left = compose(&a6, &b6, &ctx6).and_then(|ab| compose(&ab, &c, &ctx6));
        let right = compose(&b6, &c, &ctx6).and_then(|bc| compose(&a6, &bc, &ctx6));
        if let (Some(l), Some(r)) = (run.ok(&inst, left), run.ok(&inst, right)) {
            if !l.agrees_to(&r, 6) {
                run.fail(&inst, "(A o B) o C != A o (B o C)");
            }
        }
    }
}

fn faa_di_bruno(run: &mut Run) {
    let n_max = 10;
    let ctx = run.ctx(n_max);
    let mut g = gen(run.cfg, 4);
    let series = |v: &[i64]| RationalSeries::new(v.iter().map(|&x| rat(x)).collect()).expect("nonempty");
    for _ in 0..run.cfg.counts.faa_di_bruno {
        let ad = g.trivial_dims(n_max, 3, false);
        let bd = g.trivial_dims(n_max, 3, true);
        let inst = json!({"a": ad, "b": bd});
        run.instances += 1;
        let a = SymSeq::trivial_dims(&ad[1..], true).with_constant(Laurent::constant(rat(ad[0])));
        let b = SymSeq::trivial_dims(&bd[1..], true);
        let Some(ab) = run.ok(&inst, compose(&a, &b, &ctx)) else {
            continue;
        };
        let Some(e) = run.ok(&inst, egf_compose(&series(&ad), &series(&bd))) else {
            continue;
        };
        run.expect_eq(&inst, "constant", &ab.constant().total(), &e.coeff(0));
        for n in 1..=n_max {
            run.expect_eq(
                &inst,
                &format!("dim (A o B)_{n}"),
                &ab.entry(n).dim().total(),
                &e.coeff(n),
            );
            run.genuine(&inst, &format!("(A o B)_{n}"), &ab.entry(n));
        }
    }
    for n in 0..=12 {
        run.instances += 1;
        if !set_partition_count_check(n) {
            run.fail(&json!({"n": n}), "sum of n!/|H(lambda)| differs from the Bell number");
        }
    }
}

fn fgl_derivative(run: &mut Run) {
    let n_max = 5;
    let ctx = run.ctx(n_max);
    let mut g = gen(run.cfg, 5);
    for _ in 0..run.cfg.counts.fgl {
        let a = g.seq(&with_constant_shape(n_max, 3), n_max);
        let b = g.seq(&SeqShape::reduced(n_max, 3), n_max);
        let inst = pair_json(&a, &b);
        let (f, gg) = (PolyFunctor::new(a.clone(), "F"), PolyFunctor::new(b.clone(), "G"));
        run.instances += 1;
        for n in 1..=n_max {
            for lambda in enumerate_partitions(n) {
                let Some(piece) = run.ok(&inst, fgl(&f, &gg, &lambda, &ctx)) else {
                    continue;
                };
                let got = piece.derivative_extracted(n, &ctx);
                let ak = a.entry(lambda.len());
                let expect = if ak.is_zero() {
                    GradedCharacter::zero(n)
                } else {
                    match wreath_compose_character_brute(&ak, &blocks_for(&lambda, |l| b.entry(l)), ctx.sign) {
                        Ok(c) => c,
                        Err(e) => {
                            run.fail(&inst, format!("error: {e}"));
                            continue;
                        }
                    }
                };
                run.expect_eq(&inst, &format!("d_{n}(F,G)_{lambda}"), &got, &expect);
                run.genuine(&inst, &format!("d_{n}(F,G)_{lambda}"), &got);
            }
        }
    }
}

fn layers(run: &mut Run) {
    let n_max = 5;
    let ctx = run.ctx(n_max);
    let mut g = gen(run.cfg, 6);
    for _ in 0..run.cfg.counts.layers {
        let a = g.seq(&with_constant_shape(n_max, 3), n_max);
        let b = g.seq(&SeqShape::reduced(n_max, 3), n_max);
        let inst = pair_json(&a, &b);
        let (f, gg) = (PolyFunctor::new(a, "F"), PolyFunctor::new(b, "G"));
        run.instances += 1;
        for n in 1..=n_max {
            let Some(rep) = run.ok(&inst, delta_layer_decomposition(&f, &gg, n, &ctx)) else {
                continue;
            };
            run.expect_eq(
                &inst,
                &format!("D_{n}(FG) vs sum of D_{n}(F,G)_lambda"),
                &rep.lhs,
                &rep.sum(),
            );
            run.genuine(&inst, &format!("D_{n}(FG)"), &rep.lhs);
            for (lambda, c) in &rep.summands {
                run.genuine(&inst, &format!("D_{n}(F,G)_{lambda}"), c);
            }
        }
    }
}

fn homogeneous(run: &mut Run) {
    let n_max = 6;
    let ctx = run.ctx(n_max);
    let mut g = gen(run.cfg, 7);
    for i in 0..run.cfg.counts.homogeneous {
        let k = i % 3 + 1;
        let a = g
            .seq(
                &SeqShape {
                    density: 100,
                    ..SeqShape::reduced(k, 3)
                },
                n_max,
            )
            .homogeneous(k);
        let b = g.seq(&SeqShape::reduced(n_max, 2), n_max);
        let x = g.base(2, (0, 1));
        let xl = x.to_laurent();
        let inst = json!({"A": a.to_json(), "B": b.to_json(), "X": x, "k": k});
        let (f, gg) = (PolyFunctor::new(a.clone(), "F"), PolyFunctor::new(b.clone(), "G"));
        run.instances += 1;
        let Some(ab) = run.ok(&inst, compose(&a, &b, &ctx)) else {
            continue;
        };
        for n in k..=n_max {
            if let Some(d) = run.ok(&inst, dn_product_formula(&f, &gg, n, &ctx)) {
                run.expect_eq(&inst, &format!("d_{n}(FG) product formula"), &d, &ab.entry(n));
                run.genuine(&inst, &format!("d_{n}(FG) product formula"), &d);
            }
            if let Some(p) = run.ok(&inst, pn_limit_formula(&f, &gg, n, &xl, &ctx)) {
                run.expect_eq(
                    &inst,
                    &format!("P_{n}(FG)(X) limit formula"),
                    &p.value,
                    &evaluate_seq(&ab.truncate(n), &xl, &ctx),
                );
            }
        }
    }
}

fn squares(run: &mut Run) {
    let ctx = run.ctx(6);
    let mut g = gen(run.cfg, 8);
    for _ in 0..run.cfg.counts.squares {
        let a = g.seq(&with_constant_shape(3, 3), 6);
        let b = g.seq(&SeqShape::reduced(3, 3), 6);
        let x = g.base(2, (0, 1));
        let inst = json!({"A": a.to_json(), "B": b.to_json(), "X": x});
        let (f, gg) = (PolyFunctor::new(a, "F"), PolyFunctor::new(b, "G"));
        run.instances += 1;
        for n in 1..=3 {
            let Some(r) = run.ok(&inst, tower_of_composite_squares(&f, &gg, n, &x.to_laurent(), &ctx)) else {
                continue;
            };
            run.expect_eq(&inst, &format!("P_{n}(FG)(X) vs its description"), &r.lhs, &r.rhs);
        }
    }
}

fn truncation(run: &mut Run) {
    let n_max = 6;
    let ctx = run.ctx(n_max);
    let mut g = gen(run.cfg, 9);
    for _ in 0..run.cfg.counts.truncation {
        let a = g.seq(&with_constant_shape(n_max, 3), n_max);
        let b = g.seq(&SeqShape::reduced(n_max, 3), n_max);
        let inst = pair_json(&a, &b);
        let (f, gg) = (PolyFunctor::new(a.clone(), "F"), PolyFunctor::new(b.clone(), "G"));
        run.instances += 1;
        for n in 0..=n_max {
            if let Some(ok) = run.ok(&inst, fundamental_truncation(&f, &gg, n, &ctx)) {
                if !ok {
                    run.fail(&inst, format!("truncation identity fails at n = {n}"));
                }
            }
        }
        let lin = a.truncate(1);
        for n in 1..=n_max {
            let lhs = compose(&lin, &b, &ctx).map(|c| c.truncate(n));
            let rhs = compose(&lin, &b.truncate(n), &ctx);
            if let (Some(l), Some(r)) = (run.ok(&inst, lhs), run.ok(&inst, rhs)) {
                if !l.agrees_to(&r, n_max) {
                    run.fail(&inst, format!("P_{n}(FG) != F(P_{n}G) for linear F"));
                }
            }
        }
    }
}

fn cross_effects(run: &mut Run) {
    let mut g = gen(run.cfg, 10);
    for _ in 0..run.cfg.counts.cross_effects {
        let a = g.seq(&with_constant_shape(4, 3), 4);
        let inst = json!({"A": a.to_json()});
        run.instances += 1;
        for r in 1..=3 {
            let (Some(cr), Some(co)) = (
                run.ok(&inst, cross_effect(&a, r)),
                run.ok(&inst, co_cross_effect(&a, r)),
            ) else {
                continue;
            };
            if cr != co {
                run.fail(&inst, format!("cross-effect and co-cross-effect differ for r = {r}"));
            }
        }
    }
}

/// Fixed instances first: `Sym^{n+1}` at a line, whose limit is zero.
fn tn_instances(cfg: &RunConfig) -> Vec<(Realization, GradedDim, usize)> {
    let sym = |k: usize| Cell {
        n: k,
        composition: vec![k],
        signed: false,
        degree: 0,
        multiplicity: 1,
    };
    let mut out = vec![
        (
            Realization::new(vec![sym(2)], GradedDim::zero()).unwrap(),
            GradedDim::concentrated(0, 1),
            1,
        ),
        (
            Realization::new(vec![sym(3)], GradedDim::zero()).unwrap(),
            GradedDim::concentrated(0, 1),
            2,
        ),
    ];
    let mut g = gen(cfg, 11);
    let shape = SeqShape {
        max_constant: 1,
        ..SeqShape::reduced(3, 2)
    };
    for i in 0..cfg.counts.tn {
        let cells = g.cells(&shape);
        let constant = g.constant(&shape);
        let x = g.base(2, (0, 1));
        out.push((Realization::new(cells, constant).unwrap(), x, 1 + i % 2));
    }
    out
}

fn tn_oracle(run: &mut Run) {
    for (f, x, n) in tn_instances(run.cfg) {
        let inst = json!({"cells": f.cells, "constant": f.constant, "X": x, "n": n});
        if check_oracle_range(&f, &x, n).is_err() {
            continue;
        }
        match t_n_oracle(&f, &x, n, None, 1, run.cfg.budget) {
            Ok(r) => {
                run.instances += 1;
                if !r.passed {
                    run.fail(
                        &inst,
                        format!("T_n iterates {:?} vs P_nF(X) = {:?}", r.iterates, r.target),
                    );
                }
            }
            Err(Error::BudgetExceeded(_)) => {}
            Err(e) => {
                run.instances += 1;
                run.fail(&inst, format!("error: {e}"));
            }
        }
    }
}

type CheckFn = fn(&mut Run);

/// `(criterion, name, anchor, time limit in seconds, body)`.
const CHECKS: &[(u32, &str, &str, u64, CheckFn)] = &[
    (
        1,
        "chain-rule-zero",
        "chain rule for derivatives at the zero base",
        60,
        chain_rule_zero,
    ),
    (
        2,
        "chain-rule-base",
        "chain rule at a general base; (FG)_X = F_GX o G_X",
        60,
        chain_rule_base,
    ),
    (
        3,
        "composition-paths",
        "composition product: induction equals plethysm; unit and associativity",
        60,
        composition_paths,
    ),
    (
        4,
        "faa-di-bruno",
        "Faa di Bruno dimensions; stabilizer cosets count set partitions",
        5,
        faa_di_bruno,
    ),
    (
        5,
        "fgl-derivative",
        "derivatives of (F,G)_lambda are wreath inductions",
        60,
        fgl_derivative,
    ),
    (
        6,
        "layer-decomposition",
        "layers of FG split over partitions",
        30,
        layers,
    ),
    (
        7,
        "homogeneous-tower",
        "homogeneous F: product formula for d_n(FG), limit formula for P_n(FG)",
        60,
        homogeneous,
    ),
    (
        8,
        "composite-squares",
        "first three stages of the tower of FG as limits",
        30,
        squares,
    ),
    (
        9,
        "truncation-identities",
        "P_n(FG) = P_n(F P_nG) = P_n((P_nF)G); linear F",
        30,
        truncation,
    ),
    (
        10,
        "cross-effects",
        "cross-effects agree with co-cross-effects",
        30,
        cross_effects,
    ),
    (11, "tn-oracle", "iterated T_n converges to P_n", 120, tn_oracle),
];

pub const GENUINENESS: &str = "genuineness";

/// `(criterion, name, anchor)` for every check.
pub fn check_table() -> Vec<(u32, &'static str, &'static str)> {
    CHECKS
        .iter()
        .map(|c| (c.0, c.1, c.2))
        .chain(std::iter::once((12, GENUINENESS, GENUINENESS_ANCHOR)))
        .collect()
}

const GENUINENESS_ANCHOR: &str = "derived characters have nonnegative integral multiplicities";

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.1).chain(std::iter::once(GENUINENESS)).collect()
}

/// Runs the selected checks (all when `cfg.only` is empty).
pub fn run_battery(cfg: &RunConfig) -> Result<Report> {
    for name in &cfg.only {
        if !check_names().contains(&name.as_str()) {
            return Err(Error::Malformed(format!(
                "unknown check {name}; known: {}",
                check_names().join(", ")
            )));
        }
    }
    let wanted = |name: &str| cfg.only.is_empty() || cfg.only.iter().any(|n| n == name);
    let genuineness = wanted(GENUINENESS);
    let selected: Vec<_> = CHECKS
        .iter()
        .filter(|c| wanted(c.1) || (genuineness && c.0 <= 8))
        .collect();
    let results: Vec<(CheckRecord, Tally)> = selected
        .par_iter()
        .map(|&&(criterion, name, anchor, limit, body)| {
            let start = Instant::now();
            let mut run = Run::new(cfg, name);
            body(&mut run);
            run.finish(criterion, anchor, start.elapsed(), limit)
        })
        .collect();
    let mut checks = Vec::new();
    let mut tally = Tally::default();
    let mut genuine_wall = Duration::ZERO;
    for (rec, t) in results {
        tally.checked += t.checked;
        tally.failures.extend(t.failures);
        if rec.criterion <= 8 {
            genuine_wall += rec.wall;
        }
        if wanted(&rec.name) {
            checks.push(rec);
        }
    }
    if genuineness {
        let failed = tally.failures.len();
        tally.failures.truncate(KEPT_FAILURES);
        checks.push(CheckRecord {
            criterion: 12,
            name: GENUINENESS.to_string(),
            anchor: GENUINENESS_ANCHOR.to_string(),
            instances: tally.checked,
            failed,
            failures: tally.failures,
            wall: genuine_wall,
            limit: Duration::MAX,
        });
    }
    checks.sort_by_key(|c| c.criterion);
    let passed = checks.iter().all(CheckRecord::passed);
    Ok(Report {
        config: cfg.clone(),
        passed,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn smoke(seed: u64) -> RunConfig {
        RunConfig {
            seed,
            counts: Counts::smoke(),
            ..RunConfig::default()
        }
    }

    #[test]
    fn smoke_battery_passes_and_is_deterministic() {
        let cfg = RunConfig {
            only: vec![
                "chain-rule-zero".into(),
                "faa-di-bruno".into(),
                "cross-effects".into(),
                "genuineness".into(),
            ],
            ..smoke(3)
        };
        let r1 = run_battery(&cfg).unwrap();
        assert!(r1.passed, "{}", r1.to_json_string());
        let r2 = run_battery(&cfg).unwrap();
        assert_eq!(r1.to_json_string(), r2.to_json_string());
        assert_eq!(r1.checks.len(), 4);
    }

    #[test]
    fn unknown_check_is_rejected() {
        let cfg = RunConfig {
            only: vec!["nope".into()],
            ..smoke(1)
        };
        assert!(matches!(run_battery(&cfg), Err(Error::Malformed(_))));
    }

    #[test]
    fn mutation_fails_exactly_the_compose_checks() {
        let cfg = RunConfig {
            mutate: true,
            ..smoke(5)
        };
        let r = run_battery(&cfg).unwrap();
        let failing: Vec<u32> = r.checks.iter().filter(|c| !c.passed()).map(|c| c.criterion).collect();
        assert_eq!(failing, vec![1, 2, 3, 4, 6, 7, 8]);
        let f = &r.check("chain-rule-zero").unwrap().failures[0];
        assert!(f.reproduce.ends_with("--mutate --smoke --check chain-rule-zero"));
        assert!(run_battery(&smoke(5)).unwrap().passed);
    }
}
