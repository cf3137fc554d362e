//! `T_nF(X) = holim_{0 != U <= [n+1]} F(U * X)` on explicit realizations.
//!
//! The join `U * X` is the cofibre of the fold map `X^U -> X`, modelled by
//! `K_U (x) X[1]` with `K_U = ker(Q^U -> Q)`; an inclusion `U <= V` induces
//! the inclusion `K_U -> K_V`. Homotopy limits over the punctured cube are
//! computed as derived limits: `lim^i` of the degree-`d` part lands in
//! degree `d - i`. The Koszul sign rule is always on, since the shift `[1]`
//! must act as a suspension.
//!
//! Two independent routes are provided. The explicit route builds the
//! punctured-cube diagram of `F(U * X)` from a realization and takes its
//! derived limits. The factored route uses
//! `T_n^k F(X) = sum_m (A_m (x) R_m^{(x) k} (x) X^{(x) m})_{Sigma_m}`,
//! where `R_m = holim_U (K_U[1])^{(x) m}` is computed once as a graded
//! `Sigma_m`-character from traces on derived limits.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::characters::{class_table, GradedCharacter};
use crate::error::{Error, Result};
use crate::holim::linalg::Matrix;
use crate::holim::linear::{LinearDiagram, RoosComplex};
use crate::holim::realize::{Evaluated, Realization};
use crate::laurent::{GradedDim, Laurent, Rat, SignMode};
use crate::perm::Perm;
use crate::symseq::{evaluate_seq, SymSeq};
use crate::Ctx;

/// Largest cochain group the oracle will assemble by default.
pub const DEFAULT_BUDGET: usize = 2000;

fn members(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|i| mask >> i & 1 == 1).collect()
}

fn k_dim(mask: usize) -> usize {
    mask.count_ones() as usize - 1
}

/// `K_U -> K_V` for `U <= V` in the bases `e_{u_j} - e_{u_0}`, `j >= 1`.
pub fn join_inclusion(u: usize, v: usize) -> Matrix {
    assert_eq!(u & !v, 0, "U is not a subset of V");
    let (us, vs) = (members(u), members(v));
    let mut m = Matrix::zeros(k_dim(v), k_dim(u));
    let coord = |x: usize| vs.iter().position(|&y| y == x).filter(|&p| p > 0).map(|p| p - 1);
    for (j, &x) in us.iter().enumerate().skip(1) {
        if let Some(r) = coord(x) {
            m.add_to(r, j - 1, &Rat::one());
        }
        if let Some(r) = coord(us[0]) {
            m.add_to(r, j - 1, &-Rat::one());
        }
    }
    m
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = a.get(i, j);
            if !x.is_zero() {
                out.put_block(i * b.rows(), j * b.cols(), &b.scale(x));
            }
        }
    }
    out
}

fn kron_power(a: &Matrix, m: usize) -> Matrix {
    (0..m).fold(Matrix::identity(1), |acc, _| kron(&acc, a))
}

/// `sigma` permuting the factors of `Q^d^{(x) m}`.
fn factor_permutation(sigma: &Perm, d: usize) -> Matrix {
    let m = sigma.len();
    let size = d.pow(m as u32);
    let mut out = Matrix::zeros(size, size);
    for idx in 0..size {
        let mut digits = vec![0; m];
        let mut r = idx;
        for j in (0..m).rev() {
            digits[j] = r % d;
            r /= d;
        }
        let mut moved = vec![0; m];
        for j in 0..m {
            moved[sigma.apply(j)] = digits[j];
        }
        let target = moved.iter().fold(0, |acc, &x| acc * d + x);
        out.set(target, idx, Rat::one());
    }
    out
}

fn nonempty_subsets(n: usize) -> Vec<usize> {
    (1..1usize << (n + 1)).collect()
}

/// Generating arrows `U -> U + {a}` of the punctured `(n+1)`-cube.
fn cube_covers(n: usize) -> Vec<(usize, usize)> {
    let subsets = nonempty_subsets(n);
    let mut out = Vec::new();
    for (i, &u) in subsets.iter().enumerate() {
        for a in 0..=n {
            if u >> a & 1 == 0 {
                let j = subsets.iter().position(|&v| v == u | 1 << a).unwrap();
                out.push((i, j));
            }
        }
    }
    out
}

/// `R_m = holim_U (K_U[1])^{(x) m}` as a graded `Sigma_m`-character.
pub fn join_coefficient(n: usize, m: usize, budget: usize) -> Result<GradedCharacter> {
    let subsets = nonempty_subsets(n);
    let mut d = LinearDiagram::new();
    for &u in &subsets {
        d.add_object(&format!("{u:b}"), k_dim(u).pow(m as u32));
    }
    for (i, j) in cube_covers(n) {
        d.add_arrow(i, j, kron_power(&join_inclusion(subsets[i], subsets[j]), m))?;
    }
    let table = class_table(m);
    let actions: Vec<Vec<Matrix>> = table
        .classes
        .iter()
        .map(|c| {
            let sigma = Perm::of_type(c);
            subsets.iter().map(|&u| factor_permutation(&sigma, k_dim(u))).collect()
        })
        .collect();
    let roos = RoosComplex::build(&d, Some(budget))?;
    let traces = roos.cohomology_traces(&actions);
    let values = table
        .classes
        .iter()
        .zip(&traces)
        .map(|(c, per_i)| {
            let sign = Rat::from_integer(c.sign().into());
            per_i.iter().enumerate().fold(Laurent::zero(), |acc, (i, t)| {
                acc + Laurent::monomial(m as i32 - i as i32, t * &sign)
            })
        })
        .collect();
    GradedCharacter::from_values(m, values)
}

fn basis_degrees(x: &GradedDim) -> Vec<i32> {
    x.pairs()
        .flat_map(|(d, k)| std::iter::repeat_n(d, k as usize))
        .collect()
}

/// `T_n^k F(X)` by explicit derived limits over the `k`-fold product of
/// punctured cubes.
pub fn t_n_iterate_explicit(f: &Realization, x: &GradedDim, n: usize, k: usize, budget: usize) -> Result<Laurent> {
    let xs = basis_degrees(x);
    let subsets = nonempty_subsets(n);
    let s = subsets.len();
    let objects: Vec<Vec<usize>> = (0..s.pow(k as u32))
        .map(|mut i| {
            let mut t = vec![0; k];
            for slot in t.iter_mut().rev() {
                *slot = i % s;
                i /= s;
            }
            t
        })
        .collect();
    let index_of = |t: &[usize]| t.iter().fold(0, |acc, &i| acc * s + i);
    let space = |t: &[usize]| -> Vec<i32> {
        let factor: usize = t.iter().map(|&i| k_dim(subsets[i])).product();
        (0..factor).flat_map(|_| xs.iter().map(|&d| d + k as i32)).collect()
    };
    let values: Vec<Evaluated> = objects
        .iter()
        .map(|t| f.evaluate(&space(t), SignMode::Signed))
        .collect();
    let covers = cube_covers(n);
    let mut arrows: Vec<(usize, usize, Matrix)> = Vec::new();
    for t in &objects {
        for slot in 0..k {
            for &(_, b) in covers.iter().filter(|(a, _)| *a == t[slot]) {
                let mut t2 = t.clone();
                t2[slot] = b;
                let map = t.iter().enumerate().fold(Matrix::identity(1), |acc, (i, &u)| {
                    let v = if i == slot { b } else { u };
                    kron(&acc, &join_inclusion(subsets[u], subsets[v]))
                });
                arrows.push((index_of(t), index_of(&t2), kron(&map, &Matrix::identity(xs.len()))));
            }
        }
    }
    let mut degrees: Vec<i32> = values.iter().flat_map(Evaluated::degrees).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut out = Laurent::zero();
    for d in degrees {
        let mut diag = LinearDiagram::new();
        for (t, v) in objects.iter().zip(&values) {
            diag.add_object(&format!("{t:?}"), v.dim_in(d, f));
        }
        for (a, b, m) in &arrows {
            diag.add_arrow(*a, *b, f.induced(&values[*a], &values[*b], m, d)?)?;
        }
        let dims = RoosComplex::build(&diag, Some(budget))?.cohomology_dims();
        for (i, h) in dims.into_iter().enumerate() {
            out.add_term(d - i as i32, Rat::from_integer(h.into()));
        }
    }
    Ok(out)
}

/// `T_n^k F(X)` from the join coefficients `joins[m] = R_m`.
pub fn t_n_iterate(f: &SymSeq, joins: &[GradedCharacter], x: &Laurent, k: usize) -> Result<Laurent> {
    let ctx = Ctx::new(SignMode::Signed, f.bound());
    let mut out = f.constant().clone();
    for (m, a) in f.entries() {
        let mut c = a.clone();
        for _ in 0..k {
            c = c.tensor(&joins[m])?;
        }
        let mut s = SymSeq::zero(m, true);
        s.set(m, c)?;
        out += &evaluate_seq(&s, x, &ctx);
    }
    Ok(out)
}

fn window(l: &Laurent, lo: i32, hi: i32) -> Laurent {
    Laurent::from_pairs(
        l.terms()
            .filter(|(d, _)| (lo..=hi).contains(d))
            .map(|(d, c)| (d, c.clone())),
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct TnReport {
    pub n: usize,
    pub x: GradedDim,
    /// `P_nF(X)` from the truncated coefficients.
    pub target: Laurent,
    /// `T_n^k F(X)` for `k = 1, 2, ...`.
    pub iterates: Vec<Laurent>,
    /// `(k, T_n^k F(X))` from explicit derived limits.
    pub explicit: Vec<(usize, Laurent)>,
    /// Degrees compared with the target.
    pub window: (i32, i32),
    /// First iterate from which the window no longer changes.
    pub stabilized_at: Option<usize>,
    pub passed: bool,
}

/// Iterates `T_n` on `F` at `X`, cross-checking the first `explicit`
/// iterates by explicit limits, and compares the stable window with
/// `P_nF(X)`.
pub fn t_n_oracle(
    f: &Realization,
    x: &GradedDim,
    n: usize,
    iterations: Option<usize>,
    explicit: usize,
    budget: usize,
) -> Result<TnReport> {
    let seq = f.to_seq(f.degree().max(n))?;
    let ctx = Ctx::new(SignMode::Signed, seq.bound());
    let xl = x.to_laurent();
    let target = evaluate_seq(&seq.truncate(n), &xl, &ctx);
    let fx = evaluate_seq(&seq, &xl, &ctx);
    let degs: Vec<i32> = fx.degrees().chain(target.degrees()).collect();
    let (lo, hi) = (
        degs.iter().copied().min().unwrap_or(0),
        degs.iter().copied().max().unwrap_or(0),
    );
    let joins: Vec<GradedCharacter> = (0..=seq.degree())
        .map(|m| {
            if m == 0 {
                Ok(GradedCharacter::scalar(Laurent::one()))
            } else {
                join_coefficient(n, m, budget)
            }
        })
        .collect::<Result<_>>()?;
    let count = iterations
        .unwrap_or((hi - lo) as usize + f.degree() + 2)
        .max(explicit)
        .max(2);
    let iterates: Vec<Laurent> = (1..=count)
        .map(|k| t_n_iterate(&seq, &joins, &xl, k))
        .collect::<Result<_>>()?;
    let explicit: Vec<(usize, Laurent)> = (1..=explicit)
        .map(|k| Ok((k, t_n_iterate_explicit(f, x, n, k, budget)?)))
        .collect::<Result<_>>()?;
    let last = window(iterates.last().unwrap(), lo, hi);
    let stabilized_at = (1..=count)
        .find(|&k| iterates[k - 1..].iter().all(|l| window(l, lo, hi) == last))
        .filter(|&k| k < count);
    let agree = explicit.iter().all(|(k, l)| *l == iterates[k - 1]);
    let passed = agree && stabilized_at.is_some() && last == target;
    Ok(TnReport {
        n,
        x: x.clone(),
        target,
        iterates,
        explicit,
        window: (lo, hi),
        stabilized_at,
        passed,
    })
}

/// Refuses instances outside the documented oracle range.
pub fn check_oracle_range(f: &Realization, x: &GradedDim, n: usize) -> Result<()> {
    if n > 2 || f.degree() > 3 || x.total() > 2 {
        return Err(Error::BudgetExceeded(format!(
            "T_n oracle supports n <= 2, deg F <= 3, dim X <= 2; got n = {n}, deg F = {}, dim X = {}",
            f.degree(),
            x.total()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::Character;
    use crate::symseq::Cell;

    fn cell(composition: &[usize], signed: bool, degree: i32) -> Cell {
        Cell {
            n: composition.iter().sum(),
            composition: composition.to_vec(),
            signed,
            degree,
            multiplicity: 1,
        }
    }

    #[test]
    fn inclusions_compose() {
        for (u, v, w) in [(0b001, 0b011, 0b111), (0b010, 0b110, 0b111), (0b100, 0b101, 0b111)] {
            assert_eq!(join_inclusion(v, w).mul(&join_inclusion(u, v)), join_inclusion(u, w));
        }
        assert_eq!(join_inclusion(0b011, 0b111).rank(), 1);
    }

    #[test]
    fn join_coefficients_fix_low_degrees() {
        for n in 1..=2 {
            for m in 1..=n {
                let r = join_coefficient(n, m, DEFAULT_BUDGET).unwrap();
                assert_eq!(
                    r,
                    GradedCharacter::concentrated(&Character::trivial(m), 0),
                    "n = {n}, m = {m}"
                );
            }
            for m in n + 1..=3 {
                let r = join_coefficient(n, m, DEFAULT_BUDGET).unwrap();
                assert!(
                    r.degrees().iter().all(|&d| d >= 1),
                    "n = {n}, m = {m}: {:?}",
                    r.degrees()
                );
            }
        }
    }

    #[test]
    fn sym2_line() {
        let f = Realization::new(vec![cell(&[2], false, 0)], GradedDim::zero()).unwrap();
        let r = t_n_oracle(&f, &GradedDim::concentrated(0, 1), 1, None, 1, DEFAULT_BUDGET).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.target.is_zero());
    }

    #[test]
    fn low_degree_functors_are_fixed() {
        let f = Realization::new(
            vec![cell(&[1], false, 0), cell(&[1, 1], true, 1)],
            GradedDim::concentrated(0, 1),
        )
        .unwrap();
        let x = GradedDim::from_pairs([(0, 1), (1, 1)]);
        let r = t_n_oracle(&f, &x, 2, None, 1, DEFAULT_BUDGET).unwrap();
        assert!(r.passed, "{r:?}");
        let fx = f.evaluate(&basis_degrees(&x), SignMode::Signed).dim(&f).to_laurent();
        assert!(r.iterates.iter().all(|l| *l == fx));
    }

    #[test]
    fn second_iterate_explicitly() {
        let f = Realization::new(
            vec![cell(&[1], false, 0), cell(&[2], false, 0), cell(&[2], true, 1)],
            GradedDim::zero(),
        )
        .unwrap();
        let x = GradedDim::concentrated(0, 2);
        let r = t_n_oracle(&f, &x, 1, None, 2, DEFAULT_BUDGET).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.explicit.len(), 2);
    }

    #[test]
    fn cubic_at_n_two() {
        let f = Realization::new(vec![cell(&[2, 1], false, 0), cell(&[1], false, 0)], GradedDim::zero()).unwrap();
        let x = GradedDim::from_pairs([(0, 1), (1, 1)]);
        let r = t_n_oracle(&f, &x, 2, None, 1, DEFAULT_BUDGET).unwrap();
        assert!(r.passed, "{r:?}");
        let hom = Realization::new(vec![cell(&[3], false, 0)], GradedDim::zero()).unwrap();
        let r = t_n_oracle(&hom, &GradedDim::concentrated(0, 1), 2, None, 1, DEFAULT_BUDGET).unwrap();
        assert!(r.passed && r.target.is_zero(), "{r:?}");
    }

    #[test]
    fn budget_is_enforced() {
        let f = Realization::new(vec![cell(&[1, 1, 1], false, 0)], GradedDim::zero()).unwrap();
        let x = GradedDim::concentrated(0, 2);
        assert!(matches!(
            t_n_iterate_explicit(&f, &x, 2, 1, 5),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(check_oracle_range(&f, &GradedDim::concentrated(0, 3), 1).is_err());
    }
}
