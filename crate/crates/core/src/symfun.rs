//! Symmetric functions in the power-sum basis, plethysm, the Frobenius
//! characteristic, and exponential generating functions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::characters::{class_table, Character, GradedCharacter};
use crate::error::{Error, Result};
use crate::laurent::{rat_from_str, rat_to_string, Laurent, Rat, SignMode};
use crate::partitions::{enumerate_partitions, factorial, stabilizer_order, Partition};

/// `sum_lambda c_lambda p_lambda` with Laurent-polynomial coefficients.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct PowerSumPoly {
    terms: BTreeMap<Partition, Laurent>,
}

impl PowerSumPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Partition::empty(), Laurent::one())
    }

    /// The power sum `p_m`.
    pub fn p(m: usize) -> Self {
        Self::monomial(Partition::single(m), Laurent::one())
    }

    pub fn monomial(lambda: Partition, c: Laurent) -> Self {
        let mut out = Self::zero();
        out.add_term(lambda, c);
        out
    }

    pub fn add_term(&mut self, lambda: Partition, c: Laurent) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(lambda.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Laurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lambda: &Partition) -> Laurent {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest degree present, or `None` for zero.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Partition::size).max()
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.contains_key(&Partition::empty())
    }

    pub fn component(&self, n: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| l.size() == n)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn truncate(&self, bound: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| l.size() <= bound)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Laurent) -> Self {
        let mut out = Self::zero();
        for (l, x) in &self.terms {
            out.add_term(l.clone(), x * c);
        }
        out
    }

    /// Product, dropping every monomial of degree above `bound`.
    pub fn mul_truncated(&self, other: &Self, bound: usize) -> Self {
        let mut out = Self::zero();
        for (l1, c1) in &self.terms {
            for (l2, c2) in &other.terms {
                if l1.size() + l2.size() <= bound {
                    out.add_term(l1.concat(l2), c1 * c2);
                }
            }
        }
        out
    }

    /// `p_m[self]`: every `p_i` becomes `p_{i m}` and every coefficient
    /// goes through the Adams operation `psi^m`.
    pub fn adams(&self, m: usize, sign: SignMode) -> Self {
        let mut out = Self::zero();
        for (l, c) in &self.terms {
            out.add_term(l.scaled(m), c.adams(m, sign));
        }
        out
    }

    /// Substitutes `p_m -> psi^m(value)` for a graded dimension `value`.
    pub fn specialize(&self, value: &Laurent, sign: SignMode) -> Laurent {
        let mut cache: BTreeMap<usize, Laurent> = BTreeMap::new();
        let mut out = Laurent::zero();
        for (l, c) in &self.terms {
            let mut term = c.clone();
            for &m in l.parts() {
                let pm = cache.entry(m).or_insert_with(|| value.adams(m, sign));
                term = &term * pm;
            }
            out += &term;
        }
        out
    }
}

impl fmt::Debug for PowerSumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(l, c)| format!("({c})p{l}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson(Partition, String);

impl PowerSumPoly {
    /// Debug dump as `[[partition, coefficient], ...]`; Laurent coefficients
    /// are rendered as `{degree: rational}` maps in string form.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(l, c)| {
                let s = if c.is_constant() {
                    rat_to_string(&c.coeff(0))
                } else {
                    c.to_string()
                };
                TermJson(l.clone(), s)
            })
            .collect();
        serde_json::to_value(rows).expect("serializable")
    }

    /// Parses the ungraded form `[[partition, "p/q"], ...]`.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let rows: Vec<TermJson> = serde_json::from_value(v.clone()).map_err(|e| Error::Malformed(e.to_string()))?;
        let mut out = Self::zero();
        for TermJson(l, c) in rows {
            out.add_term(l, Laurent::constant(rat_from_str(&c)?));
        }
        Ok(out)
    }
}

/// `ch(chi) = sum_sigma chi(sigma) p_sigma / z_sigma`.
pub fn frobenius_char(chi: &GradedCharacter) -> PowerSumPoly {
    let t = class_table(chi.n());
    let mut out = PowerSumPoly::zero();
    for (i, sigma) in t.classes.iter().enumerate() {
        out.add_term(sigma.clone(), chi.at(i).scale(&t.inv_z[i]));
    }
    out
}

pub fn frobenius_char_plain(chi: &Character) -> PowerSumPoly {
    frobenius_char(&GradedCharacter::concentrated(chi, 0))
}

/// Inverse characteristic of the degree-`n` component:
/// `chi(mu) = z_mu [p_mu] f`.
pub fn character_of(f: &PowerSumPoly, n: usize) -> GradedCharacter {
    let t = class_table(n);
    GradedCharacter::from_fn(n, |mu| {
        let i = t.index_of(mu).expect("class");
        f.coeff(mu).scale(&Rat::from_integer(BigInt::from(t.z[i].clone())))
    })
}

/// `f[g]`, truncated at degree `bound`. The inner `g` must be reduced.
pub fn plethysm(f: &PowerSumPoly, g: &PowerSumPoly, bound: usize, sign: SignMode) -> Result<PowerSumPoly> {
    if g.has_constant_term() {
        return Err(Error::NotReduced);
    }
    let g = g.truncate(bound);
    let mut adams: BTreeMap<usize, PowerSumPoly> = BTreeMap::new();
    let mut out = PowerSumPoly::zero();
    for (lambda, c) in f.terms() {
        // every p_m[g] has degree >= m, so p_lambda[g] has degree >= |lambda|
        if lambda.size() > bound {
            continue;
        }
        let mut term = PowerSumPoly::monomial(Partition::empty(), c.clone());
        for &m in lambda.parts() {
            let pm = adams.entry(m).or_insert_with(|| g.adams(m, sign).truncate(bound));
            term = term.mul_truncated(pm, bound);
            if term.is_zero() {
                break;
            }
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// The Schur multiplicities `mu -> <chi, chi^mu>`.
pub fn schur_multiplicities(chi: &Character) -> Vec<(Partition, Rat)> {
    chi.schur_multiplicities()
}

/// Truncated exponential generating function `sum a_n x^n / n!`, stored by
/// its coefficients `a_0, ..., a_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<Rat>,
}

impl RationalSeries {
    /// Coefficients `a_0..=a_N`; the bound is `N = len - 1`.
    pub fn new(coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Malformed("a series needs at least a_0".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Rat {
        self.coeffs.get(n).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }
}

/// Coefficients of the EGF composite `a(b(x))`:
/// `c_n = sum_{lambda |- n} n!/|H(lambda)| a_k prod_i b_{l_i}^{k_i}`.
pub fn egf_compose(a: &RationalSeries, b: &RationalSeries) -> Result<RationalSeries> {
    if !b.coeff(0).is_zero() {
        return Err(Error::NonzeroConstant);
    }
    let bound = a.bound().min(b.bound());
    let mut out = vec![a.coeff(0)];
    for n in 1..=bound {
        let nf = factorial(n);
        let mut c = Rat::zero();
        for lambda in enumerate_partitions(n) {
            let weight = Rat::from_integer(BigInt::from(&nf / stabilizer_order(&lambda)));
            let prod = lambda
                .parts()
                .iter()
                .fold(a.coeff(lambda.len()), |acc, &l| acc * b.coeff(l));
            c += weight * prod;
        }
        out.push(c);
    }
    RationalSeries::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{rat, rat_frac};
    use proptest::prelude::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn c(x: Rat) -> Laurent {
        Laurent::constant(x)
    }

    fn h(n: usize) -> PowerSumPoly {
        frobenius_char_plain(&Character::trivial(n))
    }

    #[test]
    fn frobenius_examples() {
        let mut expect = PowerSumPoly::zero();
        expect.add_term(p(&[1, 1]), c(rat_frac(1, 2)));
        expect.add_term(p(&[2]), c(rat_frac(1, 2)));
        assert_eq!(h(2), expect);
        let mut expect = PowerSumPoly::zero();
        expect.add_term(p(&[1, 1]), c(rat_frac(1, 2)));
        expect.add_term(p(&[2]), c(rat_frac(-1, 2)));
        assert_eq!(frobenius_char_plain(&Character::sign(2)), expect);
        assert_eq!(h(1), PowerSumPoly::p(1));
        for n in 0..=6 {
            for mu in enumerate_partitions(n) {
                let chi = GradedCharacter::concentrated(&Character::irreducible(&mu), 2);
                assert_eq!(character_of(&frobenius_char(&chi), n), chi);
            }
        }
    }

    #[test]
    fn plethysm_examples() {
        let r = plethysm(&PowerSumPoly::p(2), &PowerSumPoly::p(3), 10, SignMode::Unsigned).unwrap();
        assert_eq!(r, PowerSumPoly::p(6));
        let hh = plethysm(&h(2), &h(2), 4, SignMode::Unsigned).unwrap();
        assert_eq!(hh.specialize(&Laurent::one(), SignMode::Unsigned), Laurent::one());
        // h_2[h_2] = s_4 + s_22
        let chi = character_of(&hh, 4).component(0);
        let expect = Character::irreducible(&p(&[4]))
            .add(&Character::irreducible(&p(&[2, 2])))
            .unwrap();
        assert_eq!(chi, expect);
        assert_eq!(
            plethysm(&h(2), &PowerSumPoly::one(), 4, SignMode::Unsigned),
            Err(Error::NotReduced)
        );
    }

    #[test]
    fn signed_adams_on_odd_degree() {
        // a line in degree 1 has Sym^2 = 0 and Lambda^2 = line in degree 2
        let line = Laurent::monomial(1, rat(1));
        assert!(h(2).specialize(&line, SignMode::Signed).is_zero());
        let e2 = frobenius_char_plain(&Character::sign(2));
        assert_eq!(e2.specialize(&line, SignMode::Signed), Laurent::monomial(2, rat(1)));
        assert_eq!(h(2).specialize(&line, SignMode::Unsigned), Laurent::monomial(2, rat(1)));
    }

    // Composite EGF by ordinary truncated power-series arithmetic.
    fn series_oracle(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let n = a.len().min(b.len()) - 1;
        let fact = |k: usize| Rat::from_integer(BigInt::from(factorial(k)));
        let g: Vec<Rat> = (0..=n).map(|i| &b[i] / fact(i)).collect();
        let mut power = vec![Rat::zero(); n + 1];
        power[0] = rat(1);
        let mut total = vec![Rat::zero(); n + 1];
        for k in 0..=n {
            for i in 0..=n {
                total[i] += &power[i] * &a[k] / fact(k);
            }
            let mut next = vec![Rat::zero(); n + 1];
            for i in 0..=n {
                for j in 0..=n - i {
                    next[i + j] += &power[i] * &g[j];
                }
            }
            power = next;
        }
        (0..=n).map(|i| &total[i] * fact(i)).collect()
    }

    #[test]
    fn egf_examples() {
        let sym = |s: &str| -> Vec<Rat> { s.split(',').map(|x| rat(x.parse().unwrap())).collect() };
        let a = RationalSeries::new(sym("0,2,3,5")).unwrap();
        let b = RationalSeries::new(sym("0,7,11,13")).unwrap();
        let c3 = egf_compose(&a, &b).unwrap().coeff(3);
        // a1 b3 + 3 a2 b1 b2 + a3 b1^3
        assert_eq!(c3, rat(2 * 13 + 3 * 3 * 7 * 11 + 5 * 343));
        let id = RationalSeries::new(sym("0,1,0,0,0")).unwrap();
        let a5 = RationalSeries::new(sym("4,1,2,3,4")).unwrap();
        assert_eq!(egf_compose(&a5, &id).unwrap(), a5);
        let exp = RationalSeries::new(vec![rat(1); 9]).unwrap();
        let log: Vec<Rat> = (0..9)
            .map(|n| {
                if n == 0 {
                    rat(0)
                } else {
                    let s = if n % 2 == 1 { 1 } else { -1 };
                    Rat::from_integer(BigInt::from(factorial(n - 1))) * rat(s)
                }
            })
            .collect();
        let r = egf_compose(&exp, &RationalSeries::new(log).unwrap()).unwrap();
        let mut expect = vec![rat(0); 9];
        expect[0] = rat(1);
        expect[1] = rat(1);
        assert_eq!(r.coeffs(), &expect[..]);
        assert_eq!(egf_compose(&exp, &exp), Err(Error::NonzeroConstant));
    }

    fn arb_series(len: usize) -> impl Strategy<Value = Vec<Rat>> {
        prop::collection::vec(-4i64..=4, len).prop_map(|v| v.into_iter().map(rat).collect())
    }

    fn arb_poly(max_deg: usize, reduced: bool) -> impl Strategy<Value = PowerSumPoly> {
        let lo = usize::from(reduced);
        prop::collection::vec((lo..=max_deg, 0usize..8, -3i64..=3, -1i32..=1), 1..4).prop_map(|terms| {
            let mut f = PowerSumPoly::zero();
            for (n, pick, coef, deg) in terms {
                let ps = enumerate_partitions(n);
                f.add_term(ps[pick % ps.len()].clone(), Laurent::monomial(deg, rat(coef)));
            }
            f
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn egf_matches_series_arithmetic(a in arb_series(8), mut b in arb_series(8)) {
            b[0] = rat(0);
            let got = egf_compose(&RationalSeries::new(a.clone()).unwrap(), &RationalSeries::new(b.clone()).unwrap()).unwrap();
            prop_assert_eq!(got.coeffs(), &series_oracle(&a, &b)[..]);
        }

        #[test]
        fn plethysm_is_linear_in_outer(f in arb_poly(4, false), g in arb_poly(4, false), h in arb_poly(3, true)) {
            for sign in [SignMode::Unsigned, SignMode::Signed] {
                let lhs = plethysm(&f.add(&g), &h, 6, sign).unwrap();
                let rhs = plethysm(&f, &h, 6, sign).unwrap().add(&plethysm(&g, &h, 6, sign).unwrap());
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn plethysm_is_associative(f in arb_poly(3, false), g in arb_poly(3, true), h in arb_poly(2, true)) {
            for sign in [SignMode::Unsigned, SignMode::Signed] {
                let lhs = plethysm(&plethysm(&f, &g, 6, sign).unwrap(), &h, 6, sign).unwrap();
                let rhs = plethysm(&f, &plethysm(&g, &h, 6, sign).unwrap(), 6, sign).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn specialization_turns_plethysm_into_evaluation(
            f in arb_poly(4, false), g in arb_poly(3, true), v in prop::collection::vec((-1i32..=1, 0i64..=2), 0..3)
        ) {
            let value = Laurent::from_pairs(v.into_iter().map(|(d, k)| (d, rat(k))));
            for sign in [SignMode::Unsigned, SignMode::Signed] {
                let lhs = plethysm(&f, &g, 12, sign).unwrap().specialize(&value, sign);
                let rhs = f.specialize(&g.specialize(&value, sign), sign);
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
