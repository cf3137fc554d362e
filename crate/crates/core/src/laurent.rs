//! Laurent polynomials in the grading variable `t` with exact rational
//! coefficients, and graded dimensions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Renders a rational as `"p/q"` (or `"p"` when integral).
pub fn rat_to_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse = |x: &str| {
        x.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Malformed(format!("bad rational {s:?}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse(q)?;
            if q.is_zero() {
                return Err(Error::Malformed(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(parse(p)?, q))
        }
        None => Ok(Rat::from_integer(parse(s)?)),
    }
}

/// Whether permutations of tensor factors pick up Koszul signs.
///
/// In `Signed` mode a cyclic permutation of length `m` acting on `m` factors
/// of degree `d` contributes `(-1)^((m-1) d)`; in `Unsigned` mode it
/// contributes `1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignMode {
    #[default]
    Unsigned,
    Signed,
}

/// Finitely supported Laurent polynomial `sum_d c_d t^d`. Zero coefficients
/// are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent {
    coeffs: BTreeMap<i32, Rat>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(d: i32, c: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(d, c);
        }
        Self { coeffs }
    }

    pub fn from_pairs<I: IntoIterator<Item = (i32, Rat)>>(pairs: I) -> Self {
        let mut out = Self::zero();
        for (d, c) in pairs {
            out.add_term(d, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, d: i32) -> Rat {
        self.coeffs.get(&d).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rat)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn add_term(&mut self, d: i32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(d).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&d);
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(d, x)| (*d, x * c)).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(d, x)| (d + k, x.clone())).collect(),
        }
    }

    /// Adams operation: `t^d -> eps^((m-1)d) t^(m d)`, where `eps = -1` in
    /// signed mode. This is the graded trace of an `m`-cycle acting on the
    /// `m`-th tensor power.
    pub fn adams(&self, m: usize, sign: SignMode) -> Self {
        if m == 1 {
            return self.clone();
        }
        let m_i = m as i32;
        let mut out = BTreeMap::new();
        for (d, c) in &self.coeffs {
            let negate = sign == SignMode::Signed && ((m_i - 1) * d).rem_euclid(2) == 1;
            out.insert(d * m_i, if negate { -c.clone() } else { c.clone() });
        }
        Self { coeffs: out }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Sum of all coefficients (the ungraded total).
    pub fn total(&self) -> Rat {
        self.coeffs.values().fold(Rat::zero(), |a, b| a + b)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn is_nonneg_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|d| *d == 0)
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(d, c)| match d {
                0 => rat_to_string(c),
                _ => format!("{}*t^{}", rat_to_string(c), d),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(mut self, rhs: Laurent) -> Laurent {
        self += &rhs;
        self
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (d, c) in &rhs.coeffs {
            self.add_term(*d, c.clone());
        }
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (d, c) in &rhs.coeffs {
            out.add_term(*d, -c.clone());
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scale(&-Rat::one())
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (d1, c1) in &self.coeffs {
            for (d2, c2) in &rhs.coeffs {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        &self * &rhs
    }
}

/// Graded dimension of a finite-dimensional graded rational vector space:
/// a Laurent polynomial with nonnegative integer coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedDim {
    dims: BTreeMap<i32, u64>,
}

impl GradedDim {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `k` basis vectors in degree `d`.
    pub fn concentrated(d: i32, k: u64) -> Self {
        let mut dims = BTreeMap::new();
        if k > 0 {
            dims.insert(d, k);
        }
        Self { dims }
    }

    pub fn from_pairs<I: IntoIterator<Item = (i32, u64)>>(pairs: I) -> Self {
        let mut dims = BTreeMap::new();
        for (d, k) in pairs {
            if k > 0 {
                *dims.entry(d).or_insert(0) += k;
            }
        }
        Self { dims }
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn get(&self, d: i32) -> u64 {
        self.dims.get(&d).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (i32, u64)> + '_ {
        self.dims.iter().map(|(d, k)| (*d, *k))
    }

    pub fn to_laurent(&self) -> Laurent {
        Laurent::from_pairs(self.dims.iter().map(|(d, k)| (*d, rat(*k as i64))))
    }

    /// Converts an exact Laurent polynomial back to a graded dimension,
    /// failing if a coefficient is negative or fractional.
    pub fn from_laurent(p: &Laurent) -> Result<Self> {
        let mut dims = BTreeMap::new();
        for (d, c) in p.terms() {
            if !c.is_integer() || c.is_negative() {
                return Err(Error::Malformed(format!(
                    "coefficient {} in degree {d} is not a dimension",
                    rat_to_string(c)
                )));
            }
            let k = c
                .to_integer()
                .to_u64()
                .ok_or_else(|| Error::Malformed("dimension overflow".into()))?;
            dims.insert(d, k);
        }
        Ok(Self { dims })
    }

    pub fn shift(&self, k: i32) -> Self {
        Self {
            dims: self.dims.iter().map(|(d, x)| (d + k, *x)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_pairs(self.pairs().chain(other.pairs()))
    }
}

impl Serialize for GradedDim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.pairs().collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedDim {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Self::from_pairs(Vec::<(i32, u64)>::deserialize(d)?))
    }
}

impl Serialize for Laurent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.terms()
            .map(|(d, c)| (d, rat_to_string(c)))
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Laurent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<(i32, String)>::deserialize(d)?;
        let mut out = Laurent::zero();
        for (deg, c) in pairs {
            out.add_term(deg, rat_from_str(&c).map_err(serde::de::Error::custom)?);
        }
        Ok(out)
    }
}

impl fmt::Debug for GradedDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_laurent())
    }
}

impl fmt::Display for GradedDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_laurent())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adams_signs() {
        let odd = Laurent::monomial(1, rat(1));
        assert_eq!(odd.adams(2, SignMode::Unsigned), Laurent::monomial(2, rat(1)));
        assert_eq!(odd.adams(2, SignMode::Signed), Laurent::monomial(2, rat(-1)));
        assert_eq!(odd.adams(3, SignMode::Signed), Laurent::monomial(3, rat(1)));
        let even = Laurent::monomial(2, rat(3));
        assert_eq!(even.adams(2, SignMode::Signed), Laurent::monomial(4, rat(3)));
    }

    #[test]
    fn adams_composes() {
        let p = Laurent::from_pairs([(-1, rat(2)), (1, rat(1)), (2, rat_frac(1, 3))]);
        for sign in [SignMode::Unsigned, SignMode::Signed] {
            for (a, b) in [(2, 3), (3, 2), (2, 2), (4, 1)] {
                assert_eq!(p.adams(a, sign).adams(b, sign), p.adams(a * b, sign));
            }
        }
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rat_from_str("-3/6").unwrap(), rat_frac(-1, 2));
        assert_eq!(rat_to_string(&rat_frac(4, 2)), "2");
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("x").is_err());
    }

    #[test]
    fn json_forms() {
        let g = GradedDim::from_pairs([(0, 2), (-1, 1)]);
        assert_eq!(serde_json::to_string(&g).unwrap(), "[[-1,1],[0,2]]");
        assert_eq!(serde_json::from_str::<GradedDim>("[[-1,1],[0,2]]").unwrap(), g);
        let l = Laurent::from_pairs([(3, rat_frac(-1, 2)), (0, rat(4))]);
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"[[0,"4"],[3,"-1/2"]]"#);
        assert_eq!(serde_json::from_str::<Laurent>(&s).unwrap(), l);
    }

    #[test]
    fn graded_dim_roundtrip() {
        let g = GradedDim::from_pairs([(0, 2), (3, 1)]);
        assert_eq!(GradedDim::from_laurent(&g.to_laurent()).unwrap(), g);
        assert!(GradedDim::from_laurent(&Laurent::constant(rat(-1))).is_err());
    }
}
