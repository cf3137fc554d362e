//! Exact character theory of the symmetric groups.
//!
//! Class functions are stored as vectors indexed by the canonical class
//! order of [`enumerate_partitions`]. Per-`n` data (centralizer orders and
//! the irreducible table) is built once and shared.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::{rat, rat_from_str, rat_to_string, Laurent, Rat};
use crate::partitions::{enumerate_partitions, factorial, Partition};

/// Conjugacy-class data and the irreducible character table of `Sigma_n`.
#[derive(Debug)]
pub struct ClassTable {
    pub n: usize,
    pub classes: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// Centralizer orders `z_sigma`.
    pub z: Vec<BigUint>,
    /// `1 / z_sigma`, the class weight in inner products.
    pub inv_z: Vec<Rat>,
    /// `irr[mu][sigma] = chi^mu(sigma)`.
    pub irr: Vec<Vec<i64>>,
}

impl ClassTable {
    fn build(n: usize) -> Self {
        let classes = enumerate_partitions(n);
        let index = classes.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let z: Vec<BigUint> = classes.iter().map(Partition::z).collect();
        let inv_z = z
            .iter()
            .map(|z| Rat::new(BigInt::one(), BigInt::from(z.clone())))
            .collect();
        let mut memo = HashMap::new();
        let irr = classes
            .iter()
            .map(|mu| {
                classes
                    .iter()
                    .map(|sigma| murnaghan_nakayama(mu, sigma, &mut memo))
                    .collect()
            })
            .collect();
        Self {
            n,
            classes,
            index,
            z,
            inv_z,
            irr,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn index_of(&self, sigma: &Partition) -> Option<usize> {
        self.index.get(sigma).copied()
    }

    /// Index of the identity class `(1, ..., 1)`.
    pub fn identity_index(&self) -> usize {
        0
    }

    /// `n! / z_sigma`.
    pub fn class_size(&self, i: usize) -> BigUint {
        factorial(self.n) / &self.z[i]
    }
}

/// Shared class table for `Sigma_n`.
pub fn class_table(n: usize) -> Arc<ClassTable> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<ClassTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("class table cache").get(&n) {
        return t.clone();
    }
    // built outside the lock; a racing duplicate build is harmless
    let table = Arc::new(ClassTable::build(n));
    cache
        .lock()
        .expect("class table cache")
        .entry(n)
        .or_insert(table)
        .clone()
}

type MnKey = (Vec<usize>, Vec<usize>);

/// `chi^mu(sigma)` by rim-hook removal on the beta-set of `mu`.
fn murnaghan_nakayama(mu: &Partition, sigma: &Partition, memo: &mut HashMap<MnKey, i64>) -> i64 {
    let rows = mu.decreasing();
    let r = rows.len();
    let beta: Vec<usize> = rows.iter().enumerate().map(|(i, &p)| p + r - 1 - i).collect();
    let mut beta = beta;
    beta.sort_unstable();
    mn_rec(beta, sigma.decreasing(), memo)
}

fn mn_rec(beta: Vec<usize>, hooks: Vec<usize>, memo: &mut HashMap<MnKey, i64>) -> i64 {
    if hooks.is_empty() {
        return 1;
    }
    let key = (beta, hooks);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let (beta, hooks) = &key;
    let h = hooks[0];
    let rest = hooks[1..].to_vec();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < h || beta.contains(&(b - h)) {
            continue;
        }
        let target = b - h;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[idx] = target;
        next.sort_unstable();
        let v = mn_rec(next, rest.clone(), memo);
        total += if between % 2 == 0 { v } else { -v };
    }
    memo.insert(key, total);
    total
}

/// `chi^mu(sigma)` for partitions of the same size.
pub fn irreducible_character(mu: &Partition, sigma: &Partition) -> Result<Rat> {
    if mu.size() != sigma.size() {
        return Err(Error::SizeMismatch(format!("|{mu}| != |{sigma}|")));
    }
    let t = class_table(mu.size());
    let (a, b) = (t.index_of(mu).expect("valid"), t.index_of(sigma).expect("valid"));
    Ok(rat(t.irr[a][b]))
}

fn check_n(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::SizeMismatch(format!("characters of Sigma_{a} and Sigma_{b}")))
    }
}

/// Every way to split the cycles of `mu` into a partition of `a` and a
/// partition of the rest, as pairs `(rho, tau)`.
pub fn class_splits(mu: &Partition, a: usize) -> Vec<(Partition, Partition)> {
    let mults: Vec<(usize, usize)> = mu.multiplicities().into_iter().collect();
    let mut out = Vec::new();
    fn rec(
        mults: &[(usize, usize)],
        a_left: usize,
        left: &mut Vec<usize>,
        right: &mut Vec<usize>,
        out: &mut Vec<(Partition, Partition)>,
    ) {
        let Some(&(m, count)) = mults.first() else {
            if a_left == 0 {
                out.push((
                    Partition::new(left.clone()).expect("positive"),
                    Partition::new(right.clone()).expect("positive"),
                ));
            }
            return;
        };
        for j in 0..=count {
            if j * m > a_left {
                break;
            }
            left.extend(std::iter::repeat_n(m, j));
            right.extend(std::iter::repeat_n(m, count - j));
            rec(&mults[1..], a_left - j * m, left, right, out);
            left.truncate(left.len() - j);
            right.truncate(right.len() - (count - j));
        }
    }
    rec(&mults, a, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// A rational class function on `Sigma_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Character {
    n: usize,
    values: Vec<Rat>,
}

impl Character {
    pub fn zero(n: usize) -> Self {
        let len = class_table(n).len();
        Self {
            n,
            values: vec![Rat::zero(); len],
        }
    }

    pub fn from_values(n: usize, values: Vec<Rat>) -> Result<Self> {
        if values.len() != class_table(n).len() {
            return Err(Error::SizeMismatch(format!(
                "{} values for {} classes of Sigma_{n}",
                values.len(),
                class_table(n).len()
            )));
        }
        Ok(Self { n, values })
    }

    pub fn from_fn(n: usize, f: impl Fn(&Partition) -> Rat) -> Self {
        let t = class_table(n);
        Self {
            n,
            values: t.classes.iter().map(f).collect(),
        }
    }

    pub fn trivial(n: usize) -> Self {
        Self::from_fn(n, |_| Rat::one())
    }

    pub fn sign(n: usize) -> Self {
        Self::from_fn(n, |s| rat(s.sign()))
    }

    pub fn regular(n: usize) -> Self {
        let f = Rat::from_integer(BigInt::from(factorial(n)));
        Self::from_fn(n, |s| {
            if s.parts().iter().all(|&p| p == 1) {
                f.clone()
            } else {
                Rat::zero()
            }
        })
    }

    pub fn irreducible(mu: &Partition) -> Self {
        let t = class_table(mu.size());
        let i = t.index_of(mu).expect("valid partition");
        Self {
            n: mu.size(),
            values: t.irr[i].iter().map(|&v| rat(v)).collect(),
        }
    }

    /// Permutation character of `Ind_{Sigma_c}^{Sigma_n}` of the trivial
    /// (or, with `signed`, the sign) character of a Young subgroup.
    pub fn young(composition: &[usize], signed: bool) -> Self {
        composition.iter().fold(Self::trivial(0), |acc, &c| {
            let f = if signed { Self::sign(c) } else { Self::trivial(c) };
            acc.induce_young(&f)
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn value(&self, sigma: &Partition) -> Result<&Rat> {
        class_table(self.n)
            .index_of(sigma)
            .map(|i| &self.values[i])
            .ok_or_else(|| Error::SizeMismatch(format!("{sigma} is not a class of Sigma_{}", self.n)))
    }

    pub fn dim(&self) -> &Rat {
        &self.values[0]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_n(self.n, other.n)?;
        Ok(Self {
            n: self.n,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_n(self.n, other.n)?;
        Ok(Self {
            n: self.n,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self {
            n: self.n,
            values: self.values.iter().map(|a| a * c).collect(),
        }
    }

    /// Internal tensor product (pointwise product).
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        check_n(self.n, other.n)?;
        Ok(Self {
            n: self.n,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        })
    }

    /// `<self, other> = sum_sigma self(sigma) other(sigma) / z_sigma`.
    pub fn inner(&self, other: &Self) -> Result<Rat> {
        check_n(self.n, other.n)?;
        let t = class_table(self.n);
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .zip(&t.inv_z)
            .fold(Rat::zero(), |acc, ((a, b), w)| acc + a * b * w))
    }

    /// Dimension of the coinvariants, `<self, triv>`.
    pub fn invariants_dim(&self) -> Rat {
        let t = class_table(self.n);
        self.values
            .iter()
            .zip(&t.inv_z)
            .fold(Rat::zero(), |acc, (a, w)| acc + a * w)
    }

    /// Induction of the outer product along `Sigma_a x Sigma_b`.
    pub fn induce_young(&self, other: &Self) -> Self {
        let (a, b) = (self.n, other.n);
        let t = class_table(a + b);
        let (ta, tb) = (class_table(a), class_table(b));
        let values = t
            .classes
            .iter()
            .enumerate()
            .map(|(i, mu)| {
                class_splits(mu, a).iter().fold(Rat::zero(), |acc, (rho, tau)| {
                    let (ir, it) = (ta.index_of(rho).expect("class"), tb.index_of(tau).expect("class"));
                    let w = Rat::new(BigInt::from(t.z[i].clone()), BigInt::from(&ta.z[ir] * &tb.z[it]));
                    acc + w * &self.values[ir] * &other.values[it]
                })
            })
            .collect();
        Self { n: a + b, values }
    }

    /// The value at the concatenated class `sigma tau`.
    pub fn restrict_product_class(&self, sigma: &Partition, tau: &Partition) -> Result<Rat> {
        if sigma.size() + tau.size() != self.n {
            return Err(Error::SizeMismatch(format!("|{sigma}| + |{tau}| != {}", self.n)));
        }
        self.value(&sigma.concat(tau)).cloned()
    }

    /// Multiplicity of each irreducible, `mu -> <self, chi^mu>`.
    pub fn schur_multiplicities(&self) -> Vec<(Partition, Rat)> {
        let t = class_table(self.n);
        t.classes
            .iter()
            .enumerate()
            .map(|(m, mu)| {
                let v = self
                    .values
                    .iter()
                    .zip(&t.irr[m])
                    .zip(&t.inv_z)
                    .fold(Rat::zero(), |acc, ((a, &x), w)| acc + a * rat(x) * w);
                (mu.clone(), v)
            })
            .collect()
    }

    /// Whether this is the character of an actual representation.
    pub fn is_genuine(&self) -> bool {
        self.schur_multiplicities()
            .iter()
            .all(|(_, m)| m.is_integer() && !m.is_negative())
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(rat_to_string).collect();
        write!(f, "chi_{}[{}]", self.n, vals.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct CharacterJson {
    n: usize,
    values: Vec<(Partition, String)>,
}

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let t = class_table(self.n);
        CharacterJson {
            n: self.n,
            values: t
                .classes
                .iter()
                .zip(&self.values)
                .map(|(p, v)| (p.clone(), rat_to_string(v)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Character {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CharacterJson::deserialize(d)?;
        let t = class_table(raw.n);
        let mut values = vec![Rat::zero(); t.len()];
        for (p, v) in raw.values {
            let i = t
                .index_of(&p)
                .ok_or_else(|| D::Error::custom(format!("{p} is not a class of Sigma_{}", raw.n)))?;
            values[i] = rat_from_str(&v).map_err(D::Error::custom)?;
        }
        Ok(Character { n: raw.n, values })
    }
}

/// A class function on `Sigma_n` with values in Laurent polynomials: the
/// degree-`d` coefficient is the character on degree-`d` homotopy.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedCharacter {
    n: usize,
    values: Vec<Laurent>,
}

impl GradedCharacter {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            values: vec![Laurent::zero(); class_table(n).len()],
        }
    }

    pub fn from_values(n: usize, values: Vec<Laurent>) -> Result<Self> {
        if values.len() != class_table(n).len() {
            return Err(Error::SizeMismatch(format!("wrong class count for Sigma_{n}")));
        }
        Ok(Self { n, values })
    }

    pub fn from_fn(n: usize, f: impl Fn(&Partition) -> Laurent) -> Self {
        let t = class_table(n);
        Self {
            n,
            values: t.classes.iter().map(f).collect(),
        }
    }

    /// `chi` placed in degree `d`.
    pub fn concentrated(chi: &Character, d: i32) -> Self {
        Self {
            n: chi.n,
            values: chi.values.iter().map(|v| Laurent::monomial(d, v.clone())).collect(),
        }
    }

    /// A constant on `Sigma_0` (the value of a constant term).
    pub fn scalar(v: Laurent) -> Self {
        Self { n: 0, values: vec![v] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Laurent] {
        &self.values
    }

    pub fn value(&self, sigma: &Partition) -> Result<&Laurent> {
        class_table(self.n)
            .index_of(sigma)
            .map(|i| &self.values[i])
            .ok_or_else(|| Error::SizeMismatch(format!("{sigma} is not a class of Sigma_{}", self.n)))
    }

    pub fn at(&self, i: usize) -> &Laurent {
        &self.values[i]
    }

    /// Graded dimension (value at the identity).
    pub fn dim(&self) -> &Laurent {
        &self.values[0]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Laurent::is_zero)
    }

    /// Degrees carrying a nonzero component.
    pub fn degrees(&self) -> Vec<i32> {
        let mut ds: Vec<i32> = self.values.iter().flat_map(|v| v.degrees()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn component(&self, d: i32) -> Character {
        Character {
            n: self.n,
            values: self.values.iter().map(|v| v.coeff(d)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_n(self.n, other.n)?;
        Ok(Self {
            n: self.n,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_n(self.n, other.n)?;
        Ok(Self {
            n: self.n,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Laurent) -> Self {
        Self {
            n: self.n,
            values: self.values.iter().map(|a| a * c).collect(),
        }
    }

    pub fn shift(&self, k: i32) -> Self {
        Self {
            n: self.n,
            values: self.values.iter().map(|a| a.shift(k)).collect(),
        }
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        check_n(self.n, other.n)?;
        Ok(Self {
            n: self.n,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        })
    }

    /// Graded dimension of the coinvariants.
    pub fn invariants(&self) -> Laurent {
        let t = class_table(self.n);
        self.values
            .iter()
            .zip(&t.inv_z)
            .fold(Laurent::zero(), |acc, (a, w)| acc + a.scale(w))
    }

    pub fn induce_young(&self, other: &Self) -> Self {
        let (a, b) = (self.n, other.n);
        let t = class_table(a + b);
        let (ta, tb) = (class_table(a), class_table(b));
        let values = t
            .classes
            .iter()
            .enumerate()
            .map(|(i, mu)| {
                class_splits(mu, a).iter().fold(Laurent::zero(), |acc, (rho, tau)| {
                    let (ir, it) = (ta.index_of(rho).expect("class"), tb.index_of(tau).expect("class"));
                    let w = Rat::new(BigInt::from(t.z[i].clone()), BigInt::from(&ta.z[ir] * &tb.z[it]));
                    acc + (&self.values[ir] * &other.values[it]).scale(&w)
                })
            })
            .collect();
        Self { n: a + b, values }
    }

    pub fn restrict_product_class(&self, sigma: &Partition, tau: &Partition) -> Result<Laurent> {
        if sigma.size() + tau.size() != self.n {
            return Err(Error::SizeMismatch(format!("|{sigma}| + |{tau}| != {}", self.n)));
        }
        self.value(&sigma.concat(tau)).cloned()
    }

    /// Every degree component is a genuine character.
    pub fn is_genuine(&self) -> bool {
        self.degrees().into_iter().all(|d| self.component(d).is_genuine())
    }
}

impl fmt::Debug for GradedCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| format!("{v}")).collect();
        write!(f, "gchi_{}[{}]", self.n, vals.join(" | "))
    }
}

#[derive(Serialize, Deserialize)]
struct DegreeJson {
    d: i32,
    character: Character,
}

#[derive(Serialize, Deserialize)]
struct GradedJson {
    n: usize,
    degrees: Vec<DegreeJson>,
}

impl Serialize for GradedCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GradedJson {
            n: self.n,
            degrees: self
                .degrees()
                .into_iter()
                .map(|d| DegreeJson {
                    d,
                    character: self.component(d),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedCharacter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GradedJson::deserialize(d)?;
        let mut out = GradedCharacter::zero(raw.n);
        for entry in raw.degrees {
            if entry.character.n != raw.n {
                return Err(D::Error::custom("degree component with wrong n"));
            }
            out = out
                .add(&GradedCharacter::concentrated(&entry.character, entry.d))
                .map_err(D::Error::custom)?;
        }
        Ok(out)
    }
}

impl GradedCharacter {
    /// Degree entries in the JSON layout used inside symmetric sequences.
    pub fn to_degree_json(&self) -> serde_json::Value {
        serde_json::to_value(
            self.degrees()
                .into_iter()
                .map(|d| DegreeJson {
                    d,
                    character: self.component(d),
                })
                .collect::<Vec<_>>(),
        )
        .expect("serializable")
    }

    pub fn from_degree_json(n: usize, v: &serde_json::Value) -> Result<Self> {
        let entries: Vec<DegreeJson> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Malformed(e.to_string()))?;
        let mut out = GradedCharacter::zero(n);
        for e in entries {
            if e.character.n != n {
                return Err(Error::Malformed(format!(
                    "character for Sigma_{} inside entry {n}",
                    e.character.n
                )));
            }
            out = out.add(&GradedCharacter::concentrated(&e.character, e.d))?;
        }
        Ok(out)
    }
}
