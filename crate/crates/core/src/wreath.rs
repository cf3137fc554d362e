//! The character of `(Sigma_n)_+ ^_{H(lambda)} A_k ^ B_{l_1}^{k_1} ^ ...`,
//! computed two ways: through the plethysm bridge and by enumerating the
//! wreath stabilizer element by element.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::characters::{class_table, GradedCharacter};
use crate::error::{Error, Result};
use crate::laurent::{Laurent, Rat, SignMode};
use crate::partitions::{enumerate_partitions, factorial, Partition};
use crate::perm::{all_perms, Perm};
use crate::symfun::{character_of, frobenius_char, PowerSumPoly};

fn check_blocks(a: &GradedCharacter, blocks: &[(GradedCharacter, usize)]) -> Result<usize> {
    if blocks.is_empty() {
        return Err(Error::InconsistentBlocks("no blocks".into()));
    }
    for w in blocks.windows(2) {
        if w[0].0.n() >= w[1].0.n() {
            return Err(Error::InconsistentBlocks("block sizes must strictly increase".into()));
        }
    }
    if blocks.iter().any(|(b, k)| b.n() == 0 || *k == 0) {
        return Err(Error::InconsistentBlocks("zero block size or multiplicity".into()));
    }
    let k: usize = blocks.iter().map(|b| b.1).sum();
    if k != a.n() {
        return Err(Error::InconsistentBlocks(format!(
            "outer character lives on Sigma_{} but there are {k} blocks",
            a.n()
        )));
    }
    Ok(blocks.iter().map(|(b, k)| b.n() * k).sum())
}

/// All tuples `(rho^(1), ..., rho^(r))` with `rho^(i) |- k_i`.
fn class_tuples(ks: &[usize]) -> Vec<Vec<Partition>> {
    ks.iter().fold(vec![Vec::new()], |acc, &k| {
        let parts = enumerate_partitions(k);
        acc.into_iter()
            .flat_map(|prefix| {
                parts.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.push(p.clone());
                    v
                })
            })
            .collect()
    })
}

/// Wreath-induced character via the Frobenius characteristic:
/// `ch = sum_(rho^(i)) chi_A(U rho^(i)) prod_i p_{rho^(i)}[ch B_i] / z_{rho^(i)}`.
pub fn wreath_compose_character(
    a: &GradedCharacter,
    blocks: &[(GradedCharacter, usize)],
    sign: SignMode,
) -> Result<GradedCharacter> {
    let n = check_blocks(a, blocks)?;
    let chs: Vec<PowerSumPoly> = blocks.iter().map(|(b, _)| frobenius_char(b)).collect();
    let mut adams: HashMap<(usize, usize), PowerSumPoly> = HashMap::new();
    let ks: Vec<usize> = blocks.iter().map(|b| b.1).collect();
    let mut total = PowerSumPoly::zero();
    for tuple in class_tuples(&ks) {
        let joined = tuple.iter().fold(Partition::empty(), |acc, r| acc.concat(r));
        let outer = a.value(&joined)?;
        if outer.is_zero() {
            continue;
        }
        let mut weight = BigUint::one();
        let mut term = PowerSumPoly::monomial(Partition::empty(), outer.clone());
        for (i, rho) in tuple.iter().enumerate() {
            weight *= rho.z();
            for &m in rho.parts() {
                let pm = adams.entry((i, m)).or_insert_with(|| chs[i].adams(m, sign));
                term = term.mul_truncated(pm, n);
            }
        }
        let w = Rat::new(BigInt::one(), BigInt::from(weight));
        total = total.add(&term.scale(&Laurent::constant(w)));
    }
    Ok(character_of(&total, n))
}

/// Orbit data of one wreath factor `Sigma_l wr Sigma_k`: the class of the
/// block permutation, and for every cycle of it its length together with
/// the cycle type of the product of the block elements along the cycle.
type FactorKey = (Partition, Vec<(usize, Partition)>);
type Census = Arc<Vec<(FactorKey, u64)>>;

fn factor_census(l: usize, k: usize) -> Census {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Census>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("census cache").get(&(l, k)) {
        return v.clone();
    }
    let block_perms = all_perms(l);
    let mut counts: BTreeMap<FactorKey, u64> = BTreeMap::new();
    let mut digits = vec![0usize; k];
    for pi in all_perms(k) {
        let cycles = pi.cycles();
        let rho = pi.cycle_type();
        digits.iter_mut().for_each(|d| *d = 0);
        loop {
            let mut key_cycles: Vec<(usize, Partition)> = cycles
                .iter()
                .map(|cyc| {
                    // follow j -> pi(j), composing g_j at each step
                    let mut prod = Perm::identity(l);
                    let mut j = cyc[0];
                    for _ in 0..cyc.len() {
                        prod = block_perms[digits[j]].compose(&prod);
                        j = pi.apply(j);
                    }
                    (cyc.len(), prod.cycle_type())
                })
                .collect();
            key_cycles.sort();
            *counts.entry((rho.clone(), key_cycles)).or_insert(0) += 1;
            // next tuple of block elements
            let mut pos = 0;
            while pos < k {
                digits[pos] += 1;
                if digits[pos] < block_perms.len() {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == k {
                break;
            }
        }
    }
    let v = Arc::new(counts.into_iter().collect::<Vec<_>>());
    cache.lock().expect("census cache").insert((l, k), v.clone());
    v
}

/// Wreath-induced character by summing over every element of `H(lambda)`:
/// `Ind(mu) = z_mu / |H| sum_{h of type mu} chi(h)`.
pub fn wreath_compose_character_brute(
    a: &GradedCharacter,
    blocks: &[(GradedCharacter, usize)],
    sign: SignMode,
) -> Result<GradedCharacter> {
    let n = check_blocks(a, blocks)?;
    let censuses: Vec<_> = blocks.iter().map(|(b, k)| factor_census(b.n(), *k)).collect();
    let h_order = blocks.iter().fold(BigUint::one(), |acc, (b, k)| {
        acc * factorial(b.n()).pow(*k as u32) * factorial(*k)
    });
    // accumulated sum over H, by class of Sigma_n
    let mut sums: BTreeMap<Partition, Laurent> = BTreeMap::new();
    let mut stack: Vec<(usize, Partition, Partition, Laurent, u64)> =
        vec![(0, Partition::empty(), Partition::empty(), Laurent::one(), 1)];
    while let Some((i, rho, mu, value, count)) = stack.pop() {
        if i == blocks.len() {
            let v = a.value(&rho)? * &value;
            let slot = sums.entry(mu).or_default();
            *slot += &v.scale(&Rat::from_integer(BigInt::from(count)));
            continue;
        }
        let b = &blocks[i].0;
        for ((rho_i, cycles), c) in censuses[i].iter() {
            let mut v = value.clone();
            let mut mu_next = mu.clone();
            for (m, tau) in cycles {
                v = &v * &b.value(tau)?.adams(*m, sign);
                mu_next = mu_next.concat(&tau.scaled(*m));
            }
            stack.push((i + 1, rho.concat(rho_i), mu_next, v, count * c));
        }
    }
    let t = class_table(n);
    Ok(GradedCharacter::from_fn(n, |mu| {
        let i = t.index_of(mu).expect("class");
        let w = Rat::new(BigInt::from(t.z[i].clone()), BigInt::from(h_order.clone()));
        sums.get(mu).map(|s| s.scale(&w)).unwrap_or_default()
    }))
}

/// Splits `lambda` into `(l_i, k_i)` and pulls the matching entries of `b`.
pub fn blocks_for(lambda: &Partition, b: impl Fn(usize) -> GradedCharacter) -> Vec<(GradedCharacter, usize)> {
    lambda.blocks().blocks.into_iter().map(|(l, k)| (b(l), k)).collect()
}
