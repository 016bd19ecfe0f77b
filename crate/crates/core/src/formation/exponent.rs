use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{binomial, checked_pow};

/// An exponent map `e: {1, ..., n} -> Z_{>=1}`. Indices are 1-based in the
/// public API.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct ExponentMap {
    values: Vec<u64>,
}

/// Outcome of evaluating the binomiality definition and its two-condition
/// reformulation independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialEquivalence {
    pub binomial: bool,
    pub condition_a: bool,
    pub condition_b: bool,
}

impl BinomialEquivalence {
    pub fn agree(&self) -> bool {
        self.binomial == (self.condition_a && self.condition_b)
    }
}

impl ExponentMap {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidExponentMap("n must be at least 1".into()));
        }
        if values.contains(&0) {
            return Err(Error::InvalidExponentMap("values must be positive".into()));
        }
        Ok(ExponentMap { values })
    }

    /// `e(i) = p^{j(i)}`.
    pub fn from_p_powers(p: u64, j: &[u32]) -> Result<Self> {
        let values = j.iter().map(|&ji| checked_pow(p, ji)).collect::<Result<Vec<_>>>()?;
        ExponentMap::new(values)
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `e(i)` for `1 <= i <= n`.
    pub fn e(&self, i: usize) -> u64 {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn is_identically_one(&self) -> bool {
        self.values.iter().all(|&v| v == 1)
    }

    fn divides_binomial(d: u64, top: u64, l: u64) -> bool {
        let c = binomial(top as i64, l as usize);
        (c % num_bigint::BigInt::from(d)).is_zero()
    }

    /// `e(i) | C(e(i'), l)` whenever `i' l <= i <= n` and `1 <= l <= e(i')`.
    pub fn is_binomial(&self) -> bool {
        let n = self.n();
        for i_p in 1..=n {
            let top = self.e(i_p);
            for l in 1..=top.min((n / i_p) as u64) {
                for i in i_p * l as usize..=n {
                    if !Self::divides_binomial(self.e(i), top, l) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Condition (a): `e(i' l) | C(e(i'), l)` for `i' l <= n`, `1 <= l <= e(i')`.
    pub fn condition_a(&self) -> bool {
        let n = self.n();
        (1..=n).all(|i_p| {
            let top = self.e(i_p);
            (1..=top.min((n / i_p) as u64))
                .all(|l| Self::divides_binomial(self.e(i_p * l as usize), top, l))
        })
    }

    /// Condition (b): `e(i) | e(i')` for `i' <= i`.
    pub fn condition_b(&self) -> bool {
        let n = self.n();
        (1..=n).all(|i| (1..=i).all(|i_p| self.e(i_p) % self.e(i) == 0))
    }

    pub fn binomial_equiv_check(&self) -> BinomialEquivalence {
        BinomialEquivalence {
            binomial: self.is_binomial(),
            condition_a: self.condition_a(),
            condition_b: self.condition_b(),
        }
    }

    /// `I_e = { i : i' e(i') >= i e(i) for all i' <= i }`, ascending.
    pub fn index_set(&self) -> Vec<usize> {
        let n = self.n();
        (1..=n)
            .filter(|&i| {
                let target = i as u128 * self.e(i) as u128;
                (1..=i).all(|i_p| i_p as u128 * self.e(i_p) as u128 >= target)
            })
            .collect()
    }

    /// If every value is a power of `p`, the exponents `j(i)`.
    pub fn p_exponents(&self, p: u64) -> Option<Vec<u32>> {
        self.values
            .iter()
            .map(|&v| {
                let mut v = v;
                let mut j = 0;
                while v % p == 0 {
                    v /= p;
                    j += 1;
                }
                (v == 1).then_some(j)
            })
            .collect()
    }

    fn checked(self, what: &str) -> Result<Self> {
        if !self.is_binomial() {
            return Err(Error::InvalidExponentMap(format!(
                "{what} preset produced a non-binomial map {:?}",
                self.values
            )));
        }
        Ok(self)
    }

    /// `e(i) = gcd { prod_{k in K} a_k : K ⊆ {1..n-1}, |K| = n - i }`, with
    /// `n = a.len() + 1`.
    pub fn gcd_preset(a: &[u64]) -> Result<Self> {
        let n = a.len() + 1;
        if a.contains(&0) {
            return Err(Error::InvalidExponentMap("a_k must be positive".into()));
        }
        if a.len() > 24 {
            return Err(Error::InvalidExponentMap("too many a_k for subset enumeration".into()));
        }
        let mut values = Vec::with_capacity(n);
        for i in 1..=n {
            let size = n - i;
            let mut g = BigUint::zero();
            for mask in 0u32..(1 << a.len()) {
                if mask.count_ones() as usize != size {
                    continue;
                }
                let prod = (0..a.len())
                    .filter(|k| mask >> k & 1 == 1)
                    .fold(BigUint::one(), |acc, k| acc * BigUint::from(a[k]));
                g = g.gcd(&prod);
            }
            let v = g
                .to_u64()
                .ok_or_else(|| Error::Overflow(format!("gcd value {g} exceeds 64 bits")))?;
            values.push(v);
        }
        ExponentMap::new(values)?.checked("gcd")
    }

    /// `e(i) = p^{n-i}`.
    pub fn lower_p_central(p: u64, n: usize) -> Result<Self> {
        let j: Vec<u32> = (1..=n).map(|i| (n - i) as u32).collect();
        ExponentMap::from_p_powers(p, &j)?.checked("lower-p-central")
    }

    /// `e(i) = p^{t ceil(log_p(n / i))}`.
    pub fn zassenhaus(p: u64, t: u32, n: usize) -> Result<Self> {
        let j = zassenhaus_exponents(p, t, n);
        let e = ExponentMap::from_p_powers(p, &j)?.checked("zassenhaus")?;
        if e.index_set() != zassenhaus_index_formula(p, n) {
            return Err(Error::InvalidExponentMap(format!(
                "zassenhaus preset has I_e {:?}, expected {:?}",
                e.index_set(),
                zassenhaus_index_formula(p, n)
            )));
        }
        Ok(e)
    }
}

impl TryFrom<Vec<u64>> for ExponentMap {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        ExponentMap::new(v)
    }
}

impl From<ExponentMap> for Vec<u64> {
    fn from(e: ExponentMap) -> Self {
        e.values
    }
}

/// `j(i) = t ceil(log_p(n / i))`: `t` times the least `c >= 0` with
/// `i p^c >= n`.
pub fn zassenhaus_exponents(p: u64, t: u32, n: usize) -> Vec<u32> {
    (1..=n)
        .map(|i| {
            let mut c = 0u32;
            let mut reach = i as u128;
            while reach < n as u128 {
                reach *= p as u128;
                c += 1;
            }
            t * c
        })
        .collect()
}

/// `{ ceil(n / p^k) : k >= 0 }`, ascending.
pub fn zassenhaus_index_formula(p: u64, n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut pk: u128 = 1;
    loop {
        let v = (n as u128).div_ceil(pk) as usize;
        if !out.contains(&v) {
            out.push(v);
        }
        if v == 1 {
            break;
        }
        pk *= p as u128;
    }
    out.sort_unstable();
    out
}
