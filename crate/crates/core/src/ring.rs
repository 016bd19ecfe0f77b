//! Exact coefficient rings.
//!
//! A [`Ring`] is a small value (a unit struct, or a modulus) that knows how to
//! combine its elements. Polynomials and series carry their ring so that
//! mixing `Z/m` values with different moduli is caught at runtime.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Runtime descriptor of a coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CoeffRing {
    ArbitraryIntegers,
    IntegersMod { modulus: u64 },
    Rationals,
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::ArbitraryIntegers => write!(f, "Z"),
            CoeffRing::IntegersMod { modulus } => write!(f, "Z/{modulus}"),
            CoeffRing::Rationals => write!(f, "Q"),
        }
    }
}

pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn descriptor(&self) -> CoeffRing;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, if `a` is a unit.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Decimal rendering (`p/q` for non-integral rationals).
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem) {
        *acc = self.add(acc, a);
    }

    fn add_mul_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let prod = self.mul(a, b);
        self.add_assign(acc, &prod);
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(
                self.descriptor().to_string(),
                other.descriptor().to_string(),
            ))
        }
    }
}

/// The integers, with arbitrary precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn descriptor(&self) -> CoeffRing {
        CoeffRing::ArbitraryIntegers
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn add_assign(&self, acc: &mut BigInt, a: &BigInt) {
        *acc += a;
    }
    fn add_mul_assign(&self, acc: &mut BigInt, a: &BigInt, b: &BigInt) {
        if !a.is_zero() && !b.is_zero() {
            *acc += a * b;
        }
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        (a.abs().is_one()).then(|| a.clone())
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigInt> {
        s.trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: `{s}`")))
    }
}

/// `Z/mZ` with canonical representatives `0..m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegersMod {
    modulus: u64,
}

impl IntegersMod {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        Ok(IntegersMod { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn reduce_i128(&self, n: i128) -> u64 {
        n.rem_euclid(self.modulus as i128) as u64
    }
}

impl Ring for IntegersMod {
    type Elem = u64;

    fn descriptor(&self) -> CoeffRing {
        CoeffRing::IntegersMod {
            modulus: self.modulus,
        }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.modulus);
        n.mod_floor(&m).to_u64().expect("reduced value fits in u64")
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i128(n as i128)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        let ext = (*a as i128).extended_gcd(&(self.modulus as i128));
        ext.gcd.is_one().then(|| self.reduce_i128(ext.x))
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let n: BigInt = Integers.parse(s)?;
        Ok(self.from_bigint(&n))
    }
}

/// The rationals, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> CoeffRing {
        CoeffRing::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n = Integers.parse(n)?;
                let d = Integers.parse(d)?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in `{s}`")));
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(Integers.parse(s)?)),
        }
    }
}

/// Exact binomial coefficient `C(n, k)` for a possibly negative top entry,
/// i.e. the coefficient of `x^k` in `(1 + x)^n`.
pub fn binomial(n: i64, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n) - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `p^e`, or an overflow error when it does not fit in `u64`.
pub fn checked_pow(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e)
        .ok_or_else(|| Error::Overflow(format!("{p}^{e} does not fit in 64 bits")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_arithmetic_uses_canonical_representatives() {
        let r = IntegersMod::new(7).unwrap();
        assert_eq!(r.from_i64(-1), 6);
        assert_eq!(r.from_bigint(&BigInt::from(-15)), 6);
        assert_eq!(r.add(&5, &4), 2);
        assert_eq!(r.neg(&0), 0);
        assert_eq!(r.mul(&3, &r.inv(&3).unwrap()), 1);
        assert_eq!(IntegersMod::new(9).unwrap().inv(&3), None);
        assert!(IntegersMod::new(1).is_err());
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = Rationals;
        let a = q.parse("2/4").unwrap();
        assert_eq!(q.format(&a), "1/2");
        assert_eq!(q.format(&q.add(&a, &a)), "1");
        assert!(q.parse("1/0").is_err());
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(-1, 3), BigInt::from(-1));
        assert_eq!(binomial(-2, 2), BigInt::from(3));
        assert_eq!(binomial(125, 0), BigInt::one());
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
