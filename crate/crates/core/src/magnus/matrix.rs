use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{binomial, IntegersMod, Ring};
use crate::words::{Letter, Word};

use super::{magnus_expand, GroupWord};

/// An upper unitriangular square matrix over `Z/modulus`. Indices are
/// 0-based: entry `(0, size-1)` is the top-right corner.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixRecord", into = "MatrixRecord")]
pub struct UniTriMatrix {
    size: usize,
    modulus: u64,
    entries: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct MatrixRecord {
    modulus: u64,
    rows: Vec<Vec<u64>>,
}

impl UniTriMatrix {
    pub fn identity(size: usize, modulus: u64) -> Self {
        let mut entries = vec![0; size * size];
        for i in 0..size {
            entries[i * size + i] = 1 % modulus;
        }
        UniTriMatrix {
            size,
            modulus,
            entries,
        }
    }

    /// Builds a matrix from its rows, checking unitriangularity.
    pub fn from_rows(modulus: u64, rows: Vec<Vec<u64>>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        let size = rows.len();
        let mut m = UniTriMatrix::identity(size, modulus);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(Error::Parse("matrix is not square".into()));
            }
            for (c, &v) in row.iter().enumerate() {
                let v = v % modulus;
                let expected_fixed = (c < r && v != 0) || (c == r && v != 1);
                if expected_fixed {
                    return Err(Error::Parse(format!("entry ({r},{c}) breaks unitriangularity")));
                }
                m.entries[r * size + c] = v;
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.size + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: u64) {
        assert!(row < col, "only strictly upper entries are free");
        self.entries[row * self.size + col] = v % self.modulus;
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.size).map(<[u64]>::to_vec).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        assert_eq!(self.modulus, other.modulus);
        let n = self.size;
        let m = self.modulus as u128;
        let mut out = UniTriMatrix::identity(n, self.modulus);
        for r in 0..n {
            for c in r + 1..n {
                let mut acc: u128 = 0;
                for t in r..=c {
                    acc += self.entries[r * n + t] as u128 * other.entries[t * n + c] as u128;
                }
                out.entries[r * n + c] = (acc % m) as u64;
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = UniTriMatrix::identity(self.size, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Inverse via the finite geometric series in the nilpotent part.
    pub fn inv(&self) -> Self {
        let n = self.size;
        let m = self.modulus;
        let mut neg_nil = UniTriMatrix { size: n, modulus: m, entries: vec![0; n * n] };
        for r in 0..n {
            for c in r + 1..n {
                let v = self.get(r, c);
                neg_nil.entries[r * n + c] = (m - v) % m;
            }
        }
        let mut acc = UniTriMatrix::identity(n, m);
        let mut term = UniTriMatrix::identity(n, m);
        for _ in 1..n {
            term = term.raw_mul(&neg_nil);
            for (a, t) in acc.entries.iter_mut().zip(&term.entries) {
                *a = ((*a as u128 + *t as u128) % m as u128) as u64;
            }
        }
        acc
    }

    fn raw_mul(&self, other: &Self) -> Self {
        let n = self.size;
        let m = self.modulus as u128;
        let mut entries = vec![0u64; n * n];
        for r in 0..n {
            for k in r..n {
                let a = self.entries[r * n + k] as u128;
                if a == 0 {
                    continue;
                }
                for c in k..n {
                    let b = other.entries[k * n + c] as u128;
                    let e = &mut entries[r * n + c];
                    *e = ((*e as u128 + a * b) % m) as u64;
                }
            }
        }
        UniTriMatrix { size: n, modulus: self.modulus, entries }
    }

    pub fn is_identity(&self) -> bool {
        *self == UniTriMatrix::identity(self.size, self.modulus)
    }

    /// Membership in `Id + d Z E_{1,n}`: every strictly upper entry vanishes
    /// except the top-right corner, which must be divisible by `d`.
    pub fn in_corner_subgroup(&self, d: u64) -> bool {
        let n = self.size;
        for r in 0..n {
            for c in r + 1..n {
                let v = self.get(r, c);
                let corner = r == 0 && c == n - 1;
                if (corner && v % d != 0) || (!corner && v != 0) {
                    return false;
                }
            }
        }
        true
    }
}

impl TryFrom<MatrixRecord> for UniTriMatrix {
    type Error = Error;
    fn try_from(r: MatrixRecord) -> Result<Self> {
        UniTriMatrix::from_rows(r.modulus, r.rows)
    }
}

impl From<UniTriMatrix> for MatrixRecord {
    fn from(m: UniTriMatrix) -> Self {
        MatrixRecord {
            modulus: m.modulus,
            rows: m.rows(),
        }
    }
}

/// Magnus representation attached to `w = a_1 ... a_i`: the
/// `(i+1) x (i+1)` unitriangular matrix whose entry `(k, l)` (0-based,
/// `k < l`) is `eps_{a_{k+1} ... a_l}(g)` reduced modulo `modulus`.
pub fn magnus_rep(k: usize, w: &Word, g: &GroupWord, modulus: u64) -> Result<UniTriMatrix> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let ring = IntegersMod::new(modulus)?;
    let k = k.max(w.letters().iter().map(|&x| x as usize + 1).max().unwrap_or(0));
    let series = magnus_expand(g, k, w.len(), &ring)?;
    let n = w.len() + 1;
    let mut m = UniTriMatrix::identity(n, modulus);
    for r in 0..n {
        for c in r + 1..n {
            let v = *series.coeff(&w.slice(r, c))?;
            m.set(r, c, v);
        }
    }
    Ok(m)
}

/// The same representation computed as a product of one matrix per syllable:
/// `x^e` acts by `C(e, c - r)` on entry `(r, c)` when `a_{r+1} ... a_c` is a
/// power of `x`, and by zero otherwise.
pub fn magnus_rep_product(w: &Word, g: &GroupWord, modulus: u64) -> Result<UniTriMatrix> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let ring = IntegersMod::new(modulus)?;
    let mut acc = UniTriMatrix::identity(w.len() + 1, modulus);
    for &(x, e) in g.syllables() {
        acc = acc.mul(&syllable_matrix(&ring, w, x, e));
    }
    Ok(acc)
}

pub(crate) fn syllable_matrix(ring: &IntegersMod, w: &Word, x: Letter, e: i64) -> UniTriMatrix {
    let letters = w.letters();
    let n = letters.len() + 1;
    let mut m = UniTriMatrix::identity(n, ring.modulus());
    for r in 0..n {
        for c in r + 1..n {
            if letters[c - 1] != x {
                break;
            }
            m.set(r, c, ring.from_bigint(&binomial(e, c - r)));
        }
    }
    m
}
