use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::is_prime;

/// A dense matrix over `Z/p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u128;
    let mut base = a as u128 % p as u128;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    result as u64
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FpMatrix {
            p,
            rows,
            cols,
            entries: vec![0; rows * cols],
        })
    }

    /// Entries are reduced modulo `p`.
    pub fn from_rows(p: u64, rows: Vec<Vec<u64>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse("rows have different lengths".into()));
        }
        let mut m = FpMatrix::zeros(p, rows.len(), cols)?;
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.entries[r * cols + c] = v % p;
            }
        }
        Ok(m)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[r * self.cols + c] = v % self.p;
    }

    pub fn rank(&self) -> usize {
        let mut basis = EchelonBasis::new(self.p, self.cols);
        for r in 0..self.rows {
            basis.insert(self.entries[r * self.cols..(r + 1) * self.cols].to_vec());
        }
        basis.rank()
    }
}

/// Row space over `Z/p` kept in echelon form, grown one vector at a time.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    p: u64,
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    /// `p` is assumed prime.
    pub fn new(p: u64, cols: usize) -> Self {
        EchelonBasis {
            p,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u128;
        for x in v.iter_mut() {
            *x %= self.p;
        }
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let f = v[piv];
            if f == 0 {
                continue;
            }
            // rows are normalized to a leading 1
            for c in piv..self.cols {
                let sub = (f as u128 * row[c] as u128 % p) as u64;
                v[c] = (v[c] + self.p - sub) % self.p;
            }
        }
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[piv], self.p);
        for x in v.iter_mut() {
            *x = (*x as u128 * inv as u128 % p) as u64;
        }
        self.rows.push(v);
        self.pivots.push(piv);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Rank from the largest nonvanishing minor, by brute force.
    fn rank_oracle(p: u64, rows: &[Vec<u64>]) -> usize {
        fn det(p: u64, m: &[Vec<i128>]) -> i128 {
            let n = m.len();
            if n == 0 {
                return 1;
            }
            let mut acc = 0i128;
            for c in 0..n {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| *v).collect())
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                acc = (acc + sign * m[0][c] * det(p, &minor)).rem_euclid(p as i128);
            }
            acc
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            (0u32..1 << n)
                .filter(|m| m.count_ones() as usize == k)
                .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
                .collect()
        }
        let (r, c) = (rows.len(), rows[0].len());
        for k in (1..=r.min(c)).rev() {
            for rs in subsets(r, k) {
                for cs in subsets(c, k) {
                    let m: Vec<Vec<i128>> = rs
                        .iter()
                        .map(|&i| cs.iter().map(|&j| rows[i][j] as i128).collect())
                        .collect();
                    if det(p, &m) != 0 {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn rank_examples() {
        let m = FpMatrix::from_rows(5, vec![vec![2, 0, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 0, 2]]).unwrap();
        assert_eq!(m.rank(), 3);
        let m = FpMatrix::from_rows(2, vec![vec![2, 0]]).unwrap();
        assert_eq!(m.rank(), 0);
        let m = FpMatrix::from_rows(3, vec![vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(FpMatrix::from_rows(4, vec![vec![1]]), Err(Error::NotPrime(4)));
    }

    #[test]
    fn rank_matches_minor_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..150 {
            let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
            let r = rng.gen_range(1..=4);
            let c = rng.gen_range(1..=4);
            let rows: Vec<Vec<u64>> = (0..r)
                .map(|_| (0..c).map(|_| if rng.gen_bool(0.4) { 0 } else { rng.gen_range(0..p) }).collect())
                .collect();
            assert_eq!(FpMatrix::from_rows(p, rows.clone()).unwrap().rank(), rank_oracle(p, &rows), "{rows:?}");
        }
    }
}
