use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::words::{Letter, Word};

use super::NCPoly;

/// A power series in `k` noncommuting letters truncated above degree
/// `max_deg`, stored densely: one coefficient per word of length
/// `0..=max_deg`, in length-alphabetical order. The constant term sits at
/// index 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<R: Ring> {
    ring: R,
    k: usize,
    max_deg: usize,
    /// `offsets[l]` is the index of the first word of length `l`.
    offsets: Vec<usize>,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> TruncatedSeries<R> {
    pub fn zero(ring: R, k: usize, max_deg: usize) -> Self {
        assert!(k >= 1, "alphabet must be nonempty");
        let mut offsets = Vec::with_capacity(max_deg + 2);
        let mut acc = 0usize;
        let mut block = 1usize;
        for _ in 0..=max_deg {
            offsets.push(acc);
            acc = acc.checked_add(block).expect("series too large");
            block = block.checked_mul(k).expect("series too large");
        }
        offsets.push(acc);
        let zero = ring.zero();
        TruncatedSeries {
            coeffs: vec![zero; acc],
            ring,
            k,
            max_deg,
            offsets,
        }
    }

    pub fn one(ring: R, k: usize, max_deg: usize) -> Self {
        let mut s = Self::zero(ring, k, max_deg);
        s.coeffs[0] = s.ring.one();
        s
    }

    /// `1 + x` for a single letter.
    pub fn one_plus_letter(ring: R, k: usize, max_deg: usize, x: Letter) -> Self {
        let mut s = Self::one(ring, k, max_deg);
        if max_deg >= 1 {
            let i = s.index(&Word::letter(x));
            s.coeffs[i] = s.ring.one();
        }
        s
    }

    /// Truncation of a polynomial; terms of degree above `max_deg` are
    /// dropped.
    pub fn from_poly(f: &NCPoly<R>, k: usize, max_deg: usize) -> Result<Self> {
        f.check_letters(k)?;
        let mut s = Self::zero(f.ring().clone(), k, max_deg);
        for (w, c) in f.terms() {
            if w.len() <= max_deg {
                let i = s.index(w);
                s.coeffs[i] = c.clone();
            }
        }
        Ok(s)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn alphabet_size(&self) -> usize {
        self.k
    }

    pub fn max_deg(&self) -> usize {
        self.max_deg
    }

    pub fn num_coeffs(&self) -> usize {
        self.coeffs.len()
    }

    fn block(&self, len: usize) -> usize {
        self.offsets[len + 1] - self.offsets[len]
    }

    fn index(&self, w: &Word) -> usize {
        let mut v = 0usize;
        for &x in w.letters() {
            v = v * self.k + x as usize;
        }
        self.offsets[w.len()] + v
    }

    fn word_at(&self, index: usize) -> Word {
        let len = self.offsets.partition_point(|&o| o <= index) - 1;
        let mut v = index - self.offsets[len];
        let mut letters = vec![0 as Letter; len];
        for slot in letters.iter_mut().rev() {
            *slot = (v % self.k) as Letter;
            v /= self.k;
        }
        Word::new(letters)
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        if w.len() > self.max_deg {
            return Err(Error::BeyondTruncation {
                len: w.len(),
                max_deg: self.max_deg,
            });
        }
        if let Some(&x) = w.letters().iter().find(|&&x| x as usize >= self.k) {
            return Err(Error::LetterOutOfRange {
                index: x as usize,
                size: self.k,
            });
        }
        Ok(())
    }

    pub fn coeff(&self, w: &Word) -> Result<&R::Elem> {
        self.check_word(w)?;
        Ok(&self.coeffs[self.index(w)])
    }

    pub fn set_coeff(&mut self, w: &Word, c: R::Elem) -> Result<()> {
        self.check_word(w)?;
        let i = self.index(w);
        self.coeffs[i] = c;
        Ok(())
    }

    pub fn constant(&self) -> &R::Elem {
        &self.coeffs[0]
    }

    /// Nonzero terms in length-alphabetical order.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (Word, &R::Elem)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.ring.is_zero(c))
            .map(|(i, c)| (self.word_at(i), c))
    }

    pub fn to_poly(&self) -> NCPoly<R> {
        NCPoly::from_terms(
            self.ring.clone(),
            self.nonzero_terms().map(|(w, c)| (w, c.clone())),
        )
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        self.ring.same_ring(&other.ring)?;
        if self.k != other.k {
            return Err(Error::AlphabetMismatch(self.k, other.k));
        }
        if self.max_deg != other.max_deg {
            return Err(Error::DegreeMismatch(self.max_deg, other.max_deg));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            self.ring.add_assign(a, b);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = self.ring.neg(c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = self.clone();
        for a in out.coeffs.iter_mut() {
            *a = self.ring.mul(c, a);
        }
        out
    }

    /// Concatenation product, truncated: `(fg)_w = sum_{w=uv} f_u g_v`.
    pub fn concat_mul(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = Self::zero(self.ring.clone(), self.k, self.max_deg);
        for a in 0..=self.max_deg {
            for b in 0..=self.max_deg - a {
                let base = out.offsets[a + b];
                let bw = self.block(b);
                for (vu, fu) in self.coeffs[self.offsets[a]..self.offsets[a + 1]]
                    .iter()
                    .enumerate()
                {
                    if self.ring.is_zero(fu) {
                        continue;
                    }
                    let row = base + vu * bw;
                    for (vv, gv) in other.coeffs[other.offsets[b]..other.offsets[b + 1]]
                        .iter()
                        .enumerate()
                    {
                        self.ring.add_mul_assign(&mut out.coeffs[row + vv], fu, gv);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Right multiplication by the one-letter series `sum_m weights[m] x^m`
    /// (missing weights are zero).
    pub fn mul_letter_series(&self, x: Letter, weights: &[R::Elem]) -> Self {
        assert!((x as usize) < self.k);
        let mut out = Self::zero(self.ring.clone(), self.k, self.max_deg);
        for len in 0..=self.max_deg {
            let mut tail_val = 0usize; // value of x^m as a base-k number
            let mut pow_k = 1usize;
            for m in 0..=len {
                if m > 0 {
                    tail_val += x as usize * pow_k;
                    pow_k *= self.k;
                }
                let Some(wt) = weights.get(m) else { break };
                if self.ring.is_zero(wt) {
                    continue;
                }
                // words of length len ending in x^m: prefix of length len-m
                let plen = len - m;
                for (vp, fp) in self.coeffs[self.offsets[plen]..self.offsets[plen + 1]]
                    .iter()
                    .enumerate()
                {
                    if self.ring.is_zero(fp) {
                        continue;
                    }
                    let idx = self.offsets[len] + vp * pow_k + tail_val;
                    self.ring.add_mul_assign(&mut out.coeffs[idx], fp, wt);
                }
            }
        }
        out
    }

    /// Inverse of a unit series, built degree by degree. The constant term
    /// must be `1`; over `Z/m` any unit constant is accepted.
    pub fn invert_unit(&self) -> Result<Self> {
        let c = self.constant();
        let c_inv = if self.ring.is_one(c) {
            self.ring.one()
        } else if matches!(
            self.ring.descriptor(),
            crate::ring::CoeffRing::IntegersMod { .. }
        ) {
            self.ring.inv(c).ok_or(Error::NotAUnit)?
        } else {
            return Err(Error::NotAUnit);
        };
        let mut h = Self::zero(self.ring.clone(), self.k, self.max_deg);
        h.coeffs[0] = c_inv.clone();
        for len in 1..=self.max_deg {
            for idx in self.offsets[len]..self.offsets[len + 1] {
                let v = idx - self.offsets[len];
                // sum over splits w = u v' with |u| = a >= 1
                let mut acc = self.ring.zero();
                let mut div = 1usize;
                for _ in 0..len {
                    div *= self.k;
                }
                for a in 1..=len {
                    div /= self.k;
                    let vu = v / div;
                    let vv = v % div;
                    let fu = &self.coeffs[self.offsets[a] + vu];
                    if self.ring.is_zero(fu) {
                        continue;
                    }
                    let hv = &h.coeffs[h.offsets[len - a] + vv];
                    self.ring.add_mul_assign(&mut acc, fu, hv);
                }
                h.coeffs[idx] = self.ring.neg(&self.ring.mul(&c_inv, &acc));
            }
        }
        Ok(h)
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ring.clone(), self.k, self.max_deg);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.concat_mul(&base).expect("same shape");
            }
            e >>= 1;
            if e > 0 {
                base = base.concat_mul(&base).expect("same shape");
            }
        }
        acc
    }

    /// `(f, g)`; every word of `g` must lie within the truncation.
    pub fn scalar_product(&self, g: &NCPoly<R>) -> Result<R::Elem> {
        self.ring.same_ring(g.ring())?;
        let mut acc = self.ring.zero();
        for (w, c) in g.terms() {
            self.check_word(w)?;
            self.ring.add_mul_assign(&mut acc, &self.coeffs[self.index(w)], c);
        }
        Ok(acc)
    }

    /// Coefficient-wise image in another ring.
    pub fn map_ring<S: Ring>(&self, target: S, f: impl Fn(&R::Elem) -> S::Elem) -> TruncatedSeries<S> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
            ring: target,
            k: self.k,
            max_deg: self.max_deg,
            offsets: self.offsets.clone(),
        }
    }

    /// Drops all terms of degree above `deg`.
    pub fn truncate(&self, deg: usize) -> Self {
        let deg = deg.min(self.max_deg);
        TruncatedSeries {
            ring: self.ring.clone(),
            k: self.k,
            max_deg: deg,
            offsets: self.offsets[..deg + 2].to_vec(),
            coeffs: self.coeffs[..self.offsets[deg + 1]].to_vec(),
        }
    }
}
