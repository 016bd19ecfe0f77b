use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::words::{cmp_lenalph, Alphabet, Word};

/// A polynomial in noncommuting letters: a finite map from words to nonzero
/// coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct NCPoly<R: Ring> {
    ring: R,
    terms: BTreeMap<Word, R::Elem>,
}

/// One serialized term; the coefficient is a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub word: String,
    pub coeff: String,
}

impl<R: Ring> NCPoly<R> {
    pub fn zero(ring: R) -> Self {
        NCPoly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: R) -> Self {
        Self::monomial(ring, Word::empty())
    }

    pub fn monomial(ring: R, w: Word) -> Self {
        let mut p = Self::zero(ring);
        let one = p.ring.one();
        p.add_term(w, &one);
        p
    }

    /// Sums the given terms, dropping whatever cancels.
    pub fn from_terms(ring: R, terms: impl IntoIterator<Item = (Word, R::Elem)>) -> Self {
        let mut p = Self::zero(ring);
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// Adds `c * w` in place.
    pub fn add_term(&mut self, w: Word, c: &R::Elem) {
        if self.ring.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                self.ring.add_assign(existing, c);
                if self.ring.is_zero(existing) {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn coeff(&self, w: &Word) -> R::Elem {
        self.terms.get(w).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Terms in alphabetical order of their words.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &R::Elem)> {
        self.terms.iter()
    }

    /// Terms in length-alphabetical order of their words.
    pub fn sorted_terms(&self) -> Vec<(&Word, &R::Elem)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| cmp_lenalph(a.0, b.0));
        v
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest word length in the support, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ring.same_ring(&other.ring)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        NCPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), self.ring.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        Self::from_terms(
            self.ring.clone(),
            self.terms
                .iter()
                .map(|(w, a)| (w.clone(), self.ring.mul(c, a))),
        )
    }

    /// Concatenation product.
    pub fn concat_mul(&self, other: &Self) -> Result<Self> {
        self.ring.same_ring(&other.ring)?;
        let mut out = Self::zero(self.ring.clone());
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &self.ring.mul(a, b));
            }
        }
        Ok(out)
    }

    /// Restriction to the words of length exactly `s`.
    pub fn homogeneous_part(&self, s: usize) -> Self {
        NCPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == s)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// `(f, g) = sum_w f_w g_w`.
    pub fn scalar_product(&self, other: &Self) -> Result<R::Elem> {
        self.ring.same_ring(&other.ring)?;
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = self.ring.zero();
        for (w, a) in &small.terms {
            if let Some(b) = large.terms.get(w) {
                self.ring.add_mul_assign(&mut acc, a, b);
            }
        }
        Ok(acc)
    }

    /// Coefficient-wise image in another ring.
    pub fn map_ring<S: Ring>(&self, target: S, f: impl Fn(&R::Elem) -> S::Elem) -> NCPoly<S> {
        NCPoly::from_terms(target, self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    /// Appends the letter `x` to every word.
    pub(crate) fn append_letter(&self, x: u8) -> Self {
        NCPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| {
                    let mut w = w.clone();
                    w.push(x);
                    (w, c.clone())
                })
                .collect(),
        }
    }

    pub fn records(&self, alphabet: &Alphabet) -> Vec<TermRecord> {
        self.sorted_terms()
            .into_iter()
            .map(|(w, c)| TermRecord {
                word: alphabet.format_word(w),
                coeff: self.ring.format(c),
            })
            .collect()
    }

    pub fn from_records(ring: R, alphabet: &Alphabet, records: &[TermRecord]) -> Result<Self> {
        let mut out = Self::zero(ring);
        for r in records {
            let w = alphabet.parse_word(&r.word)?;
            let c = out.ring.parse(&r.coeff)?;
            out.add_term(w, &c);
        }
        Ok(out)
    }

    /// Human-readable form such as `4 aabb + 2 abab` or `1 + ab - ba`,
    /// terms in length-alphabetical order.
    pub fn format(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.sorted_terms().into_iter().enumerate() {
            let mut text = self.ring.format(c);
            let negative = text.starts_with('-');
            if negative {
                text.remove(0);
            }
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if w.is_empty() {
                out.push_str(&text);
            } else {
                if text != "1" {
                    out.push_str(&text);
                    out.push(' ');
                }
                out.push_str(&alphabet.format_word(w));
            }
        }
        out
    }

    pub(crate) fn check_letters(&self, k: usize) -> Result<()> {
        for w in self.terms.keys() {
            if let Some(&x) = w.letters().iter().find(|&&x| x as usize >= k) {
                return Err(Error::LetterOutOfRange {
                    index: x as usize,
                    size: k,
                });
            }
        }
        Ok(())
    }
}
