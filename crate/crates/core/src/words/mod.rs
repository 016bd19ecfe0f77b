//! Alphabets, words and the two word orders.
//!
//! A [`Word`] is a sequence of letter indices; its derived `Ord` is the
//! alphabetical (lexicographic) order in which a proper prefix is smaller than
//! its extensions. The length-alphabetical order is [`cmp_lenalph`].

mod lyndon;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use lyndon::{
    cfl_factorization, is_lyndon, lyndon_words, lyndon_words_of_len, standard_factorization,
    witt_number,
};

pub type Letter = u8;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(x: Letter) -> Self {
        Word(vec![x])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, x: Letter) {
        self.0.push(x);
    }

    /// `self` repeated `k` times.
    pub fn power(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    /// The subword `self[start..end]`.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Sorted, deduplicated letters occurring in the word.
    pub fn letter_set(&self) -> Vec<Letter> {
        let mut s = self.0.clone();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// True when every letter of `self` occurs in `other`.
    pub fn letters_within(&self, other: &Word) -> bool {
        self.0.iter().all(|x| other.0.contains(x))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

/// Alphabetical order.
pub fn cmp_alph(u: &Word, v: &Word) -> Ordering {
    u.cmp(v)
}

/// Length-alphabetical order: shorter words first, ties broken
/// alphabetically.
pub fn cmp_lenalph(u: &Word, v: &Word) -> Ordering {
    u.len().cmp(&v.len()).then_with(|| u.cmp(v))
}

/// Sorts a word list by the length-alphabetical order.
pub fn sort_lenalph(words: &mut [Word]) {
    words.sort_by(cmp_lenalph);
}

/// All words of length `len` over `k` letters, in alphabetical order.
pub fn words_of_len(k: usize, len: usize) -> impl Iterator<Item = Word> {
    let total = (k as u64).checked_pow(len as u32).expect("word space too large");
    (0..total).map(move |mut code| {
        let mut v = vec![0 as Letter; len];
        for slot in v.iter_mut().rev() {
            *slot = (code % k as u64) as Letter;
            code /= k as u64;
        }
        Word(v)
    })
}

/// All words of length `0..=max_len`, sorted by the length-alphabetical
/// order.
pub fn words_up_to(k: usize, max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(move |len| words_of_len(k, len))
}

/// A finite, totally ordered alphabet. Letter `i` is the `i`-th symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must be nonempty".into()));
        }
        if symbols.len() > Letter::MAX as usize {
            return Err(Error::InvalidAlphabet(format!(
                "at most {} letters are supported",
                Letter::MAX
            )));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == '^') {
                return Err(Error::InvalidAlphabet(format!("bad symbol `{s}`")));
            }
            if s.chars().all(|c| c.is_ascii_digit() || c == '-') {
                return Err(Error::InvalidAlphabet(format!(
                    "symbol `{s}` looks like a number"
                )));
            }
            if symbols[..i].contains(s) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// The first `k` lowercase Latin letters.
    pub fn standard(k: usize) -> Result<Self> {
        if k == 0 || k > 26 {
            return Err(Error::InvalidAlphabet(format!(
                "standard alphabets have 1 to 26 letters, not {k}"
            )));
        }
        Alphabet::new((b'a'..b'a' + k as u8).map(|c| (c as char).to_string()))
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, x: Letter) -> &str {
        &self.symbols[x as usize]
    }

    pub fn index_of(&self, symbol: &str) -> Result<Letter> {
        self.symbols
            .iter()
            .position(|s| s == symbol)
            .map(|i| i as Letter)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Validates that every letter of `w` belongs to this alphabet.
    pub fn check(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|&&x| x as usize >= self.size()) {
            Some(&x) => Err(Error::LetterOutOfRange {
                index: x as usize,
                size: self.size(),
            }),
            None => Ok(()),
        }
    }

    pub fn cmp_alph(&self, u: &Word, v: &Word) -> Result<Ordering> {
        self.check(u)?;
        self.check(v)?;
        Ok(cmp_alph(u, v))
    }

    pub fn cmp_lenalph(&self, u: &Word, v: &Word) -> Result<Ordering> {
        self.check(u)?;
        self.check(v)?;
        Ok(cmp_lenalph(u, v))
    }

    /// Parses a word: whitespace-separated symbols, or one character per
    /// letter when every symbol is a single character. The empty string is
    /// the empty word.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        let letters = if s.contains(char::is_whitespace) {
            s.split_whitespace()
                .map(|t| self.index_of(t))
                .collect::<Result<Vec<_>>>()?
        } else if self.single_char() {
            s.chars()
                .map(|c| self.index_of(c.encode_utf8(&mut [0; 4])))
                .collect::<Result<Vec<_>>>()?
        } else {
            vec![self.index_of(s)?]
        };
        Ok(Word(letters))
    }

    /// Inverse of [`Alphabet::parse_word`]; the empty word renders as `""`.
    pub fn format_word(&self, w: &Word) -> String {
        let sep = if self.single_char() { "" } else { " " };
        w.letters()
            .iter()
            .map(|&x| self.symbol(x))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Like [`Alphabet::format_word`] but shows the empty word as `1`.
    pub fn display_word(&self, w: &Word) -> String {
        if w.is_empty() {
            "1".to_string()
        } else {
            self.format_word(w)
        }
    }

    pub fn display<'a>(&'a self, w: &'a Word) -> DisplayWord<'a> {
        DisplayWord { alphabet: self, word: w }
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        Alphabet::new(v)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(a: Alphabet) -> Self {
        a.symbols
    }
}

pub struct DisplayWord<'a> {
    alphabet: &'a Alphabet,
    word: &'a Word,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.display_word(self.word))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::standard(2).unwrap()
    }

    fn w(s: &str) -> Word {
        let a = Alphabet::new(["a", "b", "x", "y"]).unwrap();
        a.parse_word(s).unwrap()
    }

    #[test]
    fn alphabetical_examples() {
        assert_eq!(cmp_alph(&w("ab"), &w("abab")), Ordering::Less);
        assert_eq!(cmp_alph(&w("ab"), &w("ab")), Ordering::Equal);
        assert_eq!(cmp_alph(&w("b"), &w("aab")), Ordering::Greater);
    }

    #[test]
    fn length_alphabetical_examples() {
        assert_eq!(cmp_lenalph(&w("b"), &w("aab")), Ordering::Less);
        assert_eq!(cmp_lenalph(&w("xy"), &w("yx")), Ordering::Less);
        assert_eq!(cmp_lenalph(&w(""), &w("x")), Ordering::Less);
    }

    #[test]
    fn both_orders_are_total_and_transitive() {
        for k in 1..=3 {
            let all: Vec<Word> = words_up_to(k, 4).collect();
            for cmp in [cmp_alph, cmp_lenalph] {
                for u in &all {
                    for v in &all {
                        let o = cmp(u, v);
                        assert_eq!(o.reverse(), cmp(v, u));
                        assert_eq!(o == Ordering::Equal, u == v);
                    }
                }
                let mut sorted = all.clone();
                sorted.sort_by(cmp);
                for win in sorted.windows(2) {
                    assert_eq!(cmp(&win[0], &win[1]), Ordering::Less);
                }
                // transitivity on a sample of triples
                for (i, u) in all.iter().enumerate().step_by(7) {
                    for v in all.iter().skip(i % 5).step_by(5) {
                        for x in all.iter().step_by(11) {
                            if cmp(u, v) != Ordering::Greater && cmp(v, x) != Ordering::Greater {
                                assert_ne!(cmp(u, x), Ordering::Greater);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn mismatched_alphabet_is_reported() {
        let a = ab();
        let bad = Word::new(vec![0, 2]);
        assert!(matches!(
            a.cmp_alph(&bad, &Word::letter(0)),
            Err(Error::LetterOutOfRange { index: 2, size: 2 })
        ));
    }

    #[test]
    fn parse_and_format() {
        let a = ab();
        assert_eq!(a.parse_word("abba").unwrap(), Word::new(vec![0, 1, 1, 0]));
        assert_eq!(a.parse_word("a b").unwrap(), Word::new(vec![0, 1]));
        assert!(a.parse_word("abc").is_err());
        let long = Alphabet::new(["x1", "x2"]).unwrap();
        let word = long.parse_word("x2 x1 x1").unwrap();
        assert_eq!(long.format_word(&word), "x2 x1 x1");
        assert_eq!(a.display_word(&Word::empty()), "1");
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
    }

    #[test]
    fn alphabet_json_is_a_symbol_array() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"["x","y"]"#);
        let back: Alphabet = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<Alphabet>(r#"["x","x"]"#).is_err());
    }
}
