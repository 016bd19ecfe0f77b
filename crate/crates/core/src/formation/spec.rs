use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::magnus::{lie_element, GroupWord};
use crate::ring::{checked_pow, is_prime};
use crate::words::{is_lyndon, lyndon_words, sort_lenalph, Alphabet, Word};

use super::exponent::{zassenhaus_exponents, ExponentMap};

/// Finite data of a Magnus formation over the `p`-adic integers: the
/// alphabet, the exponent map `e(i) = p^{j(i)}` on `{1, ..., n}` and the
/// Lyndon word set `L`, kept sorted by the length-alphabetical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormationSpec {
    alphabet: Alphabet,
    p: u64,
    j: Vec<u32>,
    e: ExponentMap,
    words: Vec<Word>,
    auto_words: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    LowerPCentral,
    Zassenhaus,
}

/// `"auto"` or an explicit list of words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordSelection {
    Keyword(String),
    Words(Vec<String>),
}

/// JSON form of a [`FormationSpec`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormationConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Alphabet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<Preset>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub words: Option<WordSelection>,
}

impl FormationSpec {
    /// Validated constructor. `words = None` selects every Lyndon word whose
    /// length lies in `I_e`.
    pub fn new(alphabet: Alphabet, p: u64, j: Vec<u32>, words: Option<Vec<Word>>) -> Result<Self> {
        let spec = Self::new_relaxed(alphabet, p, j, words)?;
        if !spec.e.is_binomial() {
            return Err(Error::InvalidExponentMap(format!(
                "e = {:?} is not binomial",
                spec.e.values()
            )));
        }
        if spec.e.is_identically_one() {
            return Err(Error::InvalidExponentMap("e is identically 1".into()));
        }
        Ok(spec)
    }

    /// Like [`FormationSpec::new`] but skips the binomiality and
    /// non-triviality checks on `e`. Only useful for negative controls.
    pub fn new_relaxed(
        alphabet: Alphabet,
        p: u64,
        j: Vec<u32>,
        words: Option<Vec<Word>>,
    ) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = j.len();
        if n < 2 {
            return Err(Error::InvalidSpec(format!("n must be at least 2, got {n}")));
        }
        let e = ExponentMap::from_p_powers(p, &j)?;
        // The working modulus p^J must fit.
        checked_pow(p, 1 + j.iter().copied().max().unwrap_or(0))?;
        let auto_words = words.is_none();
        let mut words = match words {
            Some(ws) => {
                for w in &ws {
                    alphabet.check(w)?;
                    if !is_lyndon(w) {
                        return Err(Error::NotLyndon(alphabet.display_word(w)));
                    }
                    if w.len() > n {
                        return Err(Error::InvalidSpec(format!(
                            "word {} is longer than n = {n}",
                            alphabet.format_word(w)
                        )));
                    }
                }
                ws
            }
            None => {
                let ie = e.index_set();
                lyndon_words(alphabet.size(), n)
                    .into_iter()
                    .filter(|w| ie.contains(&w.len()))
                    .collect()
            }
        };
        sort_lenalph(&mut words);
        words.dedup();
        if words.is_empty() {
            return Err(Error::InvalidSpec("the word set L is empty".into()));
        }
        Ok(FormationSpec {
            alphabet,
            p,
            j,
            e,
            words,
            auto_words,
        })
    }

    /// `e(i) = p^{n-i}`.
    pub fn lower_p_central(alphabet: Alphabet, p: u64, n: usize, words: Option<Vec<Word>>) -> Result<Self> {
        let j = (1..=n).map(|i| (n - i) as u32).collect();
        Self::new(alphabet, p, j, words)
    }

    /// `j(i) = t ceil(log_p(n / i))`.
    pub fn zassenhaus(
        alphabet: Alphabet,
        p: u64,
        t: u32,
        n: usize,
        words: Option<Vec<Word>>,
    ) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidSpec("t must be positive".into()));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        ExponentMap::zassenhaus(p, t, n)?;
        Self::new(alphabet, p, zassenhaus_exponents(p, t, n), words)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn k(&self) -> usize {
        self.alphabet.size()
    }

    pub fn n(&self) -> usize {
        self.j.len()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn j_values(&self) -> &[u32] {
        &self.j
    }

    /// `j(i)` for `1 <= i <= n`.
    pub fn j(&self, i: usize) -> u32 {
        self.j[i - 1]
    }

    /// `e(i)` for `1 <= i <= n`.
    pub fn e(&self, i: usize) -> u64 {
        self.e.e(i)
    }

    pub fn exponent_map(&self) -> &ExponentMap {
        &self.e
    }

    pub fn index_set(&self) -> Vec<usize> {
        self.e.index_set()
    }

    pub fn in_index_set(&self, i: usize) -> bool {
        self.index_set().contains(&i)
    }

    /// The word set `L`, sorted by the length-alphabetical order.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn is_auto(&self) -> bool {
        self.auto_words
    }

    pub fn position(&self, w: &Word) -> Option<usize> {
        self.words.iter().position(|v| v == w)
    }

    /// `J = 1 + max j(i)`.
    pub fn working_exponent(&self) -> u32 {
        1 + self.j.iter().copied().max().unwrap_or(0)
    }

    /// `p^J`.
    pub fn working_modulus(&self) -> u64 {
        self.p.pow(self.working_exponent())
    }

    /// `p^{j(i)+1}`, the modulus of `R_w` for words of length `i`.
    pub fn residue_modulus(&self, i: usize) -> u64 {
        self.p.pow(self.j(i) + 1)
    }

    /// Whether every word of `L` has its length in `I_e`.
    pub fn lengths_in_index_set(&self) -> bool {
        let ie = self.index_set();
        self.words.iter().all(|w| ie.contains(&w.len()))
    }

    /// Whether `L` is exactly the set of Lyndon words with length in `I_e`.
    pub fn is_full_lyndon_selection(&self) -> bool {
        let ie = self.index_set();
        let expected: Vec<Word> = lyndon_words(self.k(), self.n())
            .into_iter()
            .filter(|w| ie.contains(&w.len()))
            .collect();
        expected == self.words
    }

    /// `sigma_w = tau_w^{e(|w|)}` for `w` in `L`.
    pub fn sigma(&self, w: &Word) -> Result<GroupWord> {
        if self.position(w).is_none() {
            return Err(Error::NotInWordSet(self.alphabet.display_word(w)));
        }
        Ok(lie_element(w)?.pow(self.e(w.len()) as i64))
    }

    /// The same formation with `L` replaced by `words`.
    pub fn with_words(&self, words: Vec<Word>) -> Result<Self> {
        Self::new_relaxed(self.alphabet.clone(), self.p, self.j.clone(), Some(words))
    }

    pub fn to_config(&self) -> FormationConfig {
        FormationConfig {
            alphabet: Some(self.alphabet.clone()),
            k: None,
            n: Some(self.n()),
            p: self.p,
            j: Some(self.j.clone()),
            preset: None,
            t: None,
            words: Some(if self.auto_words {
                WordSelection::Keyword("auto".into())
            } else {
                WordSelection::Words(
                    self.words.iter().map(|w| self.alphabet.format_word(w)).collect(),
                )
            }),
        }
    }
}

impl FormationConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn alphabet(&self) -> Result<Alphabet> {
        match (&self.alphabet, self.k) {
            (Some(a), Some(k)) if a.size() != k => Err(Error::InvalidSpec(format!(
                "alphabet has {} letters but k = {k}",
                a.size()
            ))),
            (Some(a), _) => Ok(a.clone()),
            (None, Some(k)) => Alphabet::standard(k),
            (None, None) => Alphabet::standard(2),
        }
    }

    pub fn build(&self) -> Result<FormationSpec> {
        let alphabet = self.alphabet()?;
        let words = match &self.words {
            None => None,
            Some(WordSelection::Keyword(s)) if s == "auto" => None,
            Some(WordSelection::Keyword(s)) => {
                return Err(Error::InvalidSpec(format!(
                    "L must be \"auto\" or a list of words, got \"{s}\""
                )))
            }
            Some(WordSelection::Words(ws)) => Some(
                ws.iter()
                    .map(|s| alphabet.parse_word(s))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        match (&self.j, self.preset) {
            (Some(_), Some(_)) => Err(Error::InvalidSpec("give either j or a preset, not both".into())),
            (None, None) => Err(Error::InvalidSpec("one of j or preset is required".into())),
            (Some(j), None) => {
                if let Some(n) = self.n {
                    if n != j.len() {
                        return Err(Error::InvalidSpec(format!(
                            "n = {n} but j has {} entries",
                            j.len()
                        )));
                    }
                }
                if self.t.is_some() {
                    return Err(Error::InvalidSpec("t only applies to the zassenhaus preset".into()));
                }
                FormationSpec::new(alphabet, self.p, j.clone(), words)
            }
            (None, Some(preset)) => {
                let n = self
                    .n
                    .ok_or_else(|| Error::InvalidSpec("presets need n".into()))?;
                match preset {
                    Preset::LowerPCentral => {
                        if self.t.is_some() {
                            return Err(Error::InvalidSpec(
                                "t only applies to the zassenhaus preset".into(),
                            ));
                        }
                        FormationSpec::lower_p_central(alphabet, self.p, n, words)
                    }
                    Preset::Zassenhaus => FormationSpec::zassenhaus(
                        alphabet,
                        self.p,
                        self.t.unwrap_or(1),
                        n,
                        words,
                    ),
                }
            }
        }
    }
}
