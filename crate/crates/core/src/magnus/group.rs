use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter};

/// An element of the free group on the letters of an alphabet, kept freely
/// reduced as a run-length list of syllables `x^e` with `e != 0` and no two
/// adjacent syllables on the same generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    syllables: Vec<(Letter, i64)>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn generator(x: Letter) -> Self {
        GroupWord {
            syllables: vec![(x, 1)],
        }
    }

    pub fn generator_power(x: Letter, e: i64) -> Self {
        let mut g = GroupWord::identity();
        g.push(x, e);
        g
    }

    /// Builds a reduced word from a sequence of `(letter, exponent)` pairs.
    pub fn from_syllables(items: impl IntoIterator<Item = (Letter, i64)>) -> Self {
        let mut g = GroupWord::identity();
        for (x, e) in items {
            g.push(x, e);
        }
        g
    }

    fn push(&mut self, x: Letter, e: i64) {
        if e == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some((y, f)) if *y == x => {
                *f += e;
                if *f == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push((x, e)),
        }
    }

    pub fn syllables(&self) -> &[(Letter, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Length as a word in the generators and their inverses.
    pub fn letter_length(&self) -> u64 {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    /// One more than the largest generator index used (0 for the identity).
    pub fn min_alphabet_size(&self) -> usize {
        self.syllables
            .iter()
            .map(|(x, _)| *x as usize + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut g = self.clone();
        for &(x, e) in &other.syllables {
            g.push(x, e);
        }
        g
    }

    pub fn inv(&self) -> GroupWord {
        GroupWord {
            syllables: self.syllables.iter().rev().map(|&(x, e)| (x, -e)).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> GroupWord {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut g = GroupWord::identity();
        for _ in 0..n.unsigned_abs() {
            for &(x, e) in &base.syllables {
                g.push(x, e);
            }
        }
        g
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(a: &GroupWord, b: &GroupWord) -> GroupWord {
        a.mul(b).mul(&a.inv()).mul(&b.inv())
    }

    /// `lambda self lambda^-1`.
    pub fn conjugate_by(&self, lambda: &GroupWord) -> GroupWord {
        lambda.mul(self).mul(&lambda.inv())
    }

    /// A random product of at most `max_len` generators or inverses over `k`
    /// letters (freely reduced afterwards).
    pub fn random<G: Rng + ?Sized>(rng: &mut G, k: usize, max_len: usize) -> GroupWord {
        let len = rng.gen_range(0..=max_len);
        GroupWord::from_syllables((0..len).map(|_| {
            let x = rng.gen_range(0..k) as Letter;
            let e = if rng.gen_bool(0.5) { 1 } else { -1 };
            (x, e)
        }))
    }

    /// Parses whitespace-separated tokens `x`, `x^-1`, `x^3`; `1` or the
    /// empty string is the identity.
    pub fn parse(alphabet: &Alphabet, s: &str) -> Result<GroupWord> {
        let mut g = GroupWord::identity();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (sym, e) = match tok.split_once('^') {
                Some((sym, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
                    (sym, e)
                }
                None => (tok, 1),
            };
            g.push(alphabet.index_of(sym)?, e);
        }
        Ok(g)
    }

    pub fn format(&self, alphabet: &Alphabet) -> String {
        if self.is_identity() {
            return "1".to_string();
        }
        let mut out = String::new();
        for (i, &(x, e)) in self.syllables.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(alphabet.symbol(x));
            if e != 1 {
                let _ = write!(out, "^{e}");
            }
        }
        out
    }

    pub fn check(&self, alphabet: &Alphabet) -> Result<()> {
        match self.syllables.iter().find(|(x, _)| *x as usize >= alphabet.size()) {
            Some(&(x, _)) => Err(Error::LetterOutOfRange {
                index: x as usize,
                size: alphabet.size(),
            }),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn xy() -> Alphabet {
        Alphabet::new(["x", "y"]).unwrap()
    }

    fn g(s: &str) -> GroupWord {
        GroupWord::parse(&xy(), s).unwrap()
    }

    #[test]
    fn free_reduction() {
        assert!(g("x x^-1").is_identity());
        assert_eq!(g("x y").inv(), g("y^-1 x^-1"));
        assert_eq!(g("x^2").pow(3), g("x^6"));
        assert_eq!(g("x y").pow(-2), g("y^-1 x^-1 y^-1 x^-1"));
        assert_eq!(g("x y y^-1 x"), g("x^2"));
        assert_eq!(g("x y").mul(&g("y^-1 x^-1 y")), g("y"));
    }

    #[test]
    fn commutators() {
        let (x, y) = (GroupWord::generator(0), GroupWord::generator(1));
        assert_eq!(GroupWord::commutator(&x, &y), g("x y x^-1 y^-1"));
        assert!(GroupWord::commutator(&x, &x).is_identity());
        assert!(GroupWord::commutator(&x, &GroupWord::identity()).is_identity());
    }

    #[test]
    fn parse_format_round_trip() {
        let a = xy();
        for s in ["1", "x", "x y x^-1 y^-1", "x^3 y^-2"] {
            assert_eq!(g(s).format(&a), s);
        }
        assert!(GroupWord::parse(&a, "z").is_err());
        assert!(GroupWord::parse(&a, "x^q").is_err());
    }

    #[test]
    fn random_words_are_reduced_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let w = GroupWord::random(&mut rng, 2, 8);
            assert!(w.letter_length() <= 8);
            for pair in w.syllables().windows(2) {
                assert_ne!(pair[0].0, pair[1].0);
            }
            assert!(w.syllables().iter().all(|(_, e)| *e != 0));
            assert!(w.mul(&w.inv()).is_identity());
        }
    }
}
