use crate::error::{Error, Result};

use super::{cmp_lenalph, Letter, Word};

/// A word is Lyndon when it is nonempty and strictly smaller, alphabetically,
/// than each of its proper nonempty suffixes.
pub fn is_lyndon(w: &Word) -> bool {
    let s = w.letters();
    !s.is_empty() && (1..s.len()).all(|i| s < &s[i..])
}

/// All Lyndon words over `k` letters of length `1..=max_len`, sorted by the
/// length-alphabetical order.
///
/// Generated with the Fredricksen-Kessler-Maiorana successor rule, which
/// visits Lyndon words in alphabetical order.
pub fn lyndon_words(k: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if k == 0 || max_len == 0 {
        return out;
    }
    let top = (k - 1) as Letter;
    let mut w: Vec<Letter> = vec![0];
    while !w.is_empty() {
        out.push(Word::new(w.clone()));
        let period = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - period]);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    out.sort_by(cmp_lenalph);
    out
}

pub fn lyndon_words_of_len(k: usize, len: usize) -> Vec<Word> {
    lyndon_words(k, len)
        .into_iter()
        .filter(|w| w.len() == len)
        .collect()
}

fn mobius(mut n: u64) -> i128 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of Lyndon words of length `s` over `k` letters:
/// `(1/s) * sum_{d | s} mu(d) k^(s/d)`.
pub fn witt_number(k: u64, s: u64) -> u128 {
    assert!(s >= 1);
    let sum: i128 = (1..=s)
        .filter(|d| s % d == 0)
        .map(|d| mobius(d) * (k as i128).pow((s / d) as u32))
        .sum();
    (sum / s as i128) as u128
}

/// Standard factorization `w = uv` of a Lyndon word of length at least two:
/// `v` is the longest proper suffix of `w` that is Lyndon.
pub fn standard_factorization(w: &Word) -> Result<(Word, Word)> {
    if w.len() < 2 {
        return Err(Error::TooShort { len: w.len(), min: 2 });
    }
    if !is_lyndon(w) {
        return Err(Error::NotLyndon(format!("{:?}", w.letters())));
    }
    let split = (1..w.len())
        .find(|&i| is_lyndon(&w.suffix_from(i)))
        .expect("the last letter is a Lyndon suffix");
    Ok((w.prefix(split), w.suffix_from(split)))
}

/// Chen-Fox-Lyndon factorization `w = u_1^{k_1} ... u_t^{k_t}` with
/// `u_1 > ... > u_t` Lyndon, via Duval's algorithm.
pub fn cfl_factorization(w: &Word) -> Result<Vec<(Word, usize)>> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let s = w.letters();
    let mut factors: Vec<(Word, usize)> = Vec::new();
    let mut i = 0;
    while i < s.len() {
        let (mut j, mut k) = (i + 1, i);
        while j < s.len() && s[k] <= s[j] {
            if s[k] < s[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        let period = j - k;
        while i <= k {
            let factor = Word::from(&s[i..i + period]);
            match factors.last_mut() {
                Some((last, mult)) if *last == factor => *mult += 1,
                _ => factors.push((factor, 1)),
            }
            i += period;
        }
    }
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::super::{words_of_len, Alphabet};
    use super::*;

    fn w(s: &str) -> Word {
        Alphabet::standard(3).unwrap().parse_word(s).unwrap()
    }

    /// Nonempty, primitive and strictly smaller than every other rotation.
    fn lyndon_by_rotations(w: &Word) -> bool {
        let s = w.letters();
        let n = s.len();
        if n == 0 {
            return false;
        }
        let rot = |r: usize| -> Vec<Letter> { s[r..].iter().chain(&s[..r]).copied().collect() };
        (1..n).all(|r| s < rot(r).as_slice())
    }

    /// Greedy longest Lyndon prefix, repeated.
    fn cfl_oracle(w: &Word) -> Vec<Word> {
        let mut rest = w.letters().to_vec();
        let mut out = Vec::new();
        while !rest.is_empty() {
            let len = (1..=rest.len())
                .rev()
                .find(|&l| is_lyndon(&Word::from(&rest[..l])))
                .unwrap();
            out.push(Word::from(&rest[..len]));
            rest.drain(..len);
        }
        out
    }

    #[test]
    fn lyndon_predicate_examples() {
        assert!(is_lyndon(&w("aab")));
        assert!(!is_lyndon(&w("abab")));
        assert!(!is_lyndon(&Word::empty()));
    }

    #[test]
    fn lyndon_predicate_matches_rotation_characterization() {
        for k in 1..=3 {
            for len in 0..=6 {
                for u in words_of_len(k, len) {
                    assert_eq!(is_lyndon(&u), lyndon_by_rotations(&u), "{u:?}");
                }
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            lyndon_words(2, 3),
            vec![w("a"), w("b"), w("ab"), w("aab"), w("abb")]
        );
        assert_eq!(lyndon_words_of_len(2, 5).len(), 6);
        assert_eq!(lyndon_words(1, 3), vec![w("a")]);
    }

    #[test]
    fn enumeration_matches_filter_oracle_and_witt() {
        for k in 1..=3usize {
            for len in 1..=8usize {
                let got = lyndon_words_of_len(k, len);
                assert_eq!(got.len() as u128, witt_number(k as u64, len as u64));
                if len <= 5 {
                    let filtered: Vec<Word> =
                        words_of_len(k, len).filter(|u| is_lyndon(u)).collect();
                    assert_eq!(got, filtered);
                }
            }
        }
    }

    #[test]
    fn standard_factorization_examples() {
        assert_eq!(standard_factorization(&w("aabb")).unwrap(), (w("a"), w("abb")));
        assert_eq!(standard_factorization(&w("aabab")).unwrap(), (w("aab"), w("ab")));
        assert_eq!(standard_factorization(&w("ab")).unwrap(), (w("a"), w("b")));
        assert!(matches!(
            standard_factorization(&w("a")),
            Err(Error::TooShort { .. })
        ));
        assert!(matches!(
            standard_factorization(&w("ba")),
            Err(Error::NotLyndon(_))
        ));
    }

    #[test]
    fn standard_factorization_properties() {
        for u in lyndon_words(3, 7).into_iter().filter(|u| u.len() >= 2) {
            let (l, r) = standard_factorization(&u).unwrap();
            assert_eq!(l.concat(&r), u);
            assert!(is_lyndon(&l) && is_lyndon(&r));
            assert!(l < r);
            // r is also the alphabetically least proper Lyndon suffix
            let min = (1..u.len())
                .map(|i| u.suffix_from(i))
                .filter(is_lyndon)
                .min()
                .unwrap();
            assert_eq!(min, r);
        }
    }

    #[test]
    fn cfl_examples() {
        assert_eq!(cfl_factorization(&w("abab")).unwrap(), vec![(w("ab"), 2)]);
        assert_eq!(
            cfl_factorization(&w("baab")).unwrap(),
            vec![(w("b"), 1), (w("aab"), 1)]
        );
        assert_eq!(cfl_factorization(&w("a")).unwrap(), vec![(w("a"), 1)]);
        assert_eq!(cfl_factorization(&Word::empty()), Err(Error::EmptyWord));
    }

    #[test]
    fn cfl_properties() {
        for k in 1..=3 {
            for len in 1..=6 {
                for u in words_of_len(k, len) {
                    let f = cfl_factorization(&u).unwrap();
                    let flat: Vec<Word> = f
                        .iter()
                        .flat_map(|(v, m)| std::iter::repeat(v.clone()).take(*m))
                        .collect();
                    assert_eq!(flat, cfl_oracle(&u));
                    let rebuilt = f
                        .iter()
                        .fold(Word::empty(), |acc, (v, m)| acc.concat(&v.power(*m)));
                    assert_eq!(rebuilt, u);
                    for pair in f.windows(2) {
                        assert!(pair[0].0 > pair[1].0);
                    }
                    assert!(f.iter().all(|(v, m)| is_lyndon(v) && *m >= 1));
                    if is_lyndon(&u) {
                        assert_eq!(f, vec![(u.clone(), 1)]);
                    }
                }
            }
        }
    }
}
