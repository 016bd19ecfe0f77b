use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ncpoly::TruncatedSeries;
use crate::ring::{binomial, Integers, Ring};
use crate::words::{cmp_lenalph, is_lyndon, standard_factorization, Word};

use super::GroupWord;

/// Lie element of a Lyndon word: `x` for a letter, otherwise the commutator
/// of the Lie elements of its standard factorization.
pub fn lie_element(w: &Word) -> Result<GroupWord> {
    if !is_lyndon(w) {
        return Err(Error::NotLyndon(format!("{:?}", w.letters())));
    }
    Ok(lie_rec(w))
}

fn lie_rec(w: &Word) -> GroupWord {
    if w.len() == 1 {
        return GroupWord::generator(w.letters()[0]);
    }
    let (u, v) = standard_factorization(w).expect("Lyndon of length >= 2");
    GroupWord::commutator(&lie_rec(&u), &lie_rec(&v))
}

/// Truncated Magnus expansion `x -> 1 + x`, extended multiplicatively.
///
/// Each syllable `x^e` contributes the factor `(1 + x)^e = sum_m C(e, m) x^m`,
/// applied as a one-letter right multiplication.
pub fn magnus_expand<R: Ring>(
    g: &GroupWord,
    k: usize,
    max_deg: usize,
    ring: &R,
) -> Result<TruncatedSeries<R>> {
    if g.min_alphabet_size() > k {
        return Err(Error::LetterOutOfRange {
            index: g.min_alphabet_size() - 1,
            size: k,
        });
    }
    let mut acc = TruncatedSeries::one(ring.clone(), k, max_deg);
    let mut cache: Vec<(i64, Vec<R::Elem>)> = Vec::new();
    for &(x, e) in g.syllables() {
        let weights = match cache.iter().find(|(f, _)| *f == e) {
            Some((_, w)) => w.clone(),
            None => {
                let w: Vec<R::Elem> = (0..=max_deg)
                    .map(|m| ring.from_bigint(&binomial(e, m)))
                    .collect();
                cache.push((e, w.clone()));
                w
            }
        };
        acc = acc.mul_letter_series(x, &weights);
    }
    Ok(acc)
}

/// Magnus coefficient `eps_w(g)`: the coefficient of `w` in the expansion of
/// `g` over `ring`, for an alphabet of `k` letters.
pub fn eps<R: Ring>(ring: &R, k: usize, w: &Word, g: &GroupWord) -> Result<R::Elem> {
    let s = magnus_expand(g, k, w.len(), ring)?;
    s.coeff(w).cloned()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularityFailure {
    pub word: Word,
    pub coeff: String,
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularityReport {
    pub word: Word,
    pub max_deg: usize,
    pub failure: Option<TriangularityFailure>,
}

impl TriangularityReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `Lambda(tau_w) = 1 + w + o(w)` over the integers up to `max_deg`:
/// every support word other than `1` and `w` must come strictly after `w` in
/// the length-alphabetical order and use only letters of `w`.
pub fn check_triangularity(k: usize, w: &Word, max_deg: usize) -> Result<TriangularityReport> {
    if w.len() > max_deg {
        return Err(Error::BeyondTruncation {
            len: w.len(),
            max_deg,
        });
    }
    let tau = lie_element(w)?;
    let s = magnus_expand(&tau, k, max_deg, &Integers)?;
    let fail = |word: Word, c: &BigInt, reason| TriangularityFailure {
        word,
        coeff: c.to_string(),
        reason,
    };
    let mut failure = None;
    let one = BigInt::from(1);
    if *s.constant() != one {
        failure = Some(fail(Word::empty(), s.constant(), "constant term is not 1"));
    } else if *s.coeff(w)? != one {
        failure = Some(fail(w.clone(), s.coeff(w)?, "leading coefficient is not 1"));
    } else {
        for (v, c) in s.nonzero_terms() {
            if v.is_empty() || v == *w {
                continue;
            }
            if cmp_lenalph(w, &v) != std::cmp::Ordering::Less {
                failure = Some(fail(v, c, "support word does not follow w"));
                break;
            }
            if !v.letters_within(w) {
                failure = Some(fail(v, c, "support word uses a letter outside w"));
                break;
            }
        }
    }
    Ok(TriangularityReport {
        word: w.clone(),
        max_deg,
        failure,
    })
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::ncpoly::{infiltration, NCPoly};
    use crate::ring::IntegersMod;
    use crate::words::{lyndon_words, words_up_to, Alphabet};

    fn xy() -> Alphabet {
        Alphabet::new(["x", "y"]).unwrap()
    }

    fn g(s: &str) -> GroupWord {
        GroupWord::parse(&xy(), s).unwrap()
    }

    fn w(s: &str) -> Word {
        xy().parse_word(s).unwrap()
    }

    fn expand(s: &str, deg: usize) -> String {
        magnus_expand(&g(s), 2, deg, &Integers)
            .unwrap()
            .to_poly()
            .format(&xy())
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(expand("x", 2), "1 + x");
        assert_eq!(expand("x^-1", 3), "1 - x + xx - xxx");
        assert_eq!(expand("x y x^-1 y^-1", 2), "1 + xy - yx");
        assert_eq!(expand("1", 3), "1");
    }

    #[test]
    fn eps_examples() {
        let c = g("x y x^-1 y^-1");
        assert_eq!(eps(&Integers, 2, &w("x"), &g("x")).unwrap(), BigInt::from(1));
        assert_eq!(eps(&Integers, 2, &w("xy"), &c).unwrap(), BigInt::from(1));
        assert_eq!(eps(&Integers, 2, &w("yx"), &c).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn lie_element_examples() {
        assert_eq!(lie_element(&w("x")).unwrap(), g("x"));
        assert_eq!(lie_element(&w("xy")).unwrap(), g("x y x^-1 y^-1"));
        let x = g("x");
        let inner = GroupWord::commutator(&x, &g("y"));
        assert_eq!(
            lie_element(&w("xxy")).unwrap(),
            GroupWord::commutator(&x, &inner)
        );
        assert!(lie_element(&w("yx")).is_err());
    }

    #[test]
    fn expansion_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let a = GroupWord::random(&mut rng, 2, 8);
            let b = GroupWord::random(&mut rng, 2, 8);
            let lhs = magnus_expand(&a.mul(&b), 2, 4, &Integers).unwrap();
            let rhs = magnus_expand(&a, 2, 4, &Integers)
                .unwrap()
                .concat_mul(&magnus_expand(&b, 2, 4, &Integers).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn inverse_generator_matches_series_inverse() {
        let one_plus_x = TruncatedSeries::one_plus_letter(Integers, 2, 5, 0);
        assert_eq!(
            magnus_expand(&g("x^-1"), 2, 5, &Integers).unwrap(),
            one_plus_x.invert_unit().unwrap()
        );
    }

    #[test]
    fn cfl_compatibility_with_infiltration() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let words: Vec<Word> = words_up_to(2, 3).filter(|u| !u.is_empty()).collect();
        for _ in 0..40 {
            let sigma = GroupWord::random(&mut rng, 2, 8);
            let lam = magnus_expand(&sigma, 2, 4, &Integers).unwrap();
            for u in &words {
                for v in &words {
                    if u.len() + v.len() > 4 {
                        continue;
                    }
                    let lhs = lam.coeff(u).unwrap() * lam.coeff(v).unwrap();
                    let rhs = lam.scalar_product(&infiltration(&Integers, u, v)).unwrap();
                    assert_eq!(lhs, rhs, "{u:?} {v:?} at {sigma:?}");
                }
            }
        }
    }

    #[test]
    fn single_letter_infiltration_is_forced_by_compatibility() {
        // eps_a(x)^2 = (Lambda(x), a + 2aa) rules out 2a + 2aa
        let a = w("x");
        for e in -4i64..=4 {
            let lam = magnus_expand(&GroupWord::generator_power(0, e), 2, 2, &Integers).unwrap();
            let sq = lam.coeff(&a).unwrap() * lam.coeff(&a).unwrap();
            let wrong = NCPoly::from_terms(
                Integers,
                [(a.clone(), BigInt::from(2)), (w("xx"), BigInt::from(2))],
            );
            assert_eq!(sq, lam.scalar_product(&infiltration(&Integers, &a, &a)).unwrap());
            if e != 0 {
                assert_ne!(sq, lam.scalar_product(&wrong).unwrap());
            }
        }
    }

    #[test]
    fn modular_expansion_is_reduction_of_integer_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = IntegersMod::new(125).unwrap();
        for _ in 0..30 {
            let sigma = GroupWord::random(&mut rng, 3, 8).pow(7);
            let int = magnus_expand(&sigma, 3, 4, &Integers).unwrap();
            let md = magnus_expand(&sigma, 3, 4, &r).unwrap();
            assert_eq!(int.map_ring(r, |c| r.from_bigint(c)), md);
        }
    }

    #[test]
    fn lie_elements_vanish_below_their_length() {
        for u in lyndon_words(2, 5) {
            let s = magnus_expand(&lie_element(&u).unwrap(), 2, u.len(), &Integers).unwrap();
            for (v, _) in s.nonzero_terms() {
                assert!(v.is_empty() || v.len() >= u.len(), "{u:?}: {v:?}");
            }
        }
    }

    #[test]
    fn triangularity_examples() {
        assert!(check_triangularity(2, &w("xy"), 4).unwrap().passed());
        assert!(check_triangularity(2, &w("x"), 2).unwrap().passed());
        assert!(check_triangularity(2, &w("xxy"), 4).unwrap().passed());
        assert!(check_triangularity(2, &w("yx"), 4).is_err());
    }
}
