use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ncpoly::{star_extend, NCPoly, StarOp};
use crate::ring::{factorial, Integers, Rationals};
use crate::words::{cfl_factorization, words_of_len, Alphabet, Word};

/// `Q_w = u_1^{sh k_1} sh ... sh u_t^{sh k_t} / (k_1! ... k_t!)` for the
/// Chen-Fox-Lyndon factorization `w = u_1^{k_1} ... u_t^{k_t}`.
///
/// Computed over the rationals; a non-integral coefficient is an error.
pub fn q_polynomial(w: &Word) -> Result<NCPoly<Integers>> {
    let factors = cfl_factorization(w)?;
    let mut acc = NCPoly::one(Rationals);
    let mut denom = BigInt::one();
    for (u, k) in &factors {
        let mono = NCPoly::monomial(Rationals, u.clone());
        for _ in 0..*k {
            acc = star_extend(StarOp::Shuffle, &acc, &mono)?;
        }
        denom *= factorial(*k);
    }
    let scale = BigRational::new(BigInt::one(), denom);
    let mut out = NCPoly::zero(Integers);
    for (v, c) in acc.terms() {
        let c = c * &scale;
        if !c.is_integer() {
            return Err(Error::NonIntegral(format!("coefficient {c} of Q_w")));
        }
        out.add_term(v.clone(), &c.to_integer());
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadfordFailure {
    pub word: String,
    pub entry: String,
    pub coeff: String,
    pub reason: String,
}

/// The change of basis from words of length `s` to the `Q_w`, with rows
/// indexed by `w` and columns by the support words, both alphabetical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadfordReport {
    pub k: usize,
    pub degree: usize,
    pub size: usize,
    /// Product of the diagonal entries; the determinant once triangularity
    /// holds.
    pub determinant: String,
    pub failure: Option<RadfordFailure>,
}

impl RadfordReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.determinant == "1"
    }
}

/// Checks that every `Q_w` with `|w| = s` has coefficient 1 on `w`, is
/// supported on words `v <= w` of length `s`, and has nonnegative
/// coefficients.
pub fn radford_basis_check(k: usize, s: usize) -> Result<RadfordReport> {
    if s == 0 {
        return Err(Error::EmptyWord);
    }
    let alphabet = Alphabet::standard(k)?;
    let mut determinant = BigInt::one();
    let mut failure = None;
    let mut size = 0;
    'outer: for w in words_of_len(k, s) {
        size += 1;
        let q = q_polynomial(&w)?;
        let diag = q.coeff(&w);
        determinant *= &diag;
        let fail = |entry: &Word, c: &BigInt, reason: &str| RadfordFailure {
            word: alphabet.format_word(&w),
            entry: alphabet.format_word(entry),
            coeff: c.to_string(),
            reason: reason.to_string(),
        };
        if !diag.is_one() {
            failure = Some(fail(&w, &diag, "diagonal entry is not 1"));
            break;
        }
        for (v, c) in q.terms() {
            if v.len() != s {
                failure = Some(fail(v, c, "support word has the wrong length"));
                break 'outer;
            }
            if v > &w {
                failure = Some(fail(v, c, "support word exceeds w"));
                break 'outer;
            }
            if c.sign() == Sign::Minus {
                failure = Some(fail(v, c, "negative coefficient"));
                break 'outer;
            }
        }
    }
    Ok(RadfordReport {
        k,
        degree: s,
        size,
        determinant: determinant.to_string(),
        failure,
    })
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;

    use super::*;
    use crate::words::{is_lyndon, words_up_to};

    fn ab() -> Alphabet {
        Alphabet::standard(2).unwrap()
    }

    #[test]
    fn examples() {
        let a = ab();
        let q = |s: &str| q_polynomial(&a.parse_word(s).unwrap()).unwrap().format(&a);
        assert_eq!(q("aa"), "aa");
        assert_eq!(q("ba"), "ab + ba");
        assert_eq!(q("ab"), "ab");
        assert_eq!(q("bab"), "2 abb + bab");
        assert!(q_polynomial(&Word::empty()).is_err());
    }

    #[test]
    fn lyndon_words_have_unit_leading_term() {
        for w in words_up_to(2, 5).filter(is_lyndon) {
            let q = q_polynomial(&w).unwrap();
            assert_eq!(q.coeff(&w), BigInt::one());
            assert!(q.support().all(|v| v.len() == w.len() && v <= &w));
        }
    }

    /// Fraction-free elimination, as an independent determinant.
    fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
        let n = m.len();
        let mut prev = BigInt::one();
        let mut sign = BigInt::one();
        for i in 0..n {
            if m[i][i].is_zero() {
                match (i + 1..n).find(|&r| !m[r][i].is_zero()) {
                    Some(r) => {
                        m.swap(i, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for r in i + 1..n {
                for c in i + 1..n {
                    m[r][c] = (&m[r][c] * &m[i][i] - &m[r][i] * &m[i][c]) / &prev;
                }
                m[r][i] = BigInt::zero();
            }
            prev = m[i][i].clone();
        }
        sign * prev
    }

    #[test]
    fn basis_check_and_determinant() {
        for s in 1..=5 {
            let r = radford_basis_check(2, s).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.size, 1 << s);
        }
        for s in 1..=4 {
            assert!(radford_basis_check(1, s).unwrap().passed());
        }
        assert!(radford_basis_check(3, 3).unwrap().passed());
        for s in 1..=4 {
            let words: Vec<Word> = words_of_len(2, s).collect();
            let m: Vec<Vec<BigInt>> = words
                .iter()
                .map(|w| {
                    let q = q_polynomial(w).unwrap();
                    words.iter().map(|v| q.coeff(v)).collect()
                })
                .collect();
            assert_eq!(bareiss(m), BigInt::one());
        }
    }
}
