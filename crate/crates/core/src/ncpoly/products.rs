use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ring::Ring;
use crate::words::Word;

use super::NCPoly;

/// The two word products of interest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StarOp {
    Shuffle,
    Infiltration,
}

impl StarOp {
    pub fn apply<R: Ring>(self, ring: &R, u: &Word, v: &Word) -> NCPoly<R> {
        match self {
            StarOp::Shuffle => shuffle(ring, u, v),
            StarOp::Infiltration => infiltration(ring, u, v),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StarOp::Shuffle => "shuffle",
            StarOp::Infiltration => "infiltration",
        }
    }
}

/// Fills the table `T[i][j] = u[..i] * v[..j]` using
/// `T[i][j] = T[i-1][j] u_i + T[i][j-1] v_j (+ [u_i = v_j] T[i-1][j-1] u_i)`,
/// the bracketed term being present only for the infiltration product.
fn product_table<R: Ring>(ring: &R, u: &Word, v: &Word, merge: bool) -> NCPoly<R> {
    let (us, vs) = (u.letters(), v.letters());
    let mut prev: Vec<NCPoly<R>> = Vec::with_capacity(vs.len() + 1);
    prev.push(NCPoly::one(ring.clone()));
    for &y in vs {
        let next = prev.last().unwrap().append_letter(y);
        prev.push(next);
    }
    for &x in us {
        let mut row: Vec<NCPoly<R>> = Vec::with_capacity(vs.len() + 1);
        row.push(prev[0].append_letter(x));
        for (j, &y) in vs.iter().enumerate() {
            let mut cell = prev[j + 1].append_letter(x);
            let left = row[j].append_letter(y);
            cell = cell.add(&left).expect("same ring");
            if merge && x == y {
                cell = cell.add(&prev[j].append_letter(x)).expect("same ring");
            }
            row.push(cell);
        }
        prev = row;
    }
    prev.pop().unwrap()
}

/// Shuffle product: the sum of all order-preserving interleavings of `u`
/// and `v`.
pub fn shuffle<R: Ring>(ring: &R, u: &Word, v: &Word) -> NCPoly<R> {
    product_table(ring, u, v, false)
}

/// Infiltration product; its part of degree `|u| + |v|` is the shuffle.
///
/// The coefficient of `w` counts the pairs of position sets `(I, J)` with
/// `I ∪ J` covering `w`, `w|I = u` and `w|J = v`.
pub fn infiltration<R: Ring>(ring: &R, u: &Word, v: &Word) -> NCPoly<R> {
    product_table(ring, u, v, true)
}

/// Bilinear extension `f * g = sum f_u g_v (u * v)`.
pub fn star_extend<R: Ring>(op: StarOp, f: &NCPoly<R>, g: &NCPoly<R>) -> Result<NCPoly<R>> {
    f.ring().same_ring(g.ring())?;
    let ring = f.ring();
    let mut out = NCPoly::zero(ring.clone());
    for (u, a) in f.terms() {
        for (v, b) in g.terms() {
            let ab = ring.mul(a, b);
            if ring.is_zero(&ab) {
                continue;
            }
            for (w, c) in op.apply(ring, u, v).terms() {
                out.add_term(w.clone(), &ring.mul(&ab, c));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use proptest::prelude::*;

    use super::*;
    use crate::ring::Integers;
    use crate::words::{words_of_len, words_up_to, Alphabet};

    fn w(s: &str) -> Word {
        Alphabet::new(["a", "b", "x", "y"]).unwrap().parse_word(s).unwrap()
    }

    fn p(terms: &[(&str, i64)]) -> NCPoly<Integers> {
        NCPoly::from_terms(Integers, terms.iter().map(|(s, c)| (w(s), BigInt::from(*c))))
    }

    /// Enumerates the position subsets taken by `u` in the interleaving.
    fn shuffle_oracle(u: &Word, v: &Word) -> NCPoly<Integers> {
        let n = u.len() + v.len();
        let mut out = NCPoly::zero(Integers);
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != u.len() {
                continue;
            }
            let (mut iu, mut iv) = (0, 0);
            let mut letters = Vec::with_capacity(n);
            for pos in 0..n {
                if mask >> pos & 1 == 1 {
                    letters.push(u.letters()[iu]);
                    iu += 1;
                } else {
                    letters.push(v.letters()[iv]);
                    iv += 1;
                }
            }
            out.add_term(Word::new(letters), &BigInt::from(1));
        }
        out
    }

    /// Counts covering pairs of position sets for every candidate word.
    fn infiltration_oracle(u: &Word, v: &Word, k: usize) -> NCPoly<Integers> {
        let sub = |word: &Word, mask: u32| -> Word {
            Word::new(
                (0..word.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| word.letters()[i])
                    .collect(),
            )
        };
        let mut out = NCPoly::zero(Integers);
        let lo = u.len().max(v.len());
        for len in lo..=u.len() + v.len() {
            for cand in words_of_len(k, len) {
                let full = (1u32 << len) - 1;
                let mut count = 0i64;
                for i in 0..=full {
                    if i.count_ones() as usize != u.len() || sub(&cand, i) != *u {
                        continue;
                    }
                    for j in 0..=full {
                        if i | j == full
                            && j.count_ones() as usize == v.len()
                            && sub(&cand, j) == *v
                        {
                            count += 1;
                        }
                    }
                }
                out.add_term(cand, &BigInt::from(count));
            }
        }
        out
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(shuffle(&Integers, &w("x"), &w("y")), p(&[("xy", 1), ("yx", 1)]));
        assert_eq!(
            shuffle(&Integers, &w("ab"), &w("ab")),
            p(&[("aabb", 4), ("abab", 2)])
        );
        assert_eq!(shuffle(&Integers, &w("a"), &w("a")), p(&[("aa", 2)]));
        assert_eq!(shuffle(&Integers, &w("ab"), &Word::empty()), p(&[("ab", 1)]));
    }

    #[test]
    fn infiltration_examples() {
        assert_eq!(
            infiltration(&Integers, &w("a"), &w("a")),
            p(&[("a", 1), ("aa", 2)])
        );
        assert_eq!(
            infiltration(&Integers, &w("ab"), &w("ab")),
            p(&[("ab", 1), ("aab", 2), ("abb", 2), ("abab", 2), ("aabb", 4)])
        );
        assert_eq!(
            infiltration(&Integers, &w("x"), &w("y")),
            p(&[("xy", 1), ("yx", 1)])
        );
        assert_eq!(
            infiltration(&Integers, &w("ab"), &w("ab")).homogeneous_part(4),
            p(&[("abab", 2), ("aabb", 4)])
        );
    }

    #[test]
    fn products_match_enumeration_oracles() {
        let words: Vec<Word> = words_up_to(2, 3).collect();
        for u in &words {
            for v in &words {
                if u.len() + v.len() > 6 {
                    continue;
                }
                let sh = shuffle(&Integers, u, v);
                assert_eq!(sh, shuffle_oracle(u, v), "{u:?} sh {v:?}");
                let inf = infiltration(&Integers, u, v);
                let total: BigInt = sh.terms().map(|(_, c)| c.clone()).sum();
                assert_eq!(
                    total,
                    crate::ring::binomial((u.len() + v.len()) as i64, u.len())
                );
                assert_eq!(inf.homogeneous_part(u.len() + v.len()), sh);
                if !u.is_empty() && !v.is_empty() {
                    assert_eq!(inf, infiltration_oracle(u, v, 2), "{u:?} inf {v:?}");
                    for (x, _) in inf.terms() {
                        assert!(x.len() >= 1 && x.len() <= u.len() + v.len());
                        assert!(x.letters().iter().all(|l| u.letters().contains(l)
                            || v.letters().contains(l)));
                    }
                }
            }
        }
    }

    #[test]
    fn unit_and_symmetric_sum() {
        let f = p(&[("ab", 2), ("b", -1)]);
        for op in [StarOp::Shuffle, StarOp::Infiltration] {
            assert_eq!(star_extend(op, &f, &NCPoly::one(Integers)).unwrap(), f);
        }
        let x = p(&[("x", 1)]);
        let y = p(&[("y", 1)]);
        let lhs = star_extend(StarOp::Shuffle, &x, &y)
            .unwrap()
            .add(&star_extend(StarOp::Shuffle, &y, &x).unwrap())
            .unwrap();
        assert_eq!(lhs, p(&[("xy", 2), ("yx", 2)]));
    }

    fn arb_poly() -> impl Strategy<Value = NCPoly<Integers>> {
        proptest::collection::vec((proptest::collection::vec(0u8..2, 0..3), -3i64..=3), 0..4)
            .prop_map(|terms| {
                NCPoly::from_terms(
                    Integers,
                    terms.into_iter().map(|(l, c)| (Word::new(l), BigInt::from(c))),
                )
            })
    }

    fn arb_op() -> impl Strategy<Value = StarOp> {
        prop_oneof![Just(StarOp::Shuffle), Just(StarOp::Infiltration)]
    }

    proptest! {
        #[test]
        fn star_is_commutative(op in arb_op(), f in arb_poly(), g in arb_poly()) {
            prop_assert_eq!(star_extend(op, &f, &g).unwrap(), star_extend(op, &g, &f).unwrap());
        }

        #[test]
        fn star_is_associative(op in arb_op(), f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            let l = star_extend(op, &star_extend(op, &f, &g).unwrap(), &h).unwrap();
            let r = star_extend(op, &f, &star_extend(op, &g, &h).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn star_is_bilinear(op in arb_op(), f in arb_poly(), g in arb_poly(), h in arb_poly(), c in -3i64..=3) {
            let c = BigInt::from(c);
            let lhs = star_extend(op, &f.scale(&c).add(&g).unwrap(), &h).unwrap();
            let rhs = star_extend(op, &f, &h).unwrap().scale(&c)
                .add(&star_extend(op, &g, &h).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
