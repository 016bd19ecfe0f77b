use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::magnus::{eps, magnus_rep_product, GroupWord, UniTriMatrix};
use crate::ncpoly::{StarOp, TruncatedSeries};
use crate::ring::{Integers, IntegersMod};
use crate::words::{cmp_lenalph, standard_factorization, words_of_len, words_up_to, Word};

use super::matrix::FundamentalMatrix;
use super::spec::FormationSpec;

pub const DEFAULT_CONJUGATORS: usize = 8;
pub const DEFAULT_CONJUGATOR_LEN: usize = 4;

/// `count` seeded random group words of letter length at most `max_len`.
pub fn sample_conjugators(k: usize, count: usize, max_len: usize, seed: u64) -> Vec<GroupWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| GroupWord::random(&mut rng, k, max_len)).collect()
}

/// A formation together with the expansions `Lambda(sigma_w)`, `w` in `L`,
/// truncated at degree `n` and reduced modulo `p^J`.
#[derive(Debug, Clone)]
pub struct Formation {
    spec: FormationSpec,
    ring: IntegersMod,
    sigma: Vec<TruncatedSeries<IntegersMod>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientViolation {
    pub clause: char,
    pub word: String,
    pub generator: String,
    pub value: u64,
}

/// Entrywise check of the four properties of `eps_w(sigma_{w'})` for every
/// `w'` in `L` and every nonempty `w` of length at most `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientReport {
    pub checked: usize,
    pub violations: Vec<CoefficientViolation>,
}

impl CoefficientReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageFailure {
    pub generator: String,
    pub conjugator: Option<String>,
    pub reason: String,
    pub rows: Vec<Vec<u64>>,
}

/// Images of the generators `sigma_{w'}` and sampled conjugates under the
/// Magnus representation of `w` modulo `p^{j(i)+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageReport {
    pub word: String,
    pub modulus: u64,
    pub generators_checked: usize,
    pub conjugates_checked: usize,
    /// For `w` in `L`: whether `rho(sigma_w) = Id + p^{j(i)} E_{1,i+1}`.
    pub generator_image: Option<bool>,
    pub failure: Option<ImageFailure>,
}

impl ImageReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.generator_image != Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShuffleRelationFailure {
    pub generator: String,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShuffleRelationReport {
    pub u: String,
    pub v: String,
    pub star: StarOp,
    pub degree: usize,
    /// The degree-`s` part of `u * v`, with integer coefficients.
    pub relation: String,
    pub generators_checked: usize,
    pub failure: Option<ShuffleRelationFailure>,
}

impl ShuffleRelationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// The matrix `[(sigma_{w'}, rho0_w)]` computed through the Magnus
/// representations, compared with the fundamental matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingReport {
    /// Row `w`, column `w'`.
    pub rows: Vec<Vec<u64>>,
    pub equals_transpose: bool,
    pub rank: usize,
    pub size: usize,
}

impl PairingReport {
    pub fn passed(&self) -> bool {
        self.equals_transpose && self.rank == self.size
    }
}

impl Formation {
    pub fn new(spec: FormationSpec, exec: Exec) -> Result<Self> {
        let ring = IntegersMod::new(spec.working_modulus())?;
        let (k, n) = (spec.k(), spec.n());
        let mut memo: HashMap<Word, SeriesPair> = HashMap::new();
        for w in spec.words() {
            lie_series(&ring, k, n, w, &mut memo)?;
        }
        let sigma = exec.map(spec.words(), |w| memo[w].0.pow(spec.e(w.len())));
        Ok(Formation { spec, ring, sigma })
    }

    pub fn spec(&self) -> &FormationSpec {
        &self.spec
    }

    /// `Z/p^J`.
    pub fn ring(&self) -> &IntegersMod {
        &self.ring
    }

    /// `Lambda(sigma_w)` for the `idx`-th word of `L`.
    pub fn sigma_series(&self, idx: usize) -> &TruncatedSeries<IntegersMod> {
        &self.sigma[idx]
    }

    /// `eps_w(sigma_{w'})` modulo `p^J`, as a canonical representative.
    pub fn sigma_eps(&self, w: &Word, idx: usize) -> Result<u64> {
        Ok(*self.sigma[idx].coeff(w)?)
    }

    fn words_label(&self, w: &Word) -> String {
        self.spec.alphabet().display_word(w)
    }

    /// `pi_i` followed by the identification `e(i) Z/p^{j(i)+1} = Z/p`.
    fn normalize(&self, w: &Word, value: u64, generator: &str) -> Result<u64> {
        let i = w.len();
        let p = self.spec.p();
        let d = p.pow(self.spec.j(i));
        if value % d != 0 {
            return Err(Error::Divisibility {
                word: self.words_label(w),
                generator: generator.to_string(),
                value: value.to_string(),
                divisor: d.to_string(),
            });
        }
        Ok((value / d) % p)
    }

    /// `<w, w'>` for the `idx`-th word `w'` of `L` and any word `w` of length
    /// `1..=n`.
    pub fn pairing(&self, w: &Word, idx: usize) -> Result<u64> {
        let w_prime = &self.spec.words()[idx];
        let v = self.sigma_eps(w, idx)?;
        self.normalize(w, v, &self.words_label(w_prime))
    }

    pub fn fundamental_matrix(&self, exec: Exec) -> Result<FundamentalMatrix> {
        let words = self.spec.words();
        let rows = exec
            .map_range(words.len(), |r| {
                words
                    .iter()
                    .map(|w| self.pairing(w, r))
                    .collect::<Result<Vec<u64>>>()
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        FundamentalMatrix::new(
            self.spec.alphabet().clone(),
            words.to_vec(),
            self.spec.p(),
            self.spec.j_values().to_vec(),
            rows,
        )
    }

    pub fn coefficient_check(&self, exec: Exec) -> Result<CoefficientReport> {
        let spec = &self.spec;
        let all: Vec<Word> = words_up_to(spec.k(), spec.n()).filter(|w| !w.is_empty()).collect();
        let modulus = spec.working_modulus();
        let per_generator = exec.map_range(spec.words().len(), |idx| -> Result<Vec<CoefficientViolation>> {
            let w_prime = &spec.words()[idx];
            let mut out = Vec::new();
            for w in &all {
                let v = self.sigma_eps(w, idx)?;
                let i = w.len();
                let mut flag = |clause| {
                    out.push(CoefficientViolation {
                        clause,
                        word: self.words_label(w),
                        generator: self.words_label(w_prime),
                        value: v,
                    })
                };
                if cmp_lenalph(w, w_prime).is_lt() && v != 0 {
                    flag('a');
                }
                if w == w_prime && v != spec.e(i) % modulus {
                    flag('b');
                }
                if v % spec.e(i) != 0 {
                    flag('c');
                }
                if !w.letters_within(w_prime) && v != 0 {
                    flag('d');
                }
            }
            Ok(out)
        });
        let mut violations = Vec::new();
        for r in per_generator {
            violations.extend(r?);
        }
        Ok(CoefficientReport {
            checked: all.len() * spec.words().len(),
            violations,
        })
    }

    fn require_index(&self, w: &Word) -> Result<()> {
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        self.spec.alphabet().check(w)?;
        if !self.spec.in_index_set(w.len()) {
            return Err(Error::DegreeNotInIe(w.len()));
        }
        Ok(())
    }

    /// `rho0_w(g)`: `eps_w(g)` modulo `p^{j(i)+1}`, divided by `p^{j(i)}`.
    /// The coefficient is recomputed from `g` itself.
    pub fn rho0_eval(&self, w: &Word, g: &GroupWord) -> Result<u64> {
        self.require_index(w)?;
        g.check(self.spec.alphabet())?;
        let ring = IntegersMod::new(self.spec.residue_modulus(w.len()))?;
        let v = eps(&ring, self.spec.k(), w, g)?;
        self.normalize(w, v, &g.format(self.spec.alphabet()))
    }

    /// `rho0_w(sigma_{w'})` from the cached expansion.
    pub fn rho0_sigma(&self, w: &Word, idx: usize) -> Result<u64> {
        self.require_index(w)?;
        self.pairing(w, idx)
    }

    /// `rho_w(sigma_{w'})` modulo `modulus`, built from the Lie recursion
    /// on matrices.
    fn rep_sigma(&self, w: &Word, idx: usize, modulus: u64, memo: &mut HashMap<Word, UniTriMatrix>) -> Result<UniTriMatrix> {
        let w_prime = &self.spec.words()[idx];
        let tau = lie_rep(w, w_prime, modulus, memo)?;
        Ok(tau.pow(self.spec.e(w_prime.len())))
    }

    pub fn image_check(&self, w: &Word, conjugators: &[GroupWord]) -> Result<ImageReport> {
        self.require_index(w)?;
        let i = w.len();
        let modulus = self.spec.residue_modulus(i);
        let d = self.spec.p().pow(self.spec.j(i));
        let conj: Vec<(UniTriMatrix, UniTriMatrix)> = conjugators
            .iter()
            .map(|l| magnus_rep_product(w, l, modulus).map(|m| (m.inv(), m)))
            .collect::<Result<_>>()?;
        let mut memo = HashMap::new();
        let mut report = ImageReport {
            word: self.words_label(w),
            modulus,
            generators_checked: 0,
            conjugates_checked: 0,
            generator_image: None,
            failure: None,
        };
        for (idx, w_prime) in self.spec.words().iter().enumerate() {
            let m = self.rep_sigma(w, idx, modulus, &mut memo)?;
            report.generators_checked += 1;
            let fail = |conjugator: Option<&GroupWord>, reason: &str, mat: &UniTriMatrix| ImageFailure {
                generator: self.words_label(w_prime),
                conjugator: conjugator.map(|c| c.format(self.spec.alphabet())),
                reason: reason.to_string(),
                rows: mat.rows(),
            };
            if !m.in_corner_subgroup(d) {
                report.failure = Some(fail(None, "image outside the corner subgroup", &m));
                return Ok(report);
            }
            if w == w_prime {
                let mut expected = UniTriMatrix::identity(i + 1, modulus);
                expected.set(0, i, d);
                report.generator_image = Some(m == expected);
            }
            for (lambda, (l_inv, l)) in conjugators.iter().zip(&conj) {
                let c = l.mul(&m).mul(l_inv);
                report.conjugates_checked += 1;
                if !c.in_corner_subgroup(d) {
                    report.failure = Some(fail(Some(lambda), "conjugate image outside the corner subgroup", &c));
                    return Ok(report);
                }
                if c.get(0, i) != m.get(0, i) {
                    report.failure = Some(fail(Some(lambda), "conjugation changes rho0", &c));
                    return Ok(report);
                }
            }
        }
        Ok(report)
    }

    /// Conjugation invariance of `rho0_w` evaluated from group words:
    /// `rho0_w(l sigma_{w'} l^-1) = rho0_w(sigma_{w'})` for every `w'` and
    /// every sampled `l`. Returns the first offending `(w', l)`.
    pub fn conjugation_check(&self, w: &Word, conjugators: &[GroupWord]) -> Result<Option<(String, String)>> {
        self.require_index(w)?;
        for (idx, w_prime) in self.spec.words().iter().enumerate() {
            let base = self.rho0_sigma(w, idx)?;
            let sigma = self.spec.sigma(w_prime)?;
            if self.rho0_eval(w, &sigma)? != base {
                return Ok(Some((self.words_label(w_prime), "1".into())));
            }
            for l in conjugators {
                if self.rho0_eval(w, &sigma.conjugate_by(l))? != base {
                    let label = l.format(self.spec.alphabet());
                    return Ok(Some((self.words_label(w_prime), label)));
                }
            }
        }
        Ok(None)
    }

    pub fn shuffle_relation_check(&self, u: &Word, v: &Word, star: StarOp) -> Result<ShuffleRelationReport> {
        if u.is_empty() || v.is_empty() {
            return Err(Error::EmptyWord);
        }
        let a = self.spec.alphabet();
        a.check(u)?;
        a.check(v)?;
        let s = u.len() + v.len();
        if !self.spec.in_index_set(s) {
            return Err(Error::DegreeNotInIe(s));
        }
        let part = star.apply(&Integers, u, v).homogeneous_part(s);
        let p = self.spec.p();
        let coeffs: Vec<(Word, u64)> = part
            .terms()
            .map(|(w, c)| {
                let r = c.mod_floor(&BigInt::from(p));
                (w.clone(), r.to_u64().expect("residue below p"))
            })
            .filter(|(_, c)| *c != 0)
            .collect();
        let mut report = ShuffleRelationReport {
            u: a.display_word(u),
            v: a.display_word(v),
            star,
            degree: s,
            relation: part.format(a),
            generators_checked: 0,
            failure: None,
        };
        for (idx, w_prime) in self.spec.words().iter().enumerate() {
            let mut acc: u128 = 0;
            for (w, c) in &coeffs {
                acc += *c as u128 * self.rho0_sigma(w, idx)? as u128;
            }
            report.generators_checked += 1;
            let value = (acc % p as u128) as u64;
            if value != 0 {
                report.failure = Some(ShuffleRelationFailure {
                    generator: self.words_label(w_prime),
                    value,
                });
                break;
            }
        }
        Ok(report)
    }

    /// All nonempty `(u, v)` with `|u| + |v|` in `I_e` and at most `max_s`.
    pub fn shuffle_relation_pairs(&self, max_s: usize) -> Vec<(Word, Word)> {
        let k = self.spec.k();
        let mut out = Vec::new();
        for s in self.spec.index_set() {
            if s < 2 || s > max_s {
                continue;
            }
            for a in 1..s {
                for u in words_of_len(k, a) {
                    for v in words_of_len(k, s - a) {
                        out.push((u.clone(), v));
                    }
                }
            }
        }
        out
    }

    pub fn pairing_check(&self, fm: &FundamentalMatrix, exec: Exec) -> Result<PairingReport> {
        let words = self.spec.words();
        for w in words {
            self.require_index(w)?;
        }
        let rows = exec
            .map(words, |w| -> Result<Vec<u64>> {
                let i = w.len();
                let modulus = self.spec.residue_modulus(i);
                let mut memo = HashMap::new();
                (0..words.len())
                    .map(|idx| {
                        let m = self.rep_sigma(w, idx, modulus, &mut memo)?;
                        self.normalize(w, m.get(0, i), &self.words_label(&words[idx]))
                    })
                    .collect()
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let rank = crate::indec::FpMatrix::from_rows(self.spec.p(), rows.clone())?.rank();
        Ok(PairingReport {
            equals_transpose: rows == fm.transposed_rows(),
            size: words.len(),
            rows,
            rank,
        })
    }

    /// Compares the fundamental matrix of the formation restricted to
    /// `subset` with the corresponding block of this one.
    pub fn functoriality_check(&self, subset: &[Word], exec: Exec) -> Result<bool> {
        let small = Formation::new(self.spec.with_words(subset.to_vec())?, exec)?;
        let block = self
            .fundamental_matrix(exec)?
            .sub_block(small.spec.words())
            .ok_or_else(|| Error::InvalidSpec("subset is not contained in L".into()))?;
        Ok(block == small.fundamental_matrix(exec)?)
    }
}

type SeriesPair = (TruncatedSeries<IntegersMod>, TruncatedSeries<IntegersMod>);

/// Fills `memo` with `Lambda(tau_w)` and its inverse, by recursion on the
/// standard factorization.
fn lie_series(ring: &IntegersMod, k: usize, n: usize, w: &Word, memo: &mut HashMap<Word, SeriesPair>) -> Result<()> {
    if memo.contains_key(w) {
        return Ok(());
    }
    let pair = if w.len() == 1 {
        let s = TruncatedSeries::one_plus_letter(ring.clone(), k, n, w.letters()[0]);
        let inv = s.invert_unit()?;
        (s, inv)
    } else {
        let (u, v) = standard_factorization(w)?;
        lie_series(ring, k, n, &u, memo)?;
        lie_series(ring, k, n, &v, memo)?;
        let (a, a_inv) = &memo[&u];
        let (b, b_inv) = &memo[&v];
        let s = a.concat_mul(b)?.concat_mul(a_inv)?.concat_mul(b_inv)?;
        let inv = b.concat_mul(a)?.concat_mul(b_inv)?.concat_mul(a_inv)?;
        (s, inv)
    };
    memo.insert(w.clone(), pair);
    Ok(())
}

/// `rho_w(tau_{w'})` modulo `modulus`.
fn lie_rep(w: &Word, w_prime: &Word, modulus: u64, memo: &mut HashMap<Word, UniTriMatrix>) -> Result<UniTriMatrix> {
    if let Some(m) = memo.get(w_prime) {
        return Ok(m.clone());
    }
    let m = if w_prime.len() == 1 {
        magnus_rep_product(w, &GroupWord::generator(w_prime.letters()[0]), modulus)?
    } else {
        let (u, v) = standard_factorization(w_prime)?;
        let a = lie_rep(w, &u, modulus, memo)?;
        let b = lie_rep(w, &v, modulus, memo)?;
        a.mul(&b).mul(&a.inv()).mul(&b.inv())
    };
    memo.insert(w_prime.clone(), m.clone());
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magnus::{lie_element, magnus_expand};
    use crate::words::{lyndon_words, Alphabet};

    fn xy() -> Alphabet {
        Alphabet::new(["x", "y"]).unwrap()
    }

    fn small() -> Formation {
        let a = xy();
        let words = ["x", "y", "xy"].iter().map(|s| a.parse_word(s).unwrap()).collect();
        Formation::new(FormationSpec::new(a, 3, vec![1, 0], Some(words)).unwrap(), Exec::default()).unwrap()
    }

    fn word(s: &str) -> Word {
        xy().parse_word(s).unwrap()
    }

    #[test]
    fn cached_sigma_matches_group_word_expansion() {
        let f = Formation::new(FormationSpec::lower_p_central(xy(), 3, 3, None).unwrap(), Exec::Sequential)
            .unwrap();
        for (idx, w) in f.spec().words().iter().enumerate() {
            let direct = magnus_expand(&f.spec().sigma(w).unwrap(), 2, 3, f.ring()).unwrap();
            assert_eq!(&direct, f.sigma_series(idx), "{w:?}");
            let tau = magnus_expand(&lie_element(w).unwrap(), 2, 3, f.ring()).unwrap();
            assert_eq!(tau.pow(f.spec().e(w.len())), direct);
        }
    }

    #[test]
    fn small_spec_has_identity_matrix() {
        let f = small();
        let m = f.fundamental_matrix(Exec::Sequential).unwrap();
        assert_eq!(m.rows(), &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(f.pairing(&word("x"), 2).unwrap(), 0);
        assert!(f.coefficient_check(Exec::Sequential).unwrap().passed());
    }

    #[test]
    fn rho0_examples() {
        let f = small();
        let xy_w = word("xy");
        let sigma = f.spec().sigma(&xy_w).unwrap();
        assert_eq!(f.rho0_eval(&xy_w, &sigma).unwrap(), 1);
        let lambda = GroupWord::parse(&xy(), "y x^2 y^-1").unwrap();
        assert_eq!(f.rho0_eval(&xy_w, &sigma.conjugate_by(&lambda)).unwrap(), 1);
        let sx = f.spec().sigma(&word("x")).unwrap();
        assert_eq!(f.rho0_eval(&xy_w, &sx).unwrap(), 0);
        assert_eq!(f.rho0_eval(&word("yx"), &sigma).unwrap(), 2);
        assert_eq!(f.conjugation_check(&xy_w, &sample_conjugators(2, 8, 4, 1)).unwrap(), None);
        // x itself lies outside G^Phi and has no rho0 value
        assert!(matches!(
            f.rho0_eval(&word("x"), &GroupWord::generator(0)),
            Err(Error::Divisibility { .. })
        ));
    }

    #[test]
    fn shuffle_relation_examples() {
        let f = small();
        for star in [StarOp::Shuffle, StarOp::Infiltration] {
            let r = f.shuffle_relation_check(&word("x"), &word("y"), star).unwrap();
            assert!(r.passed());
            assert_eq!(r.relation, "xy + yx");
            assert_eq!(r.generators_checked, 3);
            assert!(f.shuffle_relation_check(&word("x"), &word("x"), star).unwrap().passed());
        }
        let f = Formation::new(FormationSpec::lower_p_central(xy(), 5, 3, None).unwrap(), Exec::default())
            .unwrap();
        assert!(matches!(
            f.shuffle_relation_check(&word("x"), &Word::empty(), StarOp::Shuffle),
            Err(Error::EmptyWord)
        ));
        let z = Formation::new(FormationSpec::zassenhaus(xy(), 5, 1, 3, None).unwrap(), Exec::default())
            .unwrap();
        assert_eq!(
            z.shuffle_relation_check(&word("x"), &word("y"), StarOp::Shuffle).map(|_| ()),
            Err(Error::DegreeNotInIe(2))
        );
    }

    #[test]
    fn shuffle_relations_sweep() {
        let f = Formation::new(FormationSpec::lower_p_central(xy(), 5, 4, None).unwrap(), Exec::default())
            .unwrap();
        let pairs = f.shuffle_relation_pairs(4);
        assert_eq!(pairs.len(), 4 + 16 + 48);
        for (u, v) in pairs {
            for star in [StarOp::Shuffle, StarOp::Infiltration] {
                assert!(f.shuffle_relation_check(&u, &v, star).unwrap().passed());
            }
        }
    }

    #[test]
    fn images_lie_in_corner_subgroups() {
        let f = Formation::new(FormationSpec::lower_p_central(xy(), 5, 3, None).unwrap(), Exec::default())
            .unwrap();
        let conj = sample_conjugators(2, 8, 4, 7);
        for w in words_up_to(2, 3).filter(|w| !w.is_empty()) {
            let r = f.image_check(&w, &conj).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.generator_image.is_some(), f.spec().position(&w).is_some());
            assert_eq!(r.conjugates_checked, 8 * f.spec().words().len());
        }
    }

    #[test]
    fn non_binomial_exponents_break_divisibility() {
        // e = (2, 2): eps_xx(x^2) = 1 is not divisible by e(2)
        let f = Formation::new(FormationSpec::new_relaxed(xy(), 2, vec![1, 1], None).unwrap(), Exec::default())
            .unwrap();
        let r = f.coefficient_check(Exec::Sequential).unwrap();
        assert!(r.violations.iter().any(|v| v.clause == 'c' && v.word == "xx" && v.generator == "x"));
    }

    #[test]
    fn matrices_for_presets() {
        for spec in [
            FormationSpec::lower_p_central(xy(), 5, 3, None).unwrap(),
            FormationSpec::zassenhaus(xy(), 5, 1, 4, None).unwrap(),
            FormationSpec::lower_p_central(Alphabet::standard(3).unwrap(), 3, 3, None).unwrap(),
        ] {
            let f = Formation::new(spec, Exec::default()).unwrap();
            let m = f.fundamental_matrix(Exec::default()).unwrap();
            assert!(m.check_unitriangular());
            assert_eq!(m, f.fundamental_matrix(Exec::Sequential).unwrap());
            assert!(f.coefficient_check(Exec::default()).unwrap().passed());
            let pr = f.pairing_check(&m, Exec::default()).unwrap();
            assert!(pr.passed(), "{pr:?}");
        }
    }

    #[test]
    fn functoriality() {
        let spec = FormationSpec::lower_p_central(xy(), 5, 3, None).unwrap();
        let f = Formation::new(spec, Exec::default()).unwrap();
        let all = lyndon_words(2, 3);
        for mask in 1u32..(1 << all.len()) {
            let subset: Vec<Word> = (0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i].clone()).collect();
            assert!(f.functoriality_check(&subset, Exec::Sequential).unwrap());
        }
    }

    #[test]
    fn ideal_divisibility_instance() {
        // If (f, w) lies in p^c for every nonempty |w| < s, then so does
        // (f, (u * v)_s), for f = Lambda(sigma_{w'}) and c = j(s) + 1.
        let f = Formation::new(FormationSpec::lower_p_central(xy(), 3, 4, None).unwrap(), Exec::default())
            .unwrap();
        let spec = f.spec();
        for s in 2..=4 {
            let pc = spec.p().pow(spec.j(s) + 1);
            for idx in 0..spec.words().len() {
                let hyp = words_up_to(2, s - 1)
                    .filter(|w| !w.is_empty())
                    .all(|w| f.sigma_eps(&w, idx).unwrap() % pc == 0);
                assert!(hyp);
                for (u, v) in f.shuffle_relation_pairs(s).into_iter().filter(|(u, v)| u.len() + v.len() == s) {
                    for star in [StarOp::Shuffle, StarOp::Infiltration] {
                        let part = star.apply(f.ring(), &u, &v).homogeneous_part(s);
                        let val = f.sigma_series(idx).scalar_product(&part).unwrap();
                        assert_eq!(val % pc, 0);
                    }
                }
            }
        }
    }
}
