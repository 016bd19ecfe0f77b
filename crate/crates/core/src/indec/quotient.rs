use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::formation::{Formation, FormationSpec, PairingReport, ShuffleRelationFailure};
use crate::ncpoly::{NCPoly, StarOp};
use crate::ring::{is_prime, Integers};
use crate::words::{lyndon_words_of_len, words_of_len, Word};

use super::fp::EchelonBasis;

/// Dimension of the degree-`s` part of the indecomposable quotient of the
/// shuffle algebra, tensored with `Z/p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndecReport {
    pub degree: usize,
    pub p: u64,
    pub word_count: usize,
    pub decomposable_rank: usize,
    pub indec_dimension: usize,
    pub lyndon_count: usize,
    /// Whether the images of the Lyndon words of length `s` span the quotient.
    pub lyndon_span: bool,
    pub matches: bool,
    /// `p > s`.
    pub hypothesis_met: bool,
}

impl IndecReport {
    /// Under `p > s` the dimension must equal the Lyndon count and the Lyndon
    /// images must span; otherwise nothing is claimed.
    pub fn consistent(&self) -> bool {
        !self.hypothesis_met || (self.matches && self.lyndon_span)
    }
}

/// Position of a word of length `s` in the alphabetical order of `X^s`.
fn word_index(k: usize, w: &Word) -> usize {
    w.letters().iter().fold(0, |acc, &x| acc * k + x as usize)
}

fn vector_mod_p(k: usize, s: usize, p: u64, f: &NCPoly<Integers>) -> Vec<u64> {
    let mut v = vec![0u64; k.pow(s as u32)];
    let pb = BigInt::from(p);
    for (w, c) in f.terms() {
        if w.len() == s {
            v[word_index(k, w)] = c.mod_floor(&pb).to_u64().expect("below p");
        }
    }
    v
}

fn decomposable_basis(k: usize, s: usize, p: u64, star: StarOp) -> EchelonBasis {
    let mut basis = EchelonBasis::new(p, k.pow(s as u32));
    // both products are commutative, so |u| <= |v| suffices
    for a in 1..=s / 2 {
        for u in words_of_len(k, a) {
            for v in words_of_len(k, s - a) {
                let part = star.apply(&Integers, &u, &v).homogeneous_part(s);
                basis.insert(vector_mod_p(k, s, p, &part));
                if basis.is_full() {
                    return basis;
                }
            }
        }
    }
    basis
}

/// Rank over `Z/p` of the span of the degree-`s` parts of `u * v`, `u` and
/// `v` nonempty with `|u| + |v| = s`.
pub fn decomposable_rank(k: usize, s: usize, p: u64, star: StarOp) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::InvalidAlphabet("empty alphabet".into()));
    }
    Ok(decomposable_basis(k, s, p, star).rank())
}

pub fn indec_dimension(k: usize, s: usize, p: u64) -> Result<IndecReport> {
    if s == 0 {
        return Err(Error::EmptyWord);
    }
    decomposable_rank(k, s, p, StarOp::Shuffle)?;
    let mut basis = decomposable_basis(k, s, p, StarOp::Shuffle);
    let rank = basis.rank();
    let word_count = k.pow(s as u32);
    let lyndon = lyndon_words_of_len(k, s);
    for w in &lyndon {
        let mut e = vec![0; word_count];
        e[word_index(k, w)] = 1;
        basis.insert(e);
    }
    let dim = word_count - rank;
    Ok(IndecReport {
        degree: s,
        p,
        word_count,
        decomposable_rank: rank,
        indec_dimension: dim,
        lyndon_count: lyndon.len(),
        lyndon_span: basis.is_full(),
        matches: dim == lyndon.len(),
        hypothesis_met: p as u128 > s as u128,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCorrespondence {
    pub degree: usize,
    pub indec_dimension: usize,
    /// Words of `L` of this length; each `w` corresponds to `rho0_w`.
    pub basis: Vec<String>,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSummary {
    pub checked: usize,
    pub failure: Option<(String, String, StarOp, ShuffleRelationFailure)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsomorphismReport {
    pub index_set: Vec<usize>,
    pub degrees: Vec<DegreeCorrespondence>,
    pub unitriangular: bool,
    pub pairing: PairingReport,
    pub relations: RelationSummary,
    pub warnings: Vec<String>,
    pub assumptions: Vec<String>,
    pub passed: bool,
}

/// Compares, degree by degree over `I_e`, the indecomposable quotient with
/// the `rho0` basis attached to `L`.
pub fn isomorphism_report(spec: &FormationSpec, exec: Exec) -> Result<IsomorphismReport> {
    let mut warnings = Vec::new();
    if spec.n() as u64 >= spec.p() {
        warnings.push(format!(
            "warning: theorem hypotheses unmet: n = {} is not below p = {}",
            spec.n(),
            spec.p()
        ));
    }
    if !spec.is_full_lyndon_selection() {
        warnings.push(
            "warning: theorem hypotheses unmet: L is not the set of Lyndon words with lengths in I_e"
                .into(),
        );
    }
    let formation = Formation::new(spec.clone(), exec)?;
    let fm = formation.fundamental_matrix(exec)?;
    let unitriangular = fm.check_unitriangular();
    let pairing = formation.pairing_check(&fm, exec)?;

    let ie = spec.index_set();
    let dims = exec.map(&ie, |&s| indec_dimension(spec.k(), s, spec.p()));
    let mut degrees = Vec::new();
    for (&s, d) in ie.iter().zip(dims) {
        let d = d?;
        let basis: Vec<String> = spec
            .words()
            .iter()
            .filter(|w| w.len() == s)
            .map(|w| spec.alphabet().display_word(w))
            .collect();
        degrees.push(DegreeCorrespondence {
            degree: s,
            indec_dimension: d.indec_dimension,
            matches: d.indec_dimension == basis.len(),
            basis,
        });
    }

    let pairs = formation.shuffle_relation_pairs(spec.n());
    let jobs: Vec<(Word, Word, StarOp)> = pairs
        .into_iter()
        .flat_map(|(u, v)| [StarOp::Shuffle, StarOp::Infiltration].map(|st| (u.clone(), v.clone(), st)))
        .collect();
    let results = exec.map(&jobs, |(u, v, st)| formation.shuffle_relation_check(u, v, *st));
    let mut relations = RelationSummary {
        checked: 0,
        failure: None,
    };
    for r in results {
        let r = r?;
        relations.checked += 1;
        if relations.failure.is_none() {
            if let Some(f) = r.failure {
                relations.failure = Some((r.u, r.v, r.star, f));
            }
        }
    }

    let passed = unitriangular
        && pairing.passed()
        && relations.failure.is_none()
        && (!warnings.is_empty() || degrees.iter().all(|d| d.matches));
    Ok(IsomorphismReport {
        index_set: ie,
        degrees,
        unitriangular,
        pairing,
        relations,
        warnings,
        assumptions: vec![
            "the second cohomology side is represented by the G-invariant homomorphisms G^Phi -> Z/p; \
             the transgression isomorphism is assumed, not computed"
                .into(),
        ],
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    #[test]
    fn rank_examples() {
        assert_eq!(decomposable_rank(2, 2, 5, StarOp::Shuffle).unwrap(), 3);
        assert_eq!(decomposable_rank(2, 3, 5, StarOp::Shuffle).unwrap(), 6);
        assert_eq!(decomposable_rank(1, 2, 2, StarOp::Shuffle).unwrap(), 0);
        assert_eq!(decomposable_rank(2, 1, 5, StarOp::Shuffle).unwrap(), 0);
    }

    #[test]
    fn both_products_give_the_same_rank() {
        for k in 1..=2 {
            for s in 1..=4 {
                for p in [2, 3, 5] {
                    assert_eq!(
                        decomposable_rank(k, s, p, StarOp::Shuffle).unwrap(),
                        decomposable_rank(k, s, p, StarOp::Infiltration).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn dimension_examples() {
        let r = indec_dimension(2, 4, 5).unwrap();
        assert_eq!((r.indec_dimension, r.lyndon_count), (3, 3));
        assert!(r.matches && r.lyndon_span && r.consistent());
        assert_eq!(indec_dimension(2, 1, 3).unwrap().indec_dimension, 2);
        let r = indec_dimension(1, 2, 2).unwrap();
        assert_eq!((r.indec_dimension, r.lyndon_count), (1, 0));
        assert!(!r.matches && !r.hypothesis_met && r.consistent());
    }

    #[test]
    fn dimensions_match_lyndon_counts_above_the_degree() {
        for k in 1..=3 {
            for s in 1..=4 {
                for p in [5, 7] {
                    let r = indec_dimension(k, s, p).unwrap();
                    assert!(r.matches && r.lyndon_span, "{r:?}");
                }
            }
        }
    }

    #[test]
    fn presets_pass() {
        let a = Alphabet::standard(2).unwrap();
        let spec = FormationSpec::lower_p_central(a.clone(), 5, 3, None).unwrap();
        let r = isomorphism_report(&spec, Exec::default()).unwrap();
        assert!(r.passed && r.warnings.is_empty(), "{r:?}");
        assert_eq!(r.index_set, vec![1, 2, 3]);
        let dims: Vec<usize> = r.degrees.iter().map(|d| d.indec_dimension).collect();
        assert_eq!(dims, vec![2, 1, 2]);

        let spec = FormationSpec::zassenhaus(a.clone(), 5, 1, 3, None).unwrap();
        let r = isomorphism_report(&spec, Exec::default()).unwrap();
        assert!(r.passed);
        assert_eq!(r.index_set, vec![1, 3]);
        let dims: Vec<usize> = r.degrees.iter().map(|d| d.indec_dimension).collect();
        assert_eq!(dims, vec![2, 2]);

        let spec = FormationSpec::lower_p_central(a, 3, 3, None).unwrap();
        let r = isomorphism_report(&spec, Exec::default()).unwrap();
        assert_eq!(r.warnings.len(), 1);
        assert!(r.warnings[0].starts_with("warning: theorem hypotheses unmet"));
    }
}
