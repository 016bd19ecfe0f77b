//! Brute-force check of when `p^{j'}`-th powers of a lower central term of
//! `U_i(Z/p^{j+1})` land in the corner subgroup `Id + p^j Z E_{1,i+1}`.

use std::collections::HashSet;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::ring::checked_pow;

use super::UniTriMatrix;

pub const DEFAULT_ORDER_BOUND: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LcsPowerCase {
    pub i: usize,
    pub i_prime: usize,
    pub p: u64,
    pub j: u32,
    pub j_prime: u32,
}

impl LcsPowerCase {
    /// `j' >= j + log_p(i / i')`, decided exactly as `i' p^{j'} >= i p^j`.
    pub fn predicate(&self) -> bool {
        let lhs = BigUint::from(self.i_prime) * BigUint::from(self.p).pow(self.j_prime);
        let rhs = BigUint::from(self.i) * BigUint::from(self.p).pow(self.j);
        lhs >= rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcsPowerOutcome {
    pub case: LcsPowerCase,
    pub predicate: bool,
    pub containment: bool,
    pub group_order: u64,
    pub subgroup_order: u64,
    /// An element of the lower central term whose power escapes the corner
    /// subgroup, when containment fails.
    pub witness: Option<UniTriMatrix>,
}

impl LcsPowerOutcome {
    pub fn agrees(&self) -> bool {
        self.predicate == self.containment
    }
}

/// Dense coding of `U_i(Z/q)` elements as base-`q` integers over the strictly
/// upper entries.
struct Coder {
    n: usize,
    q: u64,
    positions: Vec<(usize, usize)>,
}

impl Coder {
    fn encode(&self, m: &UniTriMatrix) -> u64 {
        self.positions
            .iter()
            .fold(0, |acc, &(r, c)| acc * self.q + m.get(r, c))
    }

    fn decode(&self, mut code: u64) -> UniTriMatrix {
        let mut m = UniTriMatrix::identity(self.n, self.q);
        for &(r, c) in self.positions.iter().rev() {
            m.set(r, c, code % self.q);
            code /= self.q;
        }
        m
    }
}

fn subgroup_closure(coder: &Coder, gens: &[UniTriMatrix]) -> HashSet<u64> {
    let id = UniTriMatrix::identity(coder.n, coder.q);
    let mut seen = HashSet::from([coder.encode(&id)]);
    let mut frontier = vec![id];
    while let Some(h) = frontier.pop() {
        for g in gens {
            let next = h.mul(g);
            if seen.insert(coder.encode(&next)) {
                frontier.push(next);
            }
        }
    }
    seen
}

/// Normal closure in `U` of the subgroup generated by `gens`.
fn normal_closure(coder: &Coder, ambient: &[UniTriMatrix], mut gens: Vec<UniTriMatrix>) -> HashSet<u64> {
    // a^-1 is a power of a, so closing under conjugation by each a suffices
    let inverses: Vec<UniTriMatrix> = ambient.iter().map(|a| inverse(coder, a)).collect();
    loop {
        let h = subgroup_closure(coder, &gens);
        let mut added = false;
        for (a, a_inv) in ambient.iter().zip(&inverses) {
            let mut fresh = Vec::new();
            for g in &gens {
                let c = a.mul(g).mul(&a_inv);
                if !h.contains(&coder.encode(&c)) {
                    fresh.push(c);
                }
            }
            if !fresh.is_empty() {
                gens.extend(fresh);
                added = true;
            }
        }
        if !added {
            return h;
        }
    }
}

impl Coder {
    fn group_order(&self) -> u64 {
        self.q.pow(self.positions.len() as u32)
    }
}

/// `m^(|U| - 1)`.
fn inverse(coder: &Coder, m: &UniTriMatrix) -> UniTriMatrix {
    m.pow(coder.group_order() - 1)
}

fn commutator(coder: &Coder, a: &UniTriMatrix, b: &UniTriMatrix) -> UniTriMatrix {
    a.mul(b).mul(&inverse(coder, a)).mul(&inverse(coder, b))
}

/// Decides `(U_i(Z/p^{j+1})^{(i')})^{p^{j'}} <= Id + p^j Z E_{1,i+1}` by
/// exhaustive enumeration and compares it with the arithmetic predicate.
pub fn verify_lcs_power_containment(case: LcsPowerCase, order_bound: u64, exec: Exec) -> Result<LcsPowerOutcome> {
    let LcsPowerCase { i, i_prime, p, j, j_prime } = case;
    if i_prime < 1 || i_prime > i {
        return Err(Error::InvalidSpec(format!("need i >= i' >= 1, got i={i}, i'={i_prime}")));
    }
    if !crate::ring::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let q = checked_pow(p, j + 1)?;
    let n = i + 1;
    let dims = (n * (n - 1) / 2) as u32;
    let order = BigUint::from(q).pow(dims);
    if order > BigUint::from(order_bound) {
        return Err(Error::SizeBound {
            order: order.to_string(),
            bound: order_bound,
        });
    }
    let order = q.pow(dims);
    let coder = Coder {
        n,
        q,
        positions: (0..n).flat_map(|r| (r + 1..n).map(move |c| (r, c))).collect(),
    };
    let power = checked_pow(p, j_prime)?;
    let corner = checked_pow(p, j)?;

    let ambient: Vec<UniTriMatrix> = (0..i)
        .map(|r| {
            let mut m = UniTriMatrix::identity(n, q);
            m.set(r, r + 1, 1);
            m
        })
        .collect();

    let escapes = |m: &UniTriMatrix| -> Option<UniTriMatrix> {
        (!m.pow(power).in_corner_subgroup(corner)).then(|| m.clone())
    };

    let (subgroup_order, witness) = if i_prime == 1 {
        let codes: Vec<u64> = (0..order).collect();
        let witness = exec.find_first(&codes, |&c| escapes(&coder.decode(c)));
        (order, witness)
    } else {
        let mut gens = ambient.clone();
        for _ in 1..i_prime {
            let mut next = Vec::new();
            for a in &ambient {
                for b in &gens {
                    let c = commutator(&coder, a, b);
                    if !c.is_identity() && !next.contains(&c) {
                        next.push(c);
                    }
                }
            }
            gens = next;
        }
        let mut codes: Vec<u64> = normal_closure(&coder, &ambient, gens).into_iter().collect();
        codes.sort_unstable();
        let witness = exec.find_first(&codes, |&c| escapes(&coder.decode(c)));
        (codes.len() as u64, witness)
    };

    Ok(LcsPowerOutcome {
        case,
        predicate: case.predicate(),
        containment: witness.is_none(),
        group_order: order,
        subgroup_order,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(i: usize, i_prime: usize, p: u64, j: u32, j_prime: u32) -> LcsPowerCase {
        LcsPowerCase { i, i_prime, p, j, j_prime }
    }

    fn run(c: LcsPowerCase) -> LcsPowerOutcome {
        verify_lcs_power_containment(c, DEFAULT_ORDER_BOUND, Exec::default()).unwrap()
    }

    #[test]
    fn examples() {
        let o = run(case(2, 1, 2, 0, 1));
        assert!(o.predicate && o.containment);
        assert_eq!(o.group_order, 8);
        let o = run(case(2, 1, 2, 0, 0));
        assert!(!o.predicate && !o.containment);
        assert!(o.witness.is_some());
        let o = run(case(2, 2, 3, 0, 0));
        assert!(o.predicate && o.containment);
    }

    #[test]
    fn lower_central_terms_have_expected_orders() {
        // U^{(c)} consists of the matrices vanishing on the first c-1 superdiagonals
        for (i, p, j) in [(3usize, 2u64, 0u32), (3, 2, 1), (3, 3, 0), (4, 2, 0)] {
            let q = p.pow(j + 1);
            for c in 1..=i {
                let o = run(case(i, c, p, j, 0));
                let free = (1..=i).filter(|d| *d >= c).map(|d| (i + 1 - d) as u32).sum::<u32>();
                assert_eq!(o.subgroup_order, q.pow(free), "i={i} c={c} q={q}");
            }
        }
    }

    #[test]
    fn size_bound_and_bad_parameters() {
        assert!(matches!(
            verify_lcs_power_containment(case(4, 1, 3, 1, 0), DEFAULT_ORDER_BOUND, Exec::Sequential),
            Err(Error::SizeBound { .. })
        ));
        assert!(verify_lcs_power_containment(case(2, 3, 2, 0, 0), DEFAULT_ORDER_BOUND, Exec::Sequential).is_err());
        assert!(verify_lcs_power_containment(case(2, 1, 4, 0, 0), DEFAULT_ORDER_BOUND, Exec::Sequential).is_err());
    }
}
