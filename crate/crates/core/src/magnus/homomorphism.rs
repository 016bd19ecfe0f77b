use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ring::Integers;
use crate::words::{words_up_to, Word};

use super::matrix::magnus_rep_product;
use super::{magnus_expand, GroupWord};

/// The three equivalent forms of multiplicativity of the Magnus expansion,
/// evaluated independently on one pair of group elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicativityCheck {
    /// `Lambda(g h) = Lambda(g) Lambda(h)` in the truncated series algebra.
    pub series: bool,
    /// `eps_w(g h) = sum_{w = uv} eps_u(g) eps_v(h)` for every `|w| <= max_deg`.
    pub convolution: bool,
    /// `rho_w(g h) = rho_w(g) rho_w(h)` for every nonempty `|w| <= max_deg`.
    pub representation: bool,
}

impl MultiplicativityCheck {
    pub fn all_hold(&self) -> bool {
        self.series && self.convolution && self.representation
    }

    pub fn consistent(&self) -> bool {
        self.series == self.convolution && self.convolution == self.representation
    }
}

/// Evaluates the three formulations for `g` and `h` over `k` letters up to
/// degree `max_deg`. The representation form is computed modulo `modulus`
/// from syllable matrices, so it shares no code with the series forms.
pub fn check_multiplicativity(
    k: usize,
    g: &GroupWord,
    h: &GroupWord,
    max_deg: usize,
    modulus: u64,
) -> Result<MultiplicativityCheck> {
    let gh = g.mul(h);
    let sg = magnus_expand(g, k, max_deg, &Integers)?;
    let sh = magnus_expand(h, k, max_deg, &Integers)?;
    let sgh = magnus_expand(&gh, k, max_deg, &Integers)?;

    let series = sgh == sg.concat_mul(&sh)?;

    let mut convolution = true;
    for w in words_up_to(k, max_deg) {
        let mut sum = BigInt::zero();
        for cut in 0..=w.len() {
            sum += sg.coeff(&w.prefix(cut))? * sh.coeff(&w.suffix_from(cut))?;
        }
        if sum != *sgh.coeff(&w)? {
            convolution = false;
            break;
        }
    }

    let mut representation = true;
    let words: Vec<Word> = words_up_to(k, max_deg).filter(|w| !w.is_empty()).collect();
    for w in &words {
        let lhs = magnus_rep_product(w, &gh, modulus)?;
        let rhs = magnus_rep_product(w, g, modulus)?.mul(&magnus_rep_product(w, h, modulus)?);
        if lhs != rhs {
            representation = false;
            break;
        }
    }

    Ok(MultiplicativityCheck {
        series,
        convolution,
        representation,
    })
}
