//! Free group words, Lie elements, the truncated Magnus expansion and
//! unitriangular Magnus representations.

mod expansion;
mod group;
mod homomorphism;
mod lcs;
mod matrix;

pub use expansion::{
    check_triangularity, eps, lie_element, magnus_expand, TriangularityFailure,
    TriangularityReport,
};
pub use group::GroupWord;
pub use homomorphism::{check_multiplicativity, MultiplicativityCheck};
pub use lcs::{verify_lcs_power_containment, LcsPowerCase, LcsPowerOutcome, DEFAULT_ORDER_BOUND};
pub use matrix::{magnus_rep, magnus_rep_product, UniTriMatrix};
