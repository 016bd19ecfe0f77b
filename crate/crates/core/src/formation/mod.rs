//! Binomial exponent maps, formation specifications and the invariants read
//! off the Magnus expansions of the powers `sigma_w`.

mod evaluate;
mod exponent;
mod matrix;
mod spec;

pub use evaluate::{
    sample_conjugators, Formation, ImageFailure, ImageReport, PairingReport, CoefficientReport,
    CoefficientViolation, ShuffleRelationFailure, ShuffleRelationReport, DEFAULT_CONJUGATORS,
    DEFAULT_CONJUGATOR_LEN,
};
pub use exponent::{
    zassenhaus_exponents, zassenhaus_index_formula, BinomialEquivalence, ExponentMap,
};
pub use matrix::{FundamentalMatrix, FundamentalMatrixRecord, MatrixWitness};
pub use spec::{FormationConfig, FormationSpec, Preset, WordSelection};
