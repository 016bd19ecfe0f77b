//! Radford polynomials, linear algebra over `Z/p`, and the indecomposable
//! quotient of the shuffle algebra.

mod fp;
mod quotient;
mod radford;

pub use fp::{EchelonBasis, FpMatrix};
pub use quotient::{
    decomposable_rank, indec_dimension, isomorphism_report, DegreeCorrespondence, IndecReport,
    IsomorphismReport, RelationSummary,
};
pub use radford::{q_polynomial, radford_basis_check, RadfordFailure, RadfordReport};
