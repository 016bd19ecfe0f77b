//! Exact combinatorics of words for Magnus formations.
//!
//! The crate is organised bottom-up:
//!
//! * [`words`]: alphabets, the alphabetical and length-alphabetical orders,
//!   Lyndon words, standard and Chen-Fox-Lyndon factorizations.
//! * [`ring`] and [`ncpoly`]: exact coefficient rings, sparse noncommutative
//!   polynomials, dense truncated series, shuffle and infiltration products.
//! * [`magnus`]: free group words, Lie elements, the truncated Magnus
//!   expansion `x -> 1 + x`, Magnus coefficients and unitriangular Magnus
//!   representations, plus a brute-force search through lower central terms
//!   of unitriangular groups.
//! * [`formation`]: binomial exponent maps, the index set `I_e`, formation
//!   specifications, the fundamental matrix and the `rho0` invariants.
//! * [`indec`]: Radford polynomials, linear algebra over `Z/p` and the
//!   indecomposable quotient of the shuffle algebra.
//!
//! Every computation is exact; there is no floating point anywhere.

pub mod error;
pub mod exec;
pub mod formation;
pub mod indec;
pub mod magnus;
pub mod ncpoly;
pub mod ring;
pub mod words;

pub use error::{Error, Result};
pub use exec::Exec;
