//! Sparse noncommutative polynomials, dense truncated series and the
//! shuffle and infiltration products.

mod poly;
mod products;
mod series;

pub use poly::{NCPoly, TermRecord};
pub use products::{infiltration, shuffle, star_extend, StarOp};
pub use series::TruncatedSeries;
