//! Exact algebra over ℚ and ℚ(ω): polynomials, rational functions and
//! truncated power series.

mod field;
mod poly;
mod ratfn;
mod series;

pub use field::{rat, Field, QOmega};
pub use poly::Poly;
pub use ratfn::RatFn;
pub use series::PowerSeries;
