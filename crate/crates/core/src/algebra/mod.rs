//! Exact arithmetic over the coefficient rings: `F_q`, `k[t]/(t^N)` and `k(t)`,
//! all in the equal-characteristic model `π = t`, `π₀ = t²`, `t̄ = -t`.

pub mod field;
pub mod poly;
pub mod ratfunc;
pub mod ring;
pub mod series;

pub use field::FieldSpec;
pub use poly::Poly;
pub use ratfunc::{RationalFunction, RationalFunctionField};
pub use ring::{CoefficientRing, Field, Ring};
pub use series::{TruncatedSeries, TruncatedSeriesRing};
