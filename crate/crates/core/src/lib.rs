//! Exact point-level laboratory for the local models of ramified unitary
//! groups of signature `(r, s)`: the naive model `M`, the local model
//! `M^loc`, and the resolution `𝓜 → M^loc` for signature `(n-1, 1)`.
//!
//! Everything is computed in the equal-characteristic model
//! `R₀ = k[[t₀]]`, `R = k[[t]]`, `π = t`, `π₀ = t²`, over the coefficient
//! rings `F_q` (special fiber points), `k[t]/(t^N)` (chart neighborhoods)
//! and `k(t)` (generic fiber points).

pub mod algebra;
pub mod charts;
pub mod error;
pub mod fiber;
pub mod linalg;
pub mod model;
pub mod report;
pub mod trace;

pub use error::{Error, Result};
