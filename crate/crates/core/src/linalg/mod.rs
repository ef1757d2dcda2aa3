//! Exact linear algebra over the coefficient rings.

pub mod charpoly;
pub mod echelon;
pub mod grassmann;
pub mod matrix;
pub mod minors;
pub mod summand;

pub use charpoly::charpoly;
pub use echelon::{kernel, rank, rref, Echelon, Subspace};
pub use grassmann::{gaussian_binomial, grassmann_iter, PivotPattern};
pub use matrix::Matrix;
pub use summand::FreeSummand;

use crate::algebra::CoefficientRing;

/// `⋀^{j+1} m = 0`: rank at most `j` over a field, vanishing of all
/// `(j+1)`-minors over a truncated ring.
pub fn rank_le<R: CoefficientRing>(ring: &R, m: &Matrix<R::Elem>, j: usize) -> bool {
    ring.rank_at_most(m, j)
}
