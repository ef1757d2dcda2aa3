//! Special-fiber enumeration over `F_q`, the components of the resolution,
//! the fibers of `τ`, and dimension estimates from point counts.

pub mod components;
pub mod dimension;
pub mod enumerate;
pub mod quadric;

pub use components::{
    component_membership, fiber_off_y, resolution_fiber, tau_fibers, verify_decomposition, z1, z2, CanonicalPair,
    ComponentMembership, CountReport, Decomposition, FiberSummary,
};
pub use dimension::{estimate_dimension, DimensionFit};
pub use enumerate::{enumerate_ms, enumerate_naive, enumerate_stratified, pi_lattice_bar_subspace, stratum_dim, Mode};
pub use quadric::{count_isotropic_vectors, quadric_points, Quadric};

use crate::algebra::FieldSpec;
use crate::linalg::Subspace;
use crate::model::LatticeModel;

/// A few points of `M^loc_s(F_q) ∖ {y}` for signature `(n−1, 1)`, built
/// directly: for an isotropic `a` with `a₁ = 1`,
/// `F = span((a; c·e₁)) + (0; a^⊥)`. Deterministic in `(n, q, count)`.
pub fn local_points_off_y(model: &LatticeModel<FieldSpec>, count: usize) -> Vec<Subspace<u32>> {
    use crate::linalg::Matrix;
    let k = model.ring();
    let n = model.n();
    let q = k.order() as u32;
    let mut out = Vec::new();
    let mut a = vec![0u32; n];
    a[0] = 1;
    'search: loop {
        if quadric::sum_of_squares(k, &a) == 0 {
            let aperp = Subspace::from_vectors(k, n, &[a.clone()])
                .orthogonal_complement(k, &Matrix::identity(k, n))
                .expect("dot product is nondegenerate");
            for c in 0..q.min(2) {
                let mut rows = vec![[a.clone(), vec![0; n]].concat()];
                rows[0][n] = c;
                rows.extend(aperp.vectors().map(|w| [vec![0; n], w.to_vec()].concat()));
                out.push(Subspace::from_vectors(k, 2 * n, &rows));
                if out.len() == count {
                    break 'search;
                }
            }
        }
        if !quadric::odometer(&mut a[1..], q) {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests;
