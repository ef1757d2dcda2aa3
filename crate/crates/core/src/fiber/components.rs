//! The resolution `𝓜_s(F_q)` for signature `(n−1, 1)`, its components
//! `Z₁`, `Z₂`, and the fibers of `τ`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{FieldSpec, Ring};
use crate::error::{Error, Result};
use crate::linalg::{echelon, grassmann, FreeSummand, Matrix, Subspace};
use crate::model::LatticeModel;

use super::enumerate::pi_lattice_bar_subspace;
use super::quadric::sum_of_squares;

/// A resolution point in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalPair {
    pub f0: Subspace<u32>,
    pub f: Subspace<u32>,
}

impl CanonicalPair {
    /// Compact replayable form: the echelon rows of `F₀` and `F`.
    pub fn witness(&self) -> String {
        format!("F0={:?} F={:?}", rows_of(&self.f0), rows_of(&self.f))
    }
}

pub(crate) fn rows_of(s: &Subspace<u32>) -> Vec<Vec<u32>> {
    s.vectors().map(|r| r.to_vec()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentMembership {
    pub in_z1: bool,
    pub in_z2: bool,
    /// Number of components through the point, minus one.
    pub t: u32,
}

fn check_signature(model: &LatticeModel<FieldSpec>) -> Result<()> {
    let n = model.n();
    if model.signature() != (n - 1, 1) {
        return Err(Error::precondition(format!(
            "the resolution is only built for signature ({}, 1)",
            n - 1
        )));
    }
    Ok(())
}

/// Whether `(F₀, F)` lies on the resolution, using the generic predicate.
pub fn pair_in_resolution(model: &LatticeModel<FieldSpec>, pair: &CanonicalPair) -> bool {
    let k = model.ring();
    let f0 = FreeSummand::from_subspace(k, &pair.f0);
    let f = FreeSummand::from_subspace(k, &pair.f);
    model.in_resolution(&f0, &f)
}

/// `{v : m v ∈ target}`.
fn preimage(k: &FieldSpec, m: &Matrix<u32>, target: &Subspace<u32>) -> Subspace<u32> {
    let ann = target.annihilator(k);
    if ann.dim() == 0 {
        return Subspace::full(k, m.cols());
    }
    echelon::kernel(k, &ann.basis().mul(k, m).unwrap())
}

/// `{Π̄v, Π̄v} = ⟨Π̄v, v⟩` for the spanning vector `Π̄v` of `F₀ ⊆ ΠΛ̄`.
fn symmetric_form_on_line(model: &LatticeModel<FieldSpec>, f0: &Subspace<u32>) -> u32 {
    let k = model.ring();
    let pv = f0.basis().row(0).to_vec();
    // a preimage v with Π̄v = pv
    let v = preimage_vector(k, model.pi(), &pv).expect("F₀ lies in the image of Π̄");
    model.pairing(&pv, &v)
}

/// Some `v` with `m v = target`, if one exists.
fn preimage_vector(k: &FieldSpec, m: &Matrix<u32>, target: &[u32]) -> Option<Vec<u32>> {
    let aug = m.hstack(&Matrix::column_vector(target)).ok()?;
    let ech = echelon::rref(k, &aug);
    let cols = m.cols();
    if ech.pivots.contains(&cols) {
        return None;
    }
    let mut v = vec![0u32; cols];
    for (i, &p) in ech.pivots.iter().enumerate() {
        v[p] = ech.reduced[(i, cols)];
    }
    Some(v)
}

/// `V = Π̄⁻¹(F₀)` and `V^⊥` for the symplectic form.
fn v_and_perp(model: &LatticeModel<FieldSpec>, f0: &Subspace<u32>) -> (Subspace<u32>, Subspace<u32>) {
    let k = model.ring();
    let v = preimage(k, model.pi(), f0);
    let vperp = v.orthogonal_complement(k, model.form()).expect("perfect form");
    (v, vperp)
}

/// Which of `Z₁`, `Z₂` contain a resolution point.
pub fn component_membership(model: &LatticeModel<FieldSpec>, pair: &CanonicalPair) -> Result<ComponentMembership> {
    check_signature(model)?;
    if !pair_in_resolution(model, pair) {
        return Err(Error::precondition(
            "component membership needs a point of the resolution",
        ));
    }
    let k = model.ring();
    let y = pi_lattice_bar_subspace(k, model.n());
    let in_z1 = pair.f == y;
    let in_z2 = symmetric_form_on_line(model, &pair.f0) == 0 && {
        let (v, vperp) = v_and_perp(model, &pair.f0);
        pair.f.contains(k, &vperp) && v.contains(k, &pair.f)
    };
    Ok(ComponentMembership {
        in_z1,
        in_z2,
        t: u32::from(in_z1 && in_z2),
    })
}

/// `F₀ = span((0; a))`.
fn line_in_y(k: &FieldSpec, a: &[u32]) -> Subspace<u32> {
    let n = a.len();
    let mut v = vec![0u32; 2 * n];
    v[n..].copy_from_slice(a);
    Subspace::from_vectors(k, 2 * n, &[v])
}

/// `Z₁ = {(ℓ, ΠΛ̄) : ℓ ∈ P(ΠΛ̄)}`.
pub fn z1(k: &FieldSpec, n: usize) -> BTreeSet<CanonicalPair> {
    let y = pi_lattice_bar_subspace(k, n);
    grassmann::projective_points(k, n)
        .into_iter()
        .map(|a| CanonicalPair {
            f0: line_in_y(k, &a),
            f: y.clone(),
        })
        .collect()
}

/// `Z₂`: over each isotropic line `F₀ = (0; a)`, the `q + 1` subspaces `F`
/// with `V^⊥ ⊆ F ⊆ V`, `V = Π̄⁻¹(F₀)`.
pub fn z2(model: &LatticeModel<FieldSpec>) -> BTreeSet<CanonicalPair> {
    let k = model.ring();
    let n = model.n();
    let mut out = BTreeSet::new();
    for a in grassmann::projective_points(k, n) {
        if sum_of_squares(k, &a) != 0 {
            continue;
        }
        let f0 = line_in_y(k, &a);
        let (v, vperp) = v_and_perp(model, &f0);
        debug_assert_eq!((v.dim(), vperp.dim()), (n + 1, n - 1));
        // two vectors of V completing V^⊥
        let mut extra = Vec::new();
        let mut acc = vperp.clone();
        for row in v.vectors() {
            if !acc.contains_vector(k, row) {
                extra.push(row.to_vec());
                acc = acc.sum(k, &Subspace::from_vectors(k, 2 * n, &[row.to_vec()]));
            }
        }
        assert_eq!(extra.len(), 2, "V^⊥ has codimension 2 in V");
        for line in grassmann::projective_points(k, 2) {
            let w: Vec<u32> = (0..2 * n)
                .map(|i| k.add(&k.mul(&line[0], &extra[0][i]), &k.mul(&line[1], &extra[1][i])))
                .collect();
            let f = vperp.sum(k, &Subspace::from_vectors(k, 2 * n, &[w]));
            out.insert(CanonicalPair { f0: f0.clone(), f });
        }
    }
    out
}

/// Every line `F₀ ⊆ F` with `(F₀, F)` on the resolution, by scanning the
/// lines of `F`.
pub fn resolution_fiber(model: &LatticeModel<FieldSpec>, f: &Subspace<u32>) -> Vec<CanonicalPair> {
    let k = model.ring();
    let mut out = Vec::new();
    for c in grassmann::projective_points(k, f.dim()) {
        let line = Matrix::from_rows(&[c]).unwrap().mul(k, f.basis()).unwrap();
        let pair = CanonicalPair {
            f0: Subspace::span(k, &line),
            f: f.clone(),
        };
        if pair_in_resolution(model, &pair) {
            out.push(pair);
        }
    }
    out.sort();
    out
}

/// The fiber over `F ≠ ΠΛ̄` via `(Π+π)F ⊆ F₀`: the only candidate is
/// `F₀ = Π̄F` when that is a line.
pub fn fiber_off_y(model: &LatticeModel<FieldSpec>, f: &Subspace<u32>) -> Vec<CanonicalPair> {
    let k = model.ring();
    let image = f.image(k, model.pi());
    if image.dim() != 1 {
        return Vec::new();
    }
    let pair = CanonicalPair {
        f0: image,
        f: f.clone(),
    };
    if pair_in_resolution(model, &pair) {
        vec![pair]
    } else {
        Vec::new()
    }
}

/// Counts and set identities of the decomposition `𝓜_s = Z₁ ∪ Z₂`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub q: u64,
    pub ms: u64,
    pub mloc: u64,
    pub mres: u64,
    pub z1: u64,
    pub z2: u64,
    pub z1_cap_z2: u64,
    pub z: u64,
    pub decomposition_holds: bool,
    /// A point in the symmetric difference of `𝓜_s` and `Z₁ ∪ Z₂`.
    pub witness: Option<String>,
}

/// Result of the decomposition check together with the sets it built.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub report: CountReport,
    pub mloc: Vec<Subspace<u32>>,
    pub mres: BTreeSet<CanonicalPair>,
}

/// Enumerates `𝓜_s(F_q)` from `M^loc_s(F_q)` and the lines of each `F`,
/// builds `Z₁`, `Z₂` from their definitions, and compares.
pub fn verify_decomposition(model: &LatticeModel<FieldSpec>, ms: &[Subspace<u32>]) -> Result<Decomposition> {
    check_signature(model)?;
    let k = model.ring();
    let n = model.n();
    let q = k.order();
    let mloc: Vec<Subspace<u32>> = ms
        .iter()
        .filter(|f| model.in_local(&FreeSummand::from_subspace(k, f)))
        .cloned()
        .collect();
    let mres: BTreeSet<CanonicalPair> = mloc.iter().flat_map(|f| resolution_fiber(model, f)).collect();
    let z1 = z1(k, n);
    let z2 = z2(model);
    let union: BTreeSet<CanonicalPair> = z1.union(&z2).cloned().collect();
    let witness = mres.symmetric_difference(&union).next().map(|p| {
        let side = if mres.contains(p) {
            "in resolution only"
        } else {
            "in Z1 ∪ Z2 only"
        };
        format!("{side}: {}", p.witness())
    });
    for p in &mres {
        let m = component_membership(model, p)?;
        if m.in_z1 != z1.contains(p) || m.in_z2 != z2.contains(p) {
            return Err(Error::Verification(format!(
                "membership predicate disagrees with component sets at {}",
                p.witness()
            )));
        }
    }
    let z = super::quadric::quadric_points(k, n)?.z;
    let report = CountReport {
        n,
        r: n - 1,
        s: 1,
        q,
        ms: ms.len() as u64,
        mloc: mloc.len() as u64,
        mres: mres.len() as u64,
        z1: z1.len() as u64,
        z2: z2.len() as u64,
        z1_cap_z2: z1.intersection(&z2).count() as u64,
        z,
        decomposition_holds: witness.is_none(),
        witness,
    };
    Ok(Decomposition { report, mloc, mres })
}

/// Shape of the fibers of `τ: 𝓜_s → M^loc_s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberSummary {
    pub y_fiber: u64,
    pub singleton_fibers: u64,
    pub total: u64,
}

/// `F ↦ [F₀]` over the points of `M^loc_s`.
pub type FiberMap = BTreeMap<Subspace<u32>, Vec<Subspace<u32>>>;

/// Groups `𝓜_s` by `F` and checks: the fiber over `y` is `P(ΠΛ̄)`, every
/// other fiber is `{(Π̄F, F)}`, and every point of `M^loc_s` is hit.
pub fn tau_fibers(
    model: &LatticeModel<FieldSpec>,
    mloc: &[Subspace<u32>],
    mres: &BTreeSet<CanonicalPair>,
) -> Result<(FiberMap, FiberSummary)> {
    check_signature(model)?;
    let k = model.ring();
    let n = model.n();
    let q = k.order();
    let y = pi_lattice_bar_subspace(k, n);
    let mut fibers: FiberMap = mloc.iter().map(|f| (f.clone(), Vec::new())).collect();
    for p in mres {
        let Some(fib) = fibers.get_mut(&p.f) else {
            return Err(Error::Verification(format!("tau lands outside M^loc: {}", p.witness())));
        };
        fib.push(p.f0.clone());
    }
    let lines = (q.pow(n as u32) - 1) / (q - 1);
    let mut singletons = 0;
    for (f, fib) in &fibers {
        if *f == y {
            if fib.len() as u64 != lines {
                return Err(Error::Verification(format!(
                    "fiber over y has {} points, expected {lines}",
                    fib.len()
                )));
            }
        } else {
            let expect = f.image(k, model.pi());
            if fib.len() != 1 || fib[0] != expect {
                return Err(Error::Verification(format!(
                    "fiber over F={:?} is {:?}, expected the single line {:?}",
                    rows_of(f),
                    fib.iter().map(rows_of).collect::<Vec<_>>(),
                    rows_of(&expect)
                )));
            }
            singletons += 1;
        }
    }
    let summary = FiberSummary {
        y_fiber: fibers.get(&y).map_or(0, |f| f.len() as u64),
        singleton_fibers: singletons,
        total: mres.len() as u64,
    };
    Ok((fibers, summary))
}
