//! Enumeration of the special fiber `M_s(F_q)`: all `n`-dimensional,
//! `Π̄`-stable, totally isotropic subspaces of `F_q^{2n}`.
//!
//! The naive mode sweeps `Gr(n, 2n)(F_q)`. The stratified mode builds each
//! point from `W = F ∩ ΠΛ̄`, its image `U` in `Λ̄/ΠΛ̄ ≅ F_q^n`, and a lift
//! `σ: U → F_q^n / W` that is symmetric for the dot product.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{FieldSpec, Ring};
use crate::error::{Error, Result};
use crate::linalg::grassmann::{self, gaussian_binomial};
use crate::linalg::{Matrix, Subspace};
use crate::model::LatticeModel;

use super::quadric::odometer;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Naive,
    Stratified,
}

/// Number of Grassmannian candidates the naive sweep visits.
pub fn naive_cost(n: usize, q: u64) -> u128 {
    gaussian_binomial(2 * n, n, q)
}

pub fn enumerate_ms(model: &LatticeModel<FieldSpec>, mode: Mode, budget: u128) -> Result<Vec<Subspace<u32>>> {
    match mode {
        Mode::Naive => enumerate_naive(model, budget),
        Mode::Stratified => Ok(enumerate_stratified(model)),
    }
}

/// Sweeps `Gr(n, 2n)` with a buffer-level filter; sorted output.
pub fn enumerate_naive(model: &LatticeModel<FieldSpec>, budget: u128) -> Result<Vec<Subspace<u32>>> {
    let k = model.ring();
    let n = model.n();
    let needed = naive_cost(n, k.order());
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    let filter = FastFilter::new(k, n);
    let hits: Vec<Vec<u32>> = grassmann::par_fold_subspaces(
        k,
        2 * n,
        n,
        Vec::new,
        |acc: &mut Vec<Vec<u32>>, rows| {
            if filter.accepts(rows) {
                acc.push(rows.to_vec());
            }
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    let mut out: Vec<Subspace<u32>> = hits.iter().map(|r| grassmann::subspace_from_buffer(2 * n, r)).collect();
    out.sort();
    Ok(out)
}

/// Isotropy and `Π̄`-stability on a reduced echelon buffer of `n` rows
/// `(x; y)`, using the field tables directly.
pub(crate) struct FastFilter<'a> {
    n: usize,
    q: usize,
    add: &'a [u32],
    mul: &'a [u32],
    neg: Vec<u32>,
}

impl<'a> FastFilter<'a> {
    pub(crate) fn new(k: &'a FieldSpec, n: usize) -> Self {
        let q = k.order() as usize;
        FastFilter {
            n,
            q,
            add: k.add_table().expect("tabulated field"),
            mul: k.mul_table().expect("tabulated field"),
            neg: (0..q as u32).map(|a| k.neg(&a)).collect(),
        }
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub(crate) fn accepts(&self, rows: &[u32]) -> bool {
        let n = self.n;
        let w = 2 * n;
        // ⟨(x;y),(x';y')⟩ = x·y' − y·x'
        for a in 0..n {
            let ra = &rows[a * w..(a + 1) * w];
            for b in a + 1..n {
                let rb = &rows[b * w..(b + 1) * w];
                let (mut s1, mut s2) = (0, 0);
                for i in 0..n {
                    s1 = self.add(s1, self.mul(ra[i], rb[n + i]));
                    s2 = self.add(s2, self.mul(ra[n + i], rb[i]));
                }
                if s1 != s2 {
                    return false;
                }
            }
        }
        let pivots: Vec<usize> = (0..n)
            .map(|a| rows[a * w..(a + 1) * w].iter().position(|&x| x != 0).unwrap())
            .collect();
        let mut v = vec![0u32; w];
        for a in 0..n {
            let ra = &rows[a * w..(a + 1) * w];
            if ra[..n].iter().all(|&x| x == 0) {
                continue;
            }
            // v = Π̄(x; y) = (0; x), reduced against the echelon rows
            v[..n].fill(0);
            v[n..].copy_from_slice(&ra[..n]);
            for (b, &p) in pivots.iter().enumerate() {
                let c = v[p];
                if c == 0 {
                    continue;
                }
                let nc = self.neg[c as usize];
                let rb = &rows[b * w..(b + 1) * w];
                for i in p..w {
                    v[i] = self.add(v[i], self.mul(nc, rb[i]));
                }
            }
            if v.iter().any(|&x| x != 0) {
                return false;
            }
        }
        true
    }
}

/// A stratum parameter: `W ⊆ F_q^n` with the admissible `U`s inside it.
struct Stratum {
    w: Subspace<u32>,
    us: Vec<Subspace<u32>>,
}

/// Points built from `(U, W, σ)`; sorted output.
pub fn enumerate_stratified(model: &LatticeModel<FieldSpec>) -> Vec<Subspace<u32>> {
    let k = model.ring();
    let n = model.n();
    let strata = strata(k, n);
    let mut out: Vec<Subspace<u32>> = strata
        .par_iter()
        .flat_map_iter(|st| st.us.iter().flat_map(|u| lifts(k, n, &st.w, u)).collect::<Vec<_>>())
        .collect();
    out.sort();
    out
}

fn strata(k: &FieldSpec, n: usize) -> Vec<Stratum> {
    let dot = Matrix::identity(k, n);
    let mut out = Vec::new();
    for d in n.div_ceil(2)..=n {
        let m = n - d;
        for w in grassmann::grassmann_iter(k, n, d) {
            let wperp = w.orthogonal_complement(k, &dot).expect("dot product is nondegenerate");
            let inter = w.intersection(k, &wperp);
            if inter.dim() < m {
                continue;
            }
            let us = subspaces_of(k, &inter, m);
            if !us.is_empty() {
                out.push(Stratum { w, us });
            }
        }
    }
    out
}

/// All `m`-dimensional subspaces of `space`.
fn subspaces_of(k: &FieldSpec, space: &Subspace<u32>, m: usize) -> Vec<Subspace<u32>> {
    if m == 0 {
        return vec![Subspace::zero(k, space.ambient())];
    }
    grassmann::grassmann_iter(k, space.dim(), m)
        .map(|coeffs| Subspace::span(k, &coeffs.basis().mul(k, space.basis()).unwrap()))
        .collect()
}

/// All `F = graph(σ) ⊕ (0; W)` with `u_a·σ(u_b) = u_b·σ(u_a)`; `σ` takes
/// values in the span of the coordinate vectors outside the pivots of `W`.
fn lifts(k: &FieldSpec, n: usize, w: &Subspace<u32>, u: &Subspace<u32>) -> Vec<Subspace<u32>> {
    let m = u.dim();
    let wp = w.pivots(k);
    let comp: Vec<usize> = (0..n).filter(|j| !wp.contains(j)).collect();
    debug_assert_eq!(comp.len(), n - w.dim());
    let urows: Vec<&[u32]> = u.vectors().collect();
    let cols = comp.len();
    let mut s = vec![0u32; m * cols];
    let mut out = Vec::new();
    loop {
        // pairing[a][b] = u_a · σ(u_b) = Σ_c s[b][c] u_a[comp[c]]
        let pair = |a: usize, b: usize| {
            (0..cols).fold(0u32, |acc, c| k.add(&acc, &k.mul(&s[b * cols + c], &urows[a][comp[c]])))
        };
        let symmetric = (0..m).all(|a| (a + 1..m).all(|b| pair(a, b) == pair(b, a)));
        if symmetric {
            let mut rows = Vec::with_capacity(m + w.dim());
            for (a, ua) in urows.iter().enumerate() {
                let mut row = vec![0u32; 2 * n];
                row[..n].copy_from_slice(ua);
                for (c, &j) in comp.iter().enumerate() {
                    row[n + j] = s[a * cols + c];
                }
                rows.push(row);
            }
            for wv in w.vectors() {
                let mut row = vec![0u32; 2 * n];
                row[n..].copy_from_slice(wv);
                rows.push(row);
            }
            out.push(Subspace::from_vectors(k, 2 * n, &rows));
        }
        if !odometer(&mut s, k.order() as u32) {
            break;
        }
    }
    out
}

/// `dim(F ∩ ΠΛ̄)`: the stratum index `d` of a point.
pub fn stratum_dim(k: &FieldSpec, n: usize, f: &Subspace<u32>) -> usize {
    let y = pi_lattice_bar_subspace(k, n);
    f.intersection(k, &y).dim()
}

/// `ΠΛ̄ = span(Πe₁, …, Πe_n)` as a subspace of `F_q^{2n}`.
pub fn pi_lattice_bar_subspace(k: &FieldSpec, n: usize) -> Subspace<u32> {
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|i| (0..2 * n).map(|j| u32::from(j == n + i)).collect())
        .collect();
    Subspace::from_vectors(k, 2 * n, &rows)
}
