//! The charts `U_k` of the resolution over `k[t]/(t^N)`.
//!
//! A chart point is given by `λ` with `λ_k = 1` and `γ_k` subject to
//! `γ_k · Σλᵢ² = 2π`. With `γ = γ_k λ` and `A = λγᵗ − π·Id`, the point is
//! `F = colspan [A; I]`, `F₀ = span(b)`, `b = (Aλ; λ)`.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{CoefficientRing, FieldSpec, Ring, TruncatedSeries, TruncatedSeriesRing};
use crate::error::{Error, Result};
use crate::fiber::{component_membership, CanonicalPair, ComponentMembership};
use crate::linalg::{FreeSummand, Matrix};
use crate::model::{LatticeModel, ResolutionPoint};

pub type ChartModel = LatticeModel<TruncatedSeriesRing>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartSample {
    /// Chart index, 0-based.
    pub k: usize,
    pub lambda: Vec<TruncatedSeries>,
    pub gamma_k: TruncatedSeries,
}

fn two_pi(ring: &TruncatedSeriesRing) -> TruncatedSeries {
    ring.mul(&ring.from_int(2), &ring.uniformizer())
}

fn sum_of_squares(ring: &TruncatedSeriesRing, v: &[TruncatedSeries]) -> TruncatedSeries {
    v.iter().fold(ring.zero(), |acc, x| ring.add(&acc, &ring.mul(x, x)))
}

fn dot(ring: &TruncatedSeriesRing, a: &[TruncatedSeries], b: &[TruncatedSeries]) -> TruncatedSeries {
    a.iter()
        .zip(b)
        .fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)))
}

impl ChartSample {
    /// Checks `λ_k = 1` and `γ_k · Σλᵢ² = 2π`.
    pub fn new(
        ring: &TruncatedSeriesRing,
        k: usize,
        lambda: Vec<TruncatedSeries>,
        gamma_k: TruncatedSeries,
    ) -> Result<Self> {
        if k >= lambda.len() || !ring.is_one(&lambda[k]) {
            return Err(Error::precondition("λ_k must be 1"));
        }
        if ring.mul(&gamma_k, &sum_of_squares(ring, &lambda)) != two_pi(ring) {
            return Err(Error::precondition("γ_k · Σλᵢ² ≠ 2π: not a point of the chart"));
        }
        Ok(ChartSample { k, lambda, gamma_k })
    }

    pub fn gamma(&self, ring: &TruncatedSeriesRing) -> Vec<TruncatedSeries> {
        self.lambda.iter().map(|l| ring.mul(&self.gamma_k, l)).collect()
    }
}

/// `A = λγᵗ − π·Id`.
fn chart_matrix(
    ring: &TruncatedSeriesRing,
    lambda: &[TruncatedSeries],
    gamma: &[TruncatedSeries],
) -> Matrix<TruncatedSeries> {
    let n = lambda.len();
    let pi = ring.uniformizer();
    Matrix::from_fn(n, n, |i, j| {
        let e = ring.mul(&lambda[i], &gamma[j]);
        if i == j {
            ring.sub(&e, &pi)
        } else {
            e
        }
    })
}

/// `F = colspan [A; I]` and `F₀ = span((Aλ; λ))` for arbitrary `λ, γ`.
fn assemble(
    model: &ChartModel,
    k: usize,
    lambda: &[TruncatedSeries],
    gamma: &[TruncatedSeries],
) -> Result<(Matrix<TruncatedSeries>, ResolutionPoint<TruncatedSeries>)> {
    let ring = model.ring();
    let n = model.n();
    let a = chart_matrix(ring, lambda, gamma);
    let basis = a.vstack(&Matrix::identity(ring, n))?;
    let f = FreeSummand::from_chart_form(ring, basis, (n..2 * n).collect())?;
    let a_lambda = a.mul_vec(ring, lambda)?;
    let b: Vec<TruncatedSeries> = a_lambda.into_iter().chain(lambda.iter().cloned()).collect();
    let f0 = FreeSummand::from_chart_form(ring, Matrix::column_vector(&b), vec![n + k])?;
    Ok((a, ResolutionPoint { f0, f }))
}

/// The resolution point of a chart sample; checks membership and `A = Aᵗ`.
pub fn chart_point(model: &ChartModel, sample: &ChartSample) -> Result<ResolutionPoint<TruncatedSeries>> {
    let ring = model.ring();
    if sample.lambda.len() != model.n() {
        return Err(Error::Shape("λ has the wrong length".into()));
    }
    // re-validate in case the sample was built by hand
    let sample = ChartSample::new(ring, sample.k, sample.lambda.clone(), sample.gamma_k.clone())?;
    let (a, point) = assemble(model, sample.k, &sample.lambda, &sample.gamma(ring))?;
    if a.transpose() != a {
        return Err(Error::Verification("chart matrix is not symmetric".into()));
    }
    if !model.in_resolution_point(&point) {
        return Err(Error::Verification(
            "chart point fails the resolution conditions".into(),
        ));
    }
    Ok(point)
}

/// Truth values of the two equation systems at `(λ, γ)`, with
/// `A = λγᵗ − π·Id` and `b = (Aλ; λ)`.
///
/// The matrix system: `A = Aᵗ`, `Aλ = b_{1..n}`, `Aλ = πλ`, and
/// `A + π·Id = λγ'ᵗ` for some `γ'`. The vector system: `λγᵗ = γλᵗ`,
/// `λγᵗλ = 2πλ`, `λ_k = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationStatus {
    pub a_symmetric: bool,
    pub b_top_is_a_lambda: bool,
    pub a_lambda_is_pi_lambda: bool,
    pub shift_has_rank_one: bool,
    pub outer_symmetric: bool,
    pub norm_relation: bool,
    pub normalized: bool,
}

impl EquationStatus {
    pub fn vector_system(&self) -> bool {
        self.outer_symmetric && self.norm_relation && self.normalized
    }

    pub fn matrix_system(&self) -> bool {
        self.a_symmetric && self.b_top_is_a_lambda && self.a_lambda_is_pi_lambda && self.shift_has_rank_one
    }
}

pub fn equation_status(
    ring: &TruncatedSeriesRing,
    k: usize,
    lambda: &[TruncatedSeries],
    gamma: &[TruncatedSeries],
) -> EquationStatus {
    let n = lambda.len();
    let pi = ring.uniformizer();
    let outer = |u: &[TruncatedSeries], v: &[TruncatedSeries]| Matrix::from_fn(n, n, |i, j| ring.mul(&u[i], &v[j]));
    let outer_symmetric = outer(lambda, gamma) == outer(gamma, lambda);
    let gl = dot(ring, gamma, lambda);
    let norm_relation = lambda.iter().all(|l| ring.mul(l, &gl) == ring.mul(&two_pi(ring), l));
    let normalized = ring.is_one(&lambda[k]);

    let a = chart_matrix(ring, lambda, gamma);
    let a_lambda = a.mul_vec(ring, lambda).unwrap();
    let b_top = a_lambda.clone();
    // with λ_k = 1 the only candidate for γ' is row k of A + π·Id
    let shifted = a.add(ring, &Matrix::scalar(ring, n, &pi)).unwrap();
    let gamma_prime = shifted.row(k).to_vec();
    EquationStatus {
        a_symmetric: a.transpose() == a,
        b_top_is_a_lambda: a_lambda == b_top,
        a_lambda_is_pi_lambda: a_lambda.iter().zip(lambda).all(|(x, l)| *x == ring.mul(&pi, l)),
        shift_has_rank_one: normalized && outer(lambda, &gamma_prime) == shifted,
        outer_symmetric,
        norm_relation,
        normalized,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrialClass {
    /// `γ = γ_k λ` with `γ_k = 2π/Σλᵢ²`.
    Valid,
    /// A valid sample with one entry of `γ` shifted.
    Perturbed,
    /// Independent uniform `λ` (with `λ_k = 1`) and `γ`.
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzWitness {
    pub trial: usize,
    pub class: TrialClass,
    pub k: usize,
    pub lambda: Vec<Vec<u32>>,
    pub gamma: Vec<Vec<u32>>,
    pub status: EquationStatus,
    pub member: bool,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub n: usize,
    pub p: u64,
    pub order: usize,
    pub seed: u64,
    pub trials: usize,
    pub valid: usize,
    pub perturbed: usize,
    pub random: usize,
    pub failures: Vec<FuzzWitness>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn random_series(ring: &TruncatedSeriesRing, rng: &mut ChaCha8Rng) -> TruncatedSeries {
    let p = ring.base().order() as u32;
    let c: Vec<u32> = (0..ring.order()).map(|_| rng.gen_range(0..p)).collect();
    ring.series(&c)
}

fn random_lambda(ring: &TruncatedSeriesRing, n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<TruncatedSeries> {
    (0..n)
        .map(|i| if i == k { ring.one() } else { random_series(ring, rng) })
        .collect()
}

/// `(λ, γ)` on the chart: resamples `λ` until `Σλᵢ²` is a unit.
fn valid_pair(
    ring: &TruncatedSeriesRing,
    n: usize,
    k: usize,
    rng: &mut ChaCha8Rng,
) -> (Vec<TruncatedSeries>, Vec<TruncatedSeries>) {
    loop {
        let lambda = random_lambda(ring, n, k, rng);
        if let Some(inv) = ring.unit_inverse(&sum_of_squares(ring, &lambda)) {
            let gk = ring.mul(&two_pi(ring), &inv);
            let gamma = lambda.iter().map(|l| ring.mul(&gk, l)).collect();
            return (lambda, gamma);
        }
    }
}

fn run_trial(model: &ChartModel, trial: usize, seed: u64) -> (TrialClass, Option<FuzzWitness>) {
    let ring = model.ring();
    let n = model.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    let k = rng.gen_range(0..n);
    let class = match trial % 3 {
        0 => TrialClass::Valid,
        1 => TrialClass::Perturbed,
        _ => TrialClass::Random,
    };
    let (lambda, gamma) = match class {
        TrialClass::Valid => valid_pair(ring, n, k, &mut rng),
        TrialClass::Perturbed => {
            let (lambda, mut gamma) = valid_pair(ring, n, k, &mut rng);
            let j = rng.gen_range(0..n);
            let delta = loop {
                let d = random_series(ring, &mut rng);
                if !ring.is_zero(&d) {
                    break d;
                }
            };
            gamma[j] = ring.add(&gamma[j], &delta);
            (lambda, gamma)
        }
        TrialClass::Random => {
            let lambda = random_lambda(ring, n, k, &mut rng);
            let gamma = (0..n).map(|_| random_series(ring, &mut rng)).collect();
            (lambda, gamma)
        }
    };
    let status = equation_status(ring, k, &lambda, &gamma);
    let member = assemble(model, k, &lambda, &gamma)
        .map(|(_, p)| model.in_resolution_point(&p))
        .unwrap_or(false);
    let reason = if status.vector_system() != status.matrix_system() {
        Some("vector and matrix equation systems disagree")
    } else if status.vector_system() != member {
        Some("equations and resolution membership disagree")
    } else if class == TrialClass::Valid && !status.vector_system() {
        Some("constructed chart point fails the equations")
    } else if class == TrialClass::Perturbed && status.vector_system() {
        Some("perturbation not detected")
    } else {
        None
    };
    let witness = reason.map(|r| FuzzWitness {
        trial,
        class,
        k,
        lambda: lambda.iter().map(|x| x.coeffs().to_vec()).collect(),
        gamma: gamma.iter().map(|x| x.coeffs().to_vec()).collect(),
        status,
        member,
        reason: r.to_string(),
    });
    (class, witness)
}

/// Seeded fuzzing of the vector system against the matrix system and against resolution membership.
/// Trial `i` draws from the ChaCha stream `i` of `seed`, so the report does
/// not depend on scheduling.
pub fn chart_equivalence_fuzz(model: &ChartModel, trials: usize, seed: u64) -> Result<FuzzReport> {
    if trials == 0 {
        return Err(Error::Config("chart fuzzing needs at least one trial".into()));
    }
    let ring = model.ring();
    let results: Vec<(TrialClass, Option<FuzzWitness>)> =
        (0..trials).into_par_iter().map(|i| run_trial(model, i, seed)).collect();
    let count = |c: TrialClass| results.iter().filter(|(k, _)| *k == c).count();
    Ok(FuzzReport {
        n: model.n(),
        p: ring.base().order(),
        order: ring.order(),
        seed,
        trials,
        valid: count(TrialClass::Valid),
        perturbed: count(TrialClass::Perturbed),
        random: count(TrialClass::Random),
        failures: results.into_iter().filter_map(|(_, w)| w).collect(),
    })
}

/// Slice memberships predicted by the chart equations over `k`, with
/// `x = λ`, `y = γ_k`: `Z₁ ∩ U_k: y = 0`, `Z₂ ∩ U_k: Σxᵢ² = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceReport {
    pub n: usize,
    pub q: u64,
    pub points: usize,
    pub z1_only: usize,
    pub z2_only: usize,
    pub both: usize,
    pub mismatches: Vec<String>,
}

/// Over `N = 1`, classifies every chart point `(λ, γ_k) ∈ k^{n−1} × k` of
/// `U_k` by the slice equations and by the component predicates.
pub fn classify_slices(k_field: &FieldSpec, n: usize, chart: usize) -> Result<SliceReport> {
    let ring = TruncatedSeriesRing::new(k_field.clone(), 1);
    let model = LatticeModel::new(n, n - 1, 1, ring.clone())?;
    let special = LatticeModel::new(n, n - 1, 1, k_field.clone())?;
    let q = k_field.order() as u32;
    let mut free = vec![0u32; n - 1];
    let mut report = SliceReport {
        n,
        q: q as u64,
        points: 0,
        z1_only: 0,
        z2_only: 0,
        both: 0,
        mismatches: Vec::new(),
    };
    loop {
        let mut coords = free.clone();
        coords.insert(chart, 1);
        let lambda: Vec<TruncatedSeries> = coords.iter().map(|&c| ring.constant(c)).collect();
        let norm = sum_of_squares(&ring, &lambda);
        for y in 0..q {
            let gk = ring.constant(y);
            let Ok(sample) = ChartSample::new(&ring, chart, lambda.clone(), gk) else {
                continue;
            };
            let point = chart_point(&model, &sample)?;
            let pair = residue_pair(k_field, &point);
            let actual: ComponentMembership = component_membership(&special, &pair)?;
            let predicted = (y == 0, ring.is_zero(&norm));
            report.points += 1;
            match (actual.in_z1, actual.in_z2) {
                (true, true) => report.both += 1,
                (true, false) => report.z1_only += 1,
                (false, true) => report.z2_only += 1,
                (false, false) => {}
            }
            if (actual.in_z1, actual.in_z2) != predicted {
                report.mismatches.push(format!(
                    "λ={coords:?} γ_k={y}: predicted {predicted:?}, found ({}, {})",
                    actual.in_z1, actual.in_z2
                ));
            }
        }
        if !crate::fiber::quadric::odometer(&mut free, q) {
            break;
        }
    }
    Ok(report)
}

/// Reads an `N = 1` point over the residue field.
pub fn residue_pair(k: &FieldSpec, p: &ResolutionPoint<TruncatedSeries>) -> CanonicalPair {
    use crate::linalg::Subspace;
    let residue = |m: &Matrix<TruncatedSeries>| m.map(|x| x.constant_term()).transpose();
    CanonicalPair {
        f0: Subspace::span(k, &residue(p.f0.basis())),
        f: Subspace::span(k, &residue(p.f.basis())),
    }
}

/// The relation `y·Σxᵢ² − 2t` of `U_k` (with `x_k = 1`) as a polynomial in
/// `t, x, y`; flatness over `k[t]` amounts to its reduction mod `t` being
/// nonzero, since then it is a nonzerodivisor in the domain `k[x, y]`.
pub fn chart_is_flat(k: &FieldSpec, n: usize, chart: usize) -> bool {
    use std::collections::BTreeMap;
    // monomial: (t exponent, x exponents, y exponent) -> coefficient
    let mut rel: BTreeMap<(u32, Vec<u32>, u32), u32> = BTreeMap::new();
    for i in 0..n {
        let mut xe = vec![0u32; n];
        if i != chart {
            xe[i] = 2;
        }
        let e = rel.entry((0, xe, 1)).or_insert(0);
        *e = k.add(e, &1);
    }
    let e = rel.entry((1, vec![0; n], 0)).or_insert(0);
    *e = k.sub(e, &k.from_int(2));
    rel.iter().any(|((te, _, _), c)| *te == 0 && *c != 0)
}
