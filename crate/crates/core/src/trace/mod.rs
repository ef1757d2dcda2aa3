//! Frobenius traces on nearby cycles at the `F_q`-points of `M^loc` for
//! signature `(n−1, 1)`, computed as `Σ_{x' ∈ τ⁻¹(x)} (1−q)^{t(x')}`, and
//! compared with the closed forms.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{FieldSpec, Ring};
use crate::error::{Error, Result};
use crate::fiber::{self, component_membership, fiber_off_y, pi_lattice_bar_subspace};
use crate::linalg::{FreeSummand, Subspace};
use crate::model::LatticeModel;

/// `χ(n, q)`: 0 for odd `n`, otherwise `+1` iff `(−1)^{n/2}` is a square,
/// i.e. `Σ xᵢ²` on `F_q^n` is hyperbolic.
pub fn chi(k: &FieldSpec, n: usize) -> Result<i8> {
    if k.order() % 2 == 0 {
        return Err(Error::InvalidField(format!("χ needs odd q, got {}", k.order())));
    }
    if n % 2 == 1 {
        return Ok(0);
    }
    let sign = if (n / 2) % 2 == 0 { k.one() } else { k.from_int(-1) };
    Ok(if k.is_square(sign)? { 1 } else { -1 })
}

/// `z = (q^{n−1} − χq^{n/2−1} + χq^{n/2} − 1)/(q − 1)`.
pub fn kitaoka_z(n: usize, q: u64, chi: i8) -> Result<i128> {
    let parity_ok = if n % 2 == 1 { chi == 0 } else { chi == 1 || chi == -1 };
    if !parity_ok || n < 2 || q < 2 {
        return Err(Error::precondition(format!("χ = {chi} is inconsistent with n = {n}")));
    }
    let q = q as i128;
    let c = chi as i128;
    let half = (n / 2) as u32;
    let num = q.pow(n as u32 - 1) - c * q.pow(half.saturating_sub(1)) + c * q.pow(half) - 1;
    if num % (q - 1) != 0 || num < 0 {
        return Err(Error::Verification(format!(
            "Kitaoka numerator {num} is not a nonnegative multiple of q − 1"
        )));
    }
    Ok(num / (q - 1))
}

/// `z` by visiting all of `F_q^n`.
pub fn brute_z(k: &FieldSpec, n: usize, budget: u128) -> Result<i128> {
    let count = fiber::count_isotropic_vectors(k, n, budget)?;
    Ok(((count - 1) / (k.order() - 1)) as i128)
}

/// Number of lines of `ΠΛ̄`, `(qⁿ − 1)/(q − 1)`.
pub fn line_count(n: usize, q: u64) -> i128 {
    let q = q as i128;
    (q.pow(n as u32) - 1) / (q - 1)
}

/// `(qⁿ − 1)/(q − 1) − z·q`.
pub fn trace_via_z(n: usize, q: u64, z: i128) -> i128 {
    line_count(n, q) - z * q as i128
}

/// `1` off `y`; at `y`: `1` for odd `n`, `1 − q^{n/2}` if hyperbolic,
/// `1 + q^{n/2}` otherwise.
pub fn trace_closed_form(k: &FieldSpec, n: usize, at_y: bool) -> Result<i128> {
    if n < 3 {
        return Err(Error::Config(format!("n = {n}, need n >= 3")));
    }
    let c = chi(k, n)?;
    if !at_y || c == 0 {
        return Ok(1);
    }
    let h = (k.order() as i128).pow(n as u32 / 2);
    Ok(if c == 1 { 1 - h } else { 1 + h })
}

/// Weight `(1−q)^t` of a resolution point.
fn weight(q: u64, t: u32) -> i128 {
    (1 - q as i128).pow(t)
}

/// Component count `t` of `(ℓ, ΠΛ̄)` for `ℓ = (0; a)`: the point lies on
/// `Z₂` exactly when `Σ aᵢ² = 0`.
pub fn y_fiber_t(k: &FieldSpec, a: &[u32]) -> u32 {
    u32::from(fiber::quadric::sum_of_squares(k, a) == 0)
}

/// `Σ (1−q)^t` over the fiber `P(ΠΛ̄)(F_q)` of `y`, visiting each line
/// `(0; a)` with `a` normalized to leading entry 1.
pub fn y_fiber_sum(k: &FieldSpec, n: usize, budget: u128) -> Result<i128> {
    let q = k.order();
    let needed = line_count(n, q) as u128;
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    let add = k
        .add_table()
        .ok_or_else(|| Error::InvalidField(format!("fiber sweep needs a tabulated field, q = {q}")))?;
    let qs = q as usize;
    let squares: Vec<u32> = (0..q as u32).map(|c| k.mul(&c, &c)).collect();
    let (w0, w1) = (weight(q, 0), weight(q, 1));
    // leading 1 at position p, then n − p − 1 free coordinates; split the
    // larger cases over their first free coordinate
    let units: Vec<(usize, Option<u32>)> = (0..n)
        .flat_map(|p| {
            let free = n - p - 1;
            if free >= 2 {
                (0..q as u32).map(|c| (p, Some(c))).collect::<Vec<_>>()
            } else {
                vec![(p, None)]
            }
        })
        .collect();
    let total: i128 = units
        .par_iter()
        .map(|&(p, first)| {
            let mut start = 1u32; // square of the leading 1
            let mut free = n - p - 1;
            if let Some(c) = first {
                start = add[start as usize * qs + squares[c as usize] as usize];
                free -= 1;
            }
            let (lines, isotropic) = sweep(add, &squares, qs, start, free);
            (lines - isotropic) as i128 * w0 + isotropic as i128 * w1
        })
        .sum();
    Ok(total)
}

/// Visits all tails of length `len` after a partial sum `start`; returns the
/// number of tails and how many complete an isotropic vector.
fn sweep(add: &[u32], squares: &[u32], q: usize, start: u32, len: usize) -> (u64, u64) {
    if len == 0 {
        return (1, (start == 0) as u64);
    }
    let free = len - 1;
    let mut digits = vec![0usize; free];
    let mut sums = vec![start; free + 1];
    for i in 0..free {
        sums[i + 1] = add[sums[i] as usize * q + squares[0] as usize];
    }
    let (mut lines, mut iso) = (0u64, 0u64);
    loop {
        let row = &add[sums[free] as usize * q..sums[free] as usize * q + q];
        for &sq in squares {
            iso += (row[sq as usize] == 0) as u64;
        }
        lines += q as u64;
        let mut i = free;
        loop {
            if i == 0 {
                return (lines, iso);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
        }
        for j in i..free {
            sums[j + 1] = add[sums[j] as usize * q + squares[digits[j]] as usize];
        }
    }
}

/// Trace at an `F_q`-point `x` of `M^loc_s`: the fiber sum of `(1−q)^t`.
pub fn trace_mechanism(model: &LatticeModel<FieldSpec>, x: &Subspace<u32>, budget: u128) -> Result<i128> {
    let k = model.ring();
    let n = model.n();
    if model.signature() != (n - 1, 1) {
        return Err(Error::precondition("trace is computed for signature (n−1, 1)"));
    }
    if !model.in_local(&FreeSummand::from_subspace(k, x)) {
        return Err(Error::precondition("x is not a point of the local model"));
    }
    if *x == pi_lattice_bar_subspace(k, n) {
        return y_fiber_sum(k, n, budget);
    }
    let fib = fiber_off_y(model, x);
    let mut total = 0;
    for p in &fib {
        total += weight(k.order(), component_membership(model, p)?.t);
    }
    Ok(total)
}

/// One row of the trace table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRow {
    pub n: usize,
    pub q: u64,
    pub chi: i8,
    pub z_brute: i128,
    pub z_formula: i128,
    pub trace_y_mechanism: i128,
    pub trace_y_via_z: i128,
    pub trace_y_formula: i128,
    /// Common value of the trace at the sampled points off `y`, or `None`
    /// if the samples disagree.
    pub trace_off_y: Option<i128>,
    pub off_y_samples: usize,
    pub agree: bool,
}

pub fn trace_row(n: usize, q: u64, budget: u128, samples: usize) -> Result<TraceRow> {
    let k = FieldSpec::of_order(q)?;
    let c = chi(&k, n)?;
    let z_brute = brute_z(&k, n, budget)?;
    let z_formula = kitaoka_z(n, q, c)?;
    let model = LatticeModel::new(n, n - 1, 1, k.clone())?;
    let y = pi_lattice_bar_subspace(&k, n);
    let trace_y_mechanism = trace_mechanism(&model, &y, budget)?;
    let trace_y_via_z = trace_via_z(n, q, z_brute);
    let trace_y_formula = trace_closed_form(&k, n, true)?;
    let off: Vec<i128> = fiber::local_points_off_y(&model, samples)
        .iter()
        .map(|x| trace_mechanism(&model, x, budget))
        .collect::<Result<_>>()?;
    let trace_off_y = match off.first() {
        Some(&v) if off.iter().all(|&w| w == v) => Some(v),
        None => Some(trace_closed_form(&k, n, false)?),
        _ => None,
    };
    let agree = z_brute == z_formula
        && trace_y_mechanism == trace_y_via_z
        && trace_y_via_z == trace_y_formula
        && trace_off_y == Some(1);
    Ok(TraceRow {
        n,
        q,
        chi: c,
        z_brute,
        z_formula,
        trace_y_mechanism,
        trace_y_via_z,
        trace_y_formula,
        trace_off_y,
        off_y_samples: off.len(),
        agree,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceReport {
    pub rows: Vec<TraceRow>,
}

impl TraceReport {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agree)
    }

    pub fn first_disagreement(&self) -> Option<&TraceRow> {
        self.rows.iter().find(|r| !r.agree)
    }
}

pub fn trace_table(ns: &[usize], qs: &[u64], budget: u128, samples: usize) -> Result<TraceReport> {
    let mut rows = Vec::new();
    for &n in ns {
        for &q in qs {
            rows.push(trace_row(n, q, budget, samples)?);
        }
    }
    Ok(TraceReport { rows })
}

#[cfg(test)]
mod tests;
