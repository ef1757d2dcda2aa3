//! Points of the quadric `Σ aᵢ² = 0` in `P^{n-1}(F_q)`.

use rayon::prelude::*;

use crate::algebra::{FieldSpec, Ring};
use crate::error::{Error, Result};

/// The quadric `Q` with one normalized representative per line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadric {
    pub n: usize,
    pub q: u64,
    pub z: u64,
    pub lines: Vec<Vec<u32>>,
}

pub fn sum_of_squares(k: &FieldSpec, a: &[u32]) -> u32 {
    a.iter().fold(0, |acc, x| k.add(&acc, &k.mul(x, x)))
}

/// Brute force over all of `F_q^n`: `z` is the number of nonzero isotropic
/// vectors divided by `q − 1`; lines are normalized to leading entry 1.
pub fn quadric_points(k: &FieldSpec, n: usize) -> Result<Quadric> {
    let q = k.order();
    if q % 2 == 0 {
        return Err(Error::InvalidField(format!("quadric needs odd q, got {q}")));
    }
    let mut a = vec![0u32; n];
    let mut nonzero_zeros = 0u64;
    let mut lines = Vec::new();
    loop {
        if a.iter().any(|&x| x != 0) && sum_of_squares(k, &a) == 0 {
            nonzero_zeros += 1;
            if a.iter().find(|&&x| x != 0) == Some(&1) {
                lines.push(a.clone());
            }
        }
        if !odometer(&mut a, q as u32) {
            break;
        }
    }
    debug_assert_eq!(nonzero_zeros % (q - 1), 0);
    Ok(Quadric {
        n,
        q,
        z: nonzero_zeros / (q - 1),
        lines,
    })
}

/// Number of `a ∈ F_q^n` (zero included) with `Σ aᵢ² = 0`, by visiting all
/// `q^n` tuples. The sweep is split over the first two coordinates.
pub fn count_isotropic_vectors(k: &FieldSpec, n: usize, budget: u128) -> Result<u64> {
    let q = k.order();
    let needed = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    let add = k
        .add_table()
        .ok_or_else(|| Error::InvalidField(format!("brute force needs a tabulated field, q = {q}")))?;
    let qs = q as usize;
    let squares: Vec<u32> = (0..q as u32).map(|c| k.mul(&c, &c)).collect();
    if n == 0 {
        return Ok(1);
    }
    if n == 1 {
        return Ok(squares.iter().filter(|&&s| s == 0).count() as u64);
    }
    let lead = 2.min(n - 1);
    let units: Vec<Vec<u32>> = {
        let mut out = Vec::new();
        let mut p = vec![0u32; lead];
        loop {
            out.push(p.clone());
            if !odometer(&mut p, q as u32) {
                break;
            }
        }
        out
    };
    let total = units
        .par_iter()
        .map(|prefix| {
            let start = prefix
                .iter()
                .fold(0u32, |s, &c| add[s as usize * qs + squares[c as usize] as usize]);
            sweep_tail(add, &squares, qs, start, n - lead)
        })
        .sum();
    Ok(total)
}

/// Counts tails `(a_{j}, …, a_n)` with `start + Σ a² = 0`; the last
/// coordinate is looped over explicitly.
fn sweep_tail(add: &[u32], squares: &[u32], q: usize, start: u32, len: usize) -> u64 {
    // sums[i] = start + squares of the first i free coordinates
    let free = len - 1;
    let mut digits = vec![0usize; free];
    let mut sums = vec![start; free + 1];
    for i in 0..free {
        sums[i + 1] = add[sums[i] as usize * q + squares[0] as usize];
    }
    let mut count = 0u64;
    loop {
        let row = &add[sums[free] as usize * q..sums[free] as usize * q + q];
        for &sq in squares {
            count += (row[sq as usize] == 0) as u64;
        }
        let mut i = free;
        loop {
            if i == 0 {
                return count;
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

/// Base-`q` increment, last digit fastest; false on wrap-around.
pub(crate) fn odometer(digits: &mut [u32], q: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}
