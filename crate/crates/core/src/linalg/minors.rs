//! Minor-vanishing tests over arbitrary commutative rings.
//!
//! Over `k[t]/(t^N)` the condition `⋀^{j+1} φ = 0` means every
//! `(j+1) × (j+1)` minor of the matrix of `φ` is zero in the ring, which is
//! stronger than a rank statement over the residue field.

use crate::algebra::Ring;
use crate::linalg::Matrix;

/// Whether every `k × k` minor of `m` is zero. Trivially true when `k`
/// exceeds either dimension; for `k = 0` the empty minor is 1.
///
/// For each set of `k` rows, the minors against all column subsets are
/// built bottom-up by Laplace expansion along the last row, memoized by
/// column mask.
pub fn all_minors_vanish<R: Ring>(ring: &R, m: &Matrix<R::Elem>, k: usize) -> bool {
    let (rows, cols) = (m.rows(), m.cols());
    if k == 0 {
        return false;
    }
    if k > rows || k > cols {
        return true;
    }
    assert!(cols <= 20, "minor enumeration limited to 20 columns");
    let mut row_set: Vec<usize> = (0..k).collect();
    loop {
        if !minors_for_rows_vanish(ring, m, &row_set) {
            return false;
        }
        if !next_combination(&mut row_set, rows) {
            return true;
        }
    }
}

fn minors_for_rows_vanish<R: Ring>(ring: &R, m: &Matrix<R::Elem>, row_set: &[usize]) -> bool {
    let cols = m.cols();
    let k = row_set.len();
    // layer[i] holds determinants of rows row_set[..i] against each column
    // mask with i bits.
    let mut prev: Vec<(u32, R::Elem)> = vec![(0, ring.one())];
    for (depth, &r) in row_set.iter().enumerate() {
        let mut next: std::collections::BTreeMap<u32, R::Elem> = std::collections::BTreeMap::new();
        for (mask, det) in &prev {
            if ring.is_zero(det) {
                continue;
            }
            for c in 0..cols {
                let bit = 1u32 << c;
                if mask & bit != 0 {
                    continue;
                }
                let entry = &m[(r, c)];
                if ring.is_zero(entry) {
                    continue;
                }
                let new_mask = mask | bit;
                // Sign of expanding along the last row at column c.
                let above = (new_mask >> (c + 1)).count_ones();
                let mut term = ring.mul(entry, det);
                if above % 2 == 1 {
                    term = ring.neg(&term);
                }
                let slot = next.entry(new_mask).or_insert_with(|| ring.zero());
                *slot = ring.add(slot, &term);
            }
        }
        prev = next.into_iter().collect();
        if depth + 1 == k {
            return prev.iter().all(|(_, d)| ring.is_zero(d));
        }
    }
    true
}

/// Advances a sorted `k`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(set: &mut [usize], n: usize) -> bool {
    let k = set.len();
    for i in (0..k).rev() {
        if set[i] < n - k + i {
            set[i] += 1;
            for j in i + 1..k {
                set[j] = set[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
