//! Enumeration of the `F_q`-points of Grassmannians.
//!
//! Every `d`-dimensional subspace of `F_q^n` has a unique reduced
//! row-echelon basis, determined by its pivot columns and by the values of
//! the free entries (right of the pivot, outside pivot columns). Pivot
//! patterns are visited in colexicographic order and the free entries are
//! counted in base `q`, first free entry most significant.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::FieldSpec;
use crate::linalg::echelon::Subspace;
use crate::linalg::minors::next_combination;
use crate::linalg::Matrix;

/// Number of `d`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: usize, d: usize, q: u64) -> u128 {
    if d > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    num / den
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PivotPattern {
    ambient: usize,
    pivots: Vec<usize>,
}

impl PivotPattern {
    pub fn new(ambient: usize, pivots: Vec<usize>) -> Option<Self> {
        let ok = pivots.windows(2).all(|w| w[0] < w[1]) && pivots.iter().all(|&p| p < ambient);
        ok.then_some(PivotPattern { ambient, pivots })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Flat buffer offsets (`row * ambient + col`) of the free entries.
    pub fn free_offsets(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (row, &p) in self.pivots.iter().enumerate() {
            for col in p + 1..self.ambient {
                if !self.pivots.contains(&col) {
                    out.push(row * self.ambient + col);
                }
            }
        }
        out
    }

    pub fn cell_size(&self, q: u64) -> u128 {
        (q as u128).pow(self.free_offsets().len() as u32)
    }

    fn base_buffer(&self) -> Vec<u32> {
        let mut buf = vec![0u32; self.dim() * self.ambient];
        for (row, &p) in self.pivots.iter().enumerate() {
            buf[row * self.ambient + p] = 1;
        }
        buf
    }
}

/// All pivot patterns for `d`-dimensional subspaces of an `ambient`-space,
/// in colexicographic order.
pub fn pivot_patterns(ambient: usize, d: usize) -> Vec<PivotPattern> {
    if d > ambient {
        return Vec::new();
    }
    let mut sets = Vec::new();
    let mut set: Vec<usize> = (0..d).collect();
    loop {
        sets.push(set.clone());
        if d == 0 || !next_combination(&mut set, ambient) {
            break;
        }
    }
    sets.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    sets.into_iter()
        .map(|pivots| PivotPattern { ambient, pivots })
        .collect()
}

/// A slice of one pivot pattern's cell: the leading free entries are fixed
/// to `prefix`, the rest range freely. Units are the scheduling granularity
/// for parallel sweeps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorkUnit {
    pub pattern: usize,
    pub prefix: Vec<u32>,
}

/// Target number of subspaces per work unit.
const UNIT_TARGET: u128 = 1 << 16;

pub fn work_units(patterns: &[PivotPattern], q: u64) -> Vec<WorkUnit> {
    let mut units = Vec::new();
    for (idx, pat) in patterns.iter().enumerate() {
        let free = pat.free_offsets().len();
        let mut tail = 0;
        while tail < free && (q as u128).pow(tail as u32 + 1) <= UNIT_TARGET {
            tail += 1;
        }
        let prefix_len = free - tail;
        let mut prefix = vec![0u32; prefix_len];
        loop {
            units.push(WorkUnit {
                pattern: idx,
                prefix: prefix.clone(),
            });
            if !increment(&mut prefix, q as u32) {
                break;
            }
        }
    }
    units
}

/// Base-`q` increment with the last digit fastest; false on wrap-around.
fn increment(digits: &mut [u32], q: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

/// Calls `visit` with the echelon basis (row-major, `d × ambient`) of every
/// subspace in the given work unit.
pub fn visit_unit(pattern: &PivotPattern, prefix: &[u32], q: u64, visit: &mut impl FnMut(&[u32])) {
    let offsets = pattern.free_offsets();
    let mut buf = pattern.base_buffer();
    for (o, v) in offsets.iter().zip(prefix) {
        buf[*o] = *v;
    }
    let tail = &offsets[prefix.len()..];
    let q = q as u32;
    loop {
        visit(&buf);
        // odometer on the tail, last entry fastest
        let mut i = tail.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            let slot = &mut buf[tail[i]];
            *slot += 1;
            if *slot < q {
                break;
            }
            *slot = 0;
        }
    }
}

/// Sequential sweep over all `d`-dimensional subspaces of `F_q^ambient`.
pub fn for_each_subspace(field: &FieldSpec, ambient: usize, d: usize, mut visit: impl FnMut(&[u32])) {
    let q = field.order();
    for pat in pivot_patterns(ambient, d) {
        visit_unit(&pat, &[], q, &mut visit);
    }
}

/// Parallel fold over all subspaces. Partial results are merged in work-unit
/// order, so the outcome does not depend on scheduling or worker count.
pub fn par_fold_subspaces<T, I, F, M>(field: &FieldSpec, ambient: usize, d: usize, init: I, fold: F, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync,
    F: Fn(&mut T, &[u32]) + Sync,
    M: Fn(T, T) -> T,
{
    let q = field.order();
    let patterns = pivot_patterns(ambient, d);
    let units = work_units(&patterns, q);
    let partials: Vec<T> = units
        .par_iter()
        .map(|u| {
            let mut acc = init();
            visit_unit(&patterns[u.pattern], &u.prefix, q, &mut |rows| fold(&mut acc, rows));
            acc
        })
        .collect();
    partials.into_iter().fold(init(), merge)
}

/// Per-pattern subspace counts obtained by sweeping; used to check that the
/// partition sums to the Gaussian binomial.
pub fn count_by_pattern(field: &FieldSpec, ambient: usize, d: usize) -> Vec<(PivotPattern, u64)> {
    let q = field.order();
    pivot_patterns(ambient, d)
        .into_par_iter()
        .map(|pat| {
            let mut n = 0u64;
            visit_unit(&pat, &[], q, &mut |_| n += 1);
            (pat, n)
        })
        .collect()
}

/// Iterator over all `d`-dimensional subspaces in canonical order.
pub struct GrassmannIter {
    field: FieldSpec,
    ambient: usize,
    patterns: Vec<PivotPattern>,
    pattern: usize,
    offsets: Vec<usize>,
    buf: Vec<u32>,
    started: bool,
}

pub fn grassmann_iter(field: &FieldSpec, ambient: usize, d: usize) -> GrassmannIter {
    let patterns = pivot_patterns(ambient, d);
    let (offsets, buf) = patterns
        .first()
        .map(|p| (p.free_offsets(), p.base_buffer()))
        .unwrap_or_default();
    GrassmannIter {
        field: field.clone(),
        ambient,
        patterns,
        pattern: 0,
        offsets,
        buf,
        started: false,
    }
}

impl GrassmannIter {
    fn advance(&mut self) -> bool {
        let q = self.field.order() as u32;
        for &o in self.offsets.iter().rev() {
            self.buf[o] += 1;
            if self.buf[o] < q {
                return true;
            }
            self.buf[o] = 0;
        }
        self.pattern += 1;
        match self.patterns.get(self.pattern) {
            Some(p) => {
                self.offsets = p.free_offsets();
                self.buf = p.base_buffer();
                true
            }
            None => false,
        }
    }
}

impl Iterator for GrassmannIter {
    type Item = Subspace<u32>;

    fn next(&mut self) -> Option<Subspace<u32>> {
        if self.pattern >= self.patterns.len() {
            return None;
        }
        if self.started && !self.advance() {
            return None;
        }
        self.started = true;
        let d = self.patterns[self.pattern].dim();
        let basis = Matrix::new(d, self.ambient, self.buf.clone()).unwrap();
        Some(Subspace::from_reduced_unchecked(self.ambient, basis))
    }
}

/// Canonical subspace from an echelon buffer produced by the sweeps.
pub fn subspace_from_buffer(ambient: usize, rows: &[u32]) -> Subspace<u32> {
    let d = rows.len() / ambient.max(1);
    Subspace::from_reduced_unchecked(ambient, Matrix::new(d, ambient, rows.to_vec()).unwrap())
}

/// Lines of `F_q^n` as normalized vectors (first nonzero coordinate 1).
pub fn projective_points(field: &FieldSpec, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for_each_subspace(field, n, 1, |row| out.push(row.to_vec()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::echelon;
    use std::collections::HashSet;

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(4, 2, 3), 130);
        assert_eq!(gaussian_binomial(6, 3, 3), 33_880);
        assert_eq!(gaussian_binomial(5, 0, 7), 1);
        assert_eq!(gaussian_binomial(5, 5, 7), 1);
        assert_eq!(gaussian_binomial(3, 1, 3), 13);
        assert_eq!(gaussian_binomial(2, 3, 3), 0);
    }

    /// Independent count: ordered bases of d-spaces divided by |GL_d|.
    fn ordered_basis_count(n: u32, d: u32, q: u128) -> u128 {
        let num: u128 = (0..d).map(|i| q.pow(n) - q.pow(i)).product();
        let den: u128 = (0..d).map(|i| q.pow(d) - q.pow(i)).product();
        num / den
    }

    #[test]
    fn gaussian_binomial_matches_basis_counting() {
        for q in [3u64, 5, 7, 9] {
            for n in 0..7 {
                for d in 0..=n {
                    assert_eq!(
                        gaussian_binomial(n as usize, d as usize, q),
                        ordered_basis_count(n, d, q as u128)
                    );
                }
            }
        }
    }

    #[test]
    fn colex_order() {
        let pats = pivot_patterns(4, 2);
        let sets: Vec<Vec<usize>> = pats.iter().map(|p| p.pivots().to_vec()).collect();
        assert_eq!(
            sets,
            vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]
        );
    }

    #[test]
    fn zero_dimensional_space_once() {
        let f = FieldSpec::new(5, 1).unwrap();
        let all: Vec<_> = grassmann_iter(&f, 4, 0).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].dim(), 0);
    }

    #[test]
    fn iterator_yields_distinct_canonical_subspaces() {
        let f = FieldSpec::new(3, 1).unwrap();
        let all: Vec<_> = grassmann_iter(&f, 4, 2).collect();
        assert_eq!(all.len(), 130);
        let set: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), 130);
        for s in &all {
            let again = Subspace::span(&f, s.basis());
            assert_eq!(&again, s);
            assert_eq!(echelon::rank(&f, s.basis()), 2);
        }
    }

    #[test]
    fn exhaustive_counts_small_instances() {
        for q in [3u64, 5, 7, 9] {
            let f = FieldSpec::of_order(q).unwrap();
            for n in 0..=6usize {
                for d in 0..=n {
                    let expected = gaussian_binomial(n, d, q);
                    if (q as f64).powi((n * d) as i32) > 1e9 || expected > 2_000_000 {
                        continue;
                    }
                    let by_pattern = count_by_pattern(&f, n, d);
                    let total: u64 = by_pattern.iter().map(|(_, c)| c).sum();
                    assert_eq!(total as u128, expected, "q={q} n={n} d={d}");
                    for (p, c) in by_pattern {
                        assert_eq!(p.cell_size(q), c as u128);
                    }
                }
            }
        }
    }

    #[test]
    fn parallel_fold_matches_sequential_order() {
        let f = FieldSpec::new(3, 1).unwrap();
        let mut seq = Vec::new();
        for_each_subspace(&f, 6, 3, |r| seq.push(r.to_vec()));
        let par = par_fold_subspaces(
            &f,
            6,
            3,
            Vec::new,
            |acc: &mut Vec<Vec<u32>>, r| acc.push(r.to_vec()),
            |mut a, b| {
                a.extend(b);
                a
            },
        );
        assert_eq!(seq.len(), 33_880);
        assert_eq!(seq, par);
        let iter: Vec<Vec<u32>> = grassmann_iter(&f, 6, 3).map(|s| s.basis().data().to_vec()).collect();
        assert_eq!(seq, iter);
    }

    #[test]
    fn projective_line_count() {
        let f = FieldSpec::new(5, 1).unwrap();
        assert_eq!(projective_points(&f, 3).len(), 31);
    }
}
