//! Free direct summands of `R^m` over a local coefficient ring, presented in
//! a chart.
//!
//! A matrix with `k` columns spans a free direct summand of rank `k` exactly
//! when some `k × k` minor is a unit. Column operations bring the basis into
//! the form where the rows of that minor (the chart) are the identity; over
//! a field this is the transpose of the reduced row-echelon basis.

use crate::algebra::{Field, Ring};
use crate::error::{Error, Result};
use crate::linalg::echelon::Subspace;
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeSummand<E> {
    /// `ambient × rank`, identity on the chart rows.
    basis: Matrix<E>,
    /// `chart[j]` is the row carrying the 1 of column `j`.
    chart: Vec<usize>,
}

impl<E: Clone + Eq + std::fmt::Debug> FreeSummand<E> {
    /// Normalizes the column span of `columns`, choosing for each column the
    /// first row with a unit entry. Fails when no unit minor exists.
    pub fn from_columns<R: Ring<Elem = E>>(ring: &R, columns: &Matrix<E>) -> Result<Self> {
        let mut b = columns.clone();
        let (rows, k) = (b.rows(), b.cols());
        let mut chart = Vec::with_capacity(k);
        for j in 0..k {
            let Some(r) = (0..rows).find(|&r| !chart.contains(&r) && ring.is_unit(&b[(r, j)])) else {
                return Err(Error::NotDirectSummand(format!(
                    "column {j} has no unit entry outside the chart"
                )));
            };
            let inv = ring.unit_inverse(&b[(r, j)]).unwrap();
            for i in 0..rows {
                b[(i, j)] = ring.mul(&b[(i, j)], &inv);
            }
            for jj in 0..k {
                if jj == j || ring.is_zero(&b[(r, jj)]) {
                    continue;
                }
                let c = b[(r, jj)].clone();
                for i in 0..rows {
                    let d = ring.mul(&c, &b[(i, j)]);
                    b[(i, jj)] = ring.sub(&b[(i, jj)], &d);
                }
            }
            chart.push(r);
        }
        Ok(FreeSummand { basis: b, chart })
    }

    /// Takes a basis that is already the identity on the given chart rows,
    /// such as the chart form `[A; I]`.
    pub fn from_chart_form<R: Ring<Elem = E>>(ring: &R, basis: Matrix<E>, chart: Vec<usize>) -> Result<Self> {
        if chart.len() != basis.cols() || chart.iter().any(|&r| r >= basis.rows()) {
            return Err(Error::Shape("chart does not match the basis".into()));
        }
        for (j, &r) in chart.iter().enumerate() {
            for jj in 0..basis.cols() {
                let want = if j == jj { ring.one() } else { ring.zero() };
                if basis[(r, jj)] != want {
                    return Err(Error::NotDirectSummand(format!("chart row {r} is not a unit row")));
                }
            }
        }
        Ok(FreeSummand { basis, chart })
    }

    /// Column form of a subspace over a field; the chart is the pivot set.
    pub fn from_subspace<F: Field<Elem = E>>(field: &F, s: &Subspace<E>) -> Self {
        FreeSummand {
            basis: s.basis().transpose(),
            chart: s.pivots(field),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix<E> {
        &self.basis
    }

    pub fn chart(&self) -> &[usize] {
        &self.chart
    }

    /// Coordinates of `v` in the basis, if `v` lies in the span.
    pub fn coordinates<R: Ring<Elem = E>>(&self, ring: &R, v: &[E]) -> Option<Vec<E>> {
        if v.len() != self.ambient() {
            return None;
        }
        let coords: Vec<E> = self.chart.iter().map(|&r| v[r].clone()).collect();
        let back = self.basis.mul_vec(ring, &coords).ok()?;
        (back == *v).then_some(coords)
    }

    pub fn contains_vector<R: Ring<Elem = E>>(&self, ring: &R, v: &[E]) -> bool {
        self.coordinates(ring, v).is_some()
    }

    /// Whether every column of `m` lies in the span.
    pub fn contains_columns<R: Ring<Elem = E>>(&self, ring: &R, m: &Matrix<E>) -> bool {
        (0..m.cols()).all(|j| self.contains_vector(ring, &m.column(j)))
    }

    pub fn contains<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> bool {
        self.contains_columns(ring, &other.basis)
    }

    /// Canonical subspace over a field.
    pub fn to_subspace<F: Field<Elem = E>>(&self, field: &F) -> Subspace<E> {
        Subspace::span(field, &self.basis.transpose())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldSpec, TruncatedSeriesRing};

    #[test]
    fn chart_rows_become_identity() {
        let r = TruncatedSeriesRing::new(FieldSpec::new(5, 1).unwrap(), 4);
        let t = r.t();
        // columns (t, 1, 0) and (1, 0, 1+t)
        let m = Matrix::from_rows(&[
            vec![t.clone(), r.one()],
            vec![r.one(), r.zero()],
            vec![r.zero(), r.add(&r.one(), &t)],
        ])
        .unwrap();
        let s = FreeSummand::from_columns(&r, &m).unwrap();
        assert_eq!(s.chart(), &[1, 0]);
        for (j, &row) in s.chart().iter().enumerate() {
            for jj in 0..2 {
                let expect = if j == jj { r.one() } else { r.zero() };
                assert_eq!(s.basis()[(row, jj)], expect);
            }
        }
        assert!(s.contains_vector(&r, &m.column(0)));
        assert!(s.contains_vector(&r, &m.column(1)));
        assert!(!s.contains_vector(&r, &[r.zero(), r.zero(), t]));
    }

    #[test]
    fn non_summand_is_rejected() {
        let r = TruncatedSeriesRing::new(FieldSpec::new(3, 1).unwrap(), 3);
        // t·e_1 spans a free submodule that is not a direct summand
        let m = Matrix::from_rows(&[vec![r.t()], vec![r.zero()]]).unwrap();
        assert!(FreeSummand::from_columns(&r, &m).is_err());
    }

    #[test]
    fn agrees_with_subspace_over_fields() {
        let k = FieldSpec::new(7, 1).unwrap();
        let s = Subspace::from_vectors(&k, 4, &[vec![0, 2, 1, 3], vec![1, 1, 0, 5]]);
        let f = FreeSummand::from_subspace(&k, &s);
        let g = FreeSummand::from_columns(&k, &s.basis().transpose()).unwrap();
        assert_eq!(f.to_subspace(&k), s);
        assert_eq!(g.to_subspace(&k), s);
        assert!(f.contains(&k, &g) && g.contains(&k, &f));
    }
}
