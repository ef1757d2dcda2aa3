//! Reduced row-echelon forms over fields and the canonical subspace type
//! built on them.

use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon<E> {
    /// Same shape as the input; zero rows at the bottom.
    pub reduced: Matrix<E>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination. Pivot entries become 1 and every other entry of
/// a pivot column becomes 0.
pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Echelon<F::Elem> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        let Some(p) = (row..a.rows()).find(|&i| !field.is_zero(&a[(i, col)])) else {
            continue;
        };
        a.swap_rows(row, p);
        let inv = field.inv(&a[(row, col)]).expect("nonzero pivot");
        for j in col..a.cols() {
            a[(row, j)] = field.mul(&inv, &a[(row, j)]);
        }
        for i in 0..a.rows() {
            if i == row || field.is_zero(&a[(i, col)]) {
                continue;
            }
            let factor = a[(i, col)].clone();
            for j in col..a.cols() {
                let d = field.mul(&factor, &a[(row, j)]);
                a[(i, j)] = field.sub(&a[(i, j)], &d);
            }
        }
        pivots.push(col);
        row += 1;
    }
    Echelon {
        reduced: a,
        rank: pivots.len(),
        pivots,
    }
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    rref(field, m).rank
}

/// Determinant by elimination.
pub fn determinant<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Result<F::Elem> {
    if !m.is_square() {
        return Err(Error::Shape("determinant of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut det = field.one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !field.is_zero(&a[(i, col)])) else {
            return Ok(field.zero());
        };
        if p != col {
            a.swap_rows(p, col);
            det = field.neg(&det);
        }
        let pivot = a[(col, col)].clone();
        det = field.mul(&det, &pivot);
        let inv = field.inv(&pivot).unwrap();
        for i in col + 1..n {
            if field.is_zero(&a[(i, col)]) {
                continue;
            }
            let factor = field.mul(&a[(i, col)], &inv);
            for j in col..n {
                let d = field.mul(&factor, &a[(col, j)]);
                a[(i, j)] = field.sub(&a[(i, j)], &d);
            }
        }
    }
    Ok(det)
}

/// Right kernel `{x : m x = 0}`.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Subspace<F::Elem> {
    let ech = rref(field, m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !ech.pivots.contains(c)).collect();
    let vectors: Vec<Vec<F::Elem>> = free
        .iter()
        .map(|&f| {
            let mut x = vec![field.zero(); cols];
            x[f] = field.one();
            for (i, &p) in ech.pivots.iter().enumerate() {
                x[p] = field.neg(&ech.reduced[(i, f)]);
            }
            x
        })
        .collect();
    Subspace::from_vectors(field, cols, &vectors)
}

/// A subspace of `k^ambient`, stored as the reduced row-echelon basis.
/// Two values are equal exactly when the subspaces are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace<E> {
    ambient: usize,
    basis: Matrix<E>,
}

impl<E: Clone> Subspace<E> {
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Reduced row-echelon basis, one basis vector per row.
    pub fn basis(&self) -> &Matrix<E> {
        &self.basis
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[E]> {
        (0..self.basis.rows()).map(|i| self.basis.row(i))
    }

    /// Wraps a matrix already in reduced row-echelon form with no zero rows.
    /// The caller guarantees canonicity.
    pub fn from_reduced_unchecked(ambient: usize, basis: Matrix<E>) -> Self {
        debug_assert_eq!(basis.cols(), ambient);
        Subspace { ambient, basis }
    }
}

impl<E: Clone + Eq + std::fmt::Debug> Subspace<E> {
    pub fn zero<F: Field<Elem = E>>(field: &F, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
        }
    }

    pub fn full<F: Field<Elem = E>>(field: &F, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
        }
    }

    /// Row space of `rows`.
    pub fn span<F: Field<Elem = E>>(field: &F, rows: &Matrix<E>) -> Self {
        let ech = rref(field, rows);
        Subspace {
            ambient: rows.cols(),
            basis: ech.reduced.select_rows(&(0..ech.rank).collect::<Vec<_>>()),
        }
    }

    pub fn from_vectors<F: Field<Elem = E>>(field: &F, ambient: usize, vectors: &[Vec<E>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        let m = Matrix::from_rows(vectors).expect("vectors of equal length");
        assert_eq!(m.cols(), ambient, "vector length differs from ambient dimension");
        Self::span(field, &m)
    }

    pub fn pivots<F: Field<Elem = E>>(&self, field: &F) -> Vec<usize> {
        self.vectors()
            .map(|r| r.iter().position(|x| !field.is_zero(x)).unwrap())
            .collect()
    }

    /// Coefficients of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Option<Vec<E>> {
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.dim());
        for (row, p) in self.vectors().zip(self.pivots(field)) {
            let c = rest[p].clone();
            if !field.is_zero(&c) {
                for (x, b) in rest.iter_mut().zip(row) {
                    *x = field.sub(x, &field.mul(&c, b));
                }
            }
            coords.push(c);
        }
        rest.iter().all(|x| field.is_zero(x)).then_some(coords)
    }

    pub fn contains_vector<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> bool {
        self.coordinates(field, v).is_some()
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> bool {
        other.vectors().all(|v| self.contains_vector(field, v))
    }

    pub fn sum<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let stacked = self.basis.vstack(&other.basis).expect("same ambient");
        Self::span(field, &stacked)
    }

    /// `{x : b·x = 0 for all basis vectors b}` for the standard dot product.
    pub fn annihilator<F: Field<Elem = E>>(&self, field: &F) -> Self {
        if self.dim() == 0 {
            return Self::full(field, self.ambient);
        }
        kernel(field, &self.basis)
    }

    pub fn intersection<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.annihilator(field)
            .sum(field, &other.annihilator(field))
            .annihilator(field)
    }

    /// `{x : ⟨b, x⟩ = 0}` where `⟨u, v⟩ = uᵗ G v`. `G` must be nondegenerate.
    pub fn orthogonal_complement<F: Field<Elem = E>>(&self, field: &F, gram: &Matrix<E>) -> Result<Self> {
        if !gram.is_square() || gram.rows() != self.ambient {
            return Err(Error::Shape("Gram matrix does not match the ambient space".into()));
        }
        if rank(field, gram) != self.ambient {
            return Err(Error::DegenerateForm);
        }
        if self.dim() == 0 {
            return Ok(Self::full(field, self.ambient));
        }
        Ok(kernel(field, &self.basis.mul(field, gram)?))
    }

    /// Image under the linear map `x ↦ m x` (column-vector convention).
    pub fn image<F: Field<Elem = E>>(&self, field: &F, m: &Matrix<E>) -> Self {
        if self.dim() == 0 {
            return Self::zero(field, m.rows());
        }
        let imgs = m.mul(field, &self.basis.transpose()).expect("square action");
        Self::span(field, &imgs.transpose())
    }
}
