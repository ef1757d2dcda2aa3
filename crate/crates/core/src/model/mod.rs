//! The lattice with involution and the membership predicates for the naive
//! local model `M`, the local model `M^loc` and the resolution `𝓜`.
//!
//! `Λ = R₀^{2n}` with ordered basis `e₁…e_n, Πe₁…Πe_n`; a vector is written
//! `(x; y)`. Then `Π(x; y) = (π₀y; x)` and `⟨(x; y), (x'; y')⟩ = x·y' − y·x'`.

use crate::algebra::CoefficientRing;
use crate::error::{Error, Result};
use crate::linalg::charpoly::{charpoly, from_roots};
use crate::linalg::{FreeSummand, Matrix};

/// A point of `M` or `M^loc`: a rank-`n` summand of `Λ ⊗ B`.
pub type ModelPoint<E> = FreeSummand<E>;

/// A point `(F₀, F)` of the resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionPoint<E> {
    pub f0: FreeSummand<E>,
    pub f: FreeSummand<E>,
}

#[derive(Clone, Debug)]
pub struct LatticeModel<R: CoefficientRing> {
    n: usize,
    r: usize,
    s: usize,
    ring: R,
    pi: Matrix<R::Elem>,
    form: Matrix<R::Elem>,
    /// `Π + π` and `Π − π` as matrices.
    pi_plus: Matrix<R::Elem>,
    pi_minus: Matrix<R::Elem>,
    /// `(T+π)^r (T−π)^s`, constant term first.
    target_charpoly: Vec<R::Elem>,
}

impl<R: CoefficientRing> LatticeModel<R> {
    pub fn new(n: usize, r: usize, s: usize, ring: R) -> Result<Self> {
        if n < 3 {
            return Err(Error::Config(format!("n = {n}, need n >= 3")));
        }
        if r + s != n {
            return Err(Error::Config(format!("signature ({r}, {s}) does not sum to n = {n}")));
        }
        let pi_elt = ring.uniformizer();
        let pi0 = ring.mul(&pi_elt, &pi_elt);
        let dim = 2 * n;
        let pi = Matrix::from_fn(dim, dim, |i, j| {
            if i < n && j == i + n {
                pi0.clone()
            } else if i >= n && j + n == i {
                ring.one()
            } else {
                ring.zero()
            }
        });
        let form = Matrix::from_fn(dim, dim, |i, j| {
            if i < n && j == i + n {
                ring.one()
            } else if i >= n && j + n == i {
                ring.from_int(-1)
            } else {
                ring.zero()
            }
        });
        let scalar = Matrix::scalar(&ring, dim, &pi_elt);
        let pi_plus = pi.add(&ring, &scalar)?;
        let pi_minus = pi.sub(&ring, &scalar)?;
        let mut roots = vec![ring.neg(&pi_elt); r];
        roots.extend(std::iter::repeat_n(pi_elt.clone(), s));
        let target_charpoly = from_roots(&ring, &roots);
        let model = LatticeModel {
            n,
            r,
            s,
            ring,
            pi,
            form,
            pi_plus,
            pi_minus,
            target_charpoly,
        };
        model.check_invariants()?;
        Ok(model)
    }

    fn check_invariants(&self) -> Result<()> {
        let ring = &self.ring;
        let dim = 2 * self.n;
        let pi_elt = ring.uniformizer();
        let pi0 = ring.mul(&pi_elt, &pi_elt);
        let fail = |what: &str| Err(Error::Verification(format!("lattice model invariant: {what}")));
        if self.pi.mul(ring, &self.pi)? != Matrix::scalar(ring, dim, &pi0) {
            return fail("Pi^2 != pi0");
        }
        if self.form.transpose() != self.form.neg(ring) || (0..dim).any(|i| !ring.is_zero(&self.form[(i, i)])) {
            return fail("form is not alternating");
        }
        // det J = (-1)^dim · c₀ of the characteristic polynomial
        let c0 = charpoly(ring, &self.form)?[0].clone();
        if !ring.is_unit(&c0) {
            return fail("form is not perfect");
        }
        let lhs = self.pi.transpose().mul(ring, &self.form)?;
        let rhs = self.form.mul(ring, &self.pi)?.neg(ring);
        if lhs != rhs {
            return fail("Pi is not anti-self-adjoint");
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.r, self.s)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn pi(&self) -> &Matrix<R::Elem> {
        &self.pi
    }

    pub fn form(&self) -> &Matrix<R::Elem> {
        &self.form
    }

    pub fn pi_plus(&self) -> &Matrix<R::Elem> {
        &self.pi_plus
    }

    pub fn pi_minus(&self) -> &Matrix<R::Elem> {
        &self.pi_minus
    }

    pub fn target_charpoly(&self) -> &[R::Elem] {
        &self.target_charpoly
    }

    /// `⟨v, w⟩`.
    pub fn pairing(&self, v: &[R::Elem], w: &[R::Elem]) -> R::Elem {
        let ring = &self.ring;
        let n = self.n;
        let mut acc = ring.zero();
        for i in 0..n {
            acc = ring.add(&acc, &ring.mul(&v[i], &w[n + i]));
            acc = ring.sub(&acc, &ring.mul(&v[n + i], &w[i]));
        }
        acc
    }

    /// The summand spanned by `Πe₁, …, Πe_n`; over `k` this is the point `y`.
    pub fn pi_lattice_bar(&self) -> ModelPoint<R::Elem> {
        let ring = &self.ring;
        let n = self.n;
        let basis = Matrix::from_fn(2 * n, n, |i, j| if i == n + j { ring.one() } else { ring.zero() });
        FreeSummand::from_chart_form(ring, basis, (n..2 * n).collect()).expect("unit rows")
    }

    /// Normalizes a `2n × k` column matrix to a summand.
    pub fn summand(&self, columns: &Matrix<R::Elem>) -> Result<FreeSummand<R::Elem>> {
        if columns.rows() != 2 * self.n {
            return Err(Error::Shape(format!(
                "expected {} rows, got {}",
                2 * self.n,
                columns.rows()
            )));
        }
        FreeSummand::from_columns(&self.ring, columns)
    }

    /// A model point from `n` spanning columns.
    pub fn point(&self, columns: &Matrix<R::Elem>) -> Result<ModelPoint<R::Elem>> {
        if columns.cols() != self.n {
            return Err(Error::Shape(format!(
                "expected {} columns, got {}",
                self.n,
                columns.cols()
            )));
        }
        self.summand(columns)
    }

    /// Matrix `X` of `Π|F` in the chart basis of `F` (`B·X = Π·B`), or `None`
    /// if `F` is not `Π`-stable.
    pub fn pi_restriction(&self, f: &FreeSummand<R::Elem>) -> Option<Matrix<R::Elem>> {
        self.restriction(&self.pi, f)
    }

    /// Matrix of `m|F`, if `m` maps `F` into itself.
    pub fn restriction(&self, m: &Matrix<R::Elem>, f: &FreeSummand<R::Elem>) -> Option<Matrix<R::Elem>> {
        let ring = &self.ring;
        let image = m.mul(ring, f.basis()).ok()?;
        let x = image.select_rows(f.chart());
        (f.basis().mul(ring, &x).ok()? == image).then_some(x)
    }

    /// `Bᵗ·J·B = 0`.
    pub fn is_isotropic(&self, f: &FreeSummand<R::Elem>) -> bool {
        let b = f.basis();
        let k = b.cols();
        for a in 0..k {
            let va = b.column(a);
            for c in a + 1..k {
                if !self.ring.is_zero(&self.pairing(&va, &b.column(c))) {
                    return false;
                }
            }
        }
        true
    }

    /// Conditions of the naive model: rank `n`, `Π`-stable, totally
    /// isotropic, and `char(Π|F) = (T+π)^r (T−π)^s`.
    pub fn in_naive(&self, f: &ModelPoint<R::Elem>) -> bool {
        if f.ambient() != 2 * self.n || f.rank() != self.n || !self.is_isotropic(f) {
            return false;
        }
        let Some(x) = self.pi_restriction(f) else {
            return false;
        };
        charpoly(&self.ring, &x)
            .map(|c| c == self.target_charpoly)
            .unwrap_or(false)
    }

    /// `in_naive` plus `⋀^{r+1}(Π−π|F) = 0` and `⋀^{s+1}(Π+π|F) = 0`.
    pub fn in_local(&self, f: &ModelPoint<R::Elem>) -> bool {
        if !self.in_naive(f) {
            return false;
        }
        if self.r == self.s {
            return true;
        }
        self.wedge_conditions(f)
    }

    fn wedge_conditions(&self, f: &ModelPoint<R::Elem>) -> bool {
        let (Some(minus), Some(plus)) = (self.restriction(&self.pi_minus, f), self.restriction(&self.pi_plus, f))
        else {
            return false;
        };
        self.ring.rank_at_most(&minus, self.r) && self.ring.rank_at_most(&plus, self.s)
    }

    /// Conditions of the resolution: `F ∈ M`-shape data, `F₀ ⊆ F` of rank 1,
    /// `(Π+π)F ⊆ F₀` and `(Π−π)F₀ = 0`.
    pub fn in_resolution(&self, f0: &FreeSummand<R::Elem>, f: &FreeSummand<R::Elem>) -> bool {
        let dim = 2 * self.n;
        if f.ambient() != dim || f0.ambient() != dim || f.rank() != self.n || f0.rank() != 1 {
            return false;
        }
        let ring = &self.ring;
        if !f.contains(ring, f0) || !self.is_isotropic(f) {
            return false;
        }
        let Ok(plus_image) = self.pi_plus.mul(ring, f.basis()) else {
            return false;
        };
        if !f0.contains_columns(ring, &plus_image) {
            return false;
        }
        self.pi_minus
            .mul(ring, f0.basis())
            .map(|m| m.is_zero(ring))
            .unwrap_or(false)
    }

    pub fn in_resolution_point(&self, p: &ResolutionPoint<R::Elem>) -> bool {
        self.in_resolution(&p.f0, &p.f)
    }

    /// `(F₀, F) ↦ F`.
    pub fn tau(&self, p: &ResolutionPoint<R::Elem>) -> Result<ModelPoint<R::Elem>> {
        if !self.in_resolution_point(p) {
            return Err(Error::precondition("tau needs a point of the resolution"));
        }
        Ok(p.f.clone())
    }

    /// `(Π+π)F` as a set of column vectors; over `k` this spans `Π̄F`.
    pub fn pi_plus_image(&self, f: &FreeSummand<R::Elem>) -> Matrix<R::Elem> {
        self.pi_plus.mul(&self.ring, f.basis()).expect("shapes agree")
    }
}
