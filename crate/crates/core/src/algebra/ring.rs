use std::fmt::Debug;
use std::hash::Hash;

use crate::linalg::{minors, Matrix};

/// A commutative ring with identity, used as an explicit context object.
///
/// Elements are plain values; every operation goes through the ring so that
/// runtime parameters (the characteristic, the truncation order) stay out of
/// the element representation.
pub trait Ring: Clone + Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Whether `a` is invertible. All rings used here are local, so the
    /// non-units form an ideal.
    fn is_unit(&self, a: &Self::Elem) -> bool;

    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Human-readable name, used in reports.
    fn describe(&self) -> String;
}

/// Marker for rings in which every nonzero element is a unit.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.unit_inverse(a)
    }
}

/// A coefficient ring of the lattice model: it carries the image of the
/// uniformizer `π = t` (with `π₀ = t²`) and the conjugation `t ↦ -t`.
pub trait CoefficientRing: Ring {
    /// Image of `π`. Zero in the residue field.
    fn uniformizer(&self) -> Self::Elem;

    fn conjugate(&self, a: &Self::Elem) -> Self::Elem;

    /// Whether every `(j+1) × (j+1)` minor of `m` vanishes in the ring.
    ///
    /// Over a field this is `rank(m) <= j`; fields override this with an
    /// echelon-form computation.
    fn rank_at_most(&self, m: &Matrix<Self::Elem>, j: usize) -> bool {
        minors::all_minors_vanish(self, m, j + 1)
    }
}
