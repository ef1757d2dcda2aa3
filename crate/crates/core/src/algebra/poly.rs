//! Dense univariate polynomials over a finite field.

use std::fmt;

use crate::algebra::field::FieldSpec;
use crate::algebra::ring::Ring;

/// Polynomial with coefficients in `F_q`, constant term first, no trailing
/// zeros (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    coeffs: Vec<u32>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: u32) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `c t^k`.
    pub fn monomial(c: u32, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, f: &FieldSpec, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn neg(&self, f: &FieldSpec) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect(),
        }
    }

    pub fn sub(&self, f: &FieldSpec, other: &Poly) -> Poly {
        self.add(f, &other.neg(f))
    }

    pub fn scale(&self, f: &FieldSpec, c: u32) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|x| f.mul(x, &c)).collect())
    }

    pub fn mul(&self, f: &FieldSpec, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, f: &FieldSpec, divisor: &Poly) -> (Poly, Poly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f.unit_inverse(&divisor.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![0u32; rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + d], &lead_inv);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = f.sub(&rem[k + i], &f.mul(&c, b));
            }
        }
        rem.truncate(d);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Monic scalar multiple; the zero polynomial is returned unchanged.
    pub fn monic(&self, f: &FieldSpec) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = f.unit_inverse(&self.leading()).unwrap();
        self.scale(f, inv)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, f: &FieldSpec, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval(&self, f: &FieldSpec, x: u32) -> u32 {
        self.coeffs.iter().rev().fold(0, |acc, c| f.add(&f.mul(&acc, &x), c))
    }

    /// Substitution `t ↦ -t`.
    pub fn reflect(&self, f: &FieldSpec) -> Poly {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { f.neg(c) } else { *c })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let f = FieldSpec::new(7, 1).unwrap();
        let a = Poly::from_coeffs(vec![3, 0, 5, 1, 6]);
        let b = Poly::from_coeffs(vec![1, 2, 3]);
        let (q, r) = a.div_rem(&f, &b);
        assert!(r.degree().is_none_or(|d| d < 2));
        assert_eq!(q.mul(&f, &b).add(&f, &r), a);
    }

    #[test]
    fn gcd_of_products() {
        let f = FieldSpec::new(5, 1).unwrap();
        let common = Poly::from_coeffs(vec![2, 1]);
        let a = common.mul(&f, &Poly::from_coeffs(vec![1, 1, 1]));
        let b = common.mul(&f, &Poly::from_coeffs(vec![3, 0, 1]));
        assert_eq!(a.gcd(&f, &b), common.monic(&f));
    }

    #[test]
    fn reflect_is_involution() {
        let f = FieldSpec::new(3, 1).unwrap();
        let a = Poly::from_coeffs(vec![1, 2, 0, 1]);
        assert_eq!(a.reflect(&f).reflect(&f), a);
        assert_eq!(a.reflect(&f).coeffs(), &[1, 1, 0, 2]);
    }
}
