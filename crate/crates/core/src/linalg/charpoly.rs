//! Division-free characteristic polynomials (Berkowitz).
//!
//! Works over any commutative ring, in particular over `k[t]/(t^N)` where
//! elimination-based methods would need to divide by non-units.

use crate::algebra::Ring;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// `det(T·I - A)` as coefficients, constant term first; the result has
/// length `n + 1` and is monic.
pub fn charpoly<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<Vec<R::Elem>> {
    if !a.is_square() {
        return Err(Error::Shape("characteristic polynomial of a non-square matrix".into()));
    }
    let n = a.rows();
    // Coefficients of the trailing principal block, highest degree first.
    let mut poly = vec![ring.one()];
    for k in (0..n).rev() {
        let m = n - k - 1;
        let mut toeplitz = Vec::with_capacity(m + 2);
        toeplitz.push(ring.one());
        toeplitz.push(ring.neg(&a[(k, k)]));
        // v runs through B^j C for the trailing block B and column C.
        let mut v: Vec<R::Elem> = (k + 1..n).map(|i| a[(i, k)].clone()).collect();
        for j in 0..m {
            let rv = (0..m).fold(ring.zero(), |acc, i| {
                ring.add(&acc, &ring.mul(&a[(k, k + 1 + i)], &v[i]))
            });
            toeplitz.push(ring.neg(&rv));
            if j + 1 < m {
                v = (0..m)
                    .map(|r| {
                        (0..m).fold(ring.zero(), |acc, c| {
                            ring.add(&acc, &ring.mul(&a[(k + 1 + r, k + 1 + c)], &v[c]))
                        })
                    })
                    .collect();
            }
        }
        let next: Vec<R::Elem> = (0..m + 2)
            .map(|i| {
                (0..=i.min(m)).fold(ring.zero(), |acc, j| {
                    ring.add(&acc, &ring.mul(&toeplitz[i - j], &poly[j]))
                })
            })
            .collect();
        poly = next;
    }
    poly.reverse();
    Ok(poly)
}

/// Product of monic linear factors `∏ (T - root)`, constant term first.
pub fn from_roots<R: Ring>(ring: &R, roots: &[R::Elem]) -> Vec<R::Elem> {
    let mut poly = vec![ring.one()];
    for root in roots {
        let mut next = vec![ring.zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = ring.add(&next[i + 1], c);
            next[i] = ring.sub(&next[i], &ring.mul(root, c));
        }
        poly = next;
    }
    poly
}
