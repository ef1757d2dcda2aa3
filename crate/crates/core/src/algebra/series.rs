//! The truncated power series ring `k[t]/(t^N)`.

use crate::algebra::field::FieldSpec;
use crate::algebra::ring::{CoefficientRing, Ring};

/// `k[t]/(t^N)` over a finite field `k`, with `π = t` and `π₀ = t²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeriesRing {
    base: FieldSpec,
    order: usize,
}

/// Coefficients of `t^0 .. t^{N-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncatedSeries {
    coeffs: Vec<u32>,
}

impl TruncatedSeries {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> u32 {
        self.coeffs[0]
    }

    /// `t`-adic valuation, `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }
}

impl TruncatedSeriesRing {
    pub fn new(base: FieldSpec, order: usize) -> Self {
        assert!(order >= 1, "truncation order must be at least 1");
        TruncatedSeriesRing { base, order }
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Builds an element from its leading coefficients; missing ones are
    /// zero and coefficients past `t^{N-1}` are dropped.
    pub fn series(&self, coeffs: &[u32]) -> TruncatedSeries {
        let mut c: Vec<u32> = coeffs.iter().take(self.order).copied().collect();
        c.resize(self.order, 0);
        TruncatedSeries { coeffs: c }
    }

    pub fn constant(&self, c: u32) -> TruncatedSeries {
        self.series(&[c])
    }

    /// `c t^k`.
    pub fn monomial(&self, c: u32, k: usize) -> TruncatedSeries {
        let mut coeffs = vec![0; self.order];
        if k < self.order {
            coeffs[k] = c;
        }
        TruncatedSeries { coeffs }
    }

    pub fn t(&self) -> TruncatedSeries {
        self.monomial(1, 1)
    }
}

impl Ring for TruncatedSeriesRing {
    type Elem = TruncatedSeries;

    fn zero(&self) -> TruncatedSeries {
        self.series(&[])
    }

    fn one(&self) -> TruncatedSeries {
        self.constant(1)
    }

    fn from_int(&self, v: i64) -> TruncatedSeries {
        self.constant(self.base.from_int(v))
    }

    fn add(&self, a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| self.base.add(x, y))
                .collect(),
        }
    }

    fn neg(&self, a: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: a.coeffs.iter().map(|x| self.base.neg(x)).collect(),
        }
    }

    fn mul(&self, a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order;
        let mut out = vec![0u32; n];
        for (i, x) in a.coeffs.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.coeffs[..n - i].iter().enumerate() {
                out[i + j] = self.base.add(&out[i + j], &self.base.mul(x, y));
            }
        }
        TruncatedSeries { coeffs: out }
    }

    fn is_zero(&self, a: &TruncatedSeries) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    fn is_unit(&self, a: &TruncatedSeries) -> bool {
        a.coeffs[0] != 0
    }

    fn unit_inverse(&self, a: &TruncatedSeries) -> Option<TruncatedSeries> {
        let c0_inv = self.base.unit_inverse(&a.coeffs[0])?;
        let mut inv = vec![0u32; self.order];
        inv[0] = c0_inv;
        for k in 1..self.order {
            let mut acc = 0;
            for i in 1..=k {
                acc = self.base.add(&acc, &self.base.mul(&a.coeffs[i], &inv[k - i]));
            }
            inv[k] = self.base.neg(&self.base.mul(&c0_inv, &acc));
        }
        Some(TruncatedSeries { coeffs: inv })
    }

    fn describe(&self) -> String {
        format!("{}[t]/(t^{})", self.base.describe(), self.order)
    }
}

impl CoefficientRing for TruncatedSeriesRing {
    fn uniformizer(&self) -> TruncatedSeries {
        self.t()
    }

    fn conjugate(&self, a: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: a
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { self.base.neg(c) } else { *c })
                .collect(),
        }
    }
}
