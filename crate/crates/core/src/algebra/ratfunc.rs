//! The rational function field `k(t)`, standing in for the fraction field of
//! the ramified extension with `π = t`.

use crate::algebra::field::FieldSpec;
use crate::algebra::poly::Poly;
use crate::algebra::ring::{CoefficientRing, Field, Ring};
use crate::algebra::series::{TruncatedSeries, TruncatedSeriesRing};
use crate::linalg::{echelon, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunctionField {
    base: FieldSpec,
}

/// `numerator / denominator` with coprime parts and monic denominator.
/// Zero is `0 / 1`. Since the form is canonical, derived equality is
/// equality of functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }
}

impl RationalFunctionField {
    pub fn new(base: FieldSpec) -> Self {
        RationalFunctionField { base }
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    /// Canonical form of `num / den`; `den` must be nonzero.
    pub fn fraction(&self, num: Poly, den: Poly) -> RationalFunction {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return self.zero();
        }
        let g = num.gcd(&self.base, &den);
        let (num, _) = num.div_rem(&self.base, &g);
        let (den, _) = den.div_rem(&self.base, &g);
        let lead_inv = self.base.unit_inverse(&den.leading()).unwrap();
        RationalFunction {
            num: num.scale(&self.base, lead_inv),
            den: den.scale(&self.base, lead_inv),
        }
    }

    pub fn poly(&self, p: Poly) -> RationalFunction {
        self.fraction(p, Poly::constant(1))
    }

    pub fn constant(&self, c: u32) -> RationalFunction {
        self.poly(Poly::constant(c))
    }

    pub fn t(&self) -> RationalFunction {
        self.poly(Poly::monomial(1, 1))
    }

    /// Laurent-free expansion in `k[t]/(t^N)`; requires a denominator with
    /// nonzero constant term.
    pub fn expand(&self, x: &RationalFunction, order: usize) -> Option<TruncatedSeries> {
        let ring = TruncatedSeriesRing::new(self.base.clone(), order);
        let den = ring.series(x.den.coeffs());
        let inv = ring.unit_inverse(&den)?;
        Some(ring.mul(&ring.series(x.num.coeffs()), &inv))
    }
}

impl Ring for RationalFunctionField {
    type Elem = RationalFunction;

    fn zero(&self) -> RationalFunction {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::constant(1),
        }
    }

    fn one(&self) -> RationalFunction {
        self.constant(1)
    }

    fn from_int(&self, v: i64) -> RationalFunction {
        self.constant(self.base.from_int(v))
    }

    fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        if a.den == b.den {
            return self.fraction(a.num.add(&self.base, &b.num), a.den.clone());
        }
        let f = &self.base;
        self.fraction(a.num.mul(f, &b.den).add(f, &b.num.mul(f, &a.den)), a.den.mul(f, &b.den))
    }

    fn neg(&self, a: &RationalFunction) -> RationalFunction {
        RationalFunction {
            num: a.num.neg(&self.base),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        let f = &self.base;
        self.fraction(a.num.mul(f, &b.num), a.den.mul(f, &b.den))
    }

    fn is_zero(&self, a: &RationalFunction) -> bool {
        a.num.is_zero()
    }

    fn is_unit(&self, a: &RationalFunction) -> bool {
        !a.num.is_zero()
    }

    fn unit_inverse(&self, a: &RationalFunction) -> Option<RationalFunction> {
        if a.num.is_zero() {
            return None;
        }
        Some(self.fraction(a.den.clone(), a.num.clone()))
    }

    fn describe(&self) -> String {
        format!("{}(t)", self.base.describe())
    }
}

impl Field for RationalFunctionField {}

impl CoefficientRing for RationalFunctionField {
    fn uniformizer(&self) -> RationalFunction {
        self.t()
    }

    fn conjugate(&self, a: &RationalFunction) -> RationalFunction {
        self.fraction(a.num.reflect(&self.base), a.den.reflect(&self.base))
    }

    fn rank_at_most(&self, m: &Matrix<RationalFunction>, j: usize) -> bool {
        echelon::rank(self, m) <= j
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field(p: u64) -> RationalFunctionField {
        RationalFunctionField::new(FieldSpec::new(p, 1).unwrap())
    }

    #[test]
    fn conjugate_of_mobius_quotient() {
        let k = field(5);
        let one_plus_t = k.poly(Poly::from_coeffs(vec![1, 1]));
        let one_minus_t = k.poly(Poly::from_coeffs(vec![1, 4]));
        let x = k.mul(&one_plus_t, &k.unit_inverse(&one_minus_t).unwrap());
        let expected = k.mul(&one_minus_t, &k.unit_inverse(&one_plus_t).unwrap());
        assert_eq!(k.conjugate(&x), expected);
    }

    #[test]
    fn canonical_form_cancels() {
        let k = field(7);
        let f = k.base().clone();
        let g = Poly::from_coeffs(vec![3, 1]);
        let a = Poly::from_coeffs(vec![1, 2, 5]);
        let b = Poly::from_coeffs(vec![6, 0, 1]);
        let x = k.fraction(a.mul(&f, &g), b.mul(&f, &g));
        let y = k.fraction(a.scale(&f, 2), b.scale(&f, 2));
        assert_eq!(x, y);
        assert_eq!(x.denominator().leading(), 1);
    }

    fn arb_poly(p: u64) -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0..p as u32, 0..4)
    }

    fn arb_den(p: u64) -> impl Strategy<Value = Vec<u32>> {
        (1..p as u32, proptest::collection::vec(0..p as u32, 0..3)).prop_map(|(c0, mut rest)| {
            rest.insert(0, c0);
            rest
        })
    }

    proptest! {
        #[test]
        fn conjugation_is_multiplicative_involution(
            a in arb_poly(5), b in arb_den(5), c in arb_poly(5), d in arb_den(5)
        ) {
            let k = field(5);
            let x = k.fraction(Poly::from_coeffs(a), Poly::from_coeffs(b));
            let y = k.fraction(Poly::from_coeffs(c), Poly::from_coeffs(d));
            prop_assert_eq!(k.conjugate(&k.conjugate(&x)), x.clone());
            prop_assert_eq!(k.conjugate(&k.mul(&x, &y)), k.mul(&k.conjugate(&x), &k.conjugate(&y)));
            prop_assert_eq!(k.conjugate(&k.add(&x, &y)), k.add(&k.conjugate(&x), &k.conjugate(&y)));
        }

        #[test]
        fn arithmetic_agrees_with_series_expansion(
            a in arb_poly(7), b in arb_den(7), c in arb_poly(7), d in arb_den(7)
        ) {
            let k = field(7);
            let series = TruncatedSeriesRing::new(k.base().clone(), 8);
            let x = k.fraction(Poly::from_coeffs(a), Poly::from_coeffs(b));
            let y = k.fraction(Poly::from_coeffs(c), Poly::from_coeffs(d));
            let (sx, sy) = (k.expand(&x, 8).unwrap(), k.expand(&y, 8).unwrap());
            prop_assert_eq!(k.expand(&k.mul(&x, &y), 8).unwrap(), series.mul(&sx, &sy));
            prop_assert_eq!(k.expand(&k.add(&x, &y), 8).unwrap(), series.add(&sx, &sy));
            prop_assert_eq!(k.expand(&k.sub(&x, &y), 8).unwrap(), series.sub(&sx, &sy));
        }
    }
}
