//! Finite fields `F_q = F_p[x]/(f)`.
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! where `c_i` are the coefficients of the residue class of degree `< m`.
//! For `m = 1` the encoding is the usual residue `0..p`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::ring::{CoefficientRing, Field, Ring};
use crate::error::{Error, Result};
use crate::linalg::{echelon, Matrix};

/// Largest field order for which addition and multiplication tables are built.
pub const TABLE_LIMIT: u64 = 1024;

#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Inner>,
}

struct Inner {
    p: u64,
    m: u32,
    q: u64,
    /// Monic modulus over `F_p`, low degree first, length `m + 1`.
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^m` with `p` prime; `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

impl FieldSpec {
    /// The field with `p^m` elements, presented by the smallest monic
    /// irreducible modulus of degree `m` (ordered by its coefficient
    /// vector read from the top coefficient down).
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p == 2 {
            return Err(Error::InvalidField("characteristic 2 is excluded".into()));
        }
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or_else(|| Error::InvalidField(format!("{p}^{m} is too large")))?;
        if m > 1 && q > TABLE_LIMIT {
            return Err(Error::InvalidField(format!(
                "extension fields are limited to {TABLE_LIMIT} elements"
            )));
        }
        let modulus = smallest_irreducible(p, m as usize);
        let mut inner = Inner {
            p,
            m,
            q,
            modulus,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(FieldSpec { inner: Arc::new(inner) })
    }

    /// The field of order `q`, which must be an odd prime power.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        Self::new(p, m)
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    pub fn order(&self) -> u64 {
        self.inner.q
    }

    /// Coefficients of the modulus, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.inner.q as u32
    }

    /// Addition table indexed by `a * q + b`, if the field is small enough.
    pub fn add_table(&self) -> Option<&[u32]> {
        self.inner.tables.as_ref().map(|t| t.add.as_slice())
    }

    pub fn mul_table(&self) -> Option<&[u32]> {
        self.inner.tables.as_ref().map(|t| t.mul.as_slice())
    }

    /// Euler's criterion. Zero is rejected.
    pub fn is_square(&self, a: u32) -> Result<bool> {
        if a == 0 {
            return Err(Error::precondition("is_square called on zero"));
        }
        Ok(self.pow(&a, (self.inner.q - 1) / 2) == 1)
    }

    /// Smallest multiplicative generator in the integer encoding.
    pub fn generator(&self) -> u32 {
        let order = self.inner.q - 1;
        let mut primes = Vec::new();
        let mut rest = order;
        let mut d = 2;
        while d * d <= rest {
            if rest % d == 0 {
                primes.push(d);
                while rest % d == 0 {
                    rest /= d;
                }
            }
            d += 1;
        }
        if rest > 1 {
            primes.push(rest);
        }
        (1..self.inner.q as u32)
            .find(|&g| primes.iter().all(|&l| self.pow(&g, order / l) != 1))
            .expect("finite fields have cyclic unit groups")
    }

    fn decode(&self, a: u32) -> Vec<u64> {
        decode(self.inner.p, self.inner.m as usize, a as u64)
    }

    /// Coefficients of `a` as a polynomial in the generator, low degree first.
    pub fn coefficients(&self, a: u32) -> Vec<u64> {
        self.decode(a)
    }
}

fn decode(p: u64, m: usize, mut a: u64) -> Vec<u64> {
    let mut out = vec![0; m];
    for c in out.iter_mut() {
        *c = a % p;
        a /= p;
    }
    out
}

fn encode(p: u64, coeffs: &[u64]) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

// Polynomials over F_p, low degree first, used only to set up the field.

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, p), m, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

/// Ben-Or test: `f` of degree `m` is irreducible iff
/// `gcd(x^{p^i} - x, f) = 1` for `1 <= i <= m/2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut xp = x.clone();
    for _ in 1..=m / 2 {
        xp = poly_powmod(&xp, p, f, p);
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        if poly_gcd(&diff, f, p).len() > 1 {
            return false;
        }
    }
    true
}

fn smallest_irreducible(p: u64, m: usize) -> Vec<u64> {
    let count = p.pow(m as u32);
    for code in 0..count {
        let mut f = decode(p, m, code);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.q as usize;
    let (p, m) = (inner.p, inner.m as usize);
    let mut add = vec![0u32; q * q];
    let mut mul = vec![0u32; q * q];
    let mut neg = vec![0u32; q];
    let mut inv = vec![0u32; q];
    let decoded: Vec<Vec<u64>> = (0..q as u64).map(|a| decode(p, m, a)).collect();
    for a in 0..q {
        let na: Vec<u64> = decoded[a].iter().map(|&c| (p - c) % p).collect();
        neg[a] = encode(p, &na) as u32;
        for b in 0..q {
            let s: Vec<u64> = decoded[a].iter().zip(&decoded[b]).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = encode(p, &s) as u32;
            let mut prod = poly_rem(&poly_mul(&decoded[a], &decoded[b], p), &inner.modulus, p);
            prod.resize(m, 0);
            mul[a * q + b] = encode(p, &prod) as u32;
        }
    }
    for a in 1..q {
        inv[a] = (1..q)
            .find(|&b| mul[a * q + b] == 1)
            .expect("nonzero elements of a field are invertible") as u32;
    }
    Tables { add, mul, neg, inv }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec(F_{}, modulus {:?})", self.inner.q, self.inner.modulus)
    }
}

impl Ring for FieldSpec {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.inner.p as i64) as u32
    }

    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        match &self.inner.tables {
            Some(t) => t.add[*a as usize * self.inner.q as usize + *b as usize],
            None => ((*a as u64 + *b as u64) % self.inner.p) as u32,
        }
    }

    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        match &self.inner.tables {
            Some(t) => t.neg[*a as usize],
            None => ((self.inner.p - *a as u64) % self.inner.p) as u32,
        }
    }

    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        match &self.inner.tables {
            Some(t) => t.mul[*a as usize * self.inner.q as usize + *b as usize],
            None => ((*a as u64 * *b as u64) % self.inner.p) as u32,
        }
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn is_unit(&self, a: &u32) -> bool {
        *a != 0
    }

    fn unit_inverse(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        Some(match &self.inner.tables {
            Some(t) => t.inv[*a as usize],
            None => inv_mod(*a as u64, self.inner.p) as u32,
        })
    }

    fn describe(&self) -> String {
        format!("F_{}", self.inner.q)
    }
}

impl Field for FieldSpec {}

impl CoefficientRing for FieldSpec {
    fn uniformizer(&self) -> u32 {
        0
    }

    fn conjugate(&self, a: &u32) -> u32 {
        *a
    }

    fn rank_at_most(&self, m: &Matrix<u32>, j: usize) -> bool {
        echelon::rank(self, m) <= j
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_modulus_is_x() {
        let f = FieldSpec::new(3, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 3);
    }

    #[test]
    fn f9_modulus_is_x2_plus_1() {
        let f = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_char_two_and_composites() {
        assert!(matches!(FieldSpec::new(2, 1), Err(Error::InvalidField(_))));
        assert!(matches!(FieldSpec::new(9, 1), Err(Error::InvalidField(_))));
        assert!(matches!(FieldSpec::new(3, 0), Err(Error::InvalidField(_))));
        assert!(FieldSpec::of_order(12).is_err());
    }

    #[test]
    fn euler_criterion_examples() {
        let f5 = FieldSpec::new(5, 1).unwrap();
        assert!(f5.is_square(f5.from_int(-1)).unwrap());
        let f7 = FieldSpec::new(7, 1).unwrap();
        assert!(!f7.is_square(f7.from_int(-1)).unwrap());
        assert!(f7.is_square(0).is_err());
    }

    #[test]
    fn generator_of_f9_is_not_a_square() {
        let f9 = FieldSpec::new(3, 2).unwrap();
        let g = f9.generator();
        let squares: Vec<u32> = f9.elements().map(|x| f9.mul(&x, &x)).collect();
        assert!(!squares.contains(&g));
        assert!(!f9.is_square(g).unwrap());
    }

    #[test]
    fn is_square_matches_square_table_up_to_49() {
        for q in (3..=49u64).filter(|&q| q % 2 == 1 && prime_power(q).is_some()) {
            let f = FieldSpec::of_order(q).unwrap();
            let mut table = vec![false; q as usize];
            for x in f.elements() {
                table[f.mul(&x, &x) as usize] = true;
            }
            for a in 1..q as u32 {
                assert_eq!(f.is_square(a).unwrap(), table[a as usize], "q={q}, a={a}");
            }
        }
    }

    #[test]
    fn field_axioms_small_extensions() {
        for (p, m) in [(3, 2), (5, 2), (3, 3), (7, 2)] {
            let f = FieldSpec::new(p, m).unwrap();
            let q = f.order() as u32;
            for a in 0..q {
                assert_eq!(f.add(&a, &f.neg(&a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(&a, &f.unit_inverse(&a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                    for c in [0, 1, q - 1] {
                        let lhs = f.mul(&a, &f.add(&b, &c));
                        let rhs = f.add(&f.mul(&a, &b), &f.mul(&a, &c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn large_prime_field_without_tables() {
        let f = FieldSpec::new(1_000_003, 1).unwrap();
        assert!(f.add_table().is_none());
        let a = 123_456;
        assert_eq!(f.mul(&a, &f.unit_inverse(&a).unwrap()), 1);
    }

    #[test]
    fn irreducibility_check() {
        // x^2 + 1 over F_5 splits since 2^2 = -1.
        assert!(!is_irreducible(&[1, 0, 1], 5));
        assert!(is_irreducible(&[2, 0, 1], 5));
        // (x^2 + 1)^2 over F_3 has no roots but is reducible.
        assert!(!is_irreducible(&[1, 0, 2, 0, 1], 3));
    }
}
