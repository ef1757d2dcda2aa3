//! The generic fiber over `k(t)`: eigenprojectors of `Π`, the splitting
//! `F = F₀ ⊕ F₁`, the inverse construction from a rank-`s` subspace of the
//! `+π` eigenspace, and the section of `τ`.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{CoefficientRing, Poly, RationalFunction, RationalFunctionField, Ring};
use crate::error::{Error, Result};
use crate::linalg::charpoly::charpoly;
use crate::linalg::{FreeSummand, Matrix, Subspace};
use crate::model::{LatticeModel, ResolutionPoint};

pub type GenericModel = LatticeModel<RationalFunctionField>;
pub type GenericSubspace = Subspace<RationalFunction>;

/// `P₊ = (Π + π)/(2π)` and `P₋ = (π − Π)/(2π)`.
#[derive(Clone, Debug)]
pub struct EigenProjectors {
    pub plus: Matrix<RationalFunction>,
    pub minus: Matrix<RationalFunction>,
}

impl EigenProjectors {
    pub fn new(model: &GenericModel) -> Result<Self> {
        let k = model.ring();
        let two_pi = k.mul(&k.from_int(2), &k.uniformizer());
        let inv = k
            .unit_inverse(&two_pi)
            .ok_or_else(|| Error::precondition("2π is not invertible"))?;
        let plus = model.pi_plus().scale(k, &inv);
        let minus = model.pi_minus().neg(k).scale(k, &inv);
        let p = EigenProjectors { plus, minus };
        p.check(model)?;
        Ok(p)
    }

    /// Idempotent, complementary, orthogonal, and eigen for `Π`.
    pub fn check(&self, model: &GenericModel) -> Result<()> {
        let k = model.ring();
        let dim = 2 * model.n();
        let id = Matrix::identity(k, dim);
        let zero = Matrix::zeros(k, dim, dim);
        let pi = k.uniformizer();
        let (p, m) = (&self.plus, &self.minus);
        let ok = p.mul(k, p)? == *p
            && m.mul(k, m)? == *m
            && p.add(k, m)? == id
            && p.mul(k, m)? == zero
            && model.pi().mul(k, p)? == p.scale(k, &pi)
            && model.pi().mul(k, m)? == m.scale(k, &k.neg(&pi));
        if ok {
            Ok(())
        } else {
            Err(Error::Verification("eigenprojector identities fail".into()))
        }
    }

    /// `G₀ = image(P₊)`, the `+π` eigenspace.
    pub fn g0(&self, model: &GenericModel) -> GenericSubspace {
        Subspace::span(model.ring(), &self.plus.transpose())
    }

    /// `G₁ = image(P₋)`, the `−π` eigenspace.
    pub fn g1(&self, model: &GenericModel) -> GenericSubspace {
        Subspace::span(model.ring(), &self.minus.transpose())
    }
}

fn summand(model: &GenericModel, s: &GenericSubspace) -> FreeSummand<RationalFunction> {
    FreeSummand::from_subspace(model.ring(), s)
}

/// `F ↦ (P₊F, P₋F)`; `P₊F` has rank `s`, `P₋F` rank `r`.
pub fn idempotent_split(model: &GenericModel, f: &GenericSubspace) -> Result<(GenericSubspace, GenericSubspace)> {
    let k = model.ring();
    if !model.in_naive(&summand(model, f)) {
        return Err(Error::precondition("F is not a point of the naive model"));
    }
    let proj = EigenProjectors::new(model)?;
    let f0 = f.image(k, &proj.plus);
    let f1 = f.image(k, &proj.minus);
    let (r, s) = model.signature();
    if f0.dim() != s || f1.dim() != r || f0.sum(k, &f1) != *f {
        return Err(Error::Verification(format!(
            "split has ranks ({}, {}), expected ({s}, {r})",
            f0.dim(),
            f1.dim()
        )));
    }
    let orthogonal = f0
        .vectors()
        .all(|a| f1.vectors().all(|b| k.is_zero(&model.pairing(a, b))));
    if !orthogonal {
        return Err(Error::Verification("⟨F₀, F₁⟩ ≠ 0".into()));
    }
    Ok((f0, f1))
}

/// `W ↦ W ⊕ (G₁ ∩ W^⊥)` for `W ⊆ G₀` of rank `s`. Under the perfect pairing
/// `G₀ × G₁`, the second summand is the annihilator of `W`, a point of
/// `Gr(n − s, G₁)`.
pub fn from_grassmannian(model: &GenericModel, w: &GenericSubspace) -> Result<GenericSubspace> {
    let k = model.ring();
    let proj = EigenProjectors::new(model)?;
    let g0 = proj.g0(model);
    if !g0.contains(k, w) {
        return Err(Error::precondition("W is not contained in the +π eigenspace"));
    }
    let (_, s) = model.signature();
    if w.dim() != s {
        return Err(Error::precondition(format!("W has rank {}, expected {s}", w.dim())));
    }
    let wperp = w.orthogonal_complement(k, model.form())?;
    let comp = proj.g1(model).intersection(k, &wperp);
    Ok(w.sum(k, &comp))
}

/// `F ↦ (P₊F, F)`, the inverse of `τ` on the generic fiber.
pub fn resolution_section(model: &GenericModel, f: &GenericSubspace) -> Result<ResolutionPoint<RationalFunction>> {
    let n = model.n();
    if model.signature() != (n - 1, 1) {
        return Err(Error::precondition("the resolution is built for signature (n−1, 1)"));
    }
    let fs = summand(model, f);
    if !model.in_local(&fs) {
        return Err(Error::precondition("F is not a point of the local model"));
    }
    let proj = EigenProjectors::new(model)?;
    let f0 = f.image(model.ring(), &proj.plus);
    let point = ResolutionPoint {
        f0: summand(model, &f0),
        f: fs,
    };
    if !model.in_resolution_point(&point) {
        return Err(Error::Verification("section is not a point of the resolution".into()));
    }
    Ok(point)
}

/// A random element `a(t)/b(t)` with small degrees and `b` monic.
fn random_element(k: &RationalFunctionField, rng: &mut ChaCha8Rng) -> RationalFunction {
    let p = k.base().order() as u32;
    let num: Vec<u32> = (0..3).map(|_| rng.gen_range(0..p)).collect();
    let den = if rng.gen_bool(0.5) {
        vec![1]
    } else {
        vec![rng.gen_range(0..p), 1]
    };
    k.fraction(Poly::from_coeffs(num), Poly::from_coeffs(den))
}

/// A random rank-`s` subspace of `G₀`.
pub fn random_w(model: &GenericModel, rng: &mut ChaCha8Rng) -> GenericSubspace {
    let k = model.ring();
    let (_, s) = model.signature();
    let g0 = EigenProjectors::new(model).expect("k(t) model").g0(model);
    loop {
        let coeffs = Matrix::from_fn(s, g0.dim(), |_, _| random_element(k, rng));
        let w = Subspace::span(k, &coeffs.mul(k, g0.basis()).unwrap());
        if w.dim() == s {
            return w;
        }
    }
}

/// One failed round trip, with the seed that replays it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundtripFailure {
    pub trial: usize,
    pub seed: u64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundtripReport {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub p: u64,
    pub seed: u64,
    pub trials: usize,
    /// `(T+t)^r (T−t)^s`, constant term first, each coefficient a
    /// polynomial in `t` given by its coefficient list.
    pub target_charpoly: Vec<Vec<u32>>,
    pub sections_checked: usize,
    pub failures: Vec<RoundtripFailure>,
}

impl RoundtripReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `W → F → (F₀, F₁)` round trips with exact charpoly checks; also checks
/// the section of `τ` when the signature is `(n−1, 1)`.
pub fn generic_roundtrip(model: &GenericModel, trials: usize, seed: u64) -> Result<RoundtripReport> {
    let k = model.ring();
    let n = model.n();
    let (r, s) = model.signature();
    let resolution = (r, s) == (n - 1, 1);
    let mut failures = Vec::new();
    let mut sections = 0;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let w = random_w(model, &mut rng);
        let fail = |reason: String| RoundtripFailure { trial, seed, reason };
        let f = match from_grassmannian(model, &w) {
            Ok(f) => f,
            Err(e) => {
                failures.push(fail(format!("from_grassmannian: {e}")));
                continue;
            }
        };
        let fs = summand(model, &f);
        let cp = model.pi_restriction(&fs).map(|x| charpoly(k, &x));
        if !matches!(cp, Some(Ok(ref c)) if c.as_slice() == model.target_charpoly()) {
            failures.push(fail("charpoly of Π|F differs from (T+t)^r (T−t)^s".into()));
            continue;
        }
        if !model.in_local(&fs) {
            failures.push(fail("F fails the local model conditions".into()));
            continue;
        }
        match idempotent_split(model, &f) {
            Ok((f0, _)) if f0 == w => {}
            Ok(_) => failures.push(fail("P₊F differs from W".into())),
            Err(e) => failures.push(fail(format!("idempotent_split: {e}"))),
        }
        if resolution {
            match resolution_section(model, &f) {
                Ok(p) if model.tau(&p).map(|x| x == fs).unwrap_or(false) => sections += 1,
                Ok(_) => failures.push(fail("tau of the section differs from F".into())),
                Err(e) => failures.push(fail(format!("resolution_section: {e}"))),
            }
        }
    }
    let target_charpoly = model
        .target_charpoly()
        .iter()
        .map(|c| c.numerator().coeffs().to_vec())
        .collect();
    Ok(RoundtripReport {
        n,
        r,
        s,
        p: k.base().order(),
        seed,
        trials,
        target_charpoly,
        sections_checked: sections,
        failures,
    })
}
