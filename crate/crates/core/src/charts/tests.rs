use super::*;
use crate::algebra::{FieldSpec, Poly, RationalFunctionField, Ring, TruncatedSeriesRing};
use crate::linalg::charpoly::{charpoly, from_roots};
use crate::linalg::{Matrix, Subspace};
use crate::model::LatticeModel;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn kt(p: u64) -> RationalFunctionField {
    RationalFunctionField::new(FieldSpec::of_order(p).unwrap())
}

fn series(p: u64, n: usize) -> TruncatedSeriesRing {
    TruncatedSeriesRing::new(FieldSpec::of_order(p).unwrap(), n)
}

#[test]
fn projector_identities_hold_in_kt() {
    for (n, r, s) in [(3, 2, 1), (4, 3, 1), (4, 2, 2), (5, 3, 2)] {
        let m = LatticeModel::new(n, r, s, kt(5)).unwrap();
        let proj = EigenProjectors::new(&m).unwrap();
        assert_eq!(proj.g0(&m).dim(), n);
        assert_eq!(proj.g1(&m).dim(), n);
    }
}

#[test]
fn projectors_rejected_without_division_by_two_pi() {
    // over k(t) 2π is a unit; the truncated ring has no analogue, so the
    // type only exists for k(t). Check the unit test directly.
    let k = kt(3);
    let two_t = k.mul(&k.from_int(2), &k.t());
    assert!(k.is_unit(&two_t));
    let r = series(3, 8);
    assert!(!r.is_unit(&r.mul(&r.from_int(2), &r.t())));
}

#[test]
fn w_spanned_by_projected_e1_gives_expected_charpoly() {
    let k = kt(5);
    let m = LatticeModel::new(3, 2, 1, k.clone()).unwrap();
    let proj = EigenProjectors::new(&m).unwrap();
    let w = Subspace::span(&k, &Matrix::from_rows(&[proj.plus.column(0)]).unwrap());
    let f = from_grassmannian(&m, &w).unwrap();
    assert_eq!(f.dim(), 3);
    let fs = crate::linalg::FreeSummand::from_subspace(&k, &f);
    assert!(m.in_naive(&fs) && m.in_local(&fs));
    let x = m.pi_restriction(&fs).unwrap();
    let t = k.t();
    let expected = from_roots(&k, &[t.clone(), k.neg(&t), k.neg(&t)]);
    assert_eq!(charpoly(&k, &x).unwrap(), expected);
    // (T−t)(T+t)² = T³ + tT² − t²T − t³
    let c = |coeffs: Vec<u32>| k.poly(Poly::from_coeffs(coeffs));
    assert_eq!(
        expected,
        vec![c(vec![0, 0, 0, 4]), c(vec![0, 0, 4]), c(vec![0, 1]), c(vec![1])]
    );

    let (f0, f1) = idempotent_split(&m, &f).unwrap();
    assert_eq!(f0, w);
    assert_eq!((f0.dim(), f1.dim()), (1, 2));
    let sec = resolution_section(&m, &f).unwrap();
    assert_eq!(m.tau(&sec).unwrap(), fs);
}

#[test]
fn from_grassmannian_rejects_w_outside_g0() {
    let k = kt(5);
    let m = LatticeModel::new(3, 2, 1, k.clone()).unwrap();
    let mut e1 = vec![k.zero(); 6];
    e1[0] = k.one();
    let w = Subspace::span(&k, &Matrix::from_rows(&[e1]).unwrap());
    assert!(from_grassmannian(&m, &w).is_err());
}

#[test]
fn random_w_lies_in_g0() {
    let k = kt(3);
    let m = LatticeModel::new(4, 2, 2, k.clone()).unwrap();
    let g0 = EigenProjectors::new(&m).unwrap().g0(&m);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let w = generic::random_w(&m, &mut rng);
        assert_eq!(w.dim(), 2);
        assert!(g0.contains(&k, &w));
    }
}

#[test]
fn generic_round_trips() {
    for (n, r, s, trials) in [(3, 2, 1, 100), (4, 3, 1, 100), (4, 2, 2, 20)] {
        let m = LatticeModel::new(n, r, s, kt(5)).unwrap();
        let rep = generic_roundtrip(&m, trials, 7).unwrap();
        assert!(rep.passed(), "({n},{r},{s}): {:?}", rep.failures.first());
        let expect_sections = if s == 1 { trials } else { 0 };
        assert_eq!(rep.sections_checked, expect_sections);
    }
}

#[test]
fn roundtrip_report_is_deterministic() {
    let m = LatticeModel::new(3, 2, 1, kt(3)).unwrap();
    assert_eq!(
        generic_roundtrip(&m, 10, 1).unwrap(),
        generic_roundtrip(&m, 10, 1).unwrap()
    );
}

#[test]
fn diagonal_chart_point() {
    let ring = series(5, 8);
    let m = LatticeModel::new(3, 2, 1, ring.clone()).unwrap();
    let lambda = vec![ring.one(), ring.zero(), ring.zero()];
    let two_t = ring.mul(&ring.from_int(2), &ring.t());
    let sample = ChartSample::new(&ring, 0, lambda.clone(), two_t.clone()).unwrap();
    let p = chart_point(&m, &sample).unwrap();
    let t = ring.t();
    let mt = ring.neg(&t);
    let diag = [t.clone(), mt.clone(), mt];
    for i in 0..3 {
        for j in 0..3 {
            let want = if i == j { diag[i].clone() } else { ring.zero() };
            assert_eq!(p.f.basis()[(i, j)], want);
        }
    }
    // at λ = e_k the norm relation reads γ_k = 2π
    let st = equation_status(&ring, 0, &lambda, &sample.gamma(&ring));
    assert!(st.norm_relation && st.vector_system() && st.matrix_system());
}

#[test]
fn isotropic_lambda_over_residue_field() {
    let ring = series(5, 1);
    let m = LatticeModel::new(3, 2, 1, ring.clone()).unwrap();
    let special = LatticeModel::new(3, 2, 1, FieldSpec::of_order(5).unwrap()).unwrap();
    let lambda: Vec<_> = [1, 2, 0].iter().map(|&c| ring.constant(c)).collect();
    for y in 0..5 {
        let s = ChartSample::new(&ring, 0, lambda.clone(), ring.constant(y)).unwrap();
        let p = chart_point(&m, &s).unwrap();
        let pair = chart::residue_pair(ring.base(), &p);
        assert!(crate::fiber::component_membership(&special, &pair).unwrap().in_z2);
    }
    let deep = series(5, 8);
    let lambda: Vec<_> = [1, 2, 0].iter().map(|&c| deep.constant(c)).collect();
    for y in 0..5 {
        assert!(ChartSample::new(&deep, 0, lambda.clone(), deep.constant(y)).is_err());
    }
}

#[test]
fn zero_gamma_gives_pi_lattice_bar() {
    let ring = series(3, 1);
    let m = LatticeModel::new(4, 3, 1, ring.clone()).unwrap();
    let lambda: Vec<_> = [2, 1, 0, 1].iter().map(|&c| ring.constant(c)).collect();
    let s = ChartSample::new(&ring, 1, lambda, ring.zero()).unwrap();
    let p = chart_point(&m, &s).unwrap();
    assert_eq!(p.f, m.pi_lattice_bar());
}

#[test]
fn chart_sample_requires_unit_coordinate() {
    let ring = series(3, 4);
    let lambda = vec![ring.from_int(2), ring.zero(), ring.zero()];
    assert!(ChartSample::new(&ring, 0, lambda, ring.zero()).is_err());
}

#[test]
fn perturbing_gamma_breaks_outer_symmetry() {
    let ring = series(3, 8);
    let lambda: Vec<_> = [1, 1, 0].iter().map(|&c| ring.constant(c)).collect();
    // Σλ² = 2, γ_k = 2t/2 = t
    let mut gamma: Vec<_> = lambda.iter().map(|l| ring.mul(&ring.t(), l)).collect();
    assert!(equation_status(&ring, 0, &lambda, &gamma).vector_system());
    gamma[1] = ring.add(&gamma[1], &ring.one());
    let st = equation_status(&ring, 0, &lambda, &gamma);
    assert!(!st.outer_symmetric && !st.matrix_system());
}

#[test]
fn fuzz_finds_no_counterexamples() {
    for p in [3, 5] {
        for n in [3, 4, 5] {
            let m = LatticeModel::new(n, n - 1, 1, series(p, 8)).unwrap();
            let rep = chart_equivalence_fuzz(&m, 300, 42).unwrap();
            assert!(rep.passed(), "p={p} n={n}: {:?}", rep.failures.first());
            assert_eq!(rep.valid + rep.perturbed + rep.random, 300);
        }
    }
}

#[test]
fn fuzz_report_is_independent_of_worker_count() {
    let m = LatticeModel::new(4, 3, 1, series(3, 8)).unwrap();
    let run = |w| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .unwrap()
            .install(|| chart_equivalence_fuzz(&m, 60, 9).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn slices_classify_components() {
    for (p, n) in [(3, 3), (5, 3), (3, 4)] {
        let k = FieldSpec::of_order(p).unwrap();
        for chart in 0..n {
            let rep = classify_slices(&k, n, chart).unwrap();
            assert!(rep.mismatches.is_empty(), "{:?}", rep.mismatches);
            // y·Σxᵢ² = 0: the slice y = 0, plus a free y over isotropic λ
            let iso = crate::fiber::quadric_points(&k, n)
                .unwrap()
                .lines
                .iter()
                .filter(|v| v[chart] != 0)
                .count() as u64;
            assert_eq!(rep.points as u64, p.pow(n as u32 - 1) + iso * (p - 1));
            assert!(rep.both > 0 && rep.z2_only > 0 && rep.z1_only > 0);
        }
    }
}

#[test]
fn chart_relation_is_not_a_zero_divisor() {
    for p in [3, 5, 7] {
        let k = FieldSpec::of_order(p).unwrap();
        for n in 3..6 {
            assert!(chart_is_flat(&k, n, 0));
        }
    }
}
