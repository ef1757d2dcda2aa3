use super::*;
use crate::algebra::FieldSpec;
use crate::linalg::{grassmann, FreeSummand};
use crate::model::LatticeModel;

fn model(n: usize, q: u64) -> LatticeModel<FieldSpec> {
    LatticeModel::new(n, n - 1, 1, FieldSpec::of_order(q).unwrap()).unwrap()
}

#[test]
fn fast_filter_agrees_with_generic_predicate() {
    let m = model(3, 3);
    let k = m.ring();
    let filter = enumerate::FastFilter::new(k, 3);
    let mut hits = 0;
    grassmann::for_each_subspace(k, 6, 3, |rows| {
        let s = grassmann::subspace_from_buffer(6, rows);
        let generic = m.in_naive(&FreeSummand::from_subspace(k, &s));
        assert_eq!(filter.accepts(rows), generic, "{rows:?}");
        hits += generic as usize;
    });
    assert_eq!(hits, 13);
}

#[test]
fn naive_and_stratified_agree_for_n3() {
    for q in [3, 5] {
        let m = model(3, q);
        let naive = enumerate_naive(&m, u128::MAX).unwrap();
        let strat = enumerate_stratified(&m);
        assert_eq!(naive, strat, "q = {q}");
        assert_eq!(naive.len() as u64, q * q + q + 1);
    }
}

#[test]
fn naive_budget_is_enforced() {
    let m = model(4, 7);
    assert!(matches!(
        enumerate_naive(&m, 100_000_000),
        Err(crate::Error::Budget { .. })
    ));
}

#[test]
fn stratified_points_are_in_the_naive_model() {
    let m = model(4, 3);
    let k = m.ring();
    let pts = enumerate_stratified(&m);
    // 2(q+1)q³ + (q+1)²q + 1
    assert_eq!(pts.len(), 265);
    for p in &pts {
        assert!(m.in_naive(&FreeSummand::from_subspace(k, p)));
    }
    // strata with d ≥ n − 1 are exactly the local model
    let loc = pts
        .iter()
        .filter(|p| m.in_local(&FreeSummand::from_subspace(k, p)))
        .count();
    let high = pts.iter().filter(|p| stratum_dim(k, 4, p) >= 3).count();
    assert_eq!(loc, high);
    assert_eq!(loc, 49);
}

#[test]
fn decomposition_n3_q3() {
    let m = model(3, 3);
    let ms = enumerate_stratified(&m);
    let d = verify_decomposition(&m, &ms).unwrap();
    let r = &d.report;
    assert!(r.decomposition_holds, "{:?}", r.witness);
    assert_eq!((r.z1, r.z2, r.z1_cap_z2, r.z, r.mres, r.mloc), (13, 16, 4, 4, 25, 13));
    let (_, summary) = tau_fibers(&m, &d.mloc, &d.mres).unwrap();
    assert_eq!(summary.y_fiber, 13);
    assert_eq!(summary.singleton_fibers, 12);
}

#[test]
fn decomposition_n3_q5() {
    let m = model(3, 5);
    let d = verify_decomposition(&m, &enumerate_stratified(&m)).unwrap();
    let r = &d.report;
    assert!(r.decomposition_holds);
    assert_eq!((r.z1, r.z1_cap_z2, r.z), (31, 6, 6));
    assert_eq!(r.z2, 6 * r.z);
    assert_eq!(r.mres, r.z1 + r.z2 - r.z1_cap_z2);
}

#[test]
fn decomposition_n4_q3() {
    let m = model(4, 3);
    let d = verify_decomposition(&m, &enumerate_stratified(&m)).unwrap();
    let r = &d.report;
    assert!(r.decomposition_holds);
    assert_eq!((r.z1, r.z1_cap_z2, r.z, r.z2), (40, 16, 16, 64));
    let (_, summary) = tau_fibers(&m, &d.mloc, &d.mres).unwrap();
    assert_eq!(summary.y_fiber, 40);
}

#[test]
fn membership_examples() {
    let m = model(3, 3);
    let k = m.ring();
    let y = pi_lattice_bar_subspace(k, 3);
    let line = |a: [u32; 3]| crate::linalg::Subspace::from_vectors(k, 6, &[vec![0, 0, 0, a[0], a[1], a[2]]]);
    // (1,0,0) is anisotropic, (1,1,1) is isotropic over F₃
    let aniso = CanonicalPair {
        f0: line([1, 0, 0]),
        f: y.clone(),
    };
    let mem = component_membership(&m, &aniso).unwrap();
    assert_eq!((mem.in_z1, mem.in_z2, mem.t), (true, false, 0));
    let iso = CanonicalPair {
        f0: line([1, 1, 1]),
        f: y.clone(),
    };
    let mem = component_membership(&m, &iso).unwrap();
    assert_eq!((mem.in_z1, mem.in_z2, mem.t), (true, true, 1));
    let other = z2(&m).into_iter().find(|p| p.f0 == iso.f0 && p.f != y).unwrap();
    let mem = component_membership(&m, &other).unwrap();
    assert_eq!((mem.in_z1, mem.in_z2, mem.t), (false, true, 0));
    // over an anisotropic line the only F is ΠΛ̄
    assert!(z2(&m).iter().all(|p| p.f0 != aniso.f0));
}

#[test]
fn z2_points_off_y_have_f0_equal_to_image() {
    let m = model(4, 3);
    let k = m.ring();
    let y = pi_lattice_bar_subspace(k, 4);
    for p in z2(&m) {
        if p.f != y {
            assert_eq!(p.f.image(k, m.pi()), p.f0);
        }
    }
}

#[test]
fn sampled_points_off_y() {
    for (n, q) in [(3, 3), (4, 5), (5, 3)] {
        let m = model(n, q);
        let k = m.ring();
        let y = pi_lattice_bar_subspace(k, n);
        let pts = local_points_off_y(&m, 4);
        assert_eq!(pts.len(), 4);
        for f in &pts {
            assert_ne!(*f, y);
            assert!(m.in_local(&FreeSummand::from_subspace(k, f)));
            let fib = fiber_off_y(&m, f);
            assert_eq!(fib, resolution_fiber(&m, f));
            assert_eq!(fib.len(), 1);
        }
    }
}

#[test]
fn parallel_enumeration_is_independent_of_workers() {
    let m = model(3, 5);
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let three = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let a = one.install(|| enumerate_naive(&m, u128::MAX).unwrap());
    let b = three.install(|| enumerate_naive(&m, u128::MAX).unwrap());
    assert_eq!(a, b);
    let c = three.install(|| enumerate_stratified(&m));
    assert_eq!(a, c);
}
