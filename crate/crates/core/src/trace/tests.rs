use super::*;
use crate::fiber::{enumerate_stratified, resolution_fiber, CanonicalPair};

fn f(q: u64) -> FieldSpec {
    FieldSpec::of_order(q).unwrap()
}

const BUDGET: u128 = 1_000_000_000;

#[test]
fn chi_values() {
    for q in [3, 5, 7, 9, 11, 13] {
        assert_eq!(chi(&f(q), 3).unwrap(), 0);
        assert_eq!(chi(&f(q), 4).unwrap(), 1);
        assert_eq!(chi(&f(q), 8).unwrap(), 1);
    }
    assert_eq!(chi(&f(7), 6).unwrap(), -1);
    assert_eq!(chi(&f(5), 6).unwrap(), 1);
    assert_eq!(chi(&f(9), 6).unwrap(), 1);
    assert!(FieldSpec::of_order(4).is_err());
}

#[test]
fn kitaoka_examples() {
    assert_eq!(kitaoka_z(3, 3, 0).unwrap(), 4);
    assert_eq!(kitaoka_z(4, 3, 1).unwrap(), 16);
    assert_eq!(kitaoka_z(6, 7, -1).unwrap(), 2752);
    assert!(kitaoka_z(3, 3, 1).is_err());
    assert!(kitaoka_z(4, 3, 0).is_err());
}

#[test]
fn closed_form_examples() {
    assert_eq!(trace_closed_form(&f(5), 3, true).unwrap(), 1);
    assert_eq!(trace_closed_form(&f(3), 4, true).unwrap(), -8);
    assert_eq!(trace_closed_form(&f(7), 6, true).unwrap(), 344);
    assert_eq!(trace_closed_form(&f(7), 6, false).unwrap(), 1);
}

#[test]
fn brute_z_matches_formula_on_small_cases() {
    for q in [3, 5, 7, 9] {
        let k = f(q);
        for n in 3..7 {
            let c = chi(&k, n).unwrap();
            assert_eq!(
                brute_z(&k, n, BUDGET).unwrap(),
                kitaoka_z(n, q, c).unwrap(),
                "n = {n}, q = {q}"
            );
        }
    }
}

/// The fast `t` on the fiber over `y` is the component count of the
/// membership predicate.
#[test]
fn y_fiber_t_matches_component_membership() {
    for (n, q) in [(3, 3), (3, 5), (4, 3)] {
        let k = f(q);
        let model = LatticeModel::new(n, n - 1, 1, k.clone()).unwrap();
        let y = pi_lattice_bar_subspace(&k, n);
        let mut sum = 0;
        for a in crate::linalg::grassmann::projective_points(&k, n) {
            let f0 = Subspace::from_vectors(&k, 2 * n, &[[vec![0; n], a.clone()].concat()]);
            let p = CanonicalPair { f0, f: y.clone() };
            let t = component_membership(&model, &p).unwrap().t;
            assert_eq!(t, y_fiber_t(&k, &a));
            sum += weight(q, t);
        }
        assert_eq!(sum, y_fiber_sum(&k, n, BUDGET).unwrap());
    }
}

#[test]
fn trace_at_y_examples() {
    let m = LatticeModel::new(3, 2, 1, f(3)).unwrap();
    let y = pi_lattice_bar_subspace(m.ring(), 3);
    assert_eq!(trace_mechanism(&m, &y, BUDGET).unwrap(), 1);
    let m = LatticeModel::new(4, 3, 1, f(3)).unwrap();
    let y = pi_lattice_bar_subspace(m.ring(), 4);
    assert_eq!(trace_mechanism(&m, &y, BUDGET).unwrap(), -8);
}

/// Off `y`, every fiber found by scanning all lines of `F` is a single
/// point of weight 1.
#[test]
fn trace_off_y_is_one_exhaustively() {
    for (n, q) in [(3, 3), (3, 5), (4, 3)] {
        let k = f(q);
        let m = LatticeModel::new(n, n - 1, 1, k.clone()).unwrap();
        let y = pi_lattice_bar_subspace(&k, n);
        for x in enumerate_stratified(&m) {
            if x == y || !m.in_local(&FreeSummand::from_subspace(&k, &x)) {
                continue;
            }
            let fib = resolution_fiber(&m, &x);
            let total: i128 = fib
                .iter()
                .map(|p| weight(q, component_membership(&m, p).unwrap().t))
                .sum();
            assert_eq!(total, 1);
            assert_eq!(trace_mechanism(&m, &x, BUDGET).unwrap(), 1);
        }
    }
}

#[test]
fn rejects_points_outside_the_local_model() {
    let k = f(5);
    let m = LatticeModel::new(4, 3, 1, k.clone()).unwrap();
    let rows = vec![
        vec![1, 2, 0, 0, 0, 0, 0, 0],
        vec![0, 0, 1, 2, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 1, 2, 0, 0],
        vec![0, 0, 0, 0, 0, 0, 1, 2],
    ];
    let x = Subspace::from_vectors(&k, 8, &rows);
    assert!(trace_mechanism(&m, &x, BUDGET).is_err());
}

#[test]
fn table_rows() {
    let r = trace_row(5, 3, BUDGET, 3).unwrap();
    assert!(r.agree);
    assert_eq!(r.trace_y_formula, 1);
    let r = trace_row(8, 3, BUDGET, 2).unwrap();
    assert!(r.agree);
    assert_eq!((r.chi, r.trace_y_mechanism), (1, -80));
    let r = trace_row(6, 7, BUDGET, 2).unwrap();
    assert_eq!((r.chi, r.z_brute, r.trace_y_formula), (-1, 2752, 344));
    assert!(r.agree);
}
