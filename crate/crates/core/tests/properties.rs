use locmod::algebra::{FieldSpec, Ring, TruncatedSeries, TruncatedSeriesRing};
use locmod::charts::{chart_point, ChartSample};
use locmod::linalg::charpoly::charpoly;
use locmod::linalg::echelon::{kernel, rank};
use locmod::linalg::{FreeSummand, Matrix, Subspace};
use locmod::model::LatticeModel;
use proptest::prelude::*;

const ORDERS: [u64; 6] = [3, 5, 7, 9, 25, 27];

fn matrix(q: u64, rows: usize, cols: usize) -> impl Strategy<Value = Matrix<u32>> {
    proptest::collection::vec(0..q as u32, rows * cols).prop_map(move |d| Matrix::new(rows, cols, d).unwrap())
}

/// Σ c_i A^i by Horner.
fn eval_poly<R: Ring>(ring: &R, coeffs: &[R::Elem], a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let n = a.rows();
    let mut acc = Matrix::zeros(ring, n, n);
    for c in coeffs.iter().rev() {
        acc = acc
            .mul(ring, a)
            .unwrap()
            .add(ring, &Matrix::scalar(ring, n, c))
            .unwrap();
    }
    acc
}

proptest! {
    #[test]
    fn field_axioms(qi in 0..ORDERS.len(), a in 0u32..27, b in 0u32..27, c in 0u32..27) {
        let q = ORDERS[qi];
        let k = FieldSpec::of_order(q).unwrap();
        let (a, b, c) = (a % q as u32, b % q as u32, c % q as u32);
        prop_assert_eq!(k.mul(&a, &k.add(&b, &c)), k.add(&k.mul(&a, &b), &k.mul(&a, &c)));
        prop_assert_eq!(k.add(&a, &k.neg(&a)), 0);
        prop_assert_eq!(k.mul(&k.mul(&a, &b), &c), k.mul(&a, &k.mul(&b, &c)));
        if a != 0 {
            prop_assert_eq!(k.mul(&a, &k.unit_inverse(&a).unwrap()), 1);
        }
    }

    #[test]
    fn rank_nullity_and_transpose(m in matrix(5, 4, 6)) {
        let k = FieldSpec::of_order(5).unwrap();
        let r = rank(&k, &m);
        prop_assert_eq!(r, rank(&k, &m.transpose()));
        let ker = kernel(&k, &m);
        prop_assert_eq!(ker.dim() + r, 6);
        for v in ker.vectors() {
            prop_assert!(m.mul_vec(&k, v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn cayley_hamilton_over_f9(m in matrix(9, 4, 4)) {
        let k = FieldSpec::of_order(9).unwrap();
        let cp = charpoly(&k, &m).unwrap();
        prop_assert!(eval_poly(&k, &cp, &m).is_zero(&k));
    }

    #[test]
    fn cayley_hamilton_over_truncated_ring(d in proptest::collection::vec(0u32..3, 9 * 4)) {
        let r = TruncatedSeriesRing::new(FieldSpec::of_order(3).unwrap(), 4);
        let entries: Vec<TruncatedSeries> = d.chunks(4).map(|c| r.series(c)).collect();
        let m = Matrix::new(3, 3, entries).unwrap();
        let cp = charpoly(&r, &m).unwrap();
        prop_assert!(eval_poly(&r, &cp, &m).is_zero(&r));
    }

    #[test]
    fn symplectic_complement_has_complementary_dimension(m in matrix(7, 3, 8)) {
        let k = FieldSpec::of_order(7).unwrap();
        let model = LatticeModel::new(4, 3, 1, k.clone()).unwrap();
        let w = Subspace::span(&k, &m);
        let perp = w.orthogonal_complement(&k, model.form()).unwrap();
        prop_assert_eq!(w.dim() + perp.dim(), 8);
        prop_assert!(perp.orthogonal_complement(&k, model.form()).unwrap() == w);
    }

    #[test]
    fn chart_points_lie_on_the_resolution(
        p in prop::sample::select(vec![3u64, 5, 7]),
        n in 3usize..6,
        chart in 0usize..5,
        raw in proptest::collection::vec(0u32..7, 5 * 6),
    ) {
        let chart = chart % n;
        let ring = TruncatedSeriesRing::new(FieldSpec::of_order(p).unwrap(), 6);
        let lambda: Vec<TruncatedSeries> = (0..n)
            .map(|i| if i == chart {
                ring.one()
            } else {
                ring.series(&raw[6 * i..6 * i + 6].iter().map(|c| c % p as u32).collect::<Vec<_>>())
            })
            .collect();
        let norm = lambda.iter().fold(ring.zero(), |a, x| ring.add(&a, &ring.mul(x, x)));
        prop_assume!(ring.is_unit(&norm));
        let gk = ring.mul(&ring.mul(&ring.from_int(2), &ring.t()), &ring.unit_inverse(&norm).unwrap());
        let model = LatticeModel::new(n, n - 1, 1, ring.clone()).unwrap();
        let pt = chart_point(&model, &ChartSample::new(&ring, chart, lambda, gk).unwrap()).unwrap();
        prop_assert!(model.in_resolution_point(&pt));
        prop_assert!(model.in_local(&pt.f));
        let f: &FreeSummand<TruncatedSeries> = &model.tau(&pt).unwrap();
        prop_assert_eq!(f, &pt.f);
    }
}
