//! Chart points of the resolution over F_p[t]/(t^N) and the equation fuzzer.

use locmod::algebra::{FieldSpec, Ring, TruncatedSeriesRing};
use locmod::charts::{chart_equivalence_fuzz, chart_point, classify_slices, ChartSample};
use locmod::model::LatticeModel;

fn main() -> locmod::Result<()> {
    let ring = TruncatedSeriesRing::new(FieldSpec::of_order(5)?, 8);
    let model = LatticeModel::new(3, 2, 1, ring.clone())?;
    let lambda = vec![ring.one(), ring.zero(), ring.zero()];
    let two_t = ring.mul(&ring.from_int(2), &ring.t());
    let p = chart_point(&model, &ChartSample::new(&ring, 0, lambda, two_t)?)?;
    println!("A = top block of F:");
    for i in 0..3 {
        let row: Vec<_> = (0..3).map(|j| p.f.basis()[(i, j)].coeffs().to_vec()).collect();
        println!("  {row:?}");
    }

    // λ = (1, 2, 0) has Σλ² = 0, so γ_k·0 = 2t has no solution once N ≥ 2.
    let bad: Vec<_> = [1, 2, 0].iter().map(|&c| ring.constant(c)).collect();
    println!(
        "isotropic λ at N = 8: {:?}",
        ChartSample::new(&ring, 0, bad, ring.one()).err()
    );

    for p in [3, 5] {
        let m = LatticeModel::new(4, 3, 1, TruncatedSeriesRing::new(FieldSpec::of_order(p)?, 8))?;
        let rep = chart_equivalence_fuzz(&m, 1000, 42)?;
        println!(
            "fuzz p={p}: {} valid, {} perturbed, {} random, {} failures",
            rep.valid,
            rep.perturbed,
            rep.random,
            rep.failures.len()
        );
    }

    let slices = classify_slices(&FieldSpec::of_order(3)?, 3, 0)?;
    println!(
        "slices over F_3: {} points, Z1 only {}, Z2 only {}, both {}, mismatches {}",
        slices.points,
        slices.z1_only,
        slices.z2_only,
        slices.both,
        slices.mismatches.len()
    );
    Ok(())
}
