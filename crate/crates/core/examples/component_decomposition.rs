//! The special fiber of the resolution as Z1 ∪ Z2, and the fibers of τ.

use locmod::algebra::FieldSpec;
use locmod::fiber::{enumerate_ms, tau_fibers, verify_decomposition, Mode};
use locmod::model::LatticeModel;

fn main() -> locmod::Result<()> {
    for (n, q) in [(3, 3), (3, 5), (4, 3)] {
        let model = LatticeModel::new(n, n - 1, 1, FieldSpec::of_order(q)?)?;
        let ms = enumerate_ms(&model, Mode::Stratified, u128::MAX)?;
        let dec = verify_decomposition(&model, &ms)?;
        let r = &dec.report;
        println!(
            "n={n} q={q}: |M|={} |M^loc|={} |𝓜|={} |Z1|={} |Z2|={} |Z1∩Z2|={} holds={}",
            r.ms, r.mloc, r.mres, r.z1, r.z2, r.z1_cap_z2, r.decomposition_holds
        );
        let (_, fibers) = tau_fibers(&model, &dec.mloc, &dec.mres)?;
        println!(
            "  fiber over y: {}, singleton fibers: {}",
            fibers.y_fiber, fibers.singleton_fibers
        );
    }
    Ok(())
}
