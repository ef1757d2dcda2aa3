//! Growth of |M_s(F_q)| in q compared with the generic fiber dimension rs.

use locmod::algebra::FieldSpec;
use locmod::fiber::{enumerate_stratified, estimate_dimension};
use locmod::model::LatticeModel;

fn main() -> locmod::Result<()> {
    for (n, r, s) in [(3, 2, 1), (4, 3, 1), (4, 2, 2)] {
        let mut counts = Vec::new();
        for q in [3, 5, 7] {
            let model = LatticeModel::new(n, r, s, FieldSpec::of_order(q)?)?;
            counts.push((q, enumerate_stratified(&model).len() as u64));
        }
        let fit = estimate_dimension(&counts)?;
        println!(
            "n={n} (r,s)=({r},{s}): counts {counts:?}, exponent {:.3}, rs = {}, ⌊n²/4⌋ = {}",
            fit.exponent,
            r * s,
            n * n / 4
        );
    }
    Ok(())
}
