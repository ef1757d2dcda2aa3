//! W ↦ F ↦ (P₊F, P₋F) over F_5(t), and the section of τ.

use locmod::algebra::{FieldSpec, RationalFunctionField};
use locmod::charts::{generic_roundtrip, EigenProjectors};
use locmod::model::LatticeModel;

fn main() -> locmod::Result<()> {
    let k = RationalFunctionField::new(FieldSpec::of_order(5)?);
    for (n, r, s) in [(3, 2, 1), (4, 3, 1), (4, 2, 2)] {
        let model = LatticeModel::new(n, r, s, k.clone())?;
        let proj = EigenProjectors::new(&model)?;
        println!("n={n} (r,s)=({r},{s}): dim G0 = {}", proj.g0(&model).dim());
        let rep = generic_roundtrip(&model, 20, 1)?;
        println!(
            "  {} round trips, {} sections, failures: {}",
            rep.trials,
            rep.sections_checked,
            rep.failures.len()
        );
    }
    Ok(())
}
