//! Enumerates Grassmannians over F_q and compares with Gaussian binomials.

use locmod::algebra::FieldSpec;
use locmod::linalg::{gaussian_binomial, grassmann_iter};

fn main() -> locmod::Result<()> {
    for q in [3, 5] {
        let k = FieldSpec::of_order(q)?;
        for (ambient, d) in [(4, 2), (5, 2), (6, 3)] {
            let counted = grassmann_iter(&k, ambient, d).count() as u128;
            println!(
                "Gr({d},{ambient})(F_{q}): {counted} subspaces, [{ambient} {d}]_{q} = {}",
                gaussian_binomial(ambient, d, q)
            );
        }
    }
    let k = FieldSpec::of_order(3)?;
    let first = grassmann_iter(&k, 4, 2).next().expect("nonempty");
    println!("first subspace of Gr(2,4)(F_3) in RREF: {:?}", first.basis());
    Ok(())
}
