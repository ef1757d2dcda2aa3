//! Arithmetic in the three coefficient rings: F_q, F_p[t]/(t^N) and F_p(t).

use locmod::algebra::{CoefficientRing, FieldSpec, Poly, RationalFunctionField, Ring, TruncatedSeriesRing};

fn main() -> locmod::Result<()> {
    let f9 = FieldSpec::of_order(9)?;
    println!("{}", f9.describe());
    let a = 4u32;
    let inv = f9.unit_inverse(&a).expect("nonzero");
    println!("{a} * {inv} = {}", f9.mul(&a, &inv));
    println!("-1 is a square in F_9: {}", f9.is_square(f9.from_int(-1))?);

    let r = TruncatedSeriesRing::new(FieldSpec::of_order(5)?, 4);
    let u = r.series(&[1, 2, 0, 3]);
    let ui = r.unit_inverse(&u).expect("constant term is a unit");
    println!("{:?} * {:?} = {:?}", u.coeffs(), ui.coeffs(), r.mul(&u, &ui).coeffs());
    // π = t is not a unit, and π^4 = 0 at N = 4
    println!(
        "t unit: {}, t^4 = {:?}",
        r.is_unit(&r.uniformizer()),
        r.pow(&r.t(), 4).coeffs()
    );

    let k = RationalFunctionField::new(FieldSpec::of_order(3)?);
    let x = k.fraction(Poly::from_coeffs(vec![1, 1]), Poly::from_coeffs(vec![2, 0, 1]));
    let y = k.conjugate(&x);
    println!("x = {x:?}, conjugate(x) = {y:?}, x·conj(x) = {:?}", k.mul(&x, &y));
    Ok(())
}
