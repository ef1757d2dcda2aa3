//! Naive model, local model and resolution membership on explicit points.

use locmod::algebra::{FieldSpec, Ring, TruncatedSeriesRing};
use locmod::linalg::Matrix;
use locmod::model::{LatticeModel, ResolutionPoint};

fn main() -> locmod::Result<()> {
    // F = U ⊕ ΠU with U isotropic for the dot product: naive but not local.
    let model = LatticeModel::new(4, 3, 1, FieldSpec::of_order(5)?)?;
    let u = [[1u32, 2, 0, 0], [0, 0, 1, 2]];
    let mut cols = Vec::new();
    for v in &u {
        cols.push([v.as_slice(), &[0; 4]].concat());
        cols.push([&[0; 4], v.as_slice()].concat());
    }
    let f = model.point(&Matrix::from_rows(&cols)?.transpose())?;
    println!("U ⊕ ΠU: naive {}, local {}", model.in_naive(&f), model.in_local(&f));

    let y = model.pi_lattice_bar();
    println!("ΠΛ̄: naive {}, local {}", model.in_naive(&y), model.in_local(&y));

    // A chart point over F_5[t]/(t^8): F = colspan [diag(t, −t, −t); I].
    let ring = TruncatedSeriesRing::new(FieldSpec::of_order(5)?, 8);
    let m = LatticeModel::new(3, 2, 1, ring.clone())?;
    let t = ring.t();
    let diag = [t.clone(), ring.neg(&t), ring.neg(&t)];
    let basis = Matrix::from_fn(6, 3, |i, j| match i {
        i if i < 3 && i == j => diag[i].clone(),
        i if i >= 3 && i - 3 == j => ring.one(),
        _ => ring.zero(),
    });
    let f = m.point(&basis)?;
    let b = [t, ring.zero(), ring.zero(), ring.one(), ring.zero(), ring.zero()];
    let f0 = m.summand(&Matrix::column_vector(&b))?;
    let p = ResolutionPoint { f0, f };
    println!(
        "chart point: local {}, resolution {}",
        m.in_local(&p.f),
        m.in_resolution_point(&p)
    );
    Ok(())
}
