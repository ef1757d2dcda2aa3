//! Traces of Frobenius at y and off y against the closed forms.

use locmod::trace::trace_table;

fn main() -> locmod::Result<()> {
    let report = trace_table(&[3, 4, 5, 6], &[3, 5, 7], 1_000_000_000, 2)?;
    println!("n  q  chi  z      trace_y  closed_form  off_y");
    for r in &report.rows {
        println!(
            "{}  {}  {:>3}  {:<5}  {:>7}  {:>11}  {:?}",
            r.n, r.q, r.chi, r.z_brute, r.trace_y_mechanism, r.trace_y_formula, r.trace_off_y
        );
    }
    println!("all rows agree: {}", report.all_agree());
    Ok(())
}
