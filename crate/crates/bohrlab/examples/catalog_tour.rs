//! A walk through the catalog of published bounds: the one-variable closed
//! form, the polydisc result, the classical K_n estimates, and the sandwich
//! pairs the engine is checked against.

use bohrlab::catalog::{
    das_polydisc, h1p_closed_form, kn_bounds, sandwich_bounds,
};
use bohrlab::Exponent;

fn main() -> bohrlab::Result<()> {
    println!("one-variable radius, closed form:");
    for p in [1.0, 2.0, 4.0] {
        let rec = h1p_closed_form(p)?;
        println!("  p={p}: {:.12}  [{}]", rec.value, rec.source);
    }

    println!("\npolydisc radius for p >= 2 (dimension-free):");
    for n in [2usize, 10, 100] {
        let rec = das_polydisc(2.0, n)?;
        println!("  n={n}: {:.12}  ({})", rec.value, rec.kind.as_str());
    }

    println!("\nclassical K_n bounds, n = 16:");
    for q in [Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Infinity] {
        println!("  q = {q}:");
        for rec in kn_bounds(16, q, None)? {
            println!(
                "    {:<22} {:<12.9} [{}] {}",
                rec.name,
                rec.value,
                rec.kind.as_str(),
                rec.source
            );
        }
    }

    // one extra lower bound switches on when the caller supplies the
    // constant from the log-log refinement
    println!("\nwith a caller-supplied constant c = 3:");
    for rec in kn_bounds(64, Exponent::Finite(2.0), Some(3.0))? {
        if rec.name.contains("loglog") {
            println!("    {:<22} {:<12.9} {}", rec.name, rec.value, rec.validity);
        }
    }

    println!("\nsandwich pairs for p=1.5, q=2, n=4:");
    for rec in sandwich_bounds(1.5, Exponent::Finite(2.0), 4)? {
        println!("    {:<22} {:<12.9} ({})", rec.name, rec.value, rec.kind.as_str());
    }
    Ok(())
}
