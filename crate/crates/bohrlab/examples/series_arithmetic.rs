//! Sparse multivariate power series: build, multiply, raise to powers, and
//! slice into homogeneous blocks.
//!
//! ```bash
//! cargo run --example series_arithmetic
//! ```

use bohrlab::{MultiIndex, TruncatedSeries};
use num_complex::Complex64;

fn main() -> bohrlab::Result<()> {
    let one = Complex64::new(1.0, 0.0);

    // f(z) = 1 + z1 + z2 in two variables, truncated at degree 6
    let f = TruncatedSeries::from_terms(
        2,
        6,
        vec![
            (MultiIndex::zero(2), one),
            (MultiIndex::unit(2, 0), one),
            (MultiIndex::unit(2, 1), one),
        ],
    )?;

    // (1 + z1 + z2)^3 expands with multinomial coefficients
    let g = f.power(3, 6)?;
    println!("(1 + z1 + z2)^3 has {} terms:", g.num_terms());
    for (alpha, c) in g.iter() {
        println!("  z^{:?} -> {}", alpha.exponents(), c.re);
    }

    // the degree-2 block carries coefficients 3,6,3
    let block = g.homogeneous_part(2)?;
    assert_eq!(block.num_terms(), 3);
    println!("degree-2 block mass: {}", g.homogeneous_mass(2));

    // multinomial() is the exact integer count behind those coefficients
    let alpha = MultiIndex::new(vec![2, 1]);
    println!(
        "multinomial(|alpha|; alpha) for alpha = (2,1): {}",
        alpha.multinomial()
    );

    // JSON round-trip preserves every coefficient bit-for-bit
    let s = g.to_json_string();
    let back = TruncatedSeries::from_json(&serde_json::from_str(&s)?)?;
    assert_eq!(back.num_terms(), g.num_terms());
    println!("JSON round-trip OK ({} bytes)", s.len());
    Ok(())
}
