//! The function families behind every estimate: extremal members, weighted
//! Cayley transforms, and compositions that push mass into sparse exponent
//! patterns. Each member carries a tail model so sums can be certified past
//! the truncation degree.

use bohrlab::cara::{
    cayley_linear, default_battery, halfplane_extremal, mean_compose, power_sum_compose,
};
use bohrlab::{Exponent, LqBall};
use num_complex::Complex64;

fn main() -> bohrlab::Result<()> {
    // one variable: coefficients 2*zeta^k, the classical extremal family
    let f = halfplane_extremal(Complex64::new(0.8, 0.3), 8)?;
    println!("extremal member, first coefficients:");
    for (alpha, c) in f.series().iter().take(4) {
        println!("  z^{:?} -> {:.4} + {:.4}i", alpha.exponents(), c.re, c.im);
    }
    println!("  tail: {:?}", f.tail());

    // several variables through a weighted Cayley transform; the weight must
    // fit the dual ball
    let ball = LqBall::unit(2, Exponent::Finite(2.0))?;
    let g = cayley_linear(&[0.6, 0.6], &ball, 8)?;
    println!(
        "\ncayley member on the l^2_2 ball: {} terms up to degree {}",
        g.series().num_terms(),
        g.max_degree()
    );
    assert!(cayley_linear(&[0.9, 0.9], &ball, 8).is_err(), "weight outside the dual ball");

    // compositions spread a disk function onto power sums or coordinate means
    let base = halfplane_extremal(Complex64::new(1.0, 0.0), 8)?;
    let ps = power_sum_compose(&base, Exponent::Finite(2.0), 3, 8)?;
    let mc = mean_compose(&base, 3, 8)?;
    println!(
        "\npower-sum composition: {} terms; coordinate-mean composition: {} terms",
        ps.series().num_terms(),
        mc.series().num_terms()
    );
    println!("  provenance: {} / {}", ps.provenance().label(), mc.provenance().label());

    // the default battery bundles axes, both compositions, and seeded
    // random members, all sharing one truncation degree
    let battery = default_battery(&ball, 10, 1)?;
    println!("\ndefault battery on the l^2_2 ball ({} members):", battery.len());
    for (i, m) in battery.members().iter().enumerate() {
        println!("  [{i}] {}", m.provenance().label());
    }
    Ok(())
}
