//! The one-variable radius for functions with positive real part: bisection
//! against the closed form ((2^p - 1)/(2^{p+1} - 1))^{1/p}.
//!
//! At p = 1 this is the classical 1/3.

use bohrlab::cara::{halfplane_extremal, TestBattery};
use bohrlab::catalog::h1p_value;
use bohrlab::engine::radius_solve;
use bohrlab::{BohrParams, Exponent, LqBall};
use num_complex::Complex64;

fn main() -> bohrlab::Result<()> {
    let ball = LqBall::unit(1, Exponent::Finite(2.0))?;
    println!("{:>6} {:>18} {:>18} {:>10}", "p", "bisection", "closed form", "gap");
    for p in [1.0, 1.5, 2.0, 3.0, 5.0] {
        // the Cayley-type extremal member saturates the class, so one
        // function is a complete battery in one variable
        let f = halfplane_extremal(Complex64::new(1.0, 0.0), 30)?;
        let battery = TestBattery::new(vec![f], ball, 30)?;
        let iv = radius_solve(&battery, &BohrParams::new(p)?, 1e-10)?;
        let closed = h1p_value(p)?;
        println!(
            "{p:>6} {:>18.12} {closed:>18.12} {:>10.2e}",
            iv.midpoint(),
            (iv.midpoint() - closed).abs()
        );
    }
    println!("\nthe radius grows with p and tends to 1: higher exponents forgive more");
    Ok(())
}
