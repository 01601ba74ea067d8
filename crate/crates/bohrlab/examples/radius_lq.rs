//! Radius intervals on l^n_q balls next to the certified sandwich bounds.
//!
//! The battery gives an upper estimate of the true radius (fewer functions
//! than the full class means a larger feasible radius), so intervals land
//! between the published lower bound and just above the estimate's ceiling.

use bohrlab::cara::default_battery;
use bohrlab::catalog::radius_sandwich_lq;
use bohrlab::engine::radius_solve;
use bohrlab::{BohrParams, Exponent, LqBall};

fn main() -> bohrlab::Result<()> {
    let cells = [
        (1.0, Exponent::Finite(1.0), 3usize),
        (1.0, Exponent::Finite(2.0), 3),
        (2.0, Exponent::Finite(2.0), 4),
        (1.5, Exponent::Finite(4.0), 2),
    ];
    println!(
        "{:>4} {:>5} {:>3} {:>32} {:>26}",
        "p", "q", "n", "battery interval", "certified [lower, upper]"
    );
    for (p, q, n) in cells {
        let ball = LqBall::unit(n, q)?;
        let battery = default_battery(&ball, 12, 0)?;
        let iv = radius_solve(&battery, &BohrParams::new(p)?, 1e-7)?;
        let pair = radius_sandwich_lq(p, q, n)?;
        println!(
            "{p:>4} {q:>5} {n:>3} [{:>14.9}, {:>14.9}] [{:>11.9}, {:>11.9}]",
            iv.lo, iv.hi, pair.lower.value, pair.upper.value
        );
        assert!(iv.hi >= pair.lower.value - 1e-9);
    }

    // p = q = 1 pinches the sandwich shut: the radius is exactly 1/3 in
    // every dimension
    let pinch = radius_sandwich_lq(1.0, Exponent::Finite(1.0), 6)?;
    assert_eq!(pinch.lower.value, pinch.upper.value);
    println!("\np = q = 1, n = 6: both bounds equal {} (exact pinch)", pinch.lower.value);
    Ok(())
}
