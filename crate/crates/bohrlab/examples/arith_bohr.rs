//! Arithmetic radius: the best coordinate mean over admissible radius
//! vectors. Unlike the plain radius it rewards lopsided vectors, and it ties
//! back to the radius through an exact identity: arith = radius / n^{1/q}.

use bohrlab::cara::default_battery;
use bohrlab::catalog::{arith_radius_identity, arith_sandwich_lq, arith_sandwich_polydisc};
use bohrlab::engine::{arith_bohr_estimate, radius_solve, ArithConfig};
use bohrlab::{BohrParams, Exponent, LqBall};

fn main() -> bohrlab::Result<()> {
    let params = BohrParams::new(1.0)?;
    let search = ArithConfig::default();

    // the q = 1 pinch: the admissible set is {sum r_i <= 1/3}, so the best
    // mean over n = 2 coordinates is exactly 1/6
    let ball = LqBall::unit(2, Exponent::Finite(1.0))?;
    let battery = default_battery(&ball, 12, 0)?;
    let est = arith_bohr_estimate(&battery, &params, &search)?;
    println!("n=2 q=1 p=1: estimate {:.12} (exact 1/6 = {:.12})", est.value, 1.0 / 6.0);
    println!("  found at r = {:?}", est.r_vec);

    // identity cross-check on the Euclidean ball
    let ball = LqBall::unit(3, Exponent::Finite(2.0))?;
    let battery = default_battery(&ball, 12, 0)?;
    let est = arith_bohr_estimate(&battery, &params, &search)?;
    let iv = radius_solve(&battery, &params, 1e-7)?;
    let ident = arith_radius_identity(iv.midpoint(), 3, Exponent::Finite(2.0));
    let pair = arith_sandwich_lq(1.0, Exponent::Finite(2.0), 3)?;
    println!("\nn=3 q=2 p=1:");
    println!("  arith estimate        {:.9}", est.value);
    println!("  radius / n^(1/q)      {:.9}", ident);
    println!("  certified sandwich    [{:.9}, {:.9}]", pair.lower.value, pair.upper.value);

    // polydisc flavor: the upper bound grows like n^(1 - 1/p)
    let pair = arith_sandwich_polydisc(2.0, 4)?;
    println!(
        "\npolydisc n=4 p=2 sandwich: [{:.9}, {:.9}]",
        pair.lower.value, pair.upper.value
    );
    Ok(())
}
