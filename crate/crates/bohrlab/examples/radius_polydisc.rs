//! Polydisc radii. For p >= 2 the n-variable radius equals the one-variable
//! closed form, independent of n; the battery reproduces that, and the class
//! supremum at the published radius stays at 1.

use bohrlab::cara::default_battery;
use bohrlab::catalog::das_polydisc;
use bohrlab::engine::{class_sup, radius_solve};
use bohrlab::{BohrParams, Exponent, LqBall};

fn main() -> bohrlab::Result<()> {
    for n in [2usize, 3] {
        for p in [2.0, 3.0] {
            let ball = LqBall::unit(n, Exponent::Infinity)?;
            let battery = default_battery(&ball, 30, 7)?;
            let params = BohrParams::new(p)?;

            let published = das_polydisc(p, n)?;
            let iv = radius_solve(&battery, &params, 1e-9)?;

            // evaluate the whole battery exactly at the published radius
            let sup = class_sup(&battery, &params, published.value)?;

            println!(
                "n={n} p={p}: published {:.12}  battery interval [{:.12}, {:.12}]",
                published.value, iv.lo, iv.hi
            );
            println!(
                "     sup over battery at the published radius: {:.12} (witness member {})",
                sup.value, sup.argmax
            );
        }
    }
    println!("\nfor p < 2 the value decays like (ln n / n)^((2-p)/(2p)); the catalog");
    println!("reports that one as asymptotic-only:");
    let a = das_polydisc(1.0, 8)?;
    println!("  n=8 p=1: {} ({}: {})", a.value, a.kind.as_str(), a.validity);
    Ok(())
}
